use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{smith_normal_form, RationalSubspace, SmithForm};
use crate::gog::{ClassToken, EndRef, GraphOfGroups, Index};

/// Largest ball [`build_ball`] will materialize.
pub const MAX_BALL_NODES: usize = 200_000;

/// One step of a node's address: leave the parent through `edge` at `end`
/// (the parent's side), into the coset represented by `coset`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct AddressStep {
    pub edge: String,
    pub end: usize,
    #[serde(serialize_with = "crate::exactlin::serialize_ints")]
    pub coset: Vec<BigInt>,
}

/// Span of a tree edge's space: in root coordinates when it transports back
/// to the root, otherwise in the coordinates of the edge's parent vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "frame", content = "span", rename_all = "snake_case")]
pub enum EdgeSpan {
    Root(RationalSubspace),
    Local(RationalSubspace),
}

impl EdgeSpan {
    pub fn root(&self) -> Option<&RationalSubspace> {
        match self {
            EdgeSpan::Root(s) => Some(s),
            EdgeSpan::Local(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BallNode {
    pub id: usize,
    pub vertex: String,
    pub address: Vec<AddressStep>,
    pub parent: Option<usize>,
    /// Index into [`TreeBall::edges`] of the edge to the parent.
    pub parent_edge: Option<usize>,
    pub children: Vec<usize>,
    pub distance: usize,
    /// Some neighbors were skipped by the branch cap.
    pub truncated: bool,
    /// At the ball's radius; neighbors beyond it are not built.
    pub frontier: bool,
    pub true_valence: Index,
    pub realized_valence: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BallEdge {
    pub id: usize,
    pub edge: String,
    pub parent: usize,
    pub child: usize,
    /// End of the graph edge at the parent's vertex.
    pub parent_end: usize,
    pub span: EdgeSpan,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreeBall {
    pub root: usize,
    pub radius: usize,
    pub branch_cap: usize,
    pub nodes: Vec<BallNode>,
    pub edges: Vec<BallEdge>,
}

impl TreeBall {
    pub fn root_node(&self) -> &BallNode {
        &self.nodes[self.root]
    }

    /// Tree edges incident to a node, parent edge first.
    pub fn incident_edges(&self, node: usize) -> Vec<usize> {
        let n = &self.nodes[node];
        n.parent_edge
            .into_iter()
            .chain(
                n.children
                    .iter()
                    .map(|&c| self.nodes[c].parent_edge.expect("child has parent edge")),
            )
            .collect()
    }

    pub fn neighbors(&self, node: usize) -> Vec<usize> {
        let n = &self.nodes[node];
        n.parent.into_iter().chain(n.children.iter().copied()).collect()
    }
}

/// Cosets of the image lattice of one edge-end, keyed through its Smith form.
pub(crate) struct CosetSpace {
    smith: SmithForm,
    rank: usize,
    ambient: usize,
    pub index: Index,
}

impl CosetSpace {
    pub(crate) fn new(g: &GraphOfGroups, end: EndRef) -> Self {
        let m = &g.end(end).matrix;
        let rows: Vec<Vec<BigInt>> = (0..m.rows())
            .map(|r| m.row(r).iter().map(|x| x.to_integer()).collect())
            .collect();
        let smith = smith_normal_form(&rows, m.cols());
        let rank = smith.diagonal.iter().filter(|d| !d.is_zero()).count();
        let index = if rank == m.rows() {
            Index::Finite(
                smith
                    .diagonal
                    .iter()
                    .fold(BigInt::from(1), |acc, d| acc * d.abs()),
            )
        } else {
            Index::Infinite
        };
        CosetSpace {
            smith,
            rank,
            ambient: m.rows(),
            index,
        }
    }

    /// Coordinates of `y` modulo the lattice: torsion parts reduced, free
    /// parts kept.
    pub(crate) fn key(&self, y: &[BigInt]) -> Vec<BigInt> {
        (0..self.ambient)
            .map(|i| {
                let z: BigInt = self.smith.left[i].iter().zip(y).map(|(a, b)| a * b).sum();
                if i < self.rank {
                    z.mod_floor(&self.smith.diagonal[i].abs())
                } else {
                    z
                }
            })
            .collect()
    }

    /// Coset representatives in max-norm then lexicographic order, skipping
    /// the lattice itself when `skip_zero`. Infinite index keeps `limit`.
    pub(crate) fn representatives(&self, limit: usize, skip_zero: bool) -> Vec<Vec<BigInt>> {
        let finite = self.index.finite().and_then(|n| n.to_usize());
        let want = finite.unwrap_or(limit + usize::from(skip_zero));
        let mut seen = BTreeSet::new();
        let mut reps = Vec::new();
        let mut r: i64 = 0;
        while reps.len() < want {
            for y in shell(self.ambient, r) {
                if reps.len() == want {
                    break;
                }
                if seen.insert(self.key(&y)) {
                    reps.push(y);
                }
            }
            if self.ambient == 0 {
                break;
            }
            r += 1;
        }
        if skip_zero {
            reps.retain(|y| !y.iter().all(Zero::is_zero));
        }
        if finite.is_none() {
            reps.truncate(limit);
        }
        reps
    }
}

/// Integer vectors of max-norm exactly `r`, lexicographically.
fn shell(n: usize, r: i64) -> Vec<Vec<BigInt>> {
    let mut out = Vec::new();
    let mut y = vec![-r; n];
    loop {
        if y.iter().any(|x| x.abs() == r) || (r == 0) {
            out.push(y.iter().map(|&x| BigInt::from(x)).collect());
        }
        let Some(i) = (0..n).rev().find(|&i| y[i] < r) else {
            return out;
        };
        y[i] += 1;
        for x in &mut y[i + 1..] {
            *x = -r;
        }
    }
}

fn span_at(g: &GraphOfGroups, end: EndRef) -> RationalSubspace {
    match g.oracle().class_of(end) {
        ClassToken::Span(s) => s,
        ClassToken::Label(_) => unreachable!("balls are built for abelian graphs"),
    }
}

/// Transports a span at `node` back along the tree path to the root, while
/// it stays inside every edge span on the way.
pub(crate) fn to_root(
    g: &GraphOfGroups,
    ball: &TreeBall,
    node: usize,
    span: RationalSubspace,
) -> Option<RationalSubspace> {
    let mut at = node;
    let mut span = span;
    while let Some(pe) = ball.nodes[at].parent_edge {
        let te = &ball.edges[pe];
        let e = g.edge_index(&te.edge)?;
        let here = EndRef::new(e, 1 - te.parent_end);
        let there = here.opposite();
        if !span_at(g, here).contains(&span).ok()? {
            return None;
        }
        span = span
            .preimage(&g.end(here).matrix)
            .ok()?
            .image(&g.end(there).matrix)
            .ok()?;
        at = te.parent;
    }
    Some(span)
}

/// The radius-`radius` ball around a lift of `root` in the Bass-Serre tree.
/// Infinite-index edge-ends contribute at most `branch_cap` children.
pub fn build_ball(g: &GraphOfGroups, root: &str, radius: usize, branch_cap: usize) -> Result<TreeBall> {
    g.require_abelian("tree balls")?;
    let root_v = g
        .vertex_index(root)
        .ok_or_else(|| Error::UnknownVertex(root.to_string()))?;
    if branch_cap == 0 {
        return Err(Error::BranchCapZero);
    }
    let spaces: Vec<[CosetSpace; 2]> = (0..g.edges().len())
        .map(|e| {
            [
                CosetSpace::new(g, EndRef::new(e, 0)),
                CosetSpace::new(g, EndRef::new(e, 1)),
            ]
        })
        .collect();
    let valence = |v: usize| {
        g.incident_ends(v)
            .into_iter()
            .fold(Index::Finite(BigInt::zero()), |acc, end| {
                match (acc, &spaces[end.edge][end.end].index) {
                    (Index::Finite(a), Index::Finite(b)) => Index::Finite(a + b),
                    _ => Index::Infinite,
                }
            })
    };
    let mut ball = TreeBall {
        root: 0,
        radius,
        branch_cap,
        nodes: vec![BallNode {
            id: 0,
            vertex: root.to_string(),
            address: Vec::new(),
            parent: None,
            parent_edge: None,
            children: Vec::new(),
            distance: 0,
            truncated: false,
            frontier: radius == 0,
            true_valence: valence(root_v),
            realized_valence: 0,
            depth: None,
        }],
        edges: Vec::new(),
    };
    // Node, its vertex, and the graph end it was entered through.
    let mut queue: VecDeque<(usize, usize, Option<EndRef>)> = VecDeque::from([(0, root_v, None)]);
    while let Some((node, v, arrival)) = queue.pop_front() {
        if ball.nodes[node].distance >= radius {
            ball.nodes[node].frontier = true;
            ball.nodes[node].realized_valence = usize::from(arrival.is_some());
            continue;
        }
        for end in g.incident_ends(v) {
            let space = &spaces[end.edge][end.end];
            let skip_zero = arrival == Some(end);
            for coset in space.representatives(branch_cap, skip_zero) {
                if ball.nodes.len() >= MAX_BALL_NODES {
                    return Err(Error::BallTooLarge(MAX_BALL_NODES));
                }
                let child = ball.nodes.len();
                let edge_id = g.edges()[end.edge].id.clone();
                let local = span_at(g, end);
                let span = match to_root(g, &ball, node, local.clone()) {
                    Some(s) => EdgeSpan::Root(s),
                    None => EdgeSpan::Local(local),
                };
                let w = g.end_vertex(end.opposite());
                let mut address = ball.nodes[node].address.clone();
                address.push(AddressStep {
                    edge: edge_id.clone(),
                    end: end.end,
                    coset,
                });
                ball.edges.push(BallEdge {
                    id: ball.edges.len(),
                    edge: edge_id,
                    parent: node,
                    child,
                    parent_end: end.end,
                    span,
                    depth: None,
                });
                ball.nodes.push(BallNode {
                    id: child,
                    vertex: g.vertices()[w].id.clone(),
                    address,
                    parent: Some(node),
                    parent_edge: Some(ball.edges.len() - 1),
                    children: Vec::new(),
                    distance: ball.nodes[node].distance + 1,
                    truncated: false,
                    frontier: false,
                    true_valence: valence(w),
                    realized_valence: 0,
                    depth: None,
                });
                ball.nodes[node].children.push(child);
                queue.push_back((child, w, Some(end.opposite())));
            }
        }
        let n = &mut ball.nodes[node];
        n.realized_valence = n.children.len() + usize::from(n.parent.is_some());
        n.truncated = match n.true_valence.finite().and_then(|x| x.to_usize()) {
            Some(t) => n.realized_valence < t,
            None => true,
        };
    }
    Ok(ball)
}
