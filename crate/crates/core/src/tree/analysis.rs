use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write;

use serde::Serialize;

use super::ball::TreeBall;
use crate::depth::{DepthAssignment, Verdict};
use crate::error::{Error, Result};
use crate::exactlin::RationalSubspace;
use crate::gog::{ClassToken, EndRef, GraphOfGroups, Orbit, UnionFind};

/// A vertex or edge of a ball.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "kind", content = "id", rename_all = "snake_case")]
pub enum Element {
    Node(usize),
    Edge(usize),
}

impl TreeBall {
    pub fn orbit_of(&self, el: Element) -> Orbit {
        match el {
            Element::Node(i) => Orbit::Vertex(self.nodes[i].vertex.clone()),
            Element::Edge(i) => Orbit::Edge(self.edges[i].edge.clone()),
        }
    }

    /// Twice the distance from the root: nodes at even values, edge
    /// midpoints at odd ones.
    pub fn half_distance(&self, el: Element) -> usize {
        match el {
            Element::Node(i) => 2 * self.nodes[i].distance,
            Element::Edge(i) => 2 * self.nodes[self.edges[i].parent].distance + 1,
        }
    }

    pub fn elements(&self) -> Vec<Element> {
        (0..self.nodes.len())
            .map(Element::Node)
            .chain((0..self.edges.len()).map(Element::Edge))
            .collect()
    }
}

/// Copies depth labels onto the ball by orbit and checks that strict
/// inclusions between root-frame edge spans increase the label.
pub fn annotate_depth(ball: &TreeBall, da: &DepthAssignment) -> Result<TreeBall> {
    if !matches!(da.verdict, Verdict::Finite(_)) {
        return Err(Error::NoFiniteDepth(da.verdict.to_string()));
    }
    let mut out = ball.clone();
    for el in ball.elements() {
        let orbit = ball.orbit_of(el);
        let d = da.depth_of(&orbit).ok_or(Error::GraphMismatch(orbit))?;
        match el {
            Element::Node(i) => out.nodes[i].depth = Some(d),
            Element::Edge(i) => out.edges[i].depth = Some(d),
        }
    }
    let rooted: Vec<(usize, &RationalSubspace, usize)> = out
        .edges
        .iter()
        .filter_map(|e| Some((e.id, e.span.root()?, e.depth?)))
        .collect();
    for &(a, sa, da_) in &rooted {
        for &(b, sb, db) in &rooted {
            if sb.strictly_contains(sa)? && da_ <= db {
                return Err(Error::InconsistentLabels(format!(
                    "ball edge {a} ({}) has span {sa} strictly inside ball edge {b} ({}) span {sb} \
                     but depth {da_} <= {db}",
                    out.edges[a].edge, out.edges[b].edge
                )));
            }
        }
    }
    Ok(out)
}

fn span_at(g: &GraphOfGroups, end: EndRef) -> RationalSubspace {
    match g.oracle().class_of(end) {
        ClassToken::Span(s) => s,
        ClassToken::Label(_) => unreachable!("balls are built for abelian graphs"),
    }
}

/// Graph end of a ball edge at one of its nodes.
fn end_at(g: &GraphOfGroups, ball: &TreeBall, edge: usize, node: usize) -> Result<EndRef> {
    let te = &ball.edges[edge];
    let e = g
        .edge_index(&te.edge)
        .ok_or_else(|| Error::UnknownEdge(te.edge.clone()))?;
    Ok(if node == te.parent {
        EndRef::new(e, te.parent_end)
    } else {
        EndRef::new(e, 1 - te.parent_end)
    })
}

/// For each ball element, the elements whose spaces coarsely contain it.
/// A class moves across a tree edge only while it lies in that edge's span.
fn containments(g: &GraphOfGroups, ball: &TreeBall) -> Result<BTreeMap<Element, Vec<Element>>> {
    let mut out = BTreeMap::new();
    for source in ball.elements() {
        let mut start: Vec<(usize, RationalSubspace)> = Vec::new();
        match source {
            Element::Node(i) => {
                let v = g
                    .vertex_index(&ball.nodes[i].vertex)
                    .ok_or_else(|| Error::UnknownVertex(ball.nodes[i].vertex.clone()))?;
                start.push((i, RationalSubspace::full(g.vertices()[v].rank)));
            }
            Element::Edge(j) => {
                for node in [ball.edges[j].parent, ball.edges[j].child] {
                    start.push((node, span_at(g, end_at(g, ball, j, node)?)));
                }
            }
        }
        let mut above = Vec::new();
        let mut visited = vec![false; ball.nodes.len()];
        let mut queue: VecDeque<(usize, RationalSubspace)> = start.into_iter().collect();
        while let Some((x, class)) = queue.pop_front() {
            if visited[x] {
                continue;
            }
            visited[x] = true;
            above.push(Element::Node(x));
            for te in ball.incident_edges(x) {
                let end = end_at(g, ball, te, x)?;
                let span = span_at(g, end);
                if !span.contains(&class)? {
                    continue;
                }
                above.push(Element::Edge(te));
                let y = if ball.edges[te].parent == x {
                    ball.edges[te].child
                } else {
                    ball.edges[te].parent
                };
                let moved = class
                    .preimage(&g.end(end).matrix)?
                    .image(&g.end(end.opposite()).matrix)?;
                queue.push_back((y, moved));
            }
        }
        above.sort();
        above.dedup();
        out.insert(source, above);
    }
    Ok(out)
}

/// Longest strictly increasing chain of coarse inclusions above each ball
/// element, searched exhaustively inside the ball.
pub fn strict_chain_depths(g: &GraphOfGroups, ball: &TreeBall) -> Result<BTreeMap<Element, usize>> {
    g.require_abelian("tree balls")?;
    let above = containments(g, ball)?;
    let strict: BTreeMap<Element, Vec<Element>> = above
        .iter()
        .map(|(a, ups)| {
            let s = ups.iter().filter(|b| !above[b].contains(a)).copied().collect();
            (*a, s)
        })
        .collect();
    let mut memo: BTreeMap<Element, usize> = BTreeMap::new();
    fn longest(
        a: Element,
        strict: &BTreeMap<Element, Vec<Element>>,
        memo: &mut BTreeMap<Element, usize>,
    ) -> usize {
        if let Some(&d) = memo.get(&a) {
            return d;
        }
        let d = strict[&a]
            .iter()
            .map(|&b| longest(b, strict, memo) + 1)
            .max()
            .unwrap_or(0);
        memo.insert(a, d);
        d
    }
    for &a in strict.keys() {
        longest(a, &strict, &mut memo);
    }
    Ok(memo)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BallCrossingVerdict {
    Empty,
    Connected,
    Disconnected,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BallCrossing {
    /// Ball edges at the root with hyperplane spans.
    pub nodes: Vec<usize>,
    pub components: usize,
    pub verdict: BallCrossingVerdict,
}

/// Crossing graph on the realized root edges of a ball: hyperplane edges are
/// joined when they cross or when a third root edge crosses both.
pub fn ball_crossing_check(g: &GraphOfGroups, ball: &TreeBall) -> Result<BallCrossing> {
    g.require_abelian("tree balls")?;
    if ball.radius == 0 {
        return Err(Error::RadiusZero);
    }
    let root = ball.root;
    let n = g.vertex(&ball.root_node().vertex)?.rank;
    let spans: Vec<(usize, RationalSubspace)> = ball
        .incident_edges(root)
        .into_iter()
        .map(|te| Ok((te, span_at(g, end_at(g, ball, te, root)?))))
        .collect::<Result<_>>()?;
    let nodes: Vec<usize> = (0..spans.len())
        .filter(|&i| n > 0 && spans[i].1.dim() + 1 == n)
        .collect();
    let mut uf = UnionFind::new(nodes.len());
    for a in 0..nodes.len() {
        for b in a + 1..nodes.len() {
            let (ha, hb) = (&spans[nodes[a]].1, &spans[nodes[b]].1);
            let joined = ha != hb
                || spans.iter().enumerate().any(|(k, (_, w))| {
                    k != nodes[a]
                        && k != nodes[b]
                        && !ha.contains(w).unwrap_or(true)
                        && !hb.contains(w).unwrap_or(true)
                });
            if joined {
                uf.union(a, b);
            }
        }
    }
    let mut roots: Vec<usize> = (0..nodes.len()).map(|i| uf.find(i)).collect();
    roots.sort_unstable();
    roots.dedup();
    let verdict = match roots.len() {
        0 => BallCrossingVerdict::Empty,
        1 => BallCrossingVerdict::Connected,
        _ => BallCrossingVerdict::Disconnected,
    };
    Ok(BallCrossing {
        nodes: nodes.iter().map(|&i| spans[i].0).collect(),
        components: roots.len(),
        verdict,
    })
}

fn address_text(ball: &TreeBall, node: usize) -> String {
    let steps: Vec<String> = ball.nodes[node]
        .address
        .iter()
        .map(|s| {
            let c: Vec<String> = s.coset.iter().map(|x| x.to_string()).collect();
            format!("{}.{}({})", s.edge, s.end, c.join(","))
        })
        .collect();
    if steps.is_empty() {
        "root".into()
    } else {
        steps.join("/")
    }
}

/// DOT digraph of the ball, parent to child, in address order.
pub fn to_dot(ball: &TreeBall) -> String {
    let mut order: Vec<usize> = (0..ball.nodes.len()).collect();
    order.sort_by(|&a, &b| ball.nodes[a].address.cmp(&ball.nodes[b].address));
    let mut out = String::from("digraph ball {\n");
    for &i in &order {
        let n = &ball.nodes[i];
        let mut label = format!("{}:{}", address_text(ball, i), n.vertex);
        if let Some(d) = n.depth {
            let _ = write!(label, " d={d}");
        }
        if n.truncated {
            label.push_str(" ...");
        }
        let _ = write!(out, "  \"n{i}\" [label=\"{label}\"");
        if n.truncated {
            out.push_str(", truncated=true");
        }
        out.push_str("];\n");
    }
    let mut edges: Vec<usize> = (0..ball.edges.len()).collect();
    edges.sort_by(|&a, &b| {
        ball.nodes[ball.edges[a].child]
            .address
            .cmp(&ball.nodes[ball.edges[b].child].address)
    });
    for j in edges {
        let e = &ball.edges[j];
        let mut label = e.edge.clone();
        if let Some(d) = e.depth {
            let _ = write!(label, " d={d}");
        }
        let _ = writeln!(
            out,
            "  \"n{}\" -> \"n{}\" [label=\"{label}\"];",
            e.parent, e.child
        );
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::depth::{depth_filtration, DepthConfig};
    use crate::gog::graph_from_json;
    use crate::tree::build_ball;

    fn arc() -> GraphOfGroups {
        graph_from_json(
            r#"{"vertices": [{"id": "u", "rank": 3}, {"id": "v", "rank": 3}, {"id": "w", "rank": 2}],
                "edges": [
                  {"id": "e", "rank": 2, "ends": [
                    {"vertex": "u", "matrix": [[1, 0], [0, 1], [0, 0]]},
                    {"vertex": "v", "matrix": [[1, 0], [0, 1], [0, 0]]}]},
                  {"id": "f", "rank": 1, "ends": [
                    {"vertex": "v", "matrix": [[1], [0], [0]]},
                    {"vertex": "w", "matrix": [[1], [0]]}]}]}"#,
        )
        .unwrap()
    }

    #[test]
    fn arc_labels_match_brute_force() {
        let g = arc();
        let da = depth_filtration(&g, &DepthConfig::default()).unwrap();
        let ball = build_ball(&g, "u", 3, 2).unwrap();
        let labeled = annotate_depth(&ball, &da).unwrap();
        let brute = strict_chain_depths(&g, &ball).unwrap();
        for (el, d) in brute {
            if ball.half_distance(el) <= 3 {
                let want = match el {
                    Element::Node(i) => labeled.nodes[i].depth,
                    Element::Edge(i) => labeled.edges[i].depth,
                };
                assert_eq!(Some(d), want, "{el:?}");
            }
        }
    }

    #[test]
    fn single_node_dot() {
        let g = graph_from_json(r#"{"vertices": [{"id": "u", "rank": 1}]}"#).unwrap();
        let ball = build_ball(&g, "u", 2, 3).unwrap();
        let dot = to_dot(&ball);
        assert!(dot.starts_with("digraph"));
        assert!(dot.contains("root:u"));
        assert!(matches!(
            ball_crossing_check(&g, &ball).unwrap().verdict,
            BallCrossingVerdict::Empty
        ));
    }

    #[test]
    fn truncation_is_marked_in_dot() {
        let g = graph_from_json(
            r#"{"vertices": [{"id": "v", "rank": 2}],
                "edges": [{"id": "t", "rank": 1, "ends": [
                  {"vertex": "v", "matrix": [[1], [0]]}, {"vertex": "v", "matrix": [[1], [0]]}]}]}"#,
        )
        .unwrap();
        let ball = build_ball(&g, "v", 1, 3).unwrap();
        assert!(to_dot(&ball).contains("truncated=true"));
        let bc = ball_crossing_check(&g, &ball).unwrap();
        assert_eq!(bc.nodes.len(), 6);
        assert_eq!(bc.verdict, BallCrossingVerdict::Disconnected);
    }
}
