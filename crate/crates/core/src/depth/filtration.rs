use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Serialize, Serializer};

use super::rafts::{depth_zero_rafts, make_raft, Raft, RaftMember};
use crate::error::{Error, Result};
use crate::gog::{
    explore_orbit, reducible_edges, ClassToken, Exploration, ExploreBounds, GraphOfGroups, Orbit, Relation,
};

pub const DEFAULT_LOOP_BOUND: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DepthConfig {
    /// Traversals allowed per edge along one transport path.
    pub loop_bound: usize,
    /// Maximum transport path length; `None` means twice the edge count.
    pub horizon: Option<usize>,
}

impl Default for DepthConfig {
    fn default() -> Self {
        DepthConfig {
            loop_bound: DEFAULT_LOOP_BOUND,
            horizon: None,
        }
    }
}

impl DepthConfig {
    pub fn horizon_for(&self, g: &GraphOfGroups) -> usize {
        self.horizon.unwrap_or_else(|| (2 * g.edges().len()).max(1))
    }
}

/// One strict coarse inclusion `X_from ⊊ X_to'` for some lift `to'` of `to`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessStep {
    pub from: Orbit,
    pub to: Orbit,
    /// Vertex where the comparison happens.
    pub vertex: String,
    /// Class of `from` transported to `vertex`.
    pub class: ClassToken,
    pub target_class: ClassToken,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Finite(usize),
    /// A cycle of strict inclusions; following it around gives an infinite
    /// strictly increasing chain. Empty when there are no depth-zero rafts.
    Infinite(Vec<WitnessStep>),
    Unknown(usize),
}

impl Verdict {
    pub fn is_finite(&self) -> bool {
        matches!(self, Verdict::Finite(_))
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Finite(d) => write!(f, "Finite({d})"),
            Verdict::Infinite(_) => write!(f, "Infinite"),
            Verdict::Unknown(h) => write!(f, "Unknown({h})"),
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Level {
    pub level: usize,
    pub rafts: Vec<Raft>,
    /// Components of the subgraph of orbits with depth at most `level`.
    pub flotillas: Vec<Vec<Orbit>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DepthAssignment {
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witness: Vec<WitnessStep>,
    /// Assigned orbits only; complete when the verdict is finite.
    pub depth: BTreeMap<Orbit, usize>,
    pub levels: Vec<Level>,
    pub loop_bound: usize,
    pub horizon: usize,
}

impl DepthAssignment {
    pub fn depth_of(&self, orbit: &Orbit) -> Option<usize> {
        self.depth.get(orbit).copied()
    }

    pub fn depth_zero_rafts(&self) -> &[Raft] {
        self.levels.first().map_or(&[], |l| l.rafts.as_slice())
    }

    /// True when `vertex` alone forms a depth-zero raft.
    pub fn is_one_vertex_raft(&self, vertex: &str) -> bool {
        self.depth_zero_rafts()
            .iter()
            .any(|r| r.sole_vertex() == Some(vertex))
    }
}

/// Orbits strictly below or equivalent to others, found by bounded transport.
pub(crate) struct InclusionData {
    pub orbits: Vec<Orbit>,
    pub explorations: Vec<Exploration>,
}

impl InclusionData {
    pub fn compute(g: &GraphOfGroups, bounds: ExploreBounds) -> Self {
        let orbits = g.orbits();
        let oracle = g.oracle();
        let explorations = orbits
            .iter()
            .map(|o| explore_orbit(g, oracle.as_ref(), o, bounds))
            .collect();
        InclusionData { orbits, explorations }
    }

    fn index(&self, o: &Orbit) -> usize {
        self.orbits.binary_search(o).expect("orbit of this graph")
    }

    fn strict_targets(&self, i: usize) -> Vec<(usize, &Relation)> {
        self.explorations[i]
            .strictly_above()
            .map(|r| (self.index(r.target()), r))
            .collect()
    }

    pub fn truncated(&self) -> bool {
        self.explorations.iter().any(|e| e.truncated)
    }
}

fn step(from: &Orbit, rel: &Relation) -> WitnessStep {
    match rel {
        Relation::StrictlyBelow {
            target,
            vertex,
            class,
            target_class,
            ..
        } => WitnessStep {
            from: from.clone(),
            to: target.clone(),
            vertex: vertex.clone(),
            class: class.clone(),
            target_class: target_class.clone(),
        },
        Relation::Equivalent { .. } => unreachable!("only strict relations form witnesses"),
    }
}

/// Depth of every vertex and edge orbit, with rafts and flotillas per level.
pub fn depth_filtration(g: &GraphOfGroups, cfg: &DepthConfig) -> Result<DepthAssignment> {
    if let Some((edge, end)) = reducible_edges(g).into_iter().next() {
        return Err(Error::MustReduceFirst { edge, end });
    }
    let horizon = cfg.horizon_for(g);
    let zero = depth_zero_rafts(g);
    let mut out = DepthAssignment {
        verdict: Verdict::Infinite(Vec::new()),
        witness: Vec::new(),
        depth: BTreeMap::new(),
        levels: Vec::new(),
        loop_bound: cfg.loop_bound,
        horizon,
    };
    if zero.is_empty() {
        return Ok(out);
    }
    let data = InclusionData::compute(g, ExploreBounds::new(cfg.loop_bound, horizon));
    let n = data.orbits.len();
    let mut depth: Vec<Option<usize>> = vec![None; n];
    for raft in &zero {
        for o in raft.orbits() {
            depth[data.index(o)] = Some(0);
        }
    }
    let succ: Vec<Vec<(usize, &Relation)>> = (0..n).map(|i| data.strict_targets(i)).collect();
    loop {
        let mut changed = false;
        for i in 0..n {
            if depth[i].is_some() {
                continue;
            }
            let above: Option<Vec<usize>> = succ[i].iter().map(|(j, _)| depth[*j]).collect();
            if let Some(above) = above {
                depth[i] = Some(above.iter().max().map_or(0, |d| d + 1));
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    for (i, d) in depth.iter().enumerate() {
        if let Some(d) = d {
            out.depth.insert(data.orbits[i].clone(), *d);
        }
    }
    out.levels = levels(g, &data, &depth, zero);

    if let Some(start) = (0..n).find(|&i| depth[i].is_none()) {
        // Every unassigned orbit has an unassigned strict successor, so
        // following them must close a cycle.
        let mut path = vec![start];
        let mut steps: Vec<WitnessStep> = Vec::new();
        let mut at = start;
        loop {
            let (next, rel) = *succ[at]
                .iter()
                .find(|(j, _)| depth[*j].is_none())
                .expect("stuck orbit has an unassigned successor");
            steps.push(step(&data.orbits[at], rel));
            if let Some(pos) = path.iter().position(|&p| p == next) {
                let cycle = steps.split_off(pos);
                out.witness = cycle.clone();
                out.verdict = Verdict::Infinite(cycle);
                return Ok(out);
            }
            path.push(next);
            at = next;
        }
    }
    out.verdict = if data.truncated() {
        Verdict::Unknown(horizon)
    } else {
        Verdict::Finite(out.depth.values().copied().max().unwrap_or(0))
    };
    Ok(out)
}

fn flotillas(g: &GraphOfGroups, depth: &[Option<usize>], orbits: &[Orbit], level: usize) -> Vec<Vec<Orbit>> {
    let within = |o: Orbit| {
        orbits
            .binary_search(&o)
            .ok()
            .and_then(|i| depth[i])
            .is_some_and(|d| d <= level)
    };
    let vs: Vec<usize> = (0..g.vertices().len())
        .filter(|&v| within(g.vertex_orbit(v)))
        .collect();
    let es: Vec<usize> = (0..g.edges().len())
        .filter(|&e| within(g.edge_orbit(e)))
        .collect();
    let mut out: Vec<Vec<Orbit>> = g
        .components(&vs, &es)
        .into_iter()
        .map(|(cv, ce)| {
            let mut m: Vec<Orbit> = cv
                .into_iter()
                .map(|v| g.vertex_orbit(v))
                .chain(ce.into_iter().map(|e| g.edge_orbit(e)))
                .collect();
            m.sort();
            m
        })
        .collect();
    out.sort();
    out
}

fn levels(g: &GraphOfGroups, data: &InclusionData, depth: &[Option<usize>], zero: Vec<Raft>) -> Vec<Level> {
    let max = depth.iter().flatten().copied().max().unwrap_or(0);
    let mut out = vec![Level {
        level: 0,
        rafts: zero,
        flotillas: flotillas(g, depth, &data.orbits, 0),
    }];
    for level in 1..=max {
        let below = out[level - 1].flotillas.clone();
        let own: Vec<usize> = (0..data.orbits.len())
            .filter(|&i| depth[i] == Some(level))
            .collect();
        let mut uf = crate::gog::UnionFind::new(data.orbits.len());
        for &i in &own {
            for t in data.explorations[i].equivalents() {
                let j = data.index(t);
                if depth[j] == Some(level) {
                    uf.union(i, j);
                }
            }
        }
        let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &i in &own {
            classes.entry(uf.find(i)).or_default().push(i);
        }
        let mut used: BTreeSet<usize> = BTreeSet::new();
        let mut rafts = Vec::new();
        for members in classes.values() {
            let mut ends: BTreeSet<Orbit> = BTreeSet::new();
            for &i in members {
                if let Orbit::Edge(id) = &data.orbits[i] {
                    if let Ok(e) = g.edge(id) {
                        for end in &e.ends {
                            ends.insert(Orbit::Vertex(end.vertex.clone()));
                        }
                    }
                }
            }
            let mut raft: Vec<RaftMember> = members
                .iter()
                .map(|&i| RaftMember {
                    orbit: data.orbits[i].clone(),
                    own_level: true,
                })
                .collect();
            for (k, f) in below.iter().enumerate() {
                if f.iter().any(|o| ends.contains(o)) {
                    used.insert(k);
                    raft.extend(f.iter().map(|o| RaftMember {
                        orbit: o.clone(),
                        own_level: false,
                    }));
                }
            }
            rafts.push(make_raft(level, raft));
        }
        for (k, f) in below.iter().enumerate() {
            if !used.contains(&k) {
                let members = f
                    .iter()
                    .map(|o| RaftMember {
                        orbit: o.clone(),
                        own_level: false,
                    })
                    .collect();
                rafts.push(make_raft(level, members));
            }
        }
        rafts.sort_by(|a, b| a.members.cmp(&b.members));
        out.push(Level {
            level,
            rafts,
            flotillas: flotillas(g, depth, &data.orbits, level),
        });
    }
    out
}
