use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gog::{CommOracle, EndRef, GraphOfGroups, Index, Orbit};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RaftKind {
    Point,
    Line,
    Bushy,
}

impl std::fmt::Display for RaftKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            RaftKind::Point => "point",
            RaftKind::Line => "line",
            RaftKind::Bushy => "bushy",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct RaftMember {
    pub orbit: Orbit,
    /// False for members absorbed from a lower-depth flotilla.
    pub own_level: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Raft {
    pub level: usize,
    /// Sorted by orbit.
    pub members: Vec<RaftMember>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kind: Option<RaftKind>,
}

impl Raft {
    pub fn orbits(&self) -> impl Iterator<Item = &Orbit> {
        self.members.iter().map(|m| &m.orbit)
    }

    pub fn contains(&self, orbit: &Orbit) -> bool {
        self.members.iter().any(|m| &m.orbit == orbit)
    }

    pub fn vertex_ids(&self) -> Vec<&str> {
        self.orbits().filter(|o| !o.is_edge()).map(|o| o.id()).collect()
    }

    pub fn edge_ids(&self) -> Vec<&str> {
        self.orbits().filter(|o| o.is_edge()).map(|o| o.id()).collect()
    }

    /// The single vertex of a raft with no edges.
    pub fn sole_vertex(&self) -> Option<&str> {
        match (self.vertex_ids().as_slice(), self.edge_ids().is_empty()) {
            ([v], true) => Some(v),
            _ => None,
        }
    }
}

pub(crate) fn make_raft(level: usize, mut members: Vec<RaftMember>) -> Raft {
    members.sort();
    members.dedup();
    Raft {
        level,
        members,
        kind: None,
    }
}

/// Maximal subgraphs in which every edge has finite-index image at both ends.
/// Vertices with a finite-index end on an edge outside such a subgraph belong
/// to no depth-zero raft.
pub fn depth_zero_rafts(g: &GraphOfGroups) -> Vec<Raft> {
    let oracle = g.oracle();
    let ff: Vec<usize> = (0..g.edges().len())
        .filter(|&e| oracle.finite_index_end(EndRef::new(e, 0)) && oracle.finite_index_end(EndRef::new(e, 1)))
        .collect();
    let all: Vec<usize> = (0..g.vertices().len()).collect();
    let mut out = Vec::new();
    for (vs, es) in g.components(&all, &ff) {
        let leaks = vs.iter().any(|&v| {
            g.incident_ends(v)
                .into_iter()
                .any(|end| !ff.contains(&end.edge) && oracle.finite_index_end(end))
        });
        if leaks {
            continue;
        }
        let members = vs
            .iter()
            .map(|&v| g.vertex_orbit(v))
            .chain(es.iter().map(|&e| g.edge_orbit(e)))
            .map(|orbit| RaftMember {
                orbit,
                own_level: true,
            })
            .collect();
        let mut raft = make_raft(0, members);
        raft.kind = Some(kind_of(g, oracle.as_ref(), &raft));
        out.push(raft);
    }
    out.sort_by(|a, b| a.members.cmp(&b.members));
    out
}

/// Bass-Serre valence of each raft vertex inside the raft: the sum of the
/// indices of the incident raft edge-ends.
pub fn raft_valences(g: &GraphOfGroups, raft: &Raft) -> Vec<(String, Index)> {
    let oracle = g.oracle();
    valences(g, oracle.as_ref(), raft)
}

fn valences(g: &GraphOfGroups, oracle: &dyn CommOracle, raft: &Raft) -> Vec<(String, Index)> {
    let edges = raft.edge_ids();
    raft.vertex_ids()
        .into_iter()
        .filter_map(|id| g.vertex_index(id).map(|v| (id, v)))
        .map(|(id, v)| {
            let total = g
                .incident_ends(v)
                .into_iter()
                .filter(|end| edges.contains(&g.edges()[end.edge].id.as_str()))
                .fold(Index::Finite(BigInt::from(0)), |acc, end| {
                    match (acc, oracle.index(end)) {
                        (Index::Finite(a), Index::Finite(b)) => Index::Finite(a + b),
                        _ => Index::Infinite,
                    }
                });
            (id.to_string(), total)
        })
        .collect()
}

fn kind_of(g: &GraphOfGroups, oracle: &dyn CommOracle, raft: &Raft) -> RaftKind {
    if raft.edge_ids().is_empty() {
        return RaftKind::Point;
    }
    let line = valences(g, oracle, raft)
        .iter()
        .all(|(_, ix)| ix.finite().and_then(|n| n.to_u64()) == Some(2));
    if line {
        RaftKind::Line
    } else {
        RaftKind::Bushy
    }
}

/// Point, line or bushy, for a depth-zero raft.
pub fn raft_kind(g: &GraphOfGroups, raft: &Raft) -> Result<RaftKind> {
    if raft.level != 0 {
        return Err(Error::WrongLevel(raft.level));
    }
    let oracle = g.oracle();
    Ok(kind_of(g, oracle.as_ref(), raft))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gog::graph_from_json;

    fn loop_graph(rank: usize, edge_rank: usize, m0: &str, m1: &str) -> GraphOfGroups {
        graph_from_json(&format!(
            r#"{{"vertices": [{{"id": "v", "rank": {rank}}}],
                "edges": [{{"id": "t", "rank": {edge_rank}, "ends": [
                  {{"vertex": "v", "matrix": {m0}}}, {{"vertex": "v", "matrix": {m1}}}]}}]}}"#
        ))
        .unwrap()
    }

    #[test]
    fn identity_loop_is_a_line() {
        let g = loop_graph(2, 2, "[[1, 0], [0, 1]]", "[[1, 0], [0, 1]]");
        let rafts = depth_zero_rafts(&g);
        assert_eq!(rafts.len(), 1);
        assert_eq!(rafts[0].members.len(), 2);
        assert_eq!(rafts[0].kind, Some(RaftKind::Line));
    }

    #[test]
    fn doubling_loop_is_bushy() {
        let g = loop_graph(1, 1, "[[2]]", "[[2]]");
        let rafts = depth_zero_rafts(&g);
        assert_eq!(raft_kind(&g, &rafts[0]).unwrap(), RaftKind::Bushy);
        assert_eq!(
            raft_valences(&g, &rafts[0]),
            vec![("v".to_string(), Index::Finite(BigInt::from(4)))]
        );
    }

    #[test]
    fn infinite_index_loop_leaves_a_point() {
        let g = loop_graph(2, 1, "[[1], [0]]", "[[1], [0]]");
        let rafts = depth_zero_rafts(&g);
        assert_eq!(rafts.len(), 1);
        assert_eq!(rafts[0].sole_vertex(), Some("v"));
        assert_eq!(rafts[0].kind, Some(RaftKind::Point));
    }

    #[test]
    fn positive_level_has_no_kind() {
        let g = loop_graph(1, 1, "[[1]]", "[[1]]");
        let mut raft = depth_zero_rafts(&g).remove(0);
        raft.level = 1;
        assert_eq!(raft_kind(&g, &raft), Err(Error::WrongLevel(1)));
    }
}
