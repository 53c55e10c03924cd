use std::collections::BTreeSet;

use serde::Serialize;

use super::explore::{explore_orbit, ExploreBounds};
use super::model::{GraphOfGroups, OracleMode};
use super::Orbit;

/// Abstract commensurability type of one coarse-equivalence class of vertex
/// and edge spaces.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "oracle", rename_all = "snake_case")]
pub enum ClassDescriptor {
    Abelian { rank: usize },
    Table { types: Vec<String> },
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut x = x;
        while self.parent[x] != r {
            let next = self.parent[x];
            self.parent[x] = r;
            x = next;
        }
        r
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            self.parent[hi] = lo;
        }
    }
}

/// One descriptor per coarse-equivalence class of vertex and edge orbits,
/// sorted. Equivalences are found along transport paths that use each edge at
/// most `loop_bound` times.
pub fn comm_classes(g: &GraphOfGroups, loop_bound: usize) -> Vec<ClassDescriptor> {
    let orbits = g.orbits();
    let oracle = g.oracle();
    let bounds = ExploreBounds::new(loop_bound, loop_bound.saturating_mul(g.edges().len().max(1)));
    let mut uf = UnionFind::new(orbits.len());
    for (i, o) in orbits.iter().enumerate() {
        let ex = explore_orbit(g, oracle.as_ref(), o, bounds);
        for t in ex.equivalents() {
            if let Some(j) = orbits.iter().position(|x| x == t) {
                uf.union(i, j);
            }
        }
    }
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); orbits.len()];
    for i in 0..orbits.len() {
        let r = uf.find(i);
        members[r].push(i);
    }
    let mut out: Vec<ClassDescriptor> = members
        .into_iter()
        .filter(|m| !m.is_empty())
        .map(|m| describe(g, &orbits, &m))
        .collect();
    out.sort();
    out
}

fn describe(g: &GraphOfGroups, orbits: &[Orbit], members: &[usize]) -> ClassDescriptor {
    match g.oracle_mode() {
        OracleMode::Abelian => {
            let rank = match &orbits[members[0]] {
                Orbit::Vertex(id) => g.vertex(id).map(|v| v.rank).unwrap_or(0),
                Orbit::Edge(id) => g.edge(id).map(|e| e.rank).unwrap_or(0),
            };
            ClassDescriptor::Abelian { rank }
        }
        OracleMode::Table(t) => {
            let oracle = g.oracle();
            let mut types = BTreeSet::new();
            for &i in members {
                match &orbits[i] {
                    Orbit::Vertex(id) => {
                        if let Some(v) = g.vertex_index(id) {
                            types.insert(t.abstract_type(&oracle.top_class(v).to_string()).to_string());
                        }
                    }
                    Orbit::Edge(id) => {
                        if let Some(e) = g.edge_index(id) {
                            let c = oracle.class_of(super::EndRef::new(e, 0)).to_string();
                            types.insert(t.abstract_type(&c).to_string());
                        }
                    }
                }
            }
            ClassDescriptor::Table {
                types: types.into_iter().collect(),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gog::graph_from_json;

    #[test]
    fn single_vertex() {
        let g = graph_from_json(r#"{"vertices": [{"id": "v", "rank": 3}]}"#).unwrap();
        assert_eq!(comm_classes(&g, 3), vec![ClassDescriptor::Abelian { rank: 3 }]);
    }

    #[test]
    fn identity_edge_merges_its_endpoints() {
        let g = graph_from_json(
            r#"{"vertices": [{"id": "a", "rank": 2}, {"id": "b", "rank": 2}],
                "edges": [{"id": "e", "rank": 2, "ends": [
                  {"vertex": "a", "matrix": [[1, 0], [0, 1]]}, {"vertex": "b", "matrix": [[2, 0], [0, 1]]}]}]}"#,
        )
        .unwrap();
        assert_eq!(comm_classes(&g, 3), vec![ClassDescriptor::Abelian { rank: 2 }]);
    }
}
