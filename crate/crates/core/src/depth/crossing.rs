use serde::Serialize;

use super::filtration::DepthAssignment;
use crate::error::{Error, Result};
use crate::exactlin::RationalSubspace;
use crate::gog::{ClassToken, GraphOfGroups};

/// Edge-end contributing a node of the crossing graph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct EndLabel {
    pub edge: String,
    pub end: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossingNode {
    pub span: RationalSubspace,
    pub ends: Vec<EndLabel>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum CrossingVerdict {
    Empty,
    Connected,
    /// Every incident edge span lies in `witness`.
    Disconnected {
        witness: RationalSubspace,
    },
}

impl CrossingVerdict {
    pub fn is_ok(&self) -> bool {
        !matches!(self, CrossingVerdict::Disconnected { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossingGraph {
    pub vertex: String,
    pub nodes: Vec<CrossingNode>,
    pub adjacency: Vec<Vec<bool>>,
    pub verdict: CrossingVerdict,
    /// Edge spaces that coarsely separate an abelian vertex space are
    /// hyperplanes, so the separation half of the condition always holds.
    pub separation_condition_holds: bool,
}

/// Crossing graph at a vertex that forms a one-vertex depth-zero raft.
pub fn crossing_graph(g: &GraphOfGroups, vertex: &str, da: &DepthAssignment) -> Result<CrossingGraph> {
    g.require_abelian("crossing graphs")?;
    g.vertex(vertex)?;
    if !da.is_one_vertex_raft(vertex) {
        return Err(Error::WrongVertex {
            vertex: vertex.to_string(),
        });
    }
    crossing_graph_unchecked(g, vertex)
}

pub(crate) fn crossing_graph_unchecked(g: &GraphOfGroups, vertex: &str) -> Result<CrossingGraph> {
    g.require_abelian("crossing graphs")?;
    let v = g
        .vertex_index(vertex)
        .ok_or_else(|| Error::UnknownVertex(vertex.to_string()))?;
    let n = g.vertices()[v].rank;
    let oracle = g.oracle();
    let mut nodes: Vec<CrossingNode> = Vec::new();
    let mut total = RationalSubspace::zero(n);
    for end in g.incident_ends(v) {
        let ClassToken::Span(span) = oracle.class_of(end) else {
            unreachable!("abelian oracle yields spans")
        };
        total = total.sum(&span)?;
        if n == 0 || span.dim() + 1 != n {
            continue;
        }
        let label = EndLabel {
            edge: g.edges()[end.edge].id.clone(),
            end: end.end,
        };
        match nodes.iter_mut().find(|node| node.span == span) {
            Some(node) => node.ends.push(label),
            None => nodes.push(CrossingNode {
                span,
                ends: vec![label],
            }),
        }
    }
    nodes.sort_by(|a, b| a.span.cmp(&b.span));
    // Distinct hyperplanes always cross.
    let k = nodes.len();
    let adjacency = (0..k).map(|i| (0..k).map(|j| i != j).collect()).collect();
    let verdict = if nodes.is_empty() {
        CrossingVerdict::Empty
    } else if total.is_full() {
        CrossingVerdict::Connected
    } else {
        CrossingVerdict::Disconnected {
            witness: total
                .extend_to_hyperplane()
                .expect("a proper subspace lies in a hyperplane"),
        }
    };
    Ok(CrossingGraph {
        vertex: vertex.to_string(),
        nodes,
        adjacency,
        verdict,
        separation_condition_holds: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::depth::{depth_filtration, DepthConfig};
    use crate::gog::graph_from_json;

    fn one_loop(rank: usize, edge_rank: usize, m0: &str, m1: &str) -> GraphOfGroups {
        graph_from_json(&format!(
            r#"{{"vertices": [{{"id": "v", "rank": {rank}}}],
                "edges": [{{"id": "t", "rank": {edge_rank}, "ends": [
                  {{"vertex": "v", "matrix": {m0}}}, {{"vertex": "v", "matrix": {m1}}}]}}]}}"#
        ))
        .unwrap()
    }

    #[test]
    fn two_planes_spanning_space_connect() {
        let g = one_loop(3, 2, "[[1, 0], [0, 1], [0, 0]]", "[[0, 0], [1, 0], [0, 1]]");
        let da = depth_filtration(&g, &DepthConfig::default()).unwrap();
        let cg = crossing_graph(&g, "v", &da).unwrap();
        assert_eq!(cg.nodes.len(), 2);
        assert_eq!(cg.verdict, CrossingVerdict::Connected);
    }

    #[test]
    fn single_line_disconnects() {
        let g = one_loop(2, 1, "[[1], [0]]", "[[1], [0]]");
        let da = depth_filtration(&g, &DepthConfig::default()).unwrap();
        let cg = crossing_graph(&g, "v", &da).unwrap();
        assert_eq!(cg.nodes.len(), 1);
        assert_eq!(cg.nodes[0].ends.len(), 2);
        let h = RationalSubspace::from_int_vectors(2, &[vec![1, 0]]).unwrap();
        assert_eq!(cg.verdict, CrossingVerdict::Disconnected { witness: h });
    }

    #[test]
    fn no_hyperplanes_is_empty() {
        let g = one_loop(3, 1, "[[1], [0], [0]]", "[[0], [1], [0]]");
        let da = depth_filtration(&g, &DepthConfig::default()).unwrap();
        assert_eq!(
            crossing_graph(&g, "v", &da).unwrap().verdict,
            CrossingVerdict::Empty
        );
    }
}
