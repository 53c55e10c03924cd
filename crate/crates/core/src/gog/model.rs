use super::oracle::{AbelianOracle, CommOracle, TableView};
use super::table::TableOracle;
use super::{EndRef, Orbit};
use crate::error::{Error, Result};
use crate::exactlin::RatMatrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSpec {
    pub id: String,
    /// Rank of the vertex group; torsion is not tracked.
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeEnd {
    pub vertex: String,
    /// `n_v × n_e` integer injection matrix. Unused (0×0) for table graphs.
    pub matrix: RatMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSpec {
    pub id: String,
    pub rank: usize,
    pub ends: [EdgeEnd; 2],
}

impl EdgeSpec {
    pub fn is_loop(&self) -> bool {
        self.ends[0].vertex == self.ends[1].vertex
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleMode {
    Abelian,
    Table(TableOracle),
}

/// A finite graph of groups. Vertices and edges are kept sorted by id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphOfGroups {
    vertices: Vec<VertexSpec>,
    edges: Vec<EdgeSpec>,
    oracle: OracleMode,
}

impl GraphOfGroups {
    pub fn new(mut vertices: Vec<VertexSpec>, mut edges: Vec<EdgeSpec>, oracle: OracleMode) -> Self {
        vertices.sort_by(|a, b| a.id.cmp(&b.id));
        edges.sort_by(|a, b| a.id.cmp(&b.id));
        GraphOfGroups {
            vertices,
            edges,
            oracle,
        }
    }

    pub fn vertices(&self) -> &[VertexSpec] {
        &self.vertices
    }

    pub fn edges(&self) -> &[EdgeSpec] {
        &self.edges
    }

    pub fn oracle_mode(&self) -> &OracleMode {
        &self.oracle
    }

    pub fn is_abelian(&self) -> bool {
        matches!(self.oracle, OracleMode::Abelian)
    }

    pub fn table(&self) -> Option<&TableOracle> {
        match &self.oracle {
            OracleMode::Table(t) => Some(t),
            OracleMode::Abelian => None,
        }
    }

    pub fn oracle_name(&self) -> &'static str {
        match self.oracle {
            OracleMode::Abelian => "abelian",
            OracleMode::Table(_) => "table",
        }
    }

    pub fn oracle(&self) -> Box<dyn CommOracle + '_> {
        match &self.oracle {
            OracleMode::Abelian => Box::new(AbelianOracle::new(self)),
            OracleMode::Table(t) => Box::new(TableView::new(self, t)),
        }
    }

    pub fn require_abelian(&self, what: &str) -> Result<()> {
        if self.is_abelian() {
            Ok(())
        } else {
            Err(Error::UnsupportedOracle {
                oracle: self.oracle_name(),
                what: what.to_string(),
            })
        }
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    pub fn vertex(&self, id: &str) -> Result<&VertexSpec> {
        self.vertices
            .iter()
            .find(|v| v.id == id)
            .ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    pub fn edge(&self, id: &str) -> Result<&EdgeSpec> {
        self.edges
            .iter()
            .find(|e| e.id == id)
            .ok_or_else(|| Error::UnknownEdge(id.to_string()))
    }

    pub fn end(&self, end: EndRef) -> &EdgeEnd {
        &self.edges[end.edge].ends[end.end]
    }

    /// Vertex index at the given end. Panics on dangling references; callers
    /// work with validated graphs.
    pub fn end_vertex(&self, end: EndRef) -> usize {
        let id = &self.end(end).vertex;
        self.vertex_index(id)
            .unwrap_or_else(|| panic!("dangling vertex reference `{id}`"))
    }

    pub fn end_ref(&self, edge_id: &str, end: usize) -> Result<EndRef> {
        let edge = self
            .edge_index(edge_id)
            .ok_or_else(|| Error::UnknownEdge(edge_id.to_string()))?;
        if end > 1 {
            return Err(Error::ShapeMismatch(format!(
                "edge end index {end} (expected 0 or 1)"
            )));
        }
        Ok(EndRef { edge, end })
    }

    /// Edge-ends incident to a vertex, ordered by (edge id, end index). Both
    /// ends of a loop are listed.
    pub fn incident_ends(&self, vertex: usize) -> Vec<EndRef> {
        let id = &self.vertices[vertex].id;
        let mut out = Vec::new();
        for (ei, e) in self.edges.iter().enumerate() {
            for end in 0..2 {
                if &e.ends[end].vertex == id {
                    out.push(EndRef { edge: ei, end });
                }
            }
        }
        out
    }

    pub fn orbits(&self) -> Vec<Orbit> {
        let mut out: Vec<Orbit> = self
            .vertices
            .iter()
            .map(|v| Orbit::Vertex(v.id.clone()))
            .chain(self.edges.iter().map(|e| Orbit::Edge(e.id.clone())))
            .collect();
        out.sort();
        out
    }

    pub fn edge_orbit(&self, edge: usize) -> Orbit {
        Orbit::Edge(self.edges[edge].id.clone())
    }

    pub fn vertex_orbit(&self, vertex: usize) -> Orbit {
        Orbit::Vertex(self.vertices[vertex].id.clone())
    }

    /// Connected components of the subgraph spanned by `vertices` (indices)
    /// and those `edges` whose endpoints both lie in it. Each component is a
    /// pair of sorted index lists.
    pub(crate) fn components(&self, vertices: &[usize], edges: &[usize]) -> Vec<(Vec<usize>, Vec<usize>)> {
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut c = x;
            while p[c] != r {
                let n = p[c];
                p[c] = r;
                c = n;
            }
            r
        }
        let in_set: Vec<bool> = (0..self.vertices.len()).map(|v| vertices.contains(&v)).collect();
        let mut used_edges = Vec::new();
        for &e in edges {
            let a = self.end_vertex(EndRef::new(e, 0));
            let b = self.end_vertex(EndRef::new(e, 1));
            if in_set[a] && in_set[b] {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra] = rb;
                used_edges.push(e);
            }
        }
        let mut groups: std::collections::BTreeMap<usize, (Vec<usize>, Vec<usize>)> = Default::default();
        for &v in vertices {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().0.push(v);
        }
        for e in used_edges {
            let r = find(&mut parent, self.end_vertex(EndRef::new(e, 0)));
            groups.entry(r).or_default().1.push(e);
        }
        let mut comps: Vec<(Vec<usize>, Vec<usize>)> = groups
            .into_values()
            .map(|(mut vs, mut es)| {
                vs.sort_unstable();
                vs.dedup();
                es.sort_unstable();
                es.dedup();
                (vs, es)
            })
            .collect();
        comps.sort();
        comps
    }
}
