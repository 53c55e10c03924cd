//! Graphs of groups, commensurability oracles and complete reduction.

mod classes;
mod explore;
mod io;
mod model;
mod oracle;
mod reduce;
mod table;
mod validate;

use std::fmt;

use serde::{Serialize, Serializer};

pub(crate) use classes::UnionFind;
pub use classes::{comm_classes, ClassDescriptor};
pub use explore::{explore_orbit, Exploration, ExploreBounds, Relation};
pub(crate) use io::IntEntry;
pub use io::{graph_from_json, graph_to_json};
pub use model::{EdgeEnd, EdgeSpec, GraphOfGroups, OracleMode, VertexSpec};
pub use oracle::{AbelianOracle, ClassToken, CommOracle, Index, TableView};
pub use reduce::{collapse, complete_reduce, reducible_edges, SelectionPolicy};
pub use table::{PdFlags, TableOracle};
pub use validate::{validate, ValidationReport, Violation, ViolationKind};

/// One end of an edge, by position in [`GraphOfGroups::edges`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EndRef {
    pub edge: usize,
    pub end: usize,
}

impl EndRef {
    pub fn new(edge: usize, end: usize) -> Self {
        EndRef { edge, end }
    }

    pub fn opposite(self) -> EndRef {
        EndRef {
            edge: self.edge,
            end: 1 - self.end,
        }
    }
}

/// A vertex or edge of the quotient graph, standing for its orbit in the
/// Bass-Serre tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orbit {
    Vertex(String),
    Edge(String),
}

impl Orbit {
    pub fn id(&self) -> &str {
        match self {
            Orbit::Vertex(id) | Orbit::Edge(id) => id,
        }
    }

    pub fn is_edge(&self) -> bool {
        matches!(self, Orbit::Edge(_))
    }

    /// Stable textual key, `v:<id>` or `e:<id>`.
    pub fn key(&self) -> String {
        match self {
            Orbit::Vertex(id) => format!("v:{id}"),
            Orbit::Edge(id) => format!("e:{id}"),
        }
    }
}

impl fmt::Display for Orbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Orbit::Vertex(id) => write!(f, "vertex {id}"),
            Orbit::Edge(id) => write!(f, "edge {id}"),
        }
    }
}

impl Serialize for Orbit {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.key())
    }
}
