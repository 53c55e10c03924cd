//! Graphs of groups with a commensurability oracle: reduction, the depth
//! filtration of the Bass-Serre tree, rafts, crossing graphs, hypothesis
//! checks and linear pattern invariants.

pub mod depth;
pub mod error;
pub mod exactlin;
pub mod gog;
pub mod qi;
pub mod tree;

pub use depth::{DepthAssignment, DepthConfig, Raft, RaftKind, Verdict};
pub use error::{Error, Result};
pub use exactlin::{RatMatrix, RationalSubspace};
pub use gog::{GraphOfGroups, Orbit};
pub use qi::LinearPattern;
pub use tree::TreeBall;
