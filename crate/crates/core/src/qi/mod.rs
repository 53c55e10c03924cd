//! Invariants of incident edge patterns in abelian vertex groups: rigidity,
//! the planar slope invariant and exact linear equivalence.

mod equivalence;
mod pattern;
mod slopes;

pub use equivalence::{patterns_equivalent, Certificate, Equivalence, DEFAULT_SEED};
pub use pattern::{
    pattern_from_json, rigidity_check, vertex_edge_pattern, LinearPattern, RigidityVerdict, VertexPattern,
};
pub use slopes::{pattern_slopes, slope_invariant, Slope, SlopeInvariant};
