//! Depth filtration, rafts and flotillas, crossing graphs and the hypothesis
//! checklist.

mod crossing;
mod filtration;
mod hypotheses;
mod rafts;

pub use crossing::{crossing_graph, CrossingGraph, CrossingNode, CrossingVerdict, EndLabel};
pub use filtration::{
    depth_filtration, DepthAssignment, DepthConfig, Level, Verdict, WitnessStep, DEFAULT_LOOP_BOUND,
};
pub use hypotheses::{check_hypotheses, Hypothesis, HypothesisReport, Status, Witness};
pub use rafts::{depth_zero_rafts, raft_kind, raft_valences, Raft, RaftKind, RaftMember};
