//! Finite balls in the Bass-Serre tree of a graph of abelian groups, used as
//! a brute-force check on the quotient-level analyses.

mod analysis;
mod ball;

pub use analysis::{
    annotate_depth, ball_crossing_check, strict_chain_depths, to_dot, BallCrossing, BallCrossingVerdict,
    Element,
};
pub use ball::{build_ball, AddressStep, BallEdge, BallNode, EdgeSpan, TreeBall, MAX_BALL_NODES};
