use serde::Serialize;

use super::crossing::{crossing_graph_unchecked, CrossingVerdict};
use super::filtration::{depth_filtration, DepthConfig, Verdict, WitnessStep};
use super::rafts::{depth_zero_rafts, Raft, RaftKind};
use crate::error::Result;
use crate::exactlin::RationalSubspace;
use crate::gog::{reducible_edges, GraphOfGroups, OracleMode};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    ReducibleEdge {
        edge: String,
        end: usize,
    },
    StrictCycle {
        steps: Vec<WitnessStep>,
    },
    LineRaft {
        raft: Raft,
    },
    NotCoarsePd {
        vertex: String,
    },
    Hyperplane {
        vertex: String,
        hyperplane: RationalSubspace,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail { witness: Witness },
    Unknown { reason: String },
}

impl Status {
    pub fn is_pass(&self) -> bool {
        matches!(self, Status::Pass)
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Status::Fail { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hypothesis {
    pub number: usize,
    pub name: &'static str,
    #[serde(flatten)]
    pub status: Status,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HypothesisReport {
    pub hypotheses: Vec<Hypothesis>,
}

impl HypothesisReport {
    pub fn all_pass(&self) -> bool {
        self.hypotheses.iter().all(|h| h.status.is_pass())
    }

    /// Numbers of the failing hypotheses.
    pub fn failures(&self) -> Vec<usize> {
        self.hypotheses
            .iter()
            .filter(|h| h.status.is_fail())
            .map(|h| h.number)
            .collect()
    }

    pub fn get(&self, number: usize) -> Option<&Status> {
        self.hypotheses
            .iter()
            .find(|h| h.number == number)
            .map(|h| &h.status)
    }
}

pub fn check_hypotheses(g: &GraphOfGroups, cfg: &DepthConfig) -> Result<HypothesisReport> {
    let rafts = depth_zero_rafts(g);
    let first = match reducible_edges(g).into_iter().next() {
        Some((edge, end)) => Status::Fail {
            witness: Witness::ReducibleEdge { edge, end },
        },
        None => match depth_filtration(g, cfg)?.verdict {
            Verdict::Finite(_) => Status::Pass,
            Verdict::Infinite(steps) => Status::Fail {
                witness: Witness::StrictCycle { steps },
            },
            Verdict::Unknown(h) => Status::Unknown {
                reason: format!("no finite labeling or strict cycle found within horizon {h}"),
            },
        },
    };

    let second = match rafts.iter().find(|r| r.kind == Some(RaftKind::Line)) {
        Some(raft) => Status::Fail {
            witness: Witness::LineRaft { raft: raft.clone() },
        },
        None => Status::Pass,
    };

    let third = match g.oracle_mode() {
        OracleMode::Abelian => Status::Pass,
        OracleMode::Table(t) => {
            let mut status = Status::Pass;
            for id in rafts.iter().flat_map(|r| r.vertex_ids()) {
                match t.pd_flags.get(id) {
                    Some(f) if f.is_coarse_pd => {}
                    Some(_) => {
                        status = Status::Fail {
                            witness: Witness::NotCoarsePd {
                                vertex: id.to_string(),
                            },
                        };
                        break;
                    }
                    None => {
                        status = Status::Unknown {
                            reason: format!("no coarse PD flag declared for vertex `{id}`"),
                        };
                    }
                }
            }
            status
        }
    };

    let fourth = match g.oracle_mode() {
        OracleMode::Table(_) => Status::Unknown {
            reason: "crossing graphs need the abelian oracle".into(),
        },
        OracleMode::Abelian => {
            let mut status = Status::Pass;
            for v in rafts.iter().filter_map(|r| r.sole_vertex()) {
                if let CrossingVerdict::Disconnected { witness } = crossing_graph_unchecked(g, v)?.verdict {
                    status = Status::Fail {
                        witness: Witness::Hyperplane {
                            vertex: v.to_string(),
                            hyperplane: witness,
                        },
                    };
                    break;
                }
            }
            status
        }
    };

    let hypotheses = vec![
        Hypothesis {
            number: 1,
            name: "finite type, irreducible, finite depth",
            status: first,
        },
        Hypothesis {
            number: 2,
            name: "no depth-zero raft is a line",
            status: second,
        },
        Hypothesis {
            number: 3,
            name: "depth-zero vertex groups are coarse PD",
            status: third,
        },
        Hypothesis {
            number: 4,
            name: "crossing graph condition at one-vertex depth-zero rafts",
            status: fourth,
        },
        Hypothesis {
            number: 5,
            name: "coarse finite type",
            status: Status::Pass,
        },
    ];
    Ok(HypothesisReport { hypotheses })
}
