//! Bounded search for coarse inclusions between vertex and edge spaces.
//!
//! A class is carried along paths in the quotient graph, crossing an edge only
//! while it is coarsely contained in that edge's class. Every vertex reached
//! is a lift in the Bass-Serre tree, so comparing the carried class with the
//! classes incident there detects coarse inclusions between lifts.

use std::collections::{BTreeMap, HashSet, VecDeque};

use serde::Serialize;

use super::model::GraphOfGroups;
use super::oracle::{ClassToken, CommOracle};
use super::{EndRef, Orbit};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExploreBounds {
    /// Maximum traversals of any single edge along one path.
    pub per_edge: usize,
    /// Maximum path length.
    pub max_steps: usize,
}

impl ExploreBounds {
    pub fn new(per_edge: usize, max_steps: usize) -> Self {
        ExploreBounds { per_edge, max_steps }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Relation {
    /// Some lift of `target` has a coarsely equivalent space.
    Equivalent { target: Orbit },
    /// Some lift of `target` strictly coarsely contains the source space.
    StrictlyBelow {
        target: Orbit,
        /// Vertex where the comparison was made.
        vertex: String,
        /// The source class after transport to `vertex`.
        class: ClassToken,
        target_class: ClassToken,
        steps: usize,
    },
}

impl Relation {
    pub fn target(&self) -> &Orbit {
        match self {
            Relation::Equivalent { target } | Relation::StrictlyBelow { target, .. } => target,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exploration {
    pub source: Orbit,
    /// First relation found per (kind, target), in discovery order.
    pub relations: Vec<Relation>,
    /// Some unexplored state was cut off by the bounds.
    pub truncated: bool,
}

impl Exploration {
    pub fn strictly_above(&self) -> impl Iterator<Item = &Relation> {
        self.relations
            .iter()
            .filter(|r| matches!(r, Relation::StrictlyBelow { .. }))
    }

    pub fn equivalents(&self) -> impl Iterator<Item = &Orbit> {
        self.relations.iter().filter_map(|r| match r {
            Relation::Equivalent { target } => Some(target),
            _ => None,
        })
    }
}

struct State {
    vertex: usize,
    class: ClassToken,
    steps: usize,
    uses: BTreeMap<usize, usize>,
}

/// Breadth-first search of the coarse inclusions above `source`.
pub fn explore_orbit(
    g: &GraphOfGroups,
    oracle: &dyn CommOracle,
    source: &Orbit,
    bounds: ExploreBounds,
) -> Exploration {
    let mut queue = VecDeque::new();
    match source {
        Orbit::Vertex(id) => {
            if let Some(v) = g.vertex_index(id) {
                queue.push_back(State {
                    vertex: v,
                    class: oracle.top_class(v),
                    steps: 0,
                    uses: BTreeMap::new(),
                });
            }
        }
        Orbit::Edge(id) => {
            if let Some(e) = g.edge_index(id) {
                for end in 0..2 {
                    let here = EndRef::new(e, end);
                    queue.push_back(State {
                        vertex: g.end_vertex(here),
                        class: oracle.class_of(here),
                        steps: 0,
                        uses: BTreeMap::new(),
                    });
                }
            }
        }
    }

    let mut seen: HashSet<(usize, ClassToken)> = HashSet::new();
    let mut found: BTreeMap<(bool, Orbit), ()> = BTreeMap::new();
    let mut relations = Vec::new();
    let mut truncated = false;

    let mut record = |rel: Relation, relations: &mut Vec<Relation>| {
        let key = (
            matches!(rel, Relation::StrictlyBelow { .. }),
            rel.target().clone(),
        );
        if found.insert(key, ()).is_none() {
            relations.push(rel);
        }
    };

    while let Some(state) = queue.pop_front() {
        if !seen.insert((state.vertex, state.class.clone())) {
            continue;
        }
        let v = state.vertex;
        let vertex_id = &g.vertices()[v].id;
        let mut compare = |target: Orbit, target_class: ClassToken, relations: &mut Vec<Relation>| {
            if oracle.strictly_less(v, &state.class, &target_class) {
                record(
                    Relation::StrictlyBelow {
                        target,
                        vertex: vertex_id.clone(),
                        class: state.class.clone(),
                        target_class,
                        steps: state.steps,
                    },
                    relations,
                );
            } else if &target != source && oracle.equivalent(v, &state.class, &target_class) {
                record(Relation::Equivalent { target }, relations);
            }
        };
        compare(g.vertex_orbit(v), oracle.top_class(v), &mut relations);
        for end in g.incident_ends(v) {
            let end_class = oracle.class_of(end);
            compare(g.edge_orbit(end.edge), end_class.clone(), &mut relations);
            if !oracle.leq(v, &state.class, &end_class) {
                continue;
            }
            let Some(next) = oracle.transport(&state.class, end) else {
                continue;
            };
            let w = g.end_vertex(end.opposite());
            let used = state.uses.get(&end.edge).copied().unwrap_or(0);
            if state.steps + 1 > bounds.max_steps || used + 1 > bounds.per_edge {
                if !seen.contains(&(w, next)) {
                    truncated = true;
                }
                continue;
            }
            let mut uses = state.uses.clone();
            uses.insert(end.edge, used + 1);
            queue.push_back(State {
                vertex: w,
                class: next,
                steps: state.steps + 1,
                uses,
            });
        }
    }

    Exploration {
        source: source.clone(),
        relations,
        truncated,
    }
}
