use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::oracle::Index;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PdFlags {
    pub is_coarse_pd: bool,
    pub coarse_dim: Option<i64>,
}

/// A commensurability oracle given by finite tables, for graphs whose vertex
/// groups are not abelian.
///
/// Labels name commensurability classes of subgroups. The order is declared
/// per vertex and closed reflexively and transitively; every label at a vertex
/// lies below the vertex's top label.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TableOracle {
    /// edge id -> class label of each end, at that end's vertex.
    pub classes: BTreeMap<String, [String; 2]>,
    /// vertex id -> label of the whole vertex group.
    pub tops: BTreeMap<String, String>,
    /// vertex id -> declared pairs `(a, b)` meaning `a ≤ b`.
    pub order: BTreeMap<String, Vec<(String, String)>>,
    /// (edge id, entered end, label) -> label at the opposite vertex.
    pub transport: BTreeMap<(String, usize, String), String>,
    /// edge id -> index of each end's image.
    pub indices: BTreeMap<String, [Index; 2]>,
    /// label -> abstract commensurability type. Missing labels are their own type.
    pub abstract_types: BTreeMap<String, String>,
    pub pd_flags: BTreeMap<String, PdFlags>,
}

impl TableOracle {
    pub fn leq(&self, vertex: &str, a: &str, b: &str) -> bool {
        if a == b || self.tops.get(vertex).is_some_and(|t| t == b) {
            return true;
        }
        let Some(pairs) = self.order.get(vertex) else {
            return false;
        };
        let mut seen = BTreeSet::new();
        let mut stack = vec![a];
        while let Some(x) = stack.pop() {
            if !seen.insert(x) {
                continue;
            }
            for (lo, hi) in pairs {
                if lo == x {
                    if hi == b {
                        return true;
                    }
                    stack.push(hi);
                }
            }
        }
        false
    }

    pub fn abstract_type<'a>(&'a self, label: &'a str) -> &'a str {
        self.abstract_types.get(label).map_or(label, String::as_str)
    }

    /// Explicit transport entry, falling back to the end-class-to-end-class rule.
    pub fn transport_label(&self, edge: &str, entered: usize, label: &str) -> Option<String> {
        if let Some(out) = self
            .transport
            .get(&(edge.to_string(), entered, label.to_string()))
        {
            return Some(out.clone());
        }
        let classes = self.classes.get(edge)?;
        (classes[entered] == label).then(|| classes[1 - entered].clone())
    }
}
