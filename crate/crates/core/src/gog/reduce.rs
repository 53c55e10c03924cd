use std::str::FromStr;

use super::model::{EdgeEnd, GraphOfGroups, OracleMode};
use super::table::TableOracle;
use super::EndRef;
use crate::error::{Error, Result};
use crate::exactlin::RatMatrix;

/// Which reducible edge [`complete_reduce`] collapses next.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum SelectionPolicy {
    /// Smallest edge id, then smaller end index.
    #[default]
    Lexicographic,
    /// Largest edge id, then larger end index.
    ReverseLexicographic,
    /// Listed edges first, in the given order; the rest lexicographically.
    Priority(Vec<String>),
}

impl SelectionPolicy {
    fn pick(&self, candidates: &[(String, usize)]) -> Option<(String, usize)> {
        match self {
            SelectionPolicy::Lexicographic => candidates.first().cloned(),
            SelectionPolicy::ReverseLexicographic => candidates.last().cloned(),
            SelectionPolicy::Priority(ids) => ids
                .iter()
                .find_map(|id| candidates.iter().find(|(e, _)| e == id))
                .or_else(|| candidates.first())
                .cloned(),
        }
    }
}

impl FromStr for SelectionPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lex" | "lexicographic" => Ok(SelectionPolicy::Lexicographic),
            "reverse" | "reverse-lex" => Ok(SelectionPolicy::ReverseLexicographic),
            list if !list.is_empty() => Ok(SelectionPolicy::Priority(
                list.split(',').map(|x| x.trim().to_string()).collect(),
            )),
            _ => Err(Error::Parse("empty edge-selection policy".into())),
        }
    }
}

/// Edge-ends at which the graph reduces: the edge joins distinct vertices and
/// the injection at that end is onto. Sorted by (edge id, end).
pub fn reducible_edges(g: &GraphOfGroups) -> Vec<(String, usize)> {
    let oracle = g.oracle();
    let mut out = Vec::new();
    for (ei, e) in g.edges().iter().enumerate() {
        if e.is_loop() {
            continue;
        }
        for end in 0..2 {
            if oracle.is_surjective(EndRef::new(ei, end)) {
                out.push((e.id.clone(), end));
            }
        }
    }
    out
}

/// Collapses `edge` at the given end. The vertex at that end disappears; the
/// opposite vertex survives under its own id and keeps its group. Edge-ends
/// formerly at the removed vertex are re-attached through the edge.
pub fn collapse(g: &GraphOfGroups, edge: &str, end: usize) -> Result<GraphOfGroups> {
    if !reducible_edges(g).iter().any(|(e, i)| e == edge && *i == end) {
        return Err(Error::NotReducible {
            edge: edge.to_string(),
            end,
        });
    }
    let here = g.end_ref(edge, end)?;
    let removed = g.end(here).vertex.clone();
    let kept = g.end(here.opposite()).vertex.clone();

    let oracle_mode = match g.oracle_mode() {
        OracleMode::Abelian => OracleMode::Abelian,
        OracleMode::Table(t) => OracleMode::Table(collapse_table(g, t, here, &removed)?),
    };
    // M_ew · M_ev^{-1}: carries the removed vertex group onto the kept one.
    let transfer = if g.is_abelian() {
        let inv = g.end(here).matrix.inverse()?.ok_or_else(|| Error::NotReducible {
            edge: edge.to_string(),
            end,
        })?;
        Some(g.end(here.opposite()).matrix.mul(&inv)?)
    } else {
        None
    };

    let vertices = g.vertices().iter().filter(|v| v.id != removed).cloned().collect();
    let mut edges = Vec::new();
    for e in g.edges().iter().filter(|e| e.id != edge) {
        let mut e = e.clone();
        for end in e.ends.iter_mut() {
            if end.vertex == removed {
                let matrix = match &transfer {
                    Some(t) => t.mul(&end.matrix)?,
                    None => RatMatrix::zeros(0, 0),
                };
                *end = EdgeEnd {
                    vertex: kept.clone(),
                    matrix,
                };
            }
        }
        edges.push(e);
    }
    Ok(GraphOfGroups::new(vertices, edges, oracle_mode))
}

fn collapse_table(g: &GraphOfGroups, t: &TableOracle, here: EndRef, removed: &str) -> Result<TableOracle> {
    let edge = g.edges()[here.edge].id.clone();
    let push = |label: &str| -> Result<String> {
        t.transport_label(&edge, here.end, label).ok_or_else(|| {
            Error::InvalidGraph(vec![format!(
                "label `{label}` at `{removed}` has no transport through `{edge}`"
            )])
        })
    };
    let kept_index = t
        .indices
        .get(&edge)
        .map(|ix| ix[1 - here.end].clone())
        .ok_or_else(|| Error::InvalidGraph(vec![format!("edge `{edge}` has no indices")]))?;

    let mut out = t.clone();
    out.classes.remove(&edge);
    out.indices.remove(&edge);
    out.tops.remove(removed);
    out.order.remove(removed);
    out.pd_flags.remove(removed);

    let at_removed = |e: &str, i: usize| -> bool {
        g.edge(e)
            .map(|spec| spec.ends[i].vertex == removed)
            .unwrap_or(false)
    };

    out.transport.clear();
    for ((e, entered, from), to) in &t.transport {
        if *e == edge {
            continue;
        }
        let from = if at_removed(e, *entered) {
            push(from)?
        } else {
            from.clone()
        };
        let to = if at_removed(e, 1 - entered) {
            push(to)?
        } else {
            to.clone()
        };
        out.transport.insert((e.clone(), *entered, from), to);
    }
    for spec in g.edges().iter().filter(|s| s.id != edge) {
        for i in 0..2 {
            if spec.ends[i].vertex != removed {
                continue;
            }
            if let Some(c) = out.classes.get_mut(&spec.id) {
                c[i] = push(&c[i])?;
            }
            if let Some(ix) = out.indices.get_mut(&spec.id) {
                ix[i] = ix[i].mul(&kept_index);
            }
        }
    }
    Ok(out)
}

/// Collapses reducible edges, chosen by `policy`, until none remain.
pub fn complete_reduce(g: &GraphOfGroups, policy: &SelectionPolicy) -> Result<GraphOfGroups> {
    let mut current = g.clone();
    while let Some((edge, end)) = policy.pick(&reducible_edges(&current)) {
        current = collapse(&current, &edge, end)?;
    }
    Ok(current)
}
