use std::collections::BTreeSet;

use serde::Serialize;

use super::model::{GraphOfGroups, OracleMode};
use super::table::TableOracle;
use super::EndRef;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    Empty,
    DuplicateId,
    DanglingVertex,
    Disconnected,
    ShapeMismatch,
    NonIntegral,
    NonInjective,
    OracleInconsistency,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }

    fn push(&mut self, kind: ViolationKind, message: String) {
        self.violations.push(Violation { kind, message });
    }
}

/// Lists every violated structural invariant. An empty report means the graph
/// may be handed to the analyses.
pub fn validate(g: &GraphOfGroups) -> ValidationReport {
    let mut r = ValidationReport::default();
    if g.vertices().is_empty() {
        r.push(ViolationKind::Empty, "graph has no vertices".into());
    }
    let mut seen = BTreeSet::new();
    for v in g.vertices() {
        if !seen.insert(v.id.as_str()) {
            r.push(
                ViolationKind::DuplicateId,
                format!("duplicate vertex id `{}`", v.id),
            );
        }
    }
    let mut seen = BTreeSet::new();
    for e in g.edges() {
        if !seen.insert(e.id.as_str()) {
            r.push(
                ViolationKind::DuplicateId,
                format!("duplicate edge id `{}`", e.id),
            );
        }
    }
    let mut dangling = false;
    for e in g.edges() {
        for (i, end) in e.ends.iter().enumerate() {
            if g.vertex_index(&end.vertex).is_none() {
                dangling = true;
                r.push(
                    ViolationKind::DanglingVertex,
                    format!(
                        "edge `{}` end {i} references unknown vertex `{}`",
                        e.id, end.vertex
                    ),
                );
            }
        }
    }
    if !dangling && !g.vertices().is_empty() {
        let all_v: Vec<usize> = (0..g.vertices().len()).collect();
        let all_e: Vec<usize> = (0..g.edges().len()).collect();
        let comps = g.components(&all_v, &all_e);
        if comps.len() > 1 {
            r.push(
                ViolationKind::Disconnected,
                format!("underlying graph has {} components", comps.len()),
            );
        }
    }
    match g.oracle_mode() {
        OracleMode::Abelian => check_matrices(g, &mut r),
        OracleMode::Table(t) if !dangling => check_table(g, t, &mut r),
        OracleMode::Table(_) => {}
    }
    r.violations.sort();
    r
}

fn check_matrices(g: &GraphOfGroups, r: &mut ValidationReport) {
    for e in g.edges() {
        for (i, end) in e.ends.iter().enumerate() {
            let Ok(v) = g.vertex(&end.vertex) else { continue };
            let (rows, cols) = end.matrix.shape();
            if rows != v.rank || cols != e.rank {
                r.push(
                    ViolationKind::ShapeMismatch,
                    format!(
                        "edge `{}` end {i}: matrix is {rows}x{cols}, expected {}x{}",
                        e.id, v.rank, e.rank
                    ),
                );
                continue;
            }
            if !end.matrix.is_integral() {
                r.push(
                    ViolationKind::NonIntegral,
                    format!("edge `{}` end {i}: matrix has non-integer entries", e.id),
                );
            }
            if !end.matrix.is_injective() {
                r.push(
                    ViolationKind::NonInjective,
                    format!(
                        "edge `{}` end {i}: non-injective edge map (rank {} < {})",
                        e.id,
                        end.matrix.rank(),
                        e.rank
                    ),
                );
            }
        }
    }
}

/// Labels that live at a vertex: its top, incident end classes, declared
/// order entries and transport sources/targets.
fn labels_at(g: &GraphOfGroups, t: &TableOracle, vertex: usize) -> BTreeSet<String> {
    let id = &g.vertices()[vertex].id;
    let mut out = BTreeSet::new();
    if let Some(top) = t.tops.get(id) {
        out.insert(top.clone());
    }
    for (a, b) in t.order.get(id).into_iter().flatten() {
        out.insert(a.clone());
        out.insert(b.clone());
    }
    for end in g.incident_ends(vertex) {
        let edge = &g.edges()[end.edge].id;
        if let Some(c) = t.classes.get(edge) {
            out.insert(c[end.end].clone());
        }
        for ((te, entered, from), to) in &t.transport {
            if te == edge && *entered == end.end {
                out.insert(from.clone());
            }
            if te == edge && *entered == 1 - end.end {
                out.insert(to.clone());
            }
        }
    }
    out
}

fn check_table(g: &GraphOfGroups, t: &TableOracle, r: &mut ValidationReport) {
    let bad = |r: &mut ValidationReport, msg: String| r.push(ViolationKind::OracleInconsistency, msg);
    for v in g.vertices() {
        if !t.tops.contains_key(&v.id) {
            bad(r, format!("vertex `{}` has no top class in `order`", v.id));
        }
    }
    for e in g.edges() {
        if !t.classes.contains_key(&e.id) {
            bad(r, format!("edge `{}` has no entry in `classes`", e.id));
        }
        if !t.indices.contains_key(&e.id) {
            bad(r, format!("edge `{}` has no entry in `indices`", e.id));
        }
    }
    for (edge, entered, from) in t.transport.keys() {
        if g.edge_index(edge).is_none() {
            bad(
                r,
                format!("transport entry for unknown edge `{edge}` (label `{from}`, end {entered})"),
            );
        }
    }
    if !r.violations.is_empty() {
        return;
    }
    let oracle = g.oracle();
    for (ei, e) in g.edges().iter().enumerate() {
        for end in 0..2 {
            let here = EndRef::new(ei, end);
            let v = g.end_vertex(here);
            let class = oracle.class_of(here);
            let top = oracle.top_class(v);
            let equiv_top = oracle.equivalent(v, &class, &top);
            if oracle.finite_index_end(here) != equiv_top {
                bad(
                    r,
                    format!(
                        "edge `{}` end {end}: index {} disagrees with class `{class}` {} the top class `{top}`",
                        e.id,
                        oracle.index(here),
                        if equiv_top { "equal to" } else { "strictly below" }
                    ),
                );
            }
            for label in labels_at(g, t, v) {
                let c = super::ClassToken::Label(label.clone());
                if !oracle.leq(v, &c, &class) {
                    continue;
                }
                let Some(moved) = oracle.transport(&c, here) else {
                    // Strictly smaller classes may be left out of the table:
                    // their transports can form an infinite descending family.
                    if !oracle.equivalent(v, &c, &class) {
                        continue;
                    }
                    bad(
                        r,
                        format!(
                            "no transport for `{label}` through edge `{}` entered at end {end}",
                            e.id
                        ),
                    );
                    continue;
                };
                let w = g.end_vertex(here.opposite());
                match oracle.transport(&moved, here.opposite()) {
                    Some(back) if oracle.equivalent(v, &back, &c) => {}
                    Some(back) => bad(
                        r,
                        format!(
                            "transport round trip of `{label}` through edge `{}` returns `{back}`",
                            e.id
                        ),
                    ),
                    None => bad(
                        r,
                        format!(
                            "transport of `{label}` through edge `{}` to `{moved}` at `{}` has no way back",
                            e.id,
                            g.vertices()[w].id
                        ),
                    ),
                }
            }
        }
    }
    let types: BTreeSet<(String, String)> = g
        .edges()
        .iter()
        .filter_map(|e| t.classes.get(&e.id).map(|c| (e.id.clone(), c.clone())))
        .filter(|(_, [a, b])| t.abstract_type(a) != t.abstract_type(b))
        .map(|(id, [a, b])| (id, format!("`{a}` vs `{b}`")))
        .collect();
    for (edge, detail) in types {
        bad(
            r,
            format!("edge `{edge}` ends have different abstract types ({detail})"),
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gog::graph_from_json;

    #[test]
    fn rank_deficient_edge_map() {
        let g = graph_from_json(
            r#"{"vertices": [{"id": "u", "rank": 3}, {"id": "v", "rank": 2}],
                "edges": [{"id": "e", "rank": 2, "ends": [
                  {"vertex": "u", "matrix": [[1, 2], [2, 4], [0, 0]]},
                  {"vertex": "v", "matrix": [[1, 0], [0, 1]]}]}]}"#,
        )
        .unwrap();
        let report = validate(&g);
        assert!(report.has(ViolationKind::NonInjective));
        assert!(report.violations[0].message.contains("non-injective edge map"));
    }

    #[test]
    fn single_vertex_is_valid() {
        let g = graph_from_json(r#"{"vertices": [{"id": "v", "rank": 2}]}"#).unwrap();
        assert!(validate(&g).is_valid());
    }

    #[test]
    fn structural_violations() {
        let g = graph_from_json(
            r#"{"vertices": [{"id": "a", "rank": 1}, {"id": "b", "rank": 1}, {"id": "a", "rank": 1}],
                "edges": [{"id": "e", "rank": 1, "ends": [
                  {"vertex": "a", "matrix": [[1]]}, {"vertex": "zz", "matrix": [[1]]}]}]}"#,
        )
        .unwrap();
        let report = validate(&g);
        assert!(report.has(ViolationKind::DuplicateId));
        assert!(report.has(ViolationKind::DanglingVertex));

        let g = graph_from_json(r#"{"vertices": [{"id": "a", "rank": 1}, {"id": "b", "rank": 2}]}"#).unwrap();
        assert!(validate(&g).has(ViolationKind::Disconnected));

        let g = graph_from_json(
            r#"{"vertices": [{"id": "a", "rank": 2}],
                "edges": [{"id": "e", "rank": 1, "ends": [
                  {"vertex": "a", "matrix": [[1]]}, {"vertex": "a", "matrix": [[1], [0]]}]}]}"#,
        )
        .unwrap();
        assert!(validate(&g).has(ViolationKind::ShapeMismatch));
        assert!(validate(&graph_from_json(r#"{"vertices": []}"#).unwrap()).has(ViolationKind::Empty));
    }

    #[test]
    fn table_index_must_match_order() {
        let g = graph_from_json(
            r#"{"oracle": "table",
                "vertices": [{"id": "v"}],
                "edges": [{"id": "e", "ends": [{"vertex": "v"}, {"vertex": "v"}]}],
                "classes": {"e": ["A", "B"]},
                "order": {"v": {"top": "G", "leq": [["B", "A"]]}},
                "transport": [{"edge": "e", "entered": 1, "from": "B", "to": "A"}],
                "indices": {"e": [1, "infinite"]}}"#,
        )
        .unwrap();
        let report = validate(&g);
        assert!(report.has(ViolationKind::OracleInconsistency), "{report:?}");
        assert!(report.violations.iter().any(|v| v.message.contains("index 1")));
    }
}
