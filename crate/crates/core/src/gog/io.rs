//! JSON serialization of graphs of groups.
//!
//! ```json
//! { "oracle": "abelian",
//!   "vertices": [{"id": "v", "rank": 2}],
//!   "edges": [{"id": "e", "rank": 1,
//!              "ends": [{"vertex": "v", "matrix": [[1], [0]]},
//!                       {"vertex": "v", "matrix": [[1], [0]]}]}] }
//! ```
//!
//! Table graphs add `classes`, `order`, `transport`, `indices` and optionally
//! `abstract_types` and `pd_flags`; their ends carry no matrix.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::de::{self, Deserializer, Visitor};
use serde::Deserialize;
use serde_json::{json, Value};

use super::model::{EdgeEnd, EdgeSpec, GraphOfGroups, OracleMode, VertexSpec};
use super::oracle::Index;
use super::table::{PdFlags, TableOracle};
use crate::error::{Error, Result};
use crate::exactlin::RatMatrix;

/// Matrix entry: an exact integer. Floats are rejected during parsing so the
/// error carries a line and column.
#[derive(Debug, Clone, Copy)]
pub(crate) struct IntEntry(pub(crate) i64);

impl<'de> Deserialize<'de> for IntEntry {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = IntEntry;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer matrix entry")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<IntEntry, E> {
                Ok(IntEntry(v))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<IntEntry, E> {
                i64::try_from(v)
                    .map(IntEntry)
                    .map_err(|_| E::custom("matrix entry out of range"))
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<IntEntry, E> {
                Err(E::custom(format!(
                    "matrix entries must be exact integers, found float {v}"
                )))
            }
        }
        d.deserialize_any(V)
    }
}

#[derive(Debug, Clone)]
enum RawIndex {
    Finite(u64),
    Infinite,
}

impl<'de> Deserialize<'de> for RawIndex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = RawIndex;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a positive integer or \"infinite\"")
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<RawIndex, E> {
                if v == 0 {
                    return Err(E::custom("index must be positive"));
                }
                Ok(RawIndex::Finite(v))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<RawIndex, E> {
                u64::try_from(v)
                    .map_err(|_| E::custom("index must be positive"))
                    .and_then(|v| self.visit_u64(v))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<RawIndex, E> {
                match v {
                    "infinite" | "inf" => Ok(RawIndex::Infinite),
                    other => Err(E::custom(format!("unknown index `{other}`"))),
                }
            }
        }
        d.deserialize_any(V)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawVertex {
    id: String,
    #[serde(default)]
    rank: Option<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEnd {
    vertex: String,
    #[serde(default)]
    matrix: Option<Vec<Vec<IntEntry>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEdge {
    id: String,
    #[serde(default)]
    rank: Option<usize>,
    ends: Vec<RawEnd>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOrder {
    top: String,
    #[serde(default)]
    leq: Vec<(String, String)>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTransport {
    edge: String,
    entered: usize,
    from: String,
    to: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPdFlags {
    is_coarse_pd: bool,
    #[serde(default)]
    coarse_dim: Option<i64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGraph {
    #[serde(default)]
    oracle: Option<String>,
    vertices: Vec<RawVertex>,
    #[serde(default)]
    edges: Vec<RawEdge>,
    #[serde(default)]
    classes: BTreeMap<String, (String, String)>,
    #[serde(default)]
    order: BTreeMap<String, RawOrder>,
    #[serde(default)]
    transport: Vec<RawTransport>,
    #[serde(default)]
    indices: BTreeMap<String, (RawIndex, RawIndex)>,
    #[serde(default)]
    abstract_types: BTreeMap<String, String>,
    #[serde(default)]
    pd_flags: BTreeMap<String, RawPdFlags>,
    /// Free-form description; ignored.
    #[serde(default)]
    #[allow(dead_code)]
    description: Option<String>,
}

fn raw_matrix(rows: &[Vec<IntEntry>], cols_hint: usize, edge: &str) -> Result<RatMatrix> {
    let cols = rows.first().map_or(cols_hint, Vec::len);
    if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
        return Err(Error::Parse(format!(
            "edge `{edge}`: ragged matrix rows ({} vs {cols} entries)",
            bad.len()
        )));
    }
    let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|x| x.0).collect()).collect();
    RatMatrix::from_int_rows(&rows, cols)
}

fn convert_index(i: &RawIndex) -> Index {
    match i {
        RawIndex::Finite(n) => Index::Finite(BigInt::from(*n)),
        RawIndex::Infinite => Index::Infinite,
    }
}

/// Parses the JSON input format. Structural problems (bad JSON, floats,
/// ragged matrices, edges without two ends) are errors; semantic problems are
/// left for [`super::validate`].
pub fn graph_from_json(text: &str) -> Result<GraphOfGroups> {
    let raw: RawGraph = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let mode = raw.oracle.as_deref().unwrap_or("abelian");
    let table = match mode {
        "abelian" => false,
        "table" => true,
        other => return Err(Error::Parse(format!("unknown oracle `{other}`"))),
    };
    let vertices: Vec<VertexSpec> = raw
        .vertices
        .iter()
        .map(|v| VertexSpec {
            id: v.id.clone(),
            rank: v.rank.unwrap_or(0),
        })
        .collect();
    let mut edges = Vec::with_capacity(raw.edges.len());
    for e in &raw.edges {
        if e.ends.len() != 2 {
            return Err(Error::Parse(format!(
                "edge `{}` must have exactly two ends, found {}",
                e.id,
                e.ends.len()
            )));
        }
        let mut ends = Vec::with_capacity(2);
        for end in &e.ends {
            let matrix = match (&end.matrix, table) {
                (Some(rows), _) => raw_matrix(rows, e.rank.unwrap_or(0), &e.id)?,
                (None, true) => RatMatrix::zeros(0, 0),
                (None, false) => {
                    return Err(Error::Parse(format!(
                        "edge `{}`: abelian edge ends need a matrix",
                        e.id
                    )))
                }
            };
            ends.push(EdgeEnd {
                vertex: end.vertex.clone(),
                matrix,
            });
        }
        let rank = e.rank.unwrap_or_else(|| ends[0].matrix.cols());
        let [a, b]: [EdgeEnd; 2] = ends.try_into().expect("two ends");
        edges.push(EdgeSpec {
            id: e.id.clone(),
            rank,
            ends: [a, b],
        });
    }
    let oracle = if table {
        let mut t = TableOracle::default();
        for (edge, (a, b)) in raw.classes {
            t.classes.insert(edge, [a, b]);
        }
        for (vertex, order) in raw.order {
            t.tops.insert(vertex.clone(), order.top);
            t.order.insert(vertex, order.leq);
        }
        for tr in raw.transport {
            if tr.entered > 1 {
                return Err(Error::Parse(format!(
                    "transport through `{}` entered at end {} (expected 0 or 1)",
                    tr.edge, tr.entered
                )));
            }
            t.transport.insert((tr.edge, tr.entered, tr.from), tr.to);
        }
        for (edge, (a, b)) in raw.indices {
            t.indices.insert(edge, [convert_index(&a), convert_index(&b)]);
        }
        t.abstract_types = raw.abstract_types;
        for (vertex, f) in raw.pd_flags {
            t.pd_flags.insert(
                vertex,
                PdFlags {
                    is_coarse_pd: f.is_coarse_pd,
                    coarse_dim: f.coarse_dim,
                },
            );
        }
        OracleMode::Table(t)
    } else {
        OracleMode::Abelian
    };
    Ok(GraphOfGroups::new(vertices, edges, oracle))
}

/// Serializes a graph back to the input format, with deterministic ordering.
pub fn graph_to_json(g: &GraphOfGroups) -> Value {
    let table = g.table();
    let vertices: Vec<Value> = g
        .vertices()
        .iter()
        .map(|v| json!({"id": v.id, "rank": v.rank}))
        .collect();
    let edges: Vec<Value> = g
        .edges()
        .iter()
        .map(|e| {
            let ends: Vec<Value> = e
                .ends
                .iter()
                .map(|end| {
                    if table.is_some() {
                        json!({"vertex": end.vertex})
                    } else {
                        json!({"vertex": end.vertex, "matrix": end.matrix.to_json()})
                    }
                })
                .collect();
            json!({"id": e.id, "rank": e.rank, "ends": ends})
        })
        .collect();
    let mut out = serde_json::Map::new();
    out.insert("oracle".into(), json!(g.oracle_name()));
    out.insert("vertices".into(), Value::Array(vertices));
    out.insert("edges".into(), Value::Array(edges));
    if let Some(t) = table {
        let classes: serde_json::Map<String, Value> = t
            .classes
            .iter()
            .map(|(k, [a, b])| (k.clone(), json!([a, b])))
            .collect();
        let order: serde_json::Map<String, Value> = t
            .tops
            .iter()
            .map(|(v, top)| {
                let leq = t.order.get(v).cloned().unwrap_or_default();
                (v.clone(), json!({"top": top, "leq": leq}))
            })
            .collect();
        let transport: Vec<Value> = t
            .transport
            .iter()
            .map(|((edge, entered, from), to)| {
                json!({"edge": edge, "entered": entered, "from": from, "to": to})
            })
            .collect();
        let indices: serde_json::Map<String, Value> = t
            .indices
            .iter()
            .map(|(k, [a, b])| (k.clone(), json!([a, b])))
            .collect();
        out.insert("classes".into(), Value::Object(classes));
        out.insert("order".into(), Value::Object(order));
        out.insert("transport".into(), Value::Array(transport));
        out.insert("indices".into(), Value::Object(indices));
        if !t.abstract_types.is_empty() {
            out.insert("abstract_types".into(), json!(t.abstract_types));
        }
        if !t.pd_flags.is_empty() {
            out.insert("pd_flags".into(), json!(t.pd_flags));
        }
    }
    Value::Object(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const LOOP: &str = r#"{
        "oracle": "abelian",
        "vertices": [{"id": "v", "rank": 2}],
        "edges": [{"id": "e", "rank": 1, "ends": [
            {"vertex": "v", "matrix": [[1], [0]]},
            {"vertex": "v", "matrix": [[1], [0]]}]}]
    }"#;

    #[test]
    fn parses_abelian_graph() {
        let g = graph_from_json(LOOP).unwrap();
        assert!(g.is_abelian());
        assert_eq!(g.vertices().len(), 1);
        assert_eq!(g.edges()[0].ends[1].matrix.shape(), (2, 1));
    }

    #[test]
    fn round_trips_through_json() {
        let g = graph_from_json(LOOP).unwrap();
        let text = graph_to_json(&g).to_string();
        assert_eq!(graph_from_json(&text).unwrap(), g);
    }

    #[test]
    fn rejects_floats_with_position() {
        let text = LOOP.replace("[[1], [0]]}]}]", "[[1.5], [0]]}]}]");
        let err = graph_from_json(&text).unwrap_err();
        let Error::Parse(msg) = err else {
            panic!("expected parse error")
        };
        assert!(msg.contains("float"), "{msg}");
        assert!(msg.contains("line"), "{msg}");
    }

    #[test]
    fn rejects_garbage_and_wrong_arity() {
        assert!(matches!(graph_from_json("{ not json"), Err(Error::Parse(_))));
        let one_end = r#"{"vertices": [{"id": "v", "rank": 1}],
            "edges": [{"id": "e", "rank": 1, "ends": [{"vertex": "v", "matrix": [[1]]}]}]}"#;
        assert!(matches!(graph_from_json(one_end), Err(Error::Parse(_))));
        let ragged = r#"{"vertices": [{"id": "v", "rank": 2}],
            "edges": [{"id": "e", "rank": 1, "ends": [
              {"vertex": "v", "matrix": [[1, 2], [0]]}, {"vertex": "v", "matrix": [[1], [0]]}]}]}"#;
        assert!(matches!(graph_from_json(ragged), Err(Error::Parse(_))));
    }
}
