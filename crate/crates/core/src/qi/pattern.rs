use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{rat, RatMatrix, RationalSubspace};
use crate::gog::{ClassToken, GraphOfGroups, IntEntry};

/// A finite multiset of proper nonzero subspaces of `Q^n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinearPattern {
    pub ambient_dim: usize,
    pub subspaces: Vec<RationalSubspace>,
}

impl LinearPattern {
    pub fn new(ambient_dim: usize, subspaces: Vec<RationalSubspace>) -> Result<Self> {
        for s in &subspaces {
            if s.ambient_dim() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    found: s.ambient_dim(),
                });
            }
            if s.is_zero() || s.is_full() {
                return Err(Error::ShapeMismatch(format!(
                    "pattern member {s} must be a proper nonzero subspace"
                )));
            }
        }
        Ok(LinearPattern {
            ambient_dim,
            subspaces,
        })
    }

    pub fn len(&self) -> usize {
        self.subspaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subspaces.is_empty()
    }

    /// The pattern of images `T·V`.
    pub fn transform(&self, t: &RatMatrix) -> Result<LinearPattern> {
        let subspaces = self
            .subspaces
            .iter()
            .map(|s| s.image(t))
            .collect::<Result<Vec<_>>>()?;
        LinearPattern::new(self.ambient_dim, subspaces)
    }

    /// Lines in the plane with the given directions.
    pub fn lines(directions: &[[i64; 2]]) -> Result<LinearPattern> {
        let subspaces = directions
            .iter()
            .map(|d| RationalSubspace::from_int_vectors(2, &[d.to_vec()]))
            .collect::<Result<Vec<_>>>()?;
        LinearPattern::new(2, subspaces)
    }

    pub fn dims_sorted(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.subspaces.iter().map(|s| s.dim()).collect();
        d.sort_unstable();
        d
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPattern {
    ambient_dim: usize,
    subspaces: Vec<Vec<Vec<IntEntry>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPatternFile {
    #[serde(default)]
    #[allow(dead_code)]
    description: Option<String>,
    pattern: RawPattern,
}

/// Reads `{"pattern": {"ambient_dim": n, "subspaces": [...]}}`, each subspace
/// given by an `n`-row integer matrix whose columns span it.
pub fn pattern_from_json(text: &str) -> Result<LinearPattern> {
    let raw: RawPatternFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let n = raw.pattern.ambient_dim;
    let mut subspaces = Vec::new();
    for (i, m) in raw.pattern.subspaces.iter().enumerate() {
        if m.len() != n {
            return Err(Error::Parse(format!(
                "subspace {i}: expected {n} rows, found {}",
                m.len()
            )));
        }
        let cols = m.first().map_or(0, Vec::len);
        if m.iter().any(|r| r.len() != cols) {
            return Err(Error::Parse(format!("subspace {i}: ragged rows")));
        }
        let columns: Vec<Vec<_>> = (0..cols)
            .map(|c| m.iter().map(|r| rat(r[c].0)).collect())
            .collect();
        subspaces.push(RationalSubspace::canonicalize(n, &columns)?);
    }
    LinearPattern::new(n, subspaces)
}

/// Pattern of incident edge images at a vertex, and notes on skipped ends.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexPattern {
    pub vertex: String,
    pub pattern: LinearPattern,
    /// Ends whose image is zero or the whole vertex group.
    pub excluded: Vec<String>,
}

/// Images of every incident edge-end at `vertex`; each loop end counts once.
pub fn vertex_edge_pattern(g: &GraphOfGroups, vertex: &str) -> Result<VertexPattern> {
    g.require_abelian("edge patterns")?;
    let v = g
        .vertex_index(vertex)
        .ok_or_else(|| Error::UnknownVertex(vertex.to_string()))?;
    let n = g.vertices()[v].rank;
    let oracle = g.oracle();
    let mut subspaces = Vec::new();
    let mut excluded = Vec::new();
    for end in g.incident_ends(v) {
        let ClassToken::Span(span) = oracle.class_of(end) else {
            unreachable!("abelian oracle yields spans")
        };
        let id = &g.edges()[end.edge].id;
        if span.is_zero() {
            excluded.push(format!("edge `{id}` end {}: zero image", end.end));
        } else if span.is_full() {
            excluded.push(format!(
                "edge `{id}` end {}: image spans the vertex group",
                end.end
            ));
        } else {
            subspaces.push(span);
        }
    }
    Ok(VertexPattern {
        vertex: vertex.to_string(),
        pattern: LinearPattern::new(n, subspaces)?,
        excluded,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum RigidityVerdict {
    /// Indices of `n+1` hyperplanes, every `n` of whose normals are independent.
    Rigid { witness: Vec<usize> },
    /// No such hyperplanes; the pattern may still be rigid.
    Inconclusive,
}

/// First `n+1` hyperplanes in general position, in lexicographic index order.
pub fn rigidity_check(p: &LinearPattern) -> RigidityVerdict {
    let n = p.ambient_dim;
    let hyperplanes: Vec<(usize, Vec<crate::exactlin::Rational>)> = p
        .subspaces
        .iter()
        .enumerate()
        .filter(|(_, s)| n > 0 && s.dim() + 1 == n)
        .map(|(i, s)| (i, s.annihilator().basis_rational().remove(0)))
        .collect();
    if n == 0 || hyperplanes.len() < n + 1 {
        return RigidityVerdict::Inconclusive;
    }
    for combo in combinations(hyperplanes.len(), n + 1) {
        let general = (0..=n).all(|skip| {
            let rows: Vec<_> = combo
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != skip)
                .map(|(_, &i)| hyperplanes[i].1.clone())
                .collect();
            RatMatrix::from_rows(rows, n)
                .map(|m| m.rank() == n)
                .unwrap_or(false)
        });
        if general {
            return RigidityVerdict::Rigid {
                witness: combo.iter().map(|&i| hyperplanes[i].0).collect(),
            };
        }
    }
    RigidityVerdict::Inconclusive
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        out.push(c.clone());
        let Some(i) = (0..k).rev().find(|&i| c[i] < n - k + i) else {
            return out;
        };
        c[i] += 1;
        for j in i + 1..k {
            c[j] = c[j - 1] + 1;
        }
    }
}
