//! Fixture loading and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::path::PathBuf;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use raftkit_core::gog::graph_from_json;
use raftkit_core::qi::{pattern_from_json, LinearPattern};
use raftkit_core::GraphOfGroups;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

pub fn graph(name: &str) -> GraphOfGroups {
    let text = std::fs::read_to_string(fixture_path(name)).expect("fixture readable");
    graph_from_json(&text).expect("fixture parses")
}

pub fn pattern(name: &str) -> LinearPattern {
    let text = std::fs::read_to_string(fixture_path(name)).expect("fixture readable");
    pattern_from_json(&text).expect("fixture parses")
}

pub const ABELIAN_FIXTURES: &[&str] = &[
    "depth_example.json",
    "two_planes.json",
    "f2xz.json",
    "z2_hnn.json",
    "bs22.json",
    "single_vertex.json",
    "identity_chain.json",
];

/// Rank by fraction-free (Bareiss) elimination over the integers.
pub fn bareiss_rank(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..m).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..m {
            for c in col + 1..n {
                let v = (&a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c]) / &prev;
                a[r][c] = v;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
        if rank == m {
            break;
        }
    }
    rank
}

/// Determinant by Bareiss elimination.
pub fn bareiss_det(rows: &[Vec<i64>]) -> BigInt {
    let n = rows.len();
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[k][k] * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        return BigInt::one();
    }
    sign * &a[n - 1][n - 1]
}

/// Klein's j-invariant of the cross-ratio of four distinct points of the
/// projective line, given homogeneously. Equal for two 4-point sets iff a
/// projective map carries one to the other.
pub fn j_invariant(points: &[(i64, i64); 4]) -> BigRational {
    let det = |a: (i64, i64), b: (i64, i64)| BigInt::from(a.0 * b.1 - a.1 * b.0);
    let [p, q, r, s] = *points;
    let lambda = BigRational::new(det(p, r) * det(q, s), det(p, s) * det(q, r));
    let one = BigRational::one();
    let num = (&lambda * &lambda - &lambda + &one).pow(3) * BigRational::from_integer(BigInt::from(256));
    let den = (&lambda * &lambda) * (&lambda - &one) * (&lambda - &one);
    num / den
}

pub fn abs_det(rows: &[Vec<i64>]) -> BigInt {
    bareiss_det(rows).abs()
}
