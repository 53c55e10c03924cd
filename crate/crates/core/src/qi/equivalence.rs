use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::pattern::LinearPattern;
use crate::error::{Error, Result};
use crate::exactlin::{RatMatrix, Rational};

pub const DEFAULT_SEED: u64 = 0x5eed;
const RANDOM_TRIALS: usize = 20;
const RANDOM_RANGE: i64 = 1_000_000;
/// Largest ambient dimension with an exact non-existence certificate.
const EXACT_LIMIT: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Certificate {
    /// Sizes or dimension multisets differ.
    Shape,
    /// A nonzero determinant at a random point of the solution space.
    RandomPoint,
    /// A nonzero determinant on the exact evaluation grid.
    Grid,
    /// Every bijection's solution space is singular, checked exactly.
    Exhaustive,
    /// Every random determinant vanished; no exact check at this dimension.
    Probabilistic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Equivalence {
    pub equivalent: bool,
    /// `T` with `T·P_i = Q_{bijection[i]}`.
    pub witness: Option<RatMatrix>,
    pub bijection: Option<Vec<usize>>,
    pub certificate: Certificate,
    pub seed: u64,
}

/// Whether some invertible rational `T` carries `p` onto `q` as multisets.
pub fn patterns_equivalent(p: &LinearPattern, q: &LinearPattern, seed: u64) -> Result<Equivalence> {
    if p.ambient_dim != q.ambient_dim {
        return Err(Error::DimensionMismatch {
            expected: p.ambient_dim,
            found: q.ambient_dim,
        });
    }
    let negative = |certificate| Equivalence {
        equivalent: false,
        witness: None,
        bijection: None,
        certificate,
        seed,
    };
    if p.len() != q.len() || p.dims_sorted() != q.dims_sorted() {
        return Ok(negative(Certificate::Shape));
    }
    let n = p.ambient_dim;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut exact = true;
    for sigma in bijections(p, q) {
        let basis = solution_basis(p, q, &sigma)?;
        if basis.is_empty() {
            continue;
        }
        for _ in 0..RANDOM_TRIALS {
            let t: Vec<i64> = (0..basis.len())
                .map(|_| rng.gen_range(-RANDOM_RANGE..=RANDOM_RANGE))
                .collect();
            if let Some(m) = invertible_at(n, &basis, &t)? {
                return Ok(Equivalence {
                    equivalent: true,
                    witness: Some(m),
                    bijection: Some(sigma),
                    certificate: Certificate::RandomPoint,
                    seed,
                });
            }
        }
        if n > EXACT_LIMIT {
            exact = false;
            continue;
        }
        // det(Σ t_j B_j) has degree at most n in each t_j, so it vanishes
        // identically iff it vanishes on {0..n}^m.
        for t in grid(basis.len(), n as i64) {
            if let Some(m) = invertible_at(n, &basis, &t)? {
                return Ok(Equivalence {
                    equivalent: true,
                    witness: Some(m),
                    bijection: Some(sigma),
                    certificate: Certificate::Grid,
                    seed,
                });
            }
        }
    }
    Ok(negative(if exact {
        Certificate::Exhaustive
    } else {
        Certificate::Probabilistic
    }))
}

/// Bijections `σ` with `dim P_i = dim Q_σ(i)`, in lexicographic order.
fn bijections(p: &LinearPattern, q: &LinearPattern) -> Vec<Vec<usize>> {
    let k = p.len();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    let mut used = vec![false; k];
    fn go(
        p: &LinearPattern,
        q: &LinearPattern,
        current: &mut Vec<usize>,
        used: &mut [bool],
        out: &mut Vec<Vec<usize>>,
    ) {
        let i = current.len();
        if i == p.len() {
            out.push(current.clone());
            return;
        }
        for j in 0..q.len() {
            if !used[j] && p.subspaces[i].dim() == q.subspaces[j].dim() {
                used[j] = true;
                current.push(j);
                go(p, q, current, used, out);
                current.pop();
                used[j] = false;
            }
        }
    }
    go(p, q, &mut current, &mut used, &mut out);
    out
}

/// Basis of `{T : T·P_i ⊆ Q_σ(i) for all i}`, each `T` flattened row-major.
fn solution_basis(p: &LinearPattern, q: &LinearPattern, sigma: &[usize]) -> Result<Vec<Vec<Rational>>> {
    let n = p.ambient_dim;
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for (i, &j) in sigma.iter().enumerate() {
        let normals = q.subspaces[j].annihilator().basis_rational();
        for v in p.subspaces[i].basis_rational() {
            for a in &normals {
                // a · T · v = Σ a_r v_c T_rc
                let mut row = vec![Rational::zero(); n * n];
                for r in 0..n {
                    for c in 0..n {
                        row[r * n + c] = &a[r] * &v[c];
                    }
                }
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        let mut basis = Vec::new();
        for k in 0..n * n {
            let mut b = vec![Rational::zero(); n * n];
            b[k] = Rational::from_integer(BigInt::from(1));
            basis.push(b);
        }
        return Ok(basis);
    }
    Ok(RatMatrix::from_rows(rows, n * n)?.nullspace())
}

fn invertible_at(n: usize, basis: &[Vec<Rational>], t: &[i64]) -> Result<Option<RatMatrix>> {
    let mut flat = vec![Rational::zero(); n * n];
    for (b, &x) in basis.iter().zip(t) {
        if x == 0 {
            continue;
        }
        let x = Rational::from_integer(BigInt::from(x));
        for (f, v) in flat.iter_mut().zip(b) {
            *f += &x * v;
        }
    }
    let rows = flat.chunks(n.max(1)).map(|r| r.to_vec()).collect::<Vec<_>>();
    let m = RatMatrix::from_rows(if n == 0 { Vec::new() } else { rows }, n)?;
    Ok((!m.determinant()?.is_zero()).then_some(m))
}

/// Points of `{0..=top}^m` in lexicographic order.
fn grid(m: usize, top: i64) -> impl Iterator<Item = Vec<i64>> {
    let mut next = Some(vec![0i64; m]);
    std::iter::from_fn(move || {
        let current = next.take()?;
        let mut succ = current.clone();
        let mut i = m;
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            if succ[i] < top {
                succ[i] += 1;
                for x in &mut succ[i + 1..] {
                    *x = 0;
                }
                next = Some(succ);
                break;
            }
        }
        Some(current)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn image_under_t_is_equivalent() {
        let p = LinearPattern::lines(&[[1, 0], [0, 1], [1, 1], [1, 2]]).unwrap();
        let t = RatMatrix::from_int_rows(&[vec![2, 1], vec![1, 1]], 2).unwrap();
        let q = p.transform(&t).unwrap();
        let eq = patterns_equivalent(&p, &q, DEFAULT_SEED).unwrap();
        assert!(eq.equivalent);
        let w = eq.witness.unwrap();
        let sigma = eq.bijection.unwrap();
        for (i, s) in p.subspaces.iter().enumerate() {
            assert_eq!(s.image(&w).unwrap(), q.subspaces[sigma[i]]);
        }
    }

    #[test]
    fn different_cross_ratio_is_not_equivalent() {
        let p = LinearPattern::lines(&[[1, 0], [0, 1], [1, 1], [1, 2]]).unwrap();
        let q = LinearPattern::lines(&[[1, 0], [0, 1], [1, 1], [1, 3]]).unwrap();
        let eq = patterns_equivalent(&p, &q, DEFAULT_SEED).unwrap();
        assert!(!eq.equivalent);
        assert_eq!(eq.certificate, Certificate::Exhaustive);
    }

    #[test]
    fn cardinality_mismatch() {
        let p = LinearPattern::lines(&[[1, 0], [0, 1], [1, 1]]).unwrap();
        let q = LinearPattern::lines(&[[1, 0], [0, 1]]).unwrap();
        assert_eq!(
            patterns_equivalent(&p, &q, 1).unwrap().certificate,
            Certificate::Shape
        );
    }

    #[test]
    fn grid_enumerates_all_points() {
        let pts: Vec<_> = grid(2, 1).collect();
        assert_eq!(pts, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(grid(0, 3).count(), 1);
    }
}
