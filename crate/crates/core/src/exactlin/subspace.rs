use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::{int_to_json, primitive_integer_vector, to_rational_row, RatMatrix, Rational};
use crate::error::{Error, Result};

/// A linear subspace of `Q^n` in canonical form.
///
/// The basis is the reduced row echelon form of any spanning set with each row
/// rescaled to a primitive integer vector with positive pivot. Two values
/// describe the same subspace exactly when they compare equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalSubspace {
    ambient: usize,
    basis: Vec<Vec<BigInt>>,
}

impl RationalSubspace {
    pub fn zero(ambient: usize) -> Self {
        RationalSubspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        RationalSubspace {
            ambient,
            basis: (0..ambient)
                .map(|i| {
                    (0..ambient)
                        .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                        .collect()
                })
                .collect(),
        }
    }

    /// Canonical span of `vectors`, each of which must have length `ambient`.
    pub fn canonicalize(ambient: usize, vectors: &[Vec<Rational>]) -> Result<Self> {
        if let Some(bad) = vectors.iter().find(|v| v.len() != ambient) {
            return Err(Error::DimensionMismatch {
                expected: ambient,
                found: bad.len(),
            });
        }
        let m = RatMatrix::from_rows(vectors.to_vec(), ambient)?;
        let (red, pivots) = m.rref();
        let basis = (0..pivots.len())
            .map(|r| primitive_integer_vector(red.row(r)))
            .collect();
        Ok(RationalSubspace { ambient, basis })
    }

    pub fn from_int_vectors(ambient: usize, vectors: &[Vec<i64>]) -> Result<Self> {
        let rows: Vec<Vec<Rational>> = vectors
            .iter()
            .map(|v| v.iter().map(|&x| super::rat(x)).collect())
            .collect();
        Self::canonicalize(ambient, &rows)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn codim(&self) -> usize {
        self.ambient - self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    /// Canonical basis rows.
    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn basis_rational(&self) -> Vec<Vec<Rational>> {
        self.basis.iter().map(|r| to_rational_row(r)).collect()
    }

    fn check_ambient(&self, other: &RationalSubspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        Ok(())
    }

    /// Membership test by reduction against the echelon basis.
    pub fn contains_vector(&self, v: &[Rational]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: v.len(),
            });
        }
        let mut rest = v.to_vec();
        for row in &self.basis {
            let pivot = row
                .iter()
                .position(|x| !x.is_zero())
                .expect("canonical rows are nonzero");
            if rest[pivot].is_zero() {
                continue;
            }
            let factor = &rest[pivot] / Rational::from_integer(row[pivot].clone());
            for (r, b) in rest.iter_mut().zip(row) {
                if !b.is_zero() {
                    *r -= &factor * Rational::from_integer(b.clone());
                }
            }
        }
        Ok(rest.iter().all(Zero::is_zero))
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &RationalSubspace) -> Result<bool> {
        self.check_ambient(other)?;
        if other.dim() > self.dim() {
            return Ok(false);
        }
        for row in &other.basis {
            if !self.contains_vector(&to_rational_row(row))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `other ⊊ self`.
    pub fn strictly_contains(&self, other: &RationalSubspace) -> Result<bool> {
        Ok(other.dim() < self.dim() && self.contains(other)?)
    }

    pub fn sum(&self, other: &RationalSubspace) -> Result<RationalSubspace> {
        self.check_ambient(other)?;
        let mut rows = self.basis_rational();
        rows.extend(other.basis_rational());
        RationalSubspace::canonicalize(self.ambient, &rows)
    }

    /// Covectors vanishing on the subspace, viewed as a subspace of `Q^n`.
    pub fn annihilator(&self) -> RationalSubspace {
        if self.basis.is_empty() {
            return RationalSubspace::full(self.ambient);
        }
        let m =
            RatMatrix::from_bigint_rows(&self.basis, self.ambient).expect("basis rows have ambient length");
        RationalSubspace::canonicalize(self.ambient, &m.nullspace())
            .expect("nullspace vectors have ambient length")
    }

    pub fn intersect(&self, other: &RationalSubspace) -> Result<RationalSubspace> {
        self.check_ambient(other)?;
        if self.contains(other)? {
            return Ok(other.clone());
        }
        if other.contains(self)? {
            return Ok(self.clone());
        }
        let ann = self.annihilator().sum(&other.annihilator())?;
        Ok(ann.annihilator())
    }

    /// `span{ m·s : s ∈ self }` for `m` of shape `n × k`, `self ⊆ Q^k`.
    pub fn image(&self, m: &RatMatrix) -> Result<RationalSubspace> {
        if m.cols() != self.ambient {
            return Err(Error::ShapeMismatch(format!(
                "image of a subspace of Q^{} under a {}x{} matrix",
                self.ambient,
                m.rows(),
                m.cols()
            )));
        }
        let vectors = self
            .basis_rational()
            .iter()
            .map(|s| m.mul_vec(s))
            .collect::<Result<Vec<_>>>()?;
        RationalSubspace::canonicalize(m.rows(), &vectors)
    }

    /// `{ v ∈ Q^k : m·v ∈ self }` for `m` of shape `n × k`, `self ⊆ Q^n`.
    pub fn preimage(&self, m: &RatMatrix) -> Result<RationalSubspace> {
        if m.rows() != self.ambient {
            return Err(Error::ShapeMismatch(format!(
                "preimage of a subspace of Q^{} under a {}x{} matrix",
                self.ambient,
                m.rows(),
                m.cols()
            )));
        }
        let ann = self.annihilator();
        if ann.is_zero() {
            return Ok(RationalSubspace::full(m.cols()));
        }
        let constraints = RatMatrix::from_bigint_rows(ann.basis(), self.ambient)?.mul(m)?;
        RationalSubspace::canonicalize(m.cols(), &constraints.nullspace())
    }

    /// Extends the subspace to a hyperplane, adding standard basis vectors in
    /// index order. Returns `None` for the full space.
    pub fn extend_to_hyperplane(&self) -> Option<RationalSubspace> {
        if self.is_full() {
            return None;
        }
        let mut current = self.clone();
        for i in 0..self.ambient {
            if current.dim() + 1 == self.ambient {
                break;
            }
            let mut e = vec![Rational::zero(); self.ambient];
            e[i] = Rational::one();
            if !current.contains_vector(&e).expect("ambient length") {
                let mut rows = current.basis_rational();
                rows.push(e);
                current = RationalSubspace::canonicalize(self.ambient, &rows).expect("ambient");
            }
        }
        Some(current)
    }

    pub(crate) fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "ambient_dim": self.ambient,
            "basis": self
                .basis
                .iter()
                .map(|r| serde_json::Value::Array(r.iter().map(int_to_json).collect()))
                .collect::<Vec<_>>(),
        })
    }
}

impl Serialize for RationalSubspace {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl fmt::Display for RationalSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, row) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let parts: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(","))?;
        }
        write!(f, ">⊂Q^{}", self.ambient)
    }
}

impl fmt::Debug for RationalSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn span(n: usize, vs: &[Vec<i64>]) -> RationalSubspace {
        RationalSubspace::from_int_vectors(n, vs).unwrap()
    }

    fn ints(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn canonicalize_examples() {
        assert_eq!(span(2, &[vec![2, 4]]).basis(), ints(&[vec![1, 2]]).as_slice());
        assert_eq!(
            span(2, &[vec![1, 0], vec![0, 1], vec![1, 1]]),
            RationalSubspace::full(2)
        );
        assert_eq!(
            span(3, &[vec![1, 2, 3], vec![2, 4, 6]]).basis(),
            ints(&[vec![1, 2, 3]]).as_slice()
        );
        // rows cleared of denominators: span{(1, 1/2)} -> (2, 1)
        let half = RationalSubspace::canonicalize(
            2,
            &[vec![super::super::rat(1), Rational::new(1.into(), 2.into())]],
        )
        .unwrap();
        assert_eq!(half.basis(), ints(&[vec![2, 1]]).as_slice());
        // negative leading entry flips sign
        assert_eq!(span(2, &[vec![-3, 6]]).basis(), ints(&[vec![1, -2]]).as_slice());
    }

    #[test]
    fn canonicalize_rejects_ragged_input() {
        let err = RationalSubspace::from_int_vectors(2, &[vec![1, 2], vec![1]]).unwrap_err();
        assert_eq!(
            err,
            Error::DimensionMismatch {
                expected: 2,
                found: 1
            }
        );
    }

    #[test]
    fn contains_examples() {
        let x = span(2, &[vec![1, 0]]);
        assert!(x.contains(&span(2, &[vec![2, 0]])).unwrap());
        assert!(!x.contains(&RationalSubspace::full(2)).unwrap());
        let a = span(3, &[vec![1, 0, 0], vec![0, 1, 0]]);
        assert!(a.contains(&span(3, &[vec![1, 1, 0]])).unwrap());
        assert!(matches!(a.contains(&x), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn intersect_examples() {
        let x = span(2, &[vec![1, 0]]);
        let y = span(2, &[vec![0, 1]]);
        assert!(x.intersect(&y).unwrap().is_zero());
        let a = span(3, &[vec![1, 0, 0], vec![0, 1, 0]]);
        let b = span(3, &[vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(a.intersect(&b).unwrap(), span(3, &[vec![0, 1, 0]]));
        assert_eq!(a.intersect(&a).unwrap(), a);
    }

    #[test]
    fn sum_examples() {
        let x = span(2, &[vec![1, 0]]);
        let y = span(2, &[vec![0, 1]]);
        assert!(x.sum(&y).unwrap().is_full());
        assert_eq!(x.sum(&RationalSubspace::zero(2)).unwrap(), x);
        assert!(span(2, &[vec![1, 1]])
            .sum(&span(2, &[vec![1, -1]]))
            .unwrap()
            .is_full());
    }

    #[test]
    fn image_examples() {
        let s = span(3, &[vec![1, 2, 0]]);
        assert_eq!(s.image(&RatMatrix::identity(3)).unwrap(), s);
        let incl = RatMatrix::from_int_rows(&[vec![1, 0], vec![0, 1], vec![0, 0]], 2).unwrap();
        assert_eq!(
            RationalSubspace::full(2).image(&incl).unwrap(),
            span(3, &[vec![1, 0, 0], vec![0, 1, 0]])
        );
        let col = RatMatrix::from_int_rows(&[vec![2], vec![4]], 1).unwrap();
        assert_eq!(
            RationalSubspace::full(1).image(&col).unwrap(),
            span(2, &[vec![1, 2]])
        );
        assert!(matches!(
            RationalSubspace::full(3).image(&incl),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn preimage_examples() {
        let s = span(2, &[vec![3, 1]]);
        assert_eq!(s.preimage(&RatMatrix::identity(2)).unwrap(), s);
        let incl = RatMatrix::from_int_rows(&[vec![1, 0], vec![0, 1], vec![0, 0]], 2).unwrap();
        assert_eq!(
            span(3, &[vec![1, 0, 0]]).preimage(&incl).unwrap(),
            span(2, &[vec![1, 0]])
        );
        assert!(RationalSubspace::zero(3).preimage(&incl).unwrap().is_zero());
        assert!(matches!(
            RationalSubspace::full(2).preimage(&incl),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn zero_ambient_dimension() {
        let z = RationalSubspace::zero(0);
        assert!(z.is_full());
        assert_eq!(z, RationalSubspace::full(0));
        assert!(z.contains(&z).unwrap());
    }

    #[test]
    fn hyperplane_extension() {
        let s = span(3, &[vec![0, 1, 0]]);
        let h = s.extend_to_hyperplane().unwrap();
        assert_eq!(h.dim(), 2);
        assert!(h.contains(&s).unwrap());
        assert!(RationalSubspace::full(2).extend_to_hyperplane().is_none());
    }
}
