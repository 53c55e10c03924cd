//! Exact rational linear algebra.
//!
//! Subgroups of `Z^n` are tracked up to commensurability by their rational
//! span. [`RationalSubspace`] keeps that span in a canonical integer echelon
//! form, so equality of commensurability classes is plain `==`.

mod matrix;
mod smith;
mod subspace;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use matrix::RatMatrix;
pub use smith::{smith_normal_form, SmithForm};
pub use subspace::RationalSubspace;

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Scales a rational vector to a primitive integer vector whose first nonzero
/// entry is positive. The zero vector maps to the zero vector.
pub fn primitive_integer_vector(v: &[Rational]) -> Vec<BigInt> {
    let lcm = v
        .iter()
        .filter(|x| !x.is_zero())
        .fold(BigInt::one(), |acc, x| num_integer::lcm(acc, x.denom().clone()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let gcd = ints
        .iter()
        .fold(BigInt::zero(), |acc, x| num_integer::gcd(acc, x.clone()));
    if gcd.is_zero() {
        return ints;
    }
    let sign = match ints.iter().find(|x| !x.is_zero()) {
        Some(lead) if lead.is_negative() => -BigInt::one(),
        _ => BigInt::one(),
    };
    let scale = gcd * sign;
    ints.into_iter().map(|x| x / &scale).collect()
}

pub(crate) fn to_rational_row(row: &[BigInt]) -> Vec<Rational> {
    row.iter().cloned().map(Rational::from_integer).collect()
}

/// Serializes big integers as JSON numbers when they fit in `i64`, else as strings.
pub(crate) fn int_to_json(x: &BigInt) -> serde_json::Value {
    match i64::try_from(x) {
        Ok(v) => serde_json::Value::from(v),
        Err(_) => serde_json::Value::from(x.to_string()),
    }
}

pub(crate) fn rat_to_json(x: &Rational) -> serde_json::Value {
    if x.is_integer() {
        int_to_json(x.numer())
    } else {
        serde_json::Value::from(x.to_string())
    }
}

pub(crate) fn serialize_ints<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    use serde::Serialize;
    v.iter().map(int_to_json).collect::<Vec<_>>().serialize(s)
}
