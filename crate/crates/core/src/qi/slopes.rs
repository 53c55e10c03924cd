use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use super::pattern::LinearPattern;
use crate::error::{Error, Result};
use crate::exactlin::Rational;

/// A point of `Q ∪ {∞}`; infinity sorts after every rational.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Slope {
    Finite(Rational),
    Infinity,
}

impl Slope {
    /// Slope `y/x` of the direction `(x, y)`.
    pub fn of_direction(x: &Rational, y: &Rational) -> Slope {
        if x.is_zero() {
            Slope::Infinity
        } else {
            Slope::Finite(y / x)
        }
    }

    /// Homogeneous coordinates `[p : q]` with slope `p/q`.
    fn homogeneous(&self) -> (Rational, Rational) {
        match self {
            Slope::Finite(s) => (s.clone(), Rational::from_integer(BigInt::from(1))),
            Slope::Infinity => (Rational::from_integer(BigInt::from(1)), Rational::zero()),
        }
    }

    fn from_homogeneous(p: Rational, q: Rational) -> Slope {
        if q.is_zero() {
            Slope::Infinity
        } else {
            Slope::Finite(p / q)
        }
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slope::Finite(s) => write!(f, "{s}"),
            Slope::Infinity => write!(f, "inf"),
        }
    }
}

impl Serialize for Slope {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Slope multiset of a planar line pattern after the Möbius normalization
/// that minimizes it lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SlopeInvariant {
    pub slopes: Vec<Slope>,
}

impl fmt::Display for SlopeInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.slopes.iter().map(|s| s.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

pub fn pattern_slopes(p: &LinearPattern) -> Result<Vec<Slope>> {
    if p.ambient_dim != 2 {
        return Err(Error::NotLinePattern(format!(
            "ambient dimension {}",
            p.ambient_dim
        )));
    }
    p.subspaces
        .iter()
        .map(|s| {
            if s.dim() != 1 {
                return Err(Error::NotLinePattern(format!("member {s} is not a line")));
            }
            let d = s.basis_rational().remove(0);
            Ok(Slope::of_direction(&d[0], &d[1]))
        })
        .collect()
}

fn cross(x: &(Rational, Rational), y: &(Rational, Rational)) -> Rational {
    &x.0 * &y.1 - &x.1 * &y.0
}

/// The Möbius map sending `a, b, c` to `0, ∞, 1`, applied to `s`.
fn normalize(s: &Slope, a: &Slope, b: &Slope, c: &Slope) -> Slope {
    let (s, a, b, c) = (s.homogeneous(), a.homogeneous(), b.homogeneous(), c.homogeneous());
    Slope::from_homogeneous(cross(&s, &a) * cross(&c, &b), cross(&s, &b) * cross(&c, &a))
}

pub fn slope_invariant(p: &LinearPattern) -> Result<SlopeInvariant> {
    let slopes = pattern_slopes(p)?;
    let mut distinct = slopes.clone();
    distinct.sort();
    distinct.dedup();
    if distinct.len() < 3 {
        return Err(Error::Underdetermined(distinct.len()));
    }
    let mut best: Option<Vec<Slope>> = None;
    for a in &distinct {
        for b in &distinct {
            for c in &distinct {
                if a == b || b == c || a == c {
                    continue;
                }
                let mut image: Vec<Slope> = slopes.iter().map(|s| normalize(s, a, b, c)).collect();
                image.sort();
                if best.as_ref().is_none_or(|cur| image < *cur) {
                    best = Some(image);
                }
            }
        }
    }
    Ok(SlopeInvariant {
        slopes: best.expect("at least one frame"),
    })
}
