//! Exact exponent arithmetic. Exponents are compared by cross-multiplication
//! and floored with integer division; nothing here ever touches a float.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

pub(crate) fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// A maximal fractional exponent `a/b` where `b` is the length of the root
/// word. Kept unreduced so the denominator always records the root length.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct RationalExponent {
    num: u64,
    den: u64,
}

impl RationalExponent {
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den >= 1, "exponent denominator must be positive");
        RationalExponent { num, den }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn floor(&self) -> u64 {
        self.num / self.den
    }

    pub fn is_integer(&self) -> bool {
        self.num.is_multiple_of(self.den)
    }

    /// Largest integer `i` with `i <= self - c`, clamped to zero.
    ///
    /// Evaluated as `(num - c*den) / den` so that thresholds such as
    /// `i <= m(u) - 1` stay exact for fractional exponents.
    pub fn floor_sub(&self, c: u64) -> u64 {
        match c.checked_mul(self.den) {
            Some(sub) if self.num >= sub => (self.num - sub) / self.den,
            _ => 0,
        }
    }

    pub fn cmp_int(&self, v: u64) -> Ordering {
        (self.num as u128).cmp(&(v as u128 * self.den as u128))
    }

    pub fn at_least_int(&self, v: u64) -> bool {
        self.cmp_int(v) != Ordering::Less
    }

    pub fn to_big(&self) -> BigRational {
        BigRational::new(BigInt::from(self.num), BigInt::from(self.den))
    }
}

impl PartialEq for RationalExponent {
    fn eq(&self, other: &Self) -> bool {
        self.num as u128 * other.den as u128 == other.num as u128 * self.den as u128
    }
}

impl Eq for RationalExponent {}

impl PartialOrd for RationalExponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RationalExponent {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl Hash for RationalExponent {
    fn hash<H: Hasher>(&self, state: &mut H) {
        // Hash the reduced form so numerically equal exponents collide.
        let g = gcd_u64(self.num, self.den).max(1);
        (self.num / g).hash(state);
        (self.den / g).hash(state);
    }
}

impl fmt::Display for RationalExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num.is_multiple_of(self.den) {
            write!(f, "{}", self.num / self.den)
        } else {
            let g = gcd_u64(self.num, self.den);
            write!(f, "{}/{}", self.num / g, self.den / g)
        }
    }
}

/// Serialize a big rational as decimal strings; sums of exponents outgrow
/// every fixed-width integer once denominators mix.
pub fn big_ratio_strings(r: &BigRational) -> (String, String) {
    (r.numer().to_string(), r.denom().to_string())
}
