//! Exact scalar arithmetic: the coefficient-domain traits shared by the
//! polynomial, linear-algebra and resultant code, plus rational helpers.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// A commutative ring with exact division where it is defined.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Returns `Some(q)` with `q * other == self`, or `None` when `other`
    /// does not divide `self`.
    fn exact_div(&self, other: &Self) -> Option<Self>;

    fn power(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base.clone();
            }
            exp >>= 1;
            if exp > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

/// A field: every nonzero element is invertible.
pub trait Field: Ring {
    fn inv(&self) -> Self;

    fn divide(&self, other: &Self) -> Self {
        self.clone() * other.inv()
    }

    /// Integer power, negative exponents allowed for nonzero elements.
    fn powi(&self, exp: i64) -> Self {
        if exp >= 0 {
            self.power(exp as u64)
        } else {
            self.inv().power(exp.unsigned_abs())
        }
    }

    /// Embeds a rational constant.
    fn from_rational(q: &Rational) -> Self;
}

impl Ring for Rational {
    fn exact_div(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            None
        } else {
            Some(self / other)
        }
    }
}

impl Field for Rational {
    fn inv(&self) -> Self {
        self.recip()
    }

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Canonical "p/q" form with q > 0 (the denominator is always written).
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses "p/q", "p", or "-p/q".
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}

/// Nearest `f64`, robust to numerators and denominators beyond the `f64` range.
pub fn rational_to_f64(q: &Rational) -> f64 {
    if q.is_zero() {
        return 0.0;
    }
    if let (Some(n), Some(d)) = (q.numer().to_f64(), q.denom().to_f64()) {
        if n.is_finite() && d.is_finite() {
            return n / d;
        }
    }
    // Shift both to ~60 significant bits and rescale.
    let nb = q.numer().bits() as i64;
    let db = q.denom().bits() as i64;
    let ns = (nb - 60).max(0);
    let ds = (db - 60).max(0);
    let n = (q.numer() >> ns as usize).to_f64().unwrap_or(0.0);
    let d = (q.denom() >> ds as usize).to_f64().unwrap_or(1.0);
    let exp = (ns - ds) as i32;
    (n / d) * 2f64.powi(exp)
}

/// log2 of |q|, approximately; `-inf` for zero.
pub fn log2_abs(q: &Rational) -> f64 {
    if q.is_zero() {
        return f64::NEG_INFINITY;
    }
    let nb = q.numer().bits() as i64;
    let db = q.denom().bits() as i64;
    let ns = (nb - 60).max(0) as usize;
    let ds = (db - 60).max(0) as usize;
    let n = (q.numer().abs() >> ns).to_f64().unwrap_or(1.0);
    let d = (q.denom() >> ds).to_f64().unwrap_or(1.0);
    n.log2() - d.log2() + ns as f64 - ds as f64
}

/// Integer gcd on i64 slices (0 for an empty or all-zero slice).
pub fn gcd_slice(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

/// Divides out the gcd of the entries (no-op for the zero vector).
pub fn primitive(v: &[i64]) -> Vec<i64> {
    let g = gcd_slice(v);
    if g == 0 {
        v.to_vec()
    } else {
        v.iter().map(|x| x / g).collect()
    }
}

/// Least common multiple of the denominators.
pub fn denominator_lcm<'a>(qs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    qs.into_iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

pub fn sign_of(q: &Rational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        let q = parse_rational("-6/4").unwrap();
        assert_eq!(format_rational(&q), "-3/2");
        assert_eq!(format_rational(&parse_rational("8").unwrap()), "8/1");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn huge_rationals_convert_to_f64() {
        let big = Rational::from_integer(BigInt::from(10).pow(400));
        let q = big.clone() / (big * BigInt::from(4));
        assert_eq!(rational_to_f64(&q), 0.25);
        let q = Rational::new(BigInt::from(3) * BigInt::from(2).pow(2000), BigInt::from(2).pow(2001));
        assert!((rational_to_f64(&q) - 1.5).abs() < 1e-15);
        assert!((log2_abs(&rat(8, 1)) - 3.0).abs() < 1e-12);
    }

    #[test]
    fn ring_pow_and_field_powi() {
        assert_eq!(rat(2, 3).power(3), rat(8, 27));
        assert_eq!(rat(2, 3).powi(-2), rat(9, 4));
        assert_eq!(primitive(&[4, -6, 8]), vec![2, -3, 4]);
    }
}
