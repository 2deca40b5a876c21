//! Dense univariate polynomials over an exact coefficient ring.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{Field, Rational, Ring};

/// Coefficients are stored low degree first with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> UniPoly<R> {
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn constant(c: R) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: R, k: usize) -> Self {
        let mut coeffs = vec![R::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// The linear polynomial `x - root`.
    pub fn linear_root(root: R) -> Self {
        Self::new(vec![-root, R::one()])
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> R {
        self.coeffs.get(i).cloned().unwrap_or_else(R::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> R {
        self.coeffs.last().cloned().unwrap_or_else(R::zero)
    }

    pub fn eval(&self, x: &R) -> R {
        let mut acc = R::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> UniPoly<S> {
        UniPoly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![R::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(coeffs)
    }

    /// Largest `k` with `x^k` dividing `self`, and the cofactor.
    pub fn strip_x_power(&self) -> (usize, Self) {
        let k = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if k == self.coeffs.len() {
            return (0, self.clone());
        }
        (k, Self::new(self.coeffs[k..].to_vec()))
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self.coeffs.iter().enumerate().skip(1).map(|(i, c)| times_int(c, i)).collect();
        Self::new(coeffs)
    }

    /// Exact division in `R[x]`: `Some(q)` iff `self = q * divisor`.
    pub fn exact_quotient(&self, divisor: &Self) -> Option<Self> {
        let dd = divisor.degree()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        let mut rem = self.coeffs.clone();
        let lc = divisor.leading_coeff();
        let n = rem.len() - 1;
        if n < dd {
            return None;
        }
        let mut quot = vec![R::zero(); n - dd + 1];
        for k in (0..=n - dd).rev() {
            let top = rem[k + dd].clone();
            if top.is_zero() {
                continue;
            }
            let q = top.exact_div(&lc)?;
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - q.clone() * c.clone();
            }
            quot[k] = q;
        }
        if rem.iter().all(|c| c.is_zero()) {
            Some(Self::new(quot))
        } else {
            None
        }
    }
}

fn times_int<R: Ring>(c: &R, k: usize) -> R {
    // double-and-add so R needs no integer embedding
    let mut acc = R::zero();
    let mut base = c.clone();
    let mut k = k;
    while k > 0 {
        if k & 1 == 1 {
            acc = acc + base.clone();
        }
        k >>= 1;
        if k > 0 {
            base = base.clone() + base;
        }
    }
    acc
}

impl<F: Field> UniPoly<F> {
    /// Euclidean division: `(q, r)` with `self = q * divisor + r`, `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let inv_lc = divisor.leading_coeff().inv();
        let n = rem.len() - 1;
        let mut quot = vec![F::zero(); n - dd + 1];
        for k in (0..=n - dd).rev() {
            let q = rem[k + dd].clone() * inv_lc.clone();
            if q.is_zero() {
                continue;
            }
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - q.clone() * c.clone();
            }
            quot[k] = q;
        }
        (Self::new(quot), Self::new(rem))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading_coeff().inv())
    }

    /// Monic gcd (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Yun's square-free decomposition: `[(g_1, 1), (g_2, 2), ...]` with
    /// `self = lc * prod g_i^i`, each `g_i` monic, square-free and pairwise coprime.
    /// Factors equal to 1 are omitted.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a = f.gcd(&df);
        let mut b = f.div_rem(&a).0;
        let mut c = df.div_rem(&a).0;
        let mut d = c - b.derivative();
        let mut i = 1;
        loop {
            let g = b.gcd(&d);
            if g.degree().unwrap_or(0) > 0 {
                out.push((g.clone(), i));
            }
            b = b.div_rem(&g).0;
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            c = d.div_rem(&g).0;
            d = c - b.derivative();
            i += 1;
        }
        out
    }

    /// Product of the square-free factors.
    pub fn squarefree_part(&self) -> Self {
        self.squarefree_decomposition().into_iter().fold(Self::one(), |acc, (g, _)| acc * g)
    }

    /// Divides out every factor shared with `g`, repeatedly.
    pub fn remove_factors_of(&self, g: &Self) -> Self {
        let mut f = self.clone();
        loop {
            let h = f.gcd(g);
            if h.degree().unwrap_or(0) == 0 {
                return f;
            }
            f = f.div_rem(&h).0;
        }
    }
}

impl UniPoly<Rational> {
    /// Primitive integer polynomial with positive leading coefficient, a
    /// rational multiple of `self`.
    pub fn primitive_integer(&self) -> UniPoly<BigIntRing> {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let l = crate::arith::denominator_lcm(self.coeffs.iter());
        let ints: Vec<BigInt> =
            self.coeffs.iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect();
        let mut g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        if ints.last().is_some_and(|c| c.is_negative()) {
            g = -g;
        }
        UniPoly::new(ints.into_iter().map(|c| BigIntRing(c / &g)).collect())
    }
}

/// `BigInt` as a coefficient ring.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BigIntRing(pub BigInt);

impl Add for BigIntRing {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        BigIntRing(self.0 + o.0)
    }
}
impl Sub for BigIntRing {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        BigIntRing(self.0 - o.0)
    }
}
impl Mul for BigIntRing {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        BigIntRing(self.0 * o.0)
    }
}
impl Neg for BigIntRing {
    type Output = Self;
    fn neg(self) -> Self {
        BigIntRing(-self.0)
    }
}
impl Zero for BigIntRing {
    fn zero() -> Self {
        BigIntRing(BigInt::zero())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}
impl One for BigIntRing {
    fn one() -> Self {
        BigIntRing(BigInt::one())
    }
}
impl Ring for BigIntRing {
    fn exact_div(&self, other: &Self) -> Option<Self> {
        if other.0.is_zero() {
            return None;
        }
        let (q, r) = self.0.div_rem(&other.0);
        r.is_zero().then_some(BigIntRing(q))
    }
}

impl<R: Ring> Add for UniPoly<R> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + o.coeff(i)).collect();
        Self::new(coeffs)
    }
}

impl<R: Ring> Sub for UniPoly<R> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - o.coeff(i)).collect();
        Self::new(coeffs)
    }
}

impl<R: Ring> Mul for UniPoly<R> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![R::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(coeffs)
    }
}

impl<R: Ring> Neg for UniPoly<R> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl<R: Ring> Zero for UniPoly<R> {
    fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<R: Ring> One for UniPoly<R> {
    fn one() -> Self {
        Self::constant(R::one())
    }
}

impl<R: Ring> Ring for UniPoly<R> {
    fn exact_div(&self, other: &Self) -> Option<Self> {
        self.exact_quotient(other)
    }
}

impl<R: Ring> fmt::Debug for UniPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c:?})")?,
                1 => write!(f, "({c:?})*x")?,
                _ => write!(f, "({c:?})*x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn p(c: &[i64]) -> UniPoly<Rational> {
        UniPoly::new(c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn arithmetic_and_division() {
        let f = p(&[-1, 0, 1]); // x^2 - 1
        let g = p(&[1, 1]); // x + 1
        assert_eq!(f.exact_quotient(&g), Some(p(&[-1, 1])));
        assert_eq!(p(&[1, 0, 1]).exact_quotient(&g), None);
        let (q, r) = p(&[1, 0, 1]).div_rem(&g);
        assert_eq!(q * g.clone() + r, p(&[1, 0, 1]));
        assert_eq!(f.gcd(&p(&[1, 2, 1])), g);
    }

    #[test]
    fn squarefree_decomposition_of_repeated_roots() {
        // (x-2)^2 (x+1)
        let f = p(&[-2, 1]) * p(&[-2, 1]) * p(&[1, 1]);
        let dec = f.squarefree_decomposition();
        assert_eq!(dec, vec![(p(&[1, 1]), 1), (p(&[-2, 1]), 2)]);
        assert_eq!(f.squarefree_part(), p(&[-2, 1]) * p(&[1, 1]));
    }

    #[test]
    fn integer_exact_division() {
        let f: UniPoly<BigIntRing> = UniPoly::new(vec![BigIntRing(6.into()), BigIntRing(3.into())]);
        let g = UniPoly::constant(BigIntRing(3.into()));
        assert!(f.exact_quotient(&g).is_some());
        let g = UniPoly::constant(BigIntRing(4.into()));
        assert!(f.exact_quotient(&g).is_none());
        assert_eq!(p(&[2, 4]).scale(&crate::arith::rat(1, 3)).primitive_integer().coeffs()[1].0, 2.into());
    }
}
