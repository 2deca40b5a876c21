//! Sparse multivariate Laurent polynomials over an exact coefficient field,
//! with evaluation, substitution, face restriction and vanishing spaces.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::arith::{Field, Rational, Ring};
use crate::error::{Error, Result};
use crate::lattice::{LatticeConfiguration, Point};
use crate::linalg::{exact_nullspace, int_inverse_unimodular, rank};
use crate::upoly::UniPoly;

/// `Σ c_u x^u` with exponents in Z^d; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly<C> {
    dim: usize,
    terms: BTreeMap<Vec<i64>, C>,
}

pub type LaurentPolynomial = LaurentPoly<Rational>;

impl<C: Ring> LaurentPoly<C> {
    pub fn zero(dim: usize) -> Self {
        Self { dim, terms: BTreeMap::new() }
    }

    pub fn constant(dim: usize, c: C) -> Self {
        Self::monomial(vec![0; dim], c)
    }

    pub fn monomial(exp: Vec<i64>, c: C) -> Self {
        let dim = exp.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { dim, terms }
    }

    /// The coordinate function `x_i`.
    pub fn variable(dim: usize, i: usize) -> Self {
        let mut e = vec![0; dim];
        e[i] = 1;
        Self::monomial(e, C::one())
    }

    /// Sums duplicate exponents and drops zero coefficients.
    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (Vec<i64>, C)>) -> Result<Self> {
        let mut out = Self::zero(dim);
        for (e, c) in terms {
            if e.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: e.len() });
            }
            out.add_term(e, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, e: Vec<i64>, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&e) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(e, s);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, C> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &[i64]) -> C {
        self.terms.get(e).cloned().unwrap_or_else(C::zero)
    }

    pub fn support(&self) -> Vec<Point> {
        self.terms.keys().cloned().collect()
    }

    pub fn support_configuration(&self) -> Result<LatticeConfiguration> {
        LatticeConfiguration::new(self.dim, self.support())
    }

    pub fn scale(&self, c: &C) -> Self {
        let terms = self.terms.iter().map(|(e, x)| (e.clone(), x.clone() * c.clone()));
        Self::from_terms(self.dim, terms).expect("same dimension")
    }

    /// Multiplies by `x^shift`.
    pub fn shift(&self, shift: &[i64]) -> Self {
        Self {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Componentwise minimum exponent (the monomial content); zeros for the zero polynomial.
    pub fn min_exponents(&self) -> Vec<i64> {
        (0..self.dim).map(|i| self.terms.keys().map(|e| e[i]).min().unwrap_or(0)).collect()
    }

    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> LaurentPoly<D> {
        LaurentPoly::from_terms(self.dim, self.terms.iter().map(|(e, c)| (e.clone(), f(c)))).expect("same dimension")
    }

    /// Univariate view in variable `var` after dividing by its monomial
    /// content. Requires the polynomial to involve only that variable.
    pub fn to_univariate(&self, var: usize) -> Result<(i64, UniPoly<C>)> {
        if self.terms.keys().any(|e| e.iter().enumerate().any(|(i, &k)| i != var && k != 0)) {
            return Err(Error::InvalidInput(format!("polynomial involves variables other than x{}", var + 1)));
        }
        let lo = self.terms.keys().map(|e| e[var]).min().unwrap_or(0);
        let hi = self.terms.keys().map(|e| e[var]).max().unwrap_or(0);
        let mut coeffs = vec![C::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            coeffs[(e[var] - lo) as usize] = c.clone();
        }
        Ok((lo, UniPoly::new(coeffs)))
    }

    pub fn from_univariate(dim: usize, var: usize, p: &UniPoly<C>) -> Self {
        let terms = p.coeffs().iter().enumerate().map(|(k, c)| {
            let mut e = vec![0; dim];
            e[var] = k as i64;
            (e, c.clone())
        });
        Self::from_terms(dim, terms).expect("same dimension")
    }
}

impl<C: Field> LaurentPoly<C> {
    /// Exact value at a point; negative powers of zero coordinates are rejected.
    pub fn evaluate(&self, p: &[C]) -> Result<C> {
        if p.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: p.len() });
        }
        let mut acc = C::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in p.iter().zip(e) {
                if k == 0 {
                    continue;
                }
                if k < 0 && x.is_zero() {
                    return Err(Error::ZeroBase);
                }
                term = term * x.powi(k);
            }
            acc = acc + term;
        }
        Ok(acc)
    }

    /// Replaces variable `i` by `assignments[i]` where given. Negative powers
    /// may only be substituted by monomials.
    pub fn substitute(&self, assignments: &[Option<LaurentPoly<C>>]) -> Result<Self> {
        if assignments.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: assignments.len() });
        }
        if let Some(g) = assignments.iter().flatten().find(|g| g.dim != self.dim) {
            return Err(Error::DimensionMismatch { expected: self.dim, found: g.dim });
        }
        let mut out = Self::zero(self.dim);
        for (e, c) in &self.terms {
            let mut keep = vec![0; self.dim];
            let mut term = Self::constant(self.dim, c.clone());
            for (i, &k) in e.iter().enumerate() {
                match &assignments[i] {
                    None => keep[i] = k,
                    Some(g) => term = term * g.power_i(k)?,
                }
            }
            out = out + term.shift(&keep);
        }
        Ok(out)
    }

    fn power_i(&self, k: i64) -> Result<Self> {
        if k >= 0 {
            return Ok(self.power(k as u64));
        }
        if self.terms.len() != 1 {
            return Err(Error::NonInvertibleSubstitution);
        }
        let (e, c) = self.terms.iter().next().unwrap();
        let inv = Self::monomial(e.iter().map(|x| -x).collect(), c.inv());
        Ok(inv.power(k.unsigned_abs()))
    }
}

impl<C: Ring> Add for LaurentPoly<C> {
    type Output = Self;
    fn add(mut self, o: Self) -> Self {
        for (e, c) in o.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl<C: Ring> Neg for LaurentPoly<C> {
    type Output = Self;
    fn neg(self) -> Self {
        Self { dim: self.dim, terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect() }
    }
}

impl<C: Ring> Sub for LaurentPoly<C> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<C: Ring> Mul for LaurentPoly<C> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut out = Self::zero(self.dim.max(o.dim));
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<C: Ring> LaurentPoly<C> {
    fn power(&self, mut k: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant(self.dim, C::one());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * base.clone();
            }
            k >>= 1;
            if k > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

impl<C: Ring> fmt::Debug for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(e, c)| format!("({c:?})*x^{e:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A point of the torus with exact rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPoint(Vec<Rational>);

impl RationalPoint {
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidInput("point must have a coordinate".into()));
        }
        if coords.iter().any(|c| c.is_zero()) {
            return Err(Error::InvalidInput("torus points must have nonzero coordinates".into()));
        }
        Ok(Self(coords))
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

impl std::ops::Deref for RationalPoint {
    type Target = [Rational];
    fn deref(&self) -> &[Rational] {
        &self.0
    }
}

pub fn evaluate(f: &LaurentPolynomial, p: &RationalPoint) -> Result<Rational> {
    f.evaluate(p)
}

/// A unimodular matrix whose first row is the primitive vector `v`.
/// Rows 2..d then give coordinates on the sublattice `v⊥`.
pub fn complete_to_unimodular(v: &[i64]) -> Vec<Vec<i64>> {
    let d = v.len();
    let mut c: Vec<Vec<i64>> = (0..d).map(|i| (0..d).map(|j| i64::from(i == j)).collect()).collect();
    let mut r = v.to_vec();
    // column operations on c mirror those on the row vector r, keeping r = v·c
    loop {
        let nz: Vec<usize> = (0..d).filter(|&j| r[j] != 0).collect();
        if nz.len() <= 1 {
            break;
        }
        let j = *nz.iter().min_by_key(|&&j| r[j].abs()).unwrap();
        for &k in &nz {
            if k == j {
                continue;
            }
            let q = r[k].div_euclid(r[j]);
            r[k] -= q * r[j];
            for row in c.iter_mut() {
                row[k] -= q * row[j];
            }
        }
    }
    let j = (0..d).find(|&j| r[j] != 0).expect("nonzero vector");
    assert_eq!(r[j].abs(), 1, "vector must be primitive");
    for row in c.iter_mut() {
        row.swap(0, j);
        if r[j] < 0 {
            row[0] = -row[0];
        }
    }
    int_inverse_unimodular(&c).expect("column operations are unimodular")
}

/// The part of a polynomial on the face of its support where `v · u` is minimal,
/// rewritten in coordinates of `v⊥`.
#[derive(Clone, Debug, PartialEq)]
pub struct FaceRestriction<C: Ring> {
    pub normal: Vec<i64>,
    pub restricted_support: LatticeConfiguration,
    pub shift: Vec<i64>,
    /// Face polynomial in the original coordinates.
    pub face_poly: LaurentPoly<C>,
    /// The shifted face polynomial in `d - 1` lattice coordinates of `v⊥`.
    pub edge_poly: LaurentPoly<C>,
}

pub fn restrict_to_face<C: Ring>(f: &LaurentPoly<C>, v: &[i64]) -> Result<FaceRestriction<C>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if v.len() != f.dim {
        return Err(Error::DimensionMismatch { expected: f.dim, found: v.len() });
    }
    if crate::arith::gcd_slice(v) != 1 {
        return Err(Error::InvalidInput(format!("normal {v:?} is not primitive")));
    }
    let weight = |e: &[i64]| -> i64 { e.iter().zip(v).map(|(a, b)| a * b).sum() };
    let wmin = f.terms.keys().map(|e| weight(e)).min().unwrap();
    let face: Vec<(Vec<i64>, C)> =
        f.terms.iter().filter(|(e, _)| weight(e) == wmin).map(|(e, c)| (e.clone(), c.clone())).collect();
    let beta = face[0].0.clone();
    let u = complete_to_unimodular(v);
    let edge_terms = face.iter().map(|(e, c)| {
        let diff: Vec<i64> = e.iter().zip(&beta).map(|(a, b)| a - b).collect();
        let w: Vec<i64> = u[1..].iter().map(|row| row.iter().zip(&diff).map(|(a, b)| a * b).sum()).collect();
        (w, c.clone())
    });
    let edge_poly = LaurentPoly::from_terms(f.dim - 1, edge_terms)?;
    let face_poly = LaurentPoly::from_terms(f.dim, face.iter().cloned())?;
    Ok(FaceRestriction {
        normal: v.to_vec(),
        restricted_support: face_poly.support_configuration()?,
        shift: beta,
        face_poly,
        edge_poly,
    })
}

/// Order of the monomial columns used for echelon bases: graded lexicographic
/// ascending, except that monomials listed in `trailing` are moved to the end
/// in the given order. Free columns come last, so in the generic case each
/// basis element is monic in one of the last `k` monomials and has no term in
/// the others.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MonomialOrder {
    pub trailing: Vec<Point>,
}

impl MonomialOrder {
    pub fn with_trailing(trailing: Vec<Point>) -> Self {
        Self { trailing }
    }

    pub fn arrange(&self, support: &[Point]) -> Vec<Point> {
        let mut cols: Vec<Point> = support.iter().filter(|p| !self.trailing.contains(p)).cloned().collect();
        cols.sort_by(|a, b| {
            let da: i64 = a.iter().sum();
            let db: i64 = b.iter().sum();
            da.cmp(&db).then_with(|| a.cmp(b))
        });
        cols.extend(self.trailing.iter().filter(|p| support.contains(p)).cloned());
        cols
    }
}

/// Basis of the polynomials supported on `a` vanishing at every point, in
/// reduced echelon form for `order`.
pub fn vanishing_space<C: Field>(
    a: &LatticeConfiguration,
    points: &[Vec<C>],
    order: &MonomialOrder,
) -> Result<Vec<LaurentPoly<C>>> {
    let d = a.dim_ambient();
    if let Some(p) = points.iter().find(|p| p.len() != d) {
        return Err(Error::DimensionMismatch { expected: d, found: p.len() });
    }
    if points.len() >= a.len() {
        return Err(Error::InvalidInput(format!(
            "{} points but only {} monomials; need fewer points than monomials",
            points.len(),
            a.len()
        )));
    }
    let cols = order.arrange(a.points());
    let monos: Vec<LaurentPoly<C>> = cols.iter().map(|e| LaurentPoly::monomial(e.clone(), C::one())).collect();
    let mut m = Vec::with_capacity(points.len());
    for p in points {
        let row = monos.iter().map(|x| x.evaluate(p)).collect::<Result<Vec<C>>>()?;
        m.push(row);
    }
    let r = rank(&m, cols.len());
    if r < points.len() {
        return Err(Error::DegenerateInput { rank: r, expected: points.len() });
    }
    Ok(exact_nullspace(&m, cols.len())
        .into_iter()
        .map(|v| LaurentPoly::from_terms(d, cols.iter().cloned().zip(v)).expect("same dimension"))
        .collect())
}

/// Rational-point convenience wrapper for [`vanishing_space`].
pub fn vanishing_space_rational(
    a: &LatticeConfiguration,
    points: &[RationalPoint],
    order: &MonomialOrder,
) -> Result<Vec<LaurentPolynomial>> {
    let pts: Vec<Vec<Rational>> = points.iter().map(|p| p.coords().to_vec()).collect();
    vanishing_space(a, &pts, order)
}

pub fn substitute<C: Field>(f: &LaurentPoly<C>, assignments: &[Option<LaurentPoly<C>>]) -> Result<LaurentPoly<C>> {
    f.substitute(assignments)
}

/// Nested dense form `Q[x1][x2]...[xd]` of a polynomial with nonnegative
/// exponents, used for elimination in three variables.
pub fn to_nested3(f: &LaurentPolynomial) -> Result<UniPoly<UniPoly<UniPoly<Rational>>>> {
    if f.dim != 3 {
        return Err(Error::DimensionMismatch { expected: 3, found: f.dim });
    }
    if f.terms.keys().any(|e| e.iter().any(|&k| k < 0)) {
        return Err(Error::InvalidInput("negative exponent in nested conversion".into()));
    }
    let deg = |i: usize| f.terms.keys().map(|e| e[i] as usize).max().unwrap_or(0);
    let mut grid = vec![vec![vec![Rational::zero(); deg(0) + 1]; deg(1) + 1]; deg(2) + 1];
    for (e, c) in &f.terms {
        grid[e[2] as usize][e[1] as usize][e[0] as usize] = c.clone();
    }
    Ok(UniPoly::new(
        grid.into_iter().map(|plane| UniPoly::new(plane.into_iter().map(UniPoly::new).collect())).collect(),
    ))
}

/// Nested form `Q[x][y]` of a bivariate polynomial with nonnegative exponents.
pub fn to_nested2(f: &LaurentPolynomial) -> Result<UniPoly<UniPoly<Rational>>> {
    if f.dim != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: f.dim });
    }
    if f.terms.keys().any(|e| e.iter().any(|&k| k < 0)) {
        return Err(Error::InvalidInput("negative exponent in nested conversion".into()));
    }
    let dx = f.terms.keys().map(|e| e[0] as usize).max().unwrap_or(0);
    let dy = f.terms.keys().map(|e| e[1] as usize).max().unwrap_or(0);
    let mut grid = vec![vec![Rational::zero(); dx + 1]; dy + 1];
    for (e, c) in &f.terms {
        grid[e[1] as usize][e[0] as usize] = c.clone();
    }
    Ok(UniPoly::new(grid.into_iter().map(UniPoly::new).collect()))
}

/// Swaps the two variables of a bivariate polynomial.
pub fn swap_xy(f: &LaurentPolynomial) -> LaurentPolynomial {
    LaurentPoly::from_terms(2, f.terms.iter().map(|(e, c)| (vec![e[1], e[0]], c.clone()))).expect("dimension 2")
}

/// Divides out the monomial content so every exponent is nonnegative and
/// each variable appears with exponent 0 somewhere.
pub fn strip_monomial_content<C: Ring>(f: &LaurentPoly<C>) -> LaurentPoly<C> {
    let lo = f.min_exponents();
    f.shift(&lo.iter().map(|x| -x).collect::<Vec<_>>())
}

pub fn one_of<C: Ring>(dim: usize) -> LaurentPoly<C> {
    LaurentPoly::constant(dim, C::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::ratfunc::RatFunc;
    use num_traits::One;
    use proptest::prelude::*;

    fn poly(dim: usize, terms: &[(&[i64], Rational)]) -> LaurentPolynomial {
        LaurentPoly::from_terms(dim, terms.iter().map(|(e, c)| (e.to_vec(), c.clone()))).unwrap()
    }

    fn pt(c: &[Rational]) -> RationalPoint {
        RationalPoint::new(c.to_vec()).unwrap()
    }

    fn cfg(pts: &[&[i64]]) -> LatticeConfiguration {
        LatticeConfiguration::new(pts[0].len(), pts.iter().map(|p| p.to_vec()).collect()).unwrap()
    }

    #[test]
    fn evaluate_examples() {
        let f = poly(1, &[(&[3], int(1)), (&[1], int(-1))]);
        assert_eq!(evaluate(&f, &pt(&[int(2)])).unwrap(), int(6));
        let g = poly(2, &[(&[2, 1], int(1)), (&[1, 2], int(2)), (&[1, 1], int(-5))]);
        assert_eq!(evaluate(&g, &pt(&[int(8), rat(-3, 2)])).unwrap(), int(0));
        let c = LaurentPoly::constant(2, int(7));
        assert_eq!(evaluate(&c, &pt(&[rat(3, 5), int(-9)])).unwrap(), int(7));
        let inv = poly(1, &[(&[-1], int(1))]);
        assert!(matches!(inv.evaluate(&[int(0)]), Err(Error::ZeroBase)));
        assert_eq!(inv.evaluate(&[int(4)]).unwrap(), rat(1, 4));
    }

    #[test]
    fn unimodular_completion() {
        for v in [vec![1, 0], vec![0, -1], vec![2, -1], vec![3, 5], vec![-1, 2, 4], vec![6, 10, 15]] {
            let u = complete_to_unimodular(&v);
            assert_eq!(u[0], v);
            assert_eq!(crate::linalg::int_det(&u).abs(), 1);
        }
    }

    #[test]
    fn face_restriction_examples() {
        let sq = poly(2, &[(&[0, 0], int(2)), (&[1, 0], int(3)), (&[0, 1], int(5)), (&[1, 1], int(7))]);
        let r = restrict_to_face(&sq, &[0, 1]).unwrap();
        assert_eq!(r.restricted_support.points(), &[vec![0, 0], vec![1, 0]]);
        let (_, u) = strip_monomial_content(&r.edge_poly).to_univariate(0).unwrap();
        assert_eq!(u.degree(), Some(1));

        // inner normal of the edge (2,1)-(1,2) of the triangle (0,0),(2,1),(1,2)
        let f = poly(2, &[(&[0, 0], int(1)), (&[2, 1], int(2)), (&[1, 2], int(3)), (&[1, 1], int(4))]);
        let r = restrict_to_face(&f, &[-1, -1]).unwrap();
        assert_eq!(r.restricted_support.points(), &[vec![1, 2], vec![2, 1]]);
        assert_eq!(r.shift, vec![1, 2]);
        assert_eq!(r.edge_poly.num_terms(), 2);

        let m = poly(3, &[(&[1, -2, 3], int(4))]);
        for v in [vec![1, 0, 0], vec![2, 3, -1]] {
            let r = restrict_to_face(&m, &v).unwrap();
            assert_eq!(r.face_poly, m);
            assert_eq!(r.edge_poly, LaurentPoly::constant(2, int(4)));
        }
    }

    #[test]
    fn vanishing_space_triangle_with_interior_point() {
        let a = cfg(&[&[0, 0], &[1, 1], &[2, 1], &[1, 2]]);
        let pts = [pt(&[int(1), int(2)]), pt(&[int(3), int(1)])];
        let basis = vanishing_space_rational(&a, &pts, &MonomialOrder::default()).unwrap();
        assert_eq!(basis.len(), 2);
        // xy(x + 2y - 5) lies in the span: check rank of the three vectors
        let target = poly(2, &[(&[2, 1], int(1)), (&[1, 2], int(2)), (&[1, 1], int(-5))]);
        let cols = a.points().to_vec();
        let rows: Vec<Vec<Rational>> =
            basis.iter().chain(std::iter::once(&target)).map(|f| cols.iter().map(|e| f.coeff(e)).collect()).collect();
        assert_eq!(rank(&rows, cols.len()), 2);
        for f in &basis {
            for p in &pts {
                assert!(evaluate(f, p).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn vanishing_space_cubics_monic_in_pure_powers() {
        let a = crate::lattice::lattice_points(&crate::lattice::convex_hull(&cfg(&[&[0, 0], &[3, 0], &[0, 3]])));
        let pts: Vec<RationalPoint> = [(1, 2), (3, -1), (2, 5), (-4, 3), (5, 7), (-2, -3), (7, 1), (3, 11)]
            .iter()
            .map(|&(x, y)| pt(&[int(x), int(y)]))
            .collect();
        let order = MonomialOrder::with_trailing(vec![vec![3, 0], vec![0, 3]]);
        let basis = vanishing_space_rational(&a, &pts, &order).unwrap();
        assert_eq!(basis.len(), 2);
        assert_eq!(basis[0].coeff(&[3, 0]), int(1));
        assert_eq!(basis[0].coeff(&[0, 3]), int(0));
        assert_eq!(basis[1].coeff(&[0, 3]), int(1));
        assert_eq!(basis[1].coeff(&[3, 0]), int(0));
        for f in &basis {
            for p in &pts {
                assert!(evaluate(f, p).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn vanishing_space_edge_cases() {
        let a = cfg(&[&[0, 0], &[1, 1], &[2, 1], &[1, 2]]);
        let basis = vanishing_space_rational(&a, &[], &MonomialOrder::default()).unwrap();
        assert_eq!(basis.len(), 4);
        assert!(basis.iter().all(|f| f.num_terms() == 1));
        let dup = [pt(&[int(1), int(2)]), pt(&[int(1), int(2)])];
        assert!(matches!(
            vanishing_space_rational(&a, &dup, &MonomialOrder::default()),
            Err(Error::DegenerateInput { rank: 1, expected: 2 })
        ));
    }

    #[test]
    fn evaluation_matrix_rank() {
        let a = cfg(&[&[0, 0], &[1, 1], &[2, 1], &[1, 2]]);
        let m: Vec<Vec<Rational>> = [(1, 2), (3, 1)]
            .iter()
            .map(|&(x, y)| a.points().iter().map(|e| int(x).powi(e[0]) * int(y).powi(e[1])).collect())
            .collect();
        assert_eq!(rank(&m, 4), 2);
        assert_eq!(exact_nullspace(&m, 4).len(), 2);
    }

    #[test]
    fn substitution_examples() {
        let f = poly(2, &[(&[1, 2], int(1))]);
        let x2 = poly(2, &[(&[2, 0], int(1))]);
        assert_eq!(f.substitute(&[None, Some(x2.clone())]).unwrap(), poly(2, &[(&[5, 0], int(1))]));
        let c = LaurentPoly::constant(2, int(3));
        assert_eq!(c.substitute(&[None, Some(x2.clone())]).unwrap(), c);
        let neg = poly(2, &[(&[0, -1], int(1))]);
        let xp1 = poly(2, &[(&[1, 0], int(1)), (&[0, 0], int(1))]);
        assert!(matches!(neg.substitute(&[None, Some(xp1)]), Err(Error::NonInvertibleSubstitution)));
        assert_eq!(neg.substitute(&[None, Some(x2)]).unwrap(), poly(2, &[(&[-2, 0], int(1))]));
    }

    #[test]
    fn substitution_over_parameter_field() {
        // F2 of the non-Chasles example restricted to y = x^2
        let t = RatFunc::t();
        let c = |p: RatFunc| p;
        let k = |n: i64| RatFunc::from_rational(&int(n));
        let t2 = t.clone() * t.clone();
        let t3 = t2.clone() * t.clone();
        let f2 = LaurentPoly::from_terms(
            2,
            vec![
                (vec![0, 0], c(k(-8) * t3.clone())),
                (vec![1, 1], c(k(8) + k(12) * t.clone() + k(14) * t2.clone() + k(15) * t3.clone())),
                (vec![2, 1], c(-(k(12) + k(18) * t.clone() + k(21) * t2.clone() + k(7) * t3.clone()))),
                (vec![3, 1], c(k(4) + k(6) * t.clone() + k(7) * t2.clone())),
            ],
        )
        .unwrap();
        let x2 = LaurentPoly::monomial(vec![2, 0], RatFunc::one());
        let sub = f2.substitute(&[None, Some(x2)]).unwrap();
        let (lo, u) = sub.to_univariate(0).unwrap();
        assert_eq!(lo, 0);
        let lin = |r: RatFunc| UniPoly::new(vec![-r, RatFunc::one()]);
        let cubic = lin(k(1)) * lin(k(2)) * lin(t.clone());
        let (q, r) = u.div_rem(&cubic);
        assert!(r.is_zero());
        assert_eq!(q.coeff(0), k(4) * t2.clone());
        assert_eq!(q.coeff(1), k(4) * t.clone() + k(6) * t2.clone());
        assert_eq!(q.coeff(2), k(4) + k(6) * t.clone() + k(7) * t2);
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPolynomial> {
        prop::collection::vec(((-3i64..4, -3i64..4), -20i64..21, 1i64..6), 0..6).prop_map(|ts| {
            LaurentPoly::from_terms(2, ts.into_iter().map(|((a, b), n, d)| (vec![a, b], rat(n, d)))).unwrap()
        })
    }

    fn arb_point() -> impl Strategy<Value = Vec<Rational>> {
        prop::collection::vec((prop_oneof![-9i64..0, 1i64..10], 1i64..7), 2)
            .prop_map(|v| v.into_iter().map(|(n, d)| rat(n, d)).collect())
    }

    proptest! {
        #[test]
        fn ring_axioms(f in arb_poly(), g in arb_poly(), h in arb_poly()) {
            prop_assert_eq!((f.clone() + g.clone()) * h.clone(), f.clone() * h.clone() + g.clone() * h.clone());
            prop_assert_eq!(f.clone() * g.clone(), g.clone() * f.clone());
            prop_assert!((f.clone() - f.clone()).is_zero());
        }

        #[test]
        fn evaluation_is_a_homomorphism(f in arb_poly(), g in arb_poly(), p in arb_point()) {
            let fg = (f.clone() * g.clone()).evaluate(&p).unwrap();
            prop_assert_eq!(fg, f.evaluate(&p).unwrap() * g.evaluate(&p).unwrap());
            let s = (f.clone() + g.clone()).evaluate(&p).unwrap();
            prop_assert_eq!(s, f.evaluate(&p).unwrap() + g.evaluate(&p).unwrap());
        }

        #[test]
        fn face_terms_have_minimal_weight(f in arb_poly(), a in -3i64..4, b in -3i64..4) {
            prop_assume!(!f.is_zero() && crate::arith::gcd_slice(&[a, b]) == 1);
            let r = restrict_to_face(&f, &[a, b]).unwrap();
            let w = |e: &[i64]| a * e[0] + b * e[1];
            let wmin = f.terms().keys().map(|e| w(e)).min().unwrap();
            for e in r.face_poly.terms().keys() {
                prop_assert_eq!(w(e), wmin);
            }
            let count = f.terms().keys().filter(|e| w(e) == wmin).count();
            prop_assert_eq!(r.face_poly.num_terms(), count);
        }

        #[test]
        fn vanishing_basis_vanishes(pts in prop::collection::vec(arb_point(), 1..4)) {
            let a = cfg(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1], &[2, 0], &[0, 2]]);
            match vanishing_space(&a, &pts, &MonomialOrder::default()) {
                Ok(basis) => {
                    prop_assert_eq!(basis.len(), a.len() - pts.len());
                    for f in &basis {
                        for p in &pts {
                            prop_assert!(f.evaluate(p).unwrap().is_zero());
                        }
                    }
                }
                Err(Error::DegenerateInput { rank, expected }) => prop_assert!(rank < expected),
                Err(e) => prop_assert!(false, "unexpected error {e}"),
            }
        }
    }
}
