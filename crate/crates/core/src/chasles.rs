//! Chasles configurations and structures, and the extra-point map they
//! induce: from N generic torus points to the one further common zero of
//! the polynomials they force.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{Rational, Ring};
use crate::error::{Error, Result};
use crate::lattice::{
    convex_hull, is_saturated, lattice_points, mixed_volume, normalized_volume, LatticeConfiguration,
};
use crate::numeric::rational_roots;
use crate::polynomial::{
    strip_monomial_content, swap_xy, to_nested2, to_nested3, vanishing_space_rational, LaurentPolynomial,
    MonomialOrder, RationalPoint,
};
use crate::resultant::{
    facet_directional_resultants, product_from_records, sylvester_resultant, DirectionalResultantRecord,
};
use crate::upoly::UniPoly;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChaslesReport {
    pub is_chasles: bool,
    pub dim: usize,
    pub cardinality: usize,
    pub vol: u64,
    /// `vol(A) - 1`.
    #[serde(rename = "N")]
    pub n: i64,
    pub saturated: bool,
}

/// Tests `|A| + 1 = vol(A) + d`.
pub fn is_chasles_configuration(a: &LatticeConfiguration) -> Result<ChaslesReport> {
    let dim = a.dimension();
    if dim != a.dim_ambient() {
        return Err(Error::DegenerateConfiguration { dim, ambient: a.dim_ambient() });
    }
    let vol = normalized_volume(a).value;
    Ok(ChaslesReport {
        is_chasles: a.len() as u64 + 1 == vol + dim as u64,
        dim,
        cardinality: a.len(),
        vol,
        n: vol as i64 - 1,
        saturated: is_saturated(a),
    })
}

/// Configurations `A_1..A_l` in Z^d with a partition `d = k_1 + ... + k_l`
/// and `|A_i| = N + k_i` for a common `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChaslesStructure {
    configurations: Vec<LatticeConfiguration>,
    partition: Vec<usize>,
    n: usize,
}

impl ChaslesStructure {
    pub fn new(configurations: Vec<LatticeConfiguration>, partition: Vec<usize>) -> Result<Self> {
        let d = check_shape(&configurations, &partition)?;
        let sum: usize = partition.iter().sum();
        if sum != d {
            return Err(Error::InvalidInput(format!("partition sums to {sum}, expected the dimension {d}")));
        }
        let n = common_n(&configurations, &partition).map_err(Error::InvalidInput)?;
        Ok(Self { configurations, partition, n })
    }

    /// A single configuration with partition `(d)`.
    pub fn from_configuration(a: LatticeConfiguration) -> Result<Self> {
        let d = a.dim_ambient();
        Self::new(vec![a], vec![d])
    }

    pub fn configurations(&self) -> &[LatticeConfiguration] {
        &self.configurations
    }

    pub fn partition(&self) -> &[usize] {
        &self.partition
    }

    pub fn dim(&self) -> usize {
        self.configurations[0].dim_ambient()
    }

    #[allow(non_snake_case)]
    pub fn N(&self) -> usize {
        self.n
    }

    /// Each configuration repeated `k_i` times: the supports of `F_1..F_d`.
    pub fn expanded_supports(&self) -> Vec<&LatticeConfiguration> {
        self.configurations.iter().zip(&self.partition).flat_map(|(a, &k)| std::iter::repeat_n(a, k)).collect()
    }

    pub fn check(&self) -> Result<StructureReport> {
        is_chasles_structure(&self.configurations, &self.partition)
    }
}

fn check_shape(configurations: &[LatticeConfiguration], partition: &[usize]) -> Result<usize> {
    let Some(first) = configurations.first() else {
        return Err(Error::InvalidInput("a structure needs at least one configuration".into()));
    };
    let d = first.dim_ambient();
    if let Some(c) = configurations.iter().find(|c| c.dim_ambient() != d) {
        return Err(Error::DimensionMismatch { expected: d, found: c.dim_ambient() });
    }
    if partition.len() != configurations.len() {
        return Err(Error::DimensionMismatch { expected: configurations.len(), found: partition.len() });
    }
    if partition.contains(&0) {
        return Err(Error::InvalidInput("partition entries must be positive".into()));
    }
    Ok(d)
}

fn common_n(configurations: &[LatticeConfiguration], partition: &[usize]) -> std::result::Result<usize, String> {
    let ns: Vec<i64> = configurations.iter().zip(partition).map(|(a, &k)| a.len() as i64 - k as i64).collect();
    if ns.windows(2).any(|w| w[0] != w[1]) {
        return Err(format!("|A_i| - k_i differ across configurations: {ns:?}"));
    }
    if ns[0] < 1 {
        return Err(format!("N = {} must be positive", ns[0]));
    }
    Ok(ns[0] as usize)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub is_chasles: bool,
    #[serde(rename = "N")]
    pub n: Option<usize>,
    pub mixed_volume: Option<u64>,
    pub reason: Option<String>,
}

/// Tests the mixed-volume condition `mvol(A_1^{k_1}, ..., A_l^{k_l}) = N + 1`.
pub fn is_chasles_structure(configurations: &[LatticeConfiguration], partition: &[usize]) -> Result<StructureReport> {
    let d = check_shape(configurations, partition)?;
    let fail = |n, reason: String| StructureReport { is_chasles: false, n, mixed_volume: None, reason: Some(reason) };
    let sum: usize = partition.iter().sum();
    if sum != d {
        return Ok(fail(None, format!("partition sums to {sum}, not {d}")));
    }
    let n = match common_n(configurations, partition) {
        Ok(n) => n,
        Err(reason) => return Ok(fail(None, reason)),
    };
    let entries: Vec<(&LatticeConfiguration, usize)> = configurations.iter().zip(partition.iter().copied()).collect();
    let mv = mixed_volume(&entries)?;
    let ok = mv == n as u64 + 1;
    Ok(StructureReport {
        is_chasles: ok,
        n: Some(n),
        mixed_volume: Some(mv),
        reason: (!ok).then(|| format!("mixed volume {mv} differs from N + 1 = {}", n + 1)),
    })
}

/// The pair of quadrangles `P_n`, `Q_n` with partition (1, 1).
pub fn family_pq(n: usize) -> Result<ChaslesStructure> {
    if n == 0 {
        return Err(Error::InvalidInput("family index must be at least 1".into()));
    }
    let n = n as i64;
    let quad = |v: [[i64; 2]; 4]| -> Result<LatticeConfiguration> {
        let verts = LatticeConfiguration::new(2, v.iter().map(|p| p.to_vec()).collect())?;
        Ok(lattice_points(&convex_hull(&verts)))
    };
    let p = quad([[0, 0], [0, n], [1, n + 1], [1, 1]])?;
    let q = quad([[1, 0], [0, 1], [0, n + 1], [1, n]])?;
    ChaslesStructure::new(vec![p, q], vec![1, 1])
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Diagnostics {
    pub records: Vec<DirectionalResultantRecord>,
    /// Degrees of the eliminants after deflation, one per coordinate.
    pub eliminant_degrees: Vec<usize>,
    pub candidates_tested: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtraPointResult {
    pub point: RationalPoint,
    /// Values of the basis polynomials at the point; all exactly zero.
    pub certificates: Vec<Rational>,
    /// Sign chosen for each coordinate of the product formula (+1 or -1);
    /// empty for the eliminant path.
    pub sign_pattern: Vec<i8>,
    pub basis: Vec<LaurentPolynomial>,
    pub diagnostics: Diagnostics,
}

/// Replaces a basis by Vandermonde combinations of it, choosing the first
/// node offset for which every combination carries the union of the supports.
fn full_support_combination(basis: Vec<LaurentPolynomial>) -> Vec<LaurentPolynomial> {
    if basis.len() < 2 {
        return basis;
    }
    let mut union: Vec<Vec<i64>> = basis.iter().flat_map(|f| f.support()).collect();
    union.sort();
    union.dedup();
    for offset in 0..64i64 {
        let combo: Vec<LaurentPolynomial> = (0..basis.len() as i64)
            .map(|j| {
                let node = Rational::from_integer((j + 1 + offset).into());
                basis
                    .iter()
                    .enumerate()
                    .fold(LaurentPolynomial::zero(basis[0].dim()), |acc, (l, f)| acc + f.scale(&node.power(l as u64)))
            })
            .collect();
        if combo.iter().all(|f| f.support() == union) {
            return combo;
        }
    }
    basis
}

/// The `d` polynomials forced by the points: a basis of the vanishing space
/// of each configuration, recombined so each carries its full support.
pub fn structure_basis(s: &ChaslesStructure, points: &[RationalPoint]) -> Result<Vec<LaurentPolynomial>> {
    let d = s.dim();
    if points.len() != s.N() {
        return Err(Error::InvalidInput(format!("expected N = {} points, got {}", s.N(), points.len())));
    }
    if let Some(p) = points.iter().find(|p| p.dim() != d) {
        return Err(Error::DimensionMismatch { expected: d, found: p.dim() });
    }
    let mut out = Vec::with_capacity(d);
    for (a, &k) in s.configurations.iter().zip(&s.partition) {
        let basis = vanishing_space_rational(a, points, &MonomialOrder::default())?;
        debug_assert_eq!(basis.len(), k);
        out.extend(full_support_combination(basis));
    }
    Ok(out)
}

fn certify(basis: &[LaurentPolynomial], p: &[Rational]) -> Result<Option<Vec<Rational>>> {
    let vals = basis.iter().map(|f| f.evaluate(p)).collect::<Result<Vec<_>>>()?;
    Ok(vals.iter().all(|v| v.is_zero()).then_some(vals))
}

fn check_new(point: &RationalPoint, inputs: &[RationalPoint]) -> Result<()> {
    match inputs.iter().position(|q| q == point) {
        Some(index) => Err(Error::CoincidentExtraPoint { index }),
        None => Ok(()),
    }
}

/// The extra point of a planar structure from the product-of-roots formula,
/// with the sign of each coordinate fixed by exact vanishing.
pub fn extra_point(s: &ChaslesStructure, points: &[RationalPoint]) -> Result<ExtraPointResult> {
    if s.dim() != 2 {
        return Err(Error::Unsupported("the resultant path is implemented for d = 2".into()));
    }
    let basis = structure_basis(s, points)?;
    let records = facet_directional_resultants(&basis)?;
    let magnitudes: Vec<Rational> = (0..2)
        .map(|i| {
            let known = points.iter().fold(Rational::one(), |acc, p| acc * p[i].clone());
            product_from_records(&records, i) / known
        })
        .collect();
    let mut passing = Vec::new();
    let mut tested = 0;
    for sx in [1i8, -1] {
        for sy in [1i8, -1] {
            let cand = vec![
                magnitudes[0].clone() * Rational::from_integer(sx.into()),
                magnitudes[1].clone() * Rational::from_integer(sy.into()),
            ];
            tested += 1;
            if let Some(vals) = certify(&basis, &cand)? {
                passing.push((cand, vec![sx, sy], vals));
            }
        }
    }
    if passing.len() != 1 {
        return Err(Error::SignResolutionFailure { passing: passing.len() });
    }
    let (coords, sign_pattern, certificates) = passing.pop().unwrap();
    let point = RationalPoint::new(coords)?;
    check_new(&point, points)?;
    Ok(ExtraPointResult {
        point,
        certificates,
        sign_pattern,
        basis,
        diagnostics: Diagnostics { records, eliminant_degrees: vec![], candidates_tested: tested },
    })
}

fn linear(root: &Rational) -> UniPoly<Rational> {
    UniPoly::new(vec![-root.clone(), Rational::one()])
}

/// `Res_y(F, G)` with the known x-coordinates and the factors that stem
/// from common roots on `x = 0`, `y = 0` or at `y = ∞` removed.
fn deflated_eliminant(f: &LaurentPolynomial, g: &LaurentPolynomial, known: &[Rational]) -> Result<UniPoly<Rational>> {
    let fy = to_nested2(&strip_monomial_content(f))?;
    let gy = to_nested2(&strip_monomial_content(g))?;
    let mut r = sylvester_resultant(&fy, &gy)?;
    if r.is_zero() {
        return Err(Error::PositiveDimensional);
    }
    for a in known {
        if let Some(q) = r.exact_quotient(&linear(a)) {
            r = q;
        }
    }
    let (_, mut r) = r.strip_x_power();
    let at_infinity = fy.leading_coeff().gcd(&gy.leading_coeff());
    let on_axis = fy.coeff(0).gcd(&gy.coeff(0));
    for h in [at_infinity, on_axis] {
        if h.degree().unwrap_or(0) > 0 {
            r = r.remove_factors_of(&h);
        }
    }
    Ok(r)
}

fn root_candidates(r: &UniPoly<Rational>) -> Result<Vec<Rational>> {
    Ok(match r.degree() {
        None | Some(0) => vec![],
        Some(1) => vec![-r.coeff(0) / r.coeff(1)],
        Some(_) => rational_roots(r)?,
    })
}

/// The extra point read off eliminants: exact in the plane, and in three
/// variables by iterated elimination with numeric root finding and exact
/// rational reconstruction.
pub fn extra_point_via_eliminant(s: &ChaslesStructure, points: &[RationalPoint]) -> Result<ExtraPointResult> {
    match s.dim() {
        2 => eliminant_2d(s, points),
        3 => eliminant_3d(s, points),
        d => Err(Error::Unsupported(format!("the eliminant path covers d = 2 and d = 3, not d = {d}"))),
    }
}

fn eliminant_2d(s: &ChaslesStructure, points: &[RationalPoint]) -> Result<ExtraPointResult> {
    let basis = structure_basis(s, points)?;
    let (f, g) = (&basis[0], &basis[1]);
    let xs: Vec<Rational> = points.iter().map(|p| p[0].clone()).collect();
    let ys: Vec<Rational> = points.iter().map(|p| p[1].clone()).collect();
    let rx = deflated_eliminant(f, g, &xs)?;
    let ry = deflated_eliminant(&swap_xy(f), &swap_xy(g), &ys)?;
    let degrees = vec![rx.degree().unwrap_or(0), ry.degree().unwrap_or(0)];
    let ambiguity = || Error::ExtraneousFactorAmbiguity { degree: degrees[0].max(degrees[1]) };
    let (cx, cy) = (root_candidates(&rx)?, root_candidates(&ry)?);
    let mut found = Vec::new();
    let mut tested = 0;
    for a in cx.iter().filter(|a| !a.is_zero()) {
        for b in cy.iter().filter(|b| !b.is_zero()) {
            tested += 1;
            let p = RationalPoint::new(vec![a.clone(), b.clone()])?;
            if points.contains(&p) {
                continue;
            }
            if let Some(vals) = certify(&basis, &p)? {
                found.push((p, vals));
            }
        }
    }
    if found.len() != 1 {
        return Err(ambiguity());
    }
    let (point, certificates) = found.pop().unwrap();
    Ok(ExtraPointResult {
        point,
        certificates,
        sign_pattern: vec![],
        basis,
        diagnostics: Diagnostics { records: vec![], eliminant_degrees: degrees, candidates_tested: tested },
    })
}

type Nested3 = UniPoly<UniPoly<UniPoly<Rational>>>;
type Nested2 = UniPoly<UniPoly<Rational>>;

fn at_x(p: &Nested2, a: &Rational) -> UniPoly<Rational> {
    p.map(|c| c.eval(a))
}

fn at_xy(p: &Nested3, a: &Rational, b: &Rational) -> UniPoly<Rational> {
    p.map(|cy| cy.map(|cx| cx.eval(a)).eval(b))
}

fn gcd_all(polys: impl IntoIterator<Item = UniPoly<Rational>>) -> UniPoly<Rational> {
    polys.into_iter().fold(UniPoly::zero(), |g, p| g.gcd(&p))
}

fn eliminant_3d(s: &ChaslesStructure, points: &[RationalPoint]) -> Result<ExtraPointResult> {
    let basis = structure_basis(s, points)?;
    let nested: Vec<Nested3> = basis.iter().map(|f| to_nested3(&strip_monomial_content(f))).collect::<Result<_>>()?;
    let fail = |msg: String| Error::RationalReconstructionFailure(msg);

    // Two z-eliminants sharing a polynomial, then eliminate y.
    let mut chosen = None;
    for (i, j, k) in [(0, 1, 2), (1, 0, 2), (2, 0, 1)] {
        let r1 = sylvester_resultant(&nested[i], &nested[j])?;
        let r2 = sylvester_resultant(&nested[i], &nested[k])?;
        if r1.is_zero() || r2.is_zero() {
            continue;
        }
        let e = sylvester_resultant(&r1, &r2)?;
        if !e.is_zero() {
            chosen = Some((r1, r2, e));
            break;
        }
    }
    let (r1, r2, mut e) = chosen.ok_or_else(|| fail("every eliminant vanishes identically".into()))?;
    for p in points {
        if let Some(q) = e.exact_quotient(&linear(&p[0])) {
            e = q;
        }
    }
    let degree = e.degree().unwrap_or(0);
    let mut found: Vec<(RationalPoint, Vec<Rational>)> = Vec::new();
    let mut tested = 0;
    for a in rational_roots(&e)?.into_iter().filter(|a| !a.is_zero()) {
        let gy = gcd_all([at_x(&r1, &a), at_x(&r2, &a)]);
        if gy.is_zero() || gy.degree() == Some(0) {
            continue;
        }
        for b in rational_roots(&gy)?.into_iter().filter(|b| !b.is_zero()) {
            let gz = gcd_all(nested.iter().map(|f| at_xy(f, &a, &b)));
            if gz.is_zero() || gz.degree() == Some(0) {
                continue;
            }
            for c in rational_roots(&gz)?.into_iter().filter(|c| !c.is_zero()) {
                tested += 1;
                let p = RationalPoint::new(vec![a.clone(), b.clone(), c])?;
                if points.contains(&p) || found.iter().any(|(q, _)| *q == p) {
                    continue;
                }
                if let Some(vals) = certify(&basis, &p)? {
                    found.push((p, vals));
                }
            }
        }
    }
    match found.len() {
        1 => {
            let (point, certificates) = found.pop().unwrap();
            Ok(ExtraPointResult {
                point,
                certificates,
                sign_pattern: vec![],
                basis,
                diagnostics: Diagnostics {
                    records: vec![],
                    eliminant_degrees: vec![degree],
                    candidates_tested: tested,
                },
            })
        }
        0 => Err(fail(format!("no rational common zero among the roots of an eliminant of degree {degree}"))),
        k => Err(fail(format!("{k} certified candidates; the extra point is not unique"))),
    }
}

/// Exact `(a_3, b_3)` for the triangle with one interior point, from its
/// closed form. `None` when a denominator vanishes.
pub fn triangle_closed_form(p1: &[Rational], p2: &[Rational]) -> Option<(Rational, Rational)> {
    let (a1, b1, a2, b2) = (&p1[0], &p1[1], &p2[0], &p2[1]);
    let w = a1 * b1 - a2 * b2;
    let da = (b1 - b2) * &w;
    let db = (a1 - a2) * &w;
    if da.is_zero() || db.is_zero() {
        return None;
    }
    let a3 = -(b1 * b2 * (a1 - a2) * (a1 - a2)) / da;
    let b3 = -(a1 * a2 * (b1 - b2) * (b1 - b2)) / db;
    Some((a3, b3))
}

pub fn triangle_configuration() -> LatticeConfiguration {
    LatticeConfiguration::new(2, vec![vec![0, 0], vec![1, 1], vec![2, 1], vec![1, 2]]).expect("valid")
}

pub fn cubic_configuration() -> LatticeConfiguration {
    let pts = (0..=3i64).flat_map(|i| (0..=3 - i).map(move |j| vec![i, j])).collect();
    LatticeConfiguration::new(2, pts).expect("valid")
}

pub fn octad_configuration() -> LatticeConfiguration {
    let pts = vec![
        vec![0, 0, 0],
        vec![1, 0, 0],
        vec![0, 1, 0],
        vec![0, 0, 1],
        vec![2, 0, 0],
        vec![0, 2, 0],
        vec![0, 0, 2],
        vec![1, 1, 0],
        vec![1, 0, 1],
        vec![0, 1, 1],
    ];
    LatticeConfiguration::new(3, pts).expect("valid")
}

/// `{0, e1, e2, e1 + e2, e3, 2 e3, e4, ..., ed}` for `d >= 3`.
pub fn a_d_configuration(d: usize) -> Result<LatticeConfiguration> {
    if d < 3 {
        return Err(Error::InvalidInput("A_d is defined for d >= 3".into()));
    }
    let e = |i: usize, k: i64| {
        let mut v = vec![0; d];
        v[i] = k;
        v
    };
    let mut e12 = e(0, 1);
    e12[1] = 1;
    let mut pts = vec![vec![0; d], e(0, 1), e(1, 1), e12, e(2, 1), e(2, 2)];
    pts.extend((3..d).map(|i| e(i, 1)));
    LatticeConfiguration::new(d, pts)
}

/// The non-Chasles triangle `(0,0), (1,2), (3,1)` with its two interior points.
pub fn non_chasles_configuration() -> LatticeConfiguration {
    LatticeConfiguration::new(2, vec![vec![0, 0], vec![1, 2], vec![3, 1], vec![1, 1], vec![2, 1]]).expect("valid")
}
