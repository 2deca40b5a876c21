//! Numeric oracle: complex roots of univariate rational polynomials,
//! torus roots of planar systems by elimination, and recovery of exact
//! rational roots from numeric approximations.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{int, rational_to_f64, Field, Rational};
use crate::error::{Error, Result};
use crate::lattice::{mixed_volume, LatticeConfiguration};
use crate::polynomial::{strip_monomial_content, to_nested2, LaurentPoly, LaurentPolynomial};
use crate::resultant::sylvester_resultant;
use crate::upoly::UniPoly;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverOptions {
    /// Bound on the relative residual of accepted roots.
    pub tol: f64,
    /// Roots closer than this (relative) are merged into one cluster.
    pub cluster_tol: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self { tol: 1e-10, cluster_tol: 1e-7 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UniRoot {
    pub root: Complex64,
    pub multiplicity: usize,
}

/// Coefficients scaled by a common power of two so that none overflows.
fn to_complex_coeffs(p: &UniPoly<Rational>) -> Vec<Complex64> {
    let max_bits = p
        .coeffs()
        .iter()
        .filter(|c| !c.is_zero())
        .map(|c| c.numer().bits() as i64 - c.denom().bits() as i64)
        .max()
        .unwrap_or(0);
    let scale = if max_bits >= 0 {
        Rational::new(BigInt::one(), BigInt::one() << max_bits as usize)
    } else {
        Rational::from_integer(BigInt::one() << (-max_bits) as usize)
    };
    p.coeffs().iter().map(|c| Complex64::new(rational_to_f64(&(c * &scale)), 0.0)).collect()
}

fn horner(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// Removes leading coefficients that are negligible relative to the largest.
fn trim(c: &[Complex64], rel: f64) -> Vec<Complex64> {
    let max = c.iter().map(|a| a.norm()).fold(0.0, f64::max);
    let mut v = c.to_vec();
    while v.len() > 1 && v.last().unwrap().norm() <= rel * max {
        v.pop();
    }
    v
}

/// All roots of a polynomial with complex coefficients (low degree first)
/// by Aberth–Ehrlich simultaneous iteration.
pub fn aberth(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let c = trim(coeffs, 0.0);
    let n = c.len().saturating_sub(1);
    if n == 0 {
        return Ok(vec![]);
    }
    let lc = c[n];
    let c: Vec<Complex64> = c.iter().map(|a| a / lc).collect();
    if n == 1 {
        return Ok(vec![-c[0]]);
    }
    // Fujiwara bound on root moduli
    let bound = (0..n)
        .map(|k| {
            let r = c[k].norm();
            let r = if k == 0 { r / 2.0 } else { r };
            r.powf(1.0 / (n - k) as f64)
        })
        .fold(0.0, f64::max)
        * 2.0;
    let center = -c[n - 1] / n as f64;
    let radius = bound.max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| center + Complex64::from_polar(radius * 0.5, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4))
        .collect();
    let mut converged = vec![false; n];
    let mut last_step = f64::INFINITY;
    for _ in 0..2000 {
        let mut max_step: f64 = 0.0;
        for k in 0..n {
            if converged[k] {
                continue;
            }
            let (p, dp) = horner(&c, z[k]);
            if p.norm() == 0.0 {
                converged[k] = true;
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..n).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let w = ratio / (Complex64::one() - ratio * s);
            if !w.re.is_finite() || !w.im.is_finite() {
                continue;
            }
            z[k] -= w;
            let step = w.norm() / (1.0 + z[k].norm());
            max_step = max_step.max(step);
            if step < 1e-16 {
                converged[k] = true;
            }
        }
        last_step = max_step;
        if converged.iter().all(|&b| b) || max_step < 1e-15 {
            return Ok(z);
        }
    }
    if last_step < 1e-8 {
        return Ok(z);
    }
    Err(Error::IllConditioned { estimate: last_step })
}

fn complex_to_rational(z: Complex64) -> Option<(Rational, Rational)> {
    Some((Rational::from_float(z.re)?, Rational::from_float(z.im)?))
}

/// Newton steps whose residual is computed exactly at the current iterate.
fn polish_exact(p: &UniPoly<Rational>, dp: &UniPoly<Rational>, mut z: Complex64, steps: usize) -> Complex64 {
    for _ in 0..steps {
        let Some((re, im)) = complex_to_rational(z) else {
            return z;
        };
        let eval = |q: &UniPoly<Rational>| {
            let (mut a, mut b) = (Rational::zero(), Rational::zero());
            for c in q.coeffs().iter().rev() {
                let na = &a * &re - &b * &im + c;
                let nb = &a * &im + &b * &re;
                a = na;
                b = nb;
            }
            Complex64::new(rational_to_f64(&a), rational_to_f64(&b))
        };
        let fz = eval(p);
        let dfz = eval(dp);
        if dfz.norm() == 0.0 {
            return z;
        }
        let w = fz / dfz;
        if !w.re.is_finite() || !w.im.is_finite() {
            return z;
        }
        z -= w;
        if w.norm() <= 1e-17 * (1.0 + z.norm()) {
            break;
        }
    }
    z
}

/// All complex roots with multiplicities. Multiplicities come from an exact
/// square-free decomposition; numerically indistinguishable roots of
/// different factors are then merged.
pub fn univariate_roots(f: &UniPoly<Rational>, opts: &SolverOptions) -> Result<Vec<UniRoot>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut roots: Vec<UniRoot> = Vec::new();
    for (g, m) in f.squarefree_decomposition() {
        if g.degree().unwrap_or(0) == 0 {
            continue;
        }
        let dg = g.derivative();
        for z in aberth(&to_complex_coeffs(&g))? {
            let z = polish_exact(&g, &dg, z, 4);
            roots.push(UniRoot { root: z, multiplicity: m });
        }
    }
    Ok(cluster_roots(roots, opts.cluster_tol))
}

fn cluster_roots(roots: Vec<UniRoot>, tol: f64) -> Vec<UniRoot> {
    let mut out: Vec<UniRoot> = Vec::new();
    for r in roots {
        match out.iter_mut().find(|o| (o.root - r.root).norm() <= tol * (1.0 + o.root.norm())) {
            Some(o) => o.multiplicity += r.multiplicity,
            None => out.push(r),
        }
    }
    out.sort_by(|a, b| a.root.re.total_cmp(&b.root.re).then(a.root.im.total_cmp(&b.root.im)));
    out
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TorusRoot {
    #[serde(serialize_with = "ser_complex_vec")]
    pub coords: Vec<Complex64>,
    #[serde(rename = "mult")]
    pub multiplicity: usize,
    pub residual: f64,
}

fn ser_complex_vec<S: serde::Serializer>(v: &[Complex64], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for z in v {
        let mut m = BTreeMap::new();
        // adding 0.0 turns -0.0 into 0.0
        m.insert("re", z.re + 0.0);
        m.insert("im", z.im + 0.0);
        seq.serialize_element(&m)?;
    }
    seq.end()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TorusRootList {
    pub roots: Vec<TorusRoot>,
    pub tolerance: f64,
    /// Set when multiplicities could not be assigned consistently.
    pub flagged: bool,
    pub notes: Vec<String>,
}

impl TorusRootList {
    pub fn total_multiplicity(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }

    /// `∏ ρ_i^{m_ρ}` over the roots.
    pub fn coordinate_product(&self, i: usize) -> Complex64 {
        self.roots.iter().fold(Complex64::one(), |acc, r| acc * r.coords[i].powu(r.multiplicity as u32))
    }
}

struct ComplexPoly {
    terms: Vec<(i64, i64, Complex64, f64)>,
}

impl ComplexPoly {
    fn new(f: &LaurentPolynomial) -> Self {
        let terms = f
            .terms()
            .iter()
            .map(|(e, c)| {
                let v = rational_to_f64(c);
                (e[0], e[1], Complex64::new(v, 0.0), v.abs())
            })
            .collect();
        Self { terms }
    }

    /// Value, gradient, and the magnitude sum used to normalize residuals.
    fn eval(&self, x: Complex64, y: Complex64) -> (Complex64, Complex64, Complex64, f64) {
        let (mut v, mut dx, mut dy, mut scale) = (Complex64::zero(), Complex64::zero(), Complex64::zero(), 0.0);
        for &(a, b, c, m) in &self.terms {
            let xa = x.powi(a as i32);
            let yb = y.powi(b as i32);
            let t = c * xa * yb;
            v += t;
            if a != 0 {
                dx += c * (a as f64) * x.powi(a as i32 - 1) * yb;
            }
            if b != 0 {
                dy += c * (b as f64) * xa * y.powi(b as i32 - 1);
            }
            scale += m * xa.norm() * yb.norm();
        }
        (v, dx, dy, scale)
    }

    fn relative_residual(&self, x: Complex64, y: Complex64) -> f64 {
        let (v, _, _, s) = self.eval(x, y);
        if s == 0.0 {
            v.norm()
        } else {
            v.norm() / s
        }
    }
}

fn newton_2d(f: &ComplexPoly, g: &ComplexPoly, mut x: Complex64, mut y: Complex64) -> (Complex64, Complex64) {
    for _ in 0..30 {
        let (fv, fx, fy, _) = f.eval(x, y);
        let (gv, gx, gy, _) = g.eval(x, y);
        let det = fx * gy - fy * gx;
        if det.norm() == 0.0 {
            break;
        }
        let dxs = (fv * gy - fy * gv) / det;
        let dys = (fx * gv - fv * gx) / det;
        if !(dxs.re.is_finite() && dxs.im.is_finite() && dys.re.is_finite() && dys.im.is_finite()) {
            break;
        }
        x -= dxs;
        y -= dys;
        if dxs.norm() <= 1e-16 * (1.0 + x.norm()) && dys.norm() <= 1e-16 * (1.0 + y.norm()) {
            break;
        }
    }
    (x, y)
}

/// Evaluates the `Q[x]` coefficients of a polynomial in `y` at a complex `x`.
fn specialize(p: &UniPoly<UniPoly<Rational>>, x: Complex64) -> Vec<Complex64> {
    p.coeffs()
        .iter()
        .map(|c| c.coeffs().iter().rev().fold(Complex64::zero(), |acc, a| acc * x + rational_to_f64(a)))
        .collect()
}

/// Common roots in the torus of two planar Laurent polynomials.
pub fn solve_2d(f: &LaurentPolynomial, g: &LaurentPolynomial, opts: &SolverOptions) -> Result<TorusRootList> {
    if f.dim() != 2 || g.dim() != 2 {
        return Err(Error::Unsupported("solve_2d takes polynomials in two variables".into()));
    }
    if f.is_zero() || g.is_zero() {
        return Err(Error::PositiveDimensional);
    }
    let f0 = strip_monomial_content(f);
    let g0 = strip_monomial_content(g);
    let fy = to_nested2(&f0)?;
    let gy = to_nested2(&g0)?;
    let res = sylvester_resultant(&fy, &gy)?;
    if res.is_zero() {
        return Err(Error::PositiveDimensional);
    }
    let (_, res) = res.strip_x_power();
    let fc = ComplexPoly::new(&f0);
    let gc = ComplexPoly::new(&g0);
    let mut out = TorusRootList { roots: vec![], tolerance: opts.tol, flagged: false, notes: vec![] };
    if res.degree() == Some(0) {
        return Ok(out);
    }
    for xr in univariate_roots(&res, opts)? {
        let x0 = xr.root;
        let pf = trim(&specialize(&fy, x0), 1e-11);
        let pg = trim(&specialize(&gy, x0), 1e-11);
        let p = match (pf.len(), pg.len()) {
            (1, 1) => {
                out.notes.push(format!("x = {x0} leaves both equations constant in y"));
                continue;
            }
            (1, _) => pg,
            (_, 1) => pf,
            (a, b) if a <= b => pf,
            _ => pg,
        };
        let mut found: Vec<(Complex64, Complex64, f64)> = Vec::new();
        for y0 in aberth(&p)? {
            if y0.norm() < 1e-12 {
                continue;
            }
            let (x1, y1) = newton_2d(&fc, &gc, x0, y0);
            if x1.norm() < 1e-12 || y1.norm() < 1e-12 {
                continue;
            }
            if (x1 - x0).norm() > 1e-4 * (1.0 + x0.norm()) {
                continue;
            }
            let resid = fc.relative_residual(x1, y1).max(gc.relative_residual(x1, y1));
            if resid > opts.tol {
                continue;
            }
            if found.iter().any(|(_, y, _)| (y - y1).norm() <= opts.cluster_tol * (1.0 + y.norm())) {
                continue;
            }
            found.push((x1, y1, resid));
        }
        let k = found.len();
        if k == 0 {
            out.notes.push(format!("x = {x0} has no partner in the torus"));
            continue;
        }
        let m = xr.multiplicity;
        let each = if m % k == 0 {
            m / k
        } else {
            out.flagged = true;
            out.notes.push(format!("x = {x0} of multiplicity {m} splits over {k} roots"));
            1
        };
        for (x1, y1, resid) in found {
            out.roots.push(TorusRoot { coords: vec![x1, y1], multiplicity: each, residual: resid });
        }
    }
    Ok(out)
}

/// All rational roots, found numerically and confirmed exactly.
pub fn rational_roots(f: &UniPoly<Rational>) -> Result<Vec<Rational>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (k, f) = f.strip_x_power();
    let mut out: Vec<Rational> = Vec::new();
    if k > 0 {
        out.push(Rational::zero());
    }
    let sq = f.squarefree_part();
    match sq.degree() {
        None | Some(0) => {}
        Some(1) => out.push(-sq.coeff(0) / sq.coeff(1)),
        Some(_) => {
            let prim = sq.primitive_integer();
            let lc = prim.leading_coeff().0.abs();
            let precision = 2 * lc.bits() + 16;
            let dsq = sq.derivative();
            for z in aberth(&to_complex_coeffs(&sq))? {
                if z.im.abs() > 1e-3 * (1.0 + z.re.abs()) {
                    continue;
                }
                let Some(x) = refine_real_root(&sq, &dsq, z.re, precision) else {
                    continue;
                };
                for c in convergents(&x) {
                    if c.denom() > &lc {
                        break;
                    }
                    if lc.is_multiple_of(c.denom()) && sq.eval(&c).is_zero() {
                        out.push(c);
                        break;
                    }
                }
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Newton iteration in exact rationals, rounded to `precision` binary digits
/// after the point, until the step drops below `2^-precision`.
fn refine_real_root(p: &UniPoly<Rational>, dp: &UniPoly<Rational>, x0: f64, precision: u64) -> Option<Rational> {
    let mut x = Rational::from_float(x0)?;
    let unit = BigInt::one() << (precision as usize + 8);
    let tiny = Rational::new(BigInt::one(), BigInt::one() << precision as usize);
    for _ in 0..200 {
        let d = dp.eval(&x);
        if d.is_zero() {
            return p.eval(&x).is_zero().then_some(x);
        }
        let step = p.eval(&x) / d;
        let next = x.clone() - step.clone();
        x = Rational::new((next * Rational::from_integer(unit.clone())).round().to_integer(), unit.clone());
        if step.abs() < tiny {
            return Some(x);
        }
    }
    None
}

/// Continued-fraction convergents of a rational number.
pub fn convergents(x: &Rational) -> Vec<Rational> {
    let mut out = Vec::new();
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut rem = x.clone();
    for _ in 0..4096 {
        let a = rem.floor().to_integer();
        let h = &a * &h1 + &h0;
        let k = &a * &k1 + &k0;
        out.push(Rational::new(h.clone(), k.clone()));
        h0 = std::mem::replace(&mut h1, h);
        k0 = std::mem::replace(&mut k1, k);
        let frac = rem - Rational::from_integer(a);
        if frac.is_zero() {
            break;
        }
        rem = frac.inv();
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CountStatistics {
    pub trials: usize,
    pub seed: u64,
    pub expected: u64,
    pub successes: usize,
    pub flagged: usize,
    /// Non-flagged trials whose count differs from the mixed volume.
    pub mismatches: Vec<(usize, usize)>,
    pub histogram: BTreeMap<usize, usize>,
    pub notes: Vec<String>,
}

impl CountStatistics {
    pub fn flagged_rate(&self) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            self.flagged as f64 / self.trials as f64
        }
    }
}

pub const COEFF_RANGE: i64 = 10_000;

/// Random nonzero integer coefficients in `[-COEFF_RANGE, COEFF_RANGE]`.
pub fn random_polynomial(support: &LatticeConfiguration, rng: &mut impl Rng) -> LaurentPolynomial {
    let terms = support.points().iter().map(|e| {
        let mut c = 0;
        while c == 0 {
            c = rng.gen_range(-COEFF_RANGE..=COEFF_RANGE);
        }
        (e.clone(), int(c))
    });
    LaurentPoly::from_terms(support.dim_ambient(), terms).expect("support dimension")
}

pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (trial as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Solves random systems on the given planar supports and compares the
/// number of torus roots (with multiplicity) with the mixed volume.
pub fn count_torus_roots(
    supports: &[&LatticeConfiguration],
    trials: usize,
    seed: u64,
    opts: &SolverOptions,
) -> Result<CountStatistics> {
    if supports.len() != 2 || supports.iter().any(|s| s.dim_ambient() != 2) {
        return Err(Error::Unsupported("root counting is implemented for two supports in the plane".into()));
    }
    let expected = mixed_volume(&[(supports[0], 1), (supports[1], 1)])?;
    let results: Vec<(usize, std::result::Result<TorusRootList, String>)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            let f = random_polynomial(supports[0], &mut rng);
            let g = random_polynomial(supports[1], &mut rng);
            (t, solve_2d(&f, &g, opts).map_err(|e| e.to_string()))
        })
        .collect();
    let mut stats = CountStatistics {
        trials,
        seed,
        expected,
        successes: 0,
        flagged: 0,
        mismatches: vec![],
        histogram: BTreeMap::new(),
        notes: vec![],
    };
    for (t, r) in results {
        match r {
            Ok(list) if !list.flagged => {
                let n = list.total_multiplicity();
                *stats.histogram.entry(n).or_default() += 1;
                if n as u64 == expected {
                    stats.successes += 1;
                } else {
                    stats.mismatches.push((t, n));
                }
            }
            Ok(list) => {
                stats.flagged += 1;
                stats.notes.push(format!("trial {t}: {}", list.notes.join("; ")));
            }
            Err(e) => {
                stats.flagged += 1;
                stats.notes.push(format!("trial {t}: {e}"));
            }
        }
    }
    Ok(stats)
}
