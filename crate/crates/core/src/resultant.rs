//! Sylvester resultants over any integral domain, one-dimensional
//! directional resultants with their μ exponent, and the product of the
//! coordinates of the roots of a planar system.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{format_rational, gcd_slice, Field, Rational, Ring};
use crate::error::{Error, Result};
use crate::lattice::{facet_normals, minkowski_sum, polytope_from_points};
use crate::linalg::bareiss_determinant;
use crate::polynomial::{restrict_to_face, strip_monomial_content, LaurentPolynomial};
use crate::upoly::UniPoly;

/// The `(deg f + deg g)`-square Sylvester matrix, rows of `f` first,
/// coefficients from the leading one down.
pub fn sylvester_matrix<R: Ring>(f: &UniPoly<R>, g: &UniPoly<R>) -> Result<Vec<Vec<R>>> {
    let m = f.degree().ok_or(Error::ZeroPolynomial)?;
    let n = g.degree().ok_or(Error::ZeroPolynomial)?;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (p, deg, count) in [(f, m, n), (g, n, m)] {
        for i in 0..count {
            let mut row = vec![R::zero(); size];
            for k in 0..=deg {
                row[i + k] = p.coeff(deg - k);
            }
            rows.push(row);
        }
    }
    Ok(rows)
}

pub fn sylvester_resultant<R: Ring>(f: &UniPoly<R>, g: &UniPoly<R>) -> Result<R> {
    Ok(bareiss_determinant(sylvester_matrix(f, g)?))
}

/// The exponent applied to a one-dimensional resultant, with the lattice
/// index factor it contains.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MuExponent {
    pub mu: u64,
    pub lattice_index: u64,
    /// Index of the support forming the essential subset when it is a
    /// single point; `None` when both supports are essential together.
    pub essential_singleton: Option<usize>,
}

/// μ for a pair of supports in Z: with both supports positive-dimensional the
/// essential subset is the pair and μ is the index of the lattice spanned by
/// the differences within each support; with one support a single point that
/// point is the essential subset and μ is the length of the other support.
pub fn mu_exponent_1d(supports: &[Vec<i64>]) -> Result<MuExponent> {
    if supports.len() != 2 {
        return Err(Error::InvalidInput(format!(
            "a resultant in one variable takes 2 supports, got {}",
            supports.len()
        )));
    }
    if supports.iter().any(|s| s.is_empty()) {
        return Err(Error::InvalidInput("empty support".into()));
    }
    let length = |s: &[i64]| (s.iter().max().unwrap() - s.iter().min().unwrap()) as u64;
    let (l0, l1) = (length(&supports[0]), length(&supports[1]));
    match (l0, l1) {
        (0, 0) => Err(Error::NotEssential),
        (0, l) => Ok(MuExponent { mu: l, lattice_index: 1, essential_singleton: Some(0) }),
        (l, 0) => Ok(MuExponent { mu: l, lattice_index: 1, essential_singleton: Some(1) }),
        _ => {
            let diffs: Vec<i64> = supports.iter().flat_map(|s| s.iter().map(move |x| x - s[0])).collect();
            let g = gcd_slice(&diffs) as u64;
            Ok(MuExponent { mu: g, lattice_index: g, essential_singleton: None })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DirectionalResultantRecord {
    #[serde(rename = "v")]
    pub normal: Vec<i64>,
    #[serde(serialize_with = "ser_rational")]
    pub value: Rational,
    pub mu: u64,
    pub lattice_index: u64,
    pub essential: bool,
}

fn ser_rational<S: serde::Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(q))
}

/// Face polynomial of `f` in direction `v`, as a univariate polynomial in the
/// `v⊥` coordinate with nonzero constant term.
fn face_univariate(f: &LaurentPolynomial, v: &[i64]) -> Result<UniPoly<Rational>> {
    let face = restrict_to_face(f, v)?;
    let edge = strip_monomial_content(&face.edge_poly);
    Ok(edge.to_univariate(0)?.1)
}

fn exponents(p: &UniPoly<Rational>) -> Vec<i64> {
    p.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, _)| k as i64).collect()
}

/// `mRes` of the facial system of two planar polynomials in direction `v`.
pub fn directional_resultant(polys: &[LaurentPolynomial], v: &[i64]) -> Result<DirectionalResultantRecord> {
    if polys.len() != 2 || polys.iter().any(|p| p.dim() != 2) || v.len() != 2 {
        return Err(Error::Unsupported(
            "directional resultants are implemented for two polynomials in two variables".into(),
        ));
    }
    let f = face_univariate(&polys[0], v)?;
    let g = face_univariate(&polys[1], v)?;
    let supports = [exponents(&f), exponents(&g)];
    let mu = match mu_exponent_1d(&supports) {
        Ok(mu) => mu,
        Err(Error::NotEssential) => {
            return Ok(DirectionalResultantRecord {
                normal: v.to_vec(),
                value: Rational::one(),
                mu: 1,
                lattice_index: 1,
                essential: false,
            })
        }
        Err(e) => return Err(e),
    };
    let value = match mu.essential_singleton {
        Some(0) => f.coeff(0).power(mu.mu),
        Some(_) => g.coeff(0).power(mu.mu),
        None => {
            let step = mu.lattice_index as usize;
            let compress = |p: &UniPoly<Rational>| UniPoly::new(p.coeffs().iter().step_by(step).cloned().collect());
            sylvester_resultant(&compress(&f), &compress(&g))?.power(mu.mu)
        }
    };
    if value.is_zero() {
        return Err(Error::FaceSystemDegenerate { normal: v.to_vec() });
    }
    Ok(DirectionalResultantRecord {
        normal: v.to_vec(),
        value,
        mu: mu.mu,
        lattice_index: mu.lattice_index,
        essential: true,
    })
}

/// `±∏_v mRes_v^{v_i}` over the facet normals of the Minkowski sum of the
/// Newton polygons.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductOfCoordinates {
    pub value: Rational,
    /// Always true: resultants are defined up to sign only.
    pub sign_ambiguous: bool,
    pub records: Vec<DirectionalResultantRecord>,
}

/// Directional resultants for every facet normal of `Newt(F) + Newt(G)`.
pub fn facet_directional_resultants(polys: &[LaurentPolynomial]) -> Result<Vec<DirectionalResultantRecord>> {
    if polys.len() != 2 || polys.iter().any(|p| p.dim() != 2) {
        return Err(Error::Unsupported(
            "the product of roots is implemented for two polynomials in two variables".into(),
        ));
    }
    if polys.iter().any(|p| p.is_zero()) {
        return Err(Error::ZeroPolynomial);
    }
    let p = polytope_from_points(2, &polys[0].support());
    let q = polytope_from_points(2, &polys[1].support());
    let sum = minkowski_sum(&p, &q)?;
    let normals = facet_normals(&sum)?;
    normals.iter().map(|v| directional_resultant(polys, v)).collect()
}

pub fn product_of_coordinates(polys: &[LaurentPolynomial], i: usize) -> Result<ProductOfCoordinates> {
    if i >= 2 {
        return Err(Error::InvalidInput(format!("coordinate index {i} out of range")));
    }
    let records = facet_directional_resultants(polys)?;
    let value = product_from_records(&records, i);
    Ok(ProductOfCoordinates { value, sign_ambiguous: true, records })
}

pub fn product_from_records(records: &[DirectionalResultantRecord], i: usize) -> Rational {
    records.iter().fold(Rational::one(), |acc, r| acc * r.value.powi(r.normal[i]))
}
