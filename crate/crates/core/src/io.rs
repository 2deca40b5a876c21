//! JSON formats. Rationals travel as `"p/q"` strings.

use serde::{Deserialize, Serialize};

use crate::arith::{format_rational, parse_rational, Rational};
use crate::chasles::{ChaslesStructure, Diagnostics, ExtraPointResult};
use crate::error::{Error, Result};
use crate::lattice::{LatticeConfiguration, Point};
use crate::polynomial::{LaurentPolynomial, RationalPoint};

fn parse_json<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConfigurationJson {
    pub d: usize,
    pub points: Vec<Point>,
}

impl ConfigurationJson {
    pub fn into_configuration(self) -> Result<LatticeConfiguration> {
        if self.points.is_empty() {
            return Err(Error::Parse("configuration has an empty points list".into()));
        }
        LatticeConfiguration::new(self.d, self.points)
    }
}

impl From<&LatticeConfiguration> for ConfigurationJson {
    fn from(a: &LatticeConfiguration) -> Self {
        Self { d: a.dim_ambient(), points: a.points().to_vec() }
    }
}

pub fn parse_configuration(text: &str) -> Result<LatticeConfiguration> {
    parse_json::<ConfigurationJson>(text)?.into_configuration()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<i64>,
    pub coeff: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub d: usize,
    pub terms: Vec<TermJson>,
}

impl PolynomialJson {
    pub fn into_polynomial(self) -> Result<LaurentPolynomial> {
        let terms =
            self.terms.into_iter().map(|t| Ok((t.exp, parse_rational(&t.coeff)?))).collect::<Result<Vec<_>>>()?;
        LaurentPolynomial::from_terms(self.d, terms)
    }
}

impl From<&LaurentPolynomial> for PolynomialJson {
    fn from(f: &LaurentPolynomial) -> Self {
        let terms = f.terms().iter().map(|(e, c)| TermJson { exp: e.clone(), coeff: format_rational(c) }).collect();
        Self { d: f.dim(), terms }
    }
}

pub fn parse_polynomial(text: &str) -> Result<LaurentPolynomial> {
    parse_json::<PolynomialJson>(text)?.into_polynomial()
}

/// Either a list of configurations with a partition, or one configuration
/// (partition `(d)`).
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StructureJson {
    Structure { configurations: Vec<ConfigurationJson>, partition: Vec<usize> },
    Single(ConfigurationJson),
}

impl StructureJson {
    pub fn into_structure(self) -> Result<ChaslesStructure> {
        match self {
            StructureJson::Single(c) => ChaslesStructure::from_configuration(c.into_configuration()?),
            StructureJson::Structure { configurations, partition } => {
                let configs = configurations
                    .into_iter()
                    .map(ConfigurationJson::into_configuration)
                    .collect::<Result<Vec<_>>>()?;
                ChaslesStructure::new(configs, partition)
            }
        }
    }
}

impl From<&ChaslesStructure> for StructureJson {
    fn from(s: &ChaslesStructure) -> Self {
        StructureJson::Structure {
            configurations: s.configurations().iter().map(ConfigurationJson::from).collect(),
            partition: s.partition().to_vec(),
        }
    }
}

pub fn parse_structure(text: &str) -> Result<ChaslesStructure> {
    parse_json::<StructureJson>(text)?.into_structure()
}

pub fn parse_point(coords: &[String]) -> Result<RationalPoint> {
    RationalPoint::new(coords.iter().map(|s| parse_rational(s)).collect::<Result<Vec<Rational>>>()?)
}

pub fn format_point(p: &RationalPoint) -> Vec<String> {
    p.coords().iter().map(format_rational).collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum PointsJson {
    Bare(Vec<Vec<String>>),
    Wrapped { points: Vec<Vec<String>> },
}

/// Points as `[["p/q", ...], ...]` or `{"points": [...]}`.
pub fn parse_points(text: &str) -> Result<Vec<RationalPoint>> {
    let raw = match parse_json::<PointsJson>(text)? {
        PointsJson::Bare(p) | PointsJson::Wrapped { points: p } => p,
    };
    raw.iter().map(|c| parse_point(c)).collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExtraPointRequest {
    pub structure: StructureJson,
    pub points: Vec<Vec<String>>,
}

impl ExtraPointRequest {
    pub fn parse(text: &str) -> Result<(ChaslesStructure, Vec<RationalPoint>)> {
        let req: ExtraPointRequest = parse_json(text)?;
        let s = req.structure.into_structure()?;
        let pts = req.points.iter().map(|c| parse_point(c)).collect::<Result<Vec<_>>>()?;
        Ok((s, pts))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtraPointResponse {
    pub point: Vec<String>,
    pub certificates: Vec<String>,
    pub sign_pattern: Vec<i8>,
    pub basis: Vec<PolynomialJson>,
    pub diagnostics: Diagnostics,
}

impl From<&ExtraPointResult> for ExtraPointResponse {
    fn from(r: &ExtraPointResult) -> Self {
        Self {
            point: format_point(&r.point),
            certificates: r.certificates.iter().map(format_rational).collect(),
            sign_pattern: r.sign_pattern.clone(),
            basis: r.basis.iter().map(PolynomialJson::from).collect(),
            diagnostics: r.diagnostics.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::chasles::{extra_point, triangle_configuration};

    #[test]
    fn configuration_round_trip() {
        let a = triangle_configuration();
        let text = serde_json::to_string(&ConfigurationJson::from(&a)).unwrap();
        assert_eq!(parse_configuration(&text).unwrap(), a);
        assert_eq!(serde_json::to_string(&a).unwrap(), text);
    }

    #[test]
    fn parse_errors_carry_position() {
        let e = parse_configuration("{\"d\": 2,\n \"points\": [[0,0],]}").unwrap_err();
        assert!(matches!(&e, Error::Parse(m) if m.contains("line 2")));
        assert!(matches!(parse_configuration("{\"d\": 2, \"points\": []}"), Err(Error::Parse(_))));
    }

    #[test]
    fn polynomial_round_trip() {
        let text =
            r#"{"d":2,"terms":[{"exp":[0,0],"coeff":"-30"},{"exp":[2,1],"coeff":"1"},{"exp":[1,2],"coeff":"7/2"}]}"#;
        let f = parse_polynomial(text).unwrap();
        assert_eq!(f.coeff(&[1, 2]), rat(7, 2));
        let back = serde_json::to_string(&PolynomialJson::from(&f)).unwrap();
        assert_eq!(parse_polynomial(&back).unwrap(), f);
    }

    #[test]
    fn request_and_response() {
        let req = r#"{"structure": {"d": 2, "points": [[0,0],[1,1],[2,1],[1,2]]}, "points": [["1","2"],["3","1"]]}"#;
        let (s, pts) = ExtraPointRequest::parse(req).unwrap();
        assert_eq!(s.N(), 2);
        assert_eq!(pts[0].coords(), &[int(1), int(2)]);
        let r = extra_point(&s, &pts).unwrap();
        let resp = ExtraPointResponse::from(&r);
        assert_eq!(resp.point, vec!["8/1".to_string(), "-3/2".to_string()]);
        assert!(resp.certificates.iter().all(|c| c == "0/1"));
        let bare = parse_points(r#"[["1/2","3"]]"#).unwrap();
        let wrapped = parse_points(r#"{"points": [["1/2","3"]]}"#).unwrap();
        assert_eq!(bare, wrapped);
    }
}
