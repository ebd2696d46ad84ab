//! JSON file formats for cones, arrangements and fans.
//!
//! Numbers may be JSON integers, JSON floats (converted exactly), or strings
//! such as `"-3"`, `"2/5"` or `"0.125"`. Output integers are JSON numbers
//! when they fit in an `i64` and decimal strings otherwise; rationals are
//! always strings.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use fanval_core::linalg::primitive_from_rational;
use fanval_core::projection::exact_rational;
use fanval_core::{Arrangement, Cone, Fan, IndicatorElement, IntVector, RatVector, Rational, Subspace};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Deserialize;
use serde_json::{json, Value};

#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid number {0:?}")]
    Number(String),
    #[error("{0}")]
    Shape(String),
    #[error(transparent)]
    Geometry(#[from] fanval_core::Error),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Float(f64),
    Text(String),
}

impl Scalar {
    pub fn to_rational(&self) -> Result<Rational, InputError> {
        match self {
            Scalar::Int(v) => Ok(Rational::from_integer(BigInt::from(*v))),
            Scalar::Float(v) if v.is_finite() => Ok(exact_rational(*v)),
            Scalar::Float(v) => Err(InputError::Number(v.to_string())),
            Scalar::Text(s) => parse_rational(s),
        }
    }
}

/// Parses `"n"`, `"p/q"` or a decimal such as `"-1.25"`.
pub fn parse_rational(s: &str) -> Result<Rational, InputError> {
    let s = s.trim();
    let bad = || InputError::Number(s.to_string());
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let digits = format!("{int}{frac}");
        let n = BigInt::from_str(&digits).map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        return Ok(Rational::new(n, scale));
    }
    let r = Rational::from_str(s).map_err(|_| bad())?;
    Ok(r)
}

/// Parses a comma-separated point such as `1,-2/3,0.5`.
pub fn parse_point(s: &str) -> Result<RatVector, InputError> {
    s.split(',').map(parse_rational).collect()
}

fn rational_vectors(rows: &[Vec<Scalar>]) -> Result<Vec<RatVector>, InputError> {
    rows.iter().map(|r| r.iter().map(Scalar::to_rational).collect()).collect()
}

fn integer_vectors(rows: &[Vec<Scalar>]) -> Result<Vec<IntVector>, InputError> {
    Ok(rational_vectors(rows)?.iter().map(|v| primitive_from_rational(v)).collect())
}

fn resolve_dim(given: Option<usize>, rows: &[&[Vec<Scalar>]]) -> Result<usize, InputError> {
    let inferred = rows.iter().flat_map(|r| r.iter()).map(Vec::len).next();
    match (given, inferred) {
        (Some(d), _) => Ok(d),
        (None, Some(d)) => Ok(d),
        (None, None) => Err(InputError::Shape("ambient_dim is required when no vectors are given".into())),
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeFile {
    pub ambient_dim: Option<usize>,
    pub dim: Option<usize>,
    pub rays: Option<Vec<Vec<Scalar>>>,
    pub lineality: Option<Vec<Vec<Scalar>>>,
    pub equations: Option<Vec<Vec<Scalar>>>,
    pub inequalities: Option<Vec<Vec<Scalar>>>,
}

impl ConeFile {
    /// Builds the cone from whichever representations are present. When
    /// both are given they must describe the same cone, so the output of
    /// [`cone`] reads back.
    pub fn build(&self) -> Result<Cone, InputError> {
        let empty = Vec::new();
        let generators = self.rays.is_some() || self.lineality.is_some();
        let halfspaces = self.equations.is_some() || self.inequalities.is_some();
        if !generators && !halfspaces {
            return Err(InputError::Shape("a cone needs rays/lineality or equations/inequalities".into()));
        }
        let rays = self.rays.as_ref().unwrap_or(&empty);
        let lin = self.lineality.as_ref().unwrap_or(&empty);
        let eqs = self.equations.as_ref().unwrap_or(&empty);
        let ineqs = self.inequalities.as_ref().unwrap_or(&empty);
        let d = resolve_dim(self.ambient_dim, &[rays, lin, eqs, ineqs])?;
        let from_generators = if generators {
            Some(Cone::from_generators(d, &integer_vectors(rays)?, &integer_vectors(lin)?)?)
        } else {
            None
        };
        let from_halfspaces = if halfspaces {
            Some(Cone::from_halfspaces(d, &integer_vectors(eqs)?, &integer_vectors(ineqs)?)?)
        } else {
            None
        };
        let cone = match (from_generators, from_halfspaces) {
            (Some(a), Some(b)) if a != b => {
                return Err(InputError::Shape("generators and halfspaces describe different cones".into()))
            }
            (Some(a), _) | (None, Some(a)) => a,
            (None, None) => unreachable!(),
        };
        if let Some(k) = self.dim {
            if k != cone.dim() {
                return Err(InputError::Shape(format!("stated dim {k} but the cone has dim {}", cone.dim())));
            }
        }
        Ok(cone)
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrangementFile {
    pub ambient_dim: Option<usize>,
    /// Basis of the subspace `U`; all of `R^d` when absent.
    pub subspace_basis: Option<Vec<Vec<Scalar>>>,
    pub normals: Vec<Vec<Scalar>>,
}

impl ArrangementFile {
    pub fn build(&self) -> Result<Arrangement, InputError> {
        let empty = Vec::new();
        let basis = self.subspace_basis.as_ref();
        let d = resolve_dim(self.ambient_dim, &[&self.normals, basis.unwrap_or(&empty)])?;
        let u = match basis {
            Some(b) => Subspace::span(d, &integer_vectors(b)?),
            None => Subspace::full(d),
        };
        Ok(Arrangement::new(u, &integer_vectors(&self.normals)?)?)
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanFile {
    pub ambient_dim: Option<usize>,
    pub cones: Vec<ConeFile>,
}

impl FanFile {
    pub fn build(&self) -> Result<Fan, InputError> {
        let cones = self.cones.iter().map(ConeFile::build).collect::<Result<Vec<_>, _>>()?;
        let d = match (self.ambient_dim, cones.first()) {
            (Some(d), _) => d,
            (None, Some(c)) => c.ambient_dim(),
            (None, None) => return Err(InputError::Shape("ambient_dim is required for an empty fan".into())),
        };
        Ok(Fan::new(d, cones)?)
    }
}

/// A parsed input file of any of the three kinds.
#[derive(Clone, Debug)]
pub enum Instance {
    Cone(Cone),
    Arrangement(Arrangement),
    Fan(Fan),
}

impl Instance {
    pub fn kind(&self) -> &'static str {
        match self {
            Instance::Cone(_) => "cone",
            Instance::Arrangement(_) => "arrangement",
            Instance::Fan(_) => "fan",
        }
    }
}

fn read(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|source| InputError::Io { path: path.to_path_buf(), source })
}

pub fn parse_cone(text: &str) -> Result<Cone, InputError> {
    serde_json::from_str::<ConeFile>(text)?.build()
}

pub fn parse_arrangement(text: &str) -> Result<Arrangement, InputError> {
    serde_json::from_str::<ArrangementFile>(text)?.build()
}

pub fn parse_fan(text: &str) -> Result<Fan, InputError> {
    serde_json::from_str::<FanFile>(text)?.build()
}

/// Detects the kind from the keys: `normals` for an arrangement, `cones`
/// for a fan, anything else is read as a cone.
pub fn parse_instance(text: &str) -> Result<Instance, InputError> {
    let value: Value = serde_json::from_str(text)?;
    let has = |k: &str| value.get(k).is_some();
    if has("normals") {
        Ok(Instance::Arrangement(serde_json::from_value::<ArrangementFile>(value)?.build()?))
    } else if has("cones") {
        Ok(Instance::Fan(serde_json::from_value::<FanFile>(value)?.build()?))
    } else {
        Ok(Instance::Cone(serde_json::from_value::<ConeFile>(value)?.build()?))
    }
}

pub fn load_cone(path: &Path) -> Result<Cone, InputError> {
    parse_cone(&read(path)?)
}

pub fn load_arrangement(path: &Path) -> Result<Arrangement, InputError> {
    parse_arrangement(&read(path)?)
}

pub fn load_fan(path: &Path) -> Result<Fan, InputError> {
    parse_fan(&read(path)?)
}

pub fn load_instance(path: &Path) -> Result<Instance, InputError> {
    parse_instance(&read(path)?)
}

pub fn integer(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(i) => json!(i),
        None => json!(v.to_string()),
    }
}

pub fn integer_vector(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(integer).collect())
}

pub fn integer_vectors_json(vs: &[IntVector]) -> Value {
    Value::Array(vs.iter().map(|v| integer_vector(v)).collect())
}

pub fn rational(r: &Rational) -> Value {
    if r.denom() == &BigInt::from(1) || r.numer().is_zero() {
        json!(r.numer().to_string())
    } else {
        json!(format!("{}/{}", r.numer(), r.denom()))
    }
}

pub fn rational_vector(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational).collect())
}

pub fn cone(c: &Cone) -> Value {
    json!({
        "ambient_dim": c.ambient_dim(),
        "dim": c.dim(),
        "rays": integer_vectors_json(c.rays()),
        "lineality": integer_vectors_json(c.lineality()),
        "equations": integer_vectors_json(c.equations()),
        "inequalities": integer_vectors_json(c.inequalities()),
    })
}

pub fn subspace(s: &Subspace) -> Value {
    json!({ "dim": s.dim(), "basis": integer_vectors_json(s.basis()) })
}

pub fn arrangement(a: &Arrangement) -> Value {
    json!({
        "ambient_dim": a.ambient_dim(),
        "subspace_basis": integer_vectors_json(a.subspace().basis()),
        "normals": integer_vectors_json(a.normals()),
    })
}

pub fn fan(f: &Fan) -> Value {
    json!({
        "ambient_dim": f.ambient_dim(),
        "cones": f.cones().iter().map(cone).collect::<Vec<_>>(),
    })
}

pub fn indicator(f: &IndicatorElement) -> Value {
    json!({
        "ambient_dim": f.ambient_dim(),
        "terms": f.terms().map(|(c, k)| json!({ "coefficient": k, "cone": cone(c) })).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers() {
        assert_eq!(parse_rational("2/4").unwrap(), Rational::new(1.into(), 2.into()));
        assert_eq!(parse_rational("-1.25").unwrap(), Rational::new((-5).into(), 4.into()));
        assert_eq!(parse_rational(" 7 ").unwrap(), Rational::from_integer(7.into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1.").is_err());
        assert_eq!(parse_point("1,1/2").unwrap().len(), 2);
    }

    #[test]
    fn cone_formats() {
        let a = parse_cone(r#"{"rays": [[1, 0], [0, "1/2"]]}"#).unwrap();
        let b = parse_cone(r#"{"ambient_dim": 2, "inequalities": [[-1, 0], [0, -1.0]]}"#).unwrap();
        assert_eq!(a, Cone::orthant(2));
        assert_eq!(a, b);
        let origin = parse_cone(r#"{"ambient_dim": 3, "rays": []}"#).unwrap();
        assert_eq!(origin, Cone::origin(3));
        assert!(parse_cone(r#"{"rays": [[1]], "equations": [[1]]}"#).is_err());
        assert!(parse_cone(r#"{"rays": [[1]], "inequalities": [[-1]], "dim": 1}"#).is_ok());
        assert!(parse_cone(r#"{"rays": [[1]], "dim": 0}"#).is_err());
        assert!(parse_cone(r#"{"rays": [[1, 0], [1]]}"#).is_err());
        assert!(parse_cone(r#"{"rays": [[1]], "colour": 3}"#).is_err());
        let h = Cone::halfspace(&[BigInt::from(1), BigInt::from(-2), BigInt::from(0)]);
        assert_eq!(parse_cone(&cone(&h).to_string()).unwrap(), h);
    }

    #[test]
    fn instances() {
        let a = parse_instance(r#"{"normals": [[1, 0], [0, 1]]}"#).unwrap();
        assert_eq!(a.kind(), "arrangement");
        let f = parse_instance(r#"{"cones": [{"rays": [[1, 0]], "lineality": [[0, 1]]}, {"rays": [[-1, 0]], "lineality": [[0, 1]]}]}"#)
            .unwrap();
        assert_eq!(f.kind(), "fan");
        let c = parse_instance(r#"{"lineality": [[1, 1]]}"#).unwrap();
        assert_eq!(c.kind(), "cone");
        let sub = parse_arrangement(r#"{"subspace_basis": [[1, 0, 0], [0, 1, 0]], "normals": [[1, 0, 0]]}"#).unwrap();
        assert_eq!(sub.dim(), 2);
        assert!(matches!(parse_arrangement(r#"{"normals": [[1, 0], [2, 0]]}"#), Err(InputError::Geometry(_))));
    }
}
