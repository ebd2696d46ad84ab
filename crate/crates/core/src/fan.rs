//! Fans, their intersections with halfspaces and hyperplanes, and the
//! evaluation of cone valuations on them.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::arrangement::Arrangement;
use crate::cone::Cone;
use crate::linalg::{dot, is_zero, negate, Subspace};
use crate::Error;

/// A finite set of cones with a common linear hull, any two of which meet in
/// a common face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    ambient_dim: usize,
    cones: Vec<Cone>,
    lin_hull: Option<Subspace>,
}

/// Which part of a hyperplane `{n·x = 0}` to intersect with.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `n·x ≤ 0`
    Le,
    /// `n·x ≥ 0`
    Ge,
    /// `n·x = 0`
    Eq,
}

/// Whether `relint(C)` meets the given side of `n^⊥`, from the signs of `n`
/// on the generators.
fn relint_meets(c: &Cone, n: &[BigInt], side: Side) -> bool {
    if c.lineality().iter().any(|l| !dot(n, l).is_zero()) {
        return true;
    }
    let pos = c.rays().iter().any(|r| dot(n, r).is_positive());
    let neg = c.rays().iter().any(|r| dot(n, r).is_negative());
    match side {
        Side::Le => neg || !pos,
        Side::Ge => pos || !neg,
        Side::Eq => pos == neg,
    }
}

impl Fan {
    /// Validates both fan conditions exactly.
    pub fn new(ambient_dim: usize, cones: Vec<Cone>) -> Result<Fan, Error> {
        if let Some(c) = cones.iter().find(|c| c.ambient_dim() != ambient_dim) {
            return Err(Error::DimensionMismatch { expected: ambient_dim, found: c.ambient_dim() });
        }
        let hulls: Vec<Subspace> = cones.iter().map(Cone::linear_hull).collect();
        if let Some(j) = hulls.iter().position(|h| *h != hulls[0]) {
            return Err(Error::LinearHullMismatch { first: 0, second: j });
        }
        for i in 0..cones.len() {
            for j in i + 1..cones.len() {
                let meet = cones[i].intersect(&cones[j])?;
                if !cones[i].has_face(&meet) || !cones[j].has_face(&meet) {
                    return Err(Error::FaceCondition { first: i, second: j });
                }
            }
        }
        Ok(Fan::from_parts(ambient_dim, cones, hulls.into_iter().next()))
    }

    /// Trusted constructor for cones known to form a fan.
    pub(crate) fn from_parts(ambient_dim: usize, cones: Vec<Cone>, lin_hull: Option<Subspace>) -> Fan {
        let lin_hull = match (lin_hull, cones.first()) {
            (_, None) => None,
            (Some(h), _) => Some(h),
            (None, Some(c)) => Some(c.linear_hull()),
        };
        Fan { ambient_dim, cones, lin_hull }
    }

    pub fn empty(ambient_dim: usize) -> Fan {
        Fan { ambient_dim, cones: Vec::new(), lin_hull: None }
    }

    /// The fan `{C}` of a single cone.
    pub fn single(cone: Cone) -> Fan {
        let d = cone.ambient_dim();
        Fan::from_parts(d, alloc::vec![cone], None)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn len(&self) -> usize {
        self.cones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }

    /// The common linear hull; `None` for the empty fan.
    pub fn lin_hull(&self) -> Option<&Subspace> {
        self.lin_hull.as_ref()
    }

    /// The common lineality space; `None` for the empty fan.
    pub fn lineality(&self) -> Option<Subspace> {
        self.cones.first().map(Cone::lineality_space)
    }

    pub fn dim(&self) -> Option<usize> {
        self.lin_hull.as_ref().map(Subspace::dim)
    }

    /// `dim 𝒩 − dim lineal(𝒩)`.
    pub fn rank(&self) -> Option<usize> {
        self.cones.first().map(|c| c.dim() - c.lineality_dim())
    }

    /// `𝒩 ∩ S = {C ∩ S : C ∈ 𝒩, relint(C) ∩ S ≠ ∅}` for `S` a closed side
    /// of, or the hyperplane `{normal·x = 0}` itself.
    pub fn intersect(&self, normal: &[BigInt], side: Side) -> Result<Fan, Error> {
        if normal.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, found: normal.len() });
        }
        let Some(hull) = &self.lin_hull else {
            return Ok(Fan::empty(self.ambient_dim));
        };
        if is_zero(&hull.project_int(normal)) {
            return Err(Error::NotInLinearHull);
        }
        let mut cones: Vec<Cone> = Vec::new();
        for c in &self.cones {
            if !relint_meets(c, normal, side) {
                continue;
            }
            let piece = match side {
                Side::Le => c.cut(normal),
                Side::Ge => c.cut(&negate(normal)),
                Side::Eq => c.slice(normal),
            };
            if !cones.contains(&piece) {
                cones.push(piece);
            }
        }
        let lin_hull = match side {
            Side::Eq => hull.meet_hyperplane(normal),
            _ => hull.clone(),
        };
        Ok(Fan::from_parts(self.ambient_dim, cones, Some(lin_hull)))
    }

    /// `φ(𝒩) = Σ_{C ∈ 𝒩} φ(C)`.
    pub fn evaluate<V: ConeValuation>(&self, phi: &V) -> V::Value {
        self.cones
            .iter()
            .fold(phi.zero(self.ambient_dim), |acc, c| phi.add(&acc, &phi.value(c)))
    }
}

/// A map from cones to an abelian group, together with the group operations
/// and the equality used to compare values (exact, or up to a statistical
/// tolerance for estimated values).
pub trait ConeValuation {
    type Value: Clone;

    fn zero(&self, ambient_dim: usize) -> Self::Value;
    fn value(&self, cone: &Cone) -> Self::Value;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn scale(&self, a: &Self::Value, k: i64) -> Self::Value;
    fn agrees(&self, a: &Self::Value, b: &Self::Value) -> bool;

    fn sub(&self, a: &Self::Value, b: &Self::Value) -> Self::Value {
        self.add(a, &self.scale(b, -1))
    }
}

/// `φ(C) = 1` for every cone.
#[derive(Clone, Copy, Debug, Default)]
pub struct ConeCount;

impl ConeValuation for ConeCount {
    type Value = i64;

    fn zero(&self, _: usize) -> i64 {
        0
    }

    fn value(&self, _: &Cone) -> i64 {
        1
    }

    fn add(&self, a: &i64, b: &i64) -> i64 {
        a + b
    }

    fn scale(&self, a: &i64, k: i64) -> i64 {
        a * k
    }

    fn agrees(&self, a: &i64, b: &i64) -> bool {
        a == b
    }
}

/// Both sides of an identity between valuation values.
#[derive(Clone, Debug)]
pub struct IdentityCheck<T> {
    pub lhs: T,
    pub rhs: T,
    pub holds: bool,
}

/// `φ(𝒩) = φ(𝒩 ∩ H^≤) + φ(𝒩 ∩ H^≥) − φ(𝒩 ∩ H)`.
pub fn check_fan_valuation_identity<V: ConeValuation>(
    phi: &V,
    fan: &Fan,
    normal: &[BigInt],
) -> Result<IdentityCheck<V::Value>, Error> {
    let lhs = fan.evaluate(phi);
    let le = fan.intersect(normal, Side::Le)?.evaluate(phi);
    let ge = fan.intersect(normal, Side::Ge)?.evaluate(phi);
    let eq = fan.intersect(normal, Side::Eq)?.evaluate(phi);
    let rhs = phi.sub(&phi.add(&le, &ge), &eq);
    let holds = phi.agrees(&lhs, &rhs);
    Ok(IdentityCheck { lhs, rhs, holds })
}

/// `φ(𝒩(𝒜)) = φ(𝒩(𝒜 \ H)) + φ(𝒩(𝒜 / H))` for `H ∈ 𝒜`, `|𝒜| ≥ 2`.
pub fn check_deletion_restriction<V: ConeValuation>(
    phi: &V,
    arrangement: &Arrangement,
    normal: &[BigInt],
) -> Result<IdentityCheck<V::Value>, Error> {
    if arrangement.len() < 2 {
        return Err(Error::SingletonArrangement);
    }
    let lhs = arrangement.regions().evaluate(phi);
    let del = arrangement.deletion(normal)?.regions().evaluate(phi);
    let res = arrangement.restriction(normal)?.regions().evaluate(phi);
    let rhs = phi.add(&del, &res);
    let holds = phi.agrees(&lhs, &rhs);
    Ok(IdentityCheck { lhs, rhs, holds })
}

/// Prediction of `φ(𝒩(𝒜))` from the values on singletons alone.
#[derive(Clone, Debug)]
pub struct WhitneyDecomposition<T> {
    /// `a_0, …, a_{d−1}`
    pub coefficients: Vec<T>,
    pub predicted: T,
    pub evaluated: T,
    pub holds: bool,
}

/// Given `b_k = φ(k-singleton)` for `k = 1..=d` (`singleton_values[k-1]`),
/// forms `a_{k−1} = Σ_{i=k}^{d} (−1)^{k−i} b_i` and compares
/// `Σ_{i<d} a_i w_i(𝒜)` with `φ(𝒩(𝒜))`, where `d = dim U`.
pub fn whitney_decomposition_check<V: ConeValuation>(
    phi: &V,
    arrangement: &Arrangement,
    singleton_values: &[V::Value],
) -> Result<WhitneyDecomposition<V::Value>, Error> {
    let d = arrangement.dim();
    if arrangement.is_empty() {
        return Err(Error::EmptyArrangement);
    }
    if singleton_values.len() != d {
        return Err(Error::InvalidArgument("expected one singleton value per dimension 1..=d"));
    }
    let n = arrangement.ambient_dim();
    let coefficients: Vec<V::Value> = (1..=d)
        .map(|k| {
            (k..=d).fold(phi.zero(n), |acc, i| {
                let sign = if (i - k) % 2 == 0 { 1 } else { -1 };
                phi.add(&acc, &phi.scale(&singleton_values[i - 1], sign))
            })
        })
        .collect();
    let w = arrangement.whitney_numbers();
    let predicted = coefficients
        .iter()
        .enumerate()
        .fold(phi.zero(n), |acc, (i, a)| phi.add(&acc, &phi.scale(a, w.coefficient(i))));
    let evaluated = arrangement.regions().evaluate(phi);
    let holds = phi.agrees(&predicted, &evaluated);
    Ok(WhitneyDecomposition { coefficients, predicted, evaluated, holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int_vector as iv;
    use alloc::vec;

    fn halfplane(n: &[i64]) -> Cone {
        Cone::halfspace(&iv(n))
    }

    #[test]
    fn validation() {
        let f = Fan::new(2, vec![halfplane(&[0, 1]), halfplane(&[0, -1])]).unwrap();
        assert_eq!(f.rank(), Some(1));
        assert_eq!(f.dim(), Some(2));
        let overlap = Fan::new(2, vec![Cone::orthant(2), Cone::from_rays(&[&[1, 0], &[-1, 1]])]);
        assert_eq!(overlap, Err(Error::FaceCondition { first: 0, second: 1 }));
        let mixed = Fan::new(2, vec![Cone::orthant(2), Cone::from_rays(&[&[1, 0]])]);
        assert_eq!(mixed, Err(Error::LinearHullMismatch { first: 0, second: 1 }));
        let lines = Arrangement::from_normals(&[&[1, 0], &[0, 1], &[1, 1]]).regions();
        assert!(Fan::new(2, lines.cones().to_vec()).is_ok());
    }

    #[test]
    fn intersections() {
        let whole = Fan::single(Cone::full_space(2));
        let lower = whole.intersect(&iv(&[0, 1]), Side::Le).unwrap();
        assert_eq!(lower.cones(), &[halfplane(&[0, 1])]);

        // no quadrant has relative interior points on the x-axis
        let quadrants = Arrangement::from_normals(&[&[1, 0], &[0, 1]]).regions();
        assert!(quadrants.intersect(&iv(&[0, 1]), Side::Eq).unwrap().is_empty());
        assert_eq!(quadrants.intersect(&iv(&[0, 1]), Side::Le).unwrap().len(), 2);
        let halves = Arrangement::from_normals(&[&[1, 0]]).regions();
        let axis = halves.intersect(&iv(&[0, 1]), Side::Eq).unwrap();
        assert_eq!(axis.len(), 2);
        assert!(axis.cones().contains(&Cone::from_rays(&[&[1, 0]])));
        assert!(axis.cones().contains(&Cone::from_rays(&[&[-1, 0]])));
        assert!(Fan::new(2, axis.cones().to_vec()).is_ok());

        let halves = Fan::new(2, vec![halfplane(&[0, -1]), halfplane(&[0, 1])]).unwrap();
        let yaxis = halves.intersect(&iv(&[1, 0]), Side::Eq).unwrap();
        assert_eq!(yaxis.len(), 2);
        assert!(yaxis.cones().contains(&Cone::from_rays(&[&[0, 1]])));

        let line = Fan::single(Cone::subspace(&Subspace::span(2, &[iv(&[1, 0])])));
        assert_eq!(line.intersect(&iv(&[0, 1]), Side::Le), Err(Error::NotInLinearHull));
    }

    #[test]
    fn cone_count_identities() {
        let a = Arrangement::from_normals(&[&[1, 0], &[0, 1]]);
        let r = check_deletion_restriction(&ConeCount, &a, &iv(&[1, 0])).unwrap();
        assert_eq!((r.lhs, r.rhs), (4, 4));
        let b = Arrangement::from_normals(&[&[1, 0], &[0, 1], &[1, -1]]);
        let r = check_deletion_restriction(&ConeCount, &b, &iv(&[1, -1])).unwrap();
        assert_eq!((r.lhs, r.rhs), (6, 6));
        let single = Arrangement::from_normals(&[&[1, 0]]);
        assert!(matches!(
            check_deletion_restriction(&ConeCount, &single, &iv(&[1, 0])),
            Err(Error::SingletonArrangement)
        ));
        let w = whitney_decomposition_check(&ConeCount, &b, &[2, 2]).unwrap();
        assert!(w.holds);
        assert_eq!(w.evaluated, 6);
    }

    #[test]
    fn empty_fan_evaluates_to_zero() {
        assert_eq!(Fan::empty(3).evaluate(&ConeCount), 0);
    }
}
