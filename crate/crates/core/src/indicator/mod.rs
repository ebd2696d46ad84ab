//! Integer combinations of indicator functions of cones, with pointwise and
//! conical-hull products, polarity, the Euler map, `V_k`, and exact equality
//! through canonical forms.

mod canonical;
mod checks;
mod recover;

pub use canonical::CanonicalForm;
pub use checks::*;
pub use recover::{recover_cone, self_dual_check, vk_terms};

use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;

use crate::arrangement::Arrangement;
use crate::cone::Cone;
use crate::fan::{ConeValuation, Fan};
use crate::intrinsic::{Estimate, GaussianSampler};
use crate::linalg::{Rational, Subspace};
use crate::projection::LinearForm;

/// `x ↦ Σ c_i [x ∈ C_i]`. Terms with equal cones are merged and zero
/// coefficients dropped, but different term lists may still describe the
/// same function; use [`IndicatorElement::equal`] to compare.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IndicatorElement {
    ambient_dim: usize,
    terms: BTreeMap<Cone, i64>,
}

impl IndicatorElement {
    pub fn zero(ambient_dim: usize) -> Self {
        Self { ambient_dim, terms: BTreeMap::new() }
    }

    /// `[C]`.
    pub fn cone(c: Cone) -> Self {
        Self::term(c, 1)
    }

    pub fn term(c: Cone, coefficient: i64) -> Self {
        let mut f = Self::zero(c.ambient_dim());
        f.add_term(c, coefficient);
        f
    }

    /// `[R^d]`, the unit of the pointwise product.
    pub fn full(ambient_dim: usize) -> Self {
        Self::cone(Cone::full_space(ambient_dim))
    }

    /// `[{0}]`, the unit of the conical-hull product.
    pub fn origin(ambient_dim: usize) -> Self {
        Self::cone(Cone::origin(ambient_dim))
    }

    pub fn subspace(space: &Subspace) -> Self {
        Self::cone(Cone::subspace(space))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Cone, i64)> {
        self.terms.iter().map(|(c, &k)| (c, k))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// No terms at all (a stronger condition than being the zero function).
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, c: Cone, coefficient: i64) {
        assert_eq!(c.ambient_dim(), self.ambient_dim, "cone dimension mismatch");
        if coefficient == 0 {
            return;
        }
        match self.terms.entry(c) {
            Entry::Vacant(v) => {
                v.insert(coefficient);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coefficient;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut f = self.clone();
        for (c, k) in other.terms() {
            f.add_term(c.clone(), k);
        }
        f
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut f = Self::zero(self.ambient_dim);
        if k != 0 {
            f.terms = self.terms.iter().map(|(c, v)| (c.clone(), v * k)).collect();
        }
        f
    }

    pub fn evaluate(&self, x: &[Rational]) -> i64 {
        self.terms.iter().filter(|(c, _)| c.contains(x)).map(|(_, k)| k).sum()
    }

    pub fn evaluate_int(&self, x: &[BigInt]) -> i64 {
        self.terms.iter().filter(|(c, _)| c.contains_int(x)).map(|(_, k)| k).sum()
    }

    fn bilinear(&self, other: &Self, product: impl Fn(&Cone, &Cone) -> Cone) -> Self {
        let mut f = Self::zero(self.ambient_dim);
        for (c, a) in self.terms() {
            for (d, b) in other.terms() {
                f.add_term(product(c, d), a * b);
            }
        }
        f
    }

    /// `[C] · [D] = [C ∩ D]`, extended bilinearly.
    pub fn pointwise_product(&self, other: &Self) -> Self {
        self.bilinear(other, |c, d| c.intersect(d).expect("same ambient dimension"))
    }

    /// `[C] ∗ [D] = [C + D]`, extended bilinearly.
    pub fn star_product(&self, other: &Self) -> Self {
        self.bilinear(other, |c, d| c.minkowski_sum(d).expect("same ambient dimension"))
    }

    /// `[C] ↦ [C^∨]`.
    pub fn polar_map(&self) -> Self {
        self.map_cones(Cone::polar)
    }

    /// `[C] ↦ [−C]`.
    pub fn negated_map(&self) -> Self {
        self.map_cones(Cone::negated)
    }

    fn map_cones(&self, f: impl Fn(&Cone) -> Cone) -> Self {
        let mut out = Self::zero(self.ambient_dim);
        for (c, k) in self.terms() {
            out.add_term(f(c), k);
        }
        out
    }

    /// `ℰ([C]) = (−1)^{dim C} [relint C] = Σ_{F face of C} (−1)^{dim F} [F]`.
    pub fn euler_map(&self) -> Self {
        let mut out = Self::zero(self.ambient_dim);
        for (c, k) in self.terms() {
            for f in c.face_lattice().faces() {
                out.add_term(f.cone().clone(), sign(f.dim()) * k);
            }
        }
        out
    }

    pub fn canonicalize(&self) -> CanonicalForm {
        CanonicalForm::new(self)
    }

    /// Equality as functions on `R^d`.
    pub fn equal(&self, other: &Self) -> bool {
        self.sub(other).canonicalize().is_zero()
    }

    /// Equality almost everywhere, i.e. as simple classes.
    pub fn simple_equal(&self, other: &Self) -> bool {
        self.sub(other).canonicalize().is_simple_zero()
    }

    /// The linear extension of the normalized spherical volume, estimated
    /// from Gaussian samples: the mean of `f(x)` with its standard error.
    pub fn spherical_volume(&self, samples: u64, seed: u64) -> Estimate {
        assert!(samples >= 1, "at least one sample is required");
        let tests: Vec<(MembershipTest, i64)> =
            self.terms().map(|(c, k)| (MembershipTest::new(c), k)).collect();
        let mut gauss = GaussianSampler::new(self.ambient_dim, seed, 0);
        let (mut sum, mut sum_sq) = (0f64, 0f64);
        for _ in 0..samples {
            let x = gauss.next_point();
            let v: i64 = tests.iter().filter(|(t, _)| t.contains(&x)).map(|(_, k)| k).sum();
            sum += v as f64;
            sum_sq += (v * v) as f64;
        }
        let n = samples as f64;
        let mean = sum / n;
        let var = (sum_sq / n - mean * mean).max(0.0);
        Estimate { mean, variance: var / n }
    }
}

pub(crate) fn sign(dim: usize) -> i64 {
    if dim.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Membership in a cone for floating-point points, exact via sign filters.
struct MembershipTest {
    equations: Vec<LinearForm>,
    inequalities: Vec<LinearForm>,
}

impl MembershipTest {
    fn new(c: &Cone) -> Self {
        Self {
            equations: c.equations().iter().map(|e| LinearForm::new(e)).collect(),
            inequalities: c.inequalities().iter().map(|a| LinearForm::new(a)).collect(),
        }
    }

    fn contains(&self, x: &[f64]) -> bool {
        self.equations.iter().all(|e| e.sign(x) == Ordering::Equal)
            && self.inequalities.iter().all(|a| a.sign(x) != Ordering::Greater)
    }
}

impl fmt::Display for IndicatorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, k)) in self.terms().enumerate() {
            let a = k.unsigned_abs();
            match (i, k < 0) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if a != 1 {
                write!(f, "{a}")?;
            }
            write!(f, "[{c}]")?;
        }
        Ok(())
    }
}

/// `V_k(C) = Σ_{F ∈ 𝓕_k(C)} [F + N_F C]`.
pub fn vk(cone: &Cone, k: usize) -> IndicatorElement {
    let lattice = cone.face_lattice();
    let mut out = IndicatorElement::zero(cone.ambient_dim());
    for (i, f) in lattice.faces().iter().enumerate() {
        if f.dim() == k {
            let pi = f.cone().minkowski_sum(&lattice.normal_cone(i)).expect("same ambient dimension");
            out.add_term(pi, 1);
        }
    }
    out
}

/// `V_k(𝒩(𝒜)) = Σ_{C ∈ 𝒩(𝒜)} V_k(C)`.
pub fn vk_arrangement(arrangement: &Arrangement, k: usize) -> IndicatorElement {
    vk_fan(&arrangement.regions(), k)
}

pub fn vk_fan(fan: &Fan, k: usize) -> IndicatorElement {
    fan.cones()
        .iter()
        .fold(IndicatorElement::zero(fan.ambient_dim()), |acc, c| acc.add(&vk(c, k)))
}

/// `ε(C) = Σ_{F face of C} (−1)^{dim F}`.
pub fn euler_characteristic(cone: &Cone) -> i64 {
    cone.face_lattice().faces().iter().map(|f| sign(f.dim())).sum()
}

/// `ε` by the lineality recursion: `ε(C) = (−1)^{dim L} ε(π_{L^⊥}(C))` for
/// `L = lineal(C)`, `ε({0}) = 1`, and `ε(C) = 0` for a pointed cone other
/// than `{0}`.
pub fn euler_characteristic_recursive(cone: &Cone) -> i64 {
    let l = cone.lineality_dim();
    if l == 0 {
        return if cone.rays().is_empty() { 1 } else { 0 };
    }
    // canonical rays already lie in L^⊥
    let projected =
        Cone::from_generators(cone.ambient_dim(), cone.rays(), &[]).expect("same ambient dimension");
    sign(l) * euler_characteristic_recursive(&projected)
}

/// The simple class `ρ(f)`: `f` up to functions vanishing almost
/// everywhere.
#[derive(Clone, Debug)]
pub struct SimpleClass(pub IndicatorElement);

impl SimpleClass {
    pub fn equals(&self, other: &SimpleClass) -> bool {
        self.0.simple_equal(&other.0)
    }

    pub fn spherical_volume(&self, samples: u64, seed: u64) -> Estimate {
        self.0.spherical_volume(samples, seed)
    }
}

/// `ρ(Σ_{C ∈ 𝒩} V_k(C))` for `k = 0..=d`: the coefficients of the indicator
/// characteristic polynomial.
pub fn indicator_char_poly(fan: &Fan) -> Vec<SimpleClass> {
    (0..=fan.ambient_dim()).map(|k| SimpleClass(vk_fan(fan, k))).collect()
}

/// `C ↦ V_k(C)` as a valuation, with values compared exactly either as
/// functions or as simple classes.
#[derive(Clone, Copy, Debug)]
pub struct VkValuation {
    pub k: usize,
    pub simple: bool,
}

impl ConeValuation for VkValuation {
    type Value = IndicatorElement;

    fn zero(&self, ambient_dim: usize) -> IndicatorElement {
        IndicatorElement::zero(ambient_dim)
    }

    fn value(&self, cone: &Cone) -> IndicatorElement {
        vk(cone, self.k)
    }

    fn add(&self, a: &IndicatorElement, b: &IndicatorElement) -> IndicatorElement {
        a.add(b)
    }

    fn scale(&self, a: &IndicatorElement, k: i64) -> IndicatorElement {
        a.scale(k)
    }

    fn agrees(&self, a: &IndicatorElement, b: &IndicatorElement) -> bool {
        if self.simple {
            a.simple_equal(b)
        } else {
            a.equal(b)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int_vector as iv, rat_vector};

    fn line(v: &[i64]) -> Cone {
        Cone::subspace(&Subspace::span(v.len(), &[iv(v)]))
    }

    #[test]
    fn evaluation() {
        let q = IndicatorElement::cone(Cone::orthant(2));
        assert_eq!(q.evaluate(&rat_vector(&[1, 1])), 1);
        let both = q.add(&q.negated_map());
        assert_eq!(both.evaluate(&rat_vector(&[0, 0])), 2);
        let f = IndicatorElement::full(2).add(&IndicatorElement::cone(line(&[1, 0])));
        assert_eq!(f.evaluate(&rat_vector(&[3, 0])), 2);
        assert_eq!(f.evaluate(&rat_vector(&[3, 1])), 1);
    }

    #[test]
    fn products_and_units() {
        let c = IndicatorElement::cone(Cone::orthant(2));
        assert_eq!(c.pointwise_product(&IndicatorElement::full(2)), c);
        assert_eq!(c.star_product(&IndicatorElement::origin(2)), c);
        assert_eq!(c.pointwise_product(&c.negated_map()), IndicatorElement::origin(2));
        let e1 = IndicatorElement::cone(Cone::from_rays(&[&[1, 0]]));
        let e2 = IndicatorElement::cone(Cone::from_rays(&[&[0, 1]]));
        assert_eq!(e1.star_product(&e2), c);
        assert_eq!(IndicatorElement::full(3).polar_map(), IndicatorElement::origin(3));
    }

    #[test]
    fn cancellation() {
        let c = IndicatorElement::cone(Cone::orthant(2));
        assert!(c.sub(&c).is_empty());
        assert_eq!(c.scale(0).len(), 0);
    }

    #[test]
    fn euler_map_of_ray() {
        let ray = Cone::from_rays(&[&[1, 0]]);
        let e = IndicatorElement::cone(ray).euler_map();
        assert_eq!(e.evaluate(&rat_vector(&[2, 0])), -1);
        assert_eq!(e.evaluate(&rat_vector(&[0, 0])), 0);
        assert_eq!(e.evaluate(&rat_vector(&[-1, 0])), 0);
        assert_eq!(IndicatorElement::origin(2).euler_map(), IndicatorElement::origin(2));
    }

    #[test]
    fn vk_examples() {
        let q = Cone::orthant(2);
        assert_eq!(vk(&q, 0), IndicatorElement::cone(q.negated()));
        assert_eq!(vk(&q, 2), IndicatorElement::cone(q.clone()));
        let second = Cone::from_rays(&[&[-1, 0], &[0, 1]]);
        let fourth = Cone::from_rays(&[&[1, 0], &[0, -1]]);
        let expect = IndicatorElement::cone(second).add(&IndicatorElement::cone(fourth));
        assert_eq!(vk(&q, 1), expect);
        assert!(vk(&q, 3).is_empty());
    }

    #[test]
    fn euler_characteristics() {
        assert_eq!(euler_characteristic(&Cone::origin(2)), 1);
        assert_eq!(euler_characteristic(&Cone::from_rays(&[&[1, 1]])), 0);
        for l in 0..=3 {
            let s = Cone::full_space(l);
            assert_eq!(euler_characteristic(&s), sign(l));
            assert_eq!(euler_characteristic_recursive(&s), sign(l));
        }
        let h = Cone::halfspace(&iv(&[1, 2, 3]));
        assert_eq!(euler_characteristic(&h), 0);
        assert_eq!(euler_characteristic_recursive(&h), 0);
    }

    #[test]
    fn spherical_volumes() {
        let full = IndicatorElement::full(3).spherical_volume(100, 1);
        assert_eq!(full.mean, 1.0);
        let h = IndicatorElement::cone(Cone::halfspace(&iv(&[1, 1]))).spherical_volume(20000, 3);
        assert!((h.mean - 0.5).abs() < 4.0 * h.variance.sqrt());
    }
}
