//! Exact checks of indicator-function identities for cones and arrangements.

use alloc::vec::Vec;

use num_traits::Zero;

use super::canonical::CanonicalForm;
use super::{euler_characteristic, sign, vk, vk_arrangement, IndicatorElement};
use crate::arrangement::Arrangement;
use crate::cone::Cone;
use crate::linalg::{dot_mixed, line_representative, negate, IntVector, Rational};

/// The outcome of comparing two indicator elements.
#[derive(Clone, Debug)]
pub struct IndicatorCheck {
    pub lhs: IndicatorElement,
    pub rhs: IndicatorElement,
    /// Cells of the common refinement that were compared (chambers only
    /// for almost-everywhere comparisons).
    pub cells: usize,
    pub mismatches: usize,
    pub holds: bool,
}

impl IndicatorCheck {
    /// Equality as functions.
    pub fn exact(lhs: IndicatorElement, rhs: IndicatorElement) -> Self {
        let form = CanonicalForm::new(&lhs.sub(&rhs));
        let mismatches = form.nonzero_cells();
        Self { lhs, rhs, cells: form.cells().len(), mismatches, holds: mismatches == 0 }
    }

    /// Equality almost everywhere.
    pub fn simple(lhs: IndicatorElement, rhs: IndicatorElement) -> Self {
        let form = CanonicalForm::new(&lhs.sub(&rhs));
        let mismatches = form.nonzero_chambers();
        let cells = form.cells().iter().filter(|c| c.is_full_dimensional()).count();
        Self { lhs, rhs, cells, mismatches, holds: mismatches == 0 }
    }
}

/// `Σ_{C ∈ 𝒩(𝒜)} [C] = Σ_L |μ(U, L)| [L]`.
pub fn lemma_key_check(a: &Arrangement) -> IndicatorCheck {
    let d = a.ambient_dim();
    let lhs = a
        .regions()
        .cones()
        .iter()
        .fold(IndicatorElement::zero(d), |acc, c| acc.add(&IndicatorElement::cone(c.clone())));
    let lattice = a.flats_lattice();
    let mut rhs = IndicatorElement::zero(d);
    for (j, flat) in lattice.flats().iter().enumerate() {
        rhs.add_term(Cone::subspace(flat), lattice.mobius(0, j).abs());
    }
    IndicatorCheck::exact(lhs, rhs)
}

/// `V_k(𝒜) = Σ_{dim L = k} (Σ_{K ⊆ L} |μ(L, K)| [K]) ∗ (Σ_{M ⊇ L} |μ(U, M)| [M^⊥])`.
pub fn theorem_vk_arr_check(a: &Arrangement, k: usize) -> IndicatorCheck {
    IndicatorCheck::exact(vk_arrangement(a, k), vk_arr_rhs(a, k))
}

pub fn vk_arr_rhs(a: &Arrangement, k: usize) -> IndicatorElement {
    let d = a.ambient_dim();
    let lattice = a.flats_lattice();
    let flats = lattice.flats();
    let mut rhs = IndicatorElement::zero(d);
    for l in (0..flats.len()).filter(|&l| flats[l].dim() == k) {
        let mut below = IndicatorElement::zero(d);
        let mut above = IndicatorElement::zero(d);
        for (m, other) in flats.iter().enumerate() {
            if lattice.leq(l, m) {
                below.add_term(Cone::subspace(other), lattice.mobius(l, m).abs());
            }
            if lattice.leq(m, l) {
                let perp = other.orthogonal_complement();
                above.add_term(Cone::subspace(&perp), lattice.mobius(0, m).abs());
            }
        }
        rhs = rhs.add(&below.star_product(&above));
    }
    rhs
}

/// `V_k(C) = V_k(C ∩ H^≤) + V_k(C ∩ H^≥) − V_k(C ∩ H)` almost everywhere,
/// for `H = normal^⊥`.
pub fn verify_vk_valuation(c: &Cone, normal: &[num_bigint::BigInt], k: usize) -> IndicatorCheck {
    let lhs = vk(c, k);
    let rhs = vk(&c.cut(normal), k).add(&vk(&c.cut(&negate(normal)), k)).sub(&vk(&c.slice(normal), k));
    IndicatorCheck::simple(lhs, rhs)
}

/// `V_k(C) = V_{d−k}(C^∨)`.
pub fn verify_polar_duality(c: &Cone, k: usize) -> IndicatorCheck {
    let d = c.ambient_dim();
    assert!(k <= d, "k exceeds the ambient dimension");
    IndicatorCheck::exact(vk(c, k), vk(&c.polar(), d - k))
}

/// `ε(C) [R^d] = Σ_{F face of C} (−1)^{dim F} [F − N_F C]`.
pub fn hug_kabluchko_check(c: &Cone) -> IndicatorCheck {
    let d = c.ambient_dim();
    let lattice = c.face_lattice();
    let mut lhs = IndicatorElement::zero(d);
    for (i, f) in lattice.faces().iter().enumerate() {
        let n = lattice.normal_cone(i).negated();
        lhs.add_term(f.cone().minkowski_sum(&n).expect("same ambient dimension"), sign(f.dim()));
    }
    let rhs = IndicatorElement::full(d).scale(euler_characteristic(c));
    IndicatorCheck::exact(lhs, rhs)
}

/// `Σ_{G face of D} (−1)^{dim G} [T_G D] = (−1)^{dim D} [−relint D]`, the
/// right side expanded over the closed faces of `−D`.
pub fn sommerville_check(c: &Cone) -> IndicatorCheck {
    let d = c.ambient_dim();
    let lattice = c.face_lattice();
    let mut lhs = IndicatorElement::zero(d);
    for (i, g) in lattice.faces().iter().enumerate() {
        lhs.add_term(lattice.normal_cone(i).polar(), sign(g.dim()));
    }
    let rhs = IndicatorElement::cone(c.clone()).euler_map().negated_map();
    IndicatorCheck::exact(lhs, rhs)
}

/// `ℰ(ℰ(f)) = f`.
pub fn euler_involution_check(f: &IndicatorElement) -> IndicatorCheck {
    IndicatorCheck::exact(f.euler_map().euler_map(), f.clone())
}

/// `ρ(V_k(𝒜)) = w_k ρ([R^d])` for every `k`.
pub fn klivans_swartz_indicator_check(a: &Arrangement) -> Vec<IndicatorCheck> {
    let d = a.ambient_dim();
    let w = a.whitney_numbers();
    (0..=d)
        .map(|k| IndicatorCheck::simple(vk_arrangement(a, k), IndicatorElement::full(d).scale(w.coefficient(k))))
        .collect()
}

/// `Π(𝒜) = ⋃_L {(H ∩ L) + L^⊥ : H ∩ L ∈ 𝒜|L}` as an arrangement in `R^d`.
/// The hyperplane `(H ∩ L) + L^⊥` has normal `π_L(n_H)`.
pub fn exceptional_arrangement(a: &Arrangement) -> Arrangement {
    let d = a.ambient_dim();
    let lattice = a.flats_lattice();
    let mut normals: Vec<IntVector> = lattice
        .flats()
        .iter()
        .flat_map(|l| a.restriction_to(l).normals().to_vec())
        .map(line_representative)
        .collect();
    normals.sort();
    normals.dedup();
    Arrangement::in_full_space(d, &normals).expect("normals are distinct lines")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericityReport {
    pub in_exceptional: bool,
    /// `d_{L'}(x) > d_L(x)` for all flats `L' ⊊ L`.
    pub distance_generic: bool,
    /// `d_{H ∩ L}(x) > d_L(x)` for all flats `L` and `H ∩ L ∈ 𝒜|L`.
    pub restricted_generic: bool,
}

impl GenericityReport {
    pub fn agrees(&self) -> bool {
        self.distance_generic == !self.in_exceptional && self.restricted_generic == !self.in_exceptional
    }
}

/// Compares membership of `x` in `⋃Π(𝒜)` with both distance criteria.
pub fn genericity_check(a: &Arrangement, x: &[Rational]) -> GenericityReport {
    let pi = exceptional_arrangement(a);
    let in_exceptional = pi.normals().iter().any(|n| dot_mixed(n, x).is_zero());
    let lattice = a.flats_lattice();
    let flats = lattice.flats();
    let dist: Vec<Rational> = flats.iter().map(|l| l.distance_sq(x)).collect();
    let mut distance_generic = true;
    for i in 0..flats.len() {
        for j in 0..flats.len() {
            if i != j && lattice.leq(i, j) && dist[j] <= dist[i] {
                distance_generic = false;
            }
        }
    }
    let restricted_generic = flats.iter().zip(&dist).all(|(l, dl)| {
        a.restriction_to(l).normals().iter().all(|n| l.meet_hyperplane(n).distance_sq(x) > *dl)
    });
    GenericityReport { in_exceptional, distance_generic, restricted_generic }
}
