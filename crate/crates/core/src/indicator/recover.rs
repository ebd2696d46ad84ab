//! Reconstruction of a cone from the projection cones of its `k`-faces.

use alloc::vec::Vec;

use super::checks::{verify_polar_duality, IndicatorCheck};
use crate::cone::Cone;
use crate::error::Error;
use crate::linalg::{IntVector, Subspace};

/// The cones `F + N_F C` for the `k`-faces `F` of `C`, sorted.
pub fn vk_terms(c: &Cone, k: usize) -> Vec<Cone> {
    let lattice = c.face_lattice();
    let mut out: Vec<Cone> = lattice
        .faces()
        .iter()
        .enumerate()
        .filter(|(_, f)| f.dim() == k)
        .map(|(i, f)| f.cone().minkowski_sum(&lattice.normal_cone(i)).expect("same ambient dimension"))
        .collect();
    out.sort();
    out
}

/// Recovers `C` from `{F + N_F C : F ∈ 𝓕_k(C)}`.
///
/// The common lineality `Λ` of the terms is either the lineality of `C` or
/// the orthogonal complement of its linear hull; both readings are tried,
/// and within `W = Λ^⊥` the cone is pointed and full-dimensional. There
/// its `k`-faces are the `k`-faces of the terms that lie in no other term,
/// after passing to the polar when `2k > dim W`. A candidate is returned
/// only if it reproduces the input exactly.
pub fn recover_cone(terms: &[Cone], k: usize, d: usize) -> Result<Cone, Error> {
    if let Some(t) = terms.iter().find(|t| t.ambient_dim() != d) {
        return Err(Error::DimensionMismatch { expected: d, found: t.ambient_dim() });
    }
    if 2 * k == d {
        return Err(Error::AmbiguousRecovery);
    }
    if terms.is_empty() {
        return Err(Error::InconsistentRecovery);
    }
    let mut target = terms.to_vec();
    target.sort();
    target.dedup();

    let lineality = target
        .iter()
        .map(Cone::lineality_space)
        .reduce(|a, b| a.intersection(&b))
        .expect("nonempty");
    let w = lineality.orthogonal_complement();
    let w_cone = Cone::subspace(&w);
    let parts: Vec<Cone> =
        target.iter().map(|t| t.intersect(&w_cone).expect("same ambient dimension")).collect();

    let mut readings = Vec::new();
    if let Some(k0) = k.checked_sub(lineality.dim()) {
        readings.push((k0, Some(Cone::subspace(&lineality))));
    }
    readings.push((k, None));

    let mut ambiguous = false;
    for (k0, extra) in readings {
        ambiguous |= 2 * k0 == w.dim();
        let Some(pointed) = recover_pointed(&parts, k0, &w) else { continue };
        let candidate = match &extra {
            Some(l) => pointed.minkowski_sum(l).expect("same ambient dimension"),
            None => pointed,
        };
        if vk_terms(&candidate, k) == target {
            return Ok(candidate);
        }
    }
    Err(if ambiguous { Error::AmbiguousRecovery } else { Error::InconsistentRecovery })
}

/// Recovers a pointed cone, full-dimensional in `w`, from the parts of its
/// projection cones inside `w`.
fn recover_pointed(parts: &[Cone], k: usize, w: &Subspace) -> Option<Cone> {
    let m = w.dim();
    let d = w.ambient_dim();
    if k > m {
        return None;
    }
    if m == 0 {
        return Some(Cone::origin(d));
    }
    if 2 * k == m {
        return None;
    }
    if 2 * k > m {
        let dual = recover_pointed(parts, m - k, w)?;
        return Some(polar_within(&dual, w));
    }
    if k == 0 {
        return match parts {
            [p] => Some(polar_within(p, w)),
            _ => None,
        };
    }
    let mut rays: Vec<IntVector> = Vec::new();
    for (i, p) in parts.iter().enumerate() {
        for f in p.face_lattice().faces_of_dim(k) {
            let free = parts.iter().enumerate().all(|(j, q)| j == i || !q.contains_cone(f.cone()));
            if free {
                rays.extend(f.cone().rays().iter().cloned());
                rays.extend(f.cone().lineality().iter().cloned());
            }
        }
    }
    if rays.is_empty() {
        return None;
    }
    Some(Cone::from_generators(d, &rays, &[]).expect("same ambient dimension"))
}

fn polar_within(c: &Cone, w: &Subspace) -> Cone {
    c.polar().intersect(&Cone::subspace(w)).expect("same ambient dimension")
}

/// `V_k(C) = V_k(C^∨)` for `2k = d`, where recovery is impossible.
pub fn self_dual_check(c: &Cone) -> Result<IndicatorCheck, Error> {
    let d = c.ambient_dim();
    if !d.is_multiple_of(2) {
        return Err(Error::InvalidArgument("ambient dimension must be even"));
    }
    Ok(verify_polar_duality(c, d / 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int_vector as iv;

    fn round_trip(c: &Cone, k: usize) {
        let terms = vk_terms(c, k);
        let back = recover_cone(&terms, k, c.ambient_dim()).unwrap();
        assert_eq!(&back, c, "k={k}");
    }

    #[test]
    fn orthant() {
        let q = Cone::orthant(3);
        assert_eq!(vk_terms(&q, 1).len(), 3);
        round_trip(&q, 1);
        round_trip(&q, 2);
        round_trip(&q, 0);
        round_trip(&q, 3);
    }

    #[test]
    fn halfspace_through_polar() {
        round_trip(&Cone::halfspace(&iv(&[1, 2, -1])), 2);
    }

    #[test]
    fn origin_in_a_line() {
        let terms = vk_terms(&Cone::origin(1), 0);
        assert_eq!(terms, [Cone::full_space(1)]);
        assert_eq!(recover_cone(&terms, 0, 1).unwrap(), Cone::origin(1));
    }

    #[test]
    fn simplicial_in_four() {
        let c = Cone::from_rays(&[&[1, 0, 0, 0], &[1, 2, 0, 0], &[1, 1, 3, 0], &[0, 1, 1, 1]]);
        round_trip(&c, 1);
        round_trip(&c, 3);
    }

    #[test]
    fn lower_dimensional() {
        let c = Cone::from_rays(&[&[1, 0, 0, 0], &[1, 1, 0, 0], &[1, 0, 1, 0]]);
        round_trip(&c, 1);
    }

    #[test]
    fn self_dual_inside_linear_hull() {
        // in its 2-dimensional linear hull the cone and its polar share V_1
        let c = Cone::from_rays(&[&[1, 0, 0], &[1, 1, 0]]);
        let dual = Cone::from_rays(&[&[-1, 1, 0], &[0, -1, 0]]);
        assert_eq!(vk_terms(&c, 1), vk_terms(&dual, 1));
        assert_ne!(c, dual);
        assert_eq!(recover_cone(&vk_terms(&c, 1), 1, 3), Err(Error::AmbiguousRecovery));
    }

    #[test]
    fn errors() {
        let q = Cone::orthant(2);
        assert_eq!(recover_cone(&vk_terms(&q, 1), 1, 2), Err(Error::AmbiguousRecovery));
        assert_eq!(recover_cone(&[], 1, 3), Err(Error::InconsistentRecovery));
        let bogus = [Cone::orthant(3), Cone::orthant(3).negated()];
        assert_eq!(recover_cone(&bogus, 1, 3), Err(Error::InconsistentRecovery));
        assert!(self_dual_check(&q).unwrap().holds);
    }
}
