//! Incremental double description (Motzkin) over primitive integer vectors.
//!
//! The state is a cone `cone(rays) + span(lineality)` together with, for every
//! ray, the set of processed inequalities it satisfies with equality.
//! Constraints are intersected in one at a time; new rays come from
//! combinatorially adjacent pairs of rays on opposite sides.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::linalg::{dot, make_primitive, IntVector};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct ZeroSet(Vec<u64>);

impl ZeroSet {
    fn with_first(n: usize) -> Self {
        let mut s = Self::default();
        for i in 0..n {
            s.insert(i);
        }
        s
    }

    fn insert(&mut self, i: usize) {
        let (w, b) = (i / 64, i % 64);
        if self.0.len() <= w {
            self.0.resize(w + 1, 0);
        }
        self.0[w] |= 1 << b;
    }

    fn intersect(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn is_subset_of(&self, other: &Self) -> bool {
        self.0.iter().enumerate().all(|(i, &w)| w & !other.0.get(i).copied().unwrap_or(0) == 0)
    }
}

#[derive(Clone, Debug)]
struct Ray {
    v: IntVector,
    zero: ZeroSet,
}

#[derive(Clone, Debug)]
pub(crate) struct DdCone {
    dim: usize,
    constraints: usize,
    rays: Vec<Ray>,
    lineality: Vec<IntVector>,
}

/// `alpha * u + beta * v`, made primitive.
fn combine(alpha: &BigInt, u: &[BigInt], beta: &BigInt, v: &[BigInt]) -> IntVector {
    make_primitive(u.iter().zip(v).map(|(x, y)| alpha * x + beta * y).collect())
}

impl DdCone {
    /// The whole space `Q^dim`.
    pub(crate) fn full(dim: usize) -> Self {
        let lineality = (0..dim)
            .map(|i| {
                let mut e = vec![BigInt::zero(); dim];
                e[i] = BigInt::from(1);
                e
            })
            .collect();
        Self { dim, constraints: 0, rays: Vec::new(), lineality }
    }

    pub(crate) fn into_parts(self) -> (Vec<IntVector>, Vec<IntVector>) {
        (self.rays.into_iter().map(|r| r.v).collect(), self.lineality)
    }

    /// Sum of all rays: a point in the relative interior.
    pub(crate) fn ray_sum(&self) -> IntVector {
        let mut s = vec![BigInt::zero(); self.dim];
        for r in &self.rays {
            for (a, b) in s.iter_mut().zip(&r.v) {
                *a += b;
            }
        }
        s
    }

    /// Removes a lineality direction not orthogonal to `a` and moves every
    /// other generator into `a^⊥` along it. Returns that direction, oriented
    /// with `a·l < 0`.
    fn split_lineality(&mut self, a: &[BigInt]) -> Option<IntVector> {
        let idx = self.lineality.iter().position(|l| !dot(a, l).is_zero())?;
        let mut l0 = self.lineality.swap_remove(idx);
        let mut s0 = dot(a, &l0);
        if s0.is_positive() {
            l0.iter_mut().for_each(|x| *x = -&*x);
            s0 = -s0;
        }
        let neg_s0 = -&s0;
        for l in &mut self.lineality {
            let t = dot(a, l);
            if !t.is_zero() {
                *l = combine(&neg_s0, l, &t, &l0);
            }
        }
        for r in &mut self.rays {
            let t = dot(a, &r.v);
            if !t.is_zero() {
                r.v = combine(&neg_s0, &r.v, &t, &l0);
            }
        }
        Some(make_primitive(l0))
    }

    /// New rays on `a^⊥` from adjacent pairs with `a·p > 0 > a·n`.
    fn crossing_rays(&self, values: &[BigInt], index: Option<usize>) -> Vec<Ray> {
        let mut out = Vec::new();
        let pos: Vec<usize> = (0..self.rays.len()).filter(|&i| values[i].is_positive()).collect();
        let neg: Vec<usize> = (0..self.rays.len()).filter(|&i| values[i].is_negative()).collect();
        for &p in &pos {
            for &n in &neg {
                let common = self.rays[p].zero.intersect(&self.rays[n].zero);
                let adjacent = self
                    .rays
                    .iter()
                    .enumerate()
                    .all(|(i, r)| i == p || i == n || !common.is_subset_of(&r.zero));
                if !adjacent {
                    continue;
                }
                let v = combine(&values[p], &self.rays[n].v, &-&values[n], &self.rays[p].v);
                let mut zero = common;
                if let Some(i) = index {
                    zero.insert(i);
                }
                out.push(Ray { v, zero });
            }
        }
        out
    }

    /// Intersects with the halfspace `a·x ≤ 0`.
    pub(crate) fn add_inequality(&mut self, a: &[BigInt]) {
        debug_assert_eq!(a.len(), self.dim);
        let index = self.constraints;
        self.constraints += 1;
        if let Some(l0) = self.split_lineality(a) {
            for r in &mut self.rays {
                r.zero.insert(index);
            }
            self.rays.push(Ray { v: l0, zero: ZeroSet::with_first(index) });
            return;
        }
        let values: Vec<BigInt> = self.rays.iter().map(|r| dot(a, &r.v)).collect();
        if values.iter().all(|v| !v.is_positive()) {
            for (r, v) in self.rays.iter_mut().zip(&values) {
                if v.is_zero() {
                    r.zero.insert(index);
                }
            }
            return;
        }
        let mut next = self.crossing_rays(&values, Some(index));
        for (r, v) in self.rays.drain(..).zip(&values) {
            if v.is_negative() {
                next.push(r);
            } else if v.is_zero() {
                let mut r = r;
                r.zero.insert(index);
                next.push(r);
            }
        }
        self.rays = next;
    }

    /// Intersects with the hyperplane `a·x = 0`.
    pub(crate) fn add_equality(&mut self, a: &[BigInt]) {
        debug_assert_eq!(a.len(), self.dim);
        if self.split_lineality(a).is_some() {
            return;
        }
        let values: Vec<BigInt> = self.rays.iter().map(|r| dot(a, &r.v)).collect();
        let mut next = self.crossing_rays(&values, None);
        for (r, v) in self.rays.drain(..).zip(&values) {
            if v.is_zero() {
                next.push(r);
            }
        }
        self.rays = next;
    }
}

/// Generators `(rays, lineality basis)` of `{e·x = 0, a·x ≤ 0}`.
pub(crate) fn generators(
    dim: usize,
    equations: &[IntVector],
    inequalities: &[IntVector],
) -> (Vec<IntVector>, Vec<IntVector>) {
    let mut cone = DdCone::full(dim);
    for e in equations {
        cone.add_equality(e);
    }
    for a in inequalities {
        cone.add_inequality(a);
    }
    cone.into_parts()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int_vector;
    use alloc::collections::BTreeSet;

    fn ray_set(rays: &[IntVector]) -> BTreeSet<IntVector> {
        rays.iter().cloned().collect()
    }

    #[test]
    fn orthant() {
        let (rays, lin) =
            generators(2, &[], &[int_vector(&[-1, 0]), int_vector(&[0, -1])]);
        assert!(lin.is_empty());
        assert_eq!(ray_set(&rays), ray_set(&[int_vector(&[1, 0]), int_vector(&[0, 1])]));
    }

    #[test]
    fn square_cone_has_four_rays() {
        // |x| <= z, |y| <= z
        let ineqs = [
            int_vector(&[1, 0, -1]),
            int_vector(&[-1, 0, -1]),
            int_vector(&[0, 1, -1]),
            int_vector(&[0, -1, -1]),
        ];
        let (rays, lin) = generators(3, &[], &ineqs);
        assert!(lin.is_empty());
        let expect = [[1, 1, 1], [1, -1, 1], [-1, 1, 1], [-1, -1, 1]];
        assert_eq!(ray_set(&rays), expect.iter().map(|v| int_vector(v)).collect());
    }

    #[test]
    fn halfplane_keeps_lineality() {
        let (rays, lin) = generators(2, &[], &[int_vector(&[0, 1])]);
        assert_eq!(rays, vec![int_vector(&[0, -1])]);
        assert_eq!(lin.len(), 1);
        assert!(lin[0][1].is_zero());
    }

    #[test]
    fn redundant_constraints() {
        let ineqs = [
            int_vector(&[-1, 0]),
            int_vector(&[0, -1]),
            int_vector(&[-1, -1]),
            int_vector(&[-2, -1]),
        ];
        let (rays, _) = generators(2, &[], &ineqs);
        assert_eq!(ray_set(&rays), ray_set(&[int_vector(&[1, 0]), int_vector(&[0, 1])]));
    }

    #[test]
    fn equality_cuts_dimension() {
        let (rays, lin) = generators(
            3,
            &[int_vector(&[0, 0, 1])],
            &[int_vector(&[-1, 0, 0]), int_vector(&[0, -1, 0])],
        );
        assert!(lin.is_empty());
        assert_eq!(ray_set(&rays), ray_set(&[int_vector(&[1, 0, 0]), int_vector(&[0, 1, 0])]));
    }

    #[test]
    fn contradictory_constraints_give_origin() {
        let (rays, lin) = generators(1, &[], &[int_vector(&[1]), int_vector(&[-1])]);
        assert!(rays.is_empty() && lin.is_empty());
    }
}
