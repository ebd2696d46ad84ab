//! Seeded random instances: arrangements with rational normals, simplicial
//! cones, and integer points.

use fanval_core::linalg::{dot, line_representative, primitive_from_rational, rank_int};
use fanval_core::{Arrangement, Cone, IntVector, Rational};
use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn integer_point(rng: &mut impl Rng, d: usize, bound: i64) -> IntVector {
    (0..d).map(|_| BigInt::from(rng.random_range(-bound..=bound))).collect()
}

fn rational_normal(rng: &mut impl Rng, d: usize) -> IntVector {
    let v: Vec<Rational> = (0..d)
        .map(|_| Rational::new(rng.random_range(-3i64..=3).into(), rng.random_range(1i64..=3).into()))
        .collect();
    primitive_from_rational(&v)
}

/// An arrangement in `R^d` of `n` distinct hyperplanes with normals drawn
/// as vectors of small fractions.
pub fn arrangement(rng: &mut impl Rng, d: usize, n: usize) -> Arrangement {
    let mut normals: Vec<IntVector> = Vec::with_capacity(n);
    while normals.len() < n {
        let v = rational_normal(rng, d);
        if v.iter().all(Zero::is_zero) {
            continue;
        }
        let v = line_representative(v);
        if !normals.contains(&v) {
            normals.push(v);
        }
    }
    Arrangement::in_full_space(d, &normals).expect("distinct nonzero normals")
}

/// `count` arrangements with `2 ≤ d ≤ 4` and `2 ≤ n ≤ 6`.
pub fn arrangements(seed: u64, count: usize) -> Vec<Arrangement> {
    let mut rng = rng(seed);
    (0..count)
        .map(|_| {
            let d = rng.random_range(2..=4);
            let n = rng.random_range(2..=6);
            arrangement(&mut rng, d, n)
        })
        .collect()
}

/// A full-dimensional simplicial cone spanned by `d` random integer rays.
pub fn simplicial_cone(rng: &mut impl Rng, d: usize) -> Cone {
    loop {
        let rays: Vec<IntVector> = (0..d).map(|_| integer_point(rng, d, 4)).collect();
        if rank_int(&rays, d) == d {
            return Cone::from_generators(d, &rays, &[]).expect("consistent dimensions");
        }
    }
}

/// A normal whose hyperplane meets the interior of the full-dimensional
/// cone `c`.
pub fn cutting_normal(rng: &mut impl Rng, c: &Cone) -> IntVector {
    let d = c.ambient_dim();
    loop {
        let n = integer_point(rng, d, 3);
        let signs: Vec<BigInt> = c.rays().iter().map(|r| dot(&n, r)).collect();
        let pos = signs.iter().any(|s| s > &BigInt::zero());
        let neg = signs.iter().any(|s| s < &BigInt::zero());
        let splits_lineality = c.lineality().iter().any(|l| !dot(&n, l).is_zero());
        if (pos && neg) || splits_lineality {
            return n;
        }
    }
}

/// A point of the hyperplane `n^⊥`: the projection of a random integer
/// point, scaled to be integral.
pub fn point_on_hyperplane(rng: &mut impl Rng, n: &[BigInt], bound: i64) -> IntVector {
    let x = integer_point(rng, n.len(), bound);
    let nn = dot(n, n);
    let nx = dot(n, &x);
    x.iter().zip(n).map(|(xi, ni)| &nn * xi - &nx * ni).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible() {
        let a = arrangements(7, 5);
        let b = arrangements(7, 5);
        assert_eq!(a.iter().map(|x| x.normals().to_vec()).collect::<Vec<_>>(),
                   b.iter().map(|x| x.normals().to_vec()).collect::<Vec<_>>());
        for x in &a {
            assert!((2..=4).contains(&x.ambient_dim()));
            assert!((2..=6).contains(&x.len()));
        }
    }

    #[test]
    fn simplicial() {
        let mut r = rng(3);
        let c = simplicial_cone(&mut r, 3);
        assert!(c.is_full_dimensional() && c.is_pointed());
        assert_eq!(c.rays().len(), 3);
        let n = cutting_normal(&mut r, &c);
        let p = point_on_hyperplane(&mut r, &n, 5);
        assert!(dot(&n, &p).is_zero());
    }
}
