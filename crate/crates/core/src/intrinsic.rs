//! Monte Carlo estimation of spherical intrinsic volumes, characteristic
//! polynomials of fans, and the evaluations at `t = ±1`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::hash::{Hash, Hasher};

use num_traits::{Float, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::arrangement::Arrangement;
use crate::cone::Cone;
use crate::fan::{ConeValuation, Fan};
use crate::linalg::{dot, IntVector};
use crate::projection::FaceClassifier;
use crate::Error;

/// Standard Gaussian points of `R^d` from a seeded ChaCha8 stream.
#[derive(Clone, Debug)]
pub struct GaussianSampler {
    dim: usize,
    rng: ChaCha8Rng,
}

impl GaussianSampler {
    pub fn new(dim: usize, seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self { dim, rng }
    }

    pub fn next_point(&mut self) -> Vec<f64> {
        (0..self.dim).map(|_| self.rng.sample(StandardNormal)).collect()
    }
}

/// Tallies of `dim F_x` over `samples` Gaussian points for one cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntrinsicEstimate {
    counts: Vec<u64>,
    samples: u64,
    seed: u64,
}

impl IntrinsicEstimate {
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn samples(&self) -> u64 {
        self.samples
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn ambient_dim(&self) -> usize {
        self.counts.len() - 1
    }

    /// `v̂_k = counts[k] / N`.
    pub fn value(&self, k: usize) -> f64 {
        self.counts[k] as f64 / self.samples as f64
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.counts.len()).map(|k| self.value(k)).collect()
    }

    /// Binomial variance estimate `v̂_k (1 − v̂_k) / N`.
    pub fn variance(&self, k: usize) -> f64 {
        let p = self.value(k);
        p * (1.0 - p) / self.samples as f64
    }

    /// `z · sqrt(v̂_k (1 − v̂_k) / N)`.
    pub fn ci_radius(&self, k: usize, z: f64) -> f64 {
        z * self.variance(k).sqrt()
    }

    /// `Σ_k (−1)^k v̂_k`, the mean of a ±1 variable.
    pub fn alternating_sum(&self) -> f64 {
        (0..self.counts.len()).map(|k| if k % 2 == 0 { self.value(k) } else { -self.value(k) }).sum()
    }

    pub fn alternating_sum_variance(&self) -> f64 {
        let m = self.alternating_sum();
        (1.0 - m * m) / self.samples as f64
    }
}

/// Incremental sampler, so that estimates can be read off along the way.
#[derive(Clone, Debug)]
pub struct IntrinsicSampler {
    classifier: FaceClassifier,
    gauss: GaussianSampler,
    counts: Vec<u64>,
    samples: u64,
    seed: u64,
}

impl IntrinsicSampler {
    pub fn new(cone: &Cone, seed: u64, stream: u64) -> Self {
        let d = cone.ambient_dim();
        Self {
            classifier: FaceClassifier::new(cone),
            gauss: GaussianSampler::new(d, seed, stream),
            counts: vec![0; d + 1],
            samples: 0,
            seed,
        }
    }

    pub fn run(&mut self, n: u64) {
        for _ in 0..n {
            let x = self.gauss.next_point();
            self.counts[self.classifier.face_dim(&x)] += 1;
        }
        self.samples += n;
    }

    pub fn estimate(&self) -> IntrinsicEstimate {
        IntrinsicEstimate { counts: self.counts.clone(), samples: self.samples, seed: self.seed }
    }
}

/// `v̂_k(C)` from `samples ≥ 1` Gaussian points; the face of each sample's
/// projection is decided exactly.
pub fn mc_intrinsic_volumes(cone: &Cone, samples: u64, seed: u64) -> IntrinsicEstimate {
    assert!(samples >= 1, "at least one sample is required");
    let mut s = IntrinsicSampler::new(cone, seed, 0);
    s.run(samples);
    s.estimate()
}

/// `v_k` of a 2-dimensional pointed cone from the angle `α` between its
/// rays: `(1/2 − α/2π, 1/2, α/2π)` in positions 0, 1, 2.
pub fn exact_intrinsic_2d(cone: &Cone) -> Result<Vec<f64>, Error> {
    if cone.dim() != 2 || !cone.is_pointed() {
        return Err(Error::InvalidArgument("expected a pointed 2-dimensional cone"));
    }
    let (r, s) = (&cone.rays()[0], &cone.rays()[1]);
    let rs = dot(r, s);
    let gram = dot(r, r) * dot(s, s) - &rs * &rs;
    let to_f = |v: &num_bigint::BigInt| v.to_f64().expect("finite");
    let alpha = Float::atan2(Float::sqrt(to_f(&gram)), to_f(&rs));
    let mut v = vec![0.0; cone.ambient_dim() + 1];
    v[0] = 0.5 - alpha / (2.0 * PI);
    v[1] = 0.5;
    v[2] = alpha / (2.0 * PI);
    Ok(v)
}

/// Per-cone estimates of a fan, each from its own stream of the seed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanIntrinsicEstimate {
    ambient_dim: usize,
    cones: Vec<IntrinsicEstimate>,
}

impl FanIntrinsicEstimate {
    pub fn cones(&self) -> &[IntrinsicEstimate] {
        &self.cones
    }

    /// `v̂_k(𝒩) = Σ_C v̂_k(C)`.
    pub fn value(&self, k: usize) -> f64 {
        self.cones.iter().map(|e| e.value(k)).sum()
    }

    pub fn values(&self) -> Vec<f64> {
        (0..=self.ambient_dim).map(|k| self.value(k)).collect()
    }

    pub fn variance(&self, k: usize) -> f64 {
        self.cones.iter().map(|e| e.variance(k)).sum()
    }

    pub fn ci_radius(&self, k: usize, z: f64) -> f64 {
        z * self.variance(k).sqrt()
    }

    pub fn char_poly(&self) -> FanCharPoly {
        FanCharPoly {
            coefficients: self.values(),
            variances: (0..=self.ambient_dim).map(|k| self.variance(k)).collect(),
        }
    }

    /// `ōχ̂(−1)` with the variance of its per-cone ±1 averages.
    pub fn at_minus_one(&self) -> (f64, f64) {
        let v = self.cones.iter().map(|e| e.alternating_sum()).sum();
        let var = self.cones.iter().map(|e| e.alternating_sum_variance()).sum();
        (v, var)
    }
}

pub fn fan_intrinsic_volumes(fan: &Fan, samples: u64, seed: u64) -> FanIntrinsicEstimate {
    let cones = fan
        .cones()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let mut s = IntrinsicSampler::new(c, seed, i as u64);
            s.run(samples);
            s.estimate()
        })
        .collect();
    FanIntrinsicEstimate { ambient_dim: fan.ambient_dim(), cones }
}

/// `ōχ̂_𝒩(t) = Σ_k v̂_k(𝒩) t^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct FanCharPoly {
    pub coefficients: Vec<f64>,
    pub variances: Vec<f64>,
}

impl FanCharPoly {
    pub fn eval(&self, t: f64) -> f64 {
        self.coefficients.iter().rev().fold(0.0, |acc, c| acc * t + c)
    }
}

pub fn fan_char_poly(fan: &Fan, samples: u64, seed: u64) -> FanCharPoly {
    fan_intrinsic_volumes(fan, samples, seed).char_poly()
}

#[derive(Clone, Debug, PartialEq)]
pub struct ZaslavskyReport {
    pub cones: usize,
    /// `ōχ̂(1)`, equal to the number of cones because per-cone tallies sum to `N`.
    pub at_one: f64,
    pub at_one_exact: bool,
    pub at_minus_one: f64,
    pub tolerance: f64,
    /// `None` when the fan has rank 0 (a single subspace), where
    /// `ōχ(−1) = ±1` and the vanishing is not asserted.
    pub at_minus_one_vanishes: Option<bool>,
}

impl ZaslavskyReport {
    pub fn holds(&self) -> bool {
        self.at_one_exact && self.at_minus_one_vanishes != Some(false)
    }
}

pub fn verify_zaslavsky(fan: &Fan, samples: u64, seed: u64, z: f64) -> ZaslavskyReport {
    let est = fan_intrinsic_volumes(fan, samples, seed);
    let total: u64 = est.cones().iter().map(|e| e.counts().iter().sum::<u64>()).sum();
    let at_one_exact = total == samples * fan.len() as u64;
    let (at_minus_one, var) = est.at_minus_one();
    let tolerance = z * var.sqrt();
    let at_minus_one_vanishes = match fan.rank() {
        Some(r) if r >= 1 => Some(at_minus_one.abs() <= tolerance),
        Some(_) => None,
        None => Some(at_minus_one == 0.0),
    };
    ZaslavskyReport {
        cones: fan.len(),
        at_one: est.char_poly().eval(1.0),
        at_one_exact,
        at_minus_one,
        tolerance,
        at_minus_one_vanishes,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientComparison {
    pub k: usize,
    pub estimate: f64,
    pub ci_radius: f64,
    pub whitney: i64,
    pub within: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct KlivansSwartzReport {
    pub rows: Vec<CoefficientComparison>,
    pub samples: u64,
    pub seed: u64,
}

impl KlivansSwartzReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|r| r.within)
    }
}

/// Compares `ōχ̂_{𝒩(𝒜)}` with the Whitney numbers coefficient by
/// coefficient, within `z` standard errors.
///
/// A coefficient whose estimated variance is zero (all or none of the
/// samples landed in that dimension) must match exactly.
pub fn verify_klivans_swartz(
    arrangement: &Arrangement,
    samples: u64,
    seed: u64,
    z: f64,
) -> Result<KlivansSwartzReport, Error> {
    if arrangement.is_empty() {
        return Err(Error::EmptyArrangement);
    }
    let est = fan_intrinsic_volumes(&arrangement.regions(), samples, seed);
    let w = arrangement.whitney_numbers();
    let rows = (0..=arrangement.ambient_dim())
        .map(|k| {
            let estimate = est.value(k);
            let ci_radius = est.ci_radius(k, z);
            let whitney = w.coefficient(k);
            let within = (estimate - whitney as f64).abs() <= ci_radius + 1e-9;
            CoefficientComparison { k, estimate, ci_radius, whitney, within }
        })
        .collect();
    Ok(KlivansSwartzReport { rows, samples, seed })
}

/// A Monte Carlo estimate with its variance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub mean: f64,
    pub variance: f64,
}

impl Estimate {
    pub fn exact(v: f64) -> Self {
        Self { mean: v, variance: 0.0 }
    }
}

/// FNV-1a, used to derive a per-cone seed so that a cone always receives
/// the same samples.
struct Fnv(u64);

impl Hasher for Fnv {
    fn finish(&self) -> u64 {
        self.0
    }

    fn write(&mut self, bytes: &[u8]) {
        for b in bytes {
            self.0 ^= u64::from(*b);
            self.0 = self.0.wrapping_mul(0x0100_0000_01b3);
        }
    }
}

fn cone_seed(cone: &Cone, seed: u64) -> u64 {
    let mut h = Fnv(0xcbf2_9ce4_8422_2325);
    cone.hash(&mut h);
    h.finish() ^ seed
}

/// `C ↦ v̂_k(C)` as a valuation with statistical equality: values agree
/// when they differ by at most `z` combined standard errors.
#[derive(Clone, Copy, Debug)]
pub struct IntrinsicVolume {
    pub k: usize,
    pub samples: u64,
    pub seed: u64,
    pub z: f64,
}

impl ConeValuation for IntrinsicVolume {
    type Value = Estimate;

    fn zero(&self, _: usize) -> Estimate {
        Estimate::exact(0.0)
    }

    fn value(&self, cone: &Cone) -> Estimate {
        if self.k > cone.ambient_dim() {
            return Estimate::exact(0.0);
        }
        let e = mc_intrinsic_volumes(cone, self.samples, cone_seed(cone, self.seed));
        Estimate { mean: e.value(self.k), variance: e.variance(self.k) }
    }

    fn add(&self, a: &Estimate, b: &Estimate) -> Estimate {
        Estimate { mean: a.mean + b.mean, variance: a.variance + b.variance }
    }

    fn scale(&self, a: &Estimate, k: i64) -> Estimate {
        let k = k as f64;
        Estimate { mean: k * a.mean, variance: k * k * a.variance }
    }

    fn agrees(&self, a: &Estimate, b: &Estimate) -> bool {
        (a.mean - b.mean).abs() <= self.z * (a.variance + b.variance).sqrt() + 1e-9
    }
}

/// A rotation of `R^d` acting on coordinates `i, j` by the Pythagorean
/// triple `(a, b, c)`, as an integer matrix scaled by `c`.
pub fn pythagorean_rotation(d: usize, i: usize, j: usize, a: i64, b: i64) -> Vec<IntVector> {
    let mut m: Vec<IntVector> = vec![vec![num_bigint::BigInt::from(0); d]; d];
    let c = num_integer::Roots::sqrt(&(a * a + b * b));
    assert_eq!(c * c, a * a + b * b, "not a Pythagorean triple");
    for (r, row) in m.iter_mut().enumerate() {
        if r != i && r != j {
            row[r] = c.into();
        }
    }
    m[i][i] = a.into();
    m[i][j] = (-b).into();
    m[j][i] = b.into();
    m[j][j] = a.into();
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int_vector as iv, Subspace};

    #[test]
    fn subspace_is_exact() {
        let e = mc_intrinsic_volumes(&Cone::full_space(3), 1000, 1);
        assert_eq!(e.counts(), &[0, 0, 0, 1000]);
        let line = Cone::subspace(&Subspace::span(2, &[iv(&[1, 2])]));
        let e = mc_intrinsic_volumes(&line, 500, 1);
        assert_eq!(e.counts(), &[0, 500, 0]);
    }

    #[test]
    fn counts_sum_to_samples() {
        let e = mc_intrinsic_volumes(&Cone::orthant(3), 2000, 9);
        assert_eq!(e.counts().iter().sum::<u64>(), 2000);
        let total: f64 = e.values().iter().sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn reproducible() {
        let a = mc_intrinsic_volumes(&Cone::orthant(2), 3000, 42);
        let b = mc_intrinsic_volumes(&Cone::orthant(2), 3000, 42);
        assert_eq!(a, b);
        assert_eq!(a.seed(), 42);
    }

    #[test]
    fn two_dimensional_angles() {
        let v = exact_intrinsic_2d(&Cone::orthant(2)).unwrap();
        assert!((v[2] - 0.25).abs() < 1e-15 && (v[0] - 0.25).abs() < 1e-15);
        let v = exact_intrinsic_2d(&Cone::from_rays(&[&[1, 0], &[1, 1]])).unwrap();
        assert!((v[2] - 0.125).abs() < 1e-15);
        assert!(exact_intrinsic_2d(&Cone::halfspace(&iv(&[0, 1]))).is_err());
        assert!(exact_intrinsic_2d(&Cone::from_rays(&[&[1, 1]])).is_err());
    }

    #[test]
    fn incremental_matches_batch() {
        let c = Cone::from_rays(&[&[1, 0], &[1, 3]]);
        let mut s = IntrinsicSampler::new(&c, 5, 0);
        s.run(700);
        s.run(300);
        assert_eq!(s.estimate(), mc_intrinsic_volumes(&c, 1000, 5));
    }

    #[test]
    fn rotation_matrix_is_orthogonal_up_to_scale() {
        let m = pythagorean_rotation(3, 0, 2, 3, 4);
        for r in 0..3 {
            for s in 0..3 {
                let v = dot(&m[r], &m[s]);
                assert_eq!(v, num_bigint::BigInt::from(if r == s { 25 } else { 0 }));
            }
        }
    }
}
