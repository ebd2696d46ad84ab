//! Metric projection onto a cone, the Moreau fan and its face poset.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::cone::{Cone, Face, FaceLattice};
use crate::fan::Fan;
use crate::linalg::{dot_mixed, norm_sq, sub_rat, IntVector, RatVector, Rational, Subspace};
use crate::Error;

/// Nearest point of a cone together with the face containing it in its
/// relative interior.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionResult {
    pub point: RatVector,
    pub face: Face,
    /// Index of `face` in the face lattice.
    pub face_index: usize,
    pub distance_sq: Rational,
}

/// A cone prepared for repeated projections: face lattice, normal cones and
/// linear hulls of all faces.
#[derive(Clone, Debug)]
pub struct Projector {
    lattice: FaceLattice,
    normal_cones: Vec<Cone>,
    hulls: Vec<Subspace>,
}

impl Projector {
    pub fn new(cone: &Cone) -> Self {
        let lattice = cone.face_lattice();
        let normal_cones = (0..lattice.len()).map(|i| lattice.normal_cone(i)).collect();
        let hulls = lattice.faces().iter().map(|f| f.cone().linear_hull()).collect();
        Self { lattice, normal_cones, hulls }
    }

    pub fn lattice(&self) -> &FaceLattice {
        &self.lattice
    }

    pub fn normal_cone(&self, i: usize) -> &Cone {
        &self.normal_cones[i]
    }

    /// Faces `F` with `y = π_{lin F}(x) ∈ relint F` and `x − y ∈ N_F C`.
    /// For every `x` this is exactly one face.
    pub fn accepted_faces(&self, x: &[Rational]) -> Vec<usize> {
        (0..self.lattice.len()).filter(|&i| self.accepts(i, x).is_some()).collect()
    }

    fn accepts(&self, i: usize, x: &[Rational]) -> Option<RatVector> {
        let y = self.hulls[i].project(x);
        let face = self.lattice.faces()[i].cone();
        // relint of the minimal face (a subspace) is the face itself
        let inside = if i == 0 { face.contains(&y) } else { face.relint_contains(&y) };
        (inside && self.normal_cones[i].contains(&sub_rat(x, &y))).then_some(y)
    }

    pub fn project(&self, x: &[Rational]) -> ProjectionResult {
        let mut found = None;
        for i in 0..self.lattice.len() {
            if let Some(y) = self.accepts(i, x) {
                assert!(found.is_none(), "two faces accepted for one point");
                found = Some((i, y));
            }
        }
        let (face_index, point) = found.expect("some face contains the nearest point");
        let distance_sq = norm_sq(&sub_rat(x, &point));
        let face = self.lattice.faces()[face_index].clone();
        ProjectionResult { point, face, face_index, distance_sq }
    }
}

/// `π_C(x)` by exhaustive search over the faces of `C`.
pub fn metric_projection(cone: &Cone, x: &[Rational]) -> ProjectionResult {
    Projector::new(cone).project(x)
}

/// `Π_F(C) = F + N_F C`.
pub fn pi_f(cone: &Cone, face: &Cone) -> Result<Cone, Error> {
    face.minkowski_sum(&cone.normal_cone(face)?)
}

/// `{F + N_F C : F ∈ 𝓕(C)}`, a complete fan.
pub fn moreau_fan(cone: &Cone) -> Fan {
    let lattice = cone.face_lattice();
    let cones = (0..lattice.len())
        .map(|i| {
            lattice.faces()[i]
                .cone()
                .minkowski_sum(&lattice.normal_cone(i))
                .expect("same ambient dimension")
        })
        .collect();
    Fan::new(cone.ambient_dim(), cones).expect("the Moreau fan is a fan")
}

/// A floating-point sign filter for `a·x` with a certified error bound,
/// falling back to exact arithmetic when the sign is not certain.
#[derive(Clone, Debug)]
pub(crate) struct LinearForm {
    exact: IntVector,
    float: Option<Vec<f64>>,
}

/// Coefficients up to this size are exactly representable as `f64`.
const EXACT_F64: f64 = 9_007_199_254_740_992.0;

impl LinearForm {
    pub(crate) fn new(a: &[BigInt]) -> Self {
        let float: Option<Vec<f64>> = a
            .iter()
            .map(|v| v.to_f64().filter(|f| f.abs() < EXACT_F64))
            .collect();
        Self { exact: a.to_vec(), float }
    }

    pub(crate) fn sign(&self, x: &[f64]) -> core::cmp::Ordering {
        if let Some(a) = &self.float {
            let (mut s, mut mag) = (0.0f64, 0.0f64);
            for (ai, xi) in a.iter().zip(x) {
                s += ai * xi;
                mag += (ai * xi).abs();
            }
            let n = a.len() as f64;
            let bound = 4.0 * (n + 1.0) * f64::EPSILON * mag + f64::MIN_POSITIVE;
            if s > bound {
                return core::cmp::Ordering::Greater;
            }
            if s < -bound {
                return core::cmp::Ordering::Less;
            }
        }
        let xr: RatVector = x.iter().map(|&v| exact_rational(v)).collect();
        let v = dot_mixed(&self.exact, &xr);
        if v.is_positive() {
            core::cmp::Ordering::Greater
        } else if v.is_negative() {
            core::cmp::Ordering::Less
        } else {
            core::cmp::Ordering::Equal
        }
    }
}

/// The exact value of a finite `f64` as a rational.
pub fn exact_rational(v: f64) -> Rational {
    Rational::from_float(v).expect("finite sample coordinate")
}

/// Decides `dim F_x` for floating-point points whose coordinates are taken
/// as exact dyadic rationals.
///
/// `π_C(x) ∈ relint F` iff every facet inequality of `F` (taken inside
/// `lin F`) is strict at `x` and every inequality of `N_F C` (inside
/// `lin(F)^⊥`) holds at `x`, because both families are orthogonal to the
/// complementary part of the decomposition `x = π_{lin F}(x) + (x − π_{lin F}(x))`.
/// The answer agrees with [`Projector::project`].
#[derive(Clone, Debug)]
pub struct FaceClassifier {
    faces: Vec<(usize, Vec<LinearForm>, Vec<LinearForm>)>,
}

impl FaceClassifier {
    pub fn new(cone: &Cone) -> Self {
        let lattice = cone.face_lattice();
        let faces = (0..lattice.len())
            .map(|i| {
                let f = lattice.faces()[i].cone();
                let strict = f.inequalities().iter().map(|a| LinearForm::new(a)).collect();
                let weak = lattice.normal_cone(i).inequalities().iter().map(|a| LinearForm::new(a)).collect();
                (f.dim(), strict, weak)
            })
            .collect();
        Self { faces }
    }

    /// Index (in the face lattice) of the face `F_x`.
    pub fn face_index(&self, x: &[f64]) -> usize {
        use core::cmp::Ordering::*;
        self.faces
            .iter()
            .position(|(_, strict, weak)| {
                strict.iter().all(|a| a.sign(x) == Less) && weak.iter().all(|b| b.sign(x) != Greater)
            })
            .expect("the Moreau fan covers space")
    }

    /// `dim F_x`.
    pub fn face_dim(&self, x: &[f64]) -> usize {
        self.faces[self.face_index(x)].0
    }
}

/// A finite poset given by its order relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePoset {
    leq: Vec<Vec<bool>>,
}

impl FinitePoset {
    pub fn from_relation(n: usize, leq: impl Fn(usize, usize) -> bool) -> Self {
        Self { leq: (0..n).map(|i| (0..n).map(|j| leq(i, j)).collect()).collect() }
    }

    pub fn from_face_lattice(lattice: &FaceLattice) -> Self {
        Self::from_relation(lattice.len(), |i, j| lattice.leq(i, j))
    }

    pub fn len(&self) -> usize {
        self.leq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leq.is_empty()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }
}

/// Nonempty intervals `[a, c]` of a poset, ordered by reverse inclusion.
#[derive(Clone, Debug)]
pub struct IntervalPoset {
    intervals: Vec<(usize, usize)>,
    poset: FinitePoset,
}

impl IntervalPoset {
    pub fn new(source: &FinitePoset) -> Self {
        let n = source.len();
        let intervals: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (0..n).filter(move |&c| source.leq(a, c)).map(move |c| (a, c)))
            .collect();
        let poset = FinitePoset::from_relation(intervals.len(), |i, j| {
            let (a, c) = intervals[i];
            let (b, e) = intervals[j];
            // [b, e] ⊆ [a, c]
            source.leq(a, b) && source.leq(e, c)
        });
        Self { intervals, poset }
    }

    pub fn intervals(&self) -> &[(usize, usize)] {
        &self.intervals
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }
}

/// Outcome of comparing the face poset of the Moreau fan with the interval
/// poset of the face lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoreauIsomorphism {
    pub intervals: usize,
    pub moreau_faces: usize,
    /// `[F, G] ↦ F + N_G C` is a bijection onto the faces of the Moreau fan.
    pub bijective: bool,
    /// `[F, G] ⊇ [F', G']` iff `F + N_G C ⊆ F' + N_{G'} C`.
    pub order_preserving: bool,
}

impl MoreauIsomorphism {
    pub fn holds(&self) -> bool {
        self.bijective && self.order_preserving
    }
}

/// All faces of the cones of a fan, without repetition.
pub fn fan_faces(fan: &Fan) -> Vec<Cone> {
    let mut faces: Vec<Cone> = Vec::new();
    for c in fan.cones() {
        for f in c.face_lattice().faces() {
            if !faces.contains(f.cone()) {
                faces.push(f.cone().clone());
            }
        }
    }
    faces
}

pub fn check_moreau_isomorphism(cone: &Cone) -> MoreauIsomorphism {
    let lattice = cone.face_lattice();
    let intervals = IntervalPoset::new(&FinitePoset::from_face_lattice(&lattice));
    let moreau_faces = fan_faces(&moreau_fan(cone));
    let image: Vec<Cone> = intervals
        .intervals()
        .iter()
        .map(|&(f, g)| {
            lattice.faces()[f]
                .cone()
                .minkowski_sum(&lattice.normal_cone(g))
                .expect("same ambient dimension")
        })
        .collect();
    let injective = (0..image.len()).all(|i| (0..i).all(|j| image[i] != image[j]));
    let onto = moreau_faces.iter().all(|m| image.contains(m)) && image.iter().all(|c| moreau_faces.contains(c));
    let n = image.len();
    let order_preserving = (0..n).all(|i| {
        (0..n).all(|j| intervals.poset().leq(i, j) == image[j].contains_cone(&image[i]))
    });
    MoreauIsomorphism {
        intervals: intervals.len(),
        moreau_faces: moreau_faces.len(),
        bijective: injective && onto,
        order_preserving,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int_vector as iv, rat_vector};

    #[test]
    fn projection_examples() {
        let c = Cone::orthant(2);
        let r = metric_projection(&c, &rat_vector(&[3, -2]));
        assert_eq!(r.point, rat_vector(&[3, 0]));
        assert_eq!(r.face.dim(), 1);
        assert_eq!(r.distance_sq, Rational::from_integer(4.into()));
        let r = metric_projection(&c, &rat_vector(&[-1, -1]));
        assert_eq!(r.point, rat_vector(&[0, 0]));
        assert_eq!(r.face.dim(), 0);
        let w = Cone::from_rays(&[&[1, 0], &[1, 1]]);
        let r = metric_projection(&w, &rat_vector(&[-1, 0]));
        assert_eq!(r.point, rat_vector(&[0, 0]));
    }

    #[test]
    fn projection_onto_halfplane_with_lineality() {
        let h = Cone::halfspace(&iv(&[0, 1]));
        let r = metric_projection(&h, &rat_vector(&[5, 3]));
        assert_eq!(r.point, rat_vector(&[5, 0]));
        assert_eq!(r.face.dim(), 1);
        let r = metric_projection(&h, &rat_vector(&[5, -3]));
        assert_eq!(r.point, rat_vector(&[5, -3]));
        assert_eq!(r.face.dim(), 2);
    }

    #[test]
    fn pi_f_examples() {
        let c = Cone::orthant(2);
        assert_eq!(pi_f(&c, &Cone::origin(2)).unwrap(), Cone::orthant(2).negated());
        assert_eq!(pi_f(&c, &c).unwrap(), c);
        let fourth = Cone::from_rays(&[&[1, 0], &[0, -1]]);
        assert_eq!(pi_f(&c, &Cone::from_rays(&[&[1, 0]])).unwrap(), fourth);
    }

    #[test]
    fn moreau_fans() {
        let ray = Cone::from_rays(&[&[1]]);
        let m = moreau_fan(&ray);
        assert_eq!(m.len(), 2);
        assert_eq!(moreau_fan(&Cone::orthant(2)).len(), 4);
        let h = Cone::halfspace(&iv(&[0, 1]));
        let m = moreau_fan(&h);
        assert_eq!(m.len(), 2);
        assert!(m.cones().contains(&Cone::halfspace(&iv(&[0, -1]))));
    }

    #[test]
    fn interval_posets() {
        let chain = FinitePoset::from_relation(2, |i, j| i <= j);
        assert_eq!(IntervalPoset::new(&chain).len(), 3);
        let single = FinitePoset::from_relation(1, |_, _| true);
        assert_eq!(IntervalPoset::new(&single).len(), 1);
        let ray = Cone::from_rays(&[&[1]]);
        assert_eq!(IntervalPoset::new(&FinitePoset::from_face_lattice(&ray.face_lattice())).len(), 3);
    }

    #[test]
    fn moreau_isomorphism_small() {
        let m = check_moreau_isomorphism(&Cone::orthant(2));
        assert_eq!((m.intervals, m.moreau_faces), (9, 9));
        assert!(m.holds());
        let m = check_moreau_isomorphism(&Cone::from_rays(&[&[1]]));
        assert_eq!((m.intervals, m.moreau_faces), (3, 3));
        assert!(m.holds());
        let s = Cone::subspace(&Subspace::span(2, &[iv(&[1, 1])]));
        let m = check_moreau_isomorphism(&s);
        assert_eq!((m.intervals, m.moreau_faces), (1, 1));
        assert!(m.holds());
    }

    #[test]
    fn classifier_matches_projection() {
        let c = Cone::from_rays(&[&[1, 0, 1], &[0, 1, 1], &[-1, -1, 2]]);
        let proj = Projector::new(&c);
        let cls = FaceClassifier::new(&c);
        let pts: [[f64; 3]; 6] = [
            [0.3, -1.2, 0.5],
            [1.0, 1.0, 1.0],
            [-2.0, 0.1, -0.4],
            [0.0, 0.0, -1.0],
            [1.0, 0.0, 1.0],
            [0.25, 0.5, -3.0],
        ];
        for p in pts {
            let exact: RatVector = p.iter().map(|&v| exact_rational(v)).collect();
            assert_eq!(cls.face_index(&p), proj.project(&exact).face_index, "{p:?}");
        }
    }
}
