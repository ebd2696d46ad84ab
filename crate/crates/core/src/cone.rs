//! Polyhedral cones in both representations, their faces, polars, normal and
//! tangent cones.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::dd;
use crate::linalg::{
    canonical_row_basis, dot, dot_mixed, int_vector, is_zero, make_primitive, negate,
    primitive_from_rational, rank_int, to_rational, IntVector, RatMatrix, RatVector, Rational,
    Subspace,
};
use crate::Error;

/// A polyhedral cone `C = cone(rays) + span(lineality)
/// = {x : e·x = 0 (e ∈ equations), a·x ≤ 0 (a ∈ inequalities)}`.
///
/// Both descriptions are kept in canonical form, so two cones are equal as
/// point sets iff they compare equal:
/// * `lineality` and `equations` are reduced row echelon bases (rows scaled
///   to primitive integers),
/// * `rays` are the extreme rays modulo the lineality space, taken in
///   `lineal(C)^⊥`, primitive and sorted,
/// * `inequalities` are the facet normals taken in `lin(C)`, primitive and
///   sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cone {
    ambient_dim: usize,
    lineality: Vec<IntVector>,
    rays: Vec<IntVector>,
    equations: Vec<IntVector>,
    inequalities: Vec<IntVector>,
}

/// `I - B^T (B B^T)^{-1} B`: projection onto the orthogonal complement of the
/// row space of `basis`.
fn complement_projector(dim: usize, basis: &[IntVector]) -> Option<RatMatrix> {
    if basis.is_empty() {
        return None;
    }
    let space = Subspace::span(dim, basis);
    let cols: Vec<RatVector> = (0..dim)
        .map(|i| {
            let mut e = vec![Rational::zero(); dim];
            e[i] = Rational::from_integer(BigInt::from(1));
            let p = space.project(&e);
            e.iter().zip(&p).map(|(a, b)| a - b).collect()
        })
        .collect();
    // The projector is symmetric, so its columns are its rows.
    Some(RatMatrix::from_rows(dim, &cols))
}

fn project_all(dim: usize, onto_complement_of: &[IntVector], vs: Vec<IntVector>) -> Vec<IntVector> {
    let projected: Vec<IntVector> = match complement_projector(dim, onto_complement_of) {
        None => vs.into_iter().map(make_primitive).collect(),
        Some(p) => vs.iter().map(|v| primitive_from_rational(&p.mul_vec(&to_rational(v)))).collect(),
    };
    let set: BTreeSet<IntVector> = projected.into_iter().filter(|v| !is_zero(v)).collect();
    set.into_iter().collect()
}

fn check_dims(dim: usize, vs: &[IntVector]) -> Result<(), Error> {
    match vs.iter().find(|v| v.len() != dim) {
        Some(v) => Err(Error::DimensionMismatch { expected: dim, found: v.len() }),
        None => Ok(()),
    }
}

impl Cone {
    /// Canonicalizes a description that is already minimal up to scaling and
    /// representatives modulo lineality / linear hull.
    fn assemble(
        ambient_dim: usize,
        rays: Vec<IntVector>,
        lineality: &[IntVector],
        equations: &[IntVector],
        inequalities: Vec<IntVector>,
    ) -> Self {
        let lineality = canonical_row_basis(lineality, ambient_dim);
        let equations = canonical_row_basis(equations, ambient_dim);
        let rays = project_all(ambient_dim, &lineality, rays);
        let inequalities = project_all(ambient_dim, &equations, inequalities);
        Self { ambient_dim, lineality, rays, equations, inequalities }
    }

    /// `cone(rays) + span(lineality)`. Redundant generators are removed.
    pub fn from_generators(
        ambient_dim: usize,
        rays: &[IntVector],
        lineality: &[IntVector],
    ) -> Result<Self, Error> {
        check_dims(ambient_dim, rays)?;
        check_dims(ambient_dim, lineality)?;
        // Facets of C are the extreme rays of C^∨ = {y : r·y ≤ 0, l·y = 0}.
        let (facets, eqs) = dd::generators(ambient_dim, lineality, rays);
        let (rays, lin) = dd::generators(ambient_dim, &eqs, &facets);
        Ok(Self::assemble(ambient_dim, rays, &lin, &eqs, facets))
    }

    /// `{x : e·x = 0, a·x ≤ 0}`. Redundant inequalities are removed and
    /// implicit equations detected.
    pub fn from_halfspaces(
        ambient_dim: usize,
        equations: &[IntVector],
        inequalities: &[IntVector],
    ) -> Result<Self, Error> {
        check_dims(ambient_dim, equations)?;
        check_dims(ambient_dim, inequalities)?;
        let (rays, lin) = dd::generators(ambient_dim, equations, inequalities);
        let (facets, eqs) = dd::generators(ambient_dim, &lin, &rays);
        Ok(Self::assemble(ambient_dim, rays, &lin, &eqs, facets))
    }

    /// From generators already known to be irredundant, e.g. double
    /// description output.
    pub(crate) fn from_extreme_generators(
        ambient_dim: usize,
        rays: Vec<IntVector>,
        lineality: Vec<IntVector>,
    ) -> Self {
        let (facets, eqs) = dd::generators(ambient_dim, &lineality, &rays);
        Self::assemble(ambient_dim, rays, &lineality, &eqs, facets)
    }

    pub fn from_rational_generators(
        ambient_dim: usize,
        rays: &[RatVector],
        lineality: &[RatVector],
    ) -> Result<Self, Error> {
        let r: Vec<IntVector> = rays.iter().map(|v| primitive_from_rational(v)).collect();
        let l: Vec<IntVector> = lineality.iter().map(|v| primitive_from_rational(v)).collect();
        Self::from_generators(ambient_dim, &r, &l)
    }

    pub fn from_rational_halfspaces(
        ambient_dim: usize,
        equations: &[RatVector],
        inequalities: &[RatVector],
    ) -> Result<Self, Error> {
        let e: Vec<IntVector> = equations.iter().map(|v| primitive_from_rational(v)).collect();
        let a: Vec<IntVector> = inequalities.iter().map(|v| primitive_from_rational(v)).collect();
        Self::from_halfspaces(ambient_dim, &e, &a)
    }

    /// Convenience constructor from small integer rays.
    pub fn from_rays(rays: &[&[i64]]) -> Self {
        let d = rays.first().map_or(0, |r| r.len());
        let rays: Vec<IntVector> = rays.iter().map(|r| int_vector(r)).collect();
        Self::from_generators(d, &rays, &[]).expect("consistent dimensions")
    }

    pub fn subspace(space: &Subspace) -> Self {
        Self {
            ambient_dim: space.ambient_dim(),
            lineality: space.basis().to_vec(),
            rays: Vec::new(),
            equations: space.orthogonal_complement().basis().to_vec(),
            inequalities: Vec::new(),
        }
    }

    pub fn origin(ambient_dim: usize) -> Self {
        Self::subspace(&Subspace::zero(ambient_dim))
    }

    pub fn full_space(ambient_dim: usize) -> Self {
        Self::subspace(&Subspace::full(ambient_dim))
    }

    /// The nonnegative orthant.
    pub fn orthant(ambient_dim: usize) -> Self {
        let rays: Vec<IntVector> = Subspace::full(ambient_dim).basis().to_vec();
        Self::from_generators(ambient_dim, &rays, &[]).expect("consistent dimensions")
    }

    /// The closed halfspace `{x : normal·x ≤ 0}`.
    pub fn halfspace(normal: &[BigInt]) -> Self {
        let d = normal.len();
        Self::from_halfspaces(d, &[], &[normal.to_vec()]).expect("consistent dimensions")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.ambient_dim - self.equations.len()
    }

    pub fn lineality_dim(&self) -> usize {
        self.lineality.len()
    }

    pub fn rays(&self) -> &[IntVector] {
        &self.rays
    }

    pub fn lineality(&self) -> &[IntVector] {
        &self.lineality
    }

    pub fn equations(&self) -> &[IntVector] {
        &self.equations
    }

    pub fn inequalities(&self) -> &[IntVector] {
        &self.inequalities
    }

    pub fn linear_hull(&self) -> Subspace {
        Subspace::kernel(self.ambient_dim, &self.equations)
    }

    pub fn lineality_space(&self) -> Subspace {
        Subspace::span(self.ambient_dim, &self.lineality)
    }

    pub fn is_subspace(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        assert_eq!(x.len(), self.ambient_dim, "point dimension mismatch");
        self.equations.iter().all(|e| dot_mixed(e, x).is_zero())
            && self.inequalities.iter().all(|a| !dot_mixed(a, x).is_positive())
    }

    pub fn contains_int(&self, x: &[BigInt]) -> bool {
        self.equations.iter().all(|e| dot(e, x).is_zero())
            && self.inequalities.iter().all(|a| !dot(a, x).is_positive())
    }

    /// Membership in the relative interior. The inequality description is
    /// irredundant, so the relative interior is where every facet inequality
    /// is strict.
    pub fn relint_contains(&self, x: &[Rational]) -> bool {
        assert_eq!(x.len(), self.ambient_dim, "point dimension mismatch");
        self.equations.iter().all(|e| dot_mixed(e, x).is_zero())
            && self.inequalities.iter().all(|a| dot_mixed(a, x).is_negative())
    }

    /// The sum of the extreme rays, a point of the relative interior.
    pub fn relint_point(&self) -> RatVector {
        to_rational(&self.relint_point_int())
    }

    pub fn relint_point_int(&self) -> IntVector {
        let mut s = vec![BigInt::zero(); self.ambient_dim];
        for r in &self.rays {
            for (a, b) in s.iter_mut().zip(r) {
                *a += b;
            }
        }
        s
    }

    /// `self ⊇ other`.
    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.rays.iter().all(|r| self.contains_int(r))
            && other.lineality.iter().all(|l| self.contains_int(l) && self.contains_int(&negate(l)))
    }

    /// The polar `{y : y·x ≤ 0 for all x ∈ C}`. The two descriptions swap.
    pub fn polar(&self) -> Cone {
        Cone {
            ambient_dim: self.ambient_dim,
            lineality: self.equations.clone(),
            rays: self.inequalities.clone(),
            equations: self.lineality.clone(),
            inequalities: self.rays.clone(),
        }
    }

    /// `-C`.
    pub fn negated(&self) -> Cone {
        let mut rays: Vec<IntVector> = self.rays.iter().map(|r| negate(r)).collect();
        let mut inequalities: Vec<IntVector> = self.inequalities.iter().map(|a| negate(a)).collect();
        rays.sort();
        inequalities.sort();
        Cone { rays, inequalities, ..self.clone() }
    }

    pub fn intersect(&self, other: &Cone) -> Result<Cone, Error> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, found: other.ambient_dim });
        }
        let mut eqs = self.equations.clone();
        eqs.extend(other.equations.iter().cloned());
        let mut ineqs = self.inequalities.clone();
        ineqs.extend(other.inequalities.iter().cloned());
        Cone::from_halfspaces(self.ambient_dim, &eqs, &ineqs)
    }

    /// `C + D`, which for cones is also the conical hull of `C ∪ D`.
    pub fn minkowski_sum(&self, other: &Cone) -> Result<Cone, Error> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, found: other.ambient_dim });
        }
        let mut rays = self.rays.clone();
        rays.extend(other.rays.iter().cloned());
        let mut lin = self.lineality.clone();
        lin.extend(other.lineality.iter().cloned());
        Cone::from_generators(self.ambient_dim, &rays, &lin)
    }

    /// `C ∩ {normal·x ≤ 0}`.
    pub fn cut(&self, normal: &[BigInt]) -> Cone {
        let mut ineqs = self.inequalities.clone();
        ineqs.push(normal.to_vec());
        Cone::from_halfspaces(self.ambient_dim, &self.equations, &ineqs).expect("consistent dimensions")
    }

    /// `C ∩ {normal·x = 0}`.
    pub fn slice(&self, normal: &[BigInt]) -> Cone {
        let mut eqs = self.equations.clone();
        eqs.push(normal.to_vec());
        Cone::from_halfspaces(self.ambient_dim, &eqs, &self.inequalities).expect("consistent dimensions")
    }

    /// The face spanned by the rays with the given indices (plus the
    /// lineality space). `subset` must be the ray set of a face.
    fn face_from_ray_subset(&self, subset: &[usize]) -> Cone {
        let rays: Vec<IntVector> = subset.iter().map(|&i| self.rays[i].clone()).collect();
        let active: Vec<usize> = (0..self.inequalities.len())
            .filter(|&i| rays.iter().all(|r| dot(&self.inequalities[i], r).is_zero()))
            .collect();
        let mut eqs = self.equations.clone();
        eqs.extend(active.iter().map(|&i| self.inequalities[i].clone()));
        let eqs = canonical_row_basis(&eqs, self.ambient_dim);
        let face_dim = self.ambient_dim - eqs.len();
        let facets: Vec<IntVector> = (0..self.inequalities.len())
            .filter(|i| !active.contains(i))
            .filter(|&i| {
                let mut on: Vec<IntVector> = rays
                    .iter()
                    .filter(|r| dot(&self.inequalities[i], r).is_zero())
                    .cloned()
                    .collect();
                on.extend(self.lineality.iter().cloned());
                rank_int(&on, self.ambient_dim) + 1 == face_dim
            })
            .map(|i| self.inequalities[i].clone())
            .collect();
        Cone::assemble(self.ambient_dim, rays, &self.lineality, &eqs, facets)
    }

    /// Indices of the inequalities vanishing on all of `d`.
    fn active_set_of(&self, d: &Cone) -> Vec<usize> {
        (0..self.inequalities.len())
            .filter(|&i| {
                let a = &self.inequalities[i];
                d.rays.iter().all(|r| dot(a, r).is_zero())
                    && d.lineality.iter().all(|l| dot(a, l).is_zero())
            })
            .collect()
    }

    fn ray_subset_for_active(&self, active: &[usize]) -> Vec<usize> {
        (0..self.rays.len())
            .filter(|&j| active.iter().all(|&i| dot(&self.inequalities[i], &self.rays[j]).is_zero()))
            .collect()
    }

    /// The smallest face of `C` containing `d`, if `d ⊆ C`.
    pub fn smallest_face_containing(&self, d: &Cone) -> Option<Face> {
        if !self.contains_cone(d) {
            return None;
        }
        let active = self.active_set_of(d);
        let ray_set = self.ray_subset_for_active(&active);
        let cone = self.face_from_ray_subset(&ray_set);
        Some(Face { active: self.active_set_of(&cone), cone, ray_set })
    }

    /// Whether `d` is a face of `C`.
    pub fn has_face(&self, d: &Cone) -> bool {
        self.smallest_face_containing(d).is_some_and(|f| &f.cone == d)
    }

    fn face_of(&self, f: &Cone) -> Result<Face, Error> {
        match self.smallest_face_containing(f) {
            Some(face) if &face.cone == f => Ok(face),
            _ => Err(Error::NotAFace),
        }
    }

    /// `N_F C = cone{facet normals active at F} + lin(C)^⊥`, the face of the
    /// polar cone dual to `F`.
    pub fn normal_cone(&self, f: &Cone) -> Result<Cone, Error> {
        let face = self.face_of(f)?;
        Ok(self.normal_cone_of_active(&face.active))
    }

    pub(crate) fn normal_cone_of_active(&self, active: &[usize]) -> Cone {
        // polar().rays == self.inequalities, in the same order.
        self.polar().face_from_ray_subset(active)
    }

    /// `T_F C = (N_F C)^∨`.
    pub fn tangent_cone(&self, f: &Cone) -> Result<Cone, Error> {
        Ok(self.normal_cone(f)?.polar())
    }

    /// All nonempty faces, ordered by dimension.
    pub fn face_lattice(&self) -> FaceLattice {
        let m = self.rays.len();
        let incidence: Vec<Vec<usize>> = self
            .inequalities
            .iter()
            .map(|a| (0..m).filter(|&j| dot(a, &self.rays[j]).is_zero()).collect())
            .collect();
        let mut family: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut stack = vec![(0..m).collect::<Vec<usize>>()];
        while let Some(set) = stack.pop() {
            if !family.insert(set.clone()) {
                continue;
            }
            for inc in &incidence {
                let meet: Vec<usize> = set.iter().copied().filter(|j| inc.contains(j)).collect();
                if !family.contains(&meet) {
                    stack.push(meet);
                }
            }
        }
        let mut faces: Vec<Face> = family
            .into_iter()
            .map(|ray_set| {
                let cone = self.face_from_ray_subset(&ray_set);
                let active = self.active_set_of(&cone);
                Face { cone, active, ray_set }
            })
            .collect();
        faces.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.ray_set.cmp(&b.ray_set)));
        FaceLattice { parent: self.clone(), faces }
    }

    /// Image under a linear map given by its matrix.
    pub fn linear_image(&self, m: &RatMatrix) -> Result<Cone, Error> {
        let map = |v: &IntVector| primitive_from_rational(&m.mul_vec(&to_rational(v)));
        let rays: Vec<IntVector> = self.rays.iter().map(map).collect();
        let lin: Vec<IntVector> = self.lineality.iter().map(map).collect();
        Cone::from_generators(m.rows(), &rays, &lin)
    }

    pub fn describe(&self) -> String {
        alloc::format!("{self}")
    }
}

fn fmt_vectors(f: &mut fmt::Formatter<'_>, vs: &[IntVector]) -> fmt::Result {
    write!(f, "[")?;
    for (i, v) in vs.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "(")?;
        for (j, x) in v.iter().enumerate() {
            if j > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")?;
    }
    write!(f, "]")
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cone(rays=")?;
        fmt_vectors(f, &self.rays)?;
        write!(f, ", lineality=")?;
        fmt_vectors(f, &self.lineality)?;
        write!(f, ")")
    }
}

/// A nonempty face of a parent cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    cone: Cone,
    active: Vec<usize>,
    ray_set: Vec<usize>,
}

impl Face {
    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    pub fn dim(&self) -> usize {
        self.cone.dim()
    }

    /// Indices of the parent's inequalities that are tight on the face.
    pub fn active_set(&self) -> &[usize] {
        &self.active
    }

    /// Indices of the parent's rays contained in the face.
    pub fn ray_set(&self) -> &[usize] {
        &self.ray_set
    }
}

/// The faces of a cone ordered by inclusion, graded by dimension.
#[derive(Clone, Debug)]
pub struct FaceLattice {
    parent: Cone,
    faces: Vec<Face>,
}

impl FaceLattice {
    pub fn parent(&self) -> &Cone {
        &self.parent
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// The lineality space.
    pub fn minimum(&self) -> &Face {
        &self.faces[0]
    }

    /// The cone itself.
    pub fn maximum(&self) -> &Face {
        self.faces.last().expect("a cone has at least one face")
    }

    pub fn faces_of_dim(&self, k: usize) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(move |f| f.dim() == k)
    }

    /// `faces[i] ⊆ faces[j]`.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        let big = &self.faces[j].ray_set;
        self.faces[i].ray_set.iter().all(|r| big.contains(r))
    }

    pub fn index_of(&self, cone: &Cone) -> Option<usize> {
        self.faces.iter().position(|f| &f.cone == cone)
    }

    /// Number of faces of each dimension `0..=d`.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; self.parent.ambient_dim + 1];
        for face in &self.faces {
            f[face.dim()] += 1;
        }
        f
    }

    pub fn normal_cone(&self, i: usize) -> Cone {
        self.parent.normal_cone_of_active(&self.faces[i].active)
    }
}

/// `x ∈ C` decided on a point given by integers, used by callers holding
/// primitive vectors.
pub fn sign_of(a: &[BigInt], x: &[BigInt]) -> core::cmp::Ordering {
    let v = dot(a, x);
    if v.is_positive() {
        core::cmp::Ordering::Greater
    } else if v.is_negative() {
        core::cmp::Ordering::Less
    } else {
        core::cmp::Ordering::Equal
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int_vector as iv, rat_vector};

    fn set(vs: &[&[i64]]) -> Vec<IntVector> {
        let mut v: Vec<IntVector> = vs.iter().map(|v| iv(v)).collect();
        v.sort();
        v
    }

    #[test]
    fn orthant_halfspaces() {
        let c = Cone::orthant(2);
        assert_eq!(c.inequalities(), set(&[&[-1, 0], &[0, -1]]).as_slice());
        assert!(c.equations().is_empty());
    }

    #[test]
    fn line_as_subspace() {
        let c = Cone::from_generators(2, &[], &[iv(&[1, 0])]).unwrap();
        assert_eq!(c.equations(), &[iv(&[0, 1])]);
        assert!(c.inequalities().is_empty());
        assert_eq!(c.dim(), 1);
        assert!(c.is_subspace());
    }

    #[test]
    fn wedge_halfspaces() {
        let c = Cone::from_rays(&[&[1, 0], &[1, 1]]);
        assert_eq!(c.inequalities(), set(&[&[0, -1], &[-1, 1]]).as_slice());
        // witness points for both containments
        assert!(c.contains(&rat_vector(&[2, 1])));
        assert!(!c.contains(&rat_vector(&[1, 2])));
        assert!(!c.contains(&rat_vector(&[1, -1])));
        let h = Cone::from_halfspaces(2, &[], &[iv(&[0, -1]), iv(&[-1, 1])]).unwrap();
        assert_eq!(h, c);
    }

    #[test]
    fn redundant_generators_removed() {
        let c = Cone::from_rays(&[&[1, 0], &[0, 1], &[1, 1], &[2, 3]]);
        assert_eq!(c, Cone::orthant(2));
        assert_eq!(c.rays().len(), 2);
    }

    #[test]
    fn mismatch_is_error() {
        assert!(matches!(
            Cone::from_generators(2, &[iv(&[1, 0, 0])], &[]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn face_lattice_counts() {
        assert_eq!(Cone::orthant(2).face_lattice().len(), 4);
        assert_eq!(Cone::orthant(3).face_lattice().len(), 8);
        assert_eq!(Cone::orthant(3).face_lattice().f_vector(), vec![1, 3, 3, 1]);
        let line = Cone::subspace(&Subspace::span(2, &[iv(&[1, 1])]));
        assert_eq!(line.face_lattice().len(), 1);
        let lat = Cone::orthant(2).face_lattice();
        assert_eq!(lat.minimum().cone(), &Cone::origin(2));
        assert_eq!(lat.maximum().cone(), &Cone::orthant(2));
    }

    #[test]
    fn face_cones_match_generator_construction() {
        let c = Cone::from_rays(&[&[1, 0, 1], &[0, 1, 1], &[-1, 0, 1], &[0, -1, 1]]);
        let lat = c.face_lattice();
        assert_eq!(lat.f_vector(), vec![1, 4, 4, 1]);
        for f in lat.faces() {
            let rays: Vec<IntVector> = f.ray_set().iter().map(|&i| c.rays()[i].clone()).collect();
            let direct = Cone::from_generators(3, &rays, c.lineality()).unwrap();
            assert_eq!(&direct, f.cone());
        }
    }

    #[test]
    fn polar_examples() {
        assert_eq!(Cone::orthant(2).polar(), Cone::orthant(2).negated());
        assert_eq!(Cone::full_space(3).polar(), Cone::origin(3));
        let h = Cone::halfspace(&iv(&[0, 1]));
        assert_eq!(h.polar(), Cone::from_rays(&[&[0, 1]]));
    }

    #[test]
    fn normal_cones() {
        let c = Cone::orthant(2);
        assert_eq!(c.normal_cone(&Cone::origin(2)).unwrap(), Cone::orthant(2).negated());
        assert_eq!(c.normal_cone(&c).unwrap(), Cone::origin(2));
        let h = Cone::halfspace(&iv(&[0, 1]));
        let boundary = Cone::subspace(&Subspace::span(2, &[iv(&[1, 0])]));
        assert_eq!(h.normal_cone(&boundary).unwrap(), Cone::from_rays(&[&[0, 1]]));
        assert!(matches!(c.normal_cone(&Cone::from_rays(&[&[1, 1]])), Err(Error::NotAFace)));
    }

    #[test]
    fn tangent_cones() {
        let c = Cone::orthant(2);
        let xray = Cone::from_rays(&[&[1, 0]]);
        let t = c.tangent_cone(&xray).unwrap();
        assert_eq!(t, Cone::halfspace(&iv(&[0, -1])));
        assert_eq!(c.tangent_cone(&c).unwrap(), Cone::full_space(2));
        let s = Cone::subspace(&Subspace::span(3, &[iv(&[1, 2, 3])]));
        assert_eq!(s.tangent_cone(&s).unwrap(), s);
    }

    #[test]
    fn sums_and_intersections() {
        let c = Cone::orthant(2);
        assert_eq!(c.minkowski_sum(&Cone::origin(2)).unwrap(), c);
        let s = Cone::from_rays(&[&[1, 0]]).minkowski_sum(&Cone::from_rays(&[&[0, 1]])).unwrap();
        assert_eq!(s, c);
        let xaxis = Cone::subspace(&Subspace::span(2, &[iv(&[1, 0])]));
        let lower = xaxis.minkowski_sum(&Cone::from_rays(&[&[0, -1]])).unwrap();
        assert_eq!(lower, Cone::halfspace(&iv(&[0, 1])));

        assert_eq!(c.intersect(&c.negated()).unwrap(), Cone::origin(2));
        assert_eq!(c.intersect(&c).unwrap(), c);
        let wedge = c.intersect(&Cone::halfspace(&iv(&[1, -1]))).unwrap();
        assert_eq!(wedge, Cone::from_rays(&[&[0, 1], &[1, 1]]));
    }

    #[test]
    fn relative_interior() {
        let c = Cone::orthant(2);
        assert!(c.relint_contains(&rat_vector(&[1, 1])));
        assert!(c.contains(&rat_vector(&[1, 0])));
        assert!(!c.relint_contains(&rat_vector(&[1, 0])));
        assert_eq!(Cone::from_rays(&[&[1, 1]]).relint_point(), rat_vector(&[1, 1]));
        let line = Cone::subspace(&Subspace::span(2, &[iv(&[1, 1])]));
        assert!(line.relint_contains(&line.relint_point()));
    }

    #[test]
    fn faces_detected() {
        let c = Cone::orthant(3);
        assert!(c.has_face(&Cone::from_rays(&[&[1, 0, 0], &[0, 1, 0]])));
        assert!(!c.has_face(&Cone::from_rays(&[&[1, 1, 0]])));
        assert!(!c.has_face(&Cone::from_rays(&[&[-1, 0, 0]])));
    }
}
