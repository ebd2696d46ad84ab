//! Central hyperplane arrangements inside a linear subspace `U`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::cells::enumerate_cells;
use crate::cone::Cone;
use crate::fan::Fan;
use crate::linalg::{dot, int_vector, is_zero, line_representative, IntVector, Subspace};
use crate::Error;

/// A finite set of hyperplanes `H_i = U ∩ n_i^⊥` of a subspace `U ⊆ Q^d`.
///
/// Normals are stored projected onto `U`, as primitive integer vectors with
/// positive leading entry, so a hyperplane of `U` has exactly one normal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arrangement {
    subspace: Subspace,
    normals: Vec<IntVector>,
}

fn normal_in(subspace: &Subspace, n: &[BigInt]) -> IntVector {
    if subspace.is_full() {
        line_representative(n.to_vec())
    } else {
        line_representative(subspace.project_int(n))
    }
}

impl Arrangement {
    /// Hyperplanes `U ∩ n^⊥`. A normal not in `U` is replaced by its
    /// projection onto `U`, which defines the same hyperplane.
    pub fn new(subspace: Subspace, normals: &[IntVector]) -> Result<Self, Error> {
        let d = subspace.ambient_dim();
        let mut seen = BTreeSet::new();
        let mut out = Vec::with_capacity(normals.len());
        for n in normals {
            if n.len() != d {
                return Err(Error::DimensionMismatch { expected: d, found: n.len() });
            }
            let m = normal_in(&subspace, n);
            if is_zero(&m) {
                return Err(Error::ZeroNormal);
            }
            if !seen.insert(m.clone()) {
                return Err(Error::ParallelNormals);
            }
            out.push(m);
        }
        Ok(Self { subspace, normals: out })
    }

    pub fn in_full_space(ambient_dim: usize, normals: &[IntVector]) -> Result<Self, Error> {
        Self::new(Subspace::full(ambient_dim), normals)
    }

    /// Convenience constructor in the full space from small integer normals.
    pub fn from_normals(normals: &[&[i64]]) -> Self {
        let d = normals.first().map_or(0, |n| n.len());
        let normals: Vec<IntVector> = normals.iter().map(|n| int_vector(n)).collect();
        Self::in_full_space(d, &normals).expect("valid arrangement")
    }

    /// Like `new`, but hyperplanes that coincide inside `U` are merged and
    /// normals vanishing on `U` are dropped.
    fn merged(subspace: Subspace, normals: &[IntVector]) -> Self {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for n in normals {
            let m = normal_in(&subspace, n);
            if !is_zero(&m) && seen.insert(m.clone()) {
                out.push(m);
            }
        }
        Self { subspace, normals: out }
    }

    pub fn empty(subspace: Subspace) -> Self {
        Self { subspace, normals: Vec::new() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.subspace.ambient_dim()
    }

    pub fn subspace(&self) -> &Subspace {
        &self.subspace
    }

    /// `dim U`.
    pub fn dim(&self) -> usize {
        self.subspace.dim()
    }

    pub fn normals(&self) -> &[IntVector] {
        &self.normals
    }

    pub fn len(&self) -> usize {
        self.normals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.normals.is_empty()
    }

    pub fn hyperplane(&self, i: usize) -> Subspace {
        self.subspace.meet_hyperplane(&self.normals[i])
    }

    /// The intersection of all hyperplanes (`U` if there are none).
    pub fn lineality(&self) -> Subspace {
        let mut rows = self.subspace.orthogonal_complement().basis().to_vec();
        rows.extend(self.normals.iter().cloned());
        Subspace::kernel(self.ambient_dim(), &rows)
    }

    pub fn rank(&self) -> usize {
        self.dim() - self.lineality().dim()
    }

    /// `Some(dim U)` for an arrangement of exactly one hyperplane.
    pub fn is_singleton(&self) -> Option<usize> {
        (self.normals.len() == 1).then(|| self.dim())
    }

    /// Index of the hyperplane `U ∩ normal^⊥`, if present.
    pub fn position(&self, normal: &[BigInt]) -> Option<usize> {
        if normal.len() != self.ambient_dim() {
            return None;
        }
        let m = normal_in(&self.subspace, normal);
        self.normals.iter().position(|n| *n == m)
    }

    pub fn deletion_at(&self, i: usize) -> Arrangement {
        let mut normals = self.normals.clone();
        normals.remove(i);
        Self { subspace: self.subspace.clone(), normals }
    }

    pub fn restriction_at(&self, i: usize) -> Arrangement {
        let h = self.hyperplane(i);
        let others: Vec<IntVector> = self
            .normals
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, n)| n.clone())
            .collect();
        Self::merged(h, &others)
    }

    /// `A \ H`.
    pub fn deletion(&self, normal: &[BigInt]) -> Result<Arrangement, Error> {
        let i = self.position(normal).ok_or(Error::UnknownHyperplane)?;
        Ok(self.deletion_at(i))
    }

    /// `A / H = {H' ∩ H : H' ∈ A \ H}`, an arrangement in `H`.
    pub fn restriction(&self, normal: &[BigInt]) -> Result<Arrangement, Error> {
        let i = self.position(normal).ok_or(Error::UnknownHyperplane)?;
        Ok(self.restriction_at(i))
    }

    /// Restriction to a flat `L`: `{H ∩ L : H ∈ A, L ⊄ H}` in `L`.
    pub fn restriction_to(&self, flat: &Subspace) -> Arrangement {
        Self::merged(flat.clone(), &self.normals)
    }

    /// `A_L = {H ∈ A : L ⊆ H}`, for a flat `L`.
    pub fn localization(&self, flat: &Subspace) -> Result<Arrangement, Error> {
        if flat.ambient_dim() != self.ambient_dim() {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim(), found: flat.ambient_dim() });
        }
        if !self.is_flat(flat) {
            return Err(Error::NotAFlat);
        }
        let normals = self
            .normals
            .iter()
            .filter(|n| flat.basis().iter().all(|b| dot(n, b).is_zero()))
            .cloned()
            .collect();
        Ok(Self { subspace: self.subspace.clone(), normals })
    }

    /// Whether `L` is an intersection of hyperplanes of the arrangement.
    pub fn is_flat(&self, l: &Subspace) -> bool {
        if !l.is_subspace_of(&self.subspace) {
            return false;
        }
        let mut rows = self.subspace.orthogonal_complement().basis().to_vec();
        rows.extend(
            self.normals.iter().filter(|n| l.basis().iter().all(|b| dot(n, b).is_zero())).cloned(),
        );
        Subspace::kernel(self.ambient_dim(), &rows) == *l
    }

    pub fn flats_lattice(&self) -> FlatsLattice {
        FlatsLattice::new(self)
    }

    /// `ōχ(t) = Σ_i w_i t^i` with `w_i = Σ_{dim L = i} |μ(U, L)|`.
    pub fn whitney_numbers(&self) -> CharPoly {
        let lattice = self.flats_lattice();
        let mut w = vec![0i64; self.dim() + 1];
        for (j, flat) in lattice.flats().iter().enumerate() {
            w[flat.dim()] += lattice.mobius(0, j).abs();
        }
        CharPoly::new(w)
    }

    /// `ōχ` by deletion and restriction down to singletons.
    pub fn char_poly_delres(&self) -> Result<CharPoly, Error> {
        if self.is_empty() {
            return Err(Error::EmptyArrangement);
        }
        let mut memo = BTreeMap::new();
        Ok(delres(self, &mut memo))
    }

    /// The closed chambers, as a fan with linear hull `U`.
    pub fn regions(&self) -> Fan {
        let d = self.ambient_dim();
        let eqs = self.subspace.orthogonal_complement().basis().to_vec();
        let cones = enumerate_cells(d, &eqs, &self.normals, false)
            .into_iter()
            .map(|cell| Cone::from_extreme_generators(d, cell.rays, cell.lineality))
            .collect();
        Fan::from_parts(d, cones, Some(self.subspace.clone()))
    }
}

fn delres(a: &Arrangement, memo: &mut BTreeMap<(Subspace, Vec<IntVector>), CharPoly>) -> CharPoly {
    if let Some(k) = a.is_singleton() {
        let mut c = vec![0; k + 1];
        c[k] = 1;
        c[k - 1] = 1;
        return CharPoly::new(c);
    }
    let mut key_normals = a.normals.clone();
    key_normals.sort();
    let key = (a.subspace.clone(), key_normals);
    if let Some(p) = memo.get(&key) {
        return p.clone();
    }
    let last = a.len() - 1;
    let p = delres(&a.deletion_at(last), memo).add(&delres(&a.restriction_at(last), memo));
    memo.insert(key, p.clone());
    p
}

/// The intersection lattice, ordered by reverse inclusion, with its Möbius
/// function.
#[derive(Clone, Debug)]
pub struct FlatsLattice {
    flats: Vec<Subspace>,
    containing: Vec<Vec<usize>>,
    mobius: Vec<Vec<i64>>,
}

impl FlatsLattice {
    fn new(a: &Arrangement) -> Self {
        let mut found: BTreeSet<Subspace> = BTreeSet::new();
        let mut stack = vec![a.subspace.clone()];
        while let Some(f) = stack.pop() {
            if found.contains(&f) {
                continue;
            }
            for n in &a.normals {
                if f.basis().iter().any(|b| !dot(n, b).is_zero()) {
                    let g = f.meet_hyperplane(n);
                    if !found.contains(&g) {
                        stack.push(g);
                    }
                }
            }
            found.insert(f);
        }
        let mut flats: Vec<Subspace> = found.into_iter().collect();
        flats.sort_by(|x, y| y.dim().cmp(&x.dim()).then_with(|| x.cmp(y)));
        let containing: Vec<Vec<usize>> = flats
            .iter()
            .map(|f| {
                (0..a.normals.len())
                    .filter(|&i| f.basis().iter().all(|b| dot(&a.normals[i], b).is_zero()))
                    .collect()
            })
            .collect();
        let n = flats.len();
        let mut lattice = Self { flats, containing, mobius: vec![vec![0; n]; n] };
        for i in 0..n {
            lattice.mobius[i][i] = 1;
            for j in i + 1..n {
                if !lattice.leq(i, j) {
                    continue;
                }
                let s: i64 = (i..j)
                    .filter(|&z| lattice.leq(i, z) && lattice.leq(z, j))
                    .map(|z| lattice.mobius[i][z])
                    .sum();
                lattice.mobius[i][j] = -s;
            }
        }
        lattice
    }

    /// Flats ordered by decreasing dimension; index 0 is `U`.
    pub fn flats(&self) -> &[Subspace] {
        &self.flats
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    /// Index of the top element, the intersection of all hyperplanes.
    pub fn top(&self) -> usize {
        self.flats.len() - 1
    }

    pub fn index_of(&self, flat: &Subspace) -> Option<usize> {
        self.flats.iter().position(|f| f == flat)
    }

    /// `flats[i] ≤ flats[j]` in the lattice, i.e. `flats[j] ⊆ flats[i]`.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        let small = &self.containing[j];
        self.containing[i].iter().all(|h| small.contains(h))
    }

    /// `μ(flats[i], flats[j])`, zero when incomparable.
    pub fn mobius(&self, i: usize, j: usize) -> i64 {
        self.mobius[i][j]
    }

    /// Indices of the hyperplanes containing `flats[i]`.
    pub fn hyperplanes_containing(&self, i: usize) -> &[usize] {
        &self.containing[i]
    }
}

/// A polynomial with integer coefficients, indexed by the power of `t`.
/// Trailing zero coefficients are removed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CharPoly {
    coefficients: Vec<i64>,
}

impl CharPoly {
    pub fn new(mut coefficients: Vec<i64>) -> Self {
        while coefficients.last() == Some(&0) {
            coefficients.pop();
        }
        Self { coefficients }
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coefficients
    }

    /// Coefficient of `t^i` (zero beyond the degree).
    pub fn coefficient(&self, i: usize) -> i64 {
        self.coefficients.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn eval(&self, t: i64) -> i64 {
        self.coefficients.iter().rev().fold(0, |acc, c| acc * t + c)
    }

    pub fn add(&self, other: &CharPoly) -> CharPoly {
        let n = self.coefficients.len().max(other.coefficients.len());
        CharPoly::new((0..n).map(|i| self.coefficient(i) + other.coefficient(i)).collect())
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coefficients.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c < 0 { '-' } else { '+' })?;
            }
            first = false;
            let a = c.unsigned_abs();
            match (i, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => write!(f, "t")?,
                (1, _) => write!(f, "{a}t")?,
                (_, 1) => write!(f, "t^{i}")?,
                _ => write!(f, "{a}t^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn iv(v: &[i64]) -> IntVector {
        int_vector(v)
    }

    #[test]
    fn empty_arrangement_lattice() {
        let a = Arrangement::empty(Subspace::full(2));
        let l = a.flats_lattice();
        assert_eq!(l.len(), 1);
        assert_eq!(l.mobius(0, 0), 1);
        assert_eq!(a.whitney_numbers().coefficients(), &[0, 0, 1]);
        assert_eq!(a.char_poly_delres(), Err(Error::EmptyArrangement));
    }

    #[test]
    fn coordinate_lines() {
        let a = Arrangement::from_normals(&[&[1, 0], &[0, 1]]);
        let l = a.flats_lattice();
        assert_eq!(l.len(), 4);
        let mu: Vec<i64> = (0..4).map(|j| l.mobius(0, j)).collect();
        assert_eq!(mu, vec![1, -1, -1, 1]);
        assert_eq!(a.whitney_numbers().coefficients(), &[1, 2, 1]);
        assert_eq!(a.char_poly_delres().unwrap().coefficients(), &[1, 2, 1]);
        assert_eq!(a.whitney_numbers().to_string(), "t^2 + 2t + 1");
    }

    #[test]
    fn generic_lines_and_planes() {
        let a = Arrangement::from_normals(&[&[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(a.whitney_numbers().coefficients(), &[2, 3, 1]);
        assert_eq!(a.char_poly_delres().unwrap(), a.whitney_numbers());
        assert_eq!(a.regions().len(), 6);

        let b = Arrangement::from_normals(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let l = b.flats_lattice();
        assert_eq!(l.len(), 8);
        assert!((0..8).all(|j| l.mobius(0, j).abs() == 1));
        assert_eq!(b.whitney_numbers().coefficients(), &[1, 3, 3, 1]);
        assert_eq!(b.regions().len(), 8);
    }

    #[test]
    fn singleton() {
        let a = Arrangement::from_normals(&[&[0, 1]]);
        assert_eq!(a.is_singleton(), Some(2));
        assert_eq!(a.whitney_numbers().coefficients(), &[0, 1, 1]);
        assert_eq!(a.char_poly_delres().unwrap().to_string(), "t^2 + t");
        let plane = Subspace::span(3, &[iv(&[1, 0, 0]), iv(&[0, 1, 0])]);
        let b = Arrangement::new(plane, &[iv(&[1, 0, 0])]).unwrap();
        assert_eq!(b.is_singleton(), Some(2));
        assert_eq!(Arrangement::empty(Subspace::full(2)).is_singleton(), None);
    }

    #[test]
    fn deletion_restriction_localization() {
        let a = Arrangement::from_normals(&[&[0, 1]]);
        let del = a.deletion(&iv(&[0, 1])).unwrap();
        assert!(del.is_empty());
        assert_eq!(del.subspace(), a.subspace());

        let b = Arrangement::from_normals(&[&[1, 0], &[0, 1]]);
        let xaxis = iv(&[0, 1]);
        let r = b.restriction(&xaxis).unwrap();
        assert_eq!(r.is_singleton(), Some(1));
        assert_eq!(r.subspace(), &Subspace::span(2, &[iv(&[1, 0])]));
        assert_eq!(b.deletion(&iv(&[1, 1])), Err(Error::UnknownHyperplane));

        let c = Arrangement::from_normals(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let zaxis = Subspace::span(3, &[iv(&[0, 0, 1])]);
        let loc = c.localization(&zaxis).unwrap();
        assert_eq!(loc.normals(), &[iv(&[1, 0, 0]), iv(&[0, 1, 0])]);
        let diag = Subspace::span(3, &[iv(&[1, 1, 1])]);
        assert_eq!(c.localization(&diag), Err(Error::NotAFlat));
    }

    #[test]
    fn restriction_merges_duplicates() {
        // x = 0 and x + z = 0 meet z = 0 in the same line
        let a = Arrangement::from_normals(&[&[1, 0, 0], &[1, 0, 1], &[0, 0, 1]]);
        let r = a.restriction(&iv(&[0, 0, 1])).unwrap();
        assert_eq!(r.len(), 1);
    }

    #[test]
    fn input_validation() {
        assert_eq!(Arrangement::in_full_space(2, &[iv(&[0, 0])]), Err(Error::ZeroNormal));
        assert_eq!(
            Arrangement::in_full_space(2, &[iv(&[1, 1]), iv(&[-2, -2])]),
            Err(Error::ParallelNormals)
        );
    }

    #[test]
    fn char_poly_display() {
        assert_eq!(CharPoly::new(vec![2, 3, 1]).to_string(), "t^2 + 3t + 2");
        assert_eq!(CharPoly::new(vec![0, 0, 0]).to_string(), "0");
        assert_eq!(CharPoly::new(vec![1, 3, 3, 1]).eval(1), 8);
        assert_eq!(CharPoly::new(vec![1, 3, 3, 1]).eval(-1), 0);
    }
}
