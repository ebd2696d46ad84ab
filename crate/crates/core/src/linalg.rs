//! Exact rational linear algebra.
//!
//! Everything here works over `BigInt`/`BigRational`; there is no floating
//! point. Vectors that describe geometry (rays, normals, basis vectors) are
//! kept as primitive integer vectors so that equal objects have equal
//! representations.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::dd::DdCone;

pub type Rational = BigRational;
pub type RatVector = Vec<Rational>;
pub type IntVector = Vec<BigInt>;

pub fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int_vector(values: &[i64]) -> IntVector {
    values.iter().map(|&v| BigInt::from(v)).collect()
}

pub fn rat_vector(values: &[i64]) -> RatVector {
    values.iter().map(|&v| Rational::from_integer(BigInt::from(v))).collect()
}

pub fn to_rational(v: &[BigInt]) -> RatVector {
    v.iter().cloned().map(Rational::from_integer).collect()
}

pub fn is_zero(v: &[BigInt]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_rat(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `a · x` for an integer vector `a` and a rational point `x`.
pub fn dot_mixed(a: &[BigInt], x: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), x.len());
    let mut acc = Rational::zero();
    for (ai, xi) in a.iter().zip(x) {
        if !ai.is_zero() {
            acc += xi * ai;
        }
    }
    acc
}

pub fn norm_sq(x: &[Rational]) -> Rational {
    dot_rat(x, x)
}

pub fn negate(v: &[BigInt]) -> IntVector {
    v.iter().map(|x| -x).collect()
}

pub fn sub_rat(a: &[Rational], b: &[Rational]) -> RatVector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add_int(a: &[BigInt], b: &[BigInt]) -> IntVector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Divides out the gcd of the entries. The zero vector is returned unchanged.
pub fn make_primitive(mut v: IntVector) -> IntVector {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in &mut v {
            *x /= &g;
        }
    }
    v
}

/// Positive multiple of a rational vector with coprime integer entries.
pub fn primitive_from_rational(v: &[Rational]) -> IntVector {
    let l = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let scaled = v.iter().map(|x| (x * &l).to_integer()).collect();
    make_primitive(scaled)
}

/// Primitive form with the first nonzero entry positive: the canonical
/// representative of a line through the origin.
pub fn line_representative(v: IntVector) -> IntVector {
    let v = make_primitive(v);
    match v.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => negate(&v),
        _ => v,
    }
}

/// Dense row-major rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    pub fn from_rows(cols: usize, rows: &[RatVector]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length mismatch");
            data.extend(r.iter().cloned());
        }
        Self { rows: rows.len(), cols, data }
    }

    pub fn from_int_rows(cols: usize, rows: &[IntVector]) -> Self {
        let rows: Vec<RatVector> = rows.iter().map(|r| to_rational(r)).collect();
        Self::from_rows(cols, &rows)
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<RatVector> = rows.iter().map(|r| rat_vector(r)).collect();
        Self::from_rows(cols, &rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul_vec(&self, x: &[Rational]) -> RatVector {
        assert_eq!(x.len(), self.cols);
        (0..self.rows).map(|r| dot_rat(self.row(r), x)).collect()
    }

    /// Rows scaled to primitive integer vectors (row space is unchanged).
    fn integer_rows(&self) -> Vec<IntVector> {
        (0..self.rows).map(|r| primitive_from_rational(self.row(r))).collect()
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Rank over the rationals.
pub fn rank(m: &RatMatrix) -> usize {
    rank_int(&m.integer_rows(), m.cols)
}

/// Rank of a list of integer row vectors, by fraction-free (Bareiss)
/// elimination.
pub fn rank_int(rows: &[IntVector], cols: usize) -> usize {
    let mut a: Vec<IntVector> = rows.to_vec();
    let n = a.len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        let Some(p) = (rank..n).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..n {
            for k in c + 1..cols {
                let v = &a[rank][c] * &a[r][k] - &a[r][c] * &a[rank][k];
                a[r][k] = v / &prev;
            }
            a[r][c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
        if rank == n {
            break;
        }
    }
    rank
}

/// Reduced row echelon form of the row space, each row rescaled to a
/// primitive integer vector with positive pivot. Zero rows are dropped, so
/// the result is a canonical basis of the row space.
pub fn canonical_row_basis(rows: &[IntVector], cols: usize) -> Vec<IntVector> {
    let mut a: Vec<RatVector> = rows.iter().map(|r| to_rational(r)).collect();
    let n = a.len();
    let mut pivot_row = 0;
    for c in 0..cols {
        if pivot_row == n {
            break;
        }
        let Some(p) = (pivot_row..n).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(pivot_row, p);
        let inv = a[pivot_row][c].recip();
        for k in c..cols {
            a[pivot_row][k] *= &inv;
        }
        for r in 0..n {
            if r != pivot_row && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for k in c..cols {
                    let v = &f * &a[pivot_row][k];
                    a[r][k] -= v;
                }
            }
        }
        pivot_row += 1;
    }
    a.truncate(pivot_row);
    a.iter().map(|r| primitive_from_rational(r)).collect()
}

/// Basis of `{x : r·x = 0 for every row r}`.
pub fn nullspace(rows: &[IntVector], cols: usize) -> Vec<IntVector> {
    let reduced = canonical_row_basis(rows, cols);
    let mut pivots = Vec::with_capacity(reduced.len());
    for r in &reduced {
        let p = r.iter().position(|x| !x.is_zero()).expect("nonzero row");
        pivots.push(p);
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        // x_free = 1, x_pivot = -row[free] / row[pivot]
        let mut x = vec![Rational::zero(); cols];
        x[free] = Rational::one();
        for (r, &p) in reduced.iter().zip(&pivots) {
            x[p] = -Rational::new(r[free].clone(), r[p].clone());
        }
        basis.push(primitive_from_rational(&x));
    }
    basis
}

/// Solves `m x = b` for square invertible `m`. Returns `None` if singular.
pub fn solve(m: &RatMatrix, b: &[Rational]) -> Option<RatVector> {
    let n = m.rows;
    assert_eq!(m.cols, n, "solve expects a square matrix");
    assert_eq!(b.len(), n);
    let mut a: Vec<RatVector> = (0..n)
        .map(|r| {
            let mut row = m.row(r).to_vec();
            row.push(b[r].clone());
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        let inv = a[c][c].recip();
        for k in c..=n {
            a[c][k] *= &inv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for k in c..=n {
                    let v = &f * &a[c][k];
                    a[r][k] -= v;
                }
            }
        }
    }
    Some(a.into_iter().map(|mut row| row.pop().expect("augmented column")).collect())
}

/// A linear subspace of `Q^d`, stored by its canonical row-reduced basis.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<IntVector>,
}

impl Subspace {
    pub fn span(ambient_dim: usize, vectors: &[IntVector]) -> Self {
        for v in vectors {
            assert_eq!(v.len(), ambient_dim, "vector dimension mismatch");
        }
        Self { ambient_dim, basis: canonical_row_basis(vectors, ambient_dim) }
    }

    pub fn span_rational(ambient_dim: usize, vectors: &[RatVector]) -> Self {
        let ints: Vec<IntVector> = vectors.iter().map(|v| primitive_from_rational(v)).collect();
        Self::span(ambient_dim, &ints)
    }

    pub fn full(ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim)
            .map(|i| (0..ambient_dim).map(|j| BigInt::from((i == j) as i64)).collect())
            .collect();
        Self { ambient_dim, basis }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Self { ambient_dim, basis: Vec::new() }
    }

    /// The solution space of `{x : r·x = 0}`.
    pub fn kernel(ambient_dim: usize, rows: &[IntVector]) -> Self {
        Self { ambient_dim, basis: canonical_row_basis(&nullspace(rows, ambient_dim), ambient_dim) }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[IntVector] {
        &self.basis
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    pub fn orthogonal_complement(&self) -> Self {
        Self::kernel(self.ambient_dim, &self.basis)
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        if is_zero(x) {
            return true;
        }
        let mut rows = self.basis.clone();
        rows.push(x.to_vec());
        rank_int(&rows, self.ambient_dim) == self.dim()
    }

    pub fn contains_rational(&self, x: &[Rational]) -> bool {
        self.contains(&primitive_from_rational(x))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    pub fn sum(&self, other: &Subspace) -> Self {
        let mut v = self.basis.clone();
        v.extend(other.basis.iter().cloned());
        Self::span(self.ambient_dim, &v)
    }

    pub fn intersection(&self, other: &Subspace) -> Self {
        let mut normals = self.orthogonal_complement().basis;
        normals.extend(other.orthogonal_complement().basis);
        Self::kernel(self.ambient_dim, &normals)
    }

    /// Intersection with the hyperplane `normal^⊥`.
    pub fn meet_hyperplane(&self, normal: &[BigInt]) -> Self {
        let mut normals = self.orthogonal_complement().basis;
        normals.push(normal.to_vec());
        Self::kernel(self.ambient_dim, &normals)
    }

    /// Orthogonal projection, via the normal equations `G c = B x`.
    pub fn project(&self, x: &[Rational]) -> RatVector {
        assert_eq!(x.len(), self.ambient_dim, "point dimension mismatch");
        let k = self.dim();
        if k == 0 {
            return vec![Rational::zero(); self.ambient_dim];
        }
        if k == self.ambient_dim {
            return x.to_vec();
        }
        let mut gram = RatMatrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                gram.data[i * k + j] = Rational::from_integer(dot(&self.basis[i], &self.basis[j]));
            }
        }
        let rhs: RatVector = self.basis.iter().map(|b| dot_mixed(b, x)).collect();
        let coeffs = solve(&gram, &rhs).expect("basis vectors are independent");
        let mut y = vec![Rational::zero(); self.ambient_dim];
        for (c, b) in coeffs.iter().zip(&self.basis) {
            for (yi, bi) in y.iter_mut().zip(b) {
                *yi += c * bi;
            }
        }
        y
    }

    /// Projection of an integer vector, rescaled to a primitive integer vector.
    pub fn project_int(&self, x: &[BigInt]) -> IntVector {
        primitive_from_rational(&self.project(&to_rational(x)))
    }

    /// Squared Euclidean distance from `x` to the subspace.
    pub fn distance_sq(&self, x: &[Rational]) -> Rational {
        norm_sq(&sub_rat(x, &self.project(x)))
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{{")?;
        for (i, b) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "(")?;
            for (j, x) in b.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        write!(f, "}} in Q^{}", self.ambient_dim)
    }
}

/// Decides whether the homogeneous system
/// `e·x = 0 (e ∈ equalities)`, `s·x > 0 (s ∈ strict)`, `w·x ≥ 0 (w ∈ weak)`
/// has a solution, returning a rational witness if so.
///
/// Strict inequalities are handled through the closure: the closed cone
/// `K = {e·x = 0, s·x ≥ 0, w·x ≥ 0}` is converted to generators by double
/// description, and the sum of its extreme rays lies in the relative interior
/// of `K`. A strict constraint `s` is satisfiable on `K` iff it is positive on
/// some ray, and then it is positive on the ray sum, so the ray sum is a
/// witness for the whole system whenever one exists.
pub fn feasible(
    ambient_dim: usize,
    equalities: &[RatVector],
    strict: &[RatVector],
    weak: &[RatVector],
) -> Option<RatVector> {
    let to_int = |v: &RatVector| {
        assert_eq!(v.len(), ambient_dim, "constraint dimension mismatch");
        primitive_from_rational(v)
    };
    let eqs: Vec<IntVector> = equalities.iter().map(to_int).collect();
    let strict: Vec<IntVector> = strict.iter().map(to_int).collect();
    let weak: Vec<IntVector> = weak.iter().map(to_int).collect();

    let mut cone = DdCone::full(ambient_dim);
    for e in &eqs {
        cone.add_equality(e);
    }
    for s in strict.iter().chain(&weak) {
        cone.add_inequality(&negate(s));
    }
    let witness = cone.ray_sum();
    if strict.iter().all(|s| dot(s, &witness).is_positive()) {
        Some(to_rational(&witness))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sub(d: usize, vs: &[&[i64]]) -> Subspace {
        let v: Vec<IntVector> = vs.iter().map(|v| int_vector(v)).collect();
        Subspace::span(d, &v)
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&RatMatrix::identity(2)), 2);
        assert_eq!(rank(&RatMatrix::zeros(3, 2)), 0);
        assert_eq!(rank(&RatMatrix::from_i64(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&RatMatrix::from_i64(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]])), 2);
    }

    #[test]
    fn rank_with_fractions() {
        let m = RatMatrix::from_rows(2, &[vec![rat(1, 2), rat(1, 3)], vec![rat(3, 1), rat(2, 1)]]);
        assert_eq!(rank(&m), 1);
    }

    #[test]
    fn complement_examples() {
        let s = sub(2, &[&[1, 0]]);
        assert_eq!(s.orthogonal_complement(), sub(2, &[&[0, 1]]));
        assert_eq!(Subspace::zero(3).orthogonal_complement(), Subspace::full(3));
        let c = sub(3, &[&[1, 1, 0]]).orthogonal_complement();
        assert_eq!(c.dim(), 2);
        assert_eq!(c, sub(3, &[&[1, -1, 0], &[0, 0, 1]]));
        for b in c.basis() {
            assert!(dot(b, &int_vector(&[1, 1, 0])).is_zero());
        }
    }

    #[test]
    fn projection_examples() {
        let s = sub(2, &[&[1, 0]]);
        assert_eq!(s.project(&rat_vector(&[3, 4])), rat_vector(&[3, 0]));
        let t = sub(3, &[&[1, 1, 0]]);
        assert_eq!(t.project(&rat_vector(&[1, 1, 1])), rat_vector(&[1, 1, 0]));
        assert_eq!(t.project(&rat_vector(&[2, 2, 0])), rat_vector(&[2, 2, 0]));
        assert_eq!(t.project(&rat_vector(&[1, 0, 0])), vec![rat(1, 2), rat(1, 2), rat(0, 1)]);
    }

    #[test]
    fn feasibility_examples() {
        let e1 = rat_vector(&[1]);
        let m1 = rat_vector(&[-1]);
        assert!(feasible(1, &[], &[e1.clone(), m1], &[]).is_none());

        let w = feasible(2, &[], &[rat_vector(&[1, 0]), rat_vector(&[0, 1])], &[]).unwrap();
        assert_eq!(w, rat_vector(&[1, 1]));

        let w = feasible(2, &[rat_vector(&[1, 1])], &[rat_vector(&[1, 0])], &[]).unwrap();
        assert_eq!(w, rat_vector(&[1, -1]));
    }

    #[test]
    fn feasibility_weak_only_and_degenerate() {
        // x1 >= 0, -x1 >= 0 forces x1 = 0 but is feasible (x = 0).
        assert!(feasible(2, &[], &[], &[rat_vector(&[1, 0]), rat_vector(&[-1, 0])]).is_some());
        // ... while x2 > 0 can still be satisfied on that line.
        let w = feasible(2, &[], &[rat_vector(&[0, 1])], &[rat_vector(&[1, 0]), rat_vector(&[-1, 0])])
            .unwrap();
        assert!(w[0].is_zero() && w[1].is_positive());
        // x1 > 0 with x1 = 0 is infeasible.
        assert!(feasible(2, &[rat_vector(&[1, 0])], &[rat_vector(&[1, 0])], &[]).is_none());
    }

    #[test]
    fn nullspace_and_kernel() {
        let k = Subspace::kernel(3, &[int_vector(&[1, 1, 1])]);
        assert_eq!(k.dim(), 2);
        assert!(k.contains(&int_vector(&[1, -1, 0])));
        assert!(!k.contains(&int_vector(&[1, 0, 0])));
    }

    #[test]
    fn intersection_and_sum() {
        let a = sub(3, &[&[1, 0, 0], &[0, 1, 0]]);
        let b = sub(3, &[&[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(a.intersection(&b), sub(3, &[&[0, 1, 0]]));
        assert_eq!(a.sum(&b), Subspace::full(3));
        assert_eq!(a.meet_hyperplane(&int_vector(&[1, 1, 0])), sub(3, &[&[1, -1, 0]]));
    }

    #[test]
    fn primitive_forms() {
        assert_eq!(make_primitive(int_vector(&[4, -6, 0])), int_vector(&[2, -3, 0]));
        assert_eq!(line_representative(int_vector(&[0, -2, 4])), int_vector(&[0, 1, -2]));
        assert_eq!(primitive_from_rational(&[rat(1, 2), rat(-1, 3)]), int_vector(&[3, -2]));
    }

    #[test]
    fn solve_square() {
        let m = RatMatrix::from_i64(&[&[2, 1], &[1, 3]]);
        let x = solve(&m, &rat_vector(&[3, 5])).unwrap();
        assert_eq!(x, vec![rat(4, 5), rat(7, 5)]);
        assert!(solve(&RatMatrix::from_i64(&[&[1, 2], &[2, 4]]), &rat_vector(&[1, 1])).is_none());
    }
}
