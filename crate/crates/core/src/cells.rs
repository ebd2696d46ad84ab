//! Enumeration of the nonempty relatively open cells `{x ∈ U : sign(n_i·x) = σ_i}`
//! cut out by a list of linear hyperplanes, by depth-first search over sign
//! vectors with an incremental double description of each closure.

use alloc::vec::Vec;

use num_traits::Signed;

use crate::dd::DdCone;
use crate::linalg::{dot, negate, IntVector};

/// Sign of a linear form on a cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }
}

pub(crate) struct Cell {
    pub signs: Vec<Sign>,
    /// A point of the cell: the sum of the extreme rays of its closure.
    pub witness: IntVector,
    pub rays: Vec<IntVector>,
    pub lineality: Vec<IntVector>,
}

struct Search<'a> {
    normals: &'a [IntVector],
    allow_zero: bool,
    out: Vec<Cell>,
}

impl Search<'_> {
    fn visit(&mut self, cone: DdCone, signs: &mut Vec<Sign>) {
        let i = signs.len();
        if i == self.normals.len() {
            let witness = cone.ray_sum();
            let (rays, lineality) = cone.into_parts();
            self.out.push(Cell { signs: signs.clone(), witness, rays, lineality });
            return;
        }
        let n = &self.normals[i];
        let choices: &[Sign] = if self.allow_zero {
            &[Sign::Negative, Sign::Zero, Sign::Positive]
        } else {
            &[Sign::Negative, Sign::Positive]
        };
        for &s in choices {
            let mut next = cone.clone();
            match s {
                Sign::Zero => next.add_equality(n),
                Sign::Positive => next.add_inequality(&negate(n)),
                Sign::Negative => next.add_inequality(n),
            }
            signs.push(s);
            if self.strictly_satisfied(&next, signs) {
                self.visit(next, signs);
            }
            signs.pop();
        }
    }

    /// Whether the open cell with these signs is nonempty, given the
    /// generators of its closure.
    fn strictly_satisfied(&self, closure: &DdCone, signs: &[Sign]) -> bool {
        let w = closure.ray_sum();
        signs.iter().zip(self.normals).all(|(s, n)| match s {
            Sign::Zero => true,
            Sign::Positive => dot(n, &w).is_positive(),
            Sign::Negative => dot(n, &w).is_negative(),
        })
    }
}

/// All nonempty cells of the hyperplanes `normals` inside
/// `{x : e·x = 0, e ∈ equations}`. With `allow_zero == false` only the
/// open chambers are returned.
pub(crate) fn enumerate_cells(
    dim: usize,
    equations: &[IntVector],
    normals: &[IntVector],
    allow_zero: bool,
) -> Vec<Cell> {
    let mut start = DdCone::full(dim);
    for e in equations {
        start.add_equality(e);
    }
    let mut search = Search { normals, allow_zero, out: Vec::new() };
    search.visit(start, &mut Vec::with_capacity(normals.len()));
    search.out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int_vector as iv;

    #[test]
    fn coordinate_lines() {
        let normals = [iv(&[1, 0]), iv(&[0, 1])];
        assert_eq!(enumerate_cells(2, &[], &normals, false).len(), 4);
        // 4 quadrants, 4 half-axes, origin
        assert_eq!(enumerate_cells(2, &[], &normals, true).len(), 9);
    }

    #[test]
    fn generic_lines() {
        let normals = [iv(&[1, 0]), iv(&[0, 1]), iv(&[1, 1])];
        assert_eq!(enumerate_cells(2, &[], &normals, false).len(), 6);
        assert_eq!(enumerate_cells(2, &[], &normals, true).len(), 13);
    }

    #[test]
    fn witnesses_have_the_signs() {
        let normals = [iv(&[1, 0, 0]), iv(&[1, 1, 0]), iv(&[0, 1, -1])];
        for cell in enumerate_cells(3, &[], &normals, true) {
            for (s, n) in cell.signs.iter().zip(&normals) {
                let v = dot(n, &cell.witness);
                assert_eq!(v.signum(), num_bigint::BigInt::from(s.as_i8()));
            }
        }
    }

    #[test]
    fn restricted_to_subspace() {
        // the plane z = 0 cut by x = 0 and y = 0
        let cells = enumerate_cells(3, &[iv(&[0, 0, 1])], &[iv(&[1, 0, 0]), iv(&[0, 1, 0])], false);
        assert_eq!(cells.len(), 4);
    }
}
