use alloc::vec::Vec;

use super::IndicatorElement;
use crate::cells::{enumerate_cells, Sign};
use crate::linalg::{line_representative, IntVector};

/// An indicator element tabulated on the relatively open cells of a
/// refining arrangement. Every term cone is a union of such cells, so the
/// element is constant on each of them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    ambient_dim: usize,
    hyperplanes: Vec<IntVector>,
    cells: Vec<CanonicalCell>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalCell {
    pub signs: Vec<Sign>,
    pub witness: IntVector,
    pub value: i64,
}

impl CanonicalCell {
    pub fn is_full_dimensional(&self) -> bool {
        !self.signs.contains(&Sign::Zero)
    }
}

impl CanonicalForm {
    /// Tabulates `f` on the arrangement of all facet hyperplanes and all
    /// linear-hull equations of its terms.
    pub fn new(f: &IndicatorElement) -> Self {
        Self::over(f, refinement(&[f]))
    }

    /// Tabulates `f` on a given arrangement, which must refine every term.
    pub fn over(f: &IndicatorElement, hyperplanes: Vec<IntVector>) -> Self {
        let d = f.ambient_dim();
        let cells = enumerate_cells(d, &[], &hyperplanes, true)
            .into_iter()
            .map(|c| {
                let value = f.evaluate_int(&c.witness);
                CanonicalCell { signs: c.signs, witness: c.witness, value }
            })
            .collect();
        Self { ambient_dim: d, hyperplanes, cells }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn hyperplanes(&self) -> &[IntVector] {
        &self.hyperplanes
    }

    pub fn cells(&self) -> &[CanonicalCell] {
        &self.cells
    }

    pub fn is_zero(&self) -> bool {
        self.cells.iter().all(|c| c.value == 0)
    }

    /// Zero on every open chamber, i.e. zero almost everywhere.
    pub fn is_simple_zero(&self) -> bool {
        self.cells.iter().filter(|c| c.is_full_dimensional()).all(|c| c.value == 0)
    }

    /// Cells on which the tabulated value is nonzero.
    pub fn nonzero_cells(&self) -> usize {
        self.cells.iter().filter(|c| c.value != 0).count()
    }

    pub fn nonzero_chambers(&self) -> usize {
        self.cells.iter().filter(|c| c.value != 0 && c.is_full_dimensional()).count()
    }
}

/// Sorted, deduplicated hyperplanes refining every term of every element.
pub(crate) fn refinement(elements: &[&IndicatorElement]) -> Vec<IntVector> {
    let mut out: Vec<IntVector> = elements
        .iter()
        .flat_map(|f| f.terms())
        .flat_map(|(c, _)| c.inequalities().iter().chain(c.equations()))
        .map(|n| line_representative(n.clone()))
        .collect();
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::Cone;
    use crate::linalg::{int_vector as iv, Subspace};

    #[test]
    fn valuation_identity_is_exact() {
        let c = Cone::orthant(2);
        let h = iv(&[1, -1]);
        let lhs = IndicatorElement::cone(c.clone());
        let rhs = IndicatorElement::cone(c.cut(&h))
            .add(&IndicatorElement::cone(c.cut(&crate::linalg::negate(&h))))
            .sub(&IndicatorElement::cone(c.slice(&h)));
        assert!(lhs.equal(&rhs));
    }

    #[test]
    fn boundary_is_invisible_to_simple_equality() {
        let half = IndicatorElement::cone(Cone::halfspace(&iv(&[0, 1])));
        let line = IndicatorElement::cone(Cone::subspace(&Subspace::span(2, &[iv(&[1, 0])])));
        let both = half.add(&line);
        assert!(!half.equal(&both));
        assert!(half.simple_equal(&both));
    }

    #[test]
    fn tabulated_values_match_evaluation() {
        let f = IndicatorElement::cone(Cone::orthant(3))
            .sub(&IndicatorElement::cone(Cone::from_rays(&[&[1, 1, 0], &[0, 0, 1]])).scale(2));
        let form = f.canonicalize();
        assert_eq!(form.hyperplanes().len(), 5);
        for cell in form.cells() {
            assert_eq!(cell.value, f.evaluate_int(&cell.witness));
        }
        assert!(!form.is_zero());
    }

    #[test]
    fn zero_element() {
        let form = IndicatorElement::zero(2).canonicalize();
        assert_eq!(form.cells().len(), 1);
        assert!(form.is_zero());
    }
}
