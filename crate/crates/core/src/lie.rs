//! Matrix models of sl(n,ℝ) and sl(n,ℍ) with the dual-basis diagonal part.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::matrix::{Field, MatK};
use crate::quaternion::{Quaternion, Unit};
use crate::rational::Rational;
use crate::sparse::SparseVec;

/// A canonical basis element. Matrix indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisElement {
    /// Dual basis element `H^i` of the simple roots, `1 ≤ i ≤ n−1`.
    H(usize),
    /// `u·E_tt` for an imaginary unit `u` (quaternionic only).
    ImDiag { t: usize, unit: Unit },
    /// `u·E_ij`, `i ≠ j`.
    E { i: usize, j: usize, unit: Unit },
}

impl BasisElement {
    pub fn name(&self) -> String {
        let pair = |a: usize, b: usize| {
            if a < 10 && b < 10 {
                alloc::format!("{}{}", a, b)
            } else {
                alloc::format!("{},{}", a, b)
            }
        };
        match *self {
            BasisElement::H(i) => alloc::format!("H{}", i),
            BasisElement::ImDiag { t, unit } => alloc::format!("{}E{}", unit.prefix(), pair(t, t)),
            BasisElement::E { i, j, unit } => alloc::format!("{}E{}", unit.prefix(), pair(i, j)),
        }
    }

    /// The restricted root `λ_i − λ_j` carried by this element, if any.
    pub fn root(&self) -> Option<(usize, usize)> {
        match *self {
            BasisElement::E { i, j, .. } => Some((i, j)),
            _ => None,
        }
    }

    pub fn is_centralizer(&self) -> bool {
        self.root().is_none()
    }
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// `H^i = (1/n)·diag(n−i, …, n−i, −i, …, −i)` with `i` leading entries.
pub fn dual_basis_h(field: Field, n: usize, i: usize) -> MatK {
    assert!(1 <= i && i < n, "H^i needs 1 ≤ i ≤ n−1");
    let d: Vec<Rational> = (1..=n)
        .map(|t| if t <= i { Rational::new((n - i) as i64, n as i64) } else { Rational::new(-(i as i64), n as i64) })
        .collect();
    MatK::diag(field, &d)
}

/// Coefficients of `λ_i − λ_j` in the simple roots `α_1 … α_{n−1}`.
pub fn root_in_simple_coordinates(n: usize, i: usize, j: usize) -> Vec<i64> {
    let mut c = vec![0i64; n - 1];
    let (lo, hi, sign) = if i < j { (i, j, 1) } else { (j, i, -1) };
    for k in lo..hi {
        c[k - 1] = sign;
    }
    c
}

/// sl(n,𝕂) with its canonical ordered basis and cached structure constants.
pub struct LieAlgebraModel {
    field: Field,
    n: usize,
    basis: Vec<BasisElement>,
    index: BTreeMap<BasisElement, usize>,
    matrices: Vec<MatK>,
    brackets: Vec<SparseVec>,
}

impl fmt::Debug for LieAlgebraModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sl({}, {})", self.n, if self.field == Field::Real { "R" } else { "H" })
    }
}

impl LieAlgebraModel {
    pub fn build(field: Field, n: usize) -> Result<Arc<Self>> {
        if n < 2 {
            return Err(Error::InvalidInput(alloc::format!("matrix size must be at least 2, got {}", n)));
        }
        let mut basis = Vec::new();
        basis.extend((1..n).map(BasisElement::H));
        if field == Field::Quaternion {
            for t in 1..=n {
                for unit in Unit::IMAGINARY {
                    basis.push(BasisElement::ImDiag { t, unit });
                }
            }
        }
        let units: &[Unit] = if field == Field::Real { &[Unit::One] } else { &Unit::ALL };
        for i in 1..=n {
            for j in 1..=n {
                if i != j {
                    for &unit in units {
                        basis.push(BasisElement::E { i, j, unit });
                    }
                }
            }
        }
        let index = basis.iter().enumerate().map(|(k, b)| (*b, k)).collect();
        let matrices = basis.iter().map(|b| element_matrix(field, n, b)).collect();
        let mut model = LieAlgebraModel { field, n, basis, index, matrices, brackets: Vec::new() };
        let m = model.dim();
        let mut brackets = vec![SparseVec::new(); m * m];
        for a in 0..m {
            for b in a + 1..m {
                let c = model.matrices[a].commutator(&model.matrices[b]);
                let v = model.coordinates(&c).expect("sl is closed under the bracket");
                brackets[b * m + a] = v.neg();
                brackets[a * m + b] = v;
            }
        }
        model.brackets = brackets;
        Ok(Arc::new(model))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Matrix size.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn element(&self, a: usize) -> BasisElement {
        self.basis[a]
    }

    pub fn index_of(&self, b: &BasisElement) -> Option<usize> {
        self.index.get(b).copied()
    }

    pub fn matrix(&self, a: usize) -> &MatK {
        &self.matrices[a]
    }

    /// Coordinates of `[X_a, X_b]`.
    pub fn bracket(&self, a: usize, b: usize) -> &SparseVec {
        &self.brackets[a * self.dim() + b]
    }

    pub fn bracket_elements(&self, a: &BasisElement, b: &BasisElement) -> Option<&SparseVec> {
        Some(self.bracket(self.index_of(a)?, self.index_of(b)?))
    }

    /// Matrix of a coordinate vector.
    pub fn realize(&self, v: &SparseVec) -> MatK {
        let mut out = MatK::zero(self.field, self.n);
        for (a, c) in v.iter() {
            out = out.add(&self.matrices[a].scale(c));
        }
        out
    }

    /// Unique expansion of a Re-traceless matrix in the basis. Diagonal real
    /// parts contribute `α_i(D) = d_i − d_{i+1}` on `H^i`.
    pub fn coordinates(&self, m: &MatK) -> Result<SparseVec> {
        if m.size() != self.n {
            return Err(Error::NotInAlgebra);
        }
        if !m.re_trace().is_zero() {
            return Err(Error::NotInAlgebra);
        }
        let n = self.n;
        let mut pairs = Vec::new();
        for i in 1..n {
            let c = &m.get(i - 1, i - 1).re - &m.get(i, i).re;
            pairs.push((self.index[&BasisElement::H(i)], c));
        }
        for i in 1..=n {
            for j in 1..=n {
                let q = m.get(i - 1, j - 1);
                if q.is_zero() {
                    continue;
                }
                for unit in Unit::ALL {
                    let c = q.component(unit);
                    if c.is_zero() || (i == j && unit == Unit::One) {
                        continue;
                    }
                    let element = if i == j { BasisElement::ImDiag { t: i, unit } } else { BasisElement::E { i, j, unit } };
                    match self.index.get(&element) {
                        Some(&k) => pairs.push((k, c.clone())),
                        None => return Err(Error::NotInAlgebra),
                    }
                }
            }
        }
        Ok(SparseVec::from_pairs(pairs))
    }

    /// Value of the simple root `α_i` on a diagonal real matrix.
    pub fn simple_root_value(&self, i: usize, m: &MatK) -> Rational {
        &m.get(i - 1, i - 1).re - &m.get(i, i).re
    }
}

fn element_matrix(field: Field, n: usize, b: &BasisElement) -> MatK {
    match *b {
        BasisElement::H(i) => dual_basis_h(field, n, i),
        BasisElement::ImDiag { t, unit } => {
            let mut m = MatK::zero(field, n);
            m.set(t - 1, t - 1, Quaternion::unit(unit, Rational::one()));
            m
        }
        BasisElement::E { i, j, unit } => {
            let mut m = MatK::zero(field, n);
            m.set(i - 1, j - 1, Quaternion::unit(unit, Rational::one()));
            m
        }
    }
}

/// A subalgebra spanned by a subsequence of the parent's canonical basis.
#[derive(Clone)]
pub struct Subalgebra {
    model: Arc<LieAlgebraModel>,
    indices: Vec<usize>,
    positions: Vec<Option<usize>>,
}

impl fmt::Debug for Subalgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.indices.iter().map(|&a| self.model.element(a).name()).collect();
        write!(f, "Subalgebra{:?}", names)
    }
}

impl PartialEq for Subalgebra {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.model, &other.model) && self.indices == other.indices
    }
}

impl Subalgebra {
    pub fn full(model: &Arc<LieAlgebraModel>) -> Self {
        Subalgebra::spanned_unchecked(model, (0..model.dim()).collect())
    }

    /// Span of the given parent basis indices; fails unless closed under the
    /// bracket.
    pub fn from_indices(model: &Arc<LieAlgebraModel>, mut indices: Vec<usize>) -> Result<Self> {
        indices.sort_unstable();
        indices.dedup();
        if indices.iter().any(|&a| a >= model.dim()) {
            return Err(Error::InvalidInput("basis index out of range".into()));
        }
        let sub = Subalgebra::spanned_unchecked(model, indices);
        if !sub.is_bracket_closed() {
            return Err(Error::InvalidInput("span is not closed under the bracket".into()));
        }
        Ok(sub)
    }

    pub fn from_elements(model: &Arc<LieAlgebraModel>, elements: &[BasisElement]) -> Result<Self> {
        let indices = elements
            .iter()
            .map(|e| model.index_of(e).ok_or_else(|| Error::InvalidInput(alloc::format!("{} not in basis", e))))
            .collect::<Result<Vec<_>>>()?;
        Subalgebra::from_indices(model, indices)
    }

    pub(crate) fn spanned_unchecked(model: &Arc<LieAlgebraModel>, indices: Vec<usize>) -> Self {
        let mut positions = vec![None; model.dim()];
        for (p, &a) in indices.iter().enumerate() {
            positions[a] = Some(p);
        }
        Subalgebra { model: Arc::clone(model), indices, positions }
    }

    pub fn model(&self) -> &Arc<LieAlgebraModel> {
        &self.model
    }

    pub fn dim(&self) -> usize {
        self.indices.len()
    }

    /// Parent indices in canonical order.
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn elements(&self) -> Vec<BasisElement> {
        self.indices.iter().map(|&a| self.model.element(a)).collect()
    }

    pub fn element(&self, p: usize) -> BasisElement {
        self.model.element(self.indices[p])
    }

    pub fn names(&self) -> Vec<String> {
        self.elements().iter().map(BasisElement::name).collect()
    }

    /// Position of a parent index inside this subalgebra.
    pub fn position(&self, parent_index: usize) -> Option<usize> {
        self.positions[parent_index]
    }

    pub fn contains(&self, parent_index: usize) -> bool {
        self.positions[parent_index].is_some()
    }

    pub fn is_subset_of(&self, other: &Subalgebra) -> bool {
        Arc::ptr_eq(&self.model, &other.model) && self.indices.iter().all(|&a| other.contains(a))
    }

    /// Converts parent coordinates to local ones; `None` if `v` leaves the span.
    pub fn localize(&self, v: &SparseVec) -> Option<SparseVec> {
        v.reindex(|a| self.positions[a])
    }

    pub fn globalize(&self, v: &SparseVec) -> SparseVec {
        v.reindex(|p| Some(self.indices[p])).unwrap()
    }

    /// Structure constants in local coordinates.
    pub fn bracket(&self, p: usize, q: usize) -> SparseVec {
        let v = self.model.bracket(self.indices[p], self.indices[q]);
        self.localize(v).expect("subalgebra is bracket-closed")
    }

    pub fn is_bracket_closed(&self) -> bool {
        self.indices.iter().all(|&a| {
            self.indices.iter().all(|&b| self.model.bracket(a, b).indices().all(|c| self.positions[c].is_some()))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn idx(m: &LieAlgebraModel, b: BasisElement) -> usize {
        m.index_of(&b).unwrap()
    }

    fn e(i: usize, j: usize) -> BasisElement {
        BasisElement::E { i, j, unit: Unit::One }
    }

    #[test]
    fn dimensions_and_order() {
        let r2 = LieAlgebraModel::build(Field::Real, 2).unwrap();
        assert_eq!(r2.dim(), 3);
        assert_eq!(r2.basis(), &[BasisElement::H(1), e(1, 2), e(2, 1)]);
        assert_eq!(LieAlgebraModel::build(Field::Quaternion, 2).unwrap().dim(), 15);
        let r6 = LieAlgebraModel::build(Field::Real, 6).unwrap();
        assert_eq!(r6.dim(), 35);
        assert_eq!(r6.basis().iter().filter(|b| b.root().is_some()).count(), 30);
        assert!(LieAlgebraModel::build(Field::Real, 1).is_err());
        let h2 = LieAlgebraModel::build(Field::Quaternion, 2).unwrap();
        let names: Vec<String> = h2.basis().iter().take(5).map(|b| b.name()).collect();
        assert_eq!(names, ["H1", "iE11", "jE11", "kE11", "iE22"]);
        assert_eq!(h2.element(7).name(), "E12");
        assert_eq!(h2.element(8).name(), "iE12");
    }

    #[test]
    fn dual_basis_values() {
        let h = dual_basis_h(Field::Real, 2, 1);
        assert_eq!(h, MatK::diag(Field::Real, &[rat(1, 2), rat(-1, 2)]));
        let h = dual_basis_h(Field::Real, 4, 2);
        assert_eq!(h, MatK::diag(Field::Real, &[rat(1, 2), rat(1, 2), rat(-1, 2), rat(-1, 2)]));
        for n in 2..=7 {
            let m = LieAlgebraModel::build(Field::Real, n).unwrap();
            for i in 1..n {
                let h = dual_basis_h(Field::Real, n, i);
                for j in 1..n {
                    let expected = if i == j { Rational::one() } else { Rational::zero() };
                    assert_eq!(m.simple_root_value(j, &h), expected);
                }
            }
        }
    }

    #[test]
    fn bracket_examples() {
        let m = LieAlgebraModel::build(Field::Real, 2).unwrap();
        let v = m.bracket_elements(&e(1, 2), &e(2, 1)).unwrap();
        assert_eq!(*v, SparseVec::single(idx(&m, BasisElement::H(1)), rat(2, 1)));
        let m4 = LieAlgebraModel::build(Field::Real, 4).unwrap();
        assert!(m4.bracket_elements(&BasisElement::H(1), &BasisElement::H(3)).unwrap().is_zero());
        let v = m4.bracket_elements(&e(1, 2), &e(2, 4)).unwrap();
        assert_eq!(*v, SparseVec::unit(idx(&m4, e(1, 4))));
    }

    #[test]
    fn coordinate_examples() {
        let m4 = LieAlgebraModel::build(Field::Real, 4).unwrap();
        let d = MatK::diag(Field::Real, &[rat(1, 1), rat(-1, 1), rat(0, 1), rat(0, 1)]);
        let v = m4.coordinates(&d).unwrap();
        let expected = SparseVec::from_pairs(vec![(0, rat(2, 1)), (1, rat(-1, 1))]);
        assert_eq!(v, expected);
        let h1 = m4.matrix(0).clone();
        assert_eq!(m4.coordinates(&h1).unwrap(), SparseVec::unit(0));
        assert_eq!(m4.coordinates(&MatK::identity(Field::Real, 4)), Err(Error::NotInAlgebra));
    }

    #[test]
    fn realization_round_trip() {
        for (field, n) in [(Field::Real, 4), (Field::Quaternion, 3)] {
            let m = LieAlgebraModel::build(field, n).unwrap();
            for a in 0..m.dim() {
                assert_eq!(m.coordinates(m.matrix(a)).unwrap(), SparseVec::unit(a));
                assert!(m.matrix(a).re_trace().is_zero());
            }
        }
    }

    #[test]
    fn centralizer_commutes_with_diagonal() {
        let m = LieAlgebraModel::build(Field::Quaternion, 3).unwrap();
        for a in 0..m.dim() {
            if !m.element(a).is_centralizer() {
                continue;
            }
            for j in 1..3 {
                let h = idx(&m, BasisElement::H(j));
                assert!(m.bracket(a, h).is_zero());
            }
        }
    }

    #[test]
    fn subalgebra_closure_check() {
        let m = LieAlgebraModel::build(Field::Real, 2).unwrap();
        assert!(Subalgebra::from_elements(&m, &[BasisElement::H(1), e(1, 2)]).is_ok());
        assert!(Subalgebra::from_elements(&m, &[e(1, 2), e(2, 1)]).is_err());
    }
}
