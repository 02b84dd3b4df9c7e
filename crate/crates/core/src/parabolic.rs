//! Simple-root subsets, characteristic elements, gradations, parabolic and
//! solvable subalgebras of sl(n,𝕂).

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::lie::{root_in_simple_coordinates, BasisElement, LieAlgebraModel, Subalgebra};

/// A proper subset `Λ′` of the simple roots `{α_1, …, α_{n−1}}`, stored as
/// strictly increasing 1-based indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleRootSubset {
    n: usize,
    indices: Vec<usize>,
}

impl SimpleRootSubset {
    pub fn new(n: usize, indices: &[usize]) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidSubset(alloc::format!("matrix size must be at least 2, got {}", n)));
        }
        let mut sorted = indices.to_vec();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidSubset("duplicate simple root".into()));
        }
        if let Some(&bad) = sorted.iter().find(|&&i| i == 0 || i >= n) {
            return Err(Error::InvalidSubset(alloc::format!("alpha_{} is not a simple root of sl({})", bad, n)));
        }
        if sorted.len() == n - 1 {
            return Err(Error::InvalidSubset("the full set of simple roots is not a proper subset".into()));
        }
        Ok(SimpleRootSubset { n, indices: sorted })
    }

    pub fn empty(n: usize) -> Self {
        SimpleRootSubset { n, indices: Vec::new() }
    }

    /// Parses `"1,3,5"` or `"empty"`.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let text = text.trim();
        if text.eq_ignore_ascii_case("empty") || text.is_empty() {
            return SimpleRootSubset::new(n, &[]);
        }
        let indices = text
            .split(',')
            .map(|t| usize::from_str(t.trim()).map_err(|_| Error::InvalidSubset(alloc::format!("bad index `{}`", t))))
            .collect::<Result<Vec<_>>>()?;
        SimpleRootSubset::new(n, &indices)
    }

    /// Every proper subset, ordered by the bitmask `Σ 2^{i−1}`.
    pub fn all_proper(n: usize) -> Vec<SimpleRootSubset> {
        let r = n - 1;
        (0u64..(1u64 << r) - 1)
            .map(|mask| SimpleRootSubset { n, indices: (1..=r).filter(|i| mask & (1 << (i - 1)) != 0).collect() })
            .collect()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// Indices of the simple roots outside the subset.
    pub fn complement(&self) -> Vec<usize> {
        (1..self.n).filter(|i| !self.contains(*i)).collect()
    }

    /// `"1,3,5"`, or `"empty"`.
    pub fn label(&self) -> String {
        if self.indices.is_empty() {
            return String::from("empty");
        }
        let parts: Vec<String> = self.indices.iter().map(|i| alloc::format!("{}", i)).collect();
        parts.join(",")
    }
}

impl fmt::Display for SimpleRootSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// `Z = Σ H^i` over the simple roots outside the subset, as H-coordinates.
pub fn characteristic_element(subset: &SimpleRootSubset) -> Vec<i64> {
    (1..subset.n).map(|i| if subset.contains(i) { 0 } else { 1 }).collect()
}

/// `α(Z)` for the root of a basis element; 0 on the centralizer.
pub fn level(element: &BasisElement, n: usize, z: &[i64]) -> i64 {
    match element.root() {
        None => 0,
        Some((i, j)) => root_in_simple_coordinates(n, i, j).iter().zip(z).map(|(c, w)| c * w).sum(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedDecomposition {
    pub z: Vec<i64>,
    /// level → model indices of the root elements at that level
    pub levels: BTreeMap<i64, Vec<usize>>,
    /// Centralizer of the split diagonal (part of level 0).
    pub centralizer: Vec<usize>,
}

impl GradedDecomposition {
    pub fn at(&self, k: i64) -> &[usize] {
        self.levels.get(&k).map_or(&[], Vec::as_slice)
    }

    /// Level of a model index.
    pub fn level_of(&self, a: usize) -> i64 {
        self.levels.iter().find(|(_, v)| v.contains(&a)).map_or(0, |(k, _)| *k)
    }
}

pub fn gradation(model: &LieAlgebraModel, z: &[i64]) -> GradedDecomposition {
    let mut levels: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    let mut centralizer = Vec::new();
    for (a, e) in model.basis().iter().enumerate() {
        if e.is_centralizer() {
            centralizer.push(a);
        } else {
            levels.entry(level(e, model.n(), z)).or_default().push(a);
        }
    }
    GradedDecomposition { z: z.to_vec(), levels, centralizer }
}

/// Nonnegative part `q_Λ′ = Σ_{k≥0} g^k`.
pub fn parabolic(model: &Arc<LieAlgebraModel>, subset: &SimpleRootSubset) -> Subalgebra {
    let z = characteristic_element(subset);
    let indices = (0..model.dim()).filter(|&a| level(&model.element(a), model.n(), &z) >= 0).collect();
    Subalgebra::spanned_unchecked(model, indices)
}

/// Langlands pieces of `q_Λ′`. The `m` part is given as the basis elements of
/// `g^0` outside `a` (the `H^j` with `α_j ∈ Λ′`, the imaginary diagonal and
/// the level-zero root elements); it is not closed under the bracket in this
/// basis.
#[derive(Debug, Clone)]
pub struct Langlands {
    pub m: Vec<usize>,
    pub a: Subalgebra,
    pub n: Subalgebra,
}

pub fn langlands(model: &Arc<LieAlgebraModel>, subset: &SimpleRootSubset) -> Langlands {
    let z = characteristic_element(subset);
    let comp = subset.complement();
    let mut m = Vec::new();
    let mut a = Vec::new();
    let mut nil = Vec::new();
    for (k, e) in model.basis().iter().enumerate() {
        match (*e, level(e, model.n(), &z)) {
            (BasisElement::H(i), _) if comp.contains(&i) => a.push(k),
            (_, 0) => m.push(k),
            (_, l) if l > 0 => nil.push(k),
            _ => {}
        }
    }
    Langlands {
        m,
        a: Subalgebra::spanned_unchecked(model, a),
        n: Subalgebra::spanned_unchecked(model, nil),
    }
}

/// `s_Λ′ = a_Λ′ + n_Λ′`.
pub fn solvable_part(model: &Arc<LieAlgebraModel>, subset: &SimpleRootSubset) -> Subalgebra {
    let l = langlands(model, subset);
    let mut indices: Vec<usize> = l.a.indices().to_vec();
    indices.extend_from_slice(l.n.indices());
    indices.sort_unstable();
    Subalgebra::spanned_unchecked(model, indices)
}

/// `α(Z)` for each basis element of `sub` (zero on the abelian part), as
/// consumed by [`crate::connection::graded_solvable_connection`].
pub fn levels_on(sub: &Subalgebra, subset: &SimpleRootSubset) -> Vec<i64> {
    let z = characteristic_element(subset);
    let n = sub.model().n();
    sub.elements().iter().map(|e| level(e, n, &z)).collect()
}

/// True when `Λ′` contains `α_1` and `α_{n−1}` and consecutive members differ
/// by at most 2: exactly the parabolics whose induced connection is not
/// projectively equivalent to a flat one.
pub fn thm1_predicate(n: usize, subset: &SimpleRootSubset) -> bool {
    let idx = subset.indices();
    match (idx.first(), idx.last()) {
        (Some(&first), Some(&last)) => first == 1 && last == n - 1 && idx.windows(2).all(|w| w[1] - w[0] <= 2),
        _ => false,
    }
}

/// `'*'` for roots in `Λ′`, `'o'` otherwise, joined by `'-'`.
pub fn dynkin_render(n: usize, subset: &SimpleRootSubset) -> String {
    let nodes: Vec<&str> = (1..n).map(|i| if subset.contains(i) { "*" } else { "o" }).collect();
    nodes.join("-")
}

/// Structure selector for the analysis pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Structure {
    Parabolic,
    Solvable,
}

impl Structure {
    pub fn name(self) -> &'static str {
        match self {
            Structure::Parabolic => "parabolic",
            Structure::Solvable => "solvable",
        }
    }
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn build_structure(model: &Arc<LieAlgebraModel>, subset: &SimpleRootSubset, structure: Structure) -> Subalgebra {
    match structure {
        Structure::Parabolic => parabolic(model, subset),
        Structure::Solvable => solvable_part(model, subset),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Field;
    use crate::quaternion::Unit;

    fn set(n: usize, idx: &[usize]) -> SimpleRootSubset {
        SimpleRootSubset::new(n, idx).unwrap()
    }

    fn e(i: usize, j: usize) -> BasisElement {
        BasisElement::E { i, j, unit: Unit::One }
    }

    #[test]
    fn subset_validation() {
        assert_eq!(set(6, &[5, 1, 3]).indices(), &[1, 3, 5]);
        assert!(SimpleRootSubset::new(6, &[1, 1]).is_err());
        assert!(SimpleRootSubset::new(4, &[1, 2, 3]).is_err());
        assert!(SimpleRootSubset::new(4, &[4]).is_err());
        assert_eq!(SimpleRootSubset::parse(6, "1,3,5").unwrap(), set(6, &[1, 3, 5]));
        assert_eq!(SimpleRootSubset::parse(6, "empty").unwrap(), SimpleRootSubset::empty(6));
        assert!(SimpleRootSubset::parse(6, "1,x").is_err());
        assert_eq!(SimpleRootSubset::all_proper(6).len(), 31);
    }

    #[test]
    fn characteristic_elements() {
        assert_eq!(characteristic_element(&set(4, &[3])), [1, 1, 0]);
        assert_eq!(characteristic_element(&SimpleRootSubset::empty(5)), [1, 1, 1, 1]);
        assert_eq!(characteristic_element(&set(5, &[2, 3, 4])), [1, 0, 0, 0]);
    }

    #[test]
    fn gradation_levels() {
        let m = LieAlgebraModel::build(Field::Real, 4).unwrap();
        let g = gradation(&m, &characteristic_element(&set(4, &[3])));
        let idx = |b| m.index_of(&b).unwrap();
        let mut g1 = alloc::vec![idx(e(1, 2)), idx(e(2, 3)), idx(e(2, 4))];
        g1.sort();
        assert_eq!(g.at(1), g1.as_slice());
        let mut g2 = alloc::vec![idx(e(1, 3)), idx(e(1, 4))];
        g2.sort();
        assert_eq!(g.at(2), g2.as_slice());
        assert_eq!(g.level_of(idx(e(2, 1))), -1);
    }

    #[test]
    fn heights_under_full_characteristic_element() {
        let m = LieAlgebraModel::build(Field::Real, 5).unwrap();
        let z = characteristic_element(&SimpleRootSubset::empty(5));
        for e in m.basis() {
            if let Some((i, j)) = e.root() {
                assert_eq!(level(e, 5, &z), j as i64 - i as i64);
            }
        }
    }

    #[test]
    fn parabolic_dimensions() {
        let m4 = LieAlgebraModel::build(Field::Real, 4).unwrap();
        assert_eq!(parabolic(&m4, &set(4, &[3])).dim(), 10);
        let m2 = LieAlgebraModel::build(Field::Real, 2).unwrap();
        let q = parabolic(&m2, &SimpleRootSubset::empty(2));
        assert_eq!(q.elements(), [BasisElement::H(1), e(1, 2)]);
        let borel = parabolic(&m4, &SimpleRootSubset::empty(4));
        assert_eq!(borel.dim(), 3 + 6);
        assert!(borel.elements().iter().all(|b| b.root().is_none_or(|(i, j)| i < j)));
    }

    #[test]
    fn langlands_pieces() {
        let m4 = LieAlgebraModel::build(Field::Real, 4).unwrap();
        let l = langlands(&m4, &set(4, &[3]));
        assert_eq!(l.a.elements(), [BasisElement::H(1), BasisElement::H(2)]);
        let mut expected = alloc::vec![e(1, 2), e(2, 3), e(1, 3), e(2, 4), e(1, 4)];
        expected.sort_by_key(|b| m4.index_of(b));
        assert_eq!(l.n.elements(), expected);
        assert_eq!(solvable_part(&m4, &set(4, &[3])).dim(), 7);
        let empty = langlands(&m4, &SimpleRootSubset::empty(4));
        assert!(empty.m.is_empty());
        assert_eq!(empty.a.dim(), 3);
        assert_eq!(empty.n.dim(), 6);
    }

    #[test]
    fn predicate_and_diagrams() {
        assert!(thm1_predicate(6, &set(6, &[1, 3, 5])));
        assert!(!thm1_predicate(6, &set(6, &[1])));
        assert!(!thm1_predicate(6, &SimpleRootSubset::empty(6)));
        assert_eq!(dynkin_render(6, &set(6, &[1, 3, 5])), "*-o-*-o-*");
        assert_eq!(dynkin_render(6, &set(6, &[1, 2, 4, 5])), "*-*-o-*-*");
        assert_eq!(dynkin_render(6, &SimpleRootSubset::empty(6)), "o-o-o-o-o");
    }
}
