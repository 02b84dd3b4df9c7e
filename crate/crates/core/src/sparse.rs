//! Sparse rational vectors and matrices keyed by basis position.

use alloc::vec;
use alloc::vec::Vec;

use crate::matrix::RatMatrix;
use crate::rational::Rational;

/// Sparse vector with strictly increasing indices and no stored zeros.
#[derive(Clone, PartialEq, Eq, Debug, Default, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, Rational)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(i: usize) -> Self {
        SparseVec { entries: vec![(i, Rational::one())] }
    }

    pub fn single(i: usize, c: Rational) -> Self {
        if c.is_zero() {
            SparseVec::new()
        } else {
            SparseVec { entries: vec![(i, c)] }
        }
    }

    /// Builds from arbitrary `(index, coefficient)` pairs, merging duplicates.
    pub fn from_pairs(mut pairs: Vec<(usize, Rational)>) -> Self {
        pairs.sort_by_key(|(i, _)| *i);
        let mut entries: Vec<(usize, Rational)> = Vec::with_capacity(pairs.len());
        for (i, c) in pairs {
            match entries.last_mut() {
                Some((j, acc)) if *j == i => *acc += c,
                _ => entries.push((i, c)),
            }
        }
        entries.retain(|(_, c)| !c.is_zero());
        SparseVec { entries }
    }

    pub fn from_dense(v: &[Rational]) -> Self {
        let entries = v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect();
        SparseVec { entries }
    }

    pub fn to_dense(&self, len: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); len];
        for (i, c) in &self.entries {
            out[*i] = c.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.entries.iter().map(|(i, c)| (*i, c))
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|(i, _)| *i)
    }

    pub fn get(&self, i: usize) -> Rational {
        match self.entries.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(p) => self.entries[p].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn scale(&self, c: &Rational) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec { entries: self.entries.iter().map(|(i, x)| (*i, x * c)).collect() }
    }

    pub fn neg(&self) -> SparseVec {
        SparseVec { entries: self.entries.iter().map(|(i, x)| (*i, -x)).collect() }
    }

    /// `self + c · other`.
    pub fn add_scaled(&self, other: &SparseVec, c: &Rational) -> SparseVec {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, y * c));
                        b.next();
                    } else {
                        let s = x + &(y * c);
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, y * c));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        self.add_scaled(other, &Rational::one())
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        self.add_scaled(other, &Rational::from_int(-1))
    }

    /// Pairing with a dense covector.
    pub fn dot_dense(&self, covector: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (i, c) in &self.entries {
            let x = &covector[*i];
            if !x.is_zero() {
                acc += c * x;
            }
        }
        acc
    }

    /// Re-indexes through `map`; entries whose index maps to `None` make the
    /// whole call fail.
    pub fn reindex(&self, map: impl Fn(usize) -> Option<usize>) -> Option<SparseVec> {
        let mut pairs = Vec::with_capacity(self.entries.len());
        for (i, c) in &self.entries {
            pairs.push((map(*i)?, c.clone()));
        }
        Some(SparseVec::from_pairs(pairs))
    }
}

/// Accumulates a sparse vector from many scaled contributions.
#[derive(Default)]
pub struct Accumulator {
    pairs: Vec<(usize, Rational)>,
}

impl Accumulator {
    pub fn new() -> Self {
        Accumulator { pairs: Vec::new() }
    }

    pub fn push(&mut self, i: usize, c: Rational) {
        if !c.is_zero() {
            self.pairs.push((i, c));
        }
    }

    pub fn add_scaled(&mut self, v: &SparseVec, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (i, x) in v.iter() {
            self.pairs.push((i, x * c));
        }
    }

    pub fn finish(self) -> SparseVec {
        SparseVec::from_pairs(self.pairs)
    }
}

/// Square sparse matrix stored by rows.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SparseMat {
    rows: Vec<SparseVec>,
}

impl SparseMat {
    pub fn zero(n: usize) -> Self {
        SparseMat { rows: vec![SparseVec::new(); n] }
    }

    pub fn from_rows(rows: Vec<SparseVec>) -> Self {
        SparseMat { rows }
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.rows[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, x: Rational) {
        let mut pairs: Vec<(usize, Rational)> =
            self.rows[i].iter().filter(|(k, _)| *k != j).map(|(k, c)| (k, c.clone())).collect();
        pairs.push((j, x));
        self.rows[i] = SparseVec::from_pairs(pairs);
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(SparseVec::is_zero)
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.len()).map(|i| self.rows[i].get(i)).sum()
    }

    pub fn mul(&self, other: &SparseMat) -> SparseMat {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut acc = Accumulator::new();
                for (k, a) in r.iter() {
                    acc.add_scaled(&other.rows[k], a);
                }
                acc.finish()
            })
            .collect();
        SparseMat { rows }
    }

    pub fn sub(&self, other: &SparseMat) -> SparseMat {
        SparseMat { rows: self.rows.iter().zip(&other.rows).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn add_scaled(&self, other: &SparseMat, c: &Rational) -> SparseMat {
        SparseMat { rows: self.rows.iter().zip(&other.rows).map(|(a, b)| a.add_scaled(b, c)).collect() }
    }

    pub fn commutator(&self, other: &SparseMat) -> SparseMat {
        self.mul(other).sub(&other.mul(self))
    }

    /// `self + c · I`.
    pub fn shift_identity(&self, c: &Rational) -> SparseMat {
        let rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| r.add_scaled(&SparseVec::unit(i), c))
            .collect();
        SparseMat { rows }
    }

    pub fn mul_dense(&self, v: &[Rational]) -> Vec<Rational> {
        self.rows.iter().map(|r| r.dot_dense(v)).collect()
    }

    pub fn to_dense(&self) -> RatMatrix {
        let n = self.rows.len();
        let mut m = RatMatrix::zero(n, n);
        for (i, r) in self.rows.iter().enumerate() {
            for (j, c) in r.iter() {
                m.set(i, j, c.clone());
            }
        }
        m
    }

    pub fn from_dense(m: &RatMatrix) -> SparseMat {
        let rows = (0..m.rows).map(|i| SparseVec::from_dense(&m.data[i * m.cols..(i + 1) * m.cols])).collect();
        SparseMat { rows }
    }
}

/// Reduced row echelon basis of the span of `vectors`. Pivots are chosen at
/// the highest available index, so each returned row has a distinct leading
/// (largest) index with coefficient 1, absent from every other row.
pub fn span_basis(vectors: &[SparseVec]) -> Vec<SparseVec> {
    let mut basis: Vec<SparseVec> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for b in &basis {
            let p = b.max_index().unwrap();
            let c = w.get(p);
            if !c.is_zero() {
                w = w.add_scaled(b, &-c);
            }
        }
        if w.is_zero() {
            continue;
        }
        let p = w.max_index().unwrap();
        let lead = w.get(p);
        w = w.scale(&lead.recip());
        for b in basis.iter_mut() {
            let c = b.get(p);
            if !c.is_zero() {
                *b = b.add_scaled(&w, &-c);
            }
        }
        basis.push(w);
    }
    basis.sort_by_key(|b| b.max_index());
    basis
}

/// Whether `v` lies in the span given by [`span_basis`].
pub fn in_span(basis: &[SparseVec], v: &SparseVec) -> bool {
    let mut w = v.clone();
    for b in basis {
        let p = b.max_index().unwrap();
        let c = w.get(p);
        if !c.is_zero() {
            w = w.add_scaled(b, &-c);
        }
    }
    w.is_zero()
}
