//! Square matrices over the reals or quaternions, and dense rational matrices.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::quaternion::{quat_mul, Quaternion};
use crate::rational::Rational;

/// Ground field of a matrix Lie algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Real,
    Quaternion,
}

impl Field {
    pub fn tag(self) -> &'static str {
        match self {
            Field::Real => "r",
            Field::Quaternion => "h",
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// An `n × n` matrix over ℝ or ℍ. Entries are stored as quaternions; real
/// matrices keep all imaginary parts zero.
#[derive(Clone, PartialEq, Eq)]
pub struct MatK {
    field: Field,
    n: usize,
    entries: Vec<Quaternion>,
}

impl MatK {
    pub fn zero(field: Field, n: usize) -> Self {
        MatK { field, n, entries: vec![Quaternion::zero(); n * n] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = MatK::zero(field, n);
        for i in 0..n {
            m.set(i, i, Quaternion::one());
        }
        m
    }

    /// Diagonal real matrix.
    pub fn diag(field: Field, d: &[Rational]) -> Self {
        let mut m = MatK::zero(field, d.len());
        for (i, x) in d.iter().enumerate() {
            m.set(i, i, Quaternion::real(x.clone()));
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Quaternion {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, q: Quaternion) {
        debug_assert!(self.field == Field::Quaternion || q.is_real());
        self.entries[i * self.n + j] = q;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Quaternion::is_zero)
    }

    pub fn mul(&self, other: &MatK) -> MatK {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = MatK::zero(self.field, n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    out.entries[i * n + j] += &quat_mul(a, b);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &MatK) -> MatK {
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        MatK { field: self.field, n: self.n, entries }
    }

    pub fn sub(&self, other: &MatK) -> MatK {
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        MatK { field: self.field, n: self.n, entries }
    }

    pub fn scale(&self, c: &Rational) -> MatK {
        let entries = self.entries.iter().map(|q| q.scale(c)).collect();
        MatK { field: self.field, n: self.n, entries }
    }

    pub fn commutator(&self, other: &MatK) -> MatK {
        self.mul(other).sub(&other.mul(self))
    }

    /// Sum of the real parts of the diagonal.
    pub fn re_trace(&self) -> Rational {
        (0..self.n).map(|i| self.get(i, i).re.clone()).sum()
    }
}

impl fmt::Debug for MatK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MatK<{}>({}x{})", self.field, self.n, self.n)?;
        for i in 0..self.n {
            for j in 0..self.n {
                write!(f, " {:?}", self.get(i, j))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

pub fn re_trace(m: &MatK) -> Rational {
    m.re_trace()
}

/// Dense rational matrix, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    pub fn from_columns(cols: &[Vec<Rational>]) -> Self {
        let rows = cols.first().map_or(0, Vec::len);
        let mut m = RatMatrix::zero(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m.data[i * cols.len() + j] = x.clone();
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Rational) {
        self.data[i * self.cols + j] = x;
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = RatMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect()
    }

    /// Row echelon form in place; returns `(rank, sign of the row permutation)`.
    fn echelon(&mut self) -> (usize, bool) {
        let mut rank = 0;
        let mut flipped = false;
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(p) = (rank..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            if p != rank {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, rank * self.cols + j);
                }
                flipped = !flipped;
            }
            let pivot = self.get(rank, col).clone();
            for r in rank + 1..self.rows {
                let factor = self.get(r, col) / &pivot;
                if factor.is_zero() {
                    continue;
                }
                for j in col..self.cols {
                    let delta = &factor * self.get(rank, j);
                    self.data[r * self.cols + j] -= delta;
                }
            }
            rank += 1;
        }
        (rank, flipped)
    }

    pub fn rank(&self) -> usize {
        self.clone().echelon().0
    }

    pub fn det(&self) -> Rational {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let (rank, flipped) = m.echelon();
        if rank < self.rows {
            return Rational::zero();
        }
        let d: Rational = (0..self.rows).map(|i| m.get(i, i).clone()).product();
        if flipped {
            -d
        } else {
            d
        }
    }

    /// Gauss–Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<RatMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = RatMatrix::identity(n);
        for col in 0..n {
            let p = (col..n).find(|&r| !a.get(r, col).is_zero())?;
            if p != col {
                for j in 0..n {
                    a.data.swap(p * n + j, col * n + j);
                    inv.data.swap(p * n + j, col * n + j);
                }
            }
            let piv = a.get(col, col).recip();
            for j in 0..n {
                let x = a.get(col, j) * &piv;
                a.set(col, j, x);
                let y = inv.get(col, j) * &piv;
                inv.set(col, j, y);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let x = &factor * a.get(col, j);
                    a.data[r * n + j] -= x;
                    let y = &factor * inv.get(col, j);
                    inv.data[r * n + j] -= y;
                }
            }
        }
        Some(inv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quaternion::Unit;
    use crate::rational::rat;

    fn elementary(field: Field, n: usize, i: usize, j: usize) -> MatK {
        let mut m = MatK::zero(field, n);
        m.set(i, j, Quaternion::one());
        m
    }

    #[test]
    fn re_trace_examples() {
        assert_eq!(re_trace(&MatK::identity(Field::Real, 3)), rat(3, 1));
        let mut d = MatK::zero(Field::Quaternion, 2);
        d.set(0, 0, Quaternion::unit(Unit::I, Rational::one()));
        d.set(1, 1, Quaternion::unit(Unit::I, Rational::one()));
        assert_eq!(re_trace(&d), Rational::zero());
        let p = elementary(Field::Real, 2, 0, 1).mul(&elementary(Field::Real, 2, 1, 0));
        assert_eq!(re_trace(&p), rat(1, 1));
    }

    #[test]
    fn inverse_and_det() {
        let m = RatMatrix {
            rows: 3,
            cols: 3,
            data: [2, 1, 0, 1, 3, 1, 0, 1, 4].iter().map(|&x| rat(x, 1)).collect(),
        };
        assert_eq!(m.det(), rat(18, 1));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), RatMatrix::identity(3));
        let singular = RatMatrix { rows: 2, cols: 2, data: [1, 2, 2, 4].iter().map(|&x| rat(x, 1)).collect() };
        assert!(singular.inverse().is_none());
        assert_eq!(singular.rank(), 1);
    }
}
