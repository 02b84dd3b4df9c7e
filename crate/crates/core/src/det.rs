//! Determinants of polynomial matrices and linear-factor divisibility.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::poly::{Degree, MultiPoly};
use crate::rational::Rational;

/// Default largest matrix size handled symbolically.
pub const DEFAULT_SYMBOLIC_CAP: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DetStrategy {
    /// Fraction-free elimination.
    Bareiss,
    /// Laplace expansion memoized over column subsets.
    MinorExpansion,
}

/// Exact determinant of a square grid of polynomials (`grid[row][col]`).
pub fn poly_det(grid: &[Vec<MultiPoly>], strategy: DetStrategy, cap: usize) -> Result<MultiPoly> {
    let n = grid.len();
    if n > cap {
        return Err(Error::SizeCapExceeded { size: n, cap });
    }
    if grid.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidInput("determinant of a non-square grid".into()));
    }
    let nvars = grid.first().and_then(|r| r.first()).map_or(0, MultiPoly::nvars);
    if grid.iter().flatten().any(|p| p.nvars() != nvars) {
        return Err(Error::InvalidInput("entries disagree on the variable count".into()));
    }
    if n == 0 {
        return Ok(MultiPoly::constant(nvars, Rational::one()));
    }
    Ok(match strategy {
        DetStrategy::Bareiss => bareiss(grid.to_vec(), nvars),
        DetStrategy::MinorExpansion => minor_expansion(grid, nvars),
    })
}

fn bareiss(mut m: Vec<Vec<MultiPoly>>, nvars: usize) -> MultiPoly {
    let n = m.len();
    let mut negate = false;
    let mut prev = MultiPoly::constant(nvars, Rational::one());
    for k in 0..n - 1 {
        // sparsest nonzero pivot in column k
        let pivot = (k..n).filter(|&r| !m[r][k].is_zero()).min_by_key(|&r| m[r][k].num_terms());
        let Some(p) = pivot else {
            return MultiPoly::zero(nvars);
        };
        if p != k {
            m.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.div_exact(&prev).expect("Bareiss step divides exactly");
            }
            m[i][k] = MultiPoly::zero(nvars);
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        d.neg()
    } else {
        d
    }
}

fn minor_expansion(grid: &[Vec<MultiPoly>], nvars: usize) -> MultiPoly {
    let n = grid.len();
    // table[S] = det of the bottom |S| rows restricted to the columns in S
    let mut table: Vec<Option<MultiPoly>> = alloc::vec![None; 1 << n];
    table[0] = Some(MultiPoly::constant(nvars, Rational::one()));
    let mut by_size: Vec<Vec<usize>> = alloc::vec![Vec::new(); n + 1];
    for s in 1usize..(1 << n) {
        by_size[s.count_ones() as usize].push(s);
    }
    for size in 1..=n {
        let row = n - size;
        for &s in &by_size[size] {
            let mut acc = MultiPoly::zero(nvars);
            let mut position = 0;
            for j in 0..n {
                if s & (1 << j) == 0 {
                    continue;
                }
                let entry = &grid[row][j];
                if !entry.is_zero() {
                    let minor = table[s & !(1 << j)].as_ref().unwrap();
                    let term = entry.mul(minor);
                    acc = if position % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
                }
                position += 1;
            }
            table[s] = Some(acc);
        }
        if size >= 2 {
            for &s in &by_size[size - 1] {
                table[s] = None;
            }
        }
    }
    table[(1 << n) - 1].take().unwrap()
}

/// Decides whether the degree-one polynomial `ell` divides `p`. Divisibility
/// is tested by substituting the solution of `ell = 0` for one of its
/// variables and checking that `p` vanishes identically; on success the exact
/// quotient is returned.
pub fn linear_factor_divides(p: &MultiPoly, ell: &MultiPoly) -> Result<(bool, Option<MultiPoly>)> {
    if ell.degree() != Degree::Finite(1) {
        return Err(Error::InvalidInput("divisor must have total degree exactly 1".into()));
    }
    let (coeffs, constant) = ell.as_linear().expect("degree one");
    // solve for the last variable with a nonzero coefficient
    let k = coeffs.iter().rposition(|c| !c.is_zero()).unwrap();
    let inv = coeffs[k].recip();
    let mut rest = coeffs.clone();
    rest[k] = Rational::zero();
    let solution = MultiPoly::linear(&rest, constant).scale(&-inv);
    if !p.substitute(k, &solution).is_zero() {
        return Ok((false, None));
    }
    let q = p.div_exact(ell).expect("vanishing on the hyperplane implies divisibility");
    Ok((true, Some(q)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use alloc::vec;

    fn x(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    #[test]
    fn small_determinants() {
        let one = vec![vec![x(1, 0)]];
        assert_eq!(poly_det(&one, DetStrategy::Bareiss, 16).unwrap(), x(1, 0));
        let g = vec![vec![x(4, 0), x(4, 1)], vec![x(4, 2), x(4, 3)]];
        let expected = x(4, 0).mul(&x(4, 3)).sub(&x(4, 1).mul(&x(4, 2)));
        for s in [DetStrategy::Bareiss, DetStrategy::MinorExpansion] {
            assert_eq!(poly_det(&g, s, 16).unwrap(), expected);
        }
    }

    #[test]
    fn cap_is_enforced() {
        let g = vec![vec![MultiPoly::zero(1); 3]; 3];
        assert_eq!(poly_det(&g, DetStrategy::Bareiss, 2), Err(Error::SizeCapExceeded { size: 3, cap: 2 }));
    }

    #[test]
    fn zero_pivot_needs_row_swap() {
        let c = |v: i64| MultiPoly::constant(2, rat(v, 1));
        let g = vec![vec![c(0), x(2, 0)], vec![x(2, 1), c(0)]];
        let d = poly_det(&g, DetStrategy::Bareiss, 16).unwrap();
        assert_eq!(d, x(2, 0).mul(&x(2, 1)).neg());
    }

    #[test]
    fn linear_factor_examples() {
        let (xx, yy) = (x(2, 0), x(2, 1));
        let l = xx.add(&yy);
        let (ok, q) = linear_factor_divides(&l.mul(&l), &l).unwrap();
        assert!(ok);
        assert_eq!(q.unwrap(), l);
        let s = xx.mul(&xx).add(&yy.mul(&yy));
        assert_eq!(linear_factor_divides(&s, &l).unwrap(), (false, None));
        assert!(linear_factor_divides(&s, &s).is_err());
    }
}
