//! Affine representations attached to a projectively flat connection, their
//! relative invariant, and the normalizations acting on them.
//!
//! Every image is an `(m+1) × (m+1)` matrix in block form `(m | 1)`.

use alloc::vec::Vec;

use crate::connection::{Connection, CurvaturePack};
use crate::det::{poly_det, DetStrategy};
use crate::error::{Error, Result};
use crate::lie::Subalgebra;
use crate::matrix::RatMatrix;
use crate::poly::MultiPoly;
use crate::rational::Rational;
use crate::sparse::{SparseMat, SparseVec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RepForm {
    /// `[[∇_X, X], [−γ(X,·), 0]]`.
    RicciSymmetric,
    /// `[[∇_X − tI, X], [−P(X,·), −t]]`, `t = tr ∇_X/(m+1)`.
    Traceless,
    /// Conjugated by a covector or by a generic point.
    Conjugated,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Representation {
    carrier: Subalgebra,
    form: RepForm,
    images: Vec<SparseMat>,
}

impl Representation {
    pub fn new(carrier: Subalgebra, form: RepForm, images: Vec<SparseMat>) -> Result<Self> {
        let m = carrier.dim();
        if images.len() != m || images.iter().any(|f| f.size() != m + 1) {
            return Err(Error::InvalidInput("one (m+1)-square image per basis element expected".into()));
        }
        Ok(Representation { carrier, form, images })
    }

    pub fn carrier(&self) -> &Subalgebra {
        &self.carrier
    }

    pub fn form(&self) -> RepForm {
        self.form
    }

    /// Carrier dimension `m`.
    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }

    pub fn image(&self, a: usize) -> &SparseMat {
        &self.images[a]
    }

    pub fn images(&self) -> &[SparseMat] {
        &self.images
    }

    /// Columns `f(X_1)v, …, f(X_m)v, v` as a dense matrix.
    pub fn orbit_matrix(&self, v: &[Rational]) -> RatMatrix {
        let mut cols: Vec<Vec<Rational>> = self.images.iter().map(|f| f.mul_dense(v)).collect();
        cols.push(v.to_vec());
        RatMatrix::from_columns(&cols)
    }
}

fn block_image(conn: &Connection, a: usize, bottom: impl Fn(usize) -> Rational, shift: &Rational) -> SparseMat {
    let m = conn.dim();
    let mut rows: Vec<Vec<(usize, Rational)>> = alloc::vec![Vec::new(); m + 1];
    for b in 0..m {
        for (i, c) in conn.nabla(a, b).iter() {
            rows[i].push((b, c.clone()));
        }
    }
    rows[a].push((m, Rational::one()));
    for b in 0..m {
        let x = bottom(b);
        if !x.is_zero() {
            rows[m].push((b, x));
        }
    }
    let mut mat = SparseMat::from_rows(rows.into_iter().map(SparseVec::from_pairs).collect());
    if !shift.is_zero() {
        mat = mat.shift_identity(&-shift);
    }
    mat
}

/// `f(X) = [[∇_X, X], [−γ(X,·), 0]]`; column `b` of the `∇_X` block holds the
/// coordinates of `∇_X X_b`.
pub fn build_rep_symmetric(conn: &Connection, pack: &CurvaturePack) -> Result<Representation> {
    let gamma = pack.gamma.as_ref().ok_or(Error::RicciNotSymmetric)?;
    let images = (0..conn.dim()).map(|a| block_image(conn, a, |b| -gamma.get(a, b), &Rational::zero())).collect();
    Ok(Representation { carrier: conn.carrier().clone(), form: RepForm::RicciSymmetric, images })
}

/// Traceless form built from the P tensor; agrees with the symmetric form
/// shifted by `tr ∇_X/(m+1)` when Ric is symmetric.
pub fn build_rep_traceless(conn: &Connection, pack: &CurvaturePack) -> Representation {
    let k = Rational::from(conn.dim() + 1).recip();
    let images = (0..conn.dim())
        .map(|a| {
            let t = &conn.trace(a) * &k;
            block_image(conn, a, |b| -pack.p.get(a, b), &t)
        })
        .collect();
    Representation { carrier: conn.carrier().clone(), form: RepForm::Traceless, images }
}

/// `[f(X_a), f(X_b)] = f([X_a, X_b])` for all basis pairs.
pub fn verify_homomorphism(rep: &Representation) -> bool {
    first_homomorphism_failure(rep).is_none()
}

/// The first pair `(a, b)`, `a < b`, violating the homomorphism identity.
pub fn first_homomorphism_failure(rep: &Representation) -> Option<(usize, usize)> {
    let m = rep.dim();
    for a in 0..m {
        for b in a + 1..m {
            let lhs = rep.images[a].commutator(&rep.images[b]);
            let mut rhs = SparseMat::zero(m + 1);
            for (c, coef) in rep.carrier.bracket(a, b).iter() {
                rhs = rhs.add_scaled(&rep.images[c], coef);
            }
            if lhs != rhs {
                return Some((a, b));
            }
        }
    }
    None
}

/// Per-element `α` with `f(X_a)e_{m+1} = e_a + α_a e_{m+1}`, when the (P)
/// condition holds.
pub fn p_condition(rep: &Representation) -> Option<Vec<Rational>> {
    let m = rep.dim();
    (0..m)
        .map(|a| {
            let f = &rep.images[a];
            let ok = (0..m).all(|i| f.get(i, m) == if i == a { Rational::one() } else { Rational::zero() });
            ok.then(|| f.get(m, m))
        })
        .collect()
}

/// `φ_f(v) = det(f(X_1)v, …, f(X_m)v, v)` in variables `x_1 … x_{m+1}`.
pub fn invariant_poly(rep: &Representation, strategy: DetStrategy, cap: usize) -> Result<MultiPoly> {
    let m = rep.dim();
    let size = m + 1;
    if size > cap {
        return Err(Error::SizeCapExceeded { size, cap });
    }
    let var = |j: usize| MultiPoly::var(size, j);
    let mut grid: Vec<Vec<MultiPoly>> = alloc::vec![alloc::vec![MultiPoly::zero(size); size]; size];
    for (a, f) in rep.images.iter().enumerate() {
        for (i, row) in grid.iter_mut().enumerate() {
            let mut entry = MultiPoly::zero(size);
            for (j, c) in f.row(i).iter() {
                entry = entry.add(&var(j).scale(c));
            }
            row[a] = entry;
        }
    }
    for (i, row) in grid.iter_mut().enumerate() {
        row[m] = var(i);
    }
    poly_det(&grid, strategy, cap)
}

/// `Q = [[I, 0], [−ξ, 1]]`.
pub fn q_matrix(xi: &[Rational]) -> SparseMat {
    let m = xi.len();
    let mut rows: Vec<SparseVec> = (0..m).map(SparseVec::unit).collect();
    let mut last: Vec<(usize, Rational)> = xi.iter().enumerate().map(|(i, x)| (i, -x)).collect();
    last.push((m, Rational::one()));
    rows.push(SparseVec::from_pairs(last));
    SparseMat::from_rows(rows)
}

/// `Q⁻¹ f Q` per basis element, with `Q⁻¹ = [[I, 0], [ξ, 1]]`.
pub fn conjugate_rep(rep: &Representation, xi: &[Rational]) -> Result<Representation> {
    if xi.len() != rep.dim() {
        return Err(Error::InvalidInput("covector length differs from the carrier dimension".into()));
    }
    let q = q_matrix(xi);
    let neg: Vec<Rational> = xi.iter().map(|x| -x).collect();
    let q_inv = q_matrix(&neg);
    let images = rep.images.iter().map(|f| q_inv.mul(&f.mul(&q))).collect();
    Ok(Representation { carrier: rep.carrier.clone(), form: RepForm::Conjugated, images })
}

/// `G[a][b]` = entry `(m+1, b)` of `f(X_a)`.
pub fn g1_component(rep: &Representation) -> RatMatrix {
    let m = rep.dim();
    let mut g = RatMatrix::zero(m, m);
    for (a, f) in rep.images.iter().enumerate() {
        for (b, c) in f.row(m).iter() {
            if b < m {
                g.set(a, b, c.clone());
            }
        }
    }
    g
}

/// `f(X_1)v, …, f(X_m)v, v` span the whole space.
pub fn pv_genericity(rep: &Representation, v: &[Rational]) -> bool {
    v.len() == rep.dim() + 1 && rep.orbit_matrix(v).rank() == rep.dim() + 1
}

/// Subtracts `tr f(X)/(m+1)` times the identity from every image.
pub fn traceless_projection(rep: &Representation) -> Representation {
    let k = Rational::from(rep.dim() + 1).recip();
    let images = rep.images.iter().map(|f| f.shift_identity(&-(&f.trace() * &k))).collect();
    Representation { carrier: rep.carrier.clone(), form: RepForm::Traceless, images }
}

/// `f_v = P̄⁻¹ f̄ P̄` with `P̄ = (f̄(X_1)v, …, f̄(X_m)v, v)`; then
/// `f_v(X_a)e_{m+1} = e_a`.
pub fn n_homomorphism(rep: &Representation, v: &[Rational]) -> Result<Representation> {
    let bar = traceless_projection(rep);
    if v.len() != rep.dim() + 1 {
        return Err(Error::InvalidInput("point has the wrong length".into()));
    }
    let p = bar.orbit_matrix(v);
    let p_inv = p.inverse().ok_or(Error::NotGeneric)?;
    let (p, p_inv) = (SparseMat::from_dense(&p), SparseMat::from_dense(&p_inv));
    let images = bar.images.iter().map(|f| p_inv.mul(&f.mul(&p))).collect();
    Ok(Representation { carrier: rep.carrier.clone(), form: RepForm::Conjugated, images })
}
