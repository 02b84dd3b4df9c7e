//! Left-invariant connections as exact coefficient tensors, together with
//! their curvature, Ricci, P, normalized Ricci and projective Weyl tensors.
//!
//! A connection lives on a *carrier*: an ordered, bracket-closed span of the
//! model basis. All tensors are indexed by carrier positions `0..m`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::lie::{LieAlgebraModel, Subalgebra};
use crate::matrix::{MatK, RatMatrix};
use crate::rational::Rational;
use crate::sparse::{Accumulator, SparseVec};

#[derive(Clone, Debug, PartialEq)]
pub struct Connection {
    carrier: Subalgebra,
    /// `coeffs[a*m + b]` holds the coordinates of `∇_{X_a} X_b`.
    coeffs: Vec<SparseVec>,
}

impl Connection {
    pub fn new(carrier: Subalgebra, coeffs: Vec<SparseVec>) -> Result<Self> {
        let m = carrier.dim();
        if coeffs.len() != m * m {
            return Err(Error::InvalidInput("coefficient tensor has the wrong size".into()));
        }
        if coeffs.iter().any(|v| v.max_index().is_some_and(|i| i >= m)) {
            return Err(Error::InvalidInput("coefficient index out of range".into()));
        }
        Ok(Connection { carrier, coeffs })
    }

    pub fn carrier(&self) -> &Subalgebra {
        &self.carrier
    }

    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }

    /// `∇_{X_a} X_b` in carrier coordinates.
    pub fn nabla(&self, a: usize, b: usize) -> &SparseVec {
        &self.coeffs[a * self.dim() + b]
    }

    pub fn coefficients(&self) -> &[SparseVec] {
        &self.coeffs
    }

    /// `∇_{X_a} v`.
    pub fn apply(&self, a: usize, v: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new();
        for (b, c) in v.iter() {
            acc.add_scaled(self.nabla(a, b), c);
        }
        acc.finish()
    }

    /// `∇_u v` for arbitrary carrier vectors.
    pub fn apply_vec(&self, u: &SparseVec, v: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new();
        for (a, ca) in u.iter() {
            for (b, cb) in v.iter() {
                acc.add_scaled(self.nabla(a, b), &(ca * cb));
            }
        }
        acc.finish()
    }

    /// Trace of the endomorphism `∇_{X_a}`.
    pub fn trace(&self, a: usize) -> Rational {
        (0..self.dim()).map(|b| self.nabla(a, b).get(b)).sum()
    }

    /// Trace of `∇_v` for a carrier vector `v`.
    pub fn trace_vec(&self, v: &SparseVec) -> Rational {
        v.iter().map(|(a, c)| c * &self.trace(a)).sum()
    }

    /// Checks `∇_{X_a}X_b − ∇_{X_b}X_a = [X_a, X_b]` on all pairs.
    pub fn is_torsion_free(&self) -> bool {
        let m = self.dim();
        (0..m).all(|a| (a..m).all(|b| self.nabla(a, b).sub(self.nabla(b, a)) == self.carrier.bracket(a, b)))
    }
}

/// `∇_X Y = XY − (Re tr XY / n)·I_n` on sl(n,ℝ) or sl(n,ℍ).
pub fn canonical_connection(model: &alloc::sync::Arc<LieAlgebraModel>) -> Connection {
    let m = model.dim();
    let n = model.n();
    let scalar = Rational::new(1, n as i64);
    let identity = MatK::identity(model.field(), n);
    let mut coeffs = Vec::with_capacity(m * m);
    for a in 0..m {
        for b in 0..m {
            let prod = model.matrix(a).mul(model.matrix(b));
            let shift = &prod.re_trace() * &scalar;
            let traceless = prod.sub(&identity.scale(&shift));
            coeffs.push(model.coordinates(&traceless).expect("traceless product lies in sl"));
        }
    }
    Connection { carrier: Subalgebra::full(model), coeffs }
}

/// Curvature, Ricci, P and (when defined) normalized Ricci tensors.
#[derive(Clone, Debug)]
pub struct CurvaturePack {
    dim: usize,
    /// `r[(a*m + b)*m + c]` is `R(X_a, X_b)X_c`.
    r: Vec<SparseVec>,
    pub ric: RatMatrix,
    pub p: RatMatrix,
    /// `Ric/(m−1)`, present when Ric is symmetric and `m ≥ 2`.
    pub gamma: Option<RatMatrix>,
}

/// `R(X_a, X_b)X_c` for all `b, c` and a fixed `a`.
pub fn curvature_slice(conn: &Connection, a: usize) -> Vec<SparseVec> {
    let m = conn.dim();
    let mut out = Vec::with_capacity(m * m);
    for b in 0..m {
        let bracket = conn.carrier.bracket(a, b);
        for c in 0..m {
            let first = conn.apply(a, conn.nabla(b, c));
            let second = conn.apply(b, conn.nabla(a, c));
            let mut acc = Accumulator::new();
            acc.add_scaled(&first, &Rational::one());
            acc.add_scaled(&second, &Rational::from_int(-1));
            for (d, coef) in bracket.iter() {
                acc.add_scaled(conn.nabla(d, c), &-coef);
            }
            out.push(acc.finish());
        }
    }
    out
}

impl CurvaturePack {
    /// Full computation from a connection.
    pub fn compute(conn: &Connection) -> Self {
        let slices = (0..conn.dim()).map(|a| curvature_slice(conn, a)).collect();
        CurvaturePack::from_slices(conn.dim(), slices)
    }

    /// Assembles the pack from per-first-index slices of R, as produced by
    /// [`curvature_slice`] (possibly computed concurrently).
    pub fn from_slices(m: usize, slices: Vec<Vec<SparseVec>>) -> Self {
        assert_eq!(slices.len(), m);
        let r: Vec<SparseVec> = slices.into_iter().flatten().collect();
        assert_eq!(r.len(), m * m * m);
        // Ric(X,Y) = tr(Z ↦ R(Z,X)Y)
        let mut ric = RatMatrix::zero(m, m);
        for a in 0..m {
            for b in 0..m {
                let s: Rational = (0..m).map(|c| r[(c * m + a) * m + b].get(c)).sum();
                ric.set(a, b, s);
            }
        }
        let p = p_from_ricci(&ric);
        let symmetric = (0..m).all(|a| (a + 1..m).all(|b| ric.get(a, b) == ric.get(b, a)));
        let gamma = if symmetric && m >= 2 {
            let s = Rational::new(1, (m - 1) as i64);
            let mut g = ric.clone();
            for x in g.data.iter_mut() {
                *x = &*x * &s;
            }
            Some(g)
        } else {
            None
        };
        CurvaturePack { dim: m, r, ric, p, gamma }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `R(X_a, X_b)X_c`.
    pub fn r(&self, a: usize, b: usize, c: usize) -> &SparseVec {
        &self.r[(a * self.dim + b) * self.dim + c]
    }

    pub fn r_tensor(&self) -> &[SparseVec] {
        &self.r
    }

    pub fn is_flat(&self) -> bool {
        self.r.iter().all(SparseVec::is_zero)
    }

    pub fn ricci_symmetric(&self) -> bool {
        self.gamma.is_some() || self.dim < 2
    }

    /// Projective Weyl tensor, `W[(a*m+b)*m+c] = W(X_a, X_b)X_c`.
    pub fn weyl(&self) -> Result<Vec<SparseVec>> {
        let m = self.dim;
        if m <= 2 {
            return Err(Error::DimensionTooSmall { dim: m });
        }
        let mut w = Vec::with_capacity(m * m * m);
        for a in 0..m {
            for b in 0..m {
                let skew = self.p.get(a, b) - self.p.get(b, a);
                for c in 0..m {
                    let mut acc = Accumulator::new();
                    acc.add_scaled(self.r(a, b, c), &Rational::one());
                    acc.push(c, skew.clone());
                    acc.push(a, -self.p.get(b, c));
                    acc.push(b, self.p.get(a, c).clone());
                    w.push(acc.finish());
                }
            }
        }
        Ok(w)
    }
}

/// `P(X,Y) = [m·Ric(X,Y) + Ric(Y,X)]/(m²−1)`; zero when `m = 1`.
pub fn p_from_ricci(ric: &RatMatrix) -> RatMatrix {
    let m = ric.rows;
    let mut p = RatMatrix::zero(m, m);
    if m < 2 {
        return p;
    }
    let denom = Rational::new(1, (m * m - 1) as i64);
    let mm = Rational::from(m);
    for a in 0..m {
        for b in 0..m {
            let v = &(&(&mm * ric.get(a, b)) + ric.get(b, a)) * &denom;
            p.set(a, b, v);
        }
    }
    p
}

pub fn curvature(conn: &Connection) -> CurvaturePack {
    CurvaturePack::compute(conn)
}

pub fn weyl(conn: &Connection) -> Result<Vec<SparseVec>> {
    if conn.dim() <= 2 {
        return Err(Error::DimensionTooSmall { dim: conn.dim() });
    }
    CurvaturePack::compute(conn).weyl()
}

/// Whether the projective Weyl tensor vanishes (dimension ≥ 3), the Codazzi
/// condition holds (dimension 2), or trivially (dimension ≤ 1).
pub fn is_projectively_flat(conn: &Connection, pack: &CurvaturePack) -> bool {
    match conn.dim() {
        0 | 1 => true,
        2 => codazzi_with(conn, &pack.p),
        _ => pack.weyl().map(|w| w.iter().all(SparseVec::is_zero)).unwrap_or(false),
    }
}

/// Codazzi symmetry `(∇_X P)(Y,Z) = (∇_Y P)(X,Z)` for two-dimensional carriers.
pub fn codazzi_flat(conn: &Connection) -> Result<bool> {
    if conn.dim() != 2 {
        return Err(Error::InvalidInput(alloc::format!("Codazzi test needs dimension 2, got {}", conn.dim())));
    }
    let pack = CurvaturePack::compute(conn);
    Ok(codazzi_with(conn, &pack.p))
}

fn codazzi_with(conn: &Connection, p: &RatMatrix) -> bool {
    let m = conn.dim();
    let form = |u: &SparseVec, v: &SparseVec| -> Rational {
        let mut acc = Rational::zero();
        for (i, x) in u.iter() {
            for (j, y) in v.iter() {
                acc += &(x * y) * p.get(i, j);
            }
        }
        acc
    };
    // (∇_a P)(b, c) = −P(∇_a b, c) − P(b, ∇_a c)
    let cov = |a: usize, b: usize, c: usize| -> Rational {
        -(form(conn.nabla(a, b), &SparseVec::unit(c)) + form(&SparseVec::unit(b), conn.nabla(a, c)))
    };
    (0..m).all(|a| (0..m).all(|b| (0..m).all(|c| cov(a, b, c) == cov(b, a, c))))
}

/// Whether `∇_{X_a}X_b` stays in `sub` for all `a, b ∈ sub`.
pub fn is_autoparallel(conn: &Connection, sub: &Subalgebra) -> bool {
    let carrier = &conn.carrier;
    if !sub.is_subset_of(carrier) {
        return false;
    }
    let local: Vec<usize> = sub.indices().iter().map(|&g| carrier.position(g).unwrap()).collect();
    local.iter().all(|&a| {
        local.iter().all(|&b| conn.nabla(a, b).indices().all(|c| sub.contains(carrier.indices()[c])))
    })
}

/// Restriction of `conn` to an autoparallel subalgebra.
pub fn induced_connection(conn: &Connection, sub: &Subalgebra) -> Result<Connection> {
    if !is_autoparallel(conn, sub) {
        return Err(Error::NotAutoparallel);
    }
    let carrier = &conn.carrier;
    let local: Vec<usize> = sub.indices().iter().map(|&g| carrier.position(g).unwrap()).collect();
    let mut coeffs = Vec::with_capacity(local.len() * local.len());
    for &a in &local {
        for &b in &local {
            let global = carrier.globalize(conn.nabla(a, b));
            coeffs.push(sub.localize(&global).expect("autoparallel"));
        }
    }
    Ok(Connection { carrier: sub.clone(), coeffs })
}

/// Flat torsion-free connection on a graded solvable algebra `a ⊕ Σ_{k>0} g^k`:
///
/// | X   | Y   | ∇_X Y              |
/// |-----|-----|--------------------|
/// | a   | a   | 0                  |
/// | g^i | g^j | j/(i+j)·[X, Y]     |
/// | a   | n   | [X, Y]             |
/// | n   | a   | 0                  |
///
/// `levels[p]` is the degree of the `p`-th basis element of `sub`; elements
/// with level 0 form the abelian part.
pub fn graded_solvable_connection(sub: &Subalgebra, levels: &[i64]) -> Result<Connection> {
    let m = sub.dim();
    if levels.len() != m {
        return Err(Error::GradationInvalid("one level per basis element expected".into()));
    }
    if levels.iter().any(|&k| k < 0) {
        return Err(Error::GradationInvalid("negative level".into()));
    }
    for a in 0..m {
        for b in 0..m {
            let br = sub.bracket(a, b);
            let (la, lb) = (levels[a], levels[b]);
            if la == 0 && lb == 0 && !br.is_zero() {
                return Err(Error::GradationInvalid("abelian part does not commute".into()));
            }
            if br.indices().any(|c| levels[c] != la + lb) {
                return Err(Error::GradationInvalid("bracket does not respect the grading".into()));
            }
        }
    }
    let mut coeffs = Vec::with_capacity(m * m);
    for a in 0..m {
        for b in 0..m {
            let (la, lb) = (levels[a], levels[b]);
            let v = match (la, lb) {
                (0, 0) => SparseVec::new(),
                (0, _) => sub.bracket(a, b),
                (_, 0) => SparseVec::new(),
                (i, j) => sub.bracket(a, b).scale(&Rational::new(j, i + j)),
            };
            coeffs.push(v);
        }
    }
    Ok(Connection { carrier: sub.clone(), coeffs })
}

/// All pairs `(a, b)` where `∇¹_{X_a}X_b ≠ ∇²_{X_a}X_b`, with `∇¹ − ∇²`.
pub fn connection_diff(c1: &Connection, c2: &Connection) -> Result<Vec<(usize, usize, SparseVec)>> {
    if c1.carrier != c2.carrier {
        return Err(Error::CarrierMismatch);
    }
    let m = c1.dim();
    let mut out = Vec::new();
    for a in 0..m {
        for b in 0..m {
            let d = c1.nabla(a, b).sub(c2.nabla(a, b));
            if !d.is_zero() {
                out.push((a, b, d));
            }
        }
    }
    Ok(out)
}

/// `∇'_X Y = ∇_X Y − ξ(X)Y − ξ(Y)X`.
pub fn projective_change(conn: &Connection, xi: &[Rational]) -> Result<Connection> {
    let m = conn.dim();
    if xi.len() != m {
        return Err(Error::InvalidInput(alloc::format!("covector of length {} on a {}-dimensional carrier", xi.len(), m)));
    }
    let mut coeffs = Vec::with_capacity(m * m);
    for a in 0..m {
        for b in 0..m {
            let mut acc = Accumulator::new();
            acc.add_scaled(conn.nabla(a, b), &Rational::one());
            acc.push(b, -&xi[a]);
            acc.push(a, -&xi[b]);
            coeffs.push(acc.finish());
        }
    }
    Ok(Connection { carrier: conn.carrier.clone(), coeffs })
}

/// `tr ∇_{[X_a,X_b]}` for all pairs, as an `m × m` array.
pub fn bracket_traces(conn: &Connection) -> RatMatrix {
    let m = conn.dim();
    let traces: Vec<Rational> = (0..m).map(|a| conn.trace(a)).collect();
    let mut out = RatMatrix::zero(m, m);
    for a in 0..m {
        for b in 0..m {
            out.set(a, b, conn.carrier.bracket(a, b).dot_dense(&traces));
        }
    }
    out
}

/// Whether every coefficient vanishes (the zero product).
pub fn is_zero_connection(conn: &Connection) -> bool {
    conn.coeffs.iter().all(SparseVec::is_zero)
}

/// Dense `m × m` view of a bilinear form given by a closure.
pub fn bilinear(m: usize, f: impl Fn(usize, usize) -> Rational) -> RatMatrix {
    let mut out = RatMatrix::zero(m, m);
    for a in 0..m {
        for b in 0..m {
            out.set(a, b, f(a, b));
        }
    }
    out
}
