use std::sync::Arc;

use projflat_core::connection::{canonical_connection, curvature, induced_connection, Connection};
use projflat_core::det::{linear_factor_divides, DetStrategy};
use projflat_core::lie::{LieAlgebraModel, Subalgebra};
use projflat_core::matrix::Field;
use projflat_core::parabolic::{build_structure, SimpleRootSubset, Structure};
use projflat_core::poly::MultiPoly;
use projflat_core::rational::{rat, Rational};
use projflat_core::rep::*;
use projflat_core::sparse::SparseVec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn model(field: Field, n: usize) -> Arc<LieAlgebraModel> {
    LieAlgebraModel::build(field, n).unwrap()
}

fn connections(field: Field, n: usize) -> Vec<Connection> {
    let m = model(field, n);
    let canonical = canonical_connection(&m);
    let mut out = vec![canonical.clone()];
    for subset in SimpleRootSubset::all_proper(n) {
        for st in [Structure::Parabolic, Structure::Solvable] {
            out.push(induced_connection(&canonical, &build_structure(&m, &subset, st)).unwrap());
        }
    }
    out
}

fn random_rat(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.random_range(-6..=6), rng.random_range(1..=4))
}

#[test]
fn homomorphism_holds_on_canonical_and_induced() {
    for (field, n) in [(Field::Real, 2), (Field::Real, 3), (Field::Real, 4), (Field::Quaternion, 2)] {
        for conn in connections(field, n) {
            let pack = curvature(&conn);
            let traceless = build_rep_traceless(&conn, &pack);
            assert!(verify_homomorphism(&traceless), "{field:?} n={n} dim {}", conn.dim());
            if pack.ricci_symmetric() {
                assert!(verify_homomorphism(&build_rep_symmetric(&conn, &pack).unwrap()));
            }
        }
    }
}

#[test]
fn traceless_form_satisfies_p_condition() {
    for conn in connections(Field::Real, 3) {
        let rep = build_rep_traceless(&conn, &curvature(&conn));
        assert!(rep.images().iter().all(|f| f.trace().is_zero()));
        assert!(p_condition(&rep).is_some());
    }
}

#[test]
fn perturbed_connection_breaks_homomorphism() {
    let conn = canonical_connection(&model(Field::Real, 3));
    let m = conn.dim();
    let mut coeffs = conn.coefficients().to_vec();
    coeffs[m + 2] = coeffs[m + 2].add(&SparseVec::single(0, Rational::one()));
    coeffs[2 * m + 1] = coeffs[2 * m + 1].add(&SparseVec::single(0, Rational::one()));
    let bent = Connection::new(conn.carrier().clone(), coeffs).unwrap();
    assert!(bent.is_torsion_free());
    let rep = build_rep_traceless(&bent, &curvature(&bent));
    assert!(first_homomorphism_failure(&rep).is_some());
}

#[test]
fn determinant_strategies_agree_on_phi() {
    for conn in connections(Field::Real, 3).into_iter().filter(|c| c.dim() < 8) {
        let rep = build_rep_traceless(&conn, &curvature(&conn));
        let a = invariant_poly(&rep, DetStrategy::Bareiss, 12).unwrap();
        let b = invariant_poly(&rep, DetStrategy::MinorExpansion, 12).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn phi_is_invariant_under_trace_shift_and_conjugation() {
    let m = model(Field::Real, 3);
    let canonical = canonical_connection(&m);
    let s = build_structure(&m, &SimpleRootSubset::empty(3), Structure::Solvable);
    let conn = induced_connection(&canonical, &s).unwrap();
    let pack = curvature(&conn);
    let rep = build_rep_symmetric(&conn, &pack).unwrap();
    let phi = invariant_poly(&rep, DetStrategy::Bareiss, 12).unwrap();
    assert!(!phi.is_zero());
    assert_eq!(invariant_poly(&traceless_projection(&rep), DetStrategy::Bareiss, 12).unwrap(), phi);

    let dim = conn.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for _ in 0..20 {
        let xi: Vec<Rational> = (0..dim).map(|_| random_rat(&mut rng)).collect();
        let conj = conjugate_rep(&rep, &xi).unwrap();
        assert!(verify_homomorphism(&conj));
        let phi_conj = invariant_poly(&conj, DetStrategy::Bareiss, 12).unwrap();
        // φ_{Q⁻¹fQ}(v) = φ_f(Qv)
        let q = q_matrix(&xi);
        for _ in 0..3 {
            let v: Vec<Rational> = (0..=dim).map(|_| random_rat(&mut rng)).collect();
            assert_eq!(phi_conj.eval(&v), phi.eval(&q.mul_dense(&v)));
        }
    }
}

fn solvable_factor(sub: &Subalgebra, subset: &SimpleRootSubset) -> MultiPoly {
    let m = sub.dim();
    let n = subset.n();
    let mut coeffs = vec![Rational::zero(); m + 1];
    for (pos, i) in subset.complement().into_iter().enumerate() {
        coeffs[pos] = Rational::from(i);
    }
    coeffs[m] = -Rational::from(n);
    MultiPoly::linear(&coeffs, Rational::zero())
}

#[test]
fn solvable_phi_has_the_linear_factor() {
    for n in 2..=4 {
        let m = model(Field::Real, n);
        let canonical = canonical_connection(&m);
        for subset in SimpleRootSubset::all_proper(n) {
            let s = build_structure(&m, &subset, Structure::Solvable);
            let conn = induced_connection(&canonical, &s).unwrap();
            let rep = build_rep_symmetric(&conn, &curvature(&conn)).unwrap();
            let phi = invariant_poly(&rep, DetStrategy::Bareiss, 12).unwrap();
            let ell = solvable_factor(conn.carrier(), &subset);
            let (divides, quotient) = linear_factor_divides(&phi, &ell).unwrap();
            assert!(divides, "n={n} {subset}");
            assert_eq!(quotient.unwrap().mul(&ell), phi);
        }
    }
}
