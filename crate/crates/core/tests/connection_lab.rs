use std::sync::Arc;

use projflat_core::connection::*;
use projflat_core::lie::{BasisElement, LieAlgebraModel, Subalgebra};
use projflat_core::matrix::Field;
use projflat_core::parabolic::*;
use projflat_core::quaternion::Unit;
use projflat_core::rational::{rat, Rational};
use projflat_core::sparse::SparseVec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn e(i: usize, j: usize) -> BasisElement {
    BasisElement::E { i, j, unit: Unit::One }
}

fn model(field: Field, n: usize) -> Arc<LieAlgebraModel> {
    LieAlgebraModel::build(field, n).unwrap()
}

fn ix(m: &LieAlgebraModel, b: BasisElement) -> usize {
    m.index_of(&b).unwrap()
}

fn combo(m: &LieAlgebraModel, terms: &[(BasisElement, Rational)]) -> SparseVec {
    SparseVec::from_pairs(terms.iter().map(|(b, c)| (ix(m, *b), c.clone())).collect())
}

#[test]
fn canonical_table_values() {
    let m2 = model(Field::Real, 2);
    let c = canonical_connection(&m2);
    assert_eq!(*c.nabla(ix(&m2, e(1, 2)), ix(&m2, e(2, 1))), combo(&m2, &[(BasisElement::H(1), rat(1, 1))]));

    let m4 = model(Field::Real, 4);
    let c = canonical_connection(&m4);
    let (h1, h2) = (BasisElement::H(1), BasisElement::H(2));
    let expected = combo(&m4, &[(h1, rat(1, 2)), (h2, rat(-1, 4))]);
    assert_eq!(*c.nabla(ix(&m4, h1), ix(&m4, h2)), expected);
    assert_eq!(*c.nabla(ix(&m4, h2), ix(&m4, h1)), expected);

    let q3 = model(Field::Quaternion, 3);
    let c = canonical_connection(&q3);
    let im = |t, unit| BasisElement::ImDiag { t, unit };
    for t in 1..=3 {
        let (i, j, k) = (ix(&q3, im(t, Unit::I)), ix(&q3, im(t, Unit::J)), ix(&q3, im(t, Unit::K)));
        assert_eq!(*c.nabla(i, j), SparseVec::unit(k));
        let mut terms = Vec::new();
        if t > 1 {
            terms.push((BasisElement::H(t - 1), rat(1, 1)));
        }
        if t < 3 {
            terms.push((BasisElement::H(t), rat(-1, 1)));
        }
        assert_eq!(*c.nabla(i, i), combo(&q3, &terms));
        let other = ix(&q3, im(if t == 1 { 2 } else { 1 }, Unit::J));
        assert!(c.nabla(i, other).is_zero());
    }
}

#[test]
fn curvature_on_sl2() {
    let m2 = model(Field::Real, 2);
    let c = canonical_connection(&m2);
    let pack = curvature(&c);
    let (x, y) = (ix(&m2, e(1, 2)), ix(&m2, e(2, 1)));
    assert_eq!(*pack.r(x, y, x), SparseVec::single(x, rat(-1, 2)));
    for a in 0..3 {
        for z in 0..3 {
            assert!(pack.r(a, a, z).is_zero());
        }
    }
    let w = pack.weyl().unwrap();
    assert!(w.iter().all(SparseVec::is_zero));
    assert_eq!(*pack.p.get(x, y), rat(-1, 2));
}

#[test]
fn gamma_table() {
    let m4 = model(Field::Real, 4);
    let pack = curvature(&canonical_connection(&m4));
    let g = pack.gamma.as_ref().unwrap();
    assert_eq!(*g.get(0, 0), rat(-3, 16));
    // −i(n−j)/n² for i ≤ j
    for i in 1..4 {
        for j in i..4 {
            let v = rat(-((i * (4 - j)) as i64), 16);
            assert_eq!(*g.get(i - 1, j - 1), v);
            assert_eq!(*g.get(j - 1, i - 1), v);
        }
    }
    for n in [3, 4, 5] {
        let m = model(Field::Real, n);
        let pack = curvature(&canonical_connection(&m));
        let g = pack.gamma.unwrap();
        assert_eq!(*g.get(ix(&m, e(1, 2)), ix(&m, e(2, 1))), rat(-1, n as i64));
    }
    let q2 = model(Field::Quaternion, 2);
    let pack = curvature(&canonical_connection(&q2));
    let a = ix(&q2, BasisElement::ImDiag { t: 1, unit: Unit::I });
    assert_eq!(*pack.gamma.unwrap().get(a, a), rat(1, 2));
}

fn calibrate(field: Field, n: usize) {
    let m = model(field, n);
    let pack = curvature(&canonical_connection(&m));
    let g = pack.gamma.expect("Ric symmetric");
    let scale = rat(-1, n as i64);
    for a in 0..m.dim() {
        for b in 0..m.dim() {
            let expected = &m.matrix(a).mul(m.matrix(b)).re_trace() * &scale;
            assert_eq!(*g.get(a, b), expected, "{} {}", m.element(a), m.element(b));
        }
    }
}

#[test]
fn gamma_calibration() {
    for n in 2..=4 {
        calibrate(Field::Real, n);
    }
    calibrate(Field::Quaternion, 2);
}

#[test]
fn canonical_is_torsion_free_and_weyl_flat() {
    for n in 2..=5 {
        let c = canonical_connection(&model(Field::Real, n));
        assert!(c.is_torsion_free());
        assert!(weyl(&c).unwrap().iter().all(SparseVec::is_zero), "sl({n},R)");
    }
    for n in 2..=3 {
        let c = canonical_connection(&model(Field::Quaternion, n));
        assert!(c.is_torsion_free());
        assert!(weyl(&c).unwrap().iter().all(SparseVec::is_zero), "sl({n},H)");
    }
}

#[test]
fn trace_identity() {
    for (field, n) in [(Field::Real, 3), (Field::Real, 4), (Field::Quaternion, 2)] {
        let m = model(field, n);
        let c = canonical_connection(&m);
        let q = parabolic(&m, &SimpleRootSubset::empty(n));
        for conn in [c.clone(), induced_connection(&c, &q).unwrap()] {
            let pack = curvature(&conn);
            let traces = bracket_traces(&conn);
            let k = Rational::from(conn.dim() + 1);
            for a in 0..conn.dim() {
                for b in 0..conn.dim() {
                    let rhs = &k * &(pack.p.get(a, b) - pack.p.get(b, a));
                    assert_eq!(*traces.get(a, b), rhs);
                }
            }
        }
    }
}

fn check_autoparallel_invariants(parent: &Connection, parent_pack: &CurvaturePack, sub: &Subalgebra) {
    let induced = induced_connection(parent, sub).unwrap();
    let pack = curvature(&induced);
    let s = sub.dim();
    let local = |p: usize| parent.carrier().position(sub.indices()[p]).unwrap();
    let k = Rational::from(s);
    for x in 0..s {
        for y in 0..s {
            let p = parent_pack.p.get(local(x), local(y));
            assert_eq!(pack.p.get(x, y), p);
            let ric = &(&k * p) - parent_pack.p.get(local(y), local(x));
            assert_eq!(*pack.ric.get(x, y), ric);
        }
    }
    assert!(is_projectively_flat(&induced, &pack));
}

#[test]
fn autoparallel_subalgebras_inherit_p() {
    for n in 2..=5 {
        let m = model(Field::Real, n);
        let c = canonical_connection(&m);
        let pack = curvature(&c);
        for subset in SimpleRootSubset::all_proper(n) {
            let q = parabolic(&m, &subset);
            let s = solvable_part(&m, &subset);
            assert!(q.is_bracket_closed() && s.is_bracket_closed());
            assert!(is_autoparallel(&c, &q), "q {subset}");
            assert!(is_autoparallel(&c, &s), "s {subset}");
            if n <= 4 {
                check_autoparallel_invariants(&c, &pack, &q);
                check_autoparallel_invariants(&c, &pack, &s);
            }
        }
    }
    let q2 = model(Field::Quaternion, 2);
    let c = canonical_connection(&q2);
    let pack = curvature(&c);
    let borel = parabolic(&q2, &SimpleRootSubset::empty(2));
    check_autoparallel_invariants(&c, &pack, &borel);
}

#[test]
fn autoparallel_for_n_six_and_quaternions() {
    let m = model(Field::Real, 6);
    let c = canonical_connection(&m);
    for subset in SimpleRootSubset::all_proper(6) {
        assert!(is_autoparallel(&c, &parabolic(&m, &subset)));
        assert!(is_autoparallel(&c, &solvable_part(&m, &subset)));
    }
    for n in 2..=3 {
        let m = model(Field::Quaternion, n);
        let c = canonical_connection(&m);
        for subset in SimpleRootSubset::all_proper(n) {
            assert!(is_autoparallel(&c, &parabolic(&m, &subset)));
            assert!(is_autoparallel(&c, &solvable_part(&m, &subset)));
        }
    }
}

#[test]
fn induced_connection_cases() {
    let m4 = model(Field::Real, 4);
    let c = canonical_connection(&m4);
    let q = parabolic(&m4, &SimpleRootSubset::new(4, &[2]).unwrap());
    let pack = curvature(&induced_connection(&c, &q).unwrap());
    for i in 1..4 {
        let p = q.position(ix(&m4, BasisElement::H(i))).unwrap();
        // on q, γ is read off the symmetric part of P
        assert_eq!(*pack.p.get(p, p), rat(-(((4 - i) * i) as i64), 16));
    }
    let full = Subalgebra::full(&m4);
    assert_eq!(induced_connection(&c, &full).unwrap(), c);
    let m2 = model(Field::Real, 2);
    let c2 = canonical_connection(&m2);
    let line = Subalgebra::from_elements(&m2, &[e(1, 2)]).unwrap();
    assert!(is_autoparallel(&c2, &line));
    let q2 = model(Field::Quaternion, 2);
    let c = canonical_connection(&q2);
    let circle = Subalgebra::from_elements(&q2, &[BasisElement::ImDiag { t: 1, unit: Unit::I }]).unwrap();
    assert!(!is_autoparallel(&c, &circle));
    assert_eq!(induced_connection(&c, &circle), Err(projflat_core::error::Error::NotAutoparallel));
}

#[test]
fn codazzi_cases() {
    let m2 = model(Field::Real, 2);
    let borel = parabolic(&m2, &SimpleRootSubset::empty(2));
    let induced = induced_connection(&canonical_connection(&m2), &borel).unwrap();
    assert!(codazzi_flat(&induced).unwrap());
    let flat = graded_solvable_connection(&borel, &levels_on(&borel, &SimpleRootSubset::empty(2))).unwrap();
    assert!(curvature(&flat).is_flat());
    assert!(codazzi_flat(&flat).unwrap());
    assert!(codazzi_flat(&canonical_connection(&m2)).is_err());
}

#[test]
fn graded_solvable_is_flat() {
    for n in 2..=6 {
        let m = model(Field::Real, n);
        for subset in SimpleRootSubset::all_proper(n) {
            if n == 6 && subset.indices().len() > 1 {
                continue;
            }
            let s = solvable_part(&m, &subset);
            let conn = graded_solvable_connection(&s, &levels_on(&s, &subset)).unwrap();
            assert!(conn.is_torsion_free());
            assert!(curvature(&conn).is_flat(), "n={n} {subset}");
        }
    }
    let q2 = model(Field::Quaternion, 2);
    let s = solvable_part(&q2, &SimpleRootSubset::empty(2));
    let conn = graded_solvable_connection(&s, &levels_on(&s, &SimpleRootSubset::empty(2))).unwrap();
    assert!(curvature(&conn).is_flat());
}

#[test]
fn graded_solvable_rejects_bad_gradings() {
    let m4 = model(Field::Real, 4);
    let s = solvable_part(&m4, &SimpleRootSubset::empty(4));
    let mut levels = levels_on(&s, &SimpleRootSubset::empty(4));
    levels[s.position(ix(&m4, e(1, 2))).unwrap()] = 5;
    assert!(matches!(graded_solvable_connection(&s, &levels), Err(projflat_core::error::Error::GradationInvalid(_))));
}

#[test]
fn graded_connections_differ_on_two_pairs() {
    let m4 = model(Field::Real, 4);
    let alpha3 = SimpleRootSubset::new(4, &[3]).unwrap();
    let empty = SimpleRootSubset::empty(4);
    let s_empty = solvable_part(&m4, &empty);
    let s3 = solvable_part(&m4, &alpha3);
    let n_empty = graded_solvable_connection(&s_empty, &levels_on(&s_empty, &empty)).unwrap();
    let n3 = graded_solvable_connection(&s3, &levels_on(&s3, &alpha3)).unwrap();

    let p = |s: &Subalgebra, b| s.position(ix(&m4, b)).unwrap();
    let target = |s: &Subalgebra, c| SparseVec::single(p(s, e(1, 4)), c);
    assert_eq!(*n_empty.nabla(p(&s_empty, e(1, 2)), p(&s_empty, e(2, 4))), target(&s_empty, rat(2, 3)));
    assert_eq!(*n3.nabla(p(&s3, e(1, 2)), p(&s3, e(2, 4))), target(&s3, rat(1, 2)));

    let restricted = induced_connection(&n_empty, &s3).unwrap();
    let diff = connection_diff(&restricted, &n3).unwrap();
    let named: Vec<_> = diff.iter().map(|(a, b, d)| (s3.element(*a), s3.element(*b), d.clone())).collect();
    assert_eq!(
        named,
        vec![
            (e(1, 2), e(2, 4), target(&s3, rat(1, 6))),
            (e(2, 4), e(1, 2), target(&s3, rat(1, 6))),
        ]
    );
    assert!(connection_diff(&n3, &n3).unwrap().is_empty());
    assert!(connection_diff(&n3, &n_empty).is_err());
}

#[test]
fn projective_change_cases() {
    let m2 = model(Field::Real, 2);
    let borel = parabolic(&m2, &SimpleRootSubset::empty(2));
    let induced = induced_connection(&canonical_connection(&m2), &borel).unwrap();
    assert_eq!(projective_change(&induced, &[Rational::zero(), Rational::zero()]).unwrap(), induced);
    let flat = projective_change(&induced, &[rat(-1, 2), Rational::zero()]).unwrap();
    assert!(curvature(&flat).is_flat());
    assert!(flat.is_torsion_free());
}

#[test]
fn projective_change_preserves_weyl() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let m3 = model(Field::Real, 3);
    let c = canonical_connection(&m3);
    let q = parabolic(&m3, &SimpleRootSubset::empty(3));
    let base = [c.clone(), induced_connection(&c, &q).unwrap()];
    for round in 0..50 {
        let conn = &base[round % 2];
        let w0 = weyl(conn).unwrap();
        let xi: Vec<Rational> = (0..conn.dim()).map(|_| rat(rng.random_range(-9..=9), rng.random_range(1..=5))).collect();
        let changed = projective_change(conn, &xi).unwrap();
        assert!(changed.is_torsion_free());
        assert_eq!(weyl(&changed).unwrap(), w0);
    }
}
