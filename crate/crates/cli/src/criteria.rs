//! Exact acceptance checks. Each returns a [`Check`] whose `detail` is
//! deterministic, so suite output is byte-stable across runs and thread counts.

use std::sync::Arc;

use projflat_core::connection::{
    bracket_traces, canonical_connection, connection_diff, curvature, graded_solvable_connection, induced_connection,
    is_autoparallel, projective_change, weyl, Connection,
};
use projflat_core::decide::{
    candidate_witnesses, decide_with, replay_certificate, verify_witness, build_condition_system, DecideOptions,
    FlatnessVerdict, SolveOptions, Terminal, DEFAULT_DEPTH,
};
use projflat_core::det::{linear_factor_divides, poly_det, DetStrategy};
use projflat_core::lie::{BasisElement, LieAlgebraModel};
use projflat_core::matrix::Field;
use projflat_core::parabolic::{build_structure, levels_on, parabolic, solvable_part, thm1_predicate, SimpleRootSubset, Structure};
use projflat_core::poly::MultiPoly;
use projflat_core::quaternion::Unit;
use projflat_core::rational::{rat, Rational};
use projflat_core::rep::{
    build_rep_symmetric, build_rep_traceless, conjugate_rep, invariant_poly, p_condition, q_matrix, traceless_projection,
    verify_homomorphism,
};
use projflat_core::sparse::SparseVec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::commands::solvable_factor;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(id: &str, name: &str, failures: &[String], detail: String) -> Check {
        let detail = match failures.first() {
            None => detail,
            Some(first) => format!("{} failure(s), first: {first}", failures.len()),
        };
        Check { id: id.into(), name: name.into(), passed: failures.is_empty(), detail }
    }

    pub fn line(&self) -> String {
        format!("{} {} {}: {}", if self.passed { "PASS" } else { "FAIL" }, self.id, self.name, self.detail)
    }
}

pub const REAL_TABLE_SIZES: [usize; 5] = [2, 3, 4, 5, 6];
pub const QUATERNION_SIZES: [usize; 2] = [2, 3];

fn model(field: Field, n: usize) -> Arc<LieAlgebraModel> {
    LieAlgebraModel::build(field, n).expect("n >= 2")
}

fn label(field: Field, n: usize) -> String {
    format!("sl({n},{})", if field == Field::Real { "R" } else { "H" })
}

fn cases(real: &[usize], quaternion: &[usize]) -> Vec<(Field, usize)> {
    real.iter().map(|&n| (Field::Real, n)).chain(quaternion.iter().map(|&n| (Field::Quaternion, n))).collect()
}

/// Criterion 1: the canonical connection is torsion-free with `W ≡ 0`.
pub fn weyl_vanishes(real: &[usize], quaternion: &[usize]) -> Check {
    let cases = cases(real, quaternion);
    let failures: Vec<String> = cases
        .par_iter()
        .filter_map(|&(field, n)| {
            let c = canonical_connection(&model(field, n));
            if !c.is_torsion_free() {
                return Some(format!("{} has torsion", label(field, n)));
            }
            match weyl(&c) {
                Ok(w) if w.iter().all(SparseVec::is_zero) => None,
                Ok(_) => Some(format!("{} has W != 0", label(field, n))),
                Err(e) => Some(format!("{}: {e}", label(field, n))),
            }
        })
        .collect();
    let names: Vec<String> = cases.iter().map(|&(f, n)| label(f, n)).collect();
    Check::new("C1", "projective flatness", &failures, format!("W = 0 and torsion = 0 on {}", names.join(", ")))
}

fn h_entry(n: usize, k: usize, t: usize) -> Rational {
    if t <= k {
        rat((n - k) as i64, n as i64)
    } else {
        rat(-(k as i64), n as i64)
    }
}

fn unit_product(u: Unit, v: Unit) -> Option<(Unit, i64)> {
    use Unit::*;
    match (u, v) {
        (I, J) => Some((K, 1)),
        (J, K) => Some((I, 1)),
        (K, I) => Some((J, 1)),
        (J, I) => Some((K, -1)),
        (K, J) => Some((I, -1)),
        (I, K) => Some((J, -1)),
        _ => None,
    }
}

/// Table value of `∇_x y`, as `(element, coefficient)` terms, where the table covers the pair.
fn expected_nabla(n: usize, x: BasisElement, y: BasisElement) -> Option<Vec<(BasisElement, Rational)>> {
    use BasisElement::*;
    let nn = n as i64;
    let diag_step = |t: usize| {
        // H^t − H^{t−1} with H^0 = H^n = 0
        let mut v = Vec::new();
        if t < n {
            v.push((H(t), Rational::one()));
        }
        if t > 1 {
            v.push((H(t - 1), -Rational::one()));
        }
        v
    };
    let one = Unit::One;
    Some(match (x, y) {
        (H(k), H(l)) => {
            let (k, l) = (k.min(l), k.max(l));
            if k == l {
                vec![(H(k), rat((n - l) as i64 - k as i64, nn))]
            } else {
                vec![(H(k), rat((n - l) as i64, nn)), (H(l), rat(-(k as i64), nn))]
            }
        }
        (H(k), E { i, j, unit }) if unit == one => vec![(E { i, j, unit }, h_entry(n, k, i))],
        (E { i, j, unit }, H(k)) if unit == one => vec![(E { i, j, unit }, h_entry(n, k, j))],
        (E { i, j, unit: u1 }, E { i: k, j: l, unit: u2 }) if u1 == one && u2 == one => {
            if i != l {
                if j == k {
                    vec![(E { i, j: l, unit: one }, Rational::one())]
                } else {
                    vec![]
                }
            } else if j == k {
                diag_step(i)
            } else {
                vec![]
            }
        }
        (ImDiag { t, unit }, H(k)) | (H(k), ImDiag { t, unit }) => vec![(ImDiag { t, unit }, h_entry(n, k, t))],
        (ImDiag { t, unit: u }, ImDiag { t: s, unit: v }) => {
            if t != s {
                vec![]
            } else if u == v {
                diag_step(t).into_iter().map(|(b, c)| (b, -c)).collect()
            } else {
                let (w, sign) = unit_product(u, v)?;
                vec![(ImDiag { t, unit: w }, Rational::from(sign))]
            }
        }
        _ => return None,
    })
}

fn expected_gamma(n: usize, x: BasisElement, y: BasisElement) -> Option<Rational> {
    use BasisElement::*;
    let nn = n as i64;
    let one = Unit::One;
    Some(match (x, y) {
        (H(i), H(j)) => {
            let (i, j) = (i.min(j), i.max(j));
            rat(-((i * (n - j)) as i64), nn * nn)
        }
        (H(_), E { unit, .. }) | (E { unit, .. }, H(_)) if unit == one => Rational::zero(),
        (E { i, j, unit: u1 }, E { i: k, j: l, unit: u2 }) if u1 == one && u2 == one => {
            if j == k && i == l {
                rat(-1, nn)
            } else {
                Rational::zero()
            }
        }
        (ImDiag { t, unit: u }, ImDiag { t: s, unit: v }) if t == s && u == v => rat(1, nn),
        _ => return None,
    })
}

fn table_failures(field: Field, n: usize) -> (usize, Vec<String>) {
    let m = model(field, n);
    let c = canonical_connection(&m);
    let pack = curvature(&c);
    let mut failures = Vec::new();
    let mut checked = 0;
    let Some(gamma) = pack.gamma.as_ref() else {
        return (0, vec![format!("{}: Ricci not symmetric", label(field, n))]);
    };
    for a in 0..m.dim() {
        for b in 0..m.dim() {
            let (x, y) = (m.element(a), m.element(b));
            if let Some(terms) = expected_nabla(n, x, y) {
                checked += 1;
                let expected = SparseVec::from_pairs(terms.into_iter().map(|(e, v)| (m.index_of(&e).unwrap(), v)).collect());
                if *c.nabla(a, b) != expected {
                    failures.push(format!("{}: nabla({x}, {y})", label(field, n)));
                }
            }
            if let Some(g) = expected_gamma(n, x, y) {
                checked += 1;
                if *gamma.get(a, b) != g {
                    failures.push(format!("{}: gamma({x}, {y}) = {} not {g}", label(field, n), gamma.get(a, b)));
                }
            }
        }
    }
    (checked, failures)
}

/// Criterion 2: connection and `γ` coefficient tables.
pub fn coefficient_tables(real: &[usize], quaternion: &[usize]) -> Check {
    let results: Vec<(usize, Vec<String>)> = cases(real, quaternion).par_iter().map(|&(f, n)| table_failures(f, n)).collect();
    let mut failures: Vec<String> = results.iter().flat_map(|(_, f)| f.clone()).collect();
    let checked: usize = results.iter().map(|(c, _)| c).sum();
    if real.contains(&4) {
        let g = curvature(&canonical_connection(&model(Field::Real, 4))).gamma.unwrap();
        if *g.get(0, 0) != rat(-3, 16) {
            failures.push(format!("gamma(H1, H1) on sl(4,R) = {}", g.get(0, 0)));
        }
    }
    Check::new("C2", "coefficient tables", &failures, format!("{checked} table entries match"))
}

/// Criterion 3: `q_Λ′` and `s_Λ′` are closed under `∇`.
pub fn autoparallel(real_max: usize, quaternion_max: usize) -> Check {
    let cases = cases(&(2..=real_max).collect::<Vec<_>>(), &(2..=quaternion_max).collect::<Vec<_>>());
    let results: Vec<(usize, Vec<String>)> = cases
        .par_iter()
        .map(|&(field, n)| {
            let m = model(field, n);
            let c = canonical_connection(&m);
            let mut failures = Vec::new();
            let subsets = SimpleRootSubset::all_proper(n);
            for s in &subsets {
                for st in [Structure::Parabolic, Structure::Solvable] {
                    if !is_autoparallel(&c, &build_structure(&m, s, st)) {
                        failures.push(format!("{} {st} {{{s}}}", label(field, n)));
                    }
                }
            }
            (2 * subsets.len(), failures)
        })
        .collect();
    let failures: Vec<String> = results.iter().flat_map(|(_, f)| f.clone()).collect();
    let total: usize = results.iter().map(|(c, _)| c).sum();
    Check::new("C3", "autoparallelity", &failures, format!("{total} subalgebras closed under the connection"))
}

/// Subsets with 1 and n−1 and steps of 1 or 2, minus the full set.
pub fn composition_count(n: usize) -> usize {
    // compositions of n−2 into parts 1 and 2
    let (mut a, mut b) = (1usize, 1usize);
    for _ in 0..n.saturating_sub(2) {
        (a, b) = (b, a + b);
    }
    a - 1
}

/// Criterion 4: solver verdicts on parabolics equal the closed-form predicate.
pub fn parabolic_classification(sizes: &[usize]) -> Check {
    let mut failures = Vec::new();
    let mut parts = Vec::new();
    for &n in sizes {
        let m = model(Field::Real, n);
        let c = canonical_connection(&m);
        let subsets = SimpleRootSubset::all_proper(n);
        let verdicts: Vec<(SimpleRootSubset, &'static str)> = subsets
            .par_iter()
            .map(|s| {
                let tag = decide_with(&c, s, Structure::Parabolic, &DecideOptions::default()).map_or("error", |d| d.verdict.tag());
                (s.clone(), tag)
            })
            .collect();
        let mut not_flat = Vec::new();
        let mut matched = 0;
        for (s, tag) in &verdicts {
            let expected = if thm1_predicate(n, s) { "not_flat" } else { "flat" };
            if *tag == expected {
                matched += 1;
            } else {
                failures.push(format!("n={n} {{{s}}}: {tag}, expected {expected}"));
            }
            if *tag == "not_flat" {
                not_flat.push(projflat_core::parabolic::dynkin_render(n, s));
            }
        }
        if not_flat.len() != composition_count(n) {
            failures.push(format!("n={n}: {} not_flat, composition count {}", not_flat.len(), composition_count(n)));
        }
        let shown = if not_flat.is_empty() { "none".to_string() } else { not_flat.join(" ") };
        parts.push(format!("n={n}: {matched}/{} matched, not_flat {shown}", verdicts.len()));
    }
    Check::new("C4", "parabolic classification", &failures, parts.join("; "))
}

/// Criterion 5: every quaternionic parabolic ends in a negative square.
pub fn quaternionic(sizes: &[usize]) -> Check {
    let mut jobs = Vec::new();
    for &n in sizes {
        for s in SimpleRootSubset::all_proper(n) {
            jobs.push((n, s));
        }
    }
    let models: Vec<(usize, Connection)> = sizes.iter().map(|&n| (n, canonical_connection(&model(Field::Quaternion, n)))).collect();
    let results: Vec<Result<String, String>> = jobs
        .par_iter()
        .map(|(n, s)| {
            let c = &models.iter().find(|(k, _)| k == n).unwrap().1;
            let who = format!("sl({n},H) {{{s}}}");
            let d = decide_with(c, s, Structure::Parabolic, &DecideOptions::default()).map_err(|e| format!("{who}: {e}"))?;
            let FlatnessVerdict::NotFlat { certificate } = &d.verdict else {
                return Err(format!("{who}: {}", d.verdict.tag()));
            };
            if !replay_certificate(&d.system, certificate) {
                return Err(format!("{who}: certificate does not replay"));
            }
            match certificate.final_terminal() {
                Terminal::NegativeSquare { value, .. } if value.is_negative() => {
                    Ok(d.certificate_lines().unwrap().last().cloned().unwrap_or_default())
                }
                _ => Err(format!("{who}: final step is not a negative square")),
            }
        })
        .collect();
    let failures: Vec<String> = results.iter().filter_map(|r| r.as_ref().err().cloned()).collect();
    let finals: Vec<String> = results.iter().filter_map(|r| r.as_ref().ok()).map(|l| l.rsplit(" reduces to ").next().unwrap_or(l).to_string()).collect();
    Check::new("C5", "quaternionic parabolics", &failures, format!("{} parabolics not flat, final steps {}", jobs.len(), finals.join(", ")))
}

/// Criterion 6: the recipe covector on `s_Λ′` satisfies the system and flattens `∇`.
pub fn solvable_recipe(max_n: usize) -> Check {
    let mut jobs = Vec::new();
    for n in 2..=max_n {
        for s in SimpleRootSubset::all_proper(n) {
            jobs.push((n, s));
        }
    }
    let models: Vec<Connection> = (2..=max_n).map(|n| canonical_connection(&model(Field::Real, n))).collect();
    let failures: Vec<String> = jobs
        .par_iter()
        .filter_map(|(n, s)| {
            let c = &models[n - 2];
            let sub = solvable_part(c.carrier().model(), s);
            let conn = induced_connection(c, &sub).ok()?;
            let system = build_condition_system(&conn, &curvature(&conn)).ok()?;
            let xi = candidate_witnesses(&sub, s, Structure::Solvable).remove(0);
            (!verify_witness(&conn, &system, &xi)).then(|| format!("n={n} {{{s}}}"))
        })
        .collect();
    Check::new("C6", "solvable flatness", &failures, format!("{} recipe witnesses verified for n <= {max_n}", jobs.len()))
}

/// Criterion 7: `φ` on `s_Λ′` carries the linear factor `Σ i_j x_j − n x_{m+1}`.
pub fn invariant_factor(max_size: usize, max_n: usize) -> Check {
    let mut jobs = Vec::new();
    for n in 2..=max_n {
        let m = model(Field::Real, n);
        for s in SimpleRootSubset::all_proper(n) {
            let sub = solvable_part(&m, &s);
            if sub.dim() < max_size {
                jobs.push((m.clone(), s, sub));
            }
        }
    }
    let failures: Vec<String> = jobs
        .par_iter()
        .filter_map(|(m, s, sub)| {
            let who = format!("n={} {{{s}}}", m.n());
            let conn = induced_connection(&canonical_connection(m), sub).ok()?;
            let rep = build_rep_symmetric(&conn, &curvature(&conn)).ok()?;
            let phi = match invariant_poly(&rep, DetStrategy::Bareiss, max_size) {
                Ok(p) => p,
                Err(e) => return Some(format!("{who}: {e}")),
            };
            let ell = solvable_factor(sub.dim(), s);
            match linear_factor_divides(&phi, &ell) {
                Ok((true, Some(q))) if q.mul(&ell) == phi => None,
                _ => Some(format!("{who}: factor does not divide")),
            }
        })
        .collect();
    Check::new("C7", "invariant factor", &failures, format!("{} invariants with m+1 <= {max_size} divisible", jobs.len()))
}

/// Criterion 8: the graded flat connections on `s_∅` and `s_{α₃}` in `sl(4,ℝ)`
/// differ on exactly two pairs.
pub fn graded_comparison() -> Check {
    let m4 = model(Field::Real, 4);
    let alpha3 = SimpleRootSubset::new(4, &[3]).unwrap();
    let empty = SimpleRootSubset::empty(4);
    let s_empty = solvable_part(&m4, &empty);
    let s3 = solvable_part(&m4, &alpha3);
    let mut failures = Vec::new();
    let e = |i, j| BasisElement::E { i, j, unit: Unit::One };
    let run = || -> Result<Vec<(BasisElement, BasisElement, Rational, Rational)>, String> {
        let big = graded_solvable_connection(&s_empty, &levels_on(&s_empty, &empty)).map_err(|e| e.to_string())?;
        let small = graded_solvable_connection(&s3, &levels_on(&s3, &alpha3)).map_err(|e| e.to_string())?;
        let restricted = induced_connection(&big, &s3).map_err(|e| e.to_string())?;
        let diff = connection_diff(&restricted, &small).map_err(|e| e.to_string())?;
        let e14 = s3.position(m4.index_of(&e(1, 4)).unwrap()).unwrap();
        Ok(diff
            .iter()
            .map(|(a, b, _)| (s3.element(*a), s3.element(*b), restricted.nabla(*a, *b).get(e14), small.nabla(*a, *b).get(e14)))
            .collect())
    };
    let detail = match run() {
        Err(err) => {
            failures.push(err);
            String::new()
        }
        Ok(rows) => {
            let expected = vec![(e(1, 2), e(2, 4), rat(2, 3), rat(1, 2)), (e(2, 4), e(1, 2), rat(-1, 3), rat(-1, 2))];
            if rows != expected {
                failures.push(format!("{} differing pairs", rows.len()));
            }
            rows.iter().map(|(x, y, a, b)| format!("nabla({x},{y}): {a} vs {b} E14")).collect::<Vec<_>>().join("; ")
        }
    };
    Check::new("C8", "graded connection comparison", &failures, detail)
}

fn rep_layer_failures(conn: &Connection, who: &str) -> Vec<String> {
    let mut failures = Vec::new();
    let pack = curvature(conn);
    let traceless = build_rep_traceless(conn, &pack);
    if !verify_homomorphism(&traceless) {
        failures.push(format!("{who}: traceless form is not a homomorphism"));
    }
    if pack.ricci_symmetric() {
        match build_rep_symmetric(conn, &pack) {
            Ok(rep) if verify_homomorphism(&rep) => {}
            _ => failures.push(format!("{who}: symmetric form is not a homomorphism")),
        }
    }
    if p_condition(&traceless).is_none() {
        failures.push(format!("{who}: (P) condition fails"));
    }
    let traces = bracket_traces(conn);
    let k = Rational::from(conn.dim() + 1);
    let dim = conn.dim();
    let identity = (0..dim).all(|a| (0..dim).all(|b| *traces.get(a, b) == &k * &(pack.p.get(a, b) - pack.p.get(b, a))));
    if !identity {
        failures.push(format!("{who}: trace identity fails"));
    }
    failures
}

/// A canonical connection, or the one induced on a structure.
type Job = (Field, usize, Option<(SimpleRootSubset, Structure)>);

/// Criterion 9: homomorphism, (P) condition and trace identity on every
/// canonical and induced connection.
pub fn representation_layer(real_max: usize, quaternion_max: usize) -> Check {
    let mut jobs: Vec<Job> = Vec::new();
    for (field, n) in cases(&(2..=real_max).collect::<Vec<_>>(), &(2..=quaternion_max).collect::<Vec<_>>()) {
        jobs.push((field, n, None));
        for s in SimpleRootSubset::all_proper(n) {
            for st in [Structure::Parabolic, Structure::Solvable] {
                jobs.push((field, n, Some((s.clone(), st))));
            }
        }
    }
    let canon: Vec<((Field, usize), Connection)> = jobs
        .iter()
        .filter(|j| j.2.is_none())
        .map(|&(f, n, _)| ((f, n), canonical_connection(&model(f, n))))
        .collect();
    let failures: Vec<String> = jobs
        .par_iter()
        .flat_map_iter(|(field, n, which)| {
            let c = &canon.iter().find(|(key, _)| *key == (*field, *n)).unwrap().1;
            match which {
                None => rep_layer_failures(c, &label(*field, *n)),
                Some((s, st)) => {
                    let who = format!("{} {st} {{{s}}}", label(*field, *n));
                    match induced_connection(c, &build_structure(c.carrier().model(), s, *st)) {
                        Ok(conn) => rep_layer_failures(&conn, &who),
                        Err(e) => vec![format!("{who}: {e}")],
                    }
                }
            }
        })
        .collect();
    Check::new("C9", "representation layer", &failures, format!("{} connections checked", jobs.len()))
}

fn random_rat(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.random_range(-7..=7), rng.random_range(1..=5))
}

fn jacobi_holds(m: &LieAlgebraModel) -> bool {
    let d = m.dim();
    let br = |v: &SparseVec, c: usize| v.iter().fold(SparseVec::new(), |acc, (i, x)| acc.add_scaled(m.bracket(i, c), x));
    (0..d).all(|a| {
        (a + 1..d).all(|b| {
            (b + 1..d).all(|c| {
                br(m.bracket(a, b), c).add(&br(m.bracket(b, c), a)).add(&br(m.bracket(c, a), b)).is_zero()
            })
        })
    })
}

/// Criterion 10: seeded randomized identities.
pub fn properties(seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();

    let mut dets = 0;
    for size in 1..=6 {
        for _ in 0..4 {
            let grid: Vec<Vec<MultiPoly>> = (0..size)
                .map(|_| {
                    (0..size)
                        .map(|_| MultiPoly::linear(&[random_rat(&mut rng), random_rat(&mut rng)], random_rat(&mut rng)))
                        .collect()
                })
                .collect();
            let a = poly_det(&grid, DetStrategy::Bareiss, 16).unwrap();
            let b = poly_det(&grid, DetStrategy::MinorExpansion, 16).unwrap();
            if a != b {
                failures.push(format!("determinant strategies differ at size {size}"));
            }
            if size >= 2 {
                let mut swapped = grid.clone();
                swapped.iter_mut().for_each(|row| row.swap(0, size - 1));
                if poly_det(&swapped, DetStrategy::Bareiss, 16).unwrap() != a.neg() {
                    failures.push(format!("column swap does not negate at size {size}"));
                }
            }
            dets += 1;
        }
    }

    let m3 = model(Field::Real, 3);
    let c3 = canonical_connection(&m3);
    let s = induced_connection(&c3, &solvable_part(&m3, &SimpleRootSubset::empty(3))).unwrap();
    let rep = build_rep_symmetric(&s, &curvature(&s)).unwrap();
    let phi = invariant_poly(&rep, DetStrategy::Bareiss, 16).unwrap();
    if invariant_poly(&traceless_projection(&rep), DetStrategy::Bareiss, 16).unwrap() != phi {
        failures.push("phi changes under the trace shift".into());
    }
    let dim = s.dim();
    for _ in 0..20 {
        let xi: Vec<Rational> = (0..dim).map(|_| random_rat(&mut rng)).collect();
        let conj = conjugate_rep(&rep, &xi).unwrap();
        let phi_conj = invariant_poly(&conj, DetStrategy::Bareiss, 16).unwrap();
        let q = q_matrix(&xi);
        let v: Vec<Rational> = (0..=dim).map(|_| random_rat(&mut rng)).collect();
        if phi_conj.eval(&v) != phi.eval(&q.mul_dense(&v)) {
            failures.push("phi is not conjugation invariant".into());
        }
    }

    let q3 = induced_connection(&c3, &parabolic(&m3, &SimpleRootSubset::empty(3))).unwrap();
    for (k, conn) in [&c3, &q3].iter().cycle().take(40).enumerate() {
        let w0 = weyl(conn).unwrap();
        let xi: Vec<Rational> = (0..conn.dim()).map(|_| random_rat(&mut rng)).collect();
        let changed = projective_change(conn, &xi).unwrap();
        if !changed.is_torsion_free() || weyl(&changed).unwrap() != w0 {
            failures.push(format!("projective change {k} alters W"));
        }
    }

    let jacobi = [(Field::Real, 2), (Field::Real, 3), (Field::Real, 4), (Field::Quaternion, 2)];
    for (f, n) in jacobi {
        if !jacobi_holds(&model(f, n)) {
            failures.push(format!("Jacobi fails on {}", label(f, n)));
        }
    }
    Check::new(
        "C10",
        "property suites",
        &failures,
        format!("{dets} determinants, 20 conjugations, 40 projective changes, Jacobi on {} algebras (seed {seed})", jacobi.len()),
    )
}

/// Branch order does not change the classification.
pub fn branch_order(sizes: &[usize]) -> Check {
    let mut failures = Vec::new();
    let mut total = 0;
    for &n in sizes {
        let c = canonical_connection(&model(Field::Real, n));
        for s in SimpleRootSubset::all_proper(n) {
            let tags: Vec<&str> = [false, true]
                .iter()
                .map(|&reverse| {
                    let o = DecideOptions {
                        solve: SolveOptions { depth: DEFAULT_DEPTH, reverse },
                        use_candidates: false,
                        oracle_cap: 0,
                        ..DecideOptions::default()
                    };
                    decide_with(&c, &s, Structure::Parabolic, &o).map_or("error", |d| d.verdict.tag())
                })
                .collect();
            if tags[0] != tags[1] {
                failures.push(format!("n={n} {{{s}}}: {} vs {}", tags[0], tags[1]));
            }
            total += 1;
        }
    }
    Check::new("X1", "branch-order independence", &failures, format!("{total} parabolics classified identically"))
}

/// Borel of `sl(2,ℝ)`: `ξ(H¹) = ±1/2` flatten, the zero covector does not.
pub fn borel_example() -> Check {
    let m2 = model(Field::Real, 2);
    let borel = parabolic(&m2, &SimpleRootSubset::empty(2));
    let conn = induced_connection(&canonical_connection(&m2), &borel).unwrap();
    let system = build_condition_system(&conn, &curvature(&conn)).unwrap();
    let zero = Rational::zero();
    let mut failures = Vec::new();
    for v in [rat(1, 2), rat(-1, 2)] {
        if !verify_witness(&conn, &system, &[v.clone(), zero.clone()]) {
            failures.push(format!("xi(H1) = {v} fails"));
        }
    }
    if verify_witness(&conn, &system, &[zero.clone(), zero]) {
        failures.push("zero covector passes".into());
    }
    Check::new("X2", "Borel of sl(2,R)", &failures, "xi(H1) = 1/2 and -1/2 flatten, 0 does not".into())
}

/// All 10 criteria at full scope.
pub fn all_criteria() -> Vec<Check> {
    vec![
        weyl_vanishes(&[2, 3, 4, 5], &QUATERNION_SIZES),
        coefficient_tables(&REAL_TABLE_SIZES, &QUATERNION_SIZES),
        autoparallel(6, 3),
        parabolic_classification(&[6, 7]),
        quaternionic(&QUATERNION_SIZES),
        solvable_recipe(6),
        invariant_factor(12, 5),
        graded_comparison(),
        representation_layer(6, 3),
        properties(0x5eed),
    ]
}

