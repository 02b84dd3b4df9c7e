//! Deciding whether the projective class of an induced connection contains a
//! flat affine connection.
//!
//! A covector `ξ` is a witness when the projective change
//! `∇'_X Y = ∇_X Y − ξ(X)Y − ξ(Y)X` is flat, which amounts to the quadratic
//! system `ξ(∇_{X_a}X_b) − ξ_a ξ_b − γ(X_a, X_b) = 0` over all ordered pairs.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::connection::{canonical_connection, curvature, induced_connection, is_autoparallel, projective_change, Connection, CurvaturePack};
use crate::det::{linear_factor_divides, DetStrategy};
use crate::error::{Error, Result};
use crate::lie::{BasisElement, LieAlgebraModel, Subalgebra};
use crate::matrix::{Field, RatMatrix};
use crate::parabolic::{build_structure, dynkin_render, SimpleRootSubset, Structure};
use crate::poly::{Degree, Monomial, MultiPoly};
use crate::quaternion::Unit;
use crate::rational::Rational;
use crate::rep::{build_rep_symmetric, invariant_poly, verify_homomorphism, Representation};
use crate::sparse::SparseVec;

/// Default branch depth of [`solve`].
pub const DEFAULT_DEPTH: usize = 8;
/// Largest `m+1` for which [`decide`] computes the invariant symbolically.
pub const DEFAULT_ORACLE_CAP: usize = 12;
/// Random points tried by the probabilistic oracle.
pub const DEFAULT_TRIALS: usize = 8;

/// Names of the unknowns `ξ(X_a)` used in certificates.
pub fn unknown_names(sub: &Subalgebra) -> Vec<String> {
    let real = sub.model().field() == Field::Real;
    let pair = |i: usize, j: usize| if i < 10 && j < 10 { format!("{}{}", i, j) } else { format!("{},{}", i, j) };
    sub.elements()
        .iter()
        .map(|e| match *e {
            BasisElement::H(k) => format!("xi_{}", k),
            BasisElement::ImDiag { t, unit } => format!("{}_{}", letter(unit), pair(t, t)),
            BasisElement::E { i, j, .. } if real => format!("zeta_{}", pair(i, j)),
            BasisElement::E { i, j, unit } => format!("{}_{}", letter(unit), pair(i, j)),
        })
        .collect()
}

fn letter(u: Unit) -> &'static str {
    match u {
        Unit::One => "alpha",
        Unit::I => "beta",
        Unit::J => "gamma",
        Unit::K => "eta",
    }
}

/// Equation at the ordered pair `(a, b)`:
/// `linear·ξ − ξ_a ξ_b + constant = 0`, with `linear = ∇_{X_a}X_b` and
/// `constant = −γ(X_a, X_b)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Equation {
    pub a: usize,
    pub b: usize,
    pub linear: SparseVec,
    pub constant: Rational,
}

#[derive(Debug, Clone)]
pub struct QuadraticSystem {
    m: usize,
    names: Vec<String>,
    labels: Vec<String>,
    equations: Vec<Equation>,
    /// `[X_a, X_b]` for `a < b` with a nonzero bracket.
    brackets: Vec<(usize, usize, SparseVec)>,
}

impl QuadraticSystem {
    pub fn unknowns(&self) -> usize {
        self.m
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Basis element names of the carrier.
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn equations(&self) -> &[Equation] {
        &self.equations
    }

    pub fn equation(&self, a: usize, b: usize) -> &Equation {
        &self.equations[a * self.m + b]
    }

    pub fn residual(&self, eq: &Equation, xi: &[Rational]) -> Rational {
        &(&eq.linear.dot_dense(xi) - &(&xi[eq.a] * &xi[eq.b])) + &eq.constant
    }

    pub fn is_satisfied(&self, xi: &[Rational]) -> bool {
        xi.len() == self.m && self.equations.iter().all(|e| self.residual(e, xi).is_zero())
    }

    pub fn poly(&self, eq: &Equation) -> MultiPoly {
        let mut coeffs = vec![Rational::zero(); self.m];
        for (c, x) in eq.linear.iter() {
            coeffs[c] = x.clone();
        }
        let quad = MultiPoly::var(self.m, eq.a).mul(&MultiPoly::var(self.m, eq.b));
        MultiPoly::linear(&coeffs, eq.constant.clone()).sub(&quad)
    }

    fn source_poly(&self, s: Source) -> MultiPoly {
        match s {
            Source::Pair(a, b) => self.poly(self.equation(a, b)),
            Source::Bracket(a, b) => {
                let v = &self.brackets.iter().find(|(x, y, _)| *x == a && *y == b).expect("known bracket").2;
                let mut coeffs = vec![Rational::zero(); self.m];
                for (c, x) in v.iter() {
                    coeffs[c] = x.clone();
                }
                MultiPoly::linear(&coeffs, Rational::zero())
            }
        }
    }

    /// `eq(a,b) − eq(b,a) = ξ([X_a, X_b])` with no quadratic remainder.
    pub fn antisymmetry_holds(&self) -> bool {
        (0..self.m).all(|a| {
            (a + 1..self.m).all(|b| {
                let (p, q) = (self.equation(a, b), self.equation(b, a));
                let bracket = self.brackets.iter().find(|(x, y, _)| *x == a && *y == b).map(|t| t.2.clone());
                p.constant == q.constant && p.linear.sub(&q.linear) == bracket.unwrap_or_default()
            })
        })
    }

    pub fn source_label(&self, s: Source) -> String {
        match s {
            Source::Pair(a, b) => format!("({},{})", self.labels[a], self.labels[b]),
            Source::Bracket(a, b) => format!("[{},{}]", self.labels[a], self.labels[b]),
        }
    }
}

/// All `m²` equations of a Ricci-symmetric connection.
pub fn build_condition_system(conn: &Connection, pack: &CurvaturePack) -> Result<QuadraticSystem> {
    let gamma = pack.gamma.as_ref().ok_or(Error::RicciNotSymmetric)?;
    let m = conn.dim();
    let mut equations = Vec::with_capacity(m * m);
    for a in 0..m {
        for b in 0..m {
            equations.push(Equation { a, b, linear: conn.nabla(a, b).clone(), constant: -gamma.get(a, b) });
        }
    }
    let sub = conn.carrier();
    let mut brackets = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            let v = sub.bracket(a, b);
            if !v.is_zero() {
                brackets.push((a, b, v));
            }
        }
    }
    Ok(QuadraticSystem { m, names: unknown_names(sub), labels: sub.names(), equations, brackets })
}

/// Recipe covectors for the given structure, followed by the zero covector.
pub fn candidate_witnesses(sub: &Subalgebra, subset: &SimpleRootSubset, structure: Structure) -> Vec<Vec<Rational>> {
    let n = subset.n();
    let m = sub.dim();
    let nn = n as i64;
    let h_values: Vec<Rational> = match structure {
        Structure::Solvable => (1..n).map(|r| Rational::new(-(r as i64), nn)).collect(),
        Structure::Parabolic => {
            let idx = subset.indices();
            let i_l = match idx.last() {
                Some(&last) if last == n - 1 => {
                    let mut l = idx.len() - 1;
                    while l > 0 && idx[l] - idx[l - 1] <= 2 {
                        l -= 1;
                    }
                    idx[l]
                }
                _ => n + 1,
            };
            (1..n)
                .map(|r| {
                    if r + 2 <= i_l {
                        Rational::new(-(r as i64), nn)
                    } else {
                        Rational::new((n - r) as i64, nn)
                    }
                })
                .collect()
        }
    };
    // on s the H-coordinates present are exactly the complement indices
    let recipe: Vec<Rational> = sub
        .elements()
        .iter()
        .map(|e| match *e {
            BasisElement::H(k) => h_values[k - 1].clone(),
            _ => Rational::zero(),
        })
        .collect();
    let zero = vec![Rational::zero(); m];
    if recipe == zero {
        vec![zero]
    } else {
        vec![recipe, zero]
    }
}

/// All equations vanish at `ξ` and the projective change is curvature-free.
pub fn verify_witness(conn: &Connection, system: &QuadraticSystem, xi: &[Rational]) -> bool {
    if !system.is_satisfied(xi) {
        return false;
    }
    match projective_change(conn, xi) {
        Ok(changed) => changed.is_torsion_free() && curvature(&changed).is_flat(),
        Err(_) => false,
    }
}

/// Where a derivation step comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    /// The condition equation at `(X_a, X_b)`.
    Pair(usize, usize),
    /// The linear consequence `ξ([X_a, X_b]) = 0`.
    Bracket(usize, usize),
}

/// A substitution `x_var := expr` justified by `equation` (the source after
/// all earlier substitutions).
#[derive(Debug, Clone, PartialEq)]
pub struct Step {
    pub source: Source,
    pub equation: MultiPoly,
    pub var: usize,
    pub expr: MultiPoly,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Terminal {
    /// The source reduced to a nonzero constant.
    Contradiction { source: Source, equation: MultiPoly },
    /// The source reduced to `c·((x_var + shift)² − value)` with `value < 0`.
    NegativeSquare { source: Source, equation: MultiPoly, var: usize, shift: Rational, value: Rational },
    /// Every case of a split is contradictory.
    Split { source: Source, equation: MultiPoly, cases: Vec<(Step, Derivation)> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Derivation {
    pub steps: Vec<Step>,
    pub end: Terminal,
}

impl Derivation {
    /// The last leaf in case order.
    pub fn final_terminal(&self) -> &Terminal {
        match &self.end {
            Terminal::Split { cases, .. } => cases.last().map_or(&self.end, |(_, d)| d.final_terminal()),
            t => t,
        }
    }

    /// True when every leaf is a negative square.
    pub fn all_leaves_negative_squares(&self) -> bool {
        match &self.end {
            Terminal::NegativeSquare { .. } => true,
            Terminal::Contradiction { .. } => false,
            Terminal::Split { cases, .. } => cases.iter().all(|(_, d)| d.all_leaves_negative_squares()),
        }
    }

    /// Human-readable lines, nested cases indented by two spaces.
    pub fn lines(&self, system: &QuadraticSystem) -> Vec<String> {
        let mut out = Vec::new();
        self.push_lines(system, 0, &mut out);
        out
    }

    fn push_lines(&self, system: &QuadraticSystem, depth: usize, out: &mut Vec<String>) {
        let pad = "  ".repeat(depth);
        let names = system.names();
        for s in &self.steps {
            out.push(format!("{}{}", pad, step_line(system, s)));
        }
        match &self.end {
            Terminal::Contradiction { source, equation } => {
                let raw = system.source_poly(*source).display_with(names);
                out.push(format!("{}{}: {} = 0 reduces to {} = 0", pad, system.source_label(*source), raw, equation.display_with(names)));
            }
            Terminal::NegativeSquare { source, equation, var, shift, value } => {
                out.push(format!(
                    "{}{}: {} = 0 reduces to {} = {}",
                    pad,
                    system.source_label(*source),
                    equation.display_with(names),
                    square_text(&names[*var], shift),
                    value
                ));
            }
            Terminal::Split { source, equation, cases } => {
                let options: Vec<String> = cases.iter().map(|(s, _)| assignment_text(names, s)).collect();
                out.push(format!(
                    "{}{}: {} = 0 splits into {}",
                    pad,
                    system.source_label(*source),
                    equation.display_with(names),
                    options.join(" | ")
                ));
                for (step, sub) in cases {
                    out.push(format!("{}case {}", pad, assignment_text(names, step)));
                    sub.push_lines(system, depth + 1, out);
                }
            }
        }
    }
}

fn square_text(name: &str, shift: &Rational) -> String {
    if shift.is_zero() {
        format!("{}^2", name)
    } else if shift.is_negative() {
        format!("({} - {})^2", name, -shift)
    } else {
        format!("({} + {})^2", name, shift)
    }
}

fn assignment_text(names: &[String], s: &Step) -> String {
    format!("{} = {}", names[s.var], s.expr.display_with(names))
}

fn step_line(system: &QuadraticSystem, s: &Step) -> String {
    format!(
        "{}: {} = 0 gives {}",
        system.source_label(s.source),
        s.equation.display_with(system.names()),
        assignment_text(system.names(), s)
    )
}

#[derive(Debug, Clone, PartialEq)]
pub enum SolveOutcome {
    Flat(Vec<Rational>),
    NotFlat(Derivation),
    Unknown(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    pub depth: usize,
    /// Explore split cases in reverse order.
    pub reverse: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { depth: DEFAULT_DEPTH, reverse: false }
    }
}

#[derive(Clone)]
struct State {
    /// condition equations still nonzero, in canonical pair order
    primary: Vec<(Source, MultiPoly)>,
    /// bracket constraints still nonzero
    secondary: Vec<(Source, MultiPoly)>,
    subs: Vec<(usize, MultiPoly)>,
}

impl State {
    fn apply(&mut self, var: usize, expr: &MultiPoly) {
        for list in [&mut self.primary, &mut self.secondary] {
            for (_, p) in list.iter_mut() {
                if p.variables().contains(&var) {
                    *p = p.substitute(var, expr);
                }
            }
            list.retain(|(_, p)| !p.is_zero());
        }
        self.subs.push((var, expr.clone()));
    }

    fn witness(&self, m: usize) -> Vec<Rational> {
        let mut xi = vec![Rational::zero(); m];
        for (var, expr) in self.subs.iter().rev() {
            xi[*var] = expr.eval(&xi);
        }
        xi
    }
}

enum Action {
    Step(Step),
    End(Terminal),
    Split(Source, MultiPoly, Vec<Step>),
    Irrational(Source),
    Stuck,
}

/// A single-variable polynomial of degree ≤ 2 as `(var, a, b, c)` for
/// `a·u² + b·u + c`.
fn univariate(p: &MultiPoly) -> Option<(usize, Rational, Rational, Rational)> {
    let vars = p.variables();
    if vars.len() != 1 || p.degree() > Degree::Finite(2) {
        return None;
    }
    let u = vars[0];
    let n = p.nvars();
    let mono = |e: u16| {
        let mut exps = vec![0u16; n];
        exps[u] = e;
        Monomial::new(exps)
    };
    Some((u, p.coefficient(&mono(2)), p.coefficient(&mono(1)), p.constant_term()))
}

fn constant_poly(m: usize, c: Rational) -> MultiPoly {
    MultiPoly::constant(m, c)
}

/// `x_u := root of the linear form`, choosing the highest-index variable.
fn solve_linear(source: Source, p: &MultiPoly) -> Step {
    let (coeffs, constant) = p.as_linear().expect("linear");
    let var = coeffs.iter().rposition(|c| !c.is_zero()).expect("nonconstant");
    let inv = coeffs[var].recip();
    let mut rest = coeffs.clone();
    rest[var] = Rational::zero();
    let expr = MultiPoly::linear(&rest, constant).scale(&-inv);
    Step { source, equation: p.clone(), var, expr }
}

/// `p = x_u · L` with `L` of degree ≤ 1 and not constant.
fn product_form(p: &MultiPoly) -> Option<(usize, MultiPoly)> {
    if p.degree() != Degree::Finite(2) || !p.constant_term().is_zero() {
        return None;
    }
    for u in p.variables() {
        let x = MultiPoly::var(p.nvars(), u);
        if let Some(l) = p.div_exact(&x) {
            if l.degree() == Degree::Finite(1) && !l.variables().is_empty() && l.as_linear().is_some() {
                return Some((u, l));
            }
        }
    }
    None
}

struct Solver<'a> {
    system: &'a QuadraticSystem,
    options: SolveOptions,
}

impl Solver<'_> {
    fn next_action(&self, st: &State) -> Action {
        let m = self.system.m;
        // negative squares
        for (s, p) in &st.primary {
            if let Some((u, a, b, c)) = univariate(p) {
                if !a.is_zero() {
                    let shift = &b / &(&a * &Rational::from_int(2));
                    let disc = &(&b * &b) - &(&(&a * &c) * &Rational::from_int(4));
                    if disc.is_negative() {
                        let value = &disc / &(&(&a * &a) * &Rational::from_int(4));
                        return Action::End(Terminal::NegativeSquare { source: *s, equation: p.clone(), var: u, shift, value });
                    }
                }
            }
        }
        for (s, p) in &st.primary {
            if p.degree() == Degree::Finite(0) {
                return Action::End(Terminal::Contradiction { source: *s, equation: p.clone() });
            }
        }
        // univariate linear, then repeated roots
        for (s, p) in &st.primary {
            if p.degree() == Degree::Finite(1) && p.variables().len() == 1 {
                return Action::Step(solve_linear(*s, p));
            }
        }
        for (s, p) in &st.primary {
            if let Some((u, a, b, c)) = univariate(p) {
                if !a.is_zero() && (&b * &b) == (&(&a * &c) * &Rational::from_int(4)) {
                    let root = -(&b / &(&a * &Rational::from_int(2)));
                    return Action::Step(Step { source: *s, equation: p.clone(), var: u, expr: constant_poly(m, root) });
                }
            }
        }
        for (s, p) in &st.primary {
            if p.degree() == Degree::Finite(1) {
                return Action::Step(solve_linear(*s, p));
            }
        }
        // bracket constraints
        for (s, p) in &st.secondary {
            match p.degree() {
                Degree::Finite(0) => return Action::End(Terminal::Contradiction { source: *s, equation: p.clone() }),
                Degree::Finite(1) => return Action::Step(solve_linear(*s, p)),
                _ => {}
            }
        }
        // branching
        let mut irrational = None;
        for (s, p) in &st.primary {
            if let Some((u, a, b, c)) = univariate(p) {
                if a.is_zero() {
                    continue;
                }
                let disc = &(&b * &b) - &(&(&a * &c) * &Rational::from_int(4));
                match disc.sqrt() {
                    Some(r) => {
                        let two_a = &a * &Rational::from_int(2);
                        let mut roots = [&(-&b + &r) / &two_a, &(-&b - &r) / &two_a];
                        roots.sort_by(|x, y| y.cmp(x));
                        let cases = roots
                            .into_iter()
                            .map(|v| Step { source: *s, equation: p.clone(), var: u, expr: constant_poly(m, v) })
                            .collect();
                        return Action::Split(*s, p.clone(), cases);
                    }
                    None => {
                        irrational.get_or_insert(*s);
                    }
                }
            }
        }
        for (s, p) in &st.primary {
            if let Some((u, l)) = product_form(p) {
                let zero = Step { source: *s, equation: p.clone(), var: u, expr: MultiPoly::zero(m) };
                let other = solve_linear(*s, &l);
                let other = Step { equation: p.clone(), ..other };
                return Action::Split(*s, p.clone(), vec![zero, other]);
            }
        }
        match irrational {
            Some(s) => Action::Irrational(s),
            None => Action::Stuck,
        }
    }

    fn run(&self, mut st: State, depth: usize) -> SolveOutcome {
        let mut steps = Vec::new();
        loop {
            match self.next_action(&st) {
                Action::Step(step) => {
                    st.apply(step.var, &step.expr);
                    steps.push(step);
                }
                Action::End(end) => return SolveOutcome::NotFlat(Derivation { steps, end }),
                Action::Split(source, equation, mut cases) => {
                    if depth >= self.options.depth {
                        return SolveOutcome::Unknown(format!("branch depth limit {} reached", self.options.depth));
                    }
                    if self.options.reverse {
                        cases.reverse();
                    }
                    let mut done = Vec::new();
                    let mut unknown = None;
                    for case in cases {
                        let mut next = st.clone();
                        next.apply(case.var, &case.expr);
                        match self.run(next, depth + 1) {
                            SolveOutcome::Flat(xi) => return SolveOutcome::Flat(xi),
                            SolveOutcome::NotFlat(d) => done.push((case, d)),
                            SolveOutcome::Unknown(r) => {
                                unknown.get_or_insert(r);
                            }
                        }
                    }
                    return match unknown {
                        Some(r) => SolveOutcome::Unknown(r),
                        None => SolveOutcome::NotFlat(Derivation { steps, end: Terminal::Split { source, equation, cases: done } }),
                    };
                }
                Action::Irrational(s) => {
                    return self.zero_fill(&st).unwrap_or_else(|| {
                        SolveOutcome::Unknown(format!("{} needs an irrational square root", self.system.source_label(s)))
                    })
                }
                Action::Stuck => {
                    return self
                        .zero_fill(&st)
                        .unwrap_or_else(|| SolveOutcome::Unknown("propagation stalled on a nonlinear residue".into()))
                }
            }
        }
    }

    fn zero_fill(&self, st: &State) -> Option<SolveOutcome> {
        let xi = st.witness(self.system.m);
        self.system.is_satisfied(&xi).then_some(SolveOutcome::Flat(xi))
    }
}

/// Constraint propagation with case splits over rational roots.
pub fn solve(system: &QuadraticSystem, options: SolveOptions) -> SolveOutcome {
    let primary = system
        .equations
        .iter()
        .map(|e| (Source::Pair(e.a, e.b), system.poly(e)))
        .filter(|(_, p)| !p.is_zero())
        .collect();
    let secondary = system.brackets.iter().map(|(a, b, _)| (Source::Bracket(*a, *b), system.source_poly(Source::Bracket(*a, *b)))).collect();
    let solver = Solver { system, options };
    solver.run(State { primary, secondary, subs: Vec::new() }, 0)
}

/// Re-derives every step of a certificate from the system.
pub fn replay_certificate(system: &QuadraticSystem, d: &Derivation) -> bool {
    replay(system, d, &[])
}

fn reduce(system: &QuadraticSystem, s: Source, subs: &[(usize, MultiPoly)]) -> MultiPoly {
    let mut p = system.source_poly(s);
    for (v, e) in subs {
        p = p.substitute(*v, e);
    }
    p
}

fn step_sound(system: &QuadraticSystem, step: &Step, subs: &[(usize, MultiPoly)]) -> bool {
    let p = reduce(system, step.source, subs);
    if p != step.equation || step.expr.variables().contains(&step.var) {
        return false;
    }
    // the substitution must annihilate the equation
    p.substitute(step.var, &step.expr).is_zero()
}

fn replay(system: &QuadraticSystem, d: &Derivation, base: &[(usize, MultiPoly)]) -> bool {
    let mut subs = base.to_vec();
    for step in &d.steps {
        if !step_sound(system, step, &subs) {
            return false;
        }
        // a forced step must be the only solution: linear in var, or a double root
        let Some(forced) = forced_value(&step.equation, step.var) else { return false };
        if forced != step.expr {
            return false;
        }
        subs.push((step.var, step.expr.clone()));
    }
    match &d.end {
        Terminal::Contradiction { source, equation } => {
            let p = reduce(system, *source, &subs);
            p == *equation && p.degree() == Degree::Finite(0)
        }
        Terminal::NegativeSquare { source, equation, var, shift, value } => {
            let p = reduce(system, *source, &subs);
            let Some((u, a, _, _)) = univariate(&p) else { return false };
            if p != *equation || u != *var || !value.is_negative() || a.is_zero() {
                return false;
            }
            let n = p.nvars();
            let x = MultiPoly::var(n, u).add(&MultiPoly::constant(n, shift.clone()));
            let square = x.mul(&x).sub(&MultiPoly::constant(n, value.clone()));
            square.scale(&a) == p
        }
        Terminal::Split { source, equation, cases } => {
            let p = reduce(system, *source, &subs);
            if p != *equation {
                return false;
            }
            if !split_exhaustive(&p, cases) {
                return false;
            }
            cases.iter().all(|(step, sub)| {
                if !step_sound(system, step, &subs) {
                    return false;
                }
                let mut next = subs.clone();
                next.push((step.var, step.expr.clone()));
                replay(system, sub, &next)
            })
        }
    }
}

/// The unique value forced on `var` by `p`, when `p` pins it down.
fn forced_value(p: &MultiPoly, var: usize) -> Option<MultiPoly> {
    if p.degree() == Degree::Finite(1) {
        let (coeffs, _) = p.as_linear()?;
        if coeffs[var].is_zero() || coeffs.iter().rposition(|c| !c.is_zero()) != Some(var) {
            return None;
        }
        return Some(solve_linear(Source::Pair(0, 0), p).expr);
    }
    let (u, a, b, c) = univariate(p)?;
    if u != var || a.is_zero() || &b * &b != &(&a * &c) * &Rational::from_int(4) {
        return None;
    }
    Some(MultiPoly::constant(p.nvars(), -(&b / &(&a * &Rational::from_int(2)))))
}

/// The cases cover every real solution of `p = 0`.
fn split_exhaustive(p: &MultiPoly, cases: &[(Step, Derivation)]) -> bool {
    if let Some((u, a, b, c)) = univariate(p) {
        if a.is_zero() {
            return false;
        }
        let disc = &(&b * &b) - &(&(&a * &c) * &Rational::from_int(4));
        let Some(r) = disc.sqrt() else { return false };
        let two_a = &a * &Rational::from_int(2);
        let roots = [&(-&b + &r) / &two_a, &(-&b - &r) / &two_a];
        return cases.len() == 2
            && roots.iter().all(|x| cases.iter().any(|(s, _)| s.var == u && s.expr == MultiPoly::constant(p.nvars(), x.clone())));
    }
    // product u·L: one case u = 0, the other a root of L
    let Some((u, l)) = product_form(p) else { return false };
    cases.len() == 2
        && cases.iter().any(|(s, _)| s.var == u && s.expr.is_zero())
        && cases.iter().any(|(s, _)| l.substitute(s.var, &s.expr).is_zero() && !l.variables().is_empty())
}

/// How the hyperplane oracle was evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMode {
    Exact,
    Probabilistic,
    Skipped,
}

impl OracleMode {
    pub fn name(self) -> &'static str {
        match self {
            OracleMode::Exact => "exact",
            OracleMode::Probabilistic => "probabilistic",
            OracleMode::Skipped => "skipped",
        }
    }
}

/// `ξ·x + x_{m+1}` in `m+1` variables.
pub fn hyperplane(xi: &[Rational]) -> MultiPoly {
    let mut coeffs = xi.to_vec();
    coeffs.push(Rational::one());
    MultiPoly::linear(&coeffs, Rational::zero())
}

/// Whether `ξ·x + x_{m+1}` divides `φ_f`: symbolically when `m+1 ≤ cap`,
/// otherwise by evaluating at `trials` seeded random points of the hyperplane.
pub fn hyperplane_oracle(rep: &Representation, xi: &[Rational], cap: usize, trials: usize, seed: u64) -> (bool, OracleMode) {
    let oracle = Oracle::new(rep, cap, trials, seed);
    (oracle.test(xi), oracle.mode())
}

/// Hyperplane oracle with the invariant computed once for several covectors.
pub struct Oracle<'a> {
    rep: &'a Representation,
    phi: Option<MultiPoly>,
    trials: usize,
    seed: u64,
}

impl<'a> Oracle<'a> {
    pub fn new(rep: &'a Representation, cap: usize, trials: usize, seed: u64) -> Self {
        let phi = if rep.dim() < cap { invariant_poly(rep, DetStrategy::Bareiss, cap).ok() } else { None };
        Oracle { rep, phi, trials, seed }
    }

    pub fn mode(&self) -> OracleMode {
        if self.phi.is_some() {
            OracleMode::Exact
        } else {
            OracleMode::Probabilistic
        }
    }

    pub fn invariant(&self) -> Option<&MultiPoly> {
        self.phi.as_ref()
    }

    pub fn test(&self, xi: &[Rational]) -> bool {
        if let Some(phi) = &self.phi {
            return linear_factor_divides(phi, &hyperplane(xi)).expect("degree one").0;
        }
        let m = self.rep.dim();
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        (0..self.trials).all(|_| {
            let mut v: Vec<Rational> = (0..m).map(|_| Rational::from_int((rng.next_u32() % 41) as i64 - 20)).collect();
            let last = -xi.iter().zip(&v).map(|(a, b)| a * b).sum::<Rational>();
            v.push(last);
            self.rep.orbit_matrix(&v).det().is_zero()
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum FlatnessVerdict {
    Flat { witness: Vec<Rational>, representative: Connection },
    NotFlat { certificate: Derivation },
    Unknown { reason: String },
}

impl FlatnessVerdict {
    pub fn tag(&self) -> &'static str {
        match self {
            FlatnessVerdict::Flat { .. } => "flat",
            FlatnessVerdict::NotFlat { .. } => "not_flat",
            FlatnessVerdict::Unknown { .. } => "unknown",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecideOptions {
    pub solve: SolveOptions,
    /// Largest `m+1` for the symbolic oracle; 0 skips the oracle.
    pub oracle_cap: usize,
    pub trials: usize,
    pub seed: u64,
    /// Try the recipe covectors before propagation.
    pub use_candidates: bool,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions {
            solve: SolveOptions::default(),
            oracle_cap: DEFAULT_ORACLE_CAP,
            trials: DEFAULT_TRIALS,
            seed: 0x5eed,
            use_candidates: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Checks {
    pub autoparallel: bool,
    pub homomorphism: bool,
    pub oracle: OracleMode,
    /// Flat: the witness hyperplane divides φ. NotFlat: no candidate hyperplane does.
    pub oracle_agrees: Option<bool>,
}

#[derive(Debug, Clone)]
pub struct Decision {
    pub field: Field,
    pub n: usize,
    pub subset: SimpleRootSubset,
    pub structure: Structure,
    pub carrier: Subalgebra,
    pub system: QuadraticSystem,
    pub verdict: FlatnessVerdict,
    /// Index of the recipe candidate that verified, if any.
    pub from_candidate: Option<usize>,
    pub checks: Checks,
}

impl Decision {
    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }

    pub fn diagram(&self) -> String {
        dynkin_render(self.n, &self.subset)
    }

    pub fn certificate_lines(&self) -> Option<Vec<String>> {
        match &self.verdict {
            FlatnessVerdict::NotFlat { certificate } => Some(certificate.lines(&self.system)),
            _ => None,
        }
    }
}

/// Builds the subalgebra, induces the canonical connection, tries the recipe
/// witnesses, then propagates, then cross-checks with the hyperplane oracle.
pub fn decide(model: &Arc<LieAlgebraModel>, subset: &SimpleRootSubset, structure: Structure, options: &DecideOptions) -> Result<Decision> {
    let canonical = canonical_connection(model);
    decide_with(&canonical, subset, structure, options)
}

/// [`decide`] against a precomputed canonical connection on the full model.
pub fn decide_with(canonical: &Connection, subset: &SimpleRootSubset, structure: Structure, options: &DecideOptions) -> Result<Decision> {
    let model = canonical.carrier().model();
    if subset.n() != model.n() {
        return Err(Error::InvalidSubset(format!("subset for sl({}) used with sl({})", subset.n(), model.n())));
    }
    let sub = build_structure(model, subset, structure);
    let autoparallel = is_autoparallel(canonical, &sub);
    let conn = induced_connection(canonical, &sub)?;
    let pack = curvature(&conn);
    let system = build_condition_system(&conn, &pack)?;
    let rep = build_rep_symmetric(&conn, &pack)?;
    let homomorphism = verify_homomorphism(&rep);

    let mut verdict = None;
    let mut from_candidate = None;
    let candidates = candidate_witnesses(&sub, subset, structure);
    if options.use_candidates {
        for (k, xi) in candidates.iter().enumerate() {
            if verify_witness(&conn, &system, xi) {
                verdict = Some(flat_verdict(&conn, xi.clone()));
                from_candidate = Some(k);
                break;
            }
        }
    }
    let verdict = match verdict {
        Some(v) => v,
        None => match solve(&system, options.solve) {
            SolveOutcome::Flat(xi) if verify_witness(&conn, &system, &xi) => flat_verdict(&conn, xi),
            SolveOutcome::Flat(_) => FlatnessVerdict::Unknown { reason: "propagated witness failed verification".into() },
            SolveOutcome::NotFlat(d) => FlatnessVerdict::NotFlat { certificate: d },
            SolveOutcome::Unknown(r) => FlatnessVerdict::Unknown { reason: r },
        },
    };

    let (oracle, oracle_agrees) = match &verdict {
        _ if options.oracle_cap == 0 => (OracleMode::Skipped, None),
        FlatnessVerdict::Flat { witness, .. } => {
            let o = Oracle::new(&rep, options.oracle_cap, options.trials, options.seed);
            (o.mode(), Some(o.test(witness)))
        }
        FlatnessVerdict::NotFlat { .. } => {
            let o = Oracle::new(&rep, options.oracle_cap, options.trials, options.seed);
            (o.mode(), Some(candidates.iter().all(|xi| !o.test(xi))))
        }
        FlatnessVerdict::Unknown { .. } => (OracleMode::Skipped, None),
    };

    Ok(Decision {
        field: model.field(),
        n: model.n(),
        subset: subset.clone(),
        structure,
        carrier: sub,
        system,
        verdict,
        from_candidate,
        checks: Checks { autoparallel, homomorphism, oracle, oracle_agrees },
    })
}

fn flat_verdict(conn: &Connection, xi: Vec<Rational>) -> FlatnessVerdict {
    let representative = projective_change(conn, &xi).expect("length checked");
    FlatnessVerdict::Flat { witness: xi, representative }
}

/// `−γ` as stored in the system, for reporting.
pub fn gamma_of(system: &QuadraticSystem) -> RatMatrix {
    let m = system.m;
    let mut g = RatMatrix::zero(m, m);
    for e in &system.equations {
        g.set(e.a, e.b, -&e.constant);
    }
    g
}
