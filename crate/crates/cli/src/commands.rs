use std::fmt::Write;

use projflat_core::connection::{canonical_connection, curvature, induced_connection};
use projflat_core::decide::{build_condition_system, candidate_witnesses, decide_with, hyperplane, solve, SolveOptions, SolveOutcome};
use projflat_core::det::{linear_factor_divides, DetStrategy};
use projflat_core::error::Error;
use projflat_core::lie::LieAlgebraModel;
use projflat_core::matrix::Field;
use projflat_core::parabolic::{build_structure, SimpleRootSubset, Structure};
use projflat_core::poly::{Degree, MultiPoly};
use projflat_core::rational::Rational;
use projflat_core::rep::{build_rep_symmetric, build_rep_traceless, invariant_poly};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::report::VerdictReport;
use crate::request::{AnalysisRequest, Flags};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Usage(String),
    Core(Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Core(Error::SizeCapExceeded { size, cap }) => write!(
                f,
                "symbolic invariant needs a {size}x{size} determinant, above the cap {cap}; raise --cap or rely on the probabilistic oracle in `analyze`"
            ),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    /// Process exit code.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Core(Error::SizeCapExceeded { .. }) => 2,
            CliError::Core(_) => 1,
        }
    }
}

/// Runs `f` on a pool of `threads` workers, or on the global pool.
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    match threads {
        None => Ok(f()),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| CliError::Usage(format!("cannot start {t} threads: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

pub fn analyze(req: &AnalysisRequest) -> Result<VerdictReport, CliError> {
    let model = LieAlgebraModel::build(req.field, req.n)?;
    let canonical = canonical_connection(&model);
    let d = decide_with(&canonical, &req.subset, req.structure, &req.flags.decide_options())?;
    Ok(VerdictReport::from_decision(&d, req.flags.dump_tensors))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub flat: usize,
    pub not_flat: usize,
    pub unknown: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationReport {
    pub field: String,
    pub n: usize,
    pub structure: String,
    pub rows: Vec<VerdictReport>,
    pub summary: Summary,
}

impl EnumerationReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let k = if self.field == "h" { "H" } else { "R" };
        let _ = writeln!(out, "{} subalgebras of sl({},{})", self.structure, self.n, k);
        let width = self.rows.iter().map(|r| r.subset.len()).max().unwrap_or(5).max(6);
        let dwidth = self.rows.first().map_or(1, |r| r.diagram.len()).max(7);
        let _ = writeln!(out, "  {:<width$}  {:<dwidth$}  {:>4}  verdict", "subset", "diagram", "dim");
        for r in &self.rows {
            let _ = writeln!(out, "  {:<width$}  {:<dwidth$}  {:>4}  {}", r.subset, r.diagram, r.dim, r.verdict);
        }
        let s = &self.summary;
        let _ = writeln!(out, "{} subsets: {} flat, {} not_flat, {} unknown", self.rows.len(), s.flat, s.not_flat, s.unknown);
        out
    }
}

pub fn enumerate(field: Field, n: usize, structure: Structure, flags: &Flags) -> Result<EnumerationReport, CliError> {
    let model = LieAlgebraModel::build(field, n)?;
    let canonical = canonical_connection(&model);
    let options = flags.decide_options();
    let subsets = SimpleRootSubset::all_proper(n);
    let rows = with_threads(flags.threads, || {
        subsets
            .par_iter()
            .map(|s| decide_with(&canonical, s, structure, &options).map(|d| VerdictReport::from_decision(&d, flags.dump_tensors)))
            .collect::<Result<Vec<_>, _>>()
    })??;
    let count = |tag: &str| rows.iter().filter(|r| r.verdict == tag).count();
    let summary = Summary { flat: count("flat"), not_flat: count("not_flat"), unknown: count("unknown") };
    Ok(EnumerationReport { field: field.tag().to_string(), n, structure: structure.name().to_string(), rows, summary })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorReport {
    /// Where the candidate came from.
    pub source: String,
    pub factor: String,
    pub divides: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quotient_degree: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub field: String,
    pub n: usize,
    pub subset: String,
    pub structure: String,
    pub dim: usize,
    pub variables: Vec<String>,
    pub degree: u32,
    pub polynomial: String,
    /// `(exponent vector, coefficient)` in graded-lexicographic order.
    pub terms: Vec<(Vec<u16>, String)>,
    pub factors: Vec<FactorReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub linear_factor: Option<String>,
}

impl InvariantReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let k = if self.field == "h" { "H" } else { "R" };
        let _ = writeln!(out, "invariant of the {} of sl({},{}) for {{{}}}", self.structure, self.n, k, self.subset);
        let _ = writeln!(out, "  variables {}", self.variables.join(" "));
        let _ = writeln!(out, "  degree    {}", self.degree);
        let _ = writeln!(out, "  phi       {}", self.polynomial);
        for f in &self.factors {
            let q = f.quotient_degree.map_or(String::new(), |d| format!(", quotient degree {d}"));
            let _ = writeln!(out, "  {:<9} {}  divides={}{}", f.source, f.factor, f.divides, q);
        }
        match &self.linear_factor {
            Some(f) => {
                let _ = writeln!(out, "  linear factor {f}");
            }
            None => {
                let _ = writeln!(out, "  no candidate linear factor divides phi");
            }
        }
        out
    }
}

fn degree_of(p: &MultiPoly) -> u32 {
    match p.degree() {
        Degree::Finite(d) => d,
        Degree::NegInfinity => 0,
    }
}

/// `i_1 x_1 + … + i_k x_k − n x_{m+1}` over the `H` coordinates of `s`.
pub fn solvable_factor(dim: usize, subset: &SimpleRootSubset) -> MultiPoly {
    let mut coeffs = vec![Rational::zero(); dim + 1];
    for (pos, i) in subset.complement().into_iter().enumerate() {
        coeffs[pos] = Rational::from(i);
    }
    coeffs[dim] = -Rational::from(subset.n());
    MultiPoly::linear(&coeffs, Rational::zero())
}

pub fn invariant(req: &AnalysisRequest) -> Result<InvariantReport, CliError> {
    let model = LieAlgebraModel::build(req.field, req.n)?;
    let carrier = build_structure(&model, &req.subset, req.structure);
    let dim = carrier.dim();
    if dim + 1 > req.flags.cap {
        return Err(Error::SizeCapExceeded { size: dim + 1, cap: req.flags.cap }.into());
    }
    let conn = induced_connection(&canonical_connection(&model), &carrier)?;
    let pack = curvature(&conn);
    let rep = build_rep_symmetric(&conn, &pack).unwrap_or_else(|_| build_rep_traceless(&conn, &pack));
    let phi = invariant_poly(&rep, DetStrategy::Bareiss, req.flags.cap)?;

    let mut candidates: Vec<(String, MultiPoly)> = Vec::new();
    if req.structure == Structure::Solvable {
        candidates.push(("formula".into(), solvable_factor(dim, &req.subset)));
    }
    for (k, xi) in candidate_witnesses(&carrier, &req.subset, req.structure).iter().enumerate() {
        candidates.push((format!("recipe{k}"), hyperplane(xi)));
    }
    let system = build_condition_system(&conn, &pack)?;
    for reverse in [false, true] {
        if let SolveOutcome::Flat(xi) = solve(&system, SolveOptions { depth: req.flags.depth, reverse }) {
            candidates.push((if reverse { "solver-r" } else { "solver" }.into(), hyperplane(&xi)));
        }
    }

    let mut variables = carrier.names().iter().map(|s| format!("x[{s}]")).collect::<Vec<_>>();
    variables.push("x[e]".into());
    let mut factors = Vec::new();
    let mut linear_factor = None;
    for (source, ell) in candidates {
        let text = ell.display_with(&variables);
        if factors.iter().any(|f: &FactorReport| f.factor == text) {
            continue;
        }
        let (divides, quotient) = linear_factor_divides(&phi, &ell)?;
        if divides && linear_factor.is_none() {
            linear_factor = Some(text.clone());
        }
        factors.push(FactorReport { source, factor: text, divides, quotient_degree: quotient.as_ref().map(degree_of) });
    }
    Ok(InvariantReport {
        field: req.field.tag().to_string(),
        n: req.n,
        subset: req.subset.label(),
        structure: req.structure.name().to_string(),
        dim,
        degree: degree_of(&phi),
        polynomial: phi.display_with(&variables),
        terms: phi.to_serialized(),
        variables,
        factors,
        linear_factor,
    })
}

