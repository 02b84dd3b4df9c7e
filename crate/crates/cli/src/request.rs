use projflat_core::decide::{DecideOptions, SolveOptions, DEFAULT_DEPTH, DEFAULT_ORACLE_CAP};
use projflat_core::matrix::Field;
use projflat_core::parabolic::{SimpleRootSubset, Structure};

use crate::commands::CliError;

/// Largest matrix size accepted from the command line.
pub const MAX_N: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalysisRequest {
    pub field: Field,
    pub n: usize,
    pub subset: SimpleRootSubset,
    pub structure: Structure,
    pub flags: Flags,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Flags {
    /// Largest `m+1` handled symbolically.
    pub cap: usize,
    pub depth: usize,
    /// `None` uses the available parallelism.
    pub threads: Option<usize>,
    pub dump_tensors: bool,
}

impl Default for Flags {
    fn default() -> Self {
        Flags { cap: DEFAULT_ORACLE_CAP, depth: DEFAULT_DEPTH, threads: None, dump_tensors: false }
    }
}

impl Flags {
    pub fn decide_options(&self) -> DecideOptions {
        DecideOptions {
            solve: SolveOptions { depth: self.depth, reverse: false },
            oracle_cap: self.cap,
            ..DecideOptions::default()
        }
    }
}

pub fn parse_field(text: &str) -> Result<Field, CliError> {
    match text.trim().to_ascii_lowercase().as_str() {
        "r" | "real" => Ok(Field::Real),
        "h" | "quaternion" => Ok(Field::Quaternion),
        other => Err(CliError::Usage(format!("unknown field `{other}` (expected r or h)"))),
    }
}

pub fn parse_structure(text: &str) -> Result<Structure, CliError> {
    match text.trim().to_ascii_lowercase().as_str() {
        "parabolic" | "q" => Ok(Structure::Parabolic),
        "solvable" | "s" => Ok(Structure::Solvable),
        other => Err(CliError::Usage(format!("unknown structure `{other}` (expected parabolic or solvable)"))),
    }
}

pub fn check_n(n: usize) -> Result<usize, CliError> {
    if (2..=MAX_N).contains(&n) {
        Ok(n)
    } else {
        Err(CliError::Usage(format!("n must lie in 2..={MAX_N}, got {n}")))
    }
}

impl AnalysisRequest {
    pub fn parse(field: &str, n: usize, subset: &str, structure: &str, flags: Flags) -> Result<Self, CliError> {
        let field = parse_field(field)?;
        let n = check_n(n)?;
        let subset = SimpleRootSubset::parse(n, subset).map_err(|e| CliError::Usage(e.to_string()))?;
        let structure = parse_structure(structure)?;
        if flags.depth == 0 {
            return Err(CliError::Usage("--depth must be positive".into()));
        }
        if flags.threads == Some(0) {
            return Err(CliError::Usage("--threads must be positive".into()));
        }
        Ok(AnalysisRequest { field, n, subset, structure, flags })
    }
}
