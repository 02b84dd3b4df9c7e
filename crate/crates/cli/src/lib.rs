//! Front end for `projflat-core`: request validation, JSON and text reports,
//! and the acceptance criteria behind `verify-suite`.

pub mod commands;
pub mod criteria;
pub mod report;
pub mod request;
pub mod suites;

pub use commands::CliError;
