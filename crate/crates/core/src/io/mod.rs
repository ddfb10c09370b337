//! Input language, job/result files and independent result verification.

mod doc;
mod parse;
mod pipeline;

pub use doc::{DivisorTrace, FactorizationDoc, JobOptions, JobSpec, OrderChoice, ResultDoc};
pub use parse::{parse_matrix, parse_polynomial};
pub use pipeline::{run_factorize, run_factorize_verified, run_verify};
