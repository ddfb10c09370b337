//! Job and result documents. Polynomials travel as strings in the
//! expression grammar so the files stay diffable and re-parse exactly.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;
use crate::poly::{MonomialOrder, Polynomial, Vars};

use super::parse::{parse_matrix, parse_polynomial};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq, Default)]
#[serde(rename_all = "lowercase")]
pub enum OrderChoice {
    Lex,
    #[default]
    DegRevLex,
}

impl From<OrderChoice> for MonomialOrder {
    fn from(c: OrderChoice) -> Self {
        match c {
            OrderChoice::Lex => MonomialOrder::Lex,
            OrderChoice::DegRevLex => MonomialOrder::DegRevLex,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, Default, PartialEq, Eq)]
#[serde(deny_unknown_fields, default)]
pub struct JobOptions {
    pub order: OrderChoice,
    pub all_factorizations: bool,
    pub frp: bool,
}

/// A factorization request: variables, the matrix, and options.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub vars: Vec<String>,
    pub matrix: Vec<Vec<String>>,
    /// Optional externally supplied irreducible factors of `d_r`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d_factors: Option<Vec<String>>,
    #[serde(default)]
    pub options: JobOptions,
}

impl JobSpec {
    pub fn ambient_vars(&self) -> Result<Vars> {
        Vars::new(self.vars.iter().cloned())
    }

    pub fn parse_matrix(&self) -> Result<PolyMatrix> {
        let vars = self.ambient_vars()?;
        if self.matrix.is_empty() || self.matrix[0].is_empty() {
            return Err(Error::Precondition("job matrix must be nonempty".into()));
        }
        parse_matrix(&self.matrix, &vars)
    }

    pub fn parse_factors(&self) -> Result<Option<Vec<Polynomial>>> {
        let vars = self.ambient_vars()?;
        match &self.d_factors {
            None => Ok(None),
            Some(fs) => Ok(Some(
                fs.iter().map(|s| parse_polynomial(s, &vars)).collect::<Result<Vec<_>>>()?,
            )),
        }
    }
}

/// Trace of one divisor: the quotient generators and the freeness verdict.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct DivisorTrace {
    pub divisor: String,
    pub quotient_generators: Vec<Vec<String>>,
    pub column_reduced_minors: Vec<String>,
    pub minor_ideal_gb: Vec<String>,
    pub free: bool,
}

/// One emitted factorization `F = G * F1`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct FactorizationDoc {
    /// The lattice divisor whose quotient produced the entry.
    pub divisor: String,
    /// `d_r(G)`; equal to `divisor` except possibly in the general branch.
    pub f: String,
    pub g: Vec<Vec<String>>,
    pub f1: Vec<Vec<String>>,
    pub d_r_of_g: String,
    pub verified: bool,
}

/// Full result document: input echo plus every intermediate the pipeline
/// computes, all re-parseable.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ResultDoc {
    pub job: JobSpec,
    /// "flp" or "frp"; in frp mode the pipeline fields describe the
    /// transposed matrix.
    pub mode: String,
    pub rank: usize,
    pub d_r: String,
    pub column_reduced_minors: Vec<String>,
    pub minor_ideal_gb: Vec<String>,
    pub branch: String,
    pub divisors: Vec<String>,
    pub trace: Vec<DivisorTrace>,
    pub factorizations: Vec<FactorizationDoc>,
}

impl ResultDoc {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<ResultDoc> {
        Ok(serde_json::from_str(text)?)
    }
}

pub(crate) fn matrix_to_strings(m: &PolyMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| m.entry(r, c).to_string()).collect())
        .collect()
}

pub(crate) fn polys_to_strings(ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}
