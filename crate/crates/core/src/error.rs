use thiserror::Error;

use crate::matrix::Matrix;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch { op: &'static str, left: (usize, usize), right: (usize, usize) },

    #[error("{op} requires a square matrix, got {rows}x{cols}")]
    NotSquare { op: &'static str, rows: usize, cols: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("invalid scalar {input:?}: {reason}")]
    ParseScalar { input: String, reason: String },

    #[error("invalid matrix document: {0}")]
    InvalidDocument(String),

    /// A stated hypothesis of a formula is false on the given input.
    #[error("hypothesis {condition} does not hold")]
    HypothesisViolation { condition: String, residual: Matrix },

    /// An intermediate identity that a proof asserts did not hold, even though
    /// the stated hypotheses did.
    #[error("proof obligation {obligation} failed in {context}")]
    ProofObligation { context: String, obligation: String, residual: Matrix },

    /// The ground-truth Drazin computation failed its own axiom check.
    #[error("oracle integrity failure: {0}")]
    OracleIntegrity(String),

    #[error("generator exhausted for {case} (seed {seed}) after {attempts} attempts")]
    Exhausted { case: String, seed: u64, attempts: usize },

    #[error("exhaustive search for {case} would visit {candidates} candidates (limit {limit})")]
    SearchTooLarge { case: String, candidates: u128, limit: u128 },

    #[error("unknown case {given:?}; valid cases: {valid}")]
    UnknownCase { given: String, valid: String },

    #[error("case {case} does not accept a {kind} instance")]
    WrongInstance { case: String, kind: &'static str },
}
