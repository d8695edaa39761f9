use thiserror::Error;

use crate::report::ValidationReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("fusion ring has no strictly positive dimension vector ({0})")]
    NoPositiveSolution(String),

    #[error("missing F-symbol block for (i,j,k,l) = {0:?}")]
    MissingEntry([usize; 4]),

    #[error("missing F-symbol block for (i,j,k,l) = {0:?} during evaluation")]
    MissingFBlock([usize; 4]),

    #[error("type mismatch: {0}")]
    TypeMismatch(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error(
        "could not separate minimal central projections after {retries} random central elements"
    )]
    DegenerateSplit { retries: usize },

    #[error("T' is not diagonal on the minimal central projections (off-diagonal mass {0:.3e})")]
    NotDiagonal(f64),

    #[error("vacuum label is not unique ({0} candidates)")]
    VacuumNotUnique(usize),

    #[error("modular data violates axiom {axiom}: {detail}")]
    AxiomFailure { axiom: String, detail: String },

    #[error("Verlinde number N[{i}][{j}][{k}] = {value:.9} is not an integer")]
    NonIntegral {
        i: usize,
        j: usize,
        k: usize,
        value: f64,
    },

    #[error("bad input: {0}")]
    BadInput(String),

    #[error("bad congruence: {0}")]
    BadCongruence(String),

    #[error("empty chain; use the S^3 invariant instead")]
    EmptyChain,

    #[error("invalid fusion ring:\n{0}")]
    InvalidRing(ValidationReport),

    #[error("schema error: {0}")]
    Schema(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
