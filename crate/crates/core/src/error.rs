use thiserror::Error;

use crate::scalars::{ScalarError, ScalarField};

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("matrix is singular")]
    Singular,
    #[error("elimination over {0} needs a pivot that is not a unit")]
    NonUnitPivot(ScalarField),
    #[error("invalid structure: {0}")]
    Invalid(String),
    #[error("no {what} available for colors {colors}")]
    Missing { what: String, colors: String },
    #[error("span is not a Hopf ideal: {0}")]
    NotHopfIdeal(String),
    #[error("pairing is degenerate")]
    DegeneratePairing,
    #[error("actions are not compatible with the pairing at color {color} (witness {witness:?})")]
    Incompatible { color: String, witness: Vec<usize> },
    #[error("json: {0}")]
    Json(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("{path}: {source}")]
    File { path: String, source: std::io::Error },
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
