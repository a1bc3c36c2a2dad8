//! Exact construction and verification of Hopf group-coalgebras.

pub mod double;
pub mod error;
pub mod finite;
pub mod hopf;
pub mod io;
pub mod pi;
pub mod report;
pub mod scalars;
pub mod sl2;
pub mod tensor;

pub use error::{Error, Result};
