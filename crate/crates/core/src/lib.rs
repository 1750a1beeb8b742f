//! Linear index coding over GF(2): exact minrank at small scale, the extremal
//! graph family G_k with its orbit/quotient spectral machinery, strict vector
//! coloring by semidefinite relaxation, hyperplane rounding, and construction
//! plus verification of linear index codes.

pub mod code;
pub mod coloring;
pub mod gf2;
pub mod gk;
pub mod graph;
pub mod rounding;
pub mod sdp;
pub mod spectral;

pub use code::LinearIndexCode;
pub use gf2::{BitMatrix, BitVector};
pub use gk::LabeledGkGraph;
pub use graph::{Graph, VertexSet};
pub use sdp::VectorColoring;

/// Errors shared across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("solver failure: {0}")]
    Solver(String),
    #[error("search budget exhausted: {0}")]
    Budget(String),
}

pub type Result<T> = std::result::Result<T, Error>;
