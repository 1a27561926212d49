//! Uniform hypergraphs, supertree constructions, matching polynomials and
//! the spectral quantities derived from them.

pub mod construct;
pub mod error;
pub mod hypergraph;
pub mod iso;
pub mod matching;
pub mod poly;
pub mod spectra;
pub mod verify;

pub use error::{Error, Result};
pub use hypergraph::UniformHypergraph;
pub use poly::SparsePolynomial;
