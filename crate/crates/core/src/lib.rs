//! Rank-n Temperley-Lieb representations built from generalized Hadamard
//! data, with numerical checks of every relation they are meant to satisfy.
//!
//! The pipeline is: pick a master spec `(λ, n)` whose master matrix is a
//! generalized Hadamard matrix ([`master`]), pick any generalized Hadamard
//! matrix `H` ([`hadamard`]), reconstruct `M` and build the TL generators
//! ([`tlrep`]), then turn them into Hecke braid generators and spectral
//! R-matrices ([`baxter`]).

pub mod baxter;
pub mod cli;
pub mod error;
pub mod hadamard;
pub mod json;
pub mod linalg;
pub mod master;
pub mod tlrep;

pub use error::{Error, Result};
pub use linalg::{ComplexValue, DenseMatrix, Tolerance};
