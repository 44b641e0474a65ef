//! Short polar codes concatenated with binary BCH outer codes.
//!
//! The crate provides the full chain needed to design and evaluate
//! FEC-assisted parallel successive-cancellation decoding of multi-codeword
//! frames:
//!
//! * [`galois`] — GF(2^m) arithmetic and binary polynomials,
//! * [`bch`] — systematic BCH encoding and Berlekamp–Massey decoding,
//! * [`polar`] — polar encoding, Gaussian-approximation construction and a
//!   pausable per-bit SC decoder,
//! * [`frame`] — frame construction and the two frame decoders,
//! * [`channel`] — BPSK over AWGN and block-Rayleigh fading,
//! * [`analysis`] — closed-form FSR and effective-throughput predictors,
//! * [`optimize`] — exhaustive design search under length / rate / FSR
//!   constraints,
//! * [`simulate`] — reproducible Monte Carlo measurement harness.

pub mod analysis;
pub mod bch;
pub mod channel;
pub mod frame;
pub mod galois;
pub mod optimize;
pub mod polar;
pub mod simulate;

use thiserror::Error;

/// Crate-wide error type for fallible constructors and design operations.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter is outside its documented domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    /// A design search completed but no candidate satisfies the constraints.
    #[error("no feasible design: {0}")]
    Infeasible(String),
}

pub type Result<T> = std::result::Result<T, Error>;
