//! Exact-arithmetic Schur function expansions for the normal matrix model
//! and its discrete counterparts.
//!
//! The crate is organized around a small number of layers:
//!
//! - [`partition`]: integer partitions, hooks, contents, Frobenius coordinates;
//! - [`scalar`]: the coefficient fields (exact rationals, `f64`, complex doubles);
//! - [`series`]: truncated power series used by the grading engine;
//! - [`schur`]: Schur functions in higher times and in eigenvalues, plus the
//!   closed-form specializations;
//! - [`moments`]: bi-moment tables from closed forms, quadrature, or discrete sums;
//! - [`tau`]: tau-function series with determinantal coefficients and the
//!   Toda residual check;
//! - [`lattice`]: direct summation of the discrete matrix models;
//! - [`duality`]: dual Schur functions and the continuous/discrete equalities;
//! - [`verify`]: the identity test harness and suite reports.
//!
//! All identity checks over exact fields require residuals to be exactly zero;
//! floating-point paths carry explicit tolerances.

pub mod scalar;
pub mod partition;
pub mod series;
pub mod schur;
pub mod quad;
pub mod moments;
pub mod tau;
pub mod lattice;
pub mod duality;
pub mod haar;
pub mod verify;

use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("truncation order {have} insufficient, need {need}")]
    TruncationInsufficient { need: usize, have: usize },
    #[error("partition length {len} exceeds ambient size {n}")]
    LengthExceedsN { len: usize, n: usize },
    #[error("q^{m} = 1: root of unity not allowed here")]
    RootOfUnity { m: usize },
    #[error("moment table covers indices up to {size}, need {need}")]
    TableTooSmall { need: usize, size: usize },
    #[error("failed to converge: {0}")]
    NonConvergence(String),
    #[error("zero diagonal moment at index {0}")]
    ZeroDiagonal(usize),
    #[error("cutoff H = {have} too small: degree {degree} at n = {n} needs H >= {need}")]
    CutoffTooSmall { have: usize, need: usize, degree: usize, n: usize },
    #[error("parameter hits a pole: {0}")]
    ParameterPole(String),
    #[error("bad eigenvalue vector: {0}")]
    BadEigenvalues(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Cap the global rayon thread pool. Reads `SCHUR_TAU_THREADS` when `n` is
/// `None`. A second call is a no-op (the pool can only be built once).
pub fn configure_threads(n: Option<usize>) {
    let n = n.or_else(|| {
        std::env::var("SCHUR_TAU_THREADS")
            .ok()
            .and_then(|s| s.parse().ok())
    });
    if let Some(n) = n {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global();
    }
}
