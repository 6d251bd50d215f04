//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by the solvers in this crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A system parameter is non-finite, negative, or violates the
    /// no-phase-transition bound `D >= Ω²/ωx`.
    #[error("invalid system parameters: {0}")]
    InvalidParams(String),

    /// Lower and upper polariton frequencies coincide; the Bogoliubov
    /// coefficients are not well defined.
    #[error("degenerate polariton spectrum: |ω_L - ω_U| = {gap:.3e}")]
    DegenerateSpectrum { gap: f64 },

    /// An eigenvalue of the Bogoliubov problem has a nonzero imaginary part,
    /// which signals `D < Ω²/ωx` instability.
    #[error("non-positive polariton mode: eigenvalue {re:.6} + {im:.3e} i")]
    NonPositiveMode { re: f64, im: f64 },

    /// A kernel transform was requested at one of its principal-value
    /// endpoints (ω = 0 or ω = Λ).
    #[error("kernel transform singular at ω = {omega:.6e} (cutoff Λ = {cutoff:.3e})")]
    SingularFrequency { omega: f64, cutoff: f64 },

    /// The trace of the density operator drifted by more than the allowed
    /// bound in a single integration step.
    #[error("integration step unstable: trace drift {drift:.3e} at t = {t:.6}")]
    StepUnstable { t: f64, drift: f64 },

    /// The generator has more than one (near-)zero singular value, so the
    /// steady state is not unique.
    #[error("degenerate steady state: second-smallest singular value {sigma:.3e}")]
    DegenerateSteadyState { sigma: f64 },

    /// A state handed to a spectrum calculation is not stationary under the
    /// generator.
    #[error("state not stationary: ||L[ρ]|| = {residual:.3e}")]
    NotStationary { residual: f64 },

    /// Eigenvalue continuation across the frequency grid became ambiguous.
    #[error("branch tracking lost at ω = {omega:.6}: pairing distance ratio {ratio:.3}")]
    BranchTrackingLost { omega: f64, ratio: f64 },

    /// A quadrature grid is too coarse for the requested tolerance.
    #[error("grid too coarse: {0}")]
    GridTooCoarse(String),

    /// An underlying dense linear-algebra routine failed.
    #[error("linear algebra failure: {0}")]
    Linalg(String),
}

impl From<ndarray_linalg::error::LinalgError> for Error {
    fn from(e: ndarray_linalg::error::LinalgError) -> Self {
        Error::Linalg(e.to_string())
    }
}
