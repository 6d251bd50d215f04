//! Dissipative dynamics of a two-mode polariton system in the ultrastrong
//! light-matter coupling regime, without the rotating-wave approximation on
//! the system-reservoir coupling.
//!
//! The closed system is two coupled bosonic modes (cavity photon `a`, matter
//! excitation `b`) with counter-rotating and diamagnetic terms. Each mode
//! couples linearly to its own continuum reservoir with a flat spectral
//! density. The crate provides three mutually consistent treatments:
//!
//! * [`hopfield`] — Bogoliubov diagonalization of the closed Hamiltonian into
//!   lower/upper polaritons and the squeezed-vacuum ground-state moments.
//! * [`master`] — a time-nonlocal Born master equation in truncated Fock
//!   space, with vacuum or squeezed-correlated reservoirs, Markov comparison
//!   generators, quantum-regression two-time correlations, and normally and
//!   time-ordered detection spectra.
//! * [`input_output`] — frequency-domain Langevin equations and ordered
//!   output spectra.
//! * [`fano`] — Fano diagonalization of a single mode coupled to its
//!   continuum, used to validate the squeezed-reservoir ansatz.
//!
//! Units: frequencies in units of the cavity frequency `ωc`, times in units
//! of `2π/ωc` unless a function documents otherwise.

extern crate blas_src;

pub mod error;
pub mod params;
pub mod hopfield;
pub mod kernel;
pub mod correlations;
pub mod fock;
pub mod liouvillian;
pub mod propagate;
pub mod moments;
pub mod regression;
pub mod detection;
pub mod input_output;
pub mod fano;
pub mod grid;

pub use error::Error;
pub use params::SystemParams;
pub use hopfield::{diagonalize_polaritons, ground_state_moments, Branch, MomentMatrix, PolaritonBasis};
pub use kernel::{Channel, KernelShape, KernelSpec};
pub use correlations::{CorrelationMode, ReservoirCorrelations};

/// Complex double-precision scalar used throughout.
pub type C64 = num_complex::Complex64;

/// Result alias over the crate error type.
pub type Result<T> = std::result::Result<T, Error>;
