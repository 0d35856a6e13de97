//! Error types shared across the crate.

use thiserror::Error;

/// Everything that can go wrong while building or solving a model.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Site count outside the supported ring sizes.
    #[error("site count n = {0} outside supported range [{min}, {max}]", min = crate::basis::MIN_SITES, max = crate::basis::MAX_SITES)]
    InvalidSize(usize),

    /// A magnetization index outside 0..=n, or a malformed sector label.
    #[error("invalid sector: {0}")]
    InvalidSector(String),

    /// A magnetization sector was requested for a Hamiltonian whose pair
    /// terms (gamma != 0) do not conserve magnetization.
    #[error("magnetization sectors require gamma = 0 (got gamma = {gamma})")]
    SectorMismatch { gamma: f64 },

    /// A vector length does not match the sector dimension.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// Non-finite or otherwise unusable model parameters.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// A sweep or bisection range that cannot form a grid.
    #[error("invalid range: {0}")]
    InvalidRange(String),

    /// Closed-form crossings and level diagrams are defined only for gamma = 0.
    #[error("operation requires gamma = 0 (got gamma = {gamma})")]
    UnsupportedAnisotropy { gamma: f64 },

    /// A site pair that cannot index a two-spin subsystem.
    #[error("bad site pair ({i}, {j}) for n = {n}: need 1 <= i < j <= n")]
    BadSites { i: usize, j: usize, n: usize },

    /// A pure-state amplitude vector that is not unit-normalized.
    #[error("amplitudes not normalized: |psi|^2 = {norm_sq}")]
    NotNormalized { norm_sq: f64 },

    /// The QL iteration failed to converge on some eigenvalue.
    #[error("eigensolver failed to converge on a {dim}x{dim} block ({context})")]
    ConvergenceFailure { dim: usize, context: String },

    /// A density-matrix computation produced eigenvalues too negative to be
    /// roundoff, signalling an invalid state upstream.
    #[error("numerical failure: {0}")]
    NumericalFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
