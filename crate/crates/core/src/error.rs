use thiserror::Error;

use crate::fields::Subspace;

/// Errors raised by field, group and integrator operations.
///
/// Magnitudes and times are reported as `f64` regardless of the scalar type
/// so that the error type stays non-generic.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("inertia operator is singular at mode {mode} but the field carries |c| = {magnitude:e} there")]
    SingularMode { mode: usize, magnitude: f64 },

    #[error("field has |c| = {magnitude:e} at mode {mode}, outside the operator domain {domain:?}")]
    OutsideDomain {
        mode: usize,
        magnitude: f64,
        domain: Subspace,
    },

    #[error("map is not orientation preserving: derivative {derivative:e} at node {node}")]
    NotMonotone { node: usize, derivative: f64 },

    #[error("inversion did not converge at node {node}")]
    InversionFailed { node: usize },

    #[error("blow-up after t = {last_valid_time}: {reason}")]
    BlowUp { last_valid_time: f64, reason: String },

    #[error("field has nonzero mean {mean:e}")]
    NonzeroMean { mean: f64 },

    #[error("grid mismatch: {left} vs {right} nodes")]
    GridMismatch { left: usize, right: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
