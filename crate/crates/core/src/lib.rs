//! Spectral numerics for geodesic flows on the group of circle diffeomorphisms
//! and its Virasoro-Bott central extension.
//!
//! * [`fields`]: real vector fields on S¹ in truncated Fourier form, the Lie
//!   bracket, the Hilbert transform and subspace projections.
//! * [`metrics`]: the `(α, β)` family of invariant inner products, inertia
//!   operators and the tangent map to normalized univalent functions.
//! * [`diffeo`] and [`calculus`]: diffeomorphisms on a grid, adjoint action,
//!   flows of time-dependent fields and the `τ_u` calculus.
//! * [`virasoro`]: the group law with the area and Bott cocycles, and the
//!   extended algebra.
//! * [`geodesics`]: Euler-Arnold and normal sub-Riemannian geodesic systems,
//!   RK4 integration and diagnostics.
//! * [`oracles`]: independent reference computations (quadrature, characteristics).
//!
//! Everything is generic over [`Scalar`] (`f32` or `f64`); the aliases below
//! fix `f64`.

pub mod calculus;
pub mod diffeo;
pub mod error;
pub mod fields;
pub mod geodesics;
pub mod metrics;
pub mod oracles;
mod scalar;
pub mod spectral;
pub mod virasoro;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub use calculus::{
    horizontality_residual, log_derivative, reconstruct_flow, tau_apply, tau_invert, FieldPath, GroupPath, Velocity,
};
pub use diffeo::{adjoint_action, adjoint_action_inverse, default_grid, Diffeo};
pub use fields::{bracket, FourierField, Subspace, HILBERT_SIGN};
pub use geodesics::{
    diagnostics, integrate, integrate_partial, integrate_with, rhs, rotate_shift, weak_orthogonality_residual,
    GeodesicState, IntegratorOptions, Multiplier, Problem, Report, Scheme, Trajectory,
};
pub use metrics::{
    ad_transpose, apply_l, inertia_apply, inertia_invert, inner, kirillov_metric, l2_inner, omega, to_univalent,
    Inertia, InertiaKind, InertiaOp, MetricParams, UnivalentTangent,
};
pub use virasoro::{
    cocycle_a, cocycle_b, vir_ad_transpose, vir_bracket, vir_multiply, CentralParams, VirVector, VirasoroElement,
};

pub type Field = FourierField<f64>;
pub type Field32 = FourierField<f32>;
pub type Diffeo64 = Diffeo<f64>;
pub type Params = MetricParams<f64>;
pub type State = GeodesicState<f64>;
pub type Traj = Trajectory<f64>;
pub type VirElement = VirasoroElement<f64>;
