use num_complex::Complex;

use super::{GeodesicState, Multiplier, Problem, Trajectory};
use crate::calculus::{tau_apply, FieldPath};
use crate::error::{Error, Result};
use crate::Scalar;

/// Per-sample quantities derived from a state.
#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostics<T> {
    pub time: T,
    pub energy: T,
    pub eta0: T,
    pub eta1: Complex<T>,
    pub multiplier: Multiplier<T>,
    /// `L²` norm of the part of `u` outside the problem's subspace.
    pub subspace_leak: T,
    /// Weil-Petersson only: `|project(r, Mob) - (0, 3i w̄ c₂)|`.
    pub mob_residual: Option<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report<T> {
    pub samples: Vec<Diagnostics<T>>,
    /// `∫₀ᵀ ½h(γ̇, γ̇) dt` by the trapezoid rule.
    pub energy_functional: T,
    /// `max_t |E(t) - E(0)| / E(0)` (absolute when `E(0) = 0`).
    pub max_relative_energy_drift: T,
    pub max_eta0_drift: T,
    pub max_subspace_leak: T,
    pub max_mob_residual: Option<T>,
    /// `max_t |λ₀(t) - λ₀(0)|` for Weil-Petersson trajectories.
    pub lambda0_drift: Option<T>,
}

fn sample<T: Scalar>(problem: &Problem<T>, time: T, s: &GeodesicState<T>) -> Result<Diagnostics<T>> {
    let (eta0, eta1) = s.u.moments();
    let mob_residual = match problem {
        Problem::WeilPetersson => problem.rhs_audited(s)?.1.map(|a| a.residual()),
        _ => None,
    };
    Ok(Diagnostics {
        time,
        energy: problem.energy(s)?,
        eta0,
        eta1,
        multiplier: s.multiplier,
        subspace_leak: s.u.project_out(problem.subspace()).l2_norm(),
        mob_residual,
    })
}

pub fn diagnostics<T: Scalar>(traj: &Trajectory<T>) -> Result<Report<T>> {
    let samples: Vec<Diagnostics<T>> = traj
        .times()
        .into_iter()
        .zip(&traj.states)
        .map(|(t, s)| sample(&traj.problem, t, s))
        .collect::<Result<_>>()?;
    let first = samples
        .first()
        .ok_or_else(|| Error::InvalidArgument("empty trajectory".into()))?
        .clone();
    let half_dt = traj.dt / T::of(2.0);
    let energy_functional = samples
        .windows(2)
        .fold(T::zero(), |acc, w| acc + half_dt * (w[0].energy + w[1].energy));
    let scale = if first.energy != T::zero() { first.energy.abs() } else { T::one() };
    let fold_max = |f: &dyn Fn(&Diagnostics<T>) -> T| samples.iter().map(f).fold(T::zero(), T::max);
    let lambda0_of = |m: &Multiplier<T>| match m {
        Multiplier::Mob { lambda0, .. } => Some(*lambda0),
        _ => None,
    };
    let lambda0_drift = lambda0_of(&first.multiplier).map(|l0| {
        fold_max(&|d| lambda0_of(&d.multiplier).map_or(T::zero(), |l| (l - l0).abs()))
    });
    let max_mob_residual = first.mob_residual.map(|_| fold_max(&|d| d.mob_residual.unwrap_or(T::zero())));
    Ok(Report {
        energy_functional,
        max_relative_energy_drift: fold_max(&|d| (d.energy - first.energy).abs() / scale),
        max_eta0_drift: fold_max(&|d| (d.eta0 - first.eta0).abs()),
        max_subspace_leak: fold_max(&|d| d.subspace_leak),
        max_mob_residual,
        lambda0_drift,
        samples,
    })
}

/// Turns a Riemannian trajectory of a rotation-invariant Kähler metric into the
/// corresponding normal horizontal geodesic: with `λ = η₀(u_R(0))`,
/// `u(t, θ) = u_R(t, θ - λt) - λ`, multiplier `λ`.
pub fn rotate_shift<T: Scalar>(riemann: &Trajectory<T>) -> Result<Trajectory<T>> {
    let Problem::KaehlerRiemann(params) = &riemann.problem else {
        return Err(Error::InvalidArgument(format!(
            "rotate_shift expects a kaehler-riemann trajectory, got {}",
            riemann.problem.name()
        )));
    };
    let first = riemann
        .states
        .first()
        .ok_or_else(|| Error::InvalidArgument("empty trajectory".into()))?;
    let lambda = first.u.mean();
    let problem = Problem::KaehlerNormal {
        params: params.clone(),
        lambda,
    };
    let states = riemann
        .times()
        .into_iter()
        .zip(&riemann.states)
        .map(|(t, s)| {
            let mut u = s.u.shifted(lambda * t);
            let c0 = u.coeff(0);
            u.set_coeff(0, c0 - Complex::new(lambda, T::zero()));
            GeodesicState {
                u,
                multiplier: Multiplier::Rot(lambda),
            }
        })
        .collect();
    Ok(Trajectory {
        problem,
        dt: riemann.dt,
        states,
    })
}

/// `∫₀ᵀ ⟨m, τ_u x⟩ dt` (plus `λ₂ ∫ ω_{μν}(u, x) dt` on the Virasoro group) for a
/// test curve `x` on the trajectory's time grid. Vanishes, up to discretization,
/// exactly when the momentum solves the Euler-Arnold equation.
pub fn weak_orthogonality_residual<T: Scalar>(traj: &Trajectory<T>, test: &FieldPath<T>) -> Result<T> {
    if test.len() != traj.states.len() {
        return Err(Error::InvalidArgument("test curve must share the trajectory's time grid".into()));
    }
    let order = traj.states[0].order();
    let x = FieldPath::new(test.dt, test.fields.iter().map(|f| f.resized(order)).collect());
    let tau = tau_apply(&traj.velocity_path(), &x)?;
    let integrand: Vec<T> = traj
        .states
        .iter()
        .zip(&tau.fields)
        .zip(&x.fields)
        .map(|((s, tx), xk)| {
            let (m, central) = traj.problem.momentum(s)?;
            let mut val = m.l2_inner(tx);
            if let Problem::VirasoroNormal { central: c, .. } = &traj.problem {
                val = val + central * c.omega(&s.u, xk);
            }
            Ok(val)
        })
        .collect::<Result<_>>()?;
    let half_dt = traj.dt / T::of(2.0);
    Ok(integrand.windows(2).fold(T::zero(), |acc, w| acc + half_dt * (w[0] + w[1])))
}
