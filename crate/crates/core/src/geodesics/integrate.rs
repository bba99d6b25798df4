use num_complex::Complex;

use super::{zero_derivative, GeodesicState, Problem};
use crate::error::{Error, Result};
use crate::fields::FourierField;
use crate::Scalar;

/// Time-stepping scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Scheme {
    /// Classical RK4 unless the problem has a dispersive linear part, in which
    /// case the integrating-factor variant is used.
    #[default]
    Auto,
    Classical,
    /// RK4 on `e^{-Lt}u` with the diagonal linear part `L` treated exactly.
    /// Coincides with classical RK4 when `L = 0`.
    IntegratingFactor,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntegratorOptions<T> {
    pub scheme: Scheme,
    /// Abort once the share of `L²` energy in the top third of the modes exceeds
    /// this and is also 100 times its initial value. Galerkin-truncated Burgers
    /// conserves energy exactly, so past wave breaking this is the only signal.
    pub resolution_tolerance: Option<T>,
}

impl<T: Scalar> Default for IntegratorOptions<T> {
    fn default() -> Self {
        Self {
            scheme: Scheme::Auto,
            resolution_tolerance: Some(T::of(1e-6)),
        }
    }
}

/// States sampled at `t_k = k·dt`.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<T> {
    pub problem: Problem<T>,
    pub dt: T,
    pub states: Vec<GeodesicState<T>>,
}

impl<T: Scalar> Trajectory<T> {
    pub fn times(&self) -> Vec<T> {
        (0..self.states.len()).map(|k| self.dt * T::of_int(k as i64)).collect()
    }

    pub fn final_time(&self) -> T {
        self.dt * T::of_int(self.states.len().saturating_sub(1) as i64)
    }

    pub fn velocity_path(&self) -> crate::calculus::FieldPath<T> {
        crate::calculus::FieldPath::new(self.dt, self.states.iter().map(|s| s.u.clone()).collect())
    }
}

fn exp_symbol<T: Scalar>(problem: &Problem<T>, u: &FourierField<T>, h: T) -> FourierField<T> {
    let coeffs = u
        .coeffs()
        .iter()
        .enumerate()
        .map(|(n, &c)| c * (problem.linear_symbol(n) * h).exp())
        .collect();
    FourierField::from_coeffs(coeffs).expect("mean mode has zero symbol")
}

fn propagate<T: Scalar>(problem: &Problem<T>, s: &GeodesicState<T>, h: T) -> GeodesicState<T> {
    GeodesicState {
        u: exp_symbol(problem, &s.u, h),
        multiplier: s.multiplier,
    }
}

fn nonlinear<T: Scalar>(problem: &Problem<T>, s: &GeodesicState<T>) -> Result<GeodesicState<T>> {
    let mut d = problem.rhs_audited(s)?.0;
    let linear: Vec<Complex<T>> = s
        .u
        .coeffs()
        .iter()
        .enumerate()
        .map(|(n, &c)| c * problem.linear_symbol(n))
        .collect();
    for (n, l) in linear.into_iter().enumerate() {
        let c = d.u.coeff(n as i64);
        d.u.set_coeff(n, c - l);
    }
    Ok(d)
}

fn step_classical<T: Scalar>(problem: &Problem<T>, s: &GeodesicState<T>, h: T) -> Result<GeodesicState<T>> {
    let half = h / T::of(2.0);
    let k1 = problem.rhs_audited(s)?.0;
    let k2 = problem.rhs_audited(&s.axpy(half, &k1))?.0;
    let k3 = problem.rhs_audited(&s.axpy(half, &k2))?.0;
    let k4 = problem.rhs_audited(&s.axpy(h, &k3))?.0;
    let sixth = h / T::of(6.0);
    Ok(s
        .axpy(sixth, &k1)
        .axpy(T::of(2.0) * sixth, &k2)
        .axpy(T::of(2.0) * sixth, &k3)
        .axpy(sixth, &k4))
}

// Lawson RK4.
fn step_integrating_factor<T: Scalar>(
    problem: &Problem<T>,
    s: &GeodesicState<T>,
    h: T,
) -> Result<GeodesicState<T>> {
    let half = h / T::of(2.0);
    let e_half = |x: &GeodesicState<T>| propagate(problem, x, half);
    let e_full = |x: &GeodesicState<T>| propagate(problem, x, h);
    let k1 = nonlinear(problem, s)?;
    let k2 = nonlinear(problem, &e_half(&s.axpy(half, &k1)))?;
    let k3 = nonlinear(problem, &e_half(s).axpy(half, &k2))?;
    let k4 = nonlinear(problem, &e_full(s).axpy(h, &e_half(&k3)))?;
    let sixth = h / T::of(6.0);
    let mid = zero_derivative(s).axpy(T::one(), &k2).axpy(T::one(), &k3);
    Ok(e_full(s)
        .axpy(sixth, &e_full(&k1))
        .axpy(T::of(2.0) * sixth, &e_half(&mid))
        .axpy(sixth, &k4))
}

fn tail_fraction<T: Scalar>(u: &FourierField<T>) -> T {
    let n = u.order();
    let cut = (2 * n) / 3;
    if cut == 0 {
        return T::zero();
    }
    let total = u.coeffs().iter().skip(1).map(|c| c.norm_sqr()).fold(T::zero(), |a, b| a + b);
    if total == T::zero() {
        return T::zero();
    }
    let tail = u.coeffs().iter().skip(cut + 1).map(|c| c.norm_sqr()).fold(T::zero(), |a, b| a + b);
    tail / total
}

/// Integrates to `t_end` in steps of `dt`, returning whatever was computed
/// before a failure together with the error.
pub fn integrate_partial<T: Scalar>(
    problem: &Problem<T>,
    initial: &GeodesicState<T>,
    t_end: T,
    dt: T,
    options: &IntegratorOptions<T>,
) -> (Trajectory<T>, Option<Error>) {
    let mut traj = Trajectory {
        problem: problem.clone(),
        dt,
        states: vec![initial.clone()],
    };
    if !(dt > T::zero()) || !(t_end >= dt) {
        return (
            traj,
            Some(Error::InvalidArgument(format!(
                "need dt > 0 and T ≥ dt, got dt = {dt}, T = {t_end}"
            ))),
        );
    }
    if let Err(e) = problem.validate(initial) {
        return (traj, Some(e));
    }
    let steps = (t_end / dt - T::of(1e-9)).ceil().to_f64_lossy() as usize;
    let use_if = match options.scheme {
        Scheme::Auto => problem.has_linear_part(),
        Scheme::Classical => false,
        Scheme::IntegratingFactor => true,
    };
    let tail_limit = options
        .resolution_tolerance
        .map(|tol| tol.max(T::of(100.0) * tail_fraction(&initial.u)));
    let mut state = initial.clone();
    for k in 0..steps {
        let t = dt * T::of_int(k as i64);
        let next = if use_if {
            step_integrating_factor(problem, &state, dt)
        } else {
            step_classical(problem, &state, dt)
        };
        let next = match next {
            Ok(s) => s,
            Err(e) => return (traj, Some(e)),
        };
        if !next.is_finite() {
            return (
                traj,
                Some(Error::BlowUp {
                    last_valid_time: t.to_f64_lossy(),
                    reason: "non-finite state".into(),
                }),
            );
        }
        if let Some(limit) = tail_limit {
            let frac = tail_fraction(&next.u);
            if frac > limit {
                return (
                    traj,
                    Some(Error::BlowUp {
                        last_valid_time: t.to_f64_lossy(),
                        reason: format!("spectral resolution lost: tail energy fraction {frac:e}"),
                    }),
                );
            }
        }
        traj.states.push(next.clone());
        state = next;
    }
    (traj, None)
}

pub fn integrate_with<T: Scalar>(
    problem: &Problem<T>,
    initial: &GeodesicState<T>,
    t_end: T,
    dt: T,
    options: &IntegratorOptions<T>,
) -> Result<Trajectory<T>> {
    match integrate_partial(problem, initial, t_end, dt, options) {
        (traj, None) => Ok(traj),
        (_, Some(e)) => Err(e),
    }
}

/// Fixed-step RK4 with default options.
pub fn integrate<T: Scalar>(
    problem: &Problem<T>,
    initial: &GeodesicState<T>,
    t_end: T,
    dt: T,
) -> Result<Trajectory<T>> {
    integrate_with(problem, initial, t_end, dt, &IntegratorOptions::default())
}
