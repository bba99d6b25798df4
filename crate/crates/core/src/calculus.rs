//! Curves on the group and in the algebra: left logarithmic derivatives,
//! flow reconstruction, and the map `τ_u x = ẋ + [u, x]` with its inverse.

use crate::diffeo::{adjoint_action, adjoint_action_inverse, Diffeo};
use crate::error::{Error, Result};
use crate::fields::{bracket, FourierField, Subspace};
use crate::{spectral, Scalar};

/// Fields sampled at `t_k = k·dt`, `k = 0..len`.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldPath<T> {
    pub dt: T,
    pub fields: Vec<FourierField<T>>,
}

/// A curve of diffeomorphisms sampled at `t_k = k·dt` on a common grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupPath<T> {
    pub dt: T,
    pub samples: Vec<Diffeo<T>>,
}

/// A time-dependent field that can be queried at arbitrary `t`.
pub trait Velocity<T> {
    fn at(&self, t: T) -> FourierField<T>;
}

impl<T, F> Velocity<T> for F
where
    F: Fn(T) -> FourierField<T>,
{
    fn at(&self, t: T) -> FourierField<T> {
        self(t)
    }
}

impl<T: Scalar> FieldPath<T> {
    pub fn new(dt: T, fields: Vec<FourierField<T>>) -> Self {
        Self { dt, fields }
    }

    /// Samples `f` at `k·dt` for `k = 0..=steps`.
    pub fn from_fn(dt: T, steps: usize, f: impl Fn(T) -> FourierField<T>) -> Self {
        let fields = (0..=steps).map(|k| f(dt * T::of_int(k as i64))).collect();
        Self { dt, fields }
    }

    pub fn len(&self) -> usize {
        self.fields.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fields.is_empty()
    }

    pub fn times(&self) -> Vec<T> {
        (0..self.len()).map(|k| self.dt * T::of_int(k as i64)).collect()
    }

    pub fn max_order(&self) -> usize {
        self.fields.iter().map(FourierField::order).max().unwrap_or(0)
    }

    /// Largest coefficient difference over all samples.
    pub fn max_difference(&self, other: &Self) -> T {
        self.fields
            .iter()
            .zip(&other.fields)
            .map(|(a, b)| (a - b).max_coeff())
            .fold(T::zero(), T::max)
    }

    /// Time derivative by centred differences, second-order one-sided at the ends.
    pub fn time_derivative(&self) -> Result<Self> {
        let n = self.len();
        if n < 3 {
            return Err(Error::InvalidArgument("time derivative needs at least 3 samples".into()));
        }
        let two_dt = T::of(2.0) * self.dt;
        let f = &self.fields;
        let mut out = Vec::with_capacity(n);
        out.push((&(&f[1].scale(T::of(4.0)) - &f[0].scale(T::of(3.0))) - &f[2]).scale(T::one() / two_dt));
        for k in 1..n - 1 {
            out.push((&f[k + 1] - &f[k - 1]).scale(T::one() / two_dt));
        }
        out.push((&(&f[n - 1].scale(T::of(3.0)) - &f[n - 2].scale(T::of(4.0))) + &f[n - 3]).scale(T::one() / two_dt));
        Ok(Self { dt: self.dt, fields: out })
    }
}

impl<T: Scalar> Velocity<T> for FieldPath<T> {
    /// Cubic Lagrange interpolation between samples.
    fn at(&self, t: T) -> FourierField<T> {
        let n = self.len();
        let s = t / self.dt;
        if n < 4 {
            let k = s.round().to_f64_lossy().max(0.0) as usize;
            return self.fields[k.min(n - 1)].clone();
        }
        let k = (s.floor().to_f64_lossy().max(0.0) as usize).clamp(1, n - 3);
        let base = k - 1;
        let x = s - T::of_int(base as i64);
        let nodes = [T::zero(), T::one(), T::of(2.0), T::of(3.0)];
        let mut acc = FourierField::zeros(self.max_order());
        for (i, &xi) in nodes.iter().enumerate() {
            let w = nodes
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .fold(T::one(), |w, (_, &xj)| w * (x - xj) / (xi - xj));
            acc += &self.fields[base + i].scale(w);
        }
        acc
    }
}

impl<T: Scalar> GroupPath<T> {
    pub fn times(&self) -> Vec<T> {
        (0..self.samples.len()).map(|k| self.dt * T::of_int(k as i64)).collect()
    }

    pub fn grid_size(&self) -> usize {
        self.samples.first().map_or(0, Diffeo::grid_size)
    }
}

/// `u(t_k) = ∂_tγ / γ'` expanded to `order`, with `∂_t` by finite differences.
pub fn log_derivative<T: Scalar>(path: &GroupPath<T>, order: usize) -> Result<FieldPath<T>> {
    let n = path.samples.len();
    if n < 3 {
        return Err(Error::InvalidArgument("log derivative needs at least 3 samples".into()));
    }
    for s in &path.samples {
        s.check_monotone()?;
    }
    let two_dt = T::of(2.0) * path.dt;
    let disp = |k: usize| path.samples[k].displacement();
    let fields = (0..n)
        .map(|k| {
            let gamma_t: Vec<T> = (0..path.grid_size())
                .map(|j| {
                    if k == 0 {
                        (T::of(4.0) * disp(1)[j] - T::of(3.0) * disp(0)[j] - disp(2)[j]) / two_dt
                    } else if k == n - 1 {
                        (T::of(3.0) * disp(k)[j] - T::of(4.0) * disp(k - 1)[j] + disp(k - 2)[j]) / two_dt
                    } else {
                        (disp(k + 1)[j] - disp(k - 1)[j]) / two_dt
                    }
                })
                .collect();
            let samples: Vec<T> = gamma_t
                .iter()
                .zip(path.samples[k].derivative_values())
                .map(|(&a, d)| a / d)
                .collect();
            FourierField::from_samples(&samples, order)
        })
        .collect();
    Ok(FieldPath { dt: path.dt, fields })
}

/// Integrates `∂_tγ = γ'·u(t)` nodewise with classical RK4 from `γ(0) = gamma0`.
pub fn reconstruct_flow<T: Scalar>(
    u: &impl Velocity<T>,
    gamma0: &Diffeo<T>,
    dt: T,
    steps: usize,
) -> Result<GroupPath<T>> {
    if !(dt > T::zero()) {
        return Err(Error::InvalidArgument("dt must be positive".into()));
    }
    gamma0.check_monotone()?;
    let m = gamma0.grid_size();
    let rate = |t: T, f: &[T]| -> Vec<T> {
        let vel = u.at(t).sample(m);
        spectral::derivative(f)
            .iter()
            .zip(vel)
            .map(|(&df, v)| (T::one() + df) * v)
            .collect()
    };
    let axpy = |f: &[T], h: T, k: &[T]| -> Vec<T> { f.iter().zip(k).map(|(&a, &b)| a + h * b).collect() };
    let half = dt / T::of(2.0);
    let mut samples = vec![gamma0.clone()];
    let mut f = gamma0.displacement().to_vec();
    for step in 0..steps {
        let t = dt * T::of_int(step as i64);
        let k1 = rate(t, &f);
        let k2 = rate(t + half, &axpy(&f, half, &k1));
        let k3 = rate(t + half, &axpy(&f, half, &k2));
        let k4 = rate(t + dt, &axpy(&f, dt, &k3));
        for j in 0..m {
            f[j] = f[j] + dt / T::of(6.0) * (k1[j] + T::of(2.0) * (k2[j] + k3[j]) + k4[j]);
        }
        let next = Diffeo::from_displacement_unchecked(f.clone());
        if let Err(e) = next.check_monotone() {
            return Err(Error::BlowUp {
                last_valid_time: t.to_f64_lossy(),
                reason: format!("flow lost monotonicity at t = {}: {e}", (t + dt).to_f64_lossy()),
            });
        }
        if f.iter().any(|v| !v.is_finite()) {
            return Err(Error::BlowUp {
                last_valid_time: t.to_f64_lossy(),
                reason: "non-finite displacement".into(),
            });
        }
        samples.push(next);
    }
    Ok(GroupPath { dt, samples })
}

/// `τ_u x = ẋ + [u, x]`, truncated to the order of `x`.
pub fn tau_apply<T: Scalar>(u: &FieldPath<T>, x: &FieldPath<T>) -> Result<FieldPath<T>> {
    if u.len() != x.len() {
        return Err(Error::InvalidArgument(format!(
            "time grids differ: {} vs {} samples",
            u.len(),
            x.len()
        )));
    }
    let order = x.max_order();
    let xdot = x.time_derivative()?;
    let fields = xdot
        .fields
        .iter()
        .zip(u.fields.iter().zip(&x.fields))
        .map(|(d, (uk, xk))| &d.resized(order) + &bracket(uk, xk, order))
        .collect();
    Ok(FieldPath { dt: x.dt, fields })
}

/// Solves `τ_u x = y`, `x(0) = 0`, via `x(t) = Ad_{γ(t)⁻¹} ∫₀ᵗ Ad_{γ(s)} y(s) ds`
/// with `γ` the flow of `u` from the identity on an `m`-node grid.
pub fn tau_invert<T: Scalar>(u: &FieldPath<T>, y: &FieldPath<T>, order: usize, m: usize) -> Result<FieldPath<T>> {
    if u.len() != y.len() || u.len() < 2 {
        return Err(Error::InvalidArgument("tau_invert needs matching time grids of length ≥ 2".into()));
    }
    let gamma = reconstruct_flow(u, &Diffeo::identity(m), u.dt, u.len() - 1)?;
    let pushed: Vec<FourierField<T>> = gamma
        .samples
        .iter()
        .zip(&y.fields)
        .map(|(g, yk)| adjoint_action(g, yk, order))
        .collect::<Result<_>>()?;
    let half_dt = y.dt / T::of(2.0);
    let mut integral = FourierField::zeros(order);
    let mut fields = vec![FourierField::zeros(order)];
    for k in 1..y.len() {
        integral += &(&pushed[k - 1] + &pushed[k]).scale(half_dt);
        fields.push(adjoint_action_inverse(&gamma.samples[k], &integral, order)?);
    }
    Ok(FieldPath { dt: y.dt, fields })
}

/// Largest `L²` norm, over samples, of the part of the log derivative outside `s`.
pub fn horizontality_residual<T: Scalar>(path: &GroupPath<T>, s: Subspace, order: usize) -> Result<T> {
    let u = log_derivative(path, order)?;
    Ok(u
        .fields
        .iter()
        .map(|f| f.project_out(s).l2_norm())
        .fold(T::zero(), T::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type F = FourierField<f64>;

    #[test]
    fn rotation_path_has_constant_log_derivative() {
        let c = 0.7;
        let path = GroupPath {
            dt: 0.01,
            samples: (0..20).map(|k| Diffeo::rotation(17, c * 0.01 * k as f64)).collect(),
        };
        let u = log_derivative(&path, 4).unwrap();
        for f in &u.fields {
            assert!((f - &F::constant(4, c)).max_coeff() < 1e-12);
        }
        assert!((horizontality_residual(&path, Subspace::Vect0, 4).unwrap() - c).abs() < 1e-12);
    }

    #[test]
    fn constant_path_has_zero_log_derivative() {
        let phi = Diffeo::from_fn(33, |t: f64| 0.2 * (2.0 * t).sin()).unwrap();
        let path = GroupPath { dt: 0.1, samples: vec![phi; 5] };
        for f in log_derivative(&path, 6).unwrap().fields {
            assert!(f.max_coeff() < 1e-15);
        }
    }

    #[test]
    fn flow_of_constant_field_is_rotation() {
        let c = -0.3;
        let u = |_t: f64| F::constant(4, c);
        let path = reconstruct_flow(&u, &Diffeo::identity(17), 0.01, 50).unwrap();
        for (t, g) in path.times().iter().zip(&path.samples) {
            assert!(g.distance(&Diffeo::rotation(17, c * t)).unwrap() < 1e-13);
        }
        let zero = |_t: f64| F::zeros(4);
        let still = reconstruct_flow(&zero, &Diffeo::identity(17), 0.01, 5).unwrap();
        assert!(still.samples.iter().all(|g| g.displacement().iter().all(|&v| v == 0.0)));
    }

    #[test]
    fn crossing_characteristics_reported_as_blow_up() {
        // The exact flow never folds; an exploding shear outruns the grid.
        let shear = |t: f64| F::sin_mode(8, 1, 1.0).scale((4.0 * t).exp());
        let err = reconstruct_flow(&shear, &Diffeo::identity(33), 0.01, 400).unwrap_err();
        assert!(matches!(err, Error::BlowUp { .. }), "{err:?}");
    }

    #[test]
    fn log_derivative_inverts_flow() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let a = F::random(4, Subspace::Full, 0.3, 1.0, &mut rng);
        let b = F::random(4, Subspace::Full, 0.3, 1.0, &mut rng);
        let u = |t: f64| &a + &b.scale((3.0 * t).sin());
        let dt = 1e-3;
        let path = reconstruct_flow(&u, &Diffeo::identity(33), dt, 200).unwrap();
        let back = log_derivative(&path, 8).unwrap();
        for (k, f) in back.fields.iter().enumerate() {
            let exact = u(dt * k as f64).resized(8);
            assert!((f - &exact).max_coeff() < 1e-6, "k={k}");
        }
    }

    #[test]
    fn tau_examples() {
        let dt = 1e-2;
        let x = FieldPath::from_fn(dt, 20, |t| F::cos_mode(4, 2, t * t));
        let zero = FieldPath::from_fn(dt, 20, |_| F::zeros(4));
        let tx = tau_apply(&zero, &x).unwrap();
        for (k, f) in tx.fields.iter().enumerate() {
            let t = dt * k as f64;
            assert!((f - &F::cos_mode(4, 2, 2.0 * t)).max_coeff() < 1e-12);
        }
        let uc = FieldPath::from_fn(dt, 4, |_| F::sin_mode(2, 1, 1.0));
        let xc = FieldPath::from_fn(dt, 4, |_| F::cos_mode(2, 1, 1.0));
        let t = tau_apply(&uc, &xc).unwrap();
        for f in &t.fields {
            assert!((f - &F::constant(2, 1.0)).max_coeff() < 1e-14);
        }

        // u = 0: x(t) = ∫ y
        let y = FieldPath::from_fn(dt, 10, |t| F::sin_mode(3, 3, 1.0 + t));
        let x = tau_invert(&zero.clone_prefix(11), &y, 3, 13).unwrap();
        for (k, f) in x.fields.iter().enumerate() {
            let t = dt * k as f64;
            assert!((f - &F::sin_mode(3, 3, t + t * t / 2.0)).max_coeff() < 1e-12);
        }
        let yz = FieldPath::from_fn(dt, 10, |_| F::zeros(3));
        let uz = FieldPath::from_fn(dt, 10, |t| F::cos_mode(3, 1, t));
        assert!(tau_invert(&uz, &yz, 3, 13).unwrap().fields.iter().all(|f| f.max_coeff() == 0.0));
    }

    impl FieldPath<f64> {
        fn clone_prefix(&self, n: usize) -> Self {
            Self { dt: self.dt, fields: self.fields[..n].to_vec() }
        }
    }
}
