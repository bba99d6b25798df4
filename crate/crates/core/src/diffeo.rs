//! Orientation-preserving circle diffeomorphisms on a uniform grid.
//!
//! A [`Diffeo`] stores `γ(θ_j) = θ_j + f_j` for a smooth periodic displacement `f`,
//! i.e. a representative on the universal cover with `γ(θ + 2π) = γ(θ) + 2π`.
//! Off-grid values come from trigonometric interpolation of `f`.

use crate::error::{Error, Result};
use crate::fields::FourierField;
use crate::spectral::{self, Interpolant};
use crate::Scalar;

const MAX_NEWTON: usize = 80;

/// Grid size used for an order-`N` field when none is given.
pub fn default_grid(order: usize) -> usize {
    4 * order + 1
}

#[derive(Debug, Clone, PartialEq)]
pub struct Diffeo<T> {
    disp: Vec<T>,
}

impl<T: Scalar> Diffeo<T> {
    pub fn identity(m: usize) -> Self {
        Self { disp: vec![T::zero(); m] }
    }

    /// `θ ↦ θ + a`.
    pub fn rotation(m: usize, a: T) -> Self {
        Self { disp: vec![a; m] }
    }

    /// From displacement samples; fails unless `γ' > 0` at every node.
    pub fn from_displacement(disp: Vec<T>) -> Result<Self> {
        if disp.len() < 3 {
            return Err(Error::InvalidArgument("a diffeomorphism needs at least 3 nodes".into()));
        }
        let d = Self { disp };
        d.check_monotone()?;
        Ok(d)
    }

    pub fn from_fn(m: usize, displacement: impl Fn(T) -> T) -> Result<Self> {
        Self::from_displacement(spectral::grid_nodes(m).into_iter().map(displacement).collect())
    }

    /// `θ ↦ θ + f(θ)` for a Fourier displacement `f`.
    pub fn from_field(m: usize, displacement: &FourierField<T>) -> Result<Self> {
        Self::from_displacement(displacement.sample(m))
    }

    pub(crate) fn from_displacement_unchecked(disp: Vec<T>) -> Self {
        Self { disp }
    }

    pub fn grid_size(&self) -> usize {
        self.disp.len()
    }

    pub fn nodes(&self) -> Vec<T> {
        spectral::grid_nodes(self.grid_size())
    }

    pub fn displacement(&self) -> &[T] {
        &self.disp
    }

    /// `γ(θ_j)`.
    pub fn values(&self) -> Vec<T> {
        self.nodes().iter().zip(&self.disp).map(|(&t, &f)| t + f).collect()
    }

    /// `γ'(θ_j)` by spectral differentiation.
    pub fn derivative_values(&self) -> Vec<T> {
        spectral::derivative(&self.disp).into_iter().map(|d| T::one() + d).collect()
    }

    pub fn check_monotone(&self) -> Result<()> {
        if let Some((node, &d)) = self
            .derivative_values()
            .iter()
            .enumerate()
            .find(|(_, d)| !(**d > T::zero()))
        {
            return Err(Error::NotMonotone {
                node,
                derivative: d.to_f64_lossy(),
            });
        }
        Ok(())
    }

    pub fn interpolant(&self) -> Interpolant<T> {
        Interpolant::new(&self.disp)
    }

    /// `γ(θ)` anywhere on ℝ.
    pub fn eval(&self, theta: T) -> T {
        theta + self.interpolant().eval(theta)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        check_grids(self, other)?;
        let outer = self.interpolant();
        let disp = self
            .nodes()
            .iter()
            .zip(&other.disp)
            .map(|(&t, &g)| g + outer.eval(t + g))
            .collect();
        Ok(Self { disp })
    }

    /// Preimages `γ⁻¹(θ_j)` on the lift, by bracketed Newton iteration.
    pub fn inverse_values(&self) -> Result<Vec<T>> {
        self.check_monotone()?;
        let p = self.interpolant();
        let (lo_f, hi_f) = self
            .disp
            .iter()
            .fold((T::infinity(), T::neg_infinity()), |(lo, hi), &f| (lo.min(f), hi.max(f)));
        let margin = (hi_f - lo_f) * T::of(0.1) + T::of(1e-3);
        let tol = T::of(1e-13).max(T::epsilon() * T::of(64.0));
        self.nodes()
            .into_iter()
            .enumerate()
            .map(|(node, target)| {
                let residual = |x: T| x + p.eval(x) - target;
                let mut lo = target - hi_f - margin;
                let mut hi = target - lo_f + margin;
                while residual(lo) > T::zero() {
                    lo = lo - margin;
                }
                while residual(hi) < T::zero() {
                    hi = hi + margin;
                }
                let mut x = (target - p.eval(target)).max(lo).min(hi);
                for _ in 0..MAX_NEWTON {
                    let r = residual(x);
                    if r.abs() <= tol * (T::one() + target.abs()) {
                        return Ok(x);
                    }
                    if r > T::zero() {
                        hi = x;
                    } else {
                        lo = x;
                    }
                    let d = T::one() + p.eval_derivative(x);
                    let newton = x - r / d;
                    x = if d > T::zero() && newton > lo && newton < hi {
                        newton
                    } else {
                        (lo + hi) / T::of(2.0)
                    };
                    if hi - lo <= tol {
                        return Ok(x);
                    }
                }
                let r = residual(x);
                if r.abs() <= T::epsilon().sqrt() {
                    Ok(x)
                } else {
                    Err(Error::InversionFailed { node })
                }
            })
            .collect()
    }

    pub fn inverse(&self) -> Result<Self> {
        let values = self.inverse_values()?;
        let disp = self.nodes().iter().zip(values).map(|(&t, v)| v - t).collect();
        Ok(Self { disp })
    }

    /// Largest nodal distance between two maps on the same grid.
    pub fn distance(&self, other: &Self) -> Result<T> {
        check_grids(self, other)?;
        Ok(self
            .disp
            .iter()
            .zip(&other.disp)
            .map(|(a, b)| (*a - *b).abs())
            .fold(T::zero(), T::max))
    }
}

pub(crate) fn check_grids<T>(a: &Diffeo<T>, b: &Diffeo<T>) -> Result<()> {
    if a.disp.len() != b.disp.len() {
        return Err(Error::GridMismatch {
            left: a.disp.len(),
            right: b.disp.len(),
        });
    }
    Ok(())
}

/// `Ad_φ x = φ'(φ⁻¹)·x(φ⁻¹)`, sampled on φ's grid and expanded to `order`.
pub fn adjoint_action<T: Scalar>(phi: &Diffeo<T>, x: &FourierField<T>, order: usize) -> Result<FourierField<T>> {
    let pre = phi.inverse_values()?;
    let p = phi.interpolant();
    let samples: Vec<T> = pre
        .iter()
        .map(|&psi| (T::one() + p.eval_derivative(psi)) * x.eval(psi))
        .collect();
    Ok(FourierField::from_samples(&samples, order))
}

/// `Ad_{φ⁻¹} x = (x∘φ)/φ'`, which needs no inversion.
pub fn adjoint_action_inverse<T: Scalar>(
    phi: &Diffeo<T>,
    x: &FourierField<T>,
    order: usize,
) -> Result<FourierField<T>> {
    phi.check_monotone()?;
    let samples: Vec<T> = phi
        .values()
        .iter()
        .zip(phi.derivative_values())
        .map(|(&g, d)| x.eval(g) / d)
        .collect();
    Ok(FourierField::from_samples(&samples, order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::Subspace;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type F = FourierField<f64>;

    fn random_diffeo(m: usize, seed: u64, slope: f64) -> Diffeo<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = F::random(5, Subspace::Full, 1.0, 1.0, &mut rng);
        let s = f.derivative().sample(256).iter().fold(0.0f64, |a, v| a.max(v.abs()));
        Diffeo::from_field(m, &f.scale(slope / s)).unwrap()
    }

    #[test]
    fn compose_with_inverse_is_identity() {
        for seed in 0..5 {
            let phi = random_diffeo(129, seed, 0.3);
            let inv = phi.inverse().unwrap();
            let id = Diffeo::identity(129);
            assert!(phi.compose(&inv).unwrap().distance(&id).unwrap() < 1e-8);
            assert!(inv.compose(&phi).unwrap().distance(&id).unwrap() < 1e-8);
        }
    }

    #[test]
    fn rotation_inverse_and_composition() {
        let r = Diffeo::rotation(33, 0.4);
        let s = Diffeo::rotation(33, -1.1);
        assert!(r.compose(&s).unwrap().distance(&Diffeo::rotation(33, -0.7)).unwrap() < 1e-13);
        assert!(r.inverse().unwrap().distance(&Diffeo::rotation(33, -0.4)).unwrap() < 1e-12);
    }

    #[test]
    fn non_monotone_rejected() {
        let err = Diffeo::from_fn(64, |t: f64| 2.0 * t.sin()).unwrap_err();
        assert!(matches!(err, Error::NotMonotone { .. }));
        assert!(matches!(
            Diffeo::<f64>::identity(8).compose(&Diffeo::identity(9)),
            Err(Error::GridMismatch { .. })
        ));
    }

    #[test]
    fn adjoint_action_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let x = F::random(6, Subspace::Full, 1.0, 0.5, &mut rng);
        let id = Diffeo::identity(default_grid(6));
        assert!((&adjoint_action(&id, &x, 6).unwrap() - &x).max_coeff() < 1e-13);

        let a = 0.9;
        let rot = Diffeo::rotation(default_grid(6), a);
        let ad = adjoint_action(&rot, &x, 6).unwrap();
        assert!((&ad - &x.shifted(a)).max_coeff() < 1e-12);

        let phi = random_diffeo(129, 4, 0.25);
        let inv = phi.inverse().unwrap();
        let back = adjoint_action(&phi, &adjoint_action(&inv, &x, 40).unwrap(), 40).unwrap();
        assert!((&back - &x).max_coeff() < 1e-8);
        let back2 = adjoint_action(&phi, &adjoint_action_inverse(&phi, &x, 40).unwrap(), 40).unwrap();
        assert!((&back2 - &x).max_coeff() < 1e-8);
    }
}
