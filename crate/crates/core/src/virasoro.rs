//! The centrally extended group `(φ, b)` with the area and Bott cocycles, and
//! its Lie algebra `Vect S¹ ⊕ ℝ` with the Gelfand-Fuchs cocycle.

use crate::diffeo::{check_grids, Diffeo};
use crate::error::Result;
use crate::fields::{bracket, FourierField};
use crate::metrics::ad_transpose;
use crate::{spectral, Scalar};

/// `(μ, ν)`; `ν = 0` is the trivial extension.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CentralParams<T> {
    pub mu: T,
    pub nu: T,
}

impl<T: Scalar> CentralParams<T> {
    pub fn new(mu: T, nu: T) -> Self {
        Self { mu, nu }
    }

    pub fn is_trivial(&self) -> bool {
        self.nu == T::zero()
    }

    /// `L_{μν} = ν∂² - μ` on a field.
    pub fn apply_l(&self, x: &FourierField<T>) -> FourierField<T> {
        x.map_modes(|n| {
            let n = T::of_int(n as i64);
            -(self.mu + self.nu * n * n)
        })
    }

    /// `ω_{μν}(x, y) = (1/2π)∫ (μ x y' + ν x' y'') dθ`.
    pub fn omega(&self, x: &FourierField<T>, y: &FourierField<T>) -> T {
        let dy = y.derivative();
        self.mu * x.l2_inner(&dy) + self.nu * x.derivative().l2_inner(&dy.derivative())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VirasoroElement<T> {
    pub phi: Diffeo<T>,
    pub b: T,
}

impl<T: Scalar> VirasoroElement<T> {
    pub fn identity(m: usize) -> Self {
        Self {
            phi: Diffeo::identity(m),
            b: T::zero(),
        }
    }
}

/// `(x, a) ∈ Vect S¹ ⊕ ℝ`.
#[derive(Debug, Clone, PartialEq)]
pub struct VirVector<T> {
    pub x: FourierField<T>,
    pub a: T,
}

impl<T: Scalar> VirVector<T> {
    pub fn new(x: FourierField<T>, a: T) -> Self {
        Self { x, a }
    }

    /// `(1/2π)∫ x y dθ + a₁a₂`.
    pub fn inner(&self, other: &Self) -> T {
        self.x.l2_inner(&other.x) + self.a * other.a
    }
}

/// `A(φ₁, φ₂) = (1/4π)∫ (-φ₁∘φ₂ + φ₁ + φ₂ - id) dθ`.
pub fn cocycle_a<T: Scalar>(phi1: &Diffeo<T>, phi2: &Diffeo<T>) -> Result<T> {
    let comp = phi1.compose(phi2)?;
    let sum = comp
        .displacement()
        .iter()
        .zip(phi1.displacement())
        .zip(phi2.displacement())
        .fold(T::zero(), |acc, ((&c, &a), &b)| acc + (a + b - c));
    // (1/4π)·(2π/M)·Σ
    Ok(sum / (T::of(2.0) * T::of_int(phi1.grid_size() as i64)))
}

/// Bott cocycle `B(φ₁, φ₂) = (1/4π)∫ log((φ₁∘φ₂)') d log φ₂'`.
pub fn cocycle_b<T: Scalar>(phi1: &Diffeo<T>, phi2: &Diffeo<T>) -> Result<T> {
    check_grids(phi1, phi2)?;
    phi1.check_monotone()?;
    phi2.check_monotone()?;
    let log_d2: Vec<T> = phi2.derivative_values().iter().map(|d| d.ln()).collect();
    let dlog_d2 = spectral::derivative(&log_d2);
    let p1 = phi1.interpolant();
    let sum = phi2
        .values()
        .iter()
        .zip(&log_d2)
        .zip(&dlog_d2)
        .fold(T::zero(), |acc, ((&g, &l2), &dl2)| {
            let d1 = T::one() + p1.eval_derivative(g);
            acc + (d1.ln() + l2) * dl2
        });
    Ok(sum / (T::of(2.0) * T::of_int(phi1.grid_size() as i64)))
}

/// `(φ₁, b₁)(φ₂, b₂) = (φ₁∘φ₂, b₁ + b₂ + μA(φ₁,φ₂) + νB(φ₁,φ₂))`.
pub fn vir_multiply<T: Scalar>(
    p: &CentralParams<T>,
    g1: &VirasoroElement<T>,
    g2: &VirasoroElement<T>,
) -> Result<VirasoroElement<T>> {
    let phi = g1.phi.compose(&g2.phi)?;
    let mut b = g1.b + g2.b;
    if p.mu != T::zero() {
        b = b + p.mu * cocycle_a(&g1.phi, &g2.phi)?;
    }
    if p.nu != T::zero() {
        b = b + p.nu * cocycle_b(&g1.phi, &g2.phi)?;
    }
    Ok(VirasoroElement { phi, b })
}

/// Extended bracket `([x, y], ω_{μν}(x, y))`, exact.
pub fn vir_bracket<T: Scalar>(p: &CentralParams<T>, v: &VirVector<T>, w: &VirVector<T>) -> VirVector<T> {
    let order = v.x.order() + w.x.order();
    VirVector {
        x: bracket(&v.x, &w.x, order),
        a: p.omega(&v.x, &w.x),
    }
}

/// `ad_{(x,a)}^⊤(y, a₀) = (x y' + 2x'y + a₀ L_{μν} x', 0)`.
pub fn vir_ad_transpose<T: Scalar>(p: &CentralParams<T>, v: &VirVector<T>, w: &VirVector<T>) -> VirVector<T> {
    let central = p.apply_l(&v.x.derivative()).scale(w.a);
    VirVector {
        x: &ad_transpose(&v.x, &w.x) + &central,
        a: T::zero(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::Subspace;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type F = FourierField<f64>;

    fn random_diffeo(m: usize, rng: &mut ChaCha8Rng, sup: f64) -> Diffeo<f64> {
        let f = F::random(4, Subspace::Full, 1.0, 1.0, rng);
        let s = f.sample(256).iter().fold(0.0f64, |a, v| a.max(v.abs()));
        Diffeo::from_field(m, &f.scale(sup / s)).unwrap()
    }

    #[test]
    fn cocycles_vanish_on_identity_and_rotations() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let phi = random_diffeo(128, &mut rng, 0.2);
        let id = Diffeo::identity(128);
        let (ra, rc) = (Diffeo::<f64>::rotation(128, 0.3), Diffeo::rotation(128, -1.2));
        assert!(cocycle_a(&phi, &id).unwrap().abs() < 1e-14);
        assert!(cocycle_a(&id, &phi).unwrap().abs() < 1e-14);
        assert!(cocycle_a(&ra, &rc).unwrap().abs() < 1e-14);
        assert!(cocycle_b(&phi, &id).unwrap().abs() < 1e-14);
        assert!(cocycle_b(&id, &phi).unwrap().abs() < 1e-14);
        assert!(cocycle_b(&ra, &phi).unwrap().abs() < 1e-13);
    }

    #[test]
    fn multiply_identity_and_rotations() {
        let p = CentralParams::new(0.7, 1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let g = VirasoroElement { phi: random_diffeo(64, &mut rng, 0.2), b: 0.4 };
        let e = VirasoroElement::identity(64);
        let eg = vir_multiply(&p, &e, &g).unwrap();
        assert!(eg.phi.distance(&g.phi).unwrap() < 1e-14 && (eg.b - g.b).abs() < 1e-14);
        let r1 = VirasoroElement { phi: Diffeo::rotation(64, 0.5), b: 1.0 };
        let r2 = VirasoroElement { phi: Diffeo::rotation(64, 0.25), b: -2.0 };
        let r = vir_multiply(&p, &r1, &r2).unwrap();
        assert!(r.phi.distance(&Diffeo::rotation(64, 0.75)).unwrap() < 1e-14);
        assert!((r.b + 1.0).abs() < 1e-14);
    }

    #[test]
    fn ad_transpose_examples() {
        let p = CentralParams::new(0.0, 1.0);
        let v = VirVector::new(F::sin_mode(2, 1, 1.0), 0.0);
        let w = VirVector::new(F::zeros(2), 1.0);
        let out = vir_ad_transpose(&p, &v, &w);
        assert!((&out.x - &F::cos_mode(2, 1, -1.0)).max_coeff() < 1e-15);
        assert_eq!(out.a, 0.0);
        let w0 = VirVector::new(F::cos_mode(2, 2, 1.0), 0.0);
        let q = CentralParams::new(0.3, -2.0);
        let out = vir_ad_transpose(&q, &v, &w0);
        assert!((&out.x - &ad_transpose(&v.x, &w0.x)).max_coeff() == 0.0);
    }
}
