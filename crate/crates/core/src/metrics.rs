//! Invariant inner products on the circle algebra and the inertia operators
//! that represent them against the `L²` pairing.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::fields::{FourierField, Subspace};
use crate::Scalar;

/// The pair `(α, β)` of the two-parameter metric family.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricParams<T> {
    pub alpha: T,
    pub beta: T,
    positive_definite: bool,
    degenerate_modes: Vec<usize>,
}

impl<T: Scalar> MetricParams<T> {
    pub fn new(alpha: T, beta: T) -> Self {
        let zero = T::zero();
        let positive_definite = (beta >= zero && -alpha < beta) || (beta == zero && alpha > zero);
        let mut degenerate_modes = Vec::new();
        if beta != zero {
            let ratio = -alpha / beta;
            if ratio >= T::one() {
                let n = ratio.sqrt().round();
                if alpha + n * n * beta == zero {
                    degenerate_modes.push(n.to_f64_lossy() as usize);
                }
            }
        }
        Self {
            alpha,
            beta,
            positive_definite,
            degenerate_modes,
        }
    }

    /// `(1, 0)`.
    pub fn velling_kirillov() -> Self {
        Self::new(T::one(), T::zero())
    }

    /// `(-1, 1)`.
    pub fn weil_petersson() -> Self {
        Self::new(-T::one(), T::one())
    }

    pub fn is_positive_definite(&self) -> bool {
        self.positive_definite
    }

    /// Modes `n ≥ 1` with `α + βn² = 0`.
    pub fn degenerate_modes(&self) -> &[usize] {
        &self.degenerate_modes
    }

    /// `α + βn²`.
    pub fn symbol(&self, n: usize) -> T {
        let n = T::of_int(n as i64);
        self.alpha + self.beta * n * n
    }
}

/// Which operator `A` realizes the metric, and on which subspace it acts.
#[derive(Debug, Clone, PartialEq)]
pub enum InertiaOp<T> {
    L2Identity,
    /// `A = -L_{αβ}`, multiplier `α + βn²`.
    Sobolev(MetricParams<T>),
    /// `A = L_{αβ} J ∂_θ`, multiplier `σ|n|(α + βn²)`, zero on constants.
    Kaehler(MetricParams<T>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct InertiaKind<T> {
    pub op: InertiaOp<T>,
    pub domain: Subspace,
}

impl<T: Scalar> InertiaKind<T> {
    pub fn new(op: InertiaOp<T>, domain: Subspace) -> Self {
        Self { op, domain }
    }

    pub fn multiplier(&self, n: usize) -> T {
        match &self.op {
            InertiaOp::L2Identity => T::one(),
            InertiaOp::Sobolev(p) => p.symbol(n),
            InertiaOp::Kaehler(_) if n == 0 => T::zero(),
            InertiaOp::Kaehler(p) => {
                T::of_int(crate::fields::HILBERT_SIGN as i64) * T::of_int(n as i64) * p.symbol(n)
            }
        }
    }

    /// Explicit multiplier table up to `order`.
    pub fn table(&self, order: usize) -> Inertia<T> {
        let weights = (0..=order)
            .map(|n| self.domain.retains(n).then(|| self.multiplier(n)))
            .collect();
        Inertia {
            weights,
            domain: self.domain,
        }
    }
}

/// Diagonal inertia operator stored as `a_n` for `n = 0..=N`; `None` outside the domain.
#[derive(Debug, Clone, PartialEq)]
pub struct Inertia<T> {
    weights: Vec<Option<T>>,
    domain: Subspace,
}

impl<T: Scalar> Inertia<T> {
    /// Overrides `a_n` (adding `n` to the domain).
    pub fn with_mode(mut self, n: usize, a: T) -> Self {
        if n < self.weights.len() {
            self.weights[n] = Some(a);
        }
        self
    }

    pub fn order(&self) -> usize {
        self.weights.len() - 1
    }

    pub fn weight(&self, n: usize) -> Option<T> {
        self.weights.get(n).copied().flatten()
    }

    /// Modes inside the domain with vanishing multiplier.
    pub fn singular_modes(&self) -> Vec<usize> {
        self.weights
            .iter()
            .enumerate()
            .filter_map(|(n, w)| matches!(w, Some(a) if *a == T::zero()).then_some(n))
            .collect()
    }

    fn check_support(&self, x: &FourierField<T>) -> Result<()> {
        for (n, c) in x.coeffs().iter().enumerate() {
            if *c != Complex::new(T::zero(), T::zero()) && self.weight(n).is_none() {
                return Err(Error::OutsideDomain {
                    mode: n,
                    magnitude: c.norm().to_f64_lossy(),
                    domain: self.domain,
                });
            }
        }
        Ok(())
    }

    pub fn apply(&self, x: &FourierField<T>) -> Result<FourierField<T>> {
        self.check_support(x)?;
        Ok(x.resized(self.order()).map_modes(|n| self.weight(n).unwrap_or(T::zero())))
    }

    pub fn invert(&self, m: &FourierField<T>) -> Result<FourierField<T>> {
        self.check_support(m)?;
        let m = m.resized(self.order());
        for (n, c) in m.coeffs().iter().enumerate() {
            if self.weight(n) == Some(T::zero()) && *c != Complex::new(T::zero(), T::zero()) {
                return Err(Error::SingularMode {
                    mode: n,
                    magnitude: c.norm().to_f64_lossy(),
                });
            }
        }
        Ok(m.map_modes(|n| match self.weight(n) {
            Some(a) if a != T::zero() => T::one() / a,
            _ => T::zero(),
        }))
    }

    /// `⟨A x, x⟩`.
    pub fn quadratic_form(&self, x: &FourierField<T>) -> Result<T> {
        Ok(self.apply(x)?.l2_inner(x))
    }
}

/// `F(z) = Σ_{n≥1} a_n zⁿ`; `coeffs[k]` holds `a_{k+1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct UnivalentTangent<T> {
    pub coeffs: Vec<Complex<T>>,
}

impl<T: Scalar> UnivalentTangent<T> {
    pub fn a(&self, n: usize) -> Complex<T> {
        n.checked_sub(1)
            .and_then(|k| self.coeffs.get(k).copied())
            .unwrap_or(Complex::new(T::zero(), T::zero()))
    }

    /// `zⁿ`.
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![Complex::new(T::zero(), T::zero()); n];
        coeffs[n - 1] = Complex::new(T::one(), T::zero());
        Self { coeffs }
    }
}

/// `L_{αβ} = β∂²_θ - α`: multiplies mode `n` by `-(α + βn²)`.
pub fn apply_l<T: Scalar>(p: &MetricParams<T>, x: &FourierField<T>) -> FourierField<T> {
    x.map_modes(|n| -p.symbol(n))
}

/// `ω_{αβ}(x, y) = (1/2π)∫ (α x y' + β x' y'') dθ`.
pub fn omega<T: Scalar>(p: &MetricParams<T>, x: &FourierField<T>, y: &FourierField<T>) -> T {
    let dy = y.derivative();
    p.alpha * x.l2_inner(&dy) + p.beta * x.derivative().l2_inner(&dy.derivative())
}

/// `(x, y)_{αβ} = ω_{αβ}(J(x - η₀x), y - η₀y) + η₀(x)η₀(y)`.
pub fn inner<T: Scalar>(p: &MetricParams<T>, x: &FourierField<T>, y: &FourierField<T>) -> T {
    let x0 = x.project(Subspace::Vect0);
    let y0 = y.project(Subspace::Vect0);
    omega(p, &x0.hilbert(), &y0) + x.mean() * y.mean()
}

pub fn l2_inner<T: Scalar>(x: &FourierField<T>, y: &FourierField<T>) -> T {
    x.l2_inner(y)
}

/// `ad_x^⊤(y) = x y' + 2x'y`, the `L²`-adjoint of `z ↦ [x, z]`, exact at order `N₁ + N₂`.
pub fn ad_transpose<T: Scalar>(x: &FourierField<T>, y: &FourierField<T>) -> FourierField<T> {
    &x.product(&y.derivative()) + &x.derivative().product(y).scale(T::of(2.0))
}

pub fn inertia_apply<T: Scalar>(k: &InertiaKind<T>, x: &FourierField<T>) -> Result<FourierField<T>> {
    k.table(x.order()).apply(x)
}

pub fn inertia_invert<T: Scalar>(k: &InertiaKind<T>, m: &FourierField<T>) -> Result<FourierField<T>> {
    k.table(m.order()).invert(m)
}

/// Tangent map to normalized univalent functions: `F(e^{iθ}) = -(i/2)(x - iJx)`.
pub fn to_univalent<T: Scalar>(x: &FourierField<T>) -> Result<UnivalentTangent<T>> {
    let mean = x.mean();
    if mean != T::zero() {
        return Err(Error::NonzeroMean {
            mean: mean.to_f64_lossy(),
        });
    }
    // x - iJx doubles the positive modes and cancels the negative ones.
    let minus_half_i = Complex::new(T::zero(), -T::of(0.5));
    let i = Complex::new(T::zero(), T::one());
    let jx = x.hilbert();
    let coeffs = (1..=x.order() as i64)
        .map(|n| minus_half_i * (x.coeff(n) - i * jx.coeff(n)))
        .collect();
    Ok(UnivalentTangent { coeffs })
}

/// `2 Σ (αn + βn³) a_n conj(b_n)`.
pub fn kirillov_metric<T: Scalar>(
    p: &MetricParams<T>,
    f: &UnivalentTangent<T>,
    g: &UnivalentTangent<T>,
) -> Complex<T> {
    let order = f.coeffs.len().max(g.coeffs.len());
    let mut acc = Complex::new(T::zero(), T::zero());
    for n in 1..=order {
        acc = acc + f.a(n) * g.a(n).conj() * (T::of_int(n as i64) * p.symbol(n));
    }
    acc * T::of(2.0)
}
