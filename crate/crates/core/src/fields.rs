//! Real vector fields on the circle in truncated Fourier form.
//!
//! A field of order `N` is `x(θ) = Σ_{|n|≤N} ĉ_n e^{inθ}` with `ĉ_{-n} = conj(ĉ_n)`;
//! only `ĉ_0..=ĉ_N` are stored. Products are formed by exact convolution, so a
//! product of an order-`N` and an order-`M` field is exact at order `N + M`.

use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex;
use rand::Rng;

use crate::error::{Error, Result};
use crate::{spectral, Scalar};

/// Sign σ of the Hilbert multiplier `J e^{inθ} = σ·i·sign(n)·e^{inθ}` for the kernel
/// `(1/2π) p.v.∫ x(t) cot((t-θ)/2) dt`. Checked against direct quadrature in the test suite.
pub const HILBERT_SIGN: i8 = 1;

/// Mode subsets used for splittings of the algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Subspace {
    Full,
    /// Zero-mean fields, `n ≠ 0`.
    Vect0,
    /// `|n| ≥ 2`: the common kernel of the mean and first-moment functionals.
    D,
    /// Constants.
    Rot,
    /// `|n| ≤ 1`: the Möbius subalgebra.
    Mob,
}

impl Subspace {
    pub fn retains(self, n: usize) -> bool {
        match self {
            Subspace::Full => true,
            Subspace::Vect0 => n != 0,
            Subspace::D => n >= 2,
            Subspace::Rot => n == 0,
            Subspace::Mob => n <= 1,
        }
    }

    /// Complementary subspace; `None` for `Full`.
    pub fn complement(self) -> Option<Subspace> {
        match self {
            Subspace::Full => None,
            Subspace::Vect0 => Some(Subspace::Rot),
            Subspace::Rot => Some(Subspace::Vect0),
            Subspace::D => Some(Subspace::Mob),
            Subspace::Mob => Some(Subspace::D),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FourierField<T> {
    coeffs: Vec<Complex<T>>,
}

impl<T: Scalar> FourierField<T> {
    pub fn zeros(order: usize) -> Self {
        Self {
            coeffs: vec![Complex::new(T::zero(), T::zero()); order + 1],
        }
    }

    pub fn constant(order: usize, value: T) -> Self {
        let mut f = Self::zeros(order);
        f.coeffs[0].re = value;
        f
    }

    /// Builds a field from `ĉ_0..=ĉ_N`. Rejects a non-real mean.
    pub fn from_coeffs(coeffs: Vec<Complex<T>>) -> Result<Self> {
        let Some(c0) = coeffs.first() else {
            return Err(Error::InvalidArgument("a field needs at least ĉ_0".into()));
        };
        let tol = T::epsilon() * T::of(64.0) * c0.re.abs().max(T::one());
        if c0.im.abs() > tol {
            return Err(Error::InvalidArgument(format!(
                "ĉ_0 must be real, got imaginary part {:e}",
                c0.im
            )));
        }
        let mut coeffs = coeffs;
        coeffs[0].im = T::zero();
        Ok(Self { coeffs })
    }

    /// Sets `ĉ_n = re + i·im` for each listed mode (`n ≥ 0`).
    pub fn from_modes(order: usize, modes: &[(usize, T, T)]) -> Result<Self> {
        let mut f = Self::zeros(order);
        for &(n, re, im) in modes {
            if n > order {
                return Err(Error::InvalidArgument(format!("mode {n} exceeds order {order}")));
            }
            f.coeffs[n] = f.coeffs[n] + Complex::new(re, im);
        }
        Self::from_coeffs(f.coeffs)
    }

    /// `amplitude·cos(nθ)`.
    pub fn cos_mode(order: usize, n: usize, amplitude: T) -> Self {
        let mut f = Self::zeros(order.max(n));
        if n == 0 {
            f.coeffs[0].re = amplitude;
        } else {
            f.coeffs[n].re = amplitude / T::of(2.0);
        }
        f
    }

    /// `amplitude·sin(nθ)`.
    pub fn sin_mode(order: usize, n: usize, amplitude: T) -> Self {
        let mut f = Self::zeros(order.max(n));
        if n > 0 {
            f.coeffs[n].im = -amplitude / T::of(2.0);
        }
        f
    }

    /// Random field on the modes of `subspace` with `|ĉ_n| ≲ amplitude / (1+n)^decay`.
    pub fn random<R: Rng + ?Sized>(
        order: usize,
        subspace: Subspace,
        amplitude: T,
        decay: T,
        rng: &mut R,
    ) -> Self {
        let mut f = Self::zeros(order);
        for n in 0..=order {
            if !subspace.retains(n) {
                continue;
            }
            let scale = amplitude / (T::one() + T::of_int(n as i64)).powf(decay);
            let re = T::of(rng.gen_range(-1.0..1.0)) * scale;
            let im = if n == 0 { T::zero() } else { T::of(rng.gen_range(-1.0..1.0)) * scale };
            f.coeffs[n] = Complex::new(re, im);
        }
        f
    }

    /// Expands periodic grid samples into a field of the given order.
    pub fn from_samples(values: &[T], order: usize) -> Self {
        let m = values.len();
        let spec = spectral::forward(values);
        let mut f = Self::zeros(order);
        for n in 0..=order.min(m.saturating_sub(1) / 2) {
            f.coeffs[n] = spec[n];
        }
        f.coeffs[0].im = T::zero();
        f
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    /// `ĉ_n` for any signed `n`; zero beyond the order.
    pub fn coeff(&self, n: i64) -> Complex<T> {
        let k = n.unsigned_abs() as usize;
        match self.coeffs.get(k) {
            Some(&c) if n >= 0 => c,
            Some(&c) => c.conj(),
            None => Complex::new(T::zero(), T::zero()),
        }
    }

    /// Sets `ĉ_n` (and implicitly `ĉ_{-n}`); grows the order if needed.
    pub fn set_coeff(&mut self, n: usize, c: Complex<T>) {
        if n > self.order() {
            self.coeffs.resize(n + 1, Complex::new(T::zero(), T::zero()));
        }
        self.coeffs[n] = if n == 0 { Complex::new(c.re, T::zero()) } else { c };
    }

    /// Drops modes above `order` or zero-pads up to it.
    pub fn resized(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, Complex::new(T::zero(), T::zero()));
        Self { coeffs }
    }

    pub fn eval(&self, theta: T) -> T {
        let step = Complex::new(theta.cos(), theta.sin());
        let mut z = step;
        let mut acc = self.coeffs[0].re;
        for c in &self.coeffs[1..] {
            acc = acc + T::of(2.0) * (*c * z).re;
            z = z * step;
        }
        acc
    }

    /// Values on the uniform grid of `m` nodes. Modes above `(m-1)/2` alias.
    pub fn sample(&self, m: usize) -> Vec<T> {
        let mut spec = vec![Complex::new(T::zero(), T::zero()); m];
        for n in -(self.order() as i64)..=(self.order() as i64) {
            let k = n.rem_euclid(m as i64) as usize;
            spec[k] = spec[k] + self.coeff(n);
        }
        spectral::inverse(spec)
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, &c)| c * Complex::new(T::zero(), T::of_int(n as i64)))
            .collect();
        Self { coeffs }
    }

    /// Mode-wise multiplication by a real even symbol `s(n)`.
    pub fn map_modes(&self, symbol: impl Fn(usize) -> T) -> Self {
        let coeffs = self.coeffs.iter().enumerate().map(|(n, &c)| c * symbol(n)).collect();
        Self { coeffs }
    }

    /// Exact pointwise product at order `N₁ + N₂`.
    pub fn product(&self, other: &Self) -> Self {
        let (na, nb) = (self.order() as i64, other.order() as i64);
        let order = (na + nb) as usize;
        let mut coeffs = vec![Complex::new(T::zero(), T::zero()); order + 1];
        for (n, out) in coeffs.iter_mut().enumerate() {
            let n = n as i64;
            let lo = (-na).max(n - nb);
            let hi = na.min(n + nb);
            let mut acc = Complex::new(T::zero(), T::zero());
            for k in lo..=hi {
                acc = acc + self.coeff(k) * other.coeff(n - k);
            }
            *out = acc;
        }
        coeffs[0].im = T::zero();
        Self { coeffs }
    }

    /// Hilbert transform `J`: `e^{inθ} ↦ σ·i·sign(n)·e^{inθ}`, constants ↦ 0.
    pub fn hilbert(&self) -> Self {
        let i_sigma = Complex::new(T::zero(), T::of_int(HILBERT_SIGN as i64));
        let mut coeffs: Vec<_> = self.coeffs.iter().map(|&c| c * i_sigma).collect();
        coeffs[0] = Complex::new(T::zero(), T::zero());
        Self { coeffs }
    }

    /// `(η₀, η₁)`: the mean and the first moment `(1/2π)∫ x e^{-iθ} dθ`.
    pub fn moments(&self) -> (T, Complex<T>) {
        (self.coeffs[0].re, self.coeff(1))
    }

    pub fn mean(&self) -> T {
        self.coeffs[0].re
    }

    pub fn project(&self, subspace: Subspace) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, &c)| if subspace.retains(n) { c } else { Complex::new(T::zero(), T::zero()) })
            .collect();
        Self { coeffs }
    }

    /// `x - project(x, s)`.
    pub fn project_out(&self, subspace: Subspace) -> Self {
        match subspace.complement() {
            Some(c) => self.project(c),
            None => Self::zeros(self.order()),
        }
    }

    /// `L²` pairing `(1/2π)∫ x y dθ = Σ_n ĉ_n(x)·conj(ĉ_n(y))`.
    pub fn l2_inner(&self, other: &Self) -> T {
        let mut acc = self.coeffs[0].re * other.coeffs[0].re;
        for (a, b) in self.coeffs.iter().zip(&other.coeffs).skip(1) {
            acc = acc + T::of(2.0) * (a * b.conj()).re;
        }
        acc
    }

    pub fn l2_norm(&self) -> T {
        self.l2_inner(self).max(T::zero()).sqrt()
    }

    /// Largest coefficient magnitude.
    pub fn max_coeff(&self) -> T {
        self.coeffs.iter().map(|c| c.norm()).fold(T::zero(), T::max)
    }

    pub fn scale(&self, s: T) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|&c| c * s).collect(),
        }
    }

    /// Multiplies `ĉ_n` by `e^{-inθ₀}`, i.e. returns `θ ↦ x(θ - θ₀)`.
    pub fn shifted(&self, theta0: T) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, &c)| {
                let a = -T::of_int(n as i64) * theta0;
                c * Complex::new(a.cos(), a.sin())
            })
            .collect();
        Self { coeffs }
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex<T>, Complex<T>) -> Complex<T>) -> Self {
        let order = self.order().max(other.order());
        let zero = Complex::new(T::zero(), T::zero());
        let coeffs = (0..=order)
            .map(|n| {
                f(
                    self.coeffs.get(n).copied().unwrap_or(zero),
                    other.coeffs.get(n).copied().unwrap_or(zero),
                )
            })
            .collect();
        Self { coeffs }
    }
}

impl<T: Scalar> Add for &FourierField<T> {
    type Output = FourierField<T>;
    fn add(self, rhs: Self) -> FourierField<T> {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl<T: Scalar> Sub for &FourierField<T> {
    type Output = FourierField<T>;
    fn sub(self, rhs: Self) -> FourierField<T> {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl<T: Scalar> Add for FourierField<T> {
    type Output = FourierField<T>;
    fn add(self, rhs: Self) -> FourierField<T> {
        &self + &rhs
    }
}

impl<T: Scalar> Sub for FourierField<T> {
    type Output = FourierField<T>;
    fn sub(self, rhs: Self) -> FourierField<T> {
        &self - &rhs
    }
}

impl<T: Scalar> AddAssign<&FourierField<T>> for FourierField<T> {
    fn add_assign(&mut self, rhs: &FourierField<T>) {
        *self = &*self + rhs;
    }
}

impl<T: Scalar> Mul<T> for &FourierField<T> {
    type Output = FourierField<T>;
    fn mul(self, s: T) -> FourierField<T> {
        self.scale(s)
    }
}

impl<T: Scalar> Mul<T> for FourierField<T> {
    type Output = FourierField<T>;
    fn mul(self, s: T) -> FourierField<T> {
        self.scale(s)
    }
}

impl<T: Scalar> Neg for FourierField<T> {
    type Output = FourierField<T>;
    fn neg(self) -> FourierField<T> {
        self.scale(-T::one())
    }
}

/// Lie bracket `[x, y] = x'y - xy'`, formed exactly and truncated to `order`.
pub fn bracket<T: Scalar>(x: &FourierField<T>, y: &FourierField<T>, order: usize) -> FourierField<T> {
    let full = &x.derivative().product(y) - &x.product(&y.derivative());
    full.resized(order)
}
