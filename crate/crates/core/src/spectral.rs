//! Uniform-grid spectral utilities: normalized DFTs, spectral differentiation
//! and trigonometric interpolation of periodic samples.

use num_complex::Complex;
use rustfft::FftPlanner;

use crate::Scalar;

/// Nodes `θ_j = 2πj/M`.
pub fn grid_nodes<T: Scalar>(m: usize) -> Vec<T> {
    let h = T::TAU() / T::of_int(m as i64);
    (0..m).map(|j| h * T::of_int(j as i64)).collect()
}

/// Forward DFT normalized by `1/M`, so entry `k` is the Fourier coefficient
/// of `e^{ikθ}` (aliased modulo `M`).
pub fn forward<T: Scalar>(values: &[T]) -> Vec<Complex<T>> {
    let m = values.len();
    let mut buf: Vec<Complex<T>> = values.iter().map(|&v| Complex::new(v, T::zero())).collect();
    if m == 0 {
        return buf;
    }
    FftPlanner::new().plan_fft_forward(m).process(&mut buf);
    let scale = T::one() / T::of_int(m as i64);
    for c in &mut buf {
        *c = *c * scale;
    }
    buf
}

/// Inverse of [`forward`]: synthesizes `Σ_k c_k e^{ikθ_j}` and keeps the real part.
pub fn inverse<T: Scalar>(mut spectrum: Vec<Complex<T>>) -> Vec<T> {
    let m = spectrum.len();
    if m == 0 {
        return Vec::new();
    }
    FftPlanner::new().plan_fft_inverse(m).process(&mut spectrum);
    spectrum.into_iter().map(|c| c.re).collect()
}

/// Signed wavenumber of DFT bin `k`; `None` for the Nyquist bin of an even grid.
pub fn wavenumber(k: usize, m: usize) -> Option<i64> {
    if m % 2 == 0 && k == m / 2 {
        None
    } else if k <= m / 2 {
        Some(k as i64)
    } else {
        Some(k as i64 - m as i64)
    }
}

/// Spectral derivative of periodic samples. The Nyquist mode of an even grid is dropped.
pub fn derivative<T: Scalar>(values: &[T]) -> Vec<T> {
    let m = values.len();
    let mut spec = forward(values);
    for (k, c) in spec.iter_mut().enumerate() {
        *c = match wavenumber(k, m) {
            Some(n) => *c * Complex::new(T::zero(), T::of_int(n)),
            None => Complex::new(T::zero(), T::zero()),
        };
    }
    inverse(spec)
}

/// Trigonometric interpolant of periodic samples, evaluable anywhere on ℝ.
#[derive(Debug, Clone)]
pub struct Interpolant<T> {
    mean: T,
    // c_k for k = 1..=K, K = (M-1)/2
    coeffs: Vec<Complex<T>>,
    // real cosine amplitude at k = M/2 for even M
    nyquist: Option<(usize, T)>,
}

impl<T: Scalar> Interpolant<T> {
    pub fn new(values: &[T]) -> Self {
        let m = values.len();
        let spec = forward(values);
        let half = (m.max(1) - 1) / 2;
        let mean = spec.first().map_or(T::zero(), |c| c.re);
        let coeffs = spec.iter().skip(1).take(half).copied().collect();
        let nyquist = (m >= 2 && m % 2 == 0).then(|| (m / 2, spec[m / 2].re));
        Self { mean, coeffs, nyquist }
    }

    pub fn eval(&self, theta: T) -> T {
        let two = T::of(2.0);
        let step = Complex::new(theta.cos(), theta.sin());
        let mut z = step;
        let mut acc = self.mean;
        for c in &self.coeffs {
            acc = acc + two * (*c * z).re;
            z = z * step;
        }
        if let Some((k, a)) = self.nyquist {
            acc = acc + a * (T::of_int(k as i64) * theta).cos();
        }
        acc
    }

    /// Derivative of the interpolant (the Nyquist cosine contributes its exact derivative).
    pub fn eval_derivative(&self, theta: T) -> T {
        let two = T::of(2.0);
        let step = Complex::new(theta.cos(), theta.sin());
        let mut z = step;
        let mut acc = T::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            let k = T::of_int(i as i64 + 1);
            acc = acc + two * k * (*c * z * Complex::new(T::zero(), T::one())).re;
            z = z * step;
        }
        if let Some((k, a)) = self.nyquist {
            let k = T::of_int(k as i64);
            acc = acc - a * k * (k * theta).sin();
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivative_of_sine_on_even_and_odd_grids() {
        for m in [16usize, 17, 64] {
            let nodes = grid_nodes::<f64>(m);
            let v: Vec<f64> = nodes.iter().map(|t| (3.0 * t).sin()).collect();
            let d = derivative(&v);
            for (t, dv) in nodes.iter().zip(&d) {
                assert!((dv - 3.0 * (3.0 * t).cos()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn interpolant_reproduces_band_limited_function_off_grid() {
        let f = |t: f64| 0.3 + (2.0 * t).cos() - 0.5 * (5.0 * t).sin();
        let df = |t: f64| -2.0 * (2.0 * t).sin() - 2.5 * (5.0 * t).cos();
        for m in [12usize, 13, 32] {
            let v: Vec<f64> = grid_nodes::<f64>(m).iter().map(|&t| f(t)).collect();
            let p = Interpolant::new(&v);
            for t in [0.1, 1.7, -2.3, 7.9] {
                assert!((p.eval(t) - f(t)).abs() < 1e-12, "m={m} t={t}");
                assert!((p.eval_derivative(t) - df(t)).abs() < 1e-11);
            }
        }
    }

    #[test]
    fn forward_inverse_roundtrip() {
        let v: Vec<f64> = (0..10).map(|j| (j as f64).sqrt()).collect();
        let back = inverse(forward(&v));
        for (a, b) in v.iter().zip(&back) {
            assert!((a - b).abs() < 1e-13);
        }
    }
}
