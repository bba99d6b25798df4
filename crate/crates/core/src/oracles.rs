//! Reference computations that avoid the spectral code paths they are used to check.

use crate::fields::FourierField;
use crate::Scalar;

/// `(1/2π) p.v.∫₀^{2π} f(t) cot((t-θ)/2) dt` by the midpoint rule on `nodes`
/// (even) points placed symmetrically about the singularity, so the odd
/// singular part cancels pairwise.
pub fn hilbert_principal_value<T: Scalar>(f: impl Fn(T) -> T, theta: T, nodes: usize) -> T {
    let nodes = nodes + nodes % 2;
    let h = T::TAU() / T::of_int(nodes as i64);
    let half = T::of(0.5);
    let mut acc = T::zero();
    for j in 0..nodes / 2 {
        let s = h * (T::of_int(j as i64) + half);
        let cot = T::one() / (s / T::of(2.0)).tan();
        acc = acc + (f(theta + s) - f(theta - s)) * cot;
    }
    acc * h / T::TAU()
}

/// Sign σ implied by quadrature of the kernel: `J sin` at `θ = 0` equals σ.
pub fn hilbert_sign_from_kernel() -> i8 {
    let v = hilbert_principal_value(|t: f64| t.sin(), 0.0, 4096);
    if v > 0.0 {
        1
    } else {
        -1
    }
}

/// Solution of `u_t = 3uu_θ` by characteristics: `u(t, θ) = u₀(ξ)` with
/// `θ = ξ - 3t·u₀(ξ)`. Valid before the first crossing.
pub fn burgers_characteristics<T: Scalar>(u0: &FourierField<T>, t: T, theta: T) -> Option<T> {
    let du0 = u0.derivative();
    let three_t = T::of(3.0) * t;
    let g = |xi: T| xi - three_t * u0.eval(xi) - theta;
    let bound = u0.coeffs().iter().fold(u0.mean().abs(), |a, c| a + T::of(2.0) * c.norm());
    let mut lo = theta - three_t * bound - T::of(1e-9);
    let mut hi = theta + three_t * bound + T::of(1e-9);
    let mut xi = theta + three_t * u0.eval(theta);
    for _ in 0..100 {
        let r = g(xi);
        if r.abs() < T::of(1e-15) * (T::one() + theta.abs()) {
            return Some(u0.eval(xi));
        }
        if r > T::zero() {
            hi = xi;
        } else {
            lo = xi;
        }
        let d = T::one() - three_t * du0.eval(xi);
        if !(d > T::zero()) {
            return None;
        }
        let next = xi - r / d;
        xi = if next > lo && next < hi { next } else { (lo + hi) / T::of(2.0) };
    }
    Some(u0.eval(xi))
}

/// Integrates the scalar ODE `φ̇ = v(φ)` from `φ(0) = θ₀` with fine-step RK4.
pub fn node_flow<T: Scalar>(v: impl Fn(T) -> T, theta0: T, t: T, steps: usize) -> T {
    let h = t / T::of_int(steps as i64);
    let two = T::of(2.0);
    let mut x = theta0;
    for _ in 0..steps {
        let k1 = v(x);
        let k2 = v(x + h / two * k1);
        let k3 = v(x + h / two * k2);
        let k4 = v(x + h * k3);
        x = x + h / T::of(6.0) * (k1 + two * (k2 + k3) + k4);
    }
    x
}

/// `(1/2π)∫ f dθ` by the trapezoid rule on `m` nodes.
pub fn circle_mean<T: Scalar>(f: impl Fn(T) -> T, m: usize) -> T {
    let h = T::TAU() / T::of_int(m as i64);
    (0..m).fold(T::zero(), |acc, j| acc + f(h * T::of_int(j as i64))) / T::of_int(m as i64)
}
