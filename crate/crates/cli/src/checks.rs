//! The `check` oracle suite. Every check is cheap enough for a debug build.

use circle_geodesics::oracles::{hilbert_principal_value, hilbert_sign_from_kernel, node_flow};
use circle_geodesics::{
    ad_transpose, bracket, default_grid, diagnostics, integrate, kirillov_metric, inner, reconstruct_flow,
    rotate_shift, tau_apply, tau_invert, to_univalent, vir_ad_transpose, vir_bracket, vir_multiply, CentralParams,
    Diffeo, Field, FieldPath, GeodesicState, MetricParams, Problem, Subspace, VirVector, VirasoroElement,
    HILBERT_SIGN,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::presets;
use crate::run::execute;

pub struct CheckResult {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

type CheckFn = fn() -> Result<(bool, String), String>;

pub const CHECKS: &[(&str, CheckFn)] = &[
    ("hilbert-kernel", hilbert_kernel),
    ("bracket-jacobi", bracket_jacobi),
    ("ad-transpose-adjoint", ad_transpose_adjoint),
    ("vir-ad-transpose-adjoint", vir_ad_transpose_adjoint),
    ("metric-kaehler-series", metric_kaehler_series),
    ("flow-node-oracle", flow_node_oracle),
    ("tau-roundtrip", tau_roundtrip),
    ("cocycle-associativity", cocycle_associativity),
    ("rotate-shift-residual", rotate_shift_residual),
    ("preset-burgers-smoke", || preset_oracles("burgers-smoke")),
    ("preset-wp-check", || preset_oracles("wp-check")),
];

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn hilbert_kernel() -> Result<(bool, String), String> {
    let sigma = hilbert_sign_from_kernel();
    let mut worst = 0.0f64;
    for n in 1..=8 {
        for f in [Field::cos_mode(n, n, 1.0), Field::sin_mode(n, n, 1.0)] {
            let jf = f.hilbert();
            for t in [0.0, 1.1, 2.5, 4.0] {
                worst = worst.max((hilbert_principal_value(|s| f.eval(s), t, 4096) - jf.eval(t)).abs());
            }
        }
    }
    Ok((
        worst < 1e-6 && sigma == HILBERT_SIGN,
        format!("sigma {sigma:+}, max error {worst:.2e}"),
    ))
}

fn bracket_jacobi() -> Result<(bool, String), String> {
    let mut r = rng(1);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let [x, y, z] = [0; 3].map(|_| Field::random(8, Subspace::Full, 1.0, 0.5, &mut r));
        let j = &(&bracket(&x, &bracket(&y, &z, 16), 24) + &bracket(&y, &bracket(&z, &x, 16), 24))
            + &bracket(&z, &bracket(&x, &y, 16), 24);
        worst = worst.max(j.max_coeff());
    }
    Ok((worst < 1e-12, format!("max residual {worst:.2e}")))
}

fn ad_transpose_adjoint() -> Result<(bool, String), String> {
    let mut r = rng(2);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let [x, y, z] = [0; 3].map(|_| Field::random(16, Subspace::Full, 1.0, 0.5, &mut r));
        let lhs = ad_transpose(&x, &y).l2_inner(&z);
        worst = worst.max((lhs - y.l2_inner(&bracket(&x, &z, 32))).abs());
    }
    Ok((worst < 1e-10, format!("max residual {worst:.2e}")))
}

fn vir_ad_transpose_adjoint() -> Result<(bool, String), String> {
    let mut r = rng(3);
    let p = CentralParams::new(0.4, 1.2);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let [v, w, z] = [0; 3].map(|_| {
            let a = r.gen_range(-1.0..1.0);
            VirVector::new(Field::random(8, Subspace::Full, 1.0, 0.5, &mut r), a)
        });
        let lhs = vir_ad_transpose(&p, &v, &w).inner(&z);
        worst = worst.max((lhs - w.inner(&vir_bracket(&p, &v, &z))).abs());
    }
    Ok((worst < 1e-10, format!("max residual {worst:.2e}")))
}

fn metric_kaehler_series() -> Result<(bool, String), String> {
    let mut r = rng(4);
    let mut worst = 0.0f64;
    for p in [MetricParams::new(1.0, 0.0), MetricParams::new(1.0, 1.0), MetricParams::weil_petersson()] {
        for _ in 0..20 {
            let x = Field::random(16, Subspace::Vect0, 1.0, 1.0, &mut r);
            let y = Field::random(16, Subspace::Vect0, 1.0, 1.0, &mut r);
            let k = kirillov_metric(&p, &to_univalent(&x).map_err(err)?, &to_univalent(&y).map_err(err)?);
            worst = worst.max((k.re - inner(&p, &x, &y)).abs());
        }
    }
    Ok((worst < 1e-10, format!("max |Re b - (x, y)| {worst:.2e}")))
}

fn flow_node_oracle() -> Result<(bool, String), String> {
    let u = Field::cos_mode(4, 1, 1.0);
    let (dt, steps) = (1e-3, 200);
    let path = FieldPath::from_fn(dt, steps, |_| u.clone());
    let flow = reconstruct_flow(&path, &Diffeo::identity(33), dt, steps).map_err(err)?;
    // γ is constant along θ̇ = -u(θ), so γ(t)⁻¹ is the time-t flow of -u.
    let last = flow.samples.last().ok_or("empty flow")?;
    let inv = last.inverse_values().map_err(err)?;
    let t = dt * steps as f64;
    let worst = last
        .nodes()
        .iter()
        .zip(&inv)
        .map(|(&th, &g)| (g - node_flow(|s: f64| -s.cos(), th, t, 2000)).abs())
        .fold(0.0f64, f64::max);
    Ok((worst < 1e-8, format!("max node error {worst:.2e}")))
}

fn tau_roundtrip() -> Result<(bool, String), String> {
    let mut r = rng(5);
    let order = 8;
    let mut draw = |amp: f64| Field::random(order, Subspace::Full, amp, 1.5, &mut r);
    let (a, p, q) = (draw(0.1), draw(0.5), draw(0.5));
    let dt = 1e-3;
    let steps = 250;
    let u = FieldPath::from_fn(dt, steps, |t: f64| a.scale(1.0 + t));
    let y = FieldPath::from_fn(dt, steps, |t: f64| &p.scale(t.cos()) + &q.scale(t.sin()));
    let work = 4 * order;
    let x = tau_invert(&u, &y, work, default_grid(work)).map_err(err)?;
    let back = tau_apply(&u, &x).map_err(err)?;
    let worst = back
        .fields
        .iter()
        .zip(&y.fields)
        .map(|(l, r)| (&l.resized(order) - r).sample(64).iter().fold(0.0f64, |m, v| m.max(v.abs())))
        .fold(0.0f64, f64::max);
    Ok((worst < 1e-6, format!("sup error {worst:.2e}")))
}

fn cocycle_associativity() -> Result<(bool, String), String> {
    let mut r = rng(6);
    let p = CentralParams::new(0.8, 1.1);
    let m = 256;
    let element = |r: &mut ChaCha8Rng| -> Result<VirasoroElement<f64>, String> {
        let f = Field::random(5, Subspace::Full, 1.0, 1.5, r);
        let s = f.sample(1024).iter().fold(0.0f64, |a, v| a.max(v.abs()));
        Ok(VirasoroElement {
            phi: Diffeo::from_field(m, &f.scale(0.2 / s)).map_err(err)?,
            b: r.gen_range(-1.0..1.0),
        })
    };
    let g = [element(&mut r)?, element(&mut r)?, element(&mut r)?];
    let left = vir_multiply(&p, &vir_multiply(&p, &g[0], &g[1]).map_err(err)?, &g[2]).map_err(err)?;
    let right = vir_multiply(&p, &g[0], &vir_multiply(&p, &g[1], &g[2]).map_err(err)?).map_err(err)?;
    let defect = (left.b - right.b).abs();
    let rot = vir_multiply(
        &p,
        &VirasoroElement { phi: Diffeo::rotation(m, 1.3), b: 0.5 },
        &VirasoroElement { phi: Diffeo::rotation(m, -2.9), b: 0.25 },
    )
    .map_err(err)?;
    let rot_defect = (rot.b - 0.75).abs();
    Ok((
        defect < 1e-8 && rot_defect < 1e-12,
        format!("associativity defect {defect:.2e}, rotation cocycle {rot_defect:.2e}"),
    ))
}

fn rotate_shift_residual() -> Result<(bool, String), String> {
    let n = 16;
    let p = Problem::KaehlerRiemann(MetricParams::velling_kirillov());
    let u0 = &(&Field::constant(n, 0.4) + &Field::cos_mode(n, 1, 0.05)) + &Field::sin_mode(n, 2, 0.03);
    let traj = integrate(&p, &GeodesicState::new(&p, u0), 0.25, 1e-3).map_err(err)?;
    let eta = diagnostics(&traj).map_err(err)?.max_eta0_drift;
    let shifted = rotate_shift(&traj).map_err(err)?;
    let udot = shifted.velocity_path().time_derivative().map_err(err)?;
    let mut worst = 0.0f64;
    for (s, d) in shifted.states.iter().zip(&udot.fields) {
        let r = shifted.problem.rhs(s).map_err(err)?;
        worst = worst.max((d - &r.u).max_coeff());
    }
    Ok((
        worst < 1e-6 && eta < 1e-10,
        format!("residual {worst:.2e}, eta0 drift {eta:.2e}"),
    ))
}

fn preset_oracles(name: &str) -> Result<(bool, String), String> {
    let cfg = presets::config(name).map_err(err)?;
    let out = execute(&cfg);
    if let Some(e) = out.error {
        return Ok((false, e.to_string()));
    }
    let pass = !out.oracles.is_empty() && out.oracles.iter().all(|o| o.pass);
    let detail = out
        .oracles
        .iter()
        .map(|o| format!("{} {:.2e}", o.name, o.value))
        .collect::<Vec<_>>()
        .join(", ");
    Ok((pass, detail))
}

/// Runs every check whose name contains `filter`.
pub fn run_checks(filter: Option<&str>) -> Vec<CheckResult> {
    CHECKS
        .iter()
        .filter(|(name, _)| filter.is_none_or(|f| name.contains(f)))
        .map(|(name, f)| {
            let (pass, detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
            CheckResult { name, pass, detail }
        })
        .collect()
}
