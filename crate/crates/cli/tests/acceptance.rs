//! End-to-end acceptance suite. Each criterion prints one PASS/FAIL line; the
//! test fails if any criterion does.

use std::f64::consts::PI;
use std::path::Path;
use std::process::Command;

use circle_geodesics::oracles::{burgers_characteristics, hilbert_principal_value, hilbert_sign_from_kernel};
use circle_geodesics::{
    ad_transpose, bracket, cocycle_a, cocycle_b, default_grid, diagnostics, inner, integrate, integrate_with,
    kirillov_metric, rotate_shift, tau_apply, tau_invert, to_univalent, vir_ad_transpose, vir_bracket, vir_multiply,
    weak_orthogonality_residual, CentralParams, Diffeo, FieldPath, FourierField, GeodesicState, InertiaKind,
    InertiaOp, IntegratorOptions, MetricParams, Multiplier, Problem, Scheme, Subspace, Trajectory, VirVector,
    VirasoroElement, HILBERT_SIGN,
};
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type F = FourierField<f64>;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn random(order: usize, sub: Subspace, amp: f64, decay: f64, rng: &mut ChaCha8Rng) -> F {
    F::random(order, sub, amp, decay, rng)
}

fn sup_on_grid(f: &F, m: usize) -> f64 {
    f.sample(m).iter().fold(0.0f64, |a, v| a.max(v.abs()))
}

fn c1_hilbert_kernel() -> Outcome {
    let sigma = hilbert_sign_from_kernel();
    let thetas = [0.0, 0.37, 1.3, 2.9, 4.4, 5.8];
    let mut err = 0.0f64;
    for n in 1..=8 {
        for f in [F::cos_mode(n, n, 1.0), F::sin_mode(n, n, 1.0)] {
            let jf = f.hilbert();
            for &t in &thetas {
                let pv = hilbert_principal_value(|s| f.eval(s), t, 4096);
                err = err.max((pv - jf.eval(t)).abs());
            }
        }
    }
    outcome(
        err < 1e-6 && sigma == HILBERT_SIGN,
        format!("max |J - p.v.| = {err:.2e} over n = 1..8, kernel sign σ = {sigma:+}"),
    )
}

fn c2_metric_consistency() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let cases = [
        (MetricParams::new(1.0, 0.0), Subspace::Full),
        (MetricParams::new(1.0, 1.0), Subspace::Full),
        (MetricParams::weil_petersson(), Subspace::D),
    ];
    let (mut e_form, mut e_kir) = (0.0f64, 0.0f64);
    for (p, sub) in &cases {
        for _ in 0..100 {
            let x = random(16, *sub, 1.0, 1.0, &mut rng);
            let y = random(16, *sub, 1.0, 1.0, &mut rng);
            let lhs = inner(p, &x, &y);
            let ax = &circle_geodesics::apply_l(p, &x.derivative().hilbert()) + &F::constant(0, x.mean());
            e_form = e_form.max((lhs - ax.l2_inner(&y)).abs());
            let (x0, y0) = (x.project(Subspace::Vect0), y.project(Subspace::Vect0));
            let k = kirillov_metric(p, &to_univalent(&x0).unwrap(), &to_univalent(&y0).unwrap());
            e_kir = e_kir.max((k.re - inner(p, &x0, &y0)).abs());
        }
    }
    outcome(
        e_form < 1e-10 && e_kir < 1e-10,
        format!("inertia-form residual {e_form:.2e}, Kähler-series residual {e_kir:.2e}"),
    )
}

fn c3_adjointness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let cp = CentralParams::new(0.7, 1.3);
    let (mut e, mut ev) = (0.0f64, 0.0f64);
    for _ in 0..100 {
        let x = random(8, Subspace::Full, 1.0, 0.5, &mut rng);
        let y = random(8, Subspace::Full, 1.0, 0.5, &mut rng);
        let z = random(8, Subspace::Full, 1.0, 0.5, &mut rng);
        let lhs = ad_transpose(&x, &y).l2_inner(&z);
        e = e.max((lhs - y.l2_inner(&bracket(&x, &z, 16))).abs());
        let v = VirVector::new(x, rng.gen_range(-1.0..1.0));
        let w = VirVector::new(y, rng.gen_range(-1.0..1.0));
        let zz = VirVector::new(z, rng.gen_range(-1.0..1.0));
        let lhs = vir_ad_transpose(&cp, &v, &w).inner(&zz);
        ev = ev.max((lhs - w.inner(&vir_bracket(&cp, &v, &zz))).abs());
    }
    outcome(
        e < 1e-10 && ev < 1e-10,
        format!("ad^T residual {e:.2e}, extended ad^T residual {ev:.2e}"),
    )
}

fn c4_tau_roundtrip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let order = 8;
    let mut draw = |amp: f64| random(order, Subspace::Full, amp, 1.5, &mut rng);
    let (a, b, p, q) = (draw(0.1), draw(0.1), draw(0.5), draw(0.5));
    let dt = 1e-3;
    let u = FieldPath::from_fn(dt, 1000, |t: f64| &a + &b.scale((2.0 * t).sin()));
    let y = FieldPath::from_fn(dt, 1000, |t: f64| &p.scale(t.cos()) + &q.scale(t.sin()));
    // x = τ_u⁻¹ y is not band-limited; resolve it well beyond the data's order.
    let work = 4 * order;
    let x = tau_invert(&u, &y, work, default_grid(work)).unwrap();
    let back = tau_apply(&u, &x).unwrap();
    let err = back
        .fields
        .iter()
        .zip(&y.fields)
        .map(|(l, r)| sup_on_grid(&(&l.resized(order) - r), 256))
        .fold(0.0f64, f64::max);
    outcome(err < 1e-6, format!("sup |τ_u τ_u⁻¹ y - y| = {err:.2e} at dt = 1e-3"))
}

fn c5_burgers() -> Outcome {
    let p = Problem::RiemannL2;
    let u0 = F::sin_mode(32, 1, 0.1);
    let traj = integrate(&p, &GeodesicState::new(&p, u0.clone()), 0.05, 1e-4).unwrap();
    let uf = &traj.states.last().unwrap().u;
    let t = traj.final_time();
    let err = (0..256)
        .map(|j| {
            let th = 2.0 * PI * j as f64 / 256.0;
            (uf.eval(th) - burgers_characteristics(&u0, t, th).unwrap()).abs()
        })
        .fold(0.0f64, f64::max);

    // Step halving on a harder problem so the time error dominates round-off.
    let u1 = &F::sin_mode(32, 1, 0.5) + &F::cos_mode(32, 2, 0.2);
    let run = |dt: f64| {
        integrate(&p, &GeodesicState::new(&p, u1.clone()), 0.2, dt)
            .unwrap()
            .states
            .last()
            .unwrap()
            .u
            .clone()
    };
    let (a, b, c) = (run(0.02), run(0.01), run(0.005));
    let order = ((&a - &b).l2_norm() / (&b - &c).l2_norm()).log2();
    outcome(
        err < 1e-6 && order >= 3.8,
        format!("characteristics error {err:.2e}; observed order {order:.2}"),
    )
}

fn c6_problems() -> Vec<(Problem<f64>, GeodesicState<f64>)> {
    let n = 32;
    let base = &(&F::cos_mode(n, 2, 0.025) + &F::sin_mode(n, 3, 0.015)) + &F::cos_mode(n, 4, 0.005);
    let with_one = &base + &F::sin_mode(n, 1, 0.02);
    let problems = vec![
        (Problem::RiemannL2, &with_one + &F::constant(n, 0.1)),
        (Problem::SobolevRiemann(MetricParams::new(1.0, 1.0)), &with_one + &F::constant(n, 0.1)),
        (Problem::KaehlerRiemann(MetricParams::velling_kirillov()), &with_one + &F::constant(n, 0.1)),
        (
            Problem::KaehlerNormal {
                params: MetricParams::velling_kirillov(),
                lambda: 0.5,
            },
            with_one.clone(),
        ),
        (Problem::WeilPetersson, base.clone()),
        (
            Problem::VirasoroNormal {
                central: CentralParams::new(0.0, 1.0),
                lambda1: 0.3,
                lambda2: 1.0,
            },
            with_one.clone(),
        ),
    ];
    problems
        .into_iter()
        .map(|(p, u)| {
            let s = GeodesicState::new(&p, u);
            let s = match p {
                Problem::WeilPetersson => s.with_multiplier(Multiplier::Mob {
                    lambda0: 0.2,
                    w: Complex::new(0.05, -0.03),
                }),
                _ => s,
            };
            (p, s)
        })
        .collect()
}

fn c6_trajectories() -> Vec<Trajectory<f64>> {
    c6_problems()
        .iter()
        .map(|(p, s)| integrate(p, s, 1.0, 1e-3).unwrap())
        .collect()
}

fn c6_energy(trajs: &[Trajectory<f64>]) -> Outcome {
    let mut worst = 0.0f64;
    let mut parts = Vec::new();
    for t in trajs {
        let d = diagnostics(t).unwrap().max_relative_energy_drift;
        worst = worst.max(d);
        parts.push(format!("{} {d:.1e}", t.problem.name()));
    }
    outcome(worst < 1e-8, format!("relative energy drift: {}", parts.join(", ")))
}

fn c7_rotate_shift() -> Outcome {
    let n = 32;
    let p = Problem::KaehlerRiemann(MetricParams::velling_kirillov());
    let u0 = &(&F::constant(n, 0.4) + &F::cos_mode(n, 1, 0.05)) + &F::sin_mode(n, 2, 0.03);
    let dt = 1e-3;
    let traj = integrate(&p, &GeodesicState::new(&p, u0), 1.0, dt).unwrap();
    let eta_drift = diagnostics(&traj).unwrap().max_eta0_drift;
    let shifted = rotate_shift(&traj).unwrap();
    let udot = shifted.velocity_path().time_derivative().unwrap();
    let mut res = 0.0f64;
    let mut mean = 0.0f64;
    for (s, d) in shifted.states.iter().zip(&udot.fields) {
        let r = shifted.problem.rhs(s).unwrap();
        res = res.max((d - &r.u).max_coeff());
        mean = mean.max(s.u.mean().abs());
    }
    outcome(
        eta_drift < 1e-10 && res < 1e-6 && mean < 1e-14,
        format!("η₀ drift {eta_drift:.2e}; shifted-flow residual {res:.2e}; shifted mean {mean:.1e}"),
    )
}

fn c8_weil_petersson() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let p = Problem::WeilPetersson;
    let u0 = random(8, Subspace::D, 0.05, 1.0, &mut rng);
    let s = GeodesicState::new(&p, u0).with_multiplier(Multiplier::Mob {
        lambda0: 0.3,
        w: Complex::new(0.1, 0.2),
    });
    let traj = integrate(&p, &s, 1.0, 1e-3).unwrap();
    let rep = diagnostics(&traj).unwrap();
    let l0 = rep.lambda0_drift.unwrap();
    let wres = rep.max_mob_residual.unwrap();
    let inertia = InertiaKind::new(InertiaOp::Kaehler(MetricParams::weil_petersson()), Subspace::D);
    let mut cancel = 0.0f64;
    for st in traj.states.iter().step_by(50) {
        let m = inertia.table(8).apply(&st.u).unwrap();
        cancel = cancel.max(ad_transpose(&st.u, &m).project(Subspace::Mob).max_coeff());
    }
    outcome(
        l0 < 1e-12 && wres < 1e-10 && cancel < 1e-12,
        format!("λ₀ drift {l0:.1e}; ẇ residual {wres:.1e}; mob cancellation {cancel:.1e}"),
    )
}

fn c9_kdv() -> Outcome {
    let eps = 1e-4;
    let dt = 1e-3;
    let steps = 1000;
    let mut worst = 0.0f64;
    let mut parts = Vec::new();
    for lambda1 in [0.0, 0.25] {
        for n in [2usize, 3] {
            let p = Problem::VirasoroNormal {
                central: CentralParams::new(0.0, 1.0),
                lambda1,
                lambda2: 1.0,
            };
            let opts = IntegratorOptions {
                scheme: Scheme::Classical,
                ..IntegratorOptions::default()
            };
            let s = GeodesicState::new(&p, F::cos_mode(8, n, eps));
            let traj = integrate_with(&p, &s, dt * steps as f64, dt, &opts).unwrap();
            // Unwrapped phase of mode n; û_n ∝ e^{-iωt}.
            let mut phase = 0.0;
            for w in traj.states.windows(2) {
                let ratio = w[1].u.coeff(n as i64) / w[0].u.coeff(n as i64);
                phase += ratio.arg();
            }
            let omega = -phase / traj.final_time();
            let nf = n as f64;
            let expect = nf.powi(3) - 2.0 * lambda1 * nf;
            let rel = (omega - expect).abs() / expect;
            worst = worst.max(rel);
            parts.push(format!("n={n} λ₁={lambda1}: {omega:.6}"));
        }
    }
    outcome(worst < 1e-3, format!("max relative error {worst:.1e} ({})", parts.join(", ")))
}

fn random_diffeo(m: usize, sup: f64, rng: &mut ChaCha8Rng) -> Diffeo<f64> {
    let f = random(6, Subspace::Full, 1.0, 1.5, rng);
    let s = sup_on_grid(&f, 1024);
    Diffeo::from_field(m, &f.scale(sup / s)).unwrap()
}

fn c10_group_law() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let cp = CentralParams::new(0.8, 1.1);
    let m = 512;
    let mut defect = 0.0f64;
    for _ in 0..5 {
        let g: Vec<VirasoroElement<f64>> = (0..3)
            .map(|_| VirasoroElement {
                phi: random_diffeo(m, 0.2, &mut rng),
                b: rng.gen_range(-1.0..1.0),
            })
            .collect();
        let left = vir_multiply(&cp, &vir_multiply(&cp, &g[0], &g[1]).unwrap(), &g[2]).unwrap();
        let right = vir_multiply(&cp, &g[0], &vir_multiply(&cp, &g[1], &g[2]).unwrap()).unwrap();
        defect = defect.max((left.b - right.b).abs());
    }
    let mut rot = 0.0f64;
    for _ in 0..20 {
        let (a, c) = (rng.gen_range(-4.0..4.0), rng.gen_range(-4.0..4.0));
        let (ra, rc) = (Diffeo::<f64>::rotation(m, a), Diffeo::rotation(m, c));
        rot = rot
            .max(cocycle_a(&ra, &rc).unwrap().abs())
            .max(cocycle_b(&ra, &rc).unwrap().abs());
    }
    outcome(
        defect < 1e-8 && rot < 1e-12,
        format!("associativity defect {defect:.1e}; rotation cocycles {rot:.1e}"),
    )
}

fn c11_weak_orthogonality(trajs: &[Trajectory<f64>]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst = 0.0f64;
    let mut parts = Vec::new();
    for traj in trajs {
        let mut w = 0.0f64;
        let sub = traj.problem.subspace();
        for _ in 0..20 {
            let f1 = random(8, sub, 1.0, 1.0, &mut rng);
            let f2 = random(8, sub, 1.0, 1.0, &mut rng);
            let steps = traj.states.len() - 1;
            let x = FieldPath::from_fn(traj.dt, steps, |t| {
                let s = t / traj.final_time();
                &f1.scale((PI * s).sin()) + &f2.scale((2.0 * PI * s).sin() * s)
            });
            w = w.max(weak_orthogonality_residual(traj, &x).unwrap().abs());
        }
        worst = worst.max(w);
        parts.push(format!("{} {w:.1e}", traj.problem.name()));
    }
    outcome(worst < 1e-5, format!("max |⟪m, τ_u x⟫|: {}", parts.join(", ")))
}

fn c12_cli() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_circgeo");
    let list = Command::new(bin).arg("presets").output().unwrap();
    let presets: Vec<String> = String::from_utf8_lossy(&list.stdout)
        .lines()
        .filter_map(|l| l.split_whitespace().next().map(str::to_owned))
        .collect();
    let dir = tempfile::tempdir().unwrap();
    let mut mismatched = Vec::new();
    for name in &presets {
        let csvs: Vec<Vec<u8>> = (0..2)
            .map(|k| {
                let out = dir.path().join(format!("{name}-{k}"));
                Command::new(bin)
                    .args(["run", "--preset", name, "--out"])
                    .arg(&out)
                    .output()
                    .unwrap();
                std::fs::read(Path::new(&out).join("trajectory.csv")).unwrap_or_default()
            })
            .collect();
        if csvs[0].is_empty() || csvs[0] != csvs[1] {
            mismatched.push(name.clone());
        }
    }
    let check = Command::new(bin).arg("check").output().unwrap().status;
    outcome(
        !presets.is_empty() && mismatched.is_empty() && check.success(),
        format!(
            "{} presets byte-identical{}; check exit {}",
            presets.len() - mismatched.len(),
            if mismatched.is_empty() {
                String::new()
            } else {
                format!(", mismatched: {}", mismatched.join(" "))
            },
            check.code().unwrap_or(-1)
        ),
    )
}

fn main() {
    let trajs = c6_trajectories();
    let results: Vec<(&str, Outcome)> = vec![
        ("Hilbert kernel oracle", c1_hilbert_kernel()),
        ("metric consistency", c2_metric_consistency()),
        ("adjointness", c3_adjointness()),
        ("τ-calculus roundtrip", c4_tau_roundtrip()),
        ("Burgers oracle and RK4 order", c5_burgers()),
        ("energy conservation", c6_energy(&trajs)),
        ("rotation-shift factorization", c7_rotate_shift()),
        ("Weil-Petersson closure", c8_weil_petersson()),
        ("KdV dispersion", c9_kdv()),
        ("Virasoro group law", c10_group_law()),
        ("weak Euler-Arnold orthogonality", c11_weak_orthogonality(&trajs)),
        ("CLI determinism", c12_cli()),
    ];
    let mut failed = Vec::new();
    for (i, (name, o)) in results.iter().enumerate() {
        println!("[{}] {:>2} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, i + 1, o.detail);
        if !o.pass {
            failed.push(i + 1);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
    println!("all {} criteria passed", results.len());
}
