//! Experiment configuration.
//!
//! A config is a flat TOML table. Unknown keys are rejected.
//!
//! | key | type | default | meaning |
//! |-----|------|---------|---------|
//! | `problem` | string | required | `riemann-l2`, `sobolev-riemann`, `kaehler-riemann`, `kaehler-normal`, `weil-petersson`, `virasoro-normal` |
//! | `alpha`, `beta` | float | 1, 0 | metric parameters (Sobolev and Kähler problems) |
//! | `lambda` | float | 0 | rotation multiplier (`kaehler-normal`) |
//! | `lambda0`, `w_re`, `w_im` | float | 0 | initial mob multiplier (`weil-petersson`) |
//! | `mu`, `nu` | float | 0, 1 | cocycle parameters (`virasoro-normal`) |
//! | `lambda1`, `lambda2` | float | 0, 1 | multiplier (`virasoro-normal`) |
//! | `order` | int | required | highest retained frequency `N` |
//! | `t_end`, `dt` | float | required | final time and step |
//! | `modes` | array of `[n, re, im]` | `[]` | initial coefficients `ĉ_n` |
//! | `seed` | int | none | adds seeded random data on the problem's subspace |
//! | `random_amplitude`, `random_decay` | float | 0.05, 2 | `|ĉ_n| ≲ amplitude/(1+n)^decay` |
//! | `scheme` | string | `auto` | `auto`, `classical`, `integrating-factor` |
//! | `resolution_tolerance` | float | 1e-6 | tail-energy blow-up threshold, `0` disables |
//! | `output_every` | int | 1 | write every k-th sample |

use std::path::Path;

use circle_geodesics::{
    CentralParams, Field, GeodesicState, IntegratorOptions, MetricParams, Multiplier, Problem, Scheme,
};
use num_complex::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProblemTag {
    RiemannL2,
    SobolevRiemann,
    KaehlerRiemann,
    KaehlerNormal,
    WeilPetersson,
    VirasoroNormal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SchemeTag {
    #[default]
    Auto,
    Classical,
    IntegratingFactor,
}

fn one() -> f64 {
    1.0
}
fn one_usize() -> usize {
    1
}
fn default_amplitude() -> f64 {
    0.05
}
fn default_decay() -> f64 {
    2.0
}
fn default_tolerance() -> f64 {
    1e-6
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub problem: ProblemTag,
    #[serde(default = "one")]
    pub alpha: f64,
    #[serde(default)]
    pub beta: f64,
    #[serde(default)]
    pub lambda: f64,
    #[serde(default)]
    pub lambda0: f64,
    #[serde(default)]
    pub w_re: f64,
    #[serde(default)]
    pub w_im: f64,
    #[serde(default)]
    pub mu: f64,
    #[serde(default = "one")]
    pub nu: f64,
    #[serde(default)]
    pub lambda1: f64,
    #[serde(default = "one")]
    pub lambda2: f64,
    pub order: usize,
    pub t_end: f64,
    pub dt: f64,
    #[serde(default)]
    pub modes: Vec<(usize, f64, f64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default = "default_amplitude")]
    pub random_amplitude: f64,
    #[serde(default = "default_decay")]
    pub random_decay: f64,
    #[serde(default)]
    pub scheme: SchemeTag,
    #[serde(default = "default_tolerance")]
    pub resolution_tolerance: f64,
    #[serde(default = "one_usize")]
    pub output_every: usize,
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        let cfg: Self = toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        cfg.check()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(CliError::io(path))?;
        Self::from_toml(&text).map_err(|e| match e {
            CliError::Config(m) => CliError::Config(format!("{}: {m}", path.display())),
            e => e,
        })
    }

    /// Structural checks that do not need the library.
    pub fn check(&self) -> Result<(), CliError> {
        let bad = |m: String| Err(CliError::Config(m));
        if self.order == 0 {
            return bad("order must be positive".into());
        }
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return bad(format!("dt must be positive, got {}", self.dt));
        }
        if !(self.t_end >= self.dt && self.t_end.is_finite()) {
            return bad(format!("t_end must be at least dt, got {}", self.t_end));
        }
        if self.output_every == 0 {
            return bad("output_every must be positive".into());
        }
        if !(self.resolution_tolerance >= 0.0) {
            return bad("resolution_tolerance must be non-negative".into());
        }
        for &(n, re, im) in &self.modes {
            if n > self.order {
                return bad(format!("mode {n} exceeds order {}", self.order));
            }
            if n == 0 && im != 0.0 {
                return bad("mode 0 must be real".into());
            }
            if !(re.is_finite() && im.is_finite()) {
                return bad(format!("mode {n} is not finite"));
            }
        }
        let params = [
            self.alpha,
            self.beta,
            self.lambda,
            self.lambda0,
            self.w_re,
            self.w_im,
            self.mu,
            self.nu,
            self.lambda1,
            self.lambda2,
            self.random_amplitude,
            self.random_decay,
        ];
        if params.iter().any(|v| !v.is_finite()) {
            return bad("parameters must be finite".into());
        }
        Ok(())
    }

    pub fn problem(&self) -> Problem<f64> {
        let params = MetricParams::new(self.alpha, self.beta);
        match self.problem {
            ProblemTag::RiemannL2 => Problem::RiemannL2,
            ProblemTag::SobolevRiemann => Problem::SobolevRiemann(params),
            ProblemTag::KaehlerRiemann => Problem::KaehlerRiemann(params),
            ProblemTag::KaehlerNormal => Problem::KaehlerNormal {
                params,
                lambda: self.lambda,
            },
            ProblemTag::WeilPetersson => Problem::WeilPetersson,
            ProblemTag::VirasoroNormal => Problem::VirasoroNormal {
                central: CentralParams::new(self.mu, self.nu),
                lambda1: self.lambda1,
                lambda2: self.lambda2,
            },
        }
    }

    pub fn initial_state(&self, problem: &Problem<f64>) -> Result<GeodesicState<f64>, CliError> {
        let mut u = Field::from_modes(self.order, &self.modes)?;
        if let Some(seed) = self.seed {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let r = Field::random(
                self.order,
                problem.subspace(),
                self.random_amplitude,
                self.random_decay,
                &mut rng,
            );
            u = &u + &r;
        }
        let state = GeodesicState::new(problem, u);
        Ok(match problem {
            Problem::WeilPetersson => state.with_multiplier(Multiplier::Mob {
                lambda0: self.lambda0,
                w: Complex::new(self.w_re, self.w_im),
            }),
            _ => state,
        })
    }

    pub fn options(&self) -> IntegratorOptions<f64> {
        IntegratorOptions {
            scheme: match self.scheme {
                SchemeTag::Auto => Scheme::Auto,
                SchemeTag::Classical => Scheme::Classical,
                SchemeTag::IntegratingFactor => Scheme::IntegratingFactor,
            },
            resolution_tolerance: (self.resolution_tolerance > 0.0).then_some(self.resolution_tolerance),
        }
    }
}
