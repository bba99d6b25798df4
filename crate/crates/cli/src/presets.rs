//! Built-in experiment configs.

use crate::config::ExperimentConfig;
use crate::error::CliError;

pub struct Preset {
    pub name: &'static str,
    pub summary: &'static str,
    pub toml: &'static str,
}

pub const PRESETS: &[Preset] = &[
    Preset {
        name: "zero",
        summary: "zero initial data; the trajectory must stay at rest",
        toml: r#"
problem = "riemann-l2"
order = 16
t_end = 0.1
dt = 1e-3
"#,
    },
    Preset {
        name: "burgers-smoke",
        summary: "Burgers u0 = 0.1 sin θ against the characteristics solution",
        toml: r#"
problem = "riemann-l2"
order = 32
t_end = 0.05
dt = 1e-4
modes = [[1, 0.0, -0.05]]
"#,
    },
    Preset {
        name: "camassa-holm",
        summary: "non-extended Camassa-Holm, Sobolev metric (1, 1)",
        toml: r#"
problem = "sobolev-riemann"
alpha = 1.0
beta = 1.0
order = 32
t_end = 1.0
dt = 1e-3
modes = [[0, 0.05, 0.0], [1, 0.02, 0.0], [2, 0.0, -0.015]]
"#,
    },
    Preset {
        name: "kaehler-riemann",
        summary: "Velling-Kirillov Riemannian flow with mean 0.4",
        toml: r#"
problem = "kaehler-riemann"
alpha = 1.0
beta = 0.0
order = 32
t_end = 1.0
dt = 1e-3
modes = [[0, 0.4, 0.0], [1, 0.025, 0.0], [2, 0.0, -0.015]]
"#,
    },
    Preset {
        name: "kaehler-normal",
        summary: "normal Velling-Kirillov geodesic on Vect0 with λ = 0.5",
        toml: r#"
problem = "kaehler-normal"
alpha = 1.0
beta = 0.0
lambda = 0.5
order = 32
t_end = 1.0
dt = 1e-3
modes = [[1, 0.0, -0.01], [2, 0.0125, 0.0], [3, 0.0, -0.0075]]
"#,
    },
    Preset {
        name: "wp-check",
        summary: "Weil-Petersson normal geodesic; checks λ0 conservation and the closed-form ẇ",
        toml: r#"
problem = "weil-petersson"
lambda0 = 0.3
w_re = 0.1
w_im = 0.2
order = 16
t_end = 1.0
dt = 1e-3
seed = 8
random_amplitude = 0.05
random_decay = 1.0
"#,
    },
    Preset {
        name: "kdv",
        summary: "KdV-type Virasoro geodesic, (μ, ν) = (0, 1), λ1 = 0.25, λ2 = 1",
        toml: r#"
problem = "virasoro-normal"
mu = 0.0
nu = 1.0
lambda1 = 0.25
lambda2 = 1.0
order = 32
t_end = 1.0
dt = 1e-3
modes = [[1, 0.0, -0.01], [2, 0.025, 0.0]]
"#,
    },
];

pub fn find(name: &str) -> Result<&'static Preset, CliError> {
    PRESETS.iter().find(|p| p.name == name).ok_or_else(|| {
        let names: Vec<_> = PRESETS.iter().map(|p| p.name).collect();
        CliError::Config(format!("unknown preset {name:?}; available: {}", names.join(", ")))
    })
}

pub fn config(name: &str) -> Result<ExperimentConfig, CliError> {
    ExperimentConfig::from_toml(find(name)?.toml)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_presets_parse() {
        for p in PRESETS {
            config(p.name).unwrap_or_else(|e| panic!("{}: {e}", p.name));
        }
        assert!(find("nope").is_err());
    }
}
