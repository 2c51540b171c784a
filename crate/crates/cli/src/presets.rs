//! Named configurations, one per figure panel.
//!
//! Panels a-d of the spin-coherent figures use `theta = pi/10, 2pi/10,
//! 3pi/10, 5pi/10`; the bare names `fig5` to `fig8` point at the `3pi/10`
//! panel. The intrabath figures default to `g'/g = 1` and have `-g<value>`
//! variants for the other anisotropies. Time spans are chosen to cover the
//! interesting features (two revival periods where there are revivals); they
//! are a calibration choice, not taken from the figures.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use crate::config::{BathSpec, Experiment, ExperimentConfig, InitialSpec, ModelRatios, TimeGrid, DEFAULT_TOL};
use crate::error::CliError;

const N: usize = 60;
const PANELS: [(&str, f64); 4] = [("a", 0.1), ("b", 0.2), ("c", 0.3), ("d", 0.5)];

fn config(
    experiment: Experiment,
    model: ModelRatios,
    bath: BathSpec,
    initial: InitialSpec,
    t_max: f64,
    n_points: usize,
) -> ExperimentConfig {
    ExperimentConfig {
        experiment,
        n_spins: N,
        model,
        bath,
        bath2: None,
        n_spins2: None,
        initial,
        time: TimeGrid { t_max, n_points },
        tol: DEFAULT_TOL,
        output: None,
    }
}

/// Identical qubits: `omega1 = omega2 = omega`, `g2 = 1`, `g1' = g2' = gp`.
fn symmetric(omega: f64, gp: f64) -> ModelRatios {
    ModelRatios { omega1: omega, omega2: omega, g1p: gp, g2: 1.0, g2p: gp, j: 0.0, jp: 0.0 }
}

fn coherent(theta_over_pi: f64) -> BathSpec {
    BathSpec::SpinCoherent { theta: theta_over_pi * PI, phi: 0.0 }
}

fn all() -> Vec<(String, ExperimentConfig)> {
    use Experiment::*;
    let mut out = Vec::new();
    let panel_figs: [(&str, Experiment, f64, InitialSpec, f64, usize); 6] = [
        ("fig2", SingleQubit, 0.0, InitialSpec::Up, 20.0, 2001),
        ("fig4", SingleQubit, 1.0, InitialSpec::Up, 300.0, 6001),
        ("fig5", TwoQubitIndividual, 0.0, InitialSpec::Bell, 60.0, 3001),
        ("fig6", TwoQubitIndividual, 1.0, InitialSpec::Bell, 250.0, 5001),
        ("fig7", TwoQubitCommon, 1.0, InitialSpec::Bell, 200.0, 2001),
        ("fig8", TwoQubitCommon, 1.0, InitialSpec::UpUp, 200.0, 2001),
    ];
    for (fig, exp, gp, init, t_max, n_points) in panel_figs {
        for (panel, theta) in PANELS {
            out.push((
                format!("{fig}{panel}"),
                config(exp, symmetric(1.0, gp), coherent(theta), init, t_max, n_points),
            ));
        }
        if exp != SingleQubit {
            out.push((fig.to_string(), config(exp, symmetric(1.0, gp), coherent(0.3), init, t_max, n_points)));
        }
    }

    let h = [FRAC_1_SQRT_2, 0.0];
    let w_class = BathSpec::WClass { gamma_nm1: h, gamma_n: h };
    let intrabath: [(&str, Experiment, BathSpec, InitialSpec, f64, &[f64]); 4] = [
        ("fig9", IntrabathSingle, BathSpec::EquallyWeighted, InitialSpec::PlusX, 10.0, &[0.0, 0.8, 2.0]),
        ("fig9b", IntrabathTwo, BathSpec::EquallyWeighted, InitialSpec::Bell, 10.0, &[0.0, 0.8, 2.0]),
        ("fig10", IntrabathSingle, w_class, InitialSpec::PlusX, 50.0, &[0.0, 0.8, 2.0, 10.0]),
        ("fig10b", IntrabathTwo, w_class, InitialSpec::Bell, 50.0, &[0.0, 0.8, 2.0, 10.0]),
    ];
    for (fig, exp, bath, init, t_max, variants) in intrabath {
        out.push((fig.to_string(), config(exp, symmetric(0.0, 1.0), bath, init, t_max, 5001)));
        for &gp in variants {
            out.push((format!("{fig}-g{gp}"), config(exp, symmetric(0.0, gp), bath, init, t_max, 5001)));
        }
    }
    out
}

pub fn list_presets() -> Vec<String> {
    all().into_iter().map(|(name, _)| name).collect()
}

pub fn preset(name: &str) -> Result<ExperimentConfig, CliError> {
    let presets = all();
    match presets.iter().find(|(n, _)| n == name) {
        Some((_, cfg)) => Ok(cfg.clone()),
        None => Err(CliError::UnknownPreset {
            name: name.to_string(),
            available: presets.into_iter().map(|(n, _)| n).collect(),
        }),
    }
}
