//! JSON experiment description.
//!
//! Every energy is a ratio to `g1`, which is fixed to 1, so times are in units
//! of `1/g1`. A minimal file:
//!
//! ```json
//! {
//!   "experiment": "single_qubit",
//!   "n_spins": 60,
//!   "model": { "omega1": 1.0 },
//!   "bath": { "kind": "spin_coherent", "theta": 0.9424777960769379 },
//!   "initial": { "kind": "up" },
//!   "time": { "t_max": 10.0, "n_points": 1001 }
//! }
//! ```

use std::path::PathBuf;

use central_spin::{BathState, DensityMatrix, QubitState, SingleQubitParams, TwoQubitParams, TwoQubitState, C64};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Experiment {
    /// One qubit, closed-form dynamics.
    SingleQubit,
    /// Two qubits sharing one bath, integrated numerically.
    TwoQubitCommon,
    /// Two qubits with one bath each, composed from single-qubit channels.
    TwoQubitIndividual,
    /// Bath pair entanglement while a single qubit evolves.
    IntrabathSingle,
    /// Bath pair entanglement while two qubits evolve in a common bath.
    IntrabathTwo,
}

impl Experiment {
    pub fn n_qubits(self) -> usize {
        match self {
            Experiment::SingleQubit | Experiment::IntrabathSingle => 1,
            _ => 2,
        }
    }
}

/// Couplings relative to `g1`. Qubit 2 entries are ignored by single-qubit
/// experiments.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ModelRatios {
    pub omega1: f64,
    pub omega2: f64,
    pub g1p: f64,
    pub g2: f64,
    pub g2p: f64,
    pub j: f64,
    pub jp: f64,
}

impl Default for ModelRatios {
    fn default() -> Self {
        ModelRatios { omega1: 0.0, omega2: 0.0, g1p: 0.0, g2: 1.0, g2p: 0.0, j: 0.0, jp: 0.0 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum BathSpec {
    SpinCoherent {
        theta: f64,
        #[serde(default)]
        phi: f64,
    },
    EquallyWeighted,
    /// Amplitudes of `|N-1>_D` and `|N>_D` as `[re, im]` pairs.
    WClass {
        gamma_nm1: [f64; 2],
        gamma_n: [f64; 2],
    },
    FullyPolarized {
        m: usize,
    },
}

impl BathSpec {
    pub fn build(&self, n_spins: usize) -> Result<BathState, CliError> {
        let c = |z: [f64; 2]| C64::new(z[0], z[1]);
        Ok(match *self {
            BathSpec::SpinCoherent { theta, phi } => BathState::spin_coherent(n_spins, theta, phi)?,
            BathSpec::EquallyWeighted => BathState::equally_weighted(n_spins)?,
            BathSpec::WClass { gamma_nm1, gamma_n } => BathState::w_class(n_spins, c(gamma_nm1), c(gamma_n))?,
            BathSpec::FullyPolarized { m } => BathState::fully_polarized(n_spins, m)?,
        })
    }
}

/// Initial state of the central qubit(s); complex numbers are `[re, im]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum InitialSpec {
    Up,
    Down,
    /// `(|up> + |down>) / sqrt 2`.
    PlusX,
    Qubit {
        up: [f64; 2],
        down: [f64; 2],
    },
    UpUp,
    /// `(|ud> + |du>) / sqrt 2`.
    Bell,
    /// Amplitudes in the order uu, ud, du, dd.
    TwoQubit {
        amps: [[f64; 2]; 4],
    },
}

impl InitialSpec {
    pub fn qubit(&self) -> Result<QubitState, CliError> {
        let c = |z: [f64; 2]| C64::new(z[0], z[1]);
        match *self {
            InitialSpec::Up => Ok(QubitState::spin_up()),
            InitialSpec::Down => Ok(QubitState::spin_down()),
            InitialSpec::PlusX => Ok(QubitState::plus_x()),
            InitialSpec::Qubit { up, down } => Ok(QubitState::new(c(up), c(down))?),
            _ => Err(CliError::Config(format!("initial state {self:?} is not a single-qubit state"))),
        }
    }

    pub fn two_qubit(&self) -> Result<TwoQubitState, CliError> {
        let c = |z: [f64; 2]| C64::new(z[0], z[1]);
        match *self {
            InitialSpec::UpUp => Ok(TwoQubitState::up_up()),
            InitialSpec::Bell => Ok(TwoQubitState::bell()),
            InitialSpec::TwoQubit { amps } => Ok(TwoQubitState::new(amps.map(c))?),
            _ => Err(CliError::Config(format!("initial state {self:?} is not a two-qubit state"))),
        }
    }

    pub fn density(&self, n_qubits: usize) -> Result<DensityMatrix, CliError> {
        if n_qubits == 1 {
            Ok(self.qubit()?.density())
        } else {
            Ok(self.two_qubit()?.density())
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeGrid {
    pub t_max: f64,
    pub n_points: usize,
}

impl TimeGrid {
    /// `n_points` evenly spaced times from 0 to `t_max` inclusive; a single
    /// point is `t = 0`.
    pub fn times(&self) -> Vec<f64> {
        if self.n_points <= 1 {
            return vec![0.0; self.n_points];
        }
        let last = (self.n_points - 1) as f64;
        (0..self.n_points).map(|k| self.t_max * k as f64 / last).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub n_spins: usize,
    #[serde(default)]
    pub model: ModelRatios,
    pub bath: BathSpec,
    /// Second bath for `two_qubit_individual`; defaults to a copy of `bath`
    /// with `n_spins2` (or `n_spins`) spins.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bath2: Option<BathSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_spins2: Option<usize>,
    pub initial: InitialSpec,
    pub time: TimeGrid,
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

fn default_tol() -> f64 {
    DEFAULT_TOL
}

impl ExperimentConfig {
    /// Parses JSON, reporting the key path and line of the first error.
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let cfg: ExperimentConfig = serde_path_to_error::deserialize(de).map_err(|e| {
            let inner = e.inner();
            CliError::Parse {
                path: e.path().to_string(),
                line: inner.line(),
                column: inner.column(),
                message: inner.to_string(),
            }
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |msg: String| Err(CliError::Config(msg));
        if !(self.time.t_max >= 0.0 && self.time.t_max.is_finite()) {
            return bad(format!("time.t_max must be finite and non-negative, got {}", self.time.t_max));
        }
        if self.time.n_points == 0 {
            return bad("time.n_points must be at least 1".into());
        }
        if (self.time.t_max == 0.0) != (self.time.n_points == 1) {
            return bad("a single time point goes with t_max = 0, and t_max = 0 with a single point".into());
        }
        if !(self.tol > 0.0) {
            return bad(format!("tol must be positive, got {}", self.tol));
        }
        let is_intrabath = matches!(self.experiment, Experiment::IntrabathSingle | Experiment::IntrabathTwo);
        if is_intrabath && self.n_spins < 2 {
            return bad("intrabath experiments need at least two bath spins".into());
        }
        if self.experiment != Experiment::TwoQubitIndividual && (self.bath2.is_some() || self.n_spins2.is_some()) {
            return bad("bath2 and n_spins2 only apply to two_qubit_individual".into());
        }
        self.bath.build(self.n_spins)?;
        if let Some(b2) = &self.bath2 {
            b2.build(self.n_spins2.unwrap_or(self.n_spins))?;
        }
        self.initial.density(self.experiment.n_qubits())?;
        let q1 = self.qubit1();
        SingleQubitParams::new(q1.n_spins, q1.omega1, q1.g1, q1.g1p)?;
        if self.experiment.n_qubits() == 2 {
            self.two_qubit().validate()?;
            let q2 = self.qubit2();
            SingleQubitParams::new(q2.n_spins, q2.omega1, q2.g1, q2.g1p)?;
        }
        Ok(())
    }

    pub fn qubit1(&self) -> SingleQubitParams {
        SingleQubitParams { n_spins: self.n_spins, omega1: self.model.omega1, g1: 1.0, g1p: self.model.g1p }
    }

    pub fn qubit2(&self) -> SingleQubitParams {
        SingleQubitParams {
            n_spins: self.n_spins2.unwrap_or(self.n_spins),
            omega1: self.model.omega2,
            g1: self.model.g2,
            g1p: self.model.g2p,
        }
    }

    pub fn two_qubit(&self) -> TwoQubitParams {
        let m = &self.model;
        TwoQubitParams {
            n_spins: self.n_spins,
            omega1: m.omega1,
            omega2: m.omega2,
            j: m.j,
            jp: m.jp,
            g1: 1.0,
            g2: m.g2,
            g1p: m.g1p,
            g2p: m.g2p,
        }
    }

    pub fn bath1(&self) -> Result<BathState, CliError> {
        self.bath.build(self.n_spins)
    }

    pub fn bath2(&self) -> Result<BathState, CliError> {
        self.bath2.unwrap_or(self.bath).build(self.n_spins2.unwrap_or(self.n_spins))
    }
}
