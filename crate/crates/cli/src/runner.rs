//! Dispatches a configuration to the dynamics modules and tabulates the
//! observables.

use central_spin::measures::{self, concurrence, relative_entropy_of_coherence, von_neumann_entropy};
use central_spin::ode::Dopri5Options;
use central_spin::two_qubit::{self, Scheme, TwoQubitAmplitudes};
use central_spin::{individual_baths, intrabath, par, single_qubit, DensityMatrix, Execution};

use crate::config::{Experiment, ExperimentConfig};
use crate::error::CliError;

/// Column names and one row of values per output time.
#[derive(Clone, Debug, PartialEq)]
pub struct TimeSeries {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

impl TimeSeries {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.columns.iter().position(|c| *c == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }
}

pub const SINGLE_QUBIT_COLUMNS: [&str; 7] = ["t", "Sx", "Sy", "Sz", "purity", "coherence", "entropy"];
pub const TWO_QUBIT_COLUMNS: [&str; 8] =
    ["t", "concurrence", "C_re", "entropy", "pop_uu", "pop_ud", "pop_du", "pop_dd"];
pub const INTRABATH_COLUMNS: [&str; 5] = ["t", "reduced_concurrence", "pair_concurrence", "coherence", "entropy"];

pub fn run(config: &ExperimentConfig) -> Result<TimeSeries, CliError> {
    run_with(config, Execution::default())
}

pub fn run_with(config: &ExperimentConfig, exec: Execution) -> Result<TimeSeries, CliError> {
    config.validate()?;
    let times = config.time.times();
    let rows = match config.experiment {
        Experiment::SingleQubit => single_qubit_rows(config, exec, &times)?,
        Experiment::TwoQubitCommon => {
            let states = common_bath_states(config, exec, &times)?;
            par::try_map(exec, &states, |(t, rho)| two_qubit_row(*t, rho))?
        }
        Experiment::TwoQubitIndividual => {
            let rho0 = config.initial.density(2)?;
            let joint = individual_baths::JointInitialState::new(
                rho0,
                config.bath1()?,
                config.bath2()?,
                config.qubit1(),
                config.qubit2(),
            )?;
            let rhos = individual_baths::sweep(exec, &joint, &times)?;
            let pairs: Vec<(f64, DensityMatrix)> = times.iter().copied().zip(rhos).collect();
            par::try_map(exec, &pairs, |(t, rho)| two_qubit_row(*t, rho))?
        }
        Experiment::IntrabathSingle => intrabath_single_rows(config, exec, &times)?,
        Experiment::IntrabathTwo => intrabath_two_rows(config, exec, &times)?,
    };
    let columns = match config.experiment {
        Experiment::SingleQubit => SINGLE_QUBIT_COLUMNS.to_vec(),
        Experiment::TwoQubitCommon | Experiment::TwoQubitIndividual => TWO_QUBIT_COLUMNS.to_vec(),
        Experiment::IntrabathSingle | Experiment::IntrabathTwo => INTRABATH_COLUMNS.to_vec(),
    };
    Ok(TimeSeries { columns, rows })
}

fn single_qubit_rows(config: &ExperimentConfig, exec: Execution, times: &[f64]) -> Result<Vec<Vec<f64>>, CliError> {
    let tables = single_qubit::sweep(exec, &config.qubit1(), &config.initial.qubit()?, &config.bath1()?, times)?;
    par::try_map(exec, &tables, |tab| {
        let rho = single_qubit::qubit_density(tab);
        let [sx, sy, sz] = measures::spin_expectations(&rho);
        Ok::<_, CliError>(vec![tab.t, sx, sy, sz, rho.purity(), sx.hypot(sy), von_neumann_entropy(&rho)?])
    })
}

fn integrate_common(
    config: &ExperimentConfig,
    exec: Execution,
    times: &[f64],
) -> Result<Vec<TwoQubitAmplitudes>, CliError> {
    let params = config.two_qubit();
    let opts = Dopri5Options { tol: config.tol, max_step: params.default_max_step(), ..Default::default() };
    let q0 = config.initial.two_qubit()?;
    let (out, _) = two_qubit::integrate_with(&params, &q0, &config.bath1()?, times, &opts, Scheme::Rows(exec))?;
    Ok(out.iter().map(|a| two_qubit::to_schrodinger(a, &params)).collect())
}

fn common_bath_states(
    config: &ExperimentConfig,
    exec: Execution,
    times: &[f64],
) -> Result<Vec<(f64, DensityMatrix)>, CliError> {
    integrate_common(config, exec, times)?.iter().map(|a| Ok((a.t, two_qubit::two_qubit_density(a)?))).collect()
}

fn two_qubit_row(t: f64, rho: &DensityMatrix) -> Result<Vec<f64>, CliError> {
    let mut row = vec![t, concurrence(rho)?, relative_entropy_of_coherence(rho)?, von_neumann_entropy(rho)?];
    row.extend((0..4).map(|i| rho.get(i, i).re));
    Ok(row)
}

fn intrabath_single_rows(config: &ExperimentConfig, exec: Execution, times: &[f64]) -> Result<Vec<Vec<f64>>, CliError> {
    let tables = single_qubit::sweep(exec, &config.qubit1(), &config.initial.qubit()?, &config.bath1()?, times)?;
    let chi0 = intrabath::from_single_qubit(&tables[0])?;
    par::try_map(exec, &tables, |tab| {
        let chi = intrabath::from_single_qubit(tab)?;
        let rho = single_qubit::qubit_density(tab);
        let [sx, sy, _] = measures::spin_expectations(&rho);
        Ok::<_, CliError>(vec![
            tab.t,
            intrabath::reduced_concurrence(&chi, &chi0)?,
            chi.concurrence()?,
            sx.hypot(sy),
            von_neumann_entropy(&rho)?,
        ])
    })
}

fn intrabath_two_rows(config: &ExperimentConfig, exec: Execution, times: &[f64]) -> Result<Vec<Vec<f64>>, CliError> {
    let amps = integrate_common(config, exec, times)?;
    let chi0 = intrabath::from_two_qubit(&amps[0])?;
    par::try_map(exec, &amps, |a| {
        let chi = intrabath::from_two_qubit(a)?;
        let rho = two_qubit::two_qubit_density(a)?;
        Ok::<_, CliError>(vec![
            a.t,
            intrabath::reduced_concurrence(&chi, &chi0)?,
            chi.concurrence()?,
            relative_entropy_of_coherence(&rho)?,
            von_neumann_entropy(&rho)?,
        ])
    })
}
