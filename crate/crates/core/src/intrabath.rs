//! Entanglement between two bath spins.
//!
//! All bath spins are equivalent in the symmetric sector, so the reduced
//! state of spins 1 and 2 stands for every pair. It is assembled from the
//! bath density matrix and the exact two-site elements of
//! [`PairElementTable`]. In the diagonal weights the relevant ratio is
//! `C(N-2, m) / C(N, m)`, not a product of the two binomials.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::density::DensityMatrix;
use crate::dicke_basis::PairElementTable;
use crate::error::{Error, Result};
use crate::measures;
use crate::single_qubit::{self, SingleAmplitudeTable};
use crate::two_qubit::{self, TwoQubitAmplitudes};

/// Initial pair concurrences at or below this are treated as zero.
pub const MIN_INITIAL_CONCURRENCE: f64 = 1e-12;

/// Reduced state of bath spins 1 and 2 in the basis {++, +-, -+, --}.
#[derive(Clone, Debug, PartialEq)]
pub struct PairDensity {
    pub chi: DensityMatrix,
}

impl PairDensity {
    pub fn concurrence(&self) -> Result<f64> {
        measures::concurrence(&self.chi)
    }

    /// Largest deviation from exchange symmetry of the two spins: the `+-`
    /// and `-+` rows and columns must coincide.
    pub fn exchange_asymmetry(&self) -> f64 {
        let c = |i, j| self.chi.get(i, j);
        [(c(1, 1), c(2, 2)), (c(1, 1), c(1, 2)), (c(1, 2), c(2, 1)), (c(0, 1), c(0, 2)), (c(1, 3), c(2, 3))]
            .iter()
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Pair state from a bath density matrix indexed by down-flip count.
pub fn pair_density(rho_b: &DensityMatrix) -> Result<PairDensity> {
    let n = rho_b.dim().saturating_sub(1);
    let tab = PairElementTable::new(n)?;
    pair_density_with(&tab, rho_b)
}

/// [`pair_density`] with a precomputed element table.
pub fn pair_density_with(tab: &PairElementTable, rho_b: &DensityMatrix) -> Result<PairDensity> {
    let n = tab.n_spins();
    if rho_b.dim() != n + 1 {
        return Err(Error::InvalidArgument(format!(
            "bath density has dimension {} but the table is for N = {n}",
            rho_b.dim()
        )));
    }
    let r = |i: usize, j: usize| rho_b.get(i, j);
    let diag = |w: &[f64]| -> C64 { (0..=n).map(|m| r(m, m) * w[m]).sum() };
    let off1 = |w: &[f64]| -> C64 { (0..n).map(|m| r(m, m + 1) * w[m]).sum() };
    let off2: C64 = (0..n.saturating_sub(1)).map(|m| r(m, m + 2) * tab.double_step[m]).sum();

    let p_uu = diag(&tab.up_up);
    let p_mix = diag(&tab.mixed);
    let p_dd = diag(&tab.down_down);
    let up = off1(&tab.step_up);
    let down = off1(&tab.step_down);

    let mut chi = DMatrix::from_element(4, 4, C64::new(0.0, 0.0));
    chi[(0, 0)] = p_uu;
    chi[(3, 3)] = p_dd;
    for i in 1..3 {
        for j in 1..3 {
            chi[(i, j)] = p_mix;
        }
        chi[(0, i)] = up;
        chi[(i, 3)] = down;
    }
    chi[(0, 3)] = off2;
    for i in 0..4 {
        for j in 0..i {
            chi[(i, j)] = chi[(j, i)].conj();
        }
    }
    Ok(PairDensity { chi: DensityMatrix::from_matrix_unchecked(chi)? })
}

/// `C12(t) / C12(0)`.
pub fn reduced_concurrence(chi_t: &PairDensity, chi_0: &PairDensity) -> Result<f64> {
    let c0 = chi_0.concurrence()?;
    if c0 <= MIN_INITIAL_CONCURRENCE {
        return Err(Error::ZeroInitialConcurrence);
    }
    Ok(chi_t.concurrence()? / c0)
}

/// Pair state of the bath in a single-qubit run.
pub fn from_single_qubit(table: &SingleAmplitudeTable) -> Result<PairDensity> {
    pair_density(&single_qubit::bath_density(table))
}

/// Pair state of the common bath in a two-qubit run (Schrodinger picture).
pub fn from_two_qubit(amps: &TwoQubitAmplitudes) -> Result<PairDensity> {
    pair_density(&two_qubit::bath_density_2q(amps)?)
}
