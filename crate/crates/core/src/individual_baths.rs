//! Two noninteracting qubits, each coupled to its own bath.
//!
//! With a separable initial state the joint reduced dynamics is the tensor
//! product of the two single-qubit channels:
//! `rho_{(a a'),(b b')}(t) = sum Y1_abcd Y2_a'b'c'd' rho_{(c c'),(d d')}(0)`,
//! with the pair `(a, a')` stored at row `2 a + a'`.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::density::DensityMatrix;
use crate::dicke_basis::BathState;
use crate::error::{Error, Result};
use crate::par::{self, Execution};
use crate::single_qubit::{self, Channel, SingleQubitParams};

#[derive(Clone, Debug, PartialEq)]
pub struct JointInitialState {
    pub rho0: DensityMatrix,
    pub bath1: BathState,
    pub bath2: BathState,
    pub params1: SingleQubitParams,
    pub params2: SingleQubitParams,
}

impl JointInitialState {
    /// Validates the qubit state (4x4, hermitian, unit trace, positive) and
    /// the bath sizes.
    pub fn new(
        rho0: DensityMatrix,
        bath1: BathState,
        bath2: BathState,
        params1: SingleQubitParams,
        params2: SingleQubitParams,
    ) -> Result<Self> {
        if rho0.dim() != 4 {
            return Err(Error::InvalidArgument("joint qubit state must be 4x4".into()));
        }
        let rho0 = DensityMatrix::new(rho0.into_matrix())?;
        for (b, p) in [(&bath1, &params1), (&bath2, &params2)] {
            if b.n_spins() != p.n_spins {
                return Err(Error::InvalidArgument(format!(
                    "bath has {} spins but the model expects {}",
                    b.n_spins(),
                    p.n_spins
                )));
            }
        }
        Ok(JointInitialState { rho0, bath1, bath2, params1, params2 })
    }
}

/// Applies `Y1 (x) Y2` to a 4x4 qubit state.
pub fn apply_pair(ch1: &Channel, ch2: &Channel, rho0: &DensityMatrix) -> DensityMatrix {
    let m = DMatrix::from_fn(4, 4, |row, col| {
        let (a, ap, b, bp) = (row / 2, row % 2, col / 2, col % 2);
        let mut acc = C64::new(0.0, 0.0);
        for c in 0..2 {
            for d in 0..2 {
                let y1 = ch1.y[a][b][c][d];
                if y1 == C64::new(0.0, 0.0) {
                    continue;
                }
                for cp in 0..2 {
                    for dp in 0..2 {
                        acc += y1 * ch2.y[ap][bp][cp][dp] * rho0.get(2 * c + cp, 2 * d + dp);
                    }
                }
            }
        }
        acc
    });
    DensityMatrix::from_matrix_unchecked(m).expect("4x4 is square")
}

/// Joint reduced state of the two qubits at time `t`.
pub fn compose(state: &JointInitialState, t: f64) -> Result<DensityMatrix> {
    let ch1 = single_qubit::channel(&state.params1, &state.bath1, t)?;
    let ch2 = single_qubit::channel(&state.params2, &state.bath2, t)?;
    Ok(apply_pair(&ch1, &ch2, &state.rho0))
}

/// [`compose`] over a grid of times.
pub fn sweep(exec: Execution, state: &JointInitialState, times: &[f64]) -> Result<Vec<DensityMatrix>> {
    par::try_map(exec, times, |&t| compose(state, t))
}
