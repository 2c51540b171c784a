//! Central spin model: qubits coupled to a bath of spin-1/2 particles through
//! XXZ interactions, solved in the symmetric (Dicke) subspace of the bath.
//!
//! * [`single_qubit`]: closed-form amplitudes, observables, channel and
//!   revival estimates for one qubit.
//! * [`two_qubit`]: two qubits sharing a bath, integrated numerically.
//! * [`individual_baths`]: two qubits each with their own bath, composed from
//!   single-qubit channels.
//! * [`intrabath`]: entanglement between two bath spins.
//! * [`oracle`]: brute-force reference implementations used by the tests.

pub mod density;
pub mod dicke_basis;
pub mod error;
pub mod individual_baths;
pub mod intrabath;
pub mod measures;
pub mod ode;
pub mod oracle;
pub mod par;
pub mod single_qubit;
pub mod two_qubit;

pub use num_complex::Complex64 as C64;

pub use density::DensityMatrix;
pub use dicke_basis::{BathState, PairElementTable};
pub use error::{Error, Result};
pub use par::Execution;
pub use single_qubit::{QubitState, SingleQubitParams};
pub use two_qubit::{TwoQubitParams, TwoQubitState};
