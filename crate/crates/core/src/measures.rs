//! Entanglement and coherence functionals. Natural logarithms throughout.

use nalgebra::{DMatrix, SVD};
use num_complex::Complex64 as C64;

use crate::density::DensityMatrix;
use crate::error::{Error, Result};

/// Eigenvalues above this (times the largest one) are kept when building
/// `sqrt(rho)` for the concurrence; anything smaller is round-off.
const RANK_CUTOFF: f64 = 64.0 * f64::EPSILON;

/// Eigenvalues below `-INVALID_EIGENVALUE` mean the input was not a state.
pub const INVALID_EIGENVALUE: f64 = 1e-6;

/// `sigma_y (x) sigma_y` in the basis {uu, ud, du, dd}.
fn spin_flip() -> DMatrix<C64> {
    let mut y = DMatrix::zeros(4, 4);
    y[(0, 3)] = C64::new(-1.0, 0.0);
    y[(3, 0)] = C64::new(-1.0, 0.0);
    y[(1, 2)] = C64::new(1.0, 0.0);
    y[(2, 1)] = C64::new(1.0, 0.0);
    y
}

/// Wootters concurrence of a two-qubit state.
///
/// The square roots of the eigenvalues of `rho (Y rho* Y)` are computed as the
/// singular values of `sqrt(rho) Y sqrt(rho)*`, which avoids taking square
/// roots of round-off sized eigenvalues.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    if rho.dim() != 4 {
        return Err(Error::InvalidArgument(format!("concurrence needs a 4x4 matrix, got {}x{}", rho.dim(), rho.dim())));
    }
    let (vals, vecs) = rho.eigh();
    let cutoff = RANK_CUTOFF * vals[0].abs().max(1.0);
    let mut sqrt_rho = DMatrix::<C64>::zeros(4, 4);
    for (k, &p) in vals.iter().enumerate() {
        if p > cutoff {
            let v = vecs.column(k);
            sqrt_rho += (v * v.adjoint()).scale(p.sqrt());
        }
    }
    let b = &sqrt_rho * spin_flip() * sqrt_rho.conjugate();
    let mut sv: Vec<f64> = SVD::new(b, false, false).singular_values.iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    Ok((sv[0] - sv[1] - sv[2] - sv[3]).max(0.0))
}

/// `-sum p ln p` over the eigenvalues; slightly negative eigenvalues count as
/// zero.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    entropy_of(&rho.eigenvalues())
}

fn entropy_of(p: &[f64]) -> Result<f64> {
    let mut s = 0.0;
    for &x in p {
        if x < -INVALID_EIGENVALUE {
            return Err(Error::InvalidDensity(format!("eigenvalue {x:e} is negative")));
        }
        if x > 0.0 {
            s -= x * x.ln();
        }
    }
    Ok(s.max(0.0))
}

/// `S(rho_diag) - S(rho)` in the computational basis.
pub fn relative_entropy_of_coherence(rho: &DensityMatrix) -> Result<f64> {
    let diag: Vec<f64> = (0..rho.dim()).map(|i| rho.get(i, i).re).collect();
    let s_diag = entropy_of(&diag)?;
    let s = von_neumann_entropy(rho)?;
    Ok((s_diag - s).max(0.0))
}

/// `Tr rho^2`.
pub fn purity(rho: &DensityMatrix) -> f64 {
    rho.purity()
}

/// `(<Sx>, <Sy>, <Sz>)` for spin-1/2 operators, basis {up, down}.
pub fn spin_expectations(rho: &DensityMatrix) -> [f64; 3] {
    assert_eq!(rho.dim(), 2, "spin expectations need a qubit state");
    // <S+> = rho_{down,up}
    let s_plus = rho.get(1, 0);
    [s_plus.re, s_plus.im, 0.5 * (rho.get(0, 0).re - rho.get(1, 1).re)]
}

/// Qubit purity from spin expectations: `1/2 + 2 sum <S_i>^2`.
pub fn bloch_purity(s: [f64; 3]) -> f64 {
    0.5 + 2.0 * s.iter().map(|x| x * x).sum::<f64>()
}
