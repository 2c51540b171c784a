//! Dense density matrices.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

pub const HERMITIAN_TOL: f64 = 1e-10;
pub const TRACE_TOL: f64 = 1e-10;
pub const PSD_TOL: f64 = 1e-9;

/// A square complex matrix meant to be hermitian, unit-trace and positive
/// semidefinite. [`DensityMatrix::new`] checks all three; the `unchecked`
/// constructor exists for intermediate results whose validity is asserted by
/// tests instead.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    m: DMatrix<C64>,
}

impl DensityMatrix {
    pub fn new(m: DMatrix<C64>) -> Result<Self> {
        let rho = Self::from_matrix_unchecked(m)?;
        rho.validate(HERMITIAN_TOL, TRACE_TOL, PSD_TOL)?;
        Ok(rho)
    }

    /// Only the shape is checked.
    pub fn from_matrix_unchecked(m: DMatrix<C64>) -> Result<Self> {
        if m.nrows() != m.ncols() || m.nrows() == 0 {
            return Err(Error::InvalidDensity(format!(
                "matrix must be square and nonempty, got {}x{}",
                m.nrows(),
                m.ncols()
            )));
        }
        Ok(DensityMatrix { m })
    }

    /// `|psi><psi|` for a (not necessarily normalized) vector.
    pub fn pure(psi: &[C64]) -> Self {
        let d = psi.len();
        let m = DMatrix::from_fn(d, d, |i, j| psi[i] * psi[j].conj());
        DensityMatrix { m }
    }

    pub fn from_diagonal(p: &[f64]) -> Self {
        let d = p.len();
        DensityMatrix {
            m: DMatrix::from_fn(d, d, |i, j| if i == j { C64::new(p[i], 0.0) } else { C64::new(0.0, 0.0) }),
        }
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self::from_diagonal(&vec![1.0 / dim as f64; dim])
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.m
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.m
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.m[(i, j)]
    }

    pub fn trace(&self) -> C64 {
        self.m.trace()
    }

    /// Largest elementwise deviation `|rho - rho^dagger|`.
    pub fn hermiticity_error(&self) -> f64 {
        let d = self.dim();
        let mut e: f64 = 0.0;
        for i in 0..d {
            for j in i..d {
                e = e.max((self.m[(i, j)] - self.m[(j, i)].conj()).norm());
            }
        }
        e
    }

    /// Hermitian part `(rho + rho^dagger) / 2`.
    pub fn hermitian_part(&self) -> DMatrix<C64> {
        (&self.m + self.m.adjoint()).scale(0.5)
    }

    /// Eigen-decomposition of the hermitian part, eigenvalues descending.
    pub fn eigh(&self) -> (Vec<f64>, DMatrix<C64>) {
        let eig = SymmetricEigen::new(self.hermitian_part());
        let mut order: Vec<usize> = (0..self.dim()).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
        let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
        let vectors = DMatrix::from_fn(self.dim(), self.dim(), |r, c| eig.eigenvectors[(r, order[c])]);
        (values, vectors)
    }

    /// Eigenvalues of the hermitian part, descending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut v: Vec<f64> = SymmetricEigen::new(self.hermitian_part()).eigenvalues.iter().copied().collect();
        v.sort_by(|a, b| b.total_cmp(a));
        v
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues().last().copied().unwrap_or(0.0)
    }

    pub fn validate(&self, herm_tol: f64, trace_tol: f64, psd_tol: f64) -> Result<()> {
        let h = self.hermiticity_error();
        if h > herm_tol {
            return Err(Error::InvalidDensity(format!("not hermitian (deviation {h:e})")));
        }
        let tr = self.trace();
        if (tr - C64::new(1.0, 0.0)).norm() > trace_tol {
            return Err(Error::InvalidDensity(format!("trace {tr} != 1")));
        }
        let lam = self.min_eigenvalue();
        if lam < -psd_tol {
            return Err(Error::InvalidDensity(format!("negative eigenvalue {lam:e}")));
        }
        Ok(())
    }

    /// `Tr rho^2`.
    pub fn purity(&self) -> f64 {
        // Tr(rho rho) = sum_ij rho_ij rho_ji = sum_ij |rho_ij|^2 for hermitian rho.
        self.m.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Copy with the off-diagonal elements removed.
    pub fn diagonal_part(&self) -> DensityMatrix {
        let d = self.dim();
        DensityMatrix { m: DMatrix::from_fn(d, d, |i, j| if i == j { self.m[(i, i)] } else { C64::new(0.0, 0.0) }) }
    }

    /// `U rho U^dagger`.
    pub fn conjugate_by(&self, u: &DMatrix<C64>) -> DensityMatrix {
        DensityMatrix { m: u * &self.m * u.adjoint() }
    }

    pub fn kron(&self, other: &DensityMatrix) -> DensityMatrix {
        DensityMatrix { m: self.m.kronecker(&other.m) }
    }

    /// Traces out the second factor of a `d1 * d2` bipartite matrix.
    pub fn trace_out_second(&self, d1: usize, d2: usize) -> Result<DensityMatrix> {
        self.check_split(d1, d2)?;
        let m = DMatrix::from_fn(d1, d1, |a, b| (0..d2).map(|k| self.m[(a * d2 + k, b * d2 + k)]).sum());
        Ok(DensityMatrix { m })
    }

    /// Traces out the first factor of a `d1 * d2` bipartite matrix.
    pub fn trace_out_first(&self, d1: usize, d2: usize) -> Result<DensityMatrix> {
        self.check_split(d1, d2)?;
        let m = DMatrix::from_fn(d2, d2, |a, b| (0..d1).map(|k| self.m[(k * d2 + a, k * d2 + b)]).sum());
        Ok(DensityMatrix { m })
    }

    fn check_split(&self, d1: usize, d2: usize) -> Result<()> {
        if d1 * d2 != self.dim() {
            return Err(Error::InvalidArgument(format!("cannot split dimension {} as {d1} x {d2}", self.dim())));
        }
        Ok(())
    }

    /// Largest elementwise difference.
    pub fn max_abs_diff(&self, other: &DensityMatrix) -> f64 {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        self.m.iter().zip(other.m.iter()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}
