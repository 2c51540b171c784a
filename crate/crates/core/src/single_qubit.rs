//! Closed-form dynamics of one qubit homogeneously coupled to the bath.
//!
//! Every `M = S^z + L_z` sector pairs `|up>|N-n+1>_D` with `|down>|N-n>_D`
//! and evolves as a two-level Rabi problem with frequency `A_n`. Amplitudes are
//! reported in the Schrodinger picture, indexed by the bath excitation `n`
//! (bath state `|N-n>_D`).

use num_complex::Complex64 as C64;

use crate::density::DensityMatrix;
use crate::dicke_basis::{BathState, MAX_BATH_SPINS};
use crate::error::{Error, Result};
use crate::par::{self, Execution};

const ZERO: C64 = C64::new(0.0, 0.0);

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SingleQubitParams {
    pub n_spins: usize,
    pub omega1: f64,
    pub g1: f64,
    /// Longitudinal (Ising) coupling `g1'`.
    pub g1p: f64,
}

impl SingleQubitParams {
    pub fn new(n_spins: usize, omega1: f64, g1: f64, g1p: f64) -> Result<Self> {
        if n_spins == 0 || n_spins > MAX_BATH_SPINS {
            return Err(Error::BathCapacity { n: n_spins, max: MAX_BATH_SPINS });
        }
        if !(omega1.is_finite() && g1.is_finite() && g1p.is_finite()) {
            return Err(Error::InvalidArgument("model parameters must be finite".into()));
        }
        Ok(SingleQubitParams { n_spins, omega1, g1, g1p })
    }

    /// `L = N / 2`.
    pub fn big_l(&self) -> f64 {
        self.n_spins as f64 / 2.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QubitState {
    pub up: C64,
    pub down: C64,
}

impl QubitState {
    pub fn new(up: C64, down: C64) -> Result<Self> {
        let norm_sq = up.norm_sqr() + down.norm_sqr();
        if (norm_sq - 1.0).abs() > 1e-12 {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(QubitState { up, down })
    }

    pub fn spin_up() -> Self {
        QubitState { up: C64::new(1.0, 0.0), down: ZERO }
    }

    pub fn spin_down() -> Self {
        QubitState { up: ZERO, down: C64::new(1.0, 0.0) }
    }

    /// `(|up> + |down>) / sqrt 2`.
    pub fn plus_x() -> Self {
        let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        QubitState { up: h, down: h }
    }

    pub fn amplitude(&self, s: usize) -> C64 {
        if s == 0 {
            self.up
        } else {
            self.down
        }
    }

    pub fn density(&self) -> DensityMatrix {
        DensityMatrix::pure(&[self.up, self.down])
    }
}

/// Sector frequencies for `n = 0..=N+1`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralData {
    /// Flip coupling `a_n = g1 sqrt(n (N - n + 1))`; zero at both ends.
    pub a: Vec<f64>,
    /// Detuning `b_n = omega1 + g1' (2n - N - 1)`.
    pub b: Vec<f64>,
    /// Rabi frequency `A_n = sqrt(b_n^2 + 4 a_n^2)`.
    pub rabi: Vec<f64>,
}

pub fn spectral(params: &SingleQubitParams) -> SpectralData {
    let n_spins = params.n_spins;
    let mut a = vec![0.0; n_spins + 2];
    let mut b = vec![0.0; n_spins + 2];
    let mut rabi = vec![0.0; n_spins + 2];
    for n in 0..=n_spins + 1 {
        // x_{n-L-1}^2 = n (N - n + 1), an exact integer, so a_n = a_{N+1-n}
        // holds bit for bit.
        let x_sq = (n * (n_spins + 1 - n)) as f64;
        a[n] = params.g1 * x_sq.sqrt();
        b[n] = params.omega1 + params.g1p * (2.0 * n as f64 - n_spins as f64 - 1.0);
        rabi[n] = (b[n] * b[n] + 4.0 * params.g1 * params.g1 * x_sq).sqrt();
    }
    SpectralData { a, b, rabi }
}

impl SpectralData {
    pub fn n_spins(&self) -> usize {
        self.a.len() - 2
    }

    /// Sector propagator entries `(W_n(t), V_n(t))`.
    pub fn wv(&self, n: usize, t: f64) -> (C64, C64) {
        let n_spins = self.n_spins();
        assert!(n <= n_spins + 1, "sector index {n} out of range");
        let (a, b, big_a) = (self.a[n], self.b[n], self.rabi[n]);
        if n == 0 || n == n_spins + 1 {
            return (C64::from_polar(1.0, -0.5 * b * t), ZERO);
        }
        if big_a == 0.0 {
            return (C64::new(1.0, 0.0), ZERO);
        }
        let (s, c) = (0.5 * big_a * t).sin_cos();
        let w = C64::new(c, -(b / big_a) * s);
        let v = C64::new(0.0, -(2.0 * a / big_a) * s);
        (w, v)
    }
}

/// Schrodinger-picture amplitudes at time `t`: `f_up[n]` multiplies
/// `|up>|N-n>_D` and `f_down[n]` multiplies `|down>|N-n>_D`.
#[derive(Clone, Debug, PartialEq)]
pub struct SingleAmplitudeTable {
    pub t: f64,
    pub f_up: Vec<C64>,
    pub f_down: Vec<C64>,
}

impl SingleAmplitudeTable {
    pub fn n_spins(&self) -> usize {
        self.f_up.len() - 1
    }

    pub fn norm_sqr(&self) -> f64 {
        self.f_up.iter().chain(&self.f_down).map(|z| z.norm_sqr()).sum()
    }

    /// `f_up` for `s = 0`, `f_down` for `s = 1`.
    pub fn component(&self, s: usize) -> &[C64] {
        if s == 0 {
            &self.f_up
        } else {
            &self.f_down
        }
    }
}

fn check_bath(params: &SingleQubitParams, bath: &BathState) -> Result<()> {
    if bath.n_spins() != params.n_spins {
        return Err(Error::InvalidArgument(format!(
            "bath has {} spins but the model expects {}",
            bath.n_spins(),
            params.n_spins
        )));
    }
    Ok(())
}

/// Exact state of qubit + bath at time `t` from the product initial state
/// `q0 (x) bath0`.
pub fn evolve(params: &SingleQubitParams, q0: &QubitState, bath0: &BathState, t: f64) -> Result<SingleAmplitudeTable> {
    check_bath(params, bath0)?;
    Ok(evolve_with(&spectral(params), params, q0, bath0, t))
}

fn evolve_with(
    spec: &SpectralData,
    params: &SingleQubitParams,
    q0: &QubitState,
    bath0: &BathState,
    t: f64,
) -> SingleAmplitudeTable {
    let n_spins = params.n_spins;
    let phase = C64::from_polar(1.0, 0.5 * params.g1p * t);
    let q = |n: i64| bath0.gamma_for_excitation(n);
    let mut f_up = Vec::with_capacity(n_spins + 1);
    let mut f_down = Vec::with_capacity(n_spins + 1);
    for n in 0..=n_spins {
        let ni = n as i64;
        let (w_next, v_next) = spec.wv(n + 1, t);
        let (w_n, v_n) = spec.wv(n, t);
        f_up.push(phase * (q0.up * q(ni) * w_next + q0.down * q(ni + 1) * v_next));
        f_down.push(phase * (q0.down * q(ni) * w_n.conj() + q0.up * q(ni - 1) * v_n));
    }
    SingleAmplitudeTable { t, f_up, f_down }
}

/// [`evolve`] over a grid of times.
pub fn sweep(
    exec: Execution,
    params: &SingleQubitParams,
    q0: &QubitState,
    bath0: &BathState,
    times: &[f64],
) -> Result<Vec<SingleAmplitudeTable>> {
    check_bath(params, bath0)?;
    let spec = spectral(params);
    Ok(par::map(exec, times, |&t| evolve_with(&spec, params, q0, bath0, t)))
}

/// Reduced qubit state, basis {up, down}.
pub fn qubit_density(table: &SingleAmplitudeTable) -> DensityMatrix {
    let m = nalgebra::DMatrix::from_fn(2, 2, |s, sp| {
        table.component(s).iter().zip(table.component(sp)).map(|(x, y)| x * y.conj()).sum::<C64>()
    });
    DensityMatrix::from_matrix_unchecked(m).expect("2x2 is square")
}

/// Reduced bath state in the Dicke basis, indexed by down-flip count.
pub fn bath_density(table: &SingleAmplitudeTable) -> DensityMatrix {
    let n_spins = table.n_spins();
    let m = nalgebra::DMatrix::from_fn(n_spins + 1, n_spins + 1, |n, np| {
        (0..2)
            .map(|s| {
                let f = table.component(s);
                f[n_spins - n] * f[n_spins - np].conj()
            })
            .sum::<C64>()
    });
    DensityMatrix::from_matrix_unchecked(m).expect("square by construction")
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Observables {
    pub sx: f64,
    pub sy: f64,
    pub sz: f64,
    pub purity: f64,
}

/// Spin expectations and purity from the closed-form sums, for a qubit that
/// starts in `|up>`. This path never builds amplitudes; it is cross-checked
/// against [`qubit_density`].
pub fn observables(params: &SingleQubitParams, q0: &QubitState, bath0: &BathState, t: f64) -> Result<Observables> {
    check_bath(params, bath0)?;
    if q0.down.norm() > 1e-12 {
        return Err(Error::NotSpinUp);
    }
    let spec = spectral(params);
    let n_spins = params.n_spins;
    let q = |n: usize| bath0.gamma_for_excitation(n as i64);

    // <S^z> = 1/2 sum_n |Q_n|^2 (b^2 + 4 a^2 cos A t) / A^2 at index n + 1
    let mut sz = 0.0;
    for n in 0..=n_spins {
        let k = n + 1;
        let big_a2 = spec.rabi[k] * spec.rabi[k];
        let term = if big_a2 == 0.0 {
            1.0
        } else {
            (spec.b[k] * spec.b[k] + 4.0 * spec.a[k] * spec.a[k] * (spec.rabi[k] * t).cos()) / big_a2
        };
        sz += q(n).norm_sqr() * term;
    }
    sz *= 0.5;

    // <S^+> = sum_n Q_{n-1} Q_n^* [ 2 a_n b_{n+1} s_n s_{n+1} / (A_n A_{n+1})
    //                               - i 2 a_n s_n c_{n+1} / A_n ]
    // with s_k = sin(A_k t / 2), c_k = cos(A_k t / 2).
    let mut s_plus = ZERO;
    for n in 1..=n_spins {
        let (an, big_an) = (spec.a[n], spec.rabi[n]);
        if big_an == 0.0 {
            continue;
        }
        let s_n = (0.5 * big_an * t).sin();
        let (bk, big_ak) = (spec.b[n + 1], spec.rabi[n + 1]);
        let (s_k, c_k) = (0.5 * big_ak * t).sin_cos();
        // (b/A) sin(A t / 2) -> sin(b t / 2) -> 0 as A -> 0
        let b_over_a_sin = if big_ak == 0.0 { 0.0 } else { bk / big_ak * s_k };
        let bracket = C64::new(2.0 * an / big_an * s_n * b_over_a_sin, -2.0 * an / big_an * s_n * c_k);
        s_plus += q(n - 1) * q(n).conj() * bracket;
    }
    let (sx, sy) = (s_plus.re, s_plus.im);
    let purity = 0.5 + 2.0 * (sx * sx + sy * sy + sz * sz);
    Ok(Observables { sx, sy, sz, purity })
}

/// Linear map `rho_ab(t) = sum_cd Y[a][b][c][d] rho_cd(0)` on the qubit, with
/// index 0 = up and 1 = down.
#[derive(Clone, Debug, PartialEq)]
pub struct Channel {
    pub y: [[[[C64; 2]; 2]; 2]; 2],
}

impl Channel {
    pub fn identity() -> Self {
        let mut y = [[[[ZERO; 2]; 2]; 2]; 2];
        for a in 0..2 {
            for b in 0..2 {
                y[a][b][a][b] = C64::new(1.0, 0.0);
            }
        }
        Channel { y }
    }

    pub fn apply(&self, rho0: &DensityMatrix) -> DensityMatrix {
        assert_eq!(rho0.dim(), 2, "single-qubit channel acts on 2x2 states");
        let m = nalgebra::DMatrix::from_fn(2, 2, |a, b| {
            let mut acc = ZERO;
            for c in 0..2 {
                for d in 0..2 {
                    acc += self.y[a][b][c][d] * rho0.get(c, d);
                }
            }
            acc
        });
        DensityMatrix::from_matrix_unchecked(m).expect("2x2 is square")
    }

    /// Largest `|sum_a Y[a][a][c][d] - delta_cd|`.
    pub fn trace_defect(&self) -> f64 {
        let mut e: f64 = 0.0;
        for c in 0..2 {
            for d in 0..2 {
                let s: C64 = (0..2).map(|a| self.y[a][a][c][d]).sum();
                let target = if c == d { 1.0 } else { 0.0 };
                e = e.max((s - target).norm());
            }
        }
        e
    }
}

/// Channel coefficients at time `t` for an arbitrary symmetric bath.
///
/// `Y_abcd = sum_n K_ac(n) K_bd(n)^*` where `K_sc(n)` is the coefficient of
/// `f_c` in the amplitude of `|s>|N-n>_D`:
/// `K_uu = Q_n W_{n+1}`, `K_ud = Q_{n+1} V_{n+1}`, `K_dd = Q_n W_n^*`,
/// `K_du = Q_{n-1} V_n`, with `Q_n = gamma_{N-n}`. The common phase
/// `exp(i g1' t / 2)` cancels.
pub fn channel(params: &SingleQubitParams, bath0: &BathState, t: f64) -> Result<Channel> {
    check_bath(params, bath0)?;
    let spec = spectral(params);
    let q = |n: i64| bath0.gamma_for_excitation(n);
    let mut y = [[[[ZERO; 2]; 2]; 2]; 2];
    for n in 0..=params.n_spins {
        let ni = n as i64;
        let (w_next, v_next) = spec.wv(n + 1, t);
        let (w_n, v_n) = spec.wv(n, t);
        let k = [[q(ni) * w_next, q(ni + 1) * v_next], [q(ni - 1) * v_n, q(ni) * w_n.conj()]];
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    for d in 0..2 {
                        y[a][b][c][d] += k[a][c] * k[b][d].conj();
                    }
                }
            }
        }
    }
    Ok(Channel { y })
}

/// Predicted first revival time of the qubit purity for a spin coherent bath.
///
/// * `g1' = 0`: the bath distribution peaks at `n_max`; neighbouring Rabi
///   oscillations rephase after `pi / |A_{n_max} - A_{n_max+1}|`.
/// * `g1' = g1`: Rabi frequencies are nearly equally spaced by `g1 / L`, giving
///   `L pi / g1`.
///
/// Other anisotropies have no prediction.
pub fn revival_time(params: &SingleQubitParams, bath0: &BathState) -> Result<f64> {
    check_bath(params, bath0)?;
    let scale = params.g1.abs().max(f64::MIN_POSITIVE);
    if params.g1p.abs() <= 1e-12 * scale {
        let spec = spectral(params);
        let n_max = peak_excitation(bath0);
        let gap = (spec.rabi[n_max] - spec.rabi[n_max + 1]).abs();
        if gap == 0.0 {
            return Err(Error::NoRevivalPrediction { ratio: 0.0 });
        }
        Ok(std::f64::consts::PI / gap)
    } else if (params.g1p - params.g1).abs() <= 1e-12 * scale {
        Ok(params.big_l() * std::f64::consts::PI / params.g1.abs())
    } else {
        Err(Error::NoRevivalPrediction { ratio: params.g1p / params.g1 })
    }
}

/// `n_max = argmax_n |Q_n|`, ties to the larger `n`.
pub fn peak_excitation(bath0: &BathState) -> usize {
    let mut n_max = 0;
    let mut best = -1.0;
    for n in 0..=bath0.n_spins() {
        let w = bath0.gamma_for_excitation(n as i64).norm();
        if w >= best {
            best = w;
            n_max = n;
        }
    }
    n_max
}
