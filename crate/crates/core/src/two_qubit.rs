//! Two qubits sharing one bath: interaction-picture equations of motion,
//! their numerical propagation, and reduced density matrices.
//!
//! Amplitudes `G[c][n]` multiply `|c>|N-n>_D` with the qubit configuration
//! `c` ordered {uu, ud, du, dd}. Magnetization conservation closes each row
//! `{uu(n-1), ud(n), du(n), dd(n+1)}` on itself.

use num_complex::Complex64 as C64;

use crate::density::DensityMatrix;
use crate::dicke_basis::{BathState, MAX_BATH_SPINS};
use crate::error::{Error, Result};
use crate::ode::{self, Dopri5Options, Stats};
use crate::par::{self, Execution};
use crate::single_qubit::{QubitState, SingleQubitParams};

pub const UU: usize = 0;
pub const UD: usize = 1;
pub const DU: usize = 2;
pub const DD: usize = 3;

/// `(v1, v2)` spin signs of each configuration: +1 for up, -1 for down.
pub const SIGNS: [(f64, f64); 4] = [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)];

const ZERO: C64 = C64::new(0.0, 0.0);

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct TwoQubitParams {
    pub n_spins: usize,
    pub omega1: f64,
    pub omega2: f64,
    /// Transverse qubit-qubit coupling `J`.
    pub j: f64,
    /// Longitudinal qubit-qubit coupling `J'`.
    pub jp: f64,
    pub g1: f64,
    pub g2: f64,
    pub g1p: f64,
    pub g2p: f64,
}

impl TwoQubitParams {
    pub fn validate(&self) -> Result<()> {
        if self.n_spins == 0 || self.n_spins > MAX_BATH_SPINS {
            return Err(Error::BathCapacity { n: self.n_spins, max: MAX_BATH_SPINS });
        }
        let all = [self.omega1, self.omega2, self.j, self.jp, self.g1, self.g2, self.g1p, self.g2p];
        if all.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument("model parameters must be finite".into()));
        }
        Ok(())
    }

    /// Same coupling for both qubits, no direct qubit-qubit interaction.
    pub fn symmetric(n_spins: usize, omega: f64, g: f64, gp: f64) -> Self {
        TwoQubitParams { n_spins, omega1: omega, omega2: omega, g1: g, g2: g, g1p: gp, g2p: gp, ..Default::default() }
    }

    /// `g1' - g2'`.
    pub fn g12p(&self) -> f64 {
        self.g1p - self.g2p
    }

    /// `omega1 - omega2`.
    pub fn omega12(&self) -> f64 {
        self.omega1 - self.omega2
    }

    pub fn big_l(&self) -> f64 {
        self.n_spins as f64 / 2.0
    }

    pub fn qubit1(&self) -> SingleQubitParams {
        SingleQubitParams { n_spins: self.n_spins, omega1: self.omega1, g1: self.g1, g1p: self.g1p }
    }

    pub fn qubit2(&self) -> SingleQubitParams {
        SingleQubitParams { n_spins: self.n_spins, omega1: self.omega2, g1: self.g2, g1p: self.g2p }
    }

    /// Default integrator step cap, `0.05 / max(|g1|, |g2|, |J|, 1)`.
    pub fn default_max_step(&self) -> f64 {
        0.05 / self.g1.abs().max(self.g2.abs()).max(self.j.abs()).max(1.0)
    }
}

/// Amplitudes `A_{s1 s2}` in the order {uu, ud, du, dd}.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoQubitState {
    pub amps: [C64; 4],
}

impl TwoQubitState {
    pub fn new(amps: [C64; 4]) -> Result<Self> {
        let norm_sq: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > 1e-12 {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(TwoQubitState { amps })
    }

    pub fn product(q1: &QubitState, q2: &QubitState) -> Self {
        TwoQubitState { amps: [q1.up * q2.up, q1.up * q2.down, q1.down * q2.up, q1.down * q2.down] }
    }

    pub fn up_up() -> Self {
        Self::product(&QubitState::spin_up(), &QubitState::spin_up())
    }

    /// `(|ud> + |du>) / sqrt 2`.
    pub fn bell() -> Self {
        let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        TwoQubitState { amps: [ZERO, h, h, ZERO] }
    }

    pub fn density(&self) -> DensityMatrix {
        DensityMatrix::pure(&self.amps)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Picture {
    Interaction,
    Schrodinger,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TwoQubitAmplitudes {
    pub t: f64,
    pub picture: Picture,
    /// `g[c][n]`, configuration `c` in {uu, ud, du, dd}, excitation `n`.
    pub g: [Vec<C64>; 4],
}

impl TwoQubitAmplitudes {
    fn from_flat(t: f64, picture: Picture, flat: &[C64], n_spins: usize) -> Self {
        let w = n_spins + 1;
        let g = std::array::from_fn(|c| flat[c * w..(c + 1) * w].to_vec());
        TwoQubitAmplitudes { t, picture, g }
    }

    pub fn to_flat(&self) -> Vec<C64> {
        self.g.iter().flatten().copied().collect()
    }

    pub fn n_spins(&self) -> usize {
        self.g[0].len() - 1
    }

    pub fn norm_sqr(&self) -> f64 {
        self.g.iter().flatten().map(|z| z.norm_sqr()).sum()
    }

    /// Norm of every magnetization row `{uu(n-1), ud(n), du(n), dd(n+1)}`
    /// for `n = -1..=N+1`, returned at index `n + 1`.
    pub fn sector_norms(&self) -> Vec<f64> {
        let n_spins = self.n_spins() as i64;
        let get = |c: usize, n: i64| -> f64 {
            if n < 0 || n > n_spins {
                0.0
            } else {
                self.g[c][n as usize].norm_sqr()
            }
        };
        (-1..=n_spins + 1).map(|n| get(UU, n - 1) + get(UD, n) + get(DU, n) + get(DD, n + 1)).collect()
    }

    /// `<S1z + S2z + Lz>`; identical in both pictures.
    pub fn magnetization(&self) -> f64 {
        let l = self.n_spins() as f64 / 2.0;
        let mut m = 0.0;
        for (c, &(v1, v2)) in SIGNS.iter().enumerate() {
            for (n, z) in self.g[c].iter().enumerate() {
                m += z.norm_sqr() * (0.5 * (v1 + v2) + n as f64 - l);
            }
        }
        m
    }

    /// Largest elementwise amplitude difference.
    pub fn max_abs_diff(&self, other: &TwoQubitAmplitudes) -> f64 {
        self.g.iter().flatten().zip(other.g.iter().flatten()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

/// Initial amplitudes `G[c][n](0) = A_c gamma_{N-n}`.
pub fn initial_amplitudes(q0: &TwoQubitState, bath0: &BathState) -> TwoQubitAmplitudes {
    let n_spins = bath0.n_spins();
    let g = std::array::from_fn(|c| (0..=n_spins).map(|n| q0.amps[c] * bath0.gamma_for_excitation(n as i64)).collect());
    TwoQubitAmplitudes { t: 0.0, picture: Picture::Interaction, g }
}

/// Angles `theta(n) = offset + slope * n` of the five couplings in row `n`,
/// ordered as uu-ud, uu-du, ud-du, ud-dd, du-dd.
struct RowAngles {
    offset: [f64; 5],
    slope: [f64; 5],
    strength: [f64; 5],
}

impl RowAngles {
    fn new(p: &TwoQubitParams) -> Self {
        let l = p.big_l();
        let (g12p, w12) = (p.g12p(), p.omega12());
        let (w1, w2, jp) = (p.omega1, p.omega2, p.jp);
        RowAngles {
            offset: [
                w2 - g12p + jp - 2.0 * p.g2p * (l + 1.0),
                g12p + w1 + jp - 2.0 * p.g1p * (l + 1.0),
                w12 - 2.0 * g12p * l,
                -g12p + w1 - jp + 2.0 * p.g1p * (1.0 - l),
                g12p + w2 - jp + 2.0 * p.g2p * (1.0 - l),
            ],
            slope: [2.0 * p.g2p, 2.0 * p.g1p, 2.0 * (p.g1p - p.g2p), 2.0 * p.g1p, 2.0 * p.g2p],
            strength: [p.g2, p.g1, p.j, p.g1, p.g2],
        }
    }
}

fn coupling(n_spins: usize, n: usize) -> f64 {
    ((n * (n_spins + 1 - n)) as f64).sqrt()
}

/// Right-hand side of one row given its five couplings; `y` and `dy` hold
/// `[uu(n-1), ud(n), du(n), dd(n+1)]`.
#[inline]
fn row_update(e: &[C64; 5], y: [C64; 4]) -> [C64; 4] {
    let [e_a, e_b, e_c, e_d, e_e] = *e;
    let [uu, ud, du, dd] = y;
    let h = [
        ud * e_a + du * e_b,
        du * e_c + uu * e_a.conj() + dd * e_d,
        ud * e_c.conj() + uu * e_b.conj() + dd * e_e,
        ud * e_d.conj() + du * e_e.conj(),
    ];
    // i dG/dt = h  =>  dG/dt = -i h
    h.map(|z| C64::new(z.im, -z.re))
}

/// Interaction-picture time derivative of the flat amplitude vector
/// (`4 (N + 1)` entries, configuration-major).
pub fn eom_rhs(params: &TwoQubitParams, t: f64, y: &[C64], dy: &mut [C64]) {
    let n_spins = params.n_spins;
    let w = n_spins + 1;
    assert_eq!(y.len(), 4 * w, "amplitude vector has the wrong length");
    assert_eq!(dy.len(), 4 * w, "derivative vector has the wrong length");
    let idx = |c: usize, n: usize| c * w + n;
    let angles = RowAngles::new(params);

    dy.iter_mut().for_each(|z| *z = ZERO);

    // Each row multiplies the n = 0 couplings by running powers of
    // exp(i slope t).
    let mut e: [C64; 5] = std::array::from_fn(|k| C64::from_polar(angles.strength[k], angles.offset[k] * t));
    let step: [C64; 5] = std::array::from_fn(|k| C64::from_polar(1.0, angles.slope[k] * t));

    for n in 0..=n_spins {
        let (x_lo, x_hi) = (coupling(n_spins, n), coupling(n_spins, n + 1));
        let row_e = [e[0] * x_lo, e[1] * x_lo, e[2], e[3] * x_hi, e[4] * x_hi];
        for k in 0..5 {
            e[k] *= step[k];
        }
        let uu = if n >= 1 { y[idx(UU, n - 1)] } else { ZERO };
        let dd = if n < n_spins { y[idx(DD, n + 1)] } else { ZERO };
        let d = row_update(&row_e, [uu, y[idx(UD, n)], y[idx(DU, n)], dd]);
        dy[idx(UD, n)] = d[1];
        dy[idx(DU, n)] = d[2];
        if n >= 1 {
            dy[idx(UU, n - 1)] = d[0];
        }
        if n < n_spins {
            dy[idx(DD, n + 1)] = d[3];
        }
    }
}

/// Magnitudes and angular frequencies of the five couplings of one row.
#[derive(Clone, Copy, Debug)]
struct RowSystem {
    magnitude: [f64; 5],
    frequency: [f64; 5],
}

impl RowSystem {
    fn new(params: &TwoQubitParams, angles: &RowAngles, n: usize) -> Self {
        let (x_lo, x_hi) = (coupling(params.n_spins, n), coupling(params.n_spins, n + 1));
        let scale = [x_lo, x_lo, 1.0, x_hi, x_hi];
        RowSystem {
            magnitude: std::array::from_fn(|k| angles.strength[k] * scale[k]),
            frequency: std::array::from_fn(|k| angles.offset[k] + angles.slope[k] * n as f64),
        }
    }

    fn rhs(&self, t: f64, y: &[C64], dy: &mut [C64]) {
        // theta_c = theta_b - theta_a and theta_e = theta_d - theta_c
        let u_a = C64::from_polar(1.0, self.frequency[0] * t);
        let u_b = C64::from_polar(1.0, self.frequency[1] * t);
        let u_d = C64::from_polar(1.0, self.frequency[3] * t);
        let u_c = u_b * u_a.conj();
        let u_e = u_d * u_c.conj();
        let m = &self.magnitude;
        let e = [u_a * m[0], u_b * m[1], u_c * m[2], u_d * m[3], u_e * m[4]];
        dy.copy_from_slice(&row_update(&e, [y[0], y[1], y[2], y[3]]));
    }
}

/// Interaction-picture derivative of the single row `n` (`0 <= n <= N`),
/// laid out as `[uu(n-1), ud(n), du(n), dd(n+1)]`; entries outside the
/// basis must be zero and stay zero.
pub fn row_rhs(params: &TwoQubitParams, n: usize, t: f64, y: &[C64], dy: &mut [C64]) {
    RowSystem::new(params, &RowAngles::new(params), n).rhs(t, y, dy);
}

fn check_inputs(params: &TwoQubitParams, bath0: &BathState, t_grid: &[f64]) -> Result<()> {
    params.validate()?;
    if bath0.n_spins() != params.n_spins {
        return Err(Error::InvalidArgument(format!(
            "bath has {} spins but the model expects {}",
            bath0.n_spins(),
            params.n_spins
        )));
    }
    match t_grid.first() {
        Some(&t0) if t0 == 0.0 => Ok(()),
        _ => Err(Error::InvalidArgument("time grid must start at t = 0".into())),
    }
}

/// How [`integrate_with`] splits the work.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scheme {
    /// One adaptive integration of the whole `4 (N + 1)` vector.
    FullVector,
    /// An independent adaptive integration per row, distributed over rows.
    /// Every row meets the step tolerance on its own, so rows carrying little
    /// weight take long steps.
    Rows(Execution),
}

impl Default for Scheme {
    fn default() -> Self {
        Scheme::Rows(Execution::default())
    }
}

/// Propagates the interaction-picture amplitudes to every time in `t_grid`
/// (which must start at 0) with per-step local error `tol`, the default
/// step cap and row-wise integration.
pub fn integrate(
    params: &TwoQubitParams,
    q0: &TwoQubitState,
    bath0: &BathState,
    t_grid: &[f64],
    tol: f64,
) -> Result<Vec<TwoQubitAmplitudes>> {
    let opts = Dopri5Options { tol, max_step: params.default_max_step(), ..Default::default() };
    integrate_with(params, q0, bath0, t_grid, &opts, Scheme::default()).map(|(out, _)| out)
}

/// [`integrate`] with explicit options and scheme; also returns step counts
/// (summed over rows).
pub fn integrate_with(
    params: &TwoQubitParams,
    q0: &TwoQubitState,
    bath0: &BathState,
    t_grid: &[f64],
    opts: &Dopri5Options,
    scheme: Scheme,
) -> Result<(Vec<TwoQubitAmplitudes>, Stats)> {
    check_inputs(params, bath0, t_grid)?;
    let init = initial_amplitudes(q0, bath0);
    let n_spins = params.n_spins;
    match scheme {
        Scheme::FullVector => {
            let (ys, stats) = ode::integrate(|t, y, dy| eom_rhs(params, t, y, dy), &init.to_flat(), t_grid, opts)?;
            let out = t_grid
                .iter()
                .zip(&ys)
                .map(|(&t, y)| TwoQubitAmplitudes::from_flat(t, Picture::Interaction, y, n_spins))
                .collect();
            Ok((out, stats))
        }
        Scheme::Rows(exec) => {
            let angles = RowAngles::new(params);
            let rows: Vec<usize> = (0..=n_spins).collect();
            let solved = par::try_map(exec, &rows, |&n| {
                let system = RowSystem::new(params, &angles, n);
                let y0 = [
                    if n >= 1 { init.g[UU][n - 1] } else { ZERO },
                    init.g[UD][n],
                    init.g[DU][n],
                    if n < n_spins { init.g[DD][n + 1] } else { ZERO },
                ];
                ode::integrate(|t, y, dy| system.rhs(t, y, dy), &y0, t_grid, opts)
            })?;

            // The rows n = -1 and n = N + 1 hold dd(0) and uu(N) alone and
            // do not move in the interaction picture.
            let mut stats = Stats::default();
            let mut out: Vec<TwoQubitAmplitudes> = t_grid
                .iter()
                .map(|&t| {
                    let mut a = init.clone();
                    a.t = t;
                    a
                })
                .collect();
            for (n, (ys, s)) in solved.into_iter().enumerate() {
                stats.accepted += s.accepted;
                stats.rejected += s.rejected;
                stats.rhs_evals += s.rhs_evals;
                for (a, y) in out.iter_mut().zip(ys) {
                    if n >= 1 {
                        a.g[UU][n - 1] = y[0];
                    }
                    a.g[UD][n] = y[1];
                    a.g[DU][n] = y[2];
                    if n < n_spins {
                        a.g[DD][n + 1] = y[3];
                    }
                }
            }
            Ok((out, stats))
        }
    }
}

/// Applies `exp(-i H0 t)`: a unit-modulus phase per basis state.
pub fn to_schrodinger(amps: &TwoQubitAmplitudes, params: &TwoQubitParams) -> TwoQubitAmplitudes {
    if amps.picture == Picture::Schrodinger {
        return amps.clone();
    }
    let t = amps.t;
    let l = params.big_l();
    let g = std::array::from_fn(|c| {
        let (v1, v2) = SIGNS[c];
        let zeeman = 0.5 * (v1 * params.omega1 + v2 * params.omega2 + params.jp * v1 * v2);
        let ising = params.g1p * v1 + params.g2p * v2;
        amps.g[c]
            .iter()
            .enumerate()
            .map(|(n, z)| z * C64::from_polar(1.0, -(zeeman + ising * (n as f64 - l)) * t))
            .collect()
    });
    TwoQubitAmplitudes { t, picture: Picture::Schrodinger, g }
}

fn require_schrodinger(amps: &TwoQubitAmplitudes) -> Result<()> {
    if amps.picture != Picture::Schrodinger {
        return Err(Error::InvalidArgument(
            "reduced densities need Schrodinger-picture amplitudes (see to_schrodinger)".into(),
        ));
    }
    Ok(())
}

/// Reduced two-qubit state in the basis {uu, ud, du, dd}.
pub fn two_qubit_density(amps: &TwoQubitAmplitudes) -> Result<DensityMatrix> {
    require_schrodinger(amps)?;
    let m = nalgebra::DMatrix::from_fn(4, 4, |a, b| {
        amps.g[a].iter().zip(&amps.g[b]).map(|(x, y)| x * y.conj()).sum::<C64>()
    });
    DensityMatrix::from_matrix_unchecked(m)
}

/// Reduced bath state in the Dicke basis, indexed by down-flip count.
pub fn bath_density_2q(amps: &TwoQubitAmplitudes) -> Result<DensityMatrix> {
    require_schrodinger(amps)?;
    let n_spins = amps.n_spins();
    let m = nalgebra::DMatrix::from_fn(n_spins + 1, n_spins + 1, |n, np| {
        amps.g.iter().map(|gc| gc[n_spins - n] * gc[n_spins - np].conj()).sum::<C64>()
    });
    DensityMatrix::from_matrix_unchecked(m)
}
