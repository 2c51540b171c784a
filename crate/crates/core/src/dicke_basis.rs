//! Symmetric Dicke states of an N-spin bath and the two-site operator
//! elements needed for pair reduced states.
//!
//! Index conventions are fixed here and nowhere else:
//!
//! * `gamma[m]` is the amplitude of `|m>_D`, the symmetric state with `m`
//!   down-flips relative to the all-up state.
//! * The dynamical modules index amplitudes by the bath excitation `n`, where
//!   `n` labels `|N - n>_D`. Use [`BathState::gamma_for_excitation`] to
//!   translate; never index `gamma` with `N - n` by hand.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Largest `n` for which [`binomial`] is exact in `u64`.
pub const MAX_BINOMIAL_N: u32 = 64;

/// Largest supported bath. Two central qubits plus the bath stay inside the
/// exact binomial range.
pub const MAX_BATH_SPINS: usize = 62;

const NORM_TOL: f64 = 1e-12;

/// Exact binomial coefficient `C(n, k)`, zero when `k < 0` or `k > n`.
pub fn binomial(n: u32, k: i64) -> Result<u64> {
    if n > MAX_BINOMIAL_N {
        return Err(Error::BinomialCapacity { n, max: MAX_BINOMIAL_N });
    }
    if k < 0 || k > n as i64 {
        return Ok(0);
    }
    let k = (k as u64).min(n as u64 - k as u64);
    let mut c: u128 = 1;
    for i in 0..k {
        // C(n, i+1) = C(n, i) (n - i) / (i + 1) is exact at every step.
        c = c * (n as u128 - i as u128) / (i as u128 + 1);
    }
    Ok(c as u64)
}

/// `C(n, k)` as f64 for indices already known to be in range of the table.
fn binom_f(n: usize, k: i64) -> f64 {
    binomial(n as u32, k).expect("bath size checked against MAX_BATH_SPINS") as f64
}

/// A superposition of the `N + 1` symmetric Dicke states.
#[derive(Clone, Debug, PartialEq)]
pub struct BathState {
    gamma: Vec<C64>,
}

impl BathState {
    /// Builds a bath state from `gamma[m]`, `m = 0..=N`. The vector must be
    /// normalized to 1e-12; it is not rescaled.
    pub fn new(gamma: Vec<C64>) -> Result<Self> {
        if gamma.len() < 2 {
            return Err(Error::InvalidArgument("bath needs at least one spin (two amplitudes)".into()));
        }
        let n = gamma.len() - 1;
        if n > MAX_BATH_SPINS {
            return Err(Error::BathCapacity { n, max: MAX_BATH_SPINS });
        }
        let norm_sq: f64 = gamma.iter().map(|g| g.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(BathState { gamma })
    }

    fn check_size(n: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::InvalidArgument("bath needs at least one spin".into()));
        }
        if n > MAX_BATH_SPINS {
            return Err(Error::BathCapacity { n, max: MAX_BATH_SPINS });
        }
        Ok(())
    }

    /// Spin coherent state obtained by rotating the all-up state by `theta`
    /// about y and then `phi` about z. The global phase `exp(i phi N / 2)` is
    /// dropped.
    pub fn spin_coherent(n: usize, theta: f64, phi: f64) -> Result<Self> {
        Self::check_size(n)?;
        if !(0.0..=std::f64::consts::PI).contains(&theta) || !phi.is_finite() {
            return Err(Error::InvalidArgument(format!("spin coherent angle theta = {theta} outside [0, pi]")));
        }
        let mut gamma = vec![C64::new(0.0, 0.0); n + 1];
        if theta == 0.0 {
            gamma[0] = C64::new(1.0, 0.0);
            return Ok(BathState { gamma });
        }
        if theta == std::f64::consts::PI {
            gamma[n] = C64::new(1.0, 0.0);
            return Ok(BathState { gamma });
        }
        // Q_k = z^k sqrt(C(N,k)) / (1+|z|^2)^(N/2), z = cot(theta/2) e^{-i phi},
        // rewritten as cos^k sin^(N-k) to avoid cot at the endpoints.
        let (s, c) = (theta / 2.0).sin_cos();
        for k in 0..=n {
            let modulus = c.powi(k as i32) * s.powi((n - k) as i32) * binom_f(n, k as i64).sqrt();
            // gamma_m = Q_{N-m}
            gamma[n - k] = C64::from_polar(modulus, -(k as f64) * phi);
        }
        normalize(&mut gamma);
        Ok(BathState { gamma })
    }

    /// Equal-weight superposition of all `N + 1` Dicke states.
    pub fn equally_weighted(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument("equally weighted bath needs at least two spins".into()));
        }
        Self::check_size(n)?;
        let amp = C64::new(1.0 / ((n + 1) as f64).sqrt(), 0.0);
        Ok(BathState { gamma: vec![amp; n + 1] })
    }

    /// `gamma_{N-1} |N-1>_D + gamma_N |N>_D`: support on the single-up-spin
    /// (W) and all-down states.
    pub fn w_class(n: usize, gamma_nm1: C64, gamma_n: C64) -> Result<Self> {
        Self::check_size(n)?;
        let norm_sq = gamma_nm1.norm_sqr() + gamma_n.norm_sqr();
        if (norm_sq - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm_sq });
        }
        let mut gamma = vec![C64::new(0.0, 0.0); n + 1];
        gamma[n - 1] = gamma_nm1;
        gamma[n] = gamma_n;
        Ok(BathState { gamma })
    }

    /// The single Dicke state `|m>_D`.
    pub fn fully_polarized(n: usize, m: usize) -> Result<Self> {
        Self::check_size(n)?;
        if m > n {
            return Err(Error::InvalidArgument(format!("Dicke index {m} out of range for {n} spins")));
        }
        let mut gamma = vec![C64::new(0.0, 0.0); n + 1];
        gamma[m] = C64::new(1.0, 0.0);
        Ok(BathState { gamma })
    }

    pub fn n_spins(&self) -> usize {
        self.gamma.len() - 1
    }

    /// `gamma[m]` indexed by down-flip count.
    pub fn amplitudes(&self) -> &[C64] {
        &self.gamma
    }

    /// `gamma_m`, zero outside `0..=N`.
    pub fn gamma(&self, m: i64) -> C64 {
        if m < 0 || m as usize >= self.gamma.len() {
            C64::new(0.0, 0.0)
        } else {
            self.gamma[m as usize]
        }
    }

    /// Amplitude of `|N - n>_D`, i.e. `gamma_{N-n}`; zero outside `0..=N`.
    /// For a spin coherent state this is `Q_n`.
    pub fn gamma_for_excitation(&self, n: i64) -> C64 {
        self.gamma(self.n_spins() as i64 - n)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.gamma.iter().map(|g| g.norm_sqr()).sum()
    }
}

fn normalize(v: &mut [C64]) {
    let norm = v.iter().map(|g| g.norm_sqr()).sum::<f64>().sqrt();
    for g in v.iter_mut() {
        *g /= norm;
    }
}

/// Nonzero Dicke-basis matrix elements of two-site operators on bath spins 1
/// and 2, indexed by the down-flip count `m` of the ket.
///
/// Operator aliases (all values exact binomial ratios):
///
/// | field | operators |
/// |---|---|
/// | `up_up[m]` | `<m\|T1+T1-T2+T2-\|m>` |
/// | `mixed[m]` | `<m\|T1+T1-T2-T2+\|m>` = `<m\|T1-T1+T2+T2-\|m>` = `<m\|T1-T2+\|m>` |
/// | `down_down[m]` | `<m\|T1-T1+T2-T2+\|m>` |
/// | `step_up[m]` | `<m+1\|T1+T1-T2-\|m>` = `<m+1\|T1-T2+T2-\|m>` |
/// | `step_down[m]` | `<m+1\|T1-T2-T2+\|m>` = `<m+1\|T1-T1+T2-\|m>` |
/// | `double_step[m]` | `<m+2\|T1-T2-\|m>` |
#[derive(Clone, Debug, PartialEq)]
pub struct PairElementTable {
    n_spins: usize,
    pub up_up: Vec<f64>,
    pub mixed: Vec<f64>,
    pub down_down: Vec<f64>,
    pub step_up: Vec<f64>,
    pub step_down: Vec<f64>,
    pub double_step: Vec<f64>,
}

impl PairElementTable {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument("pair elements need at least two bath spins".into()));
        }
        if n > MAX_BATH_SPINS {
            return Err(Error::BathCapacity { n, max: MAX_BATH_SPINS });
        }
        let c = |k: i64| binom_f(n, k);
        let r = |k: i64| binom_f(n - 2, k);
        let mut t = PairElementTable {
            n_spins: n,
            up_up: vec![0.0; n + 1],
            mixed: vec![0.0; n + 1],
            down_down: vec![0.0; n + 1],
            step_up: vec![0.0; n + 1],
            step_down: vec![0.0; n + 1],
            double_step: vec![0.0; n + 1],
        };
        for m in 0..=n as i64 {
            let i = m as usize;
            let cm = c(m);
            t.up_up[i] = r(m) / cm;
            t.mixed[i] = r(m - 1) / cm;
            t.down_down[i] = r(m - 2) / cm;
            let c1 = c(m + 1);
            if c1 > 0.0 {
                let d = (c1 * cm).sqrt();
                t.step_up[i] = r(m) / d;
                t.step_down[i] = r(m - 1) / d;
            }
            let c2 = c(m + 2);
            if c2 > 0.0 {
                t.double_step[i] = r(m) / (c2 * cm).sqrt();
            }
        }
        Ok(t)
    }

    pub fn n_spins(&self) -> usize {
        self.n_spins
    }

    /// `<m|T1- T2+|m>`; shares storage with [`PairElementTable::mixed`].
    pub fn flip_flop(&self, m: usize) -> f64 {
        self.mixed[m]
    }
}
