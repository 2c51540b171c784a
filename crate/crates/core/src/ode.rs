//! Adaptive Dormand-Prince 5(4) integrator for complex amplitude vectors.
//!
//! A `Complex64` slice is laid out as interleaved (re, im) pairs, so this is
//! the same scheme as integrating the real-imaginary split system. The
//! 5th-order solution is propagated. A step of size `h` over a run of length
//! `T` is accepted when the max-norm of the embedded error estimate is at most
//! `tol * min(1, global_factor * h / T)`: no step exceeds `tol`, and the local
//! errors of the whole run add up to at most `global_factor * tol`.
//! Requested output times are hit exactly by clipping the step, never by
//! interpolation.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dopri5Options {
    /// Per-step absolute local error bound.
    pub tol: f64,
    pub max_step: f64,
    /// Initial trial step; clipped to `max_step`.
    pub first_step: f64,
    /// Upper bound on accepted + rejected steps across the whole run.
    pub max_steps: usize,
    /// Budget for the summed local error, in units of `tol`; `None` switches
    /// to plain per-step control.
    pub global_factor: Option<f64>,
}

impl Default for Dopri5Options {
    fn default() -> Self {
        Dopri5Options { tol: 1e-9, max_step: 0.05, first_step: 1e-3, max_steps: 50_000_000, global_factor: Some(10.0) }
    }
}

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;

// 5th minus 4th order weights
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

const SAFETY: f64 = 0.9;
const MIN_FACTOR: f64 = 0.2;
const MAX_FACTOR: f64 = 5.0;

/// Run statistics.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    pub accepted: usize,
    pub rejected: usize,
    pub rhs_evals: usize,
}

/// Integrates `dy/dt = f(t, y)` from `times[0]` and returns the state at every
/// entry of `times` (which must be nondecreasing). The first output is `y0`.
pub fn integrate<F>(mut f: F, y0: &[C64], times: &[f64], opts: &Dopri5Options) -> Result<(Vec<Vec<C64>>, Stats)>
where
    F: FnMut(f64, &[C64], &mut [C64]),
{
    if !(opts.tol > 0.0) || !(opts.max_step > 0.0) {
        return Err(Error::InvalidArgument("tolerance and max step must be positive".into()));
    }
    if times.is_empty() {
        return Ok((Vec::new(), Stats::default()));
    }
    if times.windows(2).any(|w| !(w[1] >= w[0])) {
        return Err(Error::InvalidArgument("output times must be nondecreasing".into()));
    }

    let dim = y0.len();
    let zero = C64::new(0.0, 0.0);
    let mut y = y0.to_vec();
    let mut k1 = vec![zero; dim];
    let mut k2 = vec![zero; dim];
    let mut k3 = vec![zero; dim];
    let mut k4 = vec![zero; dim];
    let mut k5 = vec![zero; dim];
    let mut k6 = vec![zero; dim];
    let mut k7 = vec![zero; dim];
    let mut tmp = vec![zero; dim];
    let mut y_new = vec![zero; dim];

    let mut stats = Stats::default();
    let mut t = times[0];
    f(t, &y, &mut k1);
    stats.rhs_evals += 1;

    let span = times[times.len() - 1] - times[0];
    let threshold = |step: f64| match opts.global_factor {
        Some(k) if span > 0.0 => opts.tol * (k * step / span).min(1.0),
        _ => opts.tol,
    };

    let mut h = opts.first_step.min(opts.max_step);
    let mut out = Vec::with_capacity(times.len());
    out.push(y.clone());

    for &t_out in &times[1..] {
        while t < t_out {
            if stats.accepted + stats.rejected >= opts.max_steps {
                return Err(Error::StepUnderflow { t });
            }
            let remaining = t_out - t;
            let landing = h >= remaining;
            let step = if landing { remaining } else { h };
            if step < 1e-13 * t.abs().max(1.0) && !landing {
                return Err(Error::StepUnderflow { t });
            }

            stage(&mut tmp, &y, [&k1], [A21], step);
            f(t + C2 * step, &tmp, &mut k2);
            stage(&mut tmp, &y, [&k1, &k2], [A31, A32], step);
            f(t + C3 * step, &tmp, &mut k3);
            stage(&mut tmp, &y, [&k1, &k2, &k3], [A41, A42, A43], step);
            f(t + C4 * step, &tmp, &mut k4);
            stage(&mut tmp, &y, [&k1, &k2, &k3, &k4], [A51, A52, A53, A54], step);
            f(t + C5 * step, &tmp, &mut k5);
            stage(&mut tmp, &y, [&k1, &k2, &k3, &k4, &k5], [A61, A62, A63, A64, A65], step);
            f(t + step, &tmp, &mut k6);
            stage(&mut y_new, &y, [&k1, &k3, &k4, &k5, &k6], [A71, A73, A74, A75, A76], step);
            f(t + step, &y_new, &mut k7);
            stats.rhs_evals += 6;

            let err = error_norm([&k1, &k3, &k4, &k5, &k6, &k7], step);

            let bound = threshold(step);
            let factor =
                if err == 0.0 { MAX_FACTOR } else { (SAFETY * (bound / err).powf(0.2)).clamp(MIN_FACTOR, MAX_FACTOR) };

            if err <= bound {
                stats.accepted += 1;
                t = if landing { t_out } else { t + step };
                std::mem::swap(&mut y, &mut y_new);
                std::mem::swap(&mut k1, &mut k7);
                // A clipped landing step says nothing about the natural size.
                if !landing || factor < 1.0 {
                    h = (step * factor).min(opts.max_step);
                }
            } else {
                stats.rejected += 1;
                h = step * factor;
            }
        }
        out.push(y.clone());
    }
    Ok((out, stats))
}

/// `out = y + step * sum_j coef[j] * ks[j]`.
fn stage<const M: usize>(out: &mut [C64], y: &[C64], ks: [&[C64]; M], coef: [f64; M], step: f64) {
    let n = out.len();
    let y = &y[..n];
    let ks = ks.map(|k| &k[..n]);
    for i in 0..n {
        let mut acc = ks[0][i] * coef[0];
        for j in 1..M {
            acc += ks[j][i] * coef[j];
        }
        out[i] = y[i] + acc * step;
    }
}

/// Max-norm of the embedded error estimate.
fn error_norm(ks: [&[C64]; 6], step: f64) -> f64 {
    let n = ks[0].len();
    let ks = ks.map(|k| &k[..n]);
    let coef = [E1, E3, E4, E5, E6, E7];
    let mut err: f64 = 0.0;
    for i in 0..n {
        let mut acc = ks[0][i] * coef[0];
        for j in 1..6 {
            acc += ks[j][i] * coef[j];
        }
        err = err.max(acc.norm_sqr());
    }
    err.sqrt() * step.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_phase() {
        // dy/dt = -i w y  ->  y = exp(-i w t)
        let w = 3.7;
        let times: Vec<f64> = (0..=20).map(|k| 0.5 * k as f64).collect();
        let opts = Dopri5Options { tol: 1e-12, ..Default::default() };
        let (ys, stats) =
            integrate(|_, y, dy| dy[0] = C64::new(0.0, -w) * y[0], &[C64::new(1.0, 0.0)], &times, &opts).unwrap();
        for (t, y) in times.iter().zip(&ys) {
            assert!((y[0] - C64::from_polar(1.0, -w * t)).norm() < 1e-10);
        }
        assert!(stats.accepted > 0);
    }

    #[test]
    fn rabi_two_level() {
        // i dy/dt = [[0, a], [a, 0]] y
        let a = 2.0;
        let opts = Dopri5Options { tol: 1e-11, ..Default::default() };
        let times = [0.0, 1.0, 2.5];
        let (ys, _) = integrate(
            |_, y, dy| {
                dy[0] = C64::new(0.0, -a) * y[1];
                dy[1] = C64::new(0.0, -a) * y[0];
            },
            &[C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
            &times,
            &opts,
        )
        .unwrap();
        for (t, y) in times.iter().zip(&ys) {
            assert!((y[0] - C64::new((a * t).cos(), 0.0)).norm() < 1e-9);
            assert!((y[1] - C64::new(0.0, -(a * t).sin())).norm() < 1e-9);
        }
    }

    #[test]
    fn lands_exactly_and_rejects_bad_grid() {
        let opts = Dopri5Options::default();
        let (ys, _) =
            integrate(|_, _, dy| dy[0] = C64::new(1.0, 0.0), &[C64::new(0.0, 0.0)], &[0.0, 0.3], &opts).unwrap();
        assert!((ys[1][0].re - 0.3).abs() < 1e-14);
        assert!(integrate(|_, _, _| {}, &[C64::new(0.0, 0.0)], &[0.0, 1.0, 0.5], &opts).is_err());
        let (single, _) = integrate(|_, _, _| {}, &[C64::new(2.0, 1.0)], &[0.0], &opts).unwrap();
        assert_eq!(single, vec![vec![C64::new(2.0, 1.0)]]);
    }

    #[test]
    fn step_budget_exhaustion_reports_time() {
        let opts = Dopri5Options { max_steps: 10, max_step: 1e-3, ..Default::default() };
        let r = integrate(|_, _, dy| dy[0] = C64::new(1.0, 0.0), &[C64::new(0.0, 0.0)], &[0.0, 1.0], &opts);
        assert!(matches!(r, Err(Error::StepUnderflow { .. })));
    }
}
