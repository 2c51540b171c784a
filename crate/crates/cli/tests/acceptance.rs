//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::f64::consts::PI;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use central_spin::ode::Dopri5Options;
use central_spin::oracle::{self, FullModel, Propagator};
use central_spin::{
    individual_baths, intrabath, measures, single_qubit, two_qubit, BathState, DensityMatrix, Execution,
    PairElementTable, QubitState, SingleQubitParams, TwoQubitParams, TwoQubitState, C64,
};
use central_spin_cli::{presets, run, TimeSeries};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn within(elapsed: Duration, limit_s: f64) -> bool {
    elapsed.as_secs_f64() < limit_s
}

fn max_diff(a: &[C64], b: &[C64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn random_qubit(rng: &mut StdRng) -> QubitState {
    let theta: f64 = rng.random_range(0.0..PI);
    let phi: f64 = rng.random_range(0.0..2.0 * PI);
    QubitState::new(C64::new((theta / 2.0).cos(), 0.0), C64::from_polar((theta / 2.0).sin(), phi)).unwrap()
}

fn random_pair(rng: &mut StdRng) -> TwoQubitState {
    let raw: [C64; 4] = std::array::from_fn(|_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
    let norm = raw.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    TwoQubitState::new(raw.map(|z| z / norm)).unwrap()
}

fn random_bath(rng: &mut StdRng, n: usize) -> BathState {
    BathState::spin_coherent(n, rng.random_range(0.05..3.1), rng.random_range(-PI..PI)).unwrap()
}

fn random_single(rng: &mut StdRng, n: usize) -> SingleQubitParams {
    SingleQubitParams::new(n, rng.random_range(-1.0..1.0), 1.0, rng.random_range(-1.0..1.0)).unwrap()
}

fn random_two(rng: &mut StdRng, n: usize) -> TwoQubitParams {
    TwoQubitParams {
        n_spins: n,
        omega1: rng.random_range(-1.0..1.0),
        omega2: rng.random_range(-1.0..1.0),
        j: rng.random_range(-1.0..1.0),
        jp: rng.random_range(-1.0..1.0),
        g1: 1.0,
        g2: rng.random_range(0.5..1.5),
        g1p: rng.random_range(-1.0..1.0),
        g2p: rng.random_range(-1.0..1.0),
    }
}

fn column(s: &TimeSeries, name: &str) -> Vec<f64> {
    s.column(name).unwrap_or_else(|| panic!("missing column {name}"))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(1);
    let times: Vec<f64> = (0..=200).map(|k| 0.5 * k as f64).collect();
    let opts = Dopri5Options { tol: 5e-12, global_factor: None, ..Default::default() };
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let p = random_single(&mut rng, 60);
        let (q, b) = (random_qubit(&mut rng), random_bath(&mut rng, 60));
        let rk = oracle::single_qubit_rk(&p, &q, &b, &times, &opts).map_err(|e| e.to_string())?;
        let exact = single_qubit::sweep(Execution::Parallel, &p, &q, &b, &times).map_err(|e| e.to_string())?;
        for (r, e) in rk.iter().zip(&exact) {
            worst = worst.max(max_diff(&r.f_up, &e.f_up)).max(max_diff(&r.f_down, &e.f_down));
        }
    }
    let el = start.elapsed();
    check(worst <= 1e-8 && within(el, 10.0), format!("max amplitude error {worst:.2e} (<= 1e-8), {el:.2?} (< 10 s)"))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(2);
    let grid: Vec<f64> = (0..=100).map(|k| 0.5 * k as f64).collect();
    let mut worst: f64 = 0.0;
    for _ in 0..5 {
        let p = random_two(&mut rng, 20);
        let (q, b) = (random_pair(&mut rng), random_bath(&mut rng, 20));
        let sector = oracle::build_sector(&p, 2).map_err(|e| e.to_string())?;
        let prop = Propagator::new(&sector.h);
        let init = two_qubit::to_schrodinger(&two_qubit::initial_amplitudes(&q, &b), &p);
        let v0 = sector.pack(&init.g);
        let out = two_qubit::integrate(&p, &q, &b, &grid, 1e-9).map_err(|e| e.to_string())?;
        for a in &out {
            let v = sector.pack(&two_qubit::to_schrodinger(a, &p).g);
            worst = worst.max(max_diff(&v, &prop.propagate(&v0, a.t)));
        }
    }
    let el = start.elapsed();
    check(worst <= 1e-7 && within(el, 30.0), format!("max amplitude error {worst:.2e} (<= 1e-7), {el:.2?} (< 30 s)"))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(3);
    let n = 4;
    let mut worst: f64 = 0.0;
    let by_excitation =
        |c: Vec<Vec<C64>>| -> Vec<Vec<C64>> { c.into_iter().map(|v| v.into_iter().rev().collect()).collect() };
    let times: Vec<f64> = (0..20).map(|_| rng.random_range(0.0..50.0)).collect();

    // one qubit: 2^5 product states against the closed form and the pair table
    let p = random_single(&mut rng, n);
    let (q, b) = (random_qubit(&mut rng), random_bath(&mut rng, n));
    let full = oracle::build_full(&FullModel::Single(p)).map_err(|e| e.to_string())?;
    let prop = Propagator::new(&full.h);
    let psi0 = oracle::kron(&[&[q.up, q.down], &oracle::embed_bath(&b).map_err(|e| e.to_string())?]);
    for &t in &times {
        let psi = prop.propagate(&psi0, t);
        let comps = by_excitation(oracle::dicke_components(&psi, 2, n).map_err(|e| e.to_string())?);
        let tab = single_qubit::evolve(&p, &q, &b, t).map_err(|e| e.to_string())?;
        worst = worst.max(max_diff(&comps[0], &tab.f_up)).max(max_diff(&comps[1], &tab.f_down));
        let rho_bath = DensityMatrix::pure(&psi).trace_out_first(2, 1 << n).map_err(|e| e.to_string())?;
        let pair = rho_bath.trace_out_second(4, 1 << (n - 2)).map_err(|e| e.to_string())?;
        let fast = intrabath::from_single_qubit(&tab).map_err(|e| e.to_string())?;
        worst = worst.max(fast.chi.max_abs_diff(&pair));
    }
    let table = PairElementTable::new(n).map_err(|e| e.to_string())?;
    let brute = oracle::pair_elements_bruteforce(n).map_err(|e| e.to_string())?;
    for (x, y) in [
        (&table.up_up, &brute.up_up),
        (&table.mixed, &brute.mixed),
        (&table.down_down, &brute.down_down),
        (&table.step_up, &brute.step_up),
        (&table.step_down, &brute.step_down),
        (&table.double_step, &brute.double_step),
    ] {
        worst = worst.max(x.iter().zip(y.iter()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max));
    }

    // two qubits: 2^6 product states against the sector propagation and the integrator
    let p = random_two(&mut rng, n);
    let (q, b) = (random_pair(&mut rng), random_bath(&mut rng, n));
    let full = oracle::build_full(&FullModel::Common(p)).map_err(|e| e.to_string())?;
    let prop = Propagator::new(&full.h);
    let sector = oracle::build_sector(&p, 2).map_err(|e| e.to_string())?;
    let sector_prop = Propagator::new(&sector.h);
    let psi0 = oracle::kron(&[&q.amps, &oracle::embed_bath(&b).map_err(|e| e.to_string())?]);
    let v0 = sector.pack(&two_qubit::to_schrodinger(&two_qubit::initial_amplitudes(&q, &b), &p).g);
    let mut grid = times.clone();
    grid.push(0.0);
    grid.sort_by(f64::total_cmp);
    let out = two_qubit::integrate(&p, &q, &b, &grid, 1e-12).map_err(|e| e.to_string())?;
    for a in &out {
        let comps =
            by_excitation(oracle::dicke_components(&prop.propagate(&psi0, a.t), 4, n).map_err(|e| e.to_string())?);
        let packed = sector.pack(&comps);
        worst = worst.max(max_diff(&packed, &sector_prop.propagate(&v0, a.t)));
        worst = worst.max(max_diff(&packed, &sector.pack(&two_qubit::to_schrodinger(a, &p).g)));
    }
    let el = start.elapsed();
    check(worst <= 1e-9 && within(el, 5.0), format!("max deviation {worst:.2e} (<= 1e-9), {el:.2?} (< 5 s)"))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let s = run(&presets::preset("fig2c").map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let (t, p, sx, sy) = (column(&s, "t"), column(&s, "purity"), column(&s, "Sx"), column(&s, "Sy"));
    let peaks: Vec<usize> =
        (1..t.len() - 1).filter(|&i| (1.9..=2.4).contains(&t[i]) && p[i] > p[i - 1] && p[i] >= p[i + 1]).collect();
    let el = start.elapsed();
    let Some(&i) = peaks.iter().max_by(|&&a, &&b| p[a].total_cmp(&p[b])) else {
        return Err(format!("no local purity maximum in [1.9, 2.4], {el:.2?}"));
    };
    check(
        p[i] > 0.8 && sx[i].abs() < 0.05 && sy[i] < -0.3 && within(el, 5.0),
        format!("peak at t = {:.3}: P = {:.3}, Sx = {:.2e}, Sy = {:.3}, {el:.2?} (< 5 s)", t[i], p[i], sx[i], sy[i]),
    )
}

/// Index of the largest value in the first excursion above `high` after the
/// signal first drops below `low`.
fn first_revival(y: &[f64], low: f64, high: f64) -> Option<usize> {
    let dip = y.iter().position(|&v| v < low)?;
    let start = (dip..y.len()).find(|&i| y[i] > high)?;
    let end = (start..y.len()).find(|&i| y[i] <= high).unwrap_or(y.len());
    (start..end).max_by(|&a, &b| y[a].total_cmp(&y[b]))
}

/// Longest run of exact zeros, as `(first index, one past the last)`.
fn longest_zero_run(y: &[f64]) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    let mut i = 0;
    while i < y.len() {
        if y[i] == 0.0 {
            let s = i;
            while i < y.len() && y[i] == 0.0 {
                i += 1;
            }
            if best.is_none_or(|(a, b)| i - s > b - a) {
                best = Some((s, i));
            }
        } else {
            i += 1;
        }
    }
    best
}

struct BellRevival {
    t: Vec<f64>,
    c: Vec<f64>,
    zero_run: Option<(usize, usize)>,
    peak: Option<usize>,
}

/// Individual-bath Bell state at theta = 5pi/10 (the fig6d preset).
fn bell_revival() -> Result<BellRevival, String> {
    let s = run(&presets::preset("fig6d").map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let (t, c) = (column(&s, "t"), column(&s, "concurrence"));
    let zero_run = longest_zero_run(&c);
    // the revival is the largest concurrence after the dead interval
    let peak = zero_run.and_then(|(_, end)| (end..c.len()).max_by(|&a, &b| c[a].total_cmp(&c[b])));
    Ok(BellRevival { t, c, zero_run, peak })
}

fn criterion_5(bell: &BellRevival, bell_time: Duration) -> Outcome {
    let start = Instant::now();
    let s = run(&presets::preset("fig4d").map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let (t, p) = (column(&s, "t"), column(&s, "purity"));
    let el = start.elapsed() + bell_time;
    let Some(i) = first_revival(&p, 0.75, 0.9) else {
        return Err("no purity revival found".into());
    };
    let Some(k) = bell.peak else {
        return Err("no concurrence revival found".into());
    };
    let purity_off = t[i] / (30.0 * PI) - 1.0;
    let conc_off = bell.t[k] / (60.0 * PI) - 1.0;
    check(
        purity_off.abs() <= 0.05 && bell.c[k] > 0.8 && conc_off.abs() <= 0.10 && within(el, 180.0),
        format!(
            "purity revival t = {:.2} ({:+.2}% from 30pi, P = {:.3}); Bell concurrence peak {:.4} at t = {:.2} ({:+.2}% from 60pi); {el:.2?} (< 3 min)",
            t[i],
            100.0 * purity_off,
            p[i],
            bell.c[k],
            bell.t[k],
            100.0 * conc_off
        ),
    )
}

fn criterion_6(bell: &BellRevival) -> Outcome {
    let (Some((a, b)), Some(k)) = (bell.zero_run, bell.peak) else {
        return Err("no zero interval or no revival".into());
    };
    let length = bell.t[b - 1] - bell.t[a];
    check(
        b <= k && length >= 5.0,
        format!(
            "C = 0 on [{:.2}, {:.2}] (length {length:.2} >= 5), revival at t = {:.2}",
            bell.t[a],
            bell.t[b - 1],
            bell.t[k]
        ),
    )
}

fn criterion_7() -> Outcome {
    let p = SingleQubitParams::new(60, 0.0, 1.0, 1.0).map_err(|e| e.to_string())?;
    let rabi = single_qubit::spectral(&p).rabi;
    let spread = rabi.iter().cloned().fold(f64::MIN, f64::max) - rabi.iter().cloned().fold(f64::MAX, f64::min);

    let s = run(&presets::preset("fig9").map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let (t, r) = (column(&s, "t"), column(&s, "reduced_concurrence"));
    let top = r.iter().cloned().fold(f64::MIN, f64::max);
    let peaks: Vec<f64> =
        (1..r.len() - 1).filter(|&i| r[i] > r[i - 1] && r[i] >= r[i + 1] && r[i] > 0.99 * top).map(|i| t[i]).collect();
    if peaks.len() < 3 {
        return Err(format!("only {} oscillation maxima found", peaks.len()));
    }
    let period = (peaks[peaks.len() - 1] - peaks[0]) / (peaks.len() - 1) as f64;
    let expected = 2.0 * PI / 61.0;
    let off = period / expected - 1.0;
    let worst_gap = peaks.windows(2).map(|w| (w[1] - w[0] - expected).abs() / expected).fold(0.0, f64::max);
    check(
        spread <= 1e-12 && off.abs() <= 0.01 && worst_gap <= 0.05,
        format!(
            "A_n spread {spread:.1e}; mean period {period:.5} over {} maxima vs 2pi/61 = {expected:.5} ({:+.3}%); worst single gap {:.2}%",
            peaks.len(),
            100.0 * off,
            100.0 * worst_gap
        ),
    )
}

fn criterion_8() -> Outcome {
    let mut worst: f64 = 0.0;
    for n in [4, 20, 60] {
        for (w, phase) in [(0.5, 0.0), (0.36, 1.1), (0.9, -2.3)] {
            let g1 = C64::from_polar(f64::sqrt(w), phase);
            let g2 = C64::from_polar(f64::sqrt(1.0 - w), 0.4);
            let b = BathState::w_class(n, g1, g2).map_err(|e| e.to_string())?;
            let chi = intrabath::pair_density(&DensityMatrix::pure(b.amplitudes())).map_err(|e| e.to_string())?;
            let c = chi.concurrence().map_err(|e| e.to_string())?;
            worst = worst.max((c - 2.0 * w / n as f64).abs());
        }
    }
    check(worst <= 1e-12, format!("max |C12(0) - 2|gamma_(N-1)|^2/N| = {worst:.1e} over 9 cases"))
}

fn criterion_9() -> Outcome {
    let mut rng = StdRng::seed_from_u64(9);
    let (mut defect, mut mismatch): (f64, f64) = (0.0, 0.0);
    for _ in 0..20 {
        let n = rng.random_range(1..=60);
        let p = random_single(&mut rng, n);
        let b = random_bath(&mut rng, n);
        let t = rng.random_range(0.0..100.0);
        let ch = single_qubit::channel(&p, &b, t).map_err(|e| e.to_string())?;
        defect = defect.max(ch.trace_defect());
        let q = random_qubit(&mut rng);
        let direct = single_qubit::qubit_density(&single_qubit::evolve(&p, &q, &b, t).map_err(|e| e.to_string())?);
        mismatch = mismatch.max(ch.apply(&q.density()).max_abs_diff(&direct));
    }
    check(
        defect <= 1e-10 && mismatch <= 1e-10,
        format!("trace defect {defect:.1e}, channel vs direct evolution {mismatch:.1e} on 20 random pure states"),
    )
}

fn is_state(rho: &DensityMatrix, tol: f64) -> bool {
    (rho.trace() - C64::new(1.0, 0.0)).norm() < tol && rho.hermiticity_error() < tol && rho.min_eigenvalue() > -tol
}

fn random_unitary(rng: &mut StdRng) -> nalgebra::DMatrix<C64> {
    let a = nalgebra::DMatrix::from_fn(2, 2, |_, _| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
    a.qr().q()
}

fn criterion_10() -> Outcome {
    let mut rng = StdRng::seed_from_u64(10);
    let mut failures = Vec::new();
    let mut checks = 0usize;
    let mut expect = |ok: bool, what: &str, failures: &mut Vec<String>| {
        checks += 1;
        if !ok {
            failures.push(what.to_string());
        }
    };
    for case in 0..200 {
        // one qubit: norm, row conservation, reduced states, Schmidt symmetry
        let n = rng.random_range(1..=60);
        let p = random_single(&mut rng, n);
        let (q, b) = (random_qubit(&mut rng), random_bath(&mut rng, n));
        let t = rng.random_range(0.0..100.0);
        let (t0, tab) = (single_qubit::evolve(&p, &q, &b, 0.0).unwrap(), single_qubit::evolve(&p, &q, &b, t).unwrap());
        expect((tab.norm_sqr() - 1.0).abs() < 1e-10, "single-qubit norm", &mut failures);
        let row = |x: &single_qubit::SingleAmplitudeTable, k: usize| {
            (if k >= 1 { x.f_up[k - 1].norm_sqr() } else { 0.0 }) + if k <= n { x.f_down[k].norm_sqr() } else { 0.0 }
        };
        expect(
            (0..=n + 1).all(|k| (row(&tab, k) - row(&t0, k)).abs() < 1e-10),
            "single-qubit sector norms",
            &mut failures,
        );
        let rho = single_qubit::qubit_density(&tab);
        let rho_b = single_qubit::bath_density(&tab);
        expect(is_state(&rho, 1e-10) && is_state(&rho_b, 1e-10), "single-qubit reduced states", &mut failures);
        let (s_q, s_b) = (measures::von_neumann_entropy(&rho).unwrap(), measures::von_neumann_entropy(&rho_b).unwrap());
        expect((s_q - s_b).abs() < 1e-8, "Schmidt symmetry (qubit vs bath entropy)", &mut failures);

        // individual baths: joint state validity and local-unitary invariance
        let joint =
            individual_baths::JointInitialState::new(random_pair(&mut rng).density(), b.clone(), b.clone(), p, p)
                .unwrap();
        let rho2 = individual_baths::compose(&joint, t).unwrap();
        expect(is_state(&rho2, 1e-9), "individual-bath state", &mut failures);
        let u = random_unitary(&mut rng).kronecker(&random_unitary(&mut rng));
        let (c, c_u) = (measures::concurrence(&rho2).unwrap(), measures::concurrence(&rho2.conjugate_by(&u)).unwrap());
        expect((c - c_u).abs() < 1e-9, "local-unitary invariance of concurrence", &mut failures);

        // common bath: norm, sector norms, magnetization, reduced states
        if case % 4 == 0 {
            let n = rng.random_range(1..=16);
            let p2 = random_two(&mut rng, n);
            let (q2, b2) = (random_pair(&mut rng), random_bath(&mut rng, n));
            let tol = 1e-9;
            let grid: Vec<f64> = (0..=5).map(|k| 4.0 * k as f64).collect();
            let out = two_qubit::integrate(&p2, &q2, &b2, &grid, tol).unwrap();
            let (sec0, m0) = (out[0].sector_norms(), out[0].magnetization());
            for a in &out {
                expect((a.norm_sqr() - 1.0).abs() <= 100.0 * tol, "two-qubit norm drift", &mut failures);
                expect(
                    a.sector_norms().iter().zip(&sec0).all(|(x, y)| (x - y).abs() <= 100.0 * tol),
                    "two-qubit sector norms",
                    &mut failures,
                );
                expect((a.magnetization() - m0).abs() <= 100.0 * tol * n as f64, "magnetization", &mut failures);
                let s = two_qubit::to_schrodinger(a, &p2);
                let (r, rb) = (two_qubit::two_qubit_density(&s).unwrap(), two_qubit::bath_density_2q(&s).unwrap());
                expect(is_state(&r, 1e-8) && is_state(&rb, 1e-8), "two-qubit reduced states", &mut failures);
                let gap = measures::von_neumann_entropy(&r).unwrap() - measures::von_neumann_entropy(&rb).unwrap();
                expect(gap.abs() < 1e-7, "Schmidt symmetry (qubits vs bath entropy)", &mut failures);
            }
        }
    }
    failures.sort();
    failures.dedup();
    check(failures.is_empty(), format!("{checks} randomized checks, failing properties: {failures:?}"))
}

fn criterion_11() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let names = presets::list_presets();
    let mut differing = Vec::new();
    let mut slowest = (String::new(), Duration::ZERO);
    for name in &names {
        let mut outputs = Vec::new();
        for attempt in 0..2 {
            let path = dir.path().join(format!("{name}-{attempt}.csv"));
            let start = Instant::now();
            let status = Command::new(env!("CARGO_BIN_EXE_csm"))
                .args(["preset", name, "--out"])
                .arg(&path)
                .status()
                .map_err(|e| e.to_string())?;
            let el = start.elapsed();
            if !status.success() {
                return Err(format!("preset {name} failed"));
            }
            if el > slowest.1 {
                slowest = (name.clone(), el);
            }
            outputs.push(std::fs::read(&path).map_err(|e| e.to_string())?);
        }
        if outputs[0] != outputs[1] {
            differing.push(name.clone());
        }
    }
    check(
        differing.is_empty(),
        format!(
            "{} presets run twice, differing: {differing:?}; slowest single run {} in {:.2?}",
            names.len(),
            slowest.0,
            slowest.1
        ),
    )
}

fn main() -> ExitCode {
    let mut failed = 0;
    let mut report = |id: usize, title: &str, outcome: Outcome, elapsed: Duration| {
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("{tag} [{id:>2}] {title}: {detail} [{elapsed:.2?}]");
    };
    let timed = |f: &dyn Fn() -> Outcome| {
        let start = Instant::now();
        let out = f();
        (out, start.elapsed())
    };

    let (o, e) = timed(&criterion_1);
    report(1, "closed form vs independent integration", o, e);
    let (o, e) = timed(&criterion_2);
    report(2, "common-bath integration vs sector propagation", o, e);
    let (o, e) = timed(&criterion_3);
    report(3, "full product space vs Dicke sector", o, e);
    let (o, e) = timed(&criterion_4);
    report(4, "collapse and revival, fig2c", o, e);

    let start = Instant::now();
    let bell = bell_revival();
    let bell_time = start.elapsed();
    match &bell {
        Ok(bell) => {
            let (o, e) = timed(&|| criterion_5(bell, bell_time));
            report(5, "XXX revival times", o, e + bell_time);
            let (o, e) = timed(&|| criterion_6(bell));
            report(6, "entanglement sudden death before revival", o, e);
        }
        Err(msg) => {
            report(5, "XXX revival times", Err(msg.clone()), bell_time);
            report(6, "entanglement sudden death before revival", Err(msg.clone()), Duration::ZERO);
        }
    }

    let (o, e) = timed(&criterion_7);
    report(7, "constant Rabi frequency", o, e);
    let (o, e) = timed(&criterion_8);
    report(8, "W-class initial concurrence", o, e);
    let (o, e) = timed(&criterion_9);
    report(9, "channel validity", o, e);
    let (o, e) = timed(&criterion_10);
    report(10, "property suite", o, e);
    let (o, e) = timed(&criterion_11);
    report(11, "preset determinism", o, e);

    if failed == 0 {
        println!("all 11 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
