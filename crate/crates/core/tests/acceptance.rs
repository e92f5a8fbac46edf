//! Acceptance gate. Prints one PASS/FAIL line per criterion; run with
//! `cargo test -p qcorr-core --test acceptance -- --nocapture`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_8, PI};
use std::time::{Duration, Instant};

use qcorr::channels::{analytic_evolve, integrate_rk4, kraus_apply, x_structure_defect};
use qcorr::dynamics::{death_time, verify_suite, CheckStatus, DEATH_THRESHOLD};
use qcorr::measures::{closed, concurrence, geometric_discord, printed, quantum_discord};
use qcorr::states::initial_state;
use qcorr::{Axis, ChannelSpec, DensityMatrix, Measure, OptimizerSettings, StateParams, Subsystem};
use rand::{rngs::StdRng, Rng, SeedableRng};

fn channel(axis: Axis) -> ChannelSpec {
    ChannelSpec::new(axis, 1.0).unwrap()
}

fn params(theta: f64) -> StateParams {
    StateParams::new(theta).unwrap()
}

fn mu(gamma_t: f64) -> f64 {
    (-2.0 * gamma_t).exp()
}

/// `kπ/40`, `k = 1..39`, skipping `π/2`.
fn thetas() -> Vec<f64> {
    (1..40).filter(|&k| k != 20).map(|k| k as f64 * PI / 40.0).collect()
}

/// `0, 0.1, …, 3`.
fn times() -> Vec<f64> {
    (0..=30).map(|k| k as f64 / 10.0).collect()
}

fn sub_thetas() -> Vec<f64> {
    (1..=10).map(|k| k as f64 * PI / 11.0).collect()
}

fn sub_times() -> Vec<f64> {
    (0..10).map(|k| k as f64 / 3.0).collect()
}

fn qd(rho: &DensityMatrix) -> f64 {
    quantum_discord(rho, Subsystem::A, &OptimizerSettings::default())
        .unwrap()
        .value
}

struct Outcome {
    pass: bool,
    summary: String,
}

fn outcome(pass: bool, summary: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        summary: summary.into(),
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut n = 0;
    for axis in Axis::ALL {
        for &theta in &thetas() {
            let p = params(theta);
            for &gt in &times() {
                let oracle = concurrence(&analytic_evolve(&p, &channel(axis), gt).unwrap())
                    .unwrap()
                    .value;
                let closed = closed::concurrence_closed(&p, Some(&channel(axis)), gt).unwrap().value;
                worst = worst.max((oracle - closed).abs());
                n += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        worst <= 1e-9 && elapsed < Duration::from_secs(2),
        format!("concurrence oracle vs closed form: max |Δ| = {worst:.2e} over {n} points (≤ 1e-9), {elapsed:.2?}"),
    )
}

fn criterion_2() -> Outcome {
    let mut worst = 0.0f64;
    for theta in [FRAC_PI_8, FRAC_PI_4, 3.0 * FRAC_PI_8, 5.0 * FRAC_PI_8] {
        let p = params(theta);
        for (axis, closed) in [
            (Axis::X, printed::sigma_x_death_time(&p, 1.0)),
            (Axis::Z, printed::sigma_z_death_time(theta, 1.0)),
        ] {
            let found = death_time(&p, &channel(axis), Measure::Concurrence, DEATH_THRESHOLD)
                .unwrap()
                .time;
            let rel = found.map_or(f64::INFINITY, |t| ((t - closed) / closed).abs());
            worst = worst.max(rel);
        }
    }
    let quarter = death_time(
        &params(FRAC_PI_4),
        &channel(Axis::X),
        Measure::Concurrence,
        DEATH_THRESHOLD,
    )
    .unwrap()
    .time
    .unwrap_or(f64::NAN);
    let mut agree = 0.0f64;
    for theta in thetas() {
        let a = printed::sigma_x_death_time(&params(theta), 1.0);
        let b = printed::sigma_z_death_time(theta, 1.0);
        agree = agree.max(((a - b) / a).abs());
    }
    outcome(
        worst <= 1e-6 && (quarter - 0.549306).abs() <= 1e-6 && agree <= 1e-12,
        format!(
            "death times: bisection vs closed rel {worst:.2e} (≤ 1e-6); θ=π/4 → {quarter:.9}; σx vs σz forms rel {agree:.2e} (≤ 1e-12)"
        ),
    )
}

fn criterion_3() -> Outcome {
    let mut worst = 0.0f64;
    for axis in Axis::ALL {
        for &theta in &thetas() {
            let p = params(theta);
            for &gt in &times() {
                let oracle = geometric_discord(&analytic_evolve(&p, &channel(axis), gt).unwrap())
                    .unwrap()
                    .value;
                worst = worst.max((oracle - closed::geometric_discord_at(&p, Some(axis), mu(gt))).abs());
            }
        }
    }
    let dg = |theta: f64, axis: Axis, gt: f64| {
        geometric_discord(&analytic_evolve(&params(theta), &channel(axis), gt).unwrap())
            .unwrap()
            .value
    };
    let spots = [
        (dg(0.0, Axis::X, 0.0), 0.5, 1e-12),
        (dg(FRAC_PI_4, Axis::X, 0.0), 0.125, 1e-12),
        (dg(FRAC_PI_4, Axis::Y, 0.5), 0.016917, 1e-6),
    ];
    let spots_ok = spots.iter().all(|(got, want, tol)| (got - want).abs() <= *tol);
    outcome(
        worst <= 1e-10 && spots_ok,
        format!(
            "geometric discord oracle vs closed form: max |Δ| = {worst:.2e} (≤ 1e-10); spots {:.6} {:.6} {:.6}",
            spots[0].0, spots[1].0, spots[2].0
        ),
    )
}

fn criterion_4() -> Outcome {
    let mut worst = 0.0f64;
    for axis in Axis::ALL {
        for &theta in &sub_thetas() {
            let p = params(theta);
            for &gt in &sub_times() {
                let oracle = qd(&analytic_evolve(&p, &channel(axis), gt).unwrap());
                worst = worst.max((oracle - closed::quantum_discord_at(&p, Some(axis), mu(gt))).abs());
            }
        }
    }
    let d0 = qd(&initial_state(&params(0.0)));
    let d_quarter = qd(&initial_state(&params(FRAC_PI_4)));
    let d_y = qd(&analytic_evolve(&params(FRAC_PI_4), &channel(Axis::Y), 0.5).unwrap());
    let spots_ok = (d0 - 1.0).abs() <= 1e-6 && (d_quarter - 0.188722).abs() <= 1e-5 && (d_y - 0.024546).abs() <= 1e-5;

    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut literal = 0.0f64;
    for _ in 0..200 {
        let theta = rng.gen_range(0.01..PI - 0.01);
        let m: f64 = rng.gen_range(0.001..1.0);
        let p = params(theta);
        let lit = printed::sigma_xz_discord(&p, 1.0, -0.5 * m.ln());
        literal = literal.max((lit - closed::quantum_discord_at(&p, Some(Axis::X), m)).abs());
    }
    outcome(
        worst <= 1e-5 && spots_ok && literal <= 1e-10,
        format!(
            "discord oracle vs 1 − S + SC: max |Δ| = {worst:.2e} (≤ 1e-5); spots {d0:.6} {d_quarter:.6} {d_y:.6}; literal σx/σz form |Δ| = {literal:.2e} (≤ 1e-10)"
        ),
    )
}

fn criterion_5() -> Outcome {
    let mut worst = [0.0f64; 3];
    for &theta in &thetas() {
        let p = params(theta);
        for &gt in &times() {
            let x = analytic_evolve(&p, &channel(Axis::X), gt).unwrap();
            let z = analytic_evolve(&p, &channel(Axis::Z), gt).unwrap();
            let gaps = [
                concurrence(&x).unwrap().value - concurrence(&z).unwrap().value,
                geometric_discord(&x).unwrap().value - geometric_discord(&z).unwrap().value,
                qd(&x) - qd(&z),
            ];
            for (w, g) in worst.iter_mut().zip(gaps) {
                *w = w.max(g.abs());
            }
        }
    }
    outcome(
        worst.iter().all(|&w| w <= 1e-9),
        format!(
            "σx vs σz: max |Δ| C {:.2e}, DG {:.2e}, D {:.2e} (≤ 1e-9)",
            worst[0], worst[1], worst[2]
        ),
    )
}

fn criterion_6() -> Outcome {
    let rk_thetas = [FRAC_PI_8, FRAC_PI_4, 3.0 * FRAC_PI_8];
    let mut worst = 0.0f64;
    let mut order_gap = 0.0f64;
    for axis in Axis::ALL {
        for theta in rk_thetas {
            let p = params(theta);
            let rho0 = initial_state(&p);
            for k in 0..=12 {
                let gt = 0.25 * k as f64;
                let rk = integrate_rk4(&rho0, &channel(axis), gt, 1000).unwrap();
                let exact = kraus_apply(&rho0, &channel(axis), gt).unwrap();
                let analytic = analytic_evolve(&p, &channel(axis), gt).unwrap();
                worst = worst
                    .max(rk.matrix().max_abs_diff(exact.matrix()))
                    .max(rk.matrix().max_abs_diff(analytic.matrix()));
            }
            let exact = kraus_apply(&rho0, &channel(axis), 2.0).unwrap();
            let err = |steps| {
                integrate_rk4(&rho0, &channel(axis), 2.0, steps)
                    .unwrap()
                    .matrix()
                    .max_abs_diff(exact.matrix())
            };
            let (e1, e2, e3) = (err(16), err(32), err(64));
            for order in [(e1 / e2).log2(), (e2 / e3).log2()] {
                order_gap = order_gap.max((order - 4.0).abs());
            }
        }
    }
    outcome(
        worst <= 1e-8 && order_gap <= 0.3,
        format!("RK4 (1000 steps) vs exact map: max |Δ| = {worst:.2e} (≤ 1e-8); observed order within {order_gap:.3} of 4 (≤ 0.3)"),
    )
}

fn t0_values(theta: f64) -> [f64; 3] {
    let rho = initial_state(&params(theta));
    [
        concurrence(&rho).unwrap().value,
        geometric_discord(&rho).unwrap().value,
        qd(&rho),
    ]
}

fn criterion_7() -> Outcome {
    let mut violations = 0;
    for (lo, sign) in [(0.0, -1.0), (FRAC_PI_2, 1.0)] {
        let values: Vec<[f64; 3]> = (1..=20).map(|k| t0_values(lo + FRAC_PI_2 * k as f64 / 21.0)).collect();
        for w in values.windows(2) {
            violations += (0..3).filter(|&m| sign * (w[1][m] - w[0][m]) <= 0.0).count();
        }
    }
    let at_half = t0_values(FRAC_PI_2);
    let zero_ok = at_half.iter().all(|v| v.abs() <= 1e-9);

    let p = params(FRAC_PI_4);
    let min_y = (0..=100)
        .map(|k| {
            concurrence(&analytic_evolve(&p, &channel(Axis::Y), 0.05 * k as f64).unwrap())
                .unwrap()
                .value
        })
        .fold(f64::INFINITY, f64::min);
    outcome(
        violations == 0 && zero_ok && min_y > 0.0,
        format!("t=0 monotonicity violations {violations}; max value at π/2 {:.1e}; σy min concurrence on γt ≤ 5 = {min_y:.3e} (> 0)", at_half.iter().fold(0.0f64, |a, v| a.max(v.abs()))),
    )
}

fn criterion_8() -> Outcome {
    let mut trace = 0.0f64;
    let mut herm = 0.0f64;
    let mut min_eig = f64::INFINITY;
    let mut x_defect = 0.0f64;
    let mut n = 0;
    for axis in Axis::ALL {
        for qubit in [Subsystem::A, Subsystem::B] {
            let ch = ChannelSpec::on_qubit(axis, 1.3, qubit).unwrap();
            for k in 0..=40 {
                let p = params(k as f64 * PI / 40.0);
                let rho0 = initial_state(&p);
                let mut states = vec![rho0.clone()];
                for gt in [0.0, 0.2, 0.7, 1.5, 3.0] {
                    let t = gt / ch.gamma;
                    states.push(analytic_evolve(&p, &ch, t).unwrap());
                    states.push(kraus_apply(&rho0, &ch, t).unwrap());
                    states.push(integrate_rk4(&rho0, &ch, t, 300).unwrap());
                }
                for s in &states {
                    let v = s.validity();
                    trace = trace.max(v.trace_error);
                    herm = herm.max(v.hermiticity_defect);
                    min_eig = min_eig.min(v.min_eigenvalue);
                    x_defect = x_defect.max(x_structure_defect(s.matrix()));
                    n += 1;
                }
            }
        }
    }
    outcome(
        trace <= 1e-12 && herm <= 1e-12 && min_eig >= -1e-10 && x_defect <= 1e-13,
        format!(
            "{n} states: trace err {trace:.1e}, Hermiticity {herm:.1e} (≤ 1e-12), min eigenvalue {min_eig:.1e} (≥ −1e-10), X-structure {x_defect:.1e} (≤ 1e-13)"
        ),
    )
}

fn criterion_9(corrected_pass: bool) -> Outcome {
    let report = verify_suite(&OptimizerSettings::default());
    let eq16 = report.check("printed_eq16").expect("eq16 check present");
    let eq18 = report.check("printed_eq18_hermiticity").expect("eq18 check present");

    let mut defect_gap = 0.0f64;
    let mut positive = true;
    let p = params(FRAC_PI_4);
    for k in 1..=30 {
        let m = mu(0.1 * k as f64);
        let lambda = m * p.one_minus_four_eta();
        let defect = printed::sigma_y_matrix(&p, m).hermiticity_defect();
        positive &= defect > 0.0;
        defect_gap = defect_gap.max((defect - 0.5 * lambda.abs()).abs());
    }
    let pass = eq16.status == CheckStatus::ExpectedFail
        && eq16.max_deviation >= 1.0
        && eq18.status == CheckStatus::ExpectedFail
        && positive
        && defect_gap <= 1e-15
        && report.passed()
        && corrected_pass;
    outcome(
        pass,
        format!(
            "printed σx concurrence deviation {:.3} (≥ 1, expected-fail); printed σy matrix defect − |λ|/2 = {defect_gap:.1e}; verify {}",
            eq16.max_deviation,
            if report.passed() { "green" } else { "red" }
        ),
    )
}

#[test]
fn acceptance() {
    let mut results = Vec::new();
    let c1 = criterion_1();
    let c6 = criterion_6();
    let corrected = c1.pass && c6.pass;
    results.push((1, c1));
    results.push((2, criterion_2()));
    results.push((3, criterion_3()));
    results.push((4, criterion_4()));
    results.push((5, criterion_5()));
    results.push((6, c6));
    results.push((7, criterion_7()));
    results.push((8, criterion_8()));
    results.push((9, criterion_9(corrected)));

    for (k, r) in &results {
        println!("{} criterion {k}: {}", if r.pass { "PASS" } else { "FAIL" }, r.summary);
    }
    let failed: Vec<usize> = results.iter().filter(|(_, r)| !r.pass).map(|(k, _)| *k).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
