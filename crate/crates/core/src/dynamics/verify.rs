use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_8, PI};

use serde::{Deserialize, Serialize};

use super::death::{death_time, DEATH_THRESHOLD};
use crate::channels::{analytic_evolve, integrate_rk4, kraus_apply, x_structure_defect, Axis, ChannelSpec};
use crate::error::Result;
use crate::linalg::Subsystem;
use crate::measures::{
    closed, concurrence, geometric_discord, optimal_conditional_entropy, printed, quantum_discord, Measure,
    OptimizerSettings,
};
use crate::states::{initial_state, DensityMatrix, StateParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// A known defect in a reference formula, reproduced as expected.
    ExpectedFail,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub max_deviation: f64,
    /// Upper bound for a pass; for expected failures, the smallest deviation
    /// that confirms the discrepancy.
    pub tolerance: f64,
    pub grid_size: usize,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    /// True when no check has status [`CheckStatus::Fail`].
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Deviation accumulator for one check.
struct Tally {
    worst: f64,
    count: usize,
}

impl Tally {
    fn new() -> Self {
        Self { worst: 0.0, count: 0 }
    }

    fn push(&mut self, deviation: f64) {
        self.count += 1;
        // NaN must fail the check
        if deviation.is_nan() || deviation > self.worst {
            self.worst = if deviation.is_nan() { f64::INFINITY } else { deviation };
        }
    }

    fn within(self, name: &str, tolerance: f64, detail: impl Into<String>) -> CheckResult {
        let status = if self.worst <= tolerance {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        };
        CheckResult {
            name: name.into(),
            max_deviation: self.worst,
            tolerance,
            grid_size: self.count,
            status,
            detail: detail.into(),
        }
    }
}

fn failed(name: &str, err: crate::Error) -> CheckResult {
    CheckResult {
        name: name.into(),
        max_deviation: f64::INFINITY,
        tolerance: 0.0,
        grid_size: 0,
        status: CheckStatus::Fail,
        detail: err.to_string(),
    }
}

fn channel(axis: Axis) -> ChannelSpec {
    ChannelSpec::new(axis, 1.0).expect("unit coupling")
}

fn params(theta: f64) -> StateParams {
    StateParams::new(theta).expect("finite angle")
}

/// `θ = kπ/40`, `k = 1..39`, without `π/2`.
fn theta_grid() -> Vec<f64> {
    (1..40).filter(|&k| k != 20).map(|k| k as f64 * PI / 40.0).collect()
}

/// `γt ∈ {0, 0.1, …, 3} ∪ {0, 0.25, …, 3}`.
fn time_grid() -> Vec<f64> {
    let mut t: Vec<f64> = (0..=30)
        .map(|k| k as f64 / 10.0)
        .chain((0..=12).map(|k| k as f64 / 4.0))
        .collect();
    t.sort_by(f64::total_cmp);
    t.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    t
}

fn sub_thetas() -> Vec<f64> {
    (1..=10).map(|k| k as f64 * PI / 11.0).collect()
}

fn sub_times() -> Vec<f64> {
    (0..10).map(|k| k as f64 / 3.0).collect()
}

fn mu_of(gamma_t: f64) -> f64 {
    (-2.0 * gamma_t).exp()
}

/// Fractional part of `k·α`, a deterministic low-discrepancy sequence.
fn weyl(k: usize, alpha: f64) -> f64 {
    (k as f64 * alpha).fract()
}

/// Runs every cross-check. Failures are recorded in the report, never
/// returned as errors.
pub fn verify_suite(settings: &OptimizerSettings) -> VerifyReport {
    type Check<'a> = (&'static str, Box<dyn Fn() -> Result<CheckResult> + 'a>);
    let checks: Vec<Check> = vec![
        ("concurrence_closed_vs_oracle", Box::new(concurrence_vs_oracle)),
        ("geometric_closed_vs_oracle", Box::new(geometric_vs_oracle)),
        ("discord_closed_vs_oracle", Box::new(|| discord_vs_oracle(settings))),
        ("spot_values", Box::new(|| spot_values(settings))),
        ("eq28_identity", Box::new(eq28_identity)),
        ("eq31_identity", Box::new(eq31_identity)),
        ("eq17_vs_eq22", Box::new(eq17_vs_eq22)),
        ("esd_bisection", Box::new(esd_bisection)),
        ("esd_monotonic", Box::new(esd_monotonic)),
        ("sigma_y_no_esd", Box::new(sigma_y_no_esd)),
        ("channel_identity_xz", Box::new(|| channel_identity(settings))),
        ("analytic_vs_kraus", Box::new(analytic_vs_kraus)),
        ("rk4_vs_kraus", Box::new(rk4_vs_kraus)),
        ("rk4_order", Box::new(rk4_order)),
        ("state_validity", Box::new(state_validity)),
        ("state_positivity", Box::new(state_positivity)),
        ("x_structure", Box::new(x_structure)),
        ("monotonicity_t0", Box::new(|| monotonicity_t0(settings))),
        ("separable_point", Box::new(|| separable_point(settings))),
        ("discord_bounds", Box::new(|| discord_bounds(settings))),
        ("optimizer_sanity", Box::new(|| optimizer_sanity(settings))),
        ("printed_eq16", Box::new(printed_eq16)),
        ("printed_eq18_hermiticity", Box::new(printed_eq18)),
    ];
    VerifyReport {
        checks: checks
            .into_iter()
            .map(|(name, run)| run().unwrap_or_else(|e| failed(name, e)))
            .collect(),
    }
}

fn concurrence_vs_oracle() -> Result<CheckResult> {
    let mut tally = Tally::new();
    for axis in Axis::ALL {
        for &theta in &theta_grid() {
            let p = params(theta);
            for &gt in &time_grid() {
                let rho = analytic_evolve(&p, &channel(axis), gt)?;
                tally.push((concurrence(&rho)?.value - closed::concurrence_at(&p, Some(axis), mu_of(gt))).abs());
            }
        }
    }
    Ok(tally.within(
        "concurrence_closed_vs_oracle",
        1e-9,
        "Wootters oracle vs closed form, channels x/y/z",
    ))
}

fn geometric_vs_oracle() -> Result<CheckResult> {
    let mut tally = Tally::new();
    for axis in Axis::ALL {
        for &theta in &theta_grid() {
            let p = params(theta);
            for &gt in &time_grid() {
                let rho = analytic_evolve(&p, &channel(axis), gt)?;
                let oracle = geometric_discord(&rho)?.value;
                tally.push((oracle - closed::geometric_discord_at(&p, Some(axis), mu_of(gt))).abs());
            }
        }
    }
    Ok(tally.within("geometric_closed_vs_oracle", 1e-10, "Bloch-form oracle vs closed form"))
}

fn discord_vs_oracle(settings: &OptimizerSettings) -> Result<CheckResult> {
    let mut tally = Tally::new();
    for axis in Axis::ALL {
        for &theta in &sub_thetas() {
            let p = params(theta);
            for &gt in &sub_times() {
                let rho = analytic_evolve(&p, &channel(axis), gt)?;
                let oracle = quantum_discord(&rho, Subsystem::A, settings)?.value;
                tally.push((oracle - closed::quantum_discord_at(&p, Some(axis), mu_of(gt))).abs());
            }
        }
    }
    Ok(tally.within(
        "discord_closed_vs_oracle",
        1e-5,
        "sphere-optimised discord vs 1 − S + SC, 10×10 subgrid",
    ))
}

fn spot_values(settings: &OptimizerSettings) -> Result<CheckResult> {
    let noiseless = |theta: f64| initial_state(&params(theta));
    let y_half = analytic_evolve(&params(FRAC_PI_4), &channel(Axis::Y), 0.5)?;
    let xz = |axis| analytic_evolve(&params(FRAC_PI_4), &channel(axis), 0.5 * 2f64.ln());
    let qd = |rho: &DensityMatrix| quantum_discord(rho, Subsystem::A, settings).map(|r| r.value);

    let spots = [
        (concurrence(&noiseless(FRAC_PI_4))?.value, 0.5),
        (concurrence(&noiseless(0.0))?.value, 1.0),
        (geometric_discord(&noiseless(0.0))?.value, 0.5),
        (geometric_discord(&noiseless(FRAC_PI_4))?.value, 0.125),
        (geometric_discord(&y_half)?.value, 0.016917),
        (qd(&noiseless(0.0))?, 1.0),
        (qd(&noiseless(FRAC_PI_4))?, 0.188722),
        (qd(&y_half)?, 0.024546),
        (qd(&xz(Axis::X)?)?, 0.188722),
        (qd(&xz(Axis::Z)?)?, 0.188722),
    ];
    let mut tally = Tally::new();
    for (got, want) in spots {
        tally.push((got - want).abs());
    }
    Ok(tally.within("spot_values", 1e-6, "oracle values against six-digit references"))
}

/// `200` deterministic `(θ, μ)` pairs spread over `(0.05, π − 0.05) × (0.01, 0.99)`.
fn eq28_points() -> Vec<(f64, f64)> {
    (1..=200)
        .map(|k| {
            let theta = 0.05 + (PI - 0.1) * weyl(k, 0.618_033_988_749_894_9);
            let mu = 0.01 + 0.98 * weyl(k, std::f64::consts::SQRT_2 - 1.0);
            (theta, mu)
        })
        .collect()
}

fn eq28_identity() -> Result<CheckResult> {
    let mut tally = Tally::new();
    for (theta, mu) in eq28_points() {
        let p = params(theta);
        let t = -0.5 * mu.ln();
        let lit = printed::sigma_xz_discord(&p, 1.0, t);
        tally.push((lit - closed::quantum_discord_at(&p, Some(Axis::X), mu)).abs());
    }
    Ok(tally.within("eq28_identity", 1e-10, "printed σx/σz discord vs 1 − S + SC"))
}

fn eq31_identity() -> Result<CheckResult> {
    let mut tally = Tally::new();
    for (theta, mu) in eq28_points() {
        let p = params(theta);
        let lambda = mu * p.one_minus_four_eta();
        tally.push((printed::sigma_y_discord(lambda) - closed::quantum_discord_at(&p, Some(Axis::Y), mu)).abs());
        tally.push(
            (printed::sigma_y_mutual_information(lambda) - closed::mutual_information_at(&p, Some(Axis::Y), mu)).abs(),
        );
    }
    Ok(tally.within(
        "eq31_identity",
        1e-12,
        "printed σy discord and mutual information vs closed forms",
    ))
}

fn eq17_vs_eq22() -> Result<CheckResult> {
    let mut tally = Tally::new();
    for theta in theta_grid() {
        let a = printed::sigma_x_death_time(&params(theta), 1.0);
        let b = printed::sigma_z_death_time(theta, 1.0);
        tally.push(((a - b) / a).abs());
    }
    Ok(tally.within(
        "eq17_vs_eq22",
        1e-12,
        "relative gap between the two death-time expressions",
    ))
}

fn esd_bisection() -> Result<CheckResult> {
    let mut tally = Tally::new();
    for theta in [FRAC_PI_8, FRAC_PI_4, 3.0 * FRAC_PI_8, 5.0 * FRAC_PI_8] {
        for axis in [Axis::X, Axis::Z] {
            let r = death_time(&params(theta), &channel(axis), Measure::Concurrence, DEATH_THRESHOLD)?;
            let closed = r.closed_form_time.unwrap_or(f64::NAN);
            let found = r.time.unwrap_or(f64::INFINITY);
            tally.push(((found - closed) / closed).abs());
        }
    }
    Ok(tally.within(
        "esd_bisection",
        1e-6,
        "relative gap, bisection on the oracle vs closed form",
    ))
}

fn esd_monotonic() -> Result<CheckResult> {
    let ch = channel(Axis::Z);
    let mut tally = Tally::new();
    for (lo, sign) in [(0.0, -1.0), (FRAC_PI_2, 1.0)] {
        let mut times = Vec::new();
        for k in 1..=10 {
            let theta = lo + FRAC_PI_2 * k as f64 / 11.0;
            let r = death_time(&params(theta), &ch, Measure::Concurrence, DEATH_THRESHOLD)?;
            times.push(r.time.unwrap_or(f64::INFINITY));
        }
        for w in times.windows(2) {
            tally.push(if sign * (w[1] - w[0]) > 0.0 { 0.0 } else { 1.0 });
        }
    }
    Ok(tally.within(
        "esd_monotonic",
        0.0,
        "σz death time falls on (0, π/2) and rises on (π/2, π); deviation counts violations",
    ))
}

fn sigma_y_no_esd() -> Result<CheckResult> {
    let p = params(FRAC_PI_4);
    let ch = channel(Axis::Y);
    let mut tally = Tally::new();
    for k in 0..=50 {
        let c = concurrence(&analytic_evolve(&p, &ch, k as f64 / 10.0)?)?.value;
        tally.push(if c > 0.0 { 0.0 } else { 1.0 });
    }
    let r = death_time(&p, &ch, Measure::Concurrence, DEATH_THRESHOLD)?;
    tally.push(if r.time.is_none() { 0.0 } else { 1.0 });
    Ok(tally.within(
        "sigma_y_no_esd",
        0.0,
        "σy concurrence positive for γt ≤ 5 and no death time; deviation counts violations",
    ))
}

fn channel_identity(settings: &OptimizerSettings) -> Result<CheckResult> {
    let mut tally = Tally::new();
    for &theta in &theta_grid() {
        let p = params(theta);
        for &gt in &time_grid() {
            let x = analytic_evolve(&p, &channel(Axis::X), gt)?;
            let z = analytic_evolve(&p, &channel(Axis::Z), gt)?;
            tally.push((concurrence(&x)?.value - concurrence(&z)?.value).abs());
            tally.push((geometric_discord(&x)?.value - geometric_discord(&z)?.value).abs());
            let dx = quantum_discord(&x, Subsystem::A, settings)?.value;
            let dz = quantum_discord(&z, Subsystem::A, settings)?.value;
            tally.push((dx - dz).abs());
        }
    }
    Ok(tally.within(
        "channel_identity_xz",
        1e-9,
        "C, DG and D oracles on σx vs σz evolutions",
    ))
}

fn analytic_vs_kraus() -> Result<CheckResult> {
    let mut tally = Tally::new();
    for axis in Axis::ALL {
        for &theta in &theta_grid() {
            let p = params(theta);
            let rho0 = initial_state(&p);
            for &gt in &time_grid() {
                let a = analytic_evolve(&p, &channel(axis), gt)?;
                let k = kraus_apply(&rho0, &channel(axis), gt)?;
                tally.push(a.matrix().max_abs_diff(k.matrix()));
            }
        }
    }
    Ok(tally.within("analytic_vs_kraus", 1e-14, "max entry gap"))
}

const RK4_THETAS: [f64; 3] = [FRAC_PI_8, FRAC_PI_4, 3.0 * FRAC_PI_8];

fn rk4_vs_kraus() -> Result<CheckResult> {
    let mut tally = Tally::new();
    for axis in Axis::ALL {
        for theta in RK4_THETAS {
            let rho0 = initial_state(&params(theta));
            for k in 1..=6 {
                let gt = 0.5 * k as f64;
                let rk = integrate_rk4(&rho0, &channel(axis), gt, 1000)?;
                let exact = kraus_apply(&rho0, &channel(axis), gt)?;
                tally.push(rk.matrix().max_abs_diff(exact.matrix()));
            }
        }
    }
    Ok(tally.within("rk4_vs_kraus", 1e-8, "max entry gap, 1000 steps, γt up to 3"))
}

fn rk4_order() -> Result<CheckResult> {
    let mut tally = Tally::new();
    for axis in Axis::ALL {
        for theta in RK4_THETAS {
            let rho0 = initial_state(&params(theta));
            let exact = kraus_apply(&rho0, &channel(axis), 1.0)?;
            let err = |steps| -> Result<f64> {
                Ok(integrate_rk4(&rho0, &channel(axis), 1.0, steps)?
                    .matrix()
                    .max_abs_diff(exact.matrix()))
            };
            let order = (err(10)? / err(20)?).log2();
            tally.push((order - 4.0).abs());
        }
    }
    Ok(tally.within("rk4_order", 0.3, "|observed order − 4| from 10 vs 20 steps at γt = 1"))
}

/// Every state the evolution routes produce on a coarse grid.
fn evolved_states() -> Result<Vec<DensityMatrix>> {
    let mut out = Vec::new();
    for axis in Axis::ALL {
        for qubit in [Subsystem::A, Subsystem::B] {
            let ch = ChannelSpec::on_qubit(axis, 1.0, qubit)?;
            for k in 0..=20 {
                let p = params(k as f64 * PI / 20.0);
                let rho0 = initial_state(&p);
                out.push(rho0.clone());
                for gt in [0.0, 0.3, 1.0, 3.0] {
                    out.push(analytic_evolve(&p, &ch, gt)?);
                    out.push(kraus_apply(&rho0, &ch, gt)?);
                    out.push(integrate_rk4(&rho0, &ch, gt, 200)?);
                }
            }
        }
    }
    Ok(out)
}

fn state_validity() -> Result<CheckResult> {
    let mut tally = Tally::new();
    for rho in evolved_states()? {
        let v = rho.validity();
        tally.push(v.trace_error.max(v.hermiticity_defect));
    }
    Ok(tally.within("state_validity", 1e-12, "max of trace error and Hermiticity defect"))
}

fn state_positivity() -> Result<CheckResult> {
    let mut tally = Tally::new();
    for rho in evolved_states()? {
        tally.push((-rho.validity().min_eigenvalue).max(0.0));
    }
    Ok(tally.within("state_positivity", 1e-10, "most negative eigenvalue"))
}

fn x_structure() -> Result<CheckResult> {
    let mut tally = Tally::new();
    for rho in evolved_states()? {
        tally.push(x_structure_defect(rho.matrix()));
    }
    Ok(tally.within(
        "x_structure",
        1e-13,
        "largest entry outside the diagonal and anti-diagonal",
    ))
}

fn t0_measures(theta: f64, settings: &OptimizerSettings) -> Result<[f64; 3]> {
    let rho = initial_state(&params(theta));
    Ok([
        concurrence(&rho)?.value,
        geometric_discord(&rho)?.value,
        quantum_discord(&rho, Subsystem::A, settings)?.value,
    ])
}

fn monotonicity_t0(settings: &OptimizerSettings) -> Result<CheckResult> {
    let mut tally = Tally::new();
    for (lo, sign) in [(0.0, -1.0), (FRAC_PI_2, 1.0)] {
        let values: Vec<[f64; 3]> = (1..=20)
            .map(|k| t0_measures(lo + FRAC_PI_2 * k as f64 / 21.0, settings))
            .collect::<Result<_>>()?;
        for w in values.windows(2) {
            for (next, prev) in w[1].iter().zip(&w[0]) {
                tally.push(if sign * (next - prev) > 0.0 { 0.0 } else { 1.0 });
            }
        }
    }
    Ok(tally.within(
        "monotonicity_t0",
        0.0,
        "C, DG, D strictly monotone on each side of π/2; deviation counts violations",
    ))
}

fn separable_point(settings: &OptimizerSettings) -> Result<CheckResult> {
    let mut tally = Tally::new();
    for v in t0_measures(FRAC_PI_2, settings)? {
        tally.push(v.abs());
    }
    Ok(tally.within("separable_point", 1e-9, "C, DG, D at θ = π/2"))
}

fn discord_bounds(settings: &OptimizerSettings) -> Result<CheckResult> {
    let mut tally = Tally::new();
    for axis in Axis::ALL {
        for &theta in &sub_thetas() {
            for &gt in &sub_times() {
                let rho = analytic_evolve(&params(theta), &channel(axis), gt)?;
                let dg = geometric_discord(&rho)?.value;
                let d = quantum_discord(&rho, Subsystem::A, settings)?.value;
                let ok = (0.0..=0.5).contains(&dg) && (0.0..=1.0).contains(&d);
                tally.push(if ok { 0.0 } else { 1.0 });
            }
        }
    }
    Ok(tally.within(
        "discord_bounds",
        0.0,
        "DG in [0, 1/2] and D in [0, 1]; deviation counts violations",
    ))
}

fn optimizer_sanity(settings: &OptimizerSettings) -> Result<CheckResult> {
    let doubled = OptimizerSettings {
        grid_points: 2 * settings.grid_points,
        ..*settings
    };
    let mut tally = Tally::new();
    for axis in Axis::ALL {
        for &theta in &sub_thetas() {
            for &gt in &sub_times() {
                let rho = analytic_evolve(&params(theta), &channel(axis), gt)?;
                let base = optimal_conditional_entropy(&rho, Subsystem::A, settings)?.value;
                let fine = optimal_conditional_entropy(&rho, Subsystem::A, &doubled)?.value;
                tally.push((base - fine).max(0.0));
            }
        }
    }
    Ok(tally.within(
        "optimizer_sanity",
        1e-6,
        "drop in optimal conditional entropy when the grid is doubled",
    ))
}

fn printed_eq16() -> Result<CheckResult> {
    let p = params(0.01);
    let printed = printed::sigma_x_concurrence(&p, 1.0);
    let oracle = concurrence(&initial_state(&p))?.value;
    let deviation = (printed - oracle).abs();
    let threshold = 1.0;
    Ok(CheckResult {
        name: "printed_eq16".into(),
        max_deviation: deviation,
        tolerance: threshold,
        grid_size: 1,
        status: if deviation >= threshold {
            CheckStatus::ExpectedFail
        } else {
            CheckStatus::Fail
        },
        detail: format!("printed σx concurrence {printed:.6} vs oracle {oracle:.6} at θ = 0.01, t = 0"),
    })
}

fn printed_eq18() -> Result<CheckResult> {
    let mut worst = 0.0f64;
    let mut mismatch = 0.0f64;
    let mut count = 0;
    for &theta in &sub_thetas() {
        let p = params(theta);
        for k in 1..=30 {
            let mu = mu_of(k as f64 / 10.0);
            let lambda = mu * p.one_minus_four_eta();
            let defect = printed::sigma_y_matrix(&p, mu).hermiticity_defect();
            worst = worst.max(defect);
            if lambda.abs() > 0.0 && (defect.is_nan() || defect <= 0.0) {
                mismatch = f64::INFINITY;
            }
            mismatch = mismatch.max((defect - 0.5 * lambda.abs()).abs());
            count += 1;
        }
    }
    let confirmed = mismatch <= 1e-15;
    Ok(CheckResult {
        name: "printed_eq18_hermiticity".into(),
        max_deviation: worst,
        tolerance: 0.0,
        grid_size: count,
        status: if confirmed && worst > 0.0 {
            CheckStatus::ExpectedFail
        } else {
            CheckStatus::Fail
        },
        detail: format!("printed σy matrix Hermiticity defect equals |λ|/2 for t > 0 (max gap {mismatch:.1e})"),
    })
}
