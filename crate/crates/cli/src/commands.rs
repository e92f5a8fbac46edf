use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;

use qcorr::channels::{analytic_evolve, integrate_rk4, kraus_apply};
use qcorr::dynamics::{
    death_time, format_value, half_life, sweep, uniform_times, verify_suite, write_csv, CheckStatus, DeathTimeResult,
    SweepGrid, SweepOptions,
};
use qcorr::measures::oracle_value;
use qcorr::states::initial_state;
use qcorr::{Axis, ChannelSpec, DensityMatrix, Measure, OptimizerSettings, StateParams, Subsystem};
use serde::Serialize;
use serde_json::{Map, Value};

use crate::angle::{parse_angle, parse_angle_list};
use crate::args::{Cli, Command, ConfigArgs, DeathArgs, EvolveArgs, Method, StateArgs, SweepArgs, VerifyArgs};
use crate::output::{matrix_text, to_json};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Numerical(String),
    #[error("verification failed")]
    VerifyFailed,
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::VerifyFailed => 1,
            CliError::Usage(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl From<qcorr::Error> for CliError {
    fn from(e: qcorr::Error) -> Self {
        match e {
            qcorr::Error::InvalidArgument(_) => CliError::Usage(e.to_string()),
            _ => CliError::Numerical(e.to_string()),
        }
    }
}

fn io_error(context: &str, e: io::Error) -> CliError {
    CliError::Usage(format!("{context}: {e}"))
}

type Result<T> = std::result::Result<T, CliError>;

/// Validated global options.
struct Config {
    threads: Option<usize>,
    settings: OptimizerSettings,
    precision: usize,
    measured: Subsystem,
}

impl Config {
    fn from_args(a: &ConfigArgs) -> Result<Self> {
        if a.threads == Some(0) {
            return Err(CliError::Usage("--threads must be at least 1".into()));
        }
        if !(6..=17).contains(&a.precision) {
            return Err(CliError::Usage(format!(
                "--precision must lie in [6, 17], got {}",
                a.precision
            )));
        }
        let settings = OptimizerSettings {
            grid_points: a.grid_points,
            final_tolerance: a.tolerance,
            ..OptimizerSettings::default()
        };
        settings.validate()?;
        Ok(Self {
            threads: a.threads,
            settings,
            precision: a.precision,
            measured: a.measured_side.into(),
        })
    }

    fn num(&self, v: f64) -> String {
        format_value(v, self.precision)
    }
}

pub fn run(cli: Cli) -> Result<()> {
    let config = Config::from_args(&cli.config)?;
    let mut stdout = io::stdout().lock();
    match cli.command {
        Command::State(a) => state(&config, a, &mut stdout),
        Command::Evolve(a) => evolve(&config, a, &mut stdout),
        Command::Sweep(a) => sweep_cmd(&config, a, &mut stdout),
        Command::Deathtime(a) => deathtime(&config, a, &mut stdout),
        Command::Verify(a) => verify(&config, a, &mut stdout),
    }
}

fn emit(out: &mut impl Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes())
        .map_err(|e| io_error("cannot write output", e))
}

fn angle(value: &str, degrees: bool) -> Result<f64> {
    parse_angle(value, degrees).map_err(CliError::Usage)
}

fn all_measures(config: &Config, rho: &DensityMatrix) -> Result<Vec<(Measure, f64)>> {
    Measure::ALL
        .iter()
        .map(|&m| Ok((m, oracle_value(m, rho, config.measured, &config.settings)?.value)))
        .collect()
}

fn measures_object(values: &[(Measure, f64)]) -> Value {
    let map: Map<String, Value> = values
        .iter()
        .map(|(m, v)| (m.name().to_string(), Value::from(*v)))
        .collect();
    Value::Object(map)
}

fn state(config: &Config, a: StateArgs, out: &mut impl Write) -> Result<()> {
    let theta = angle(&a.theta, a.degrees)?;
    let params = StateParams::new(theta)?;
    let rho = initial_state(&params);
    let values = all_measures(config, &rho)?;

    if a.json {
        #[derive(Serialize)]
        struct Out<'a> {
            theta: f64,
            eta: f64,
            xi: f64,
            state: &'a DensityMatrix,
            measures: Value,
        }
        let body = Out {
            theta,
            eta: params.eta,
            xi: params.xi,
            state: &rho,
            measures: measures_object(&values),
        };
        return emit(out, &(to_json(&body, config.precision) + "\n"));
    }

    let mut text = format!(
        "theta {}\neta {}\nxi {}\nrho\n{}",
        config.num(theta),
        config.num(params.eta),
        config.num(params.xi),
        matrix_text(rho.matrix(), config.precision)
    );
    for (m, v) in values {
        text.push_str(&format!("{m} {}\n", config.num(v)));
    }
    emit(out, &text)
}

fn read_state(path: &Path) -> Result<DensityMatrix> {
    let mut raw = String::new();
    if path.as_os_str() == "-" {
        io::stdin()
            .read_to_string(&mut raw)
            .map_err(|e| io_error("cannot read stdin", e))?;
    } else {
        raw = fs::read_to_string(path).map_err(|e| io_error(&format!("cannot read {}", path.display()), e))?;
    }
    serde_json::from_str(&raw).map_err(|e| CliError::Usage(format!("invalid state JSON: {e}")))
}

#[derive(Serialize)]
struct CheckOut {
    reference: &'static str,
    max_deviation: f64,
    tolerance: f64,
    ok: bool,
}

fn evolve(config: &Config, a: EvolveArgs, out: &mut impl Write) -> Result<()> {
    let channel = ChannelSpec::on_qubit(a.channel, a.gamma, a.noisy_qubit.into())?;
    let params = match (&a.input, &a.theta) {
        (None, Some(theta)) => Some(StateParams::new(angle(theta, a.degrees)?)?),
        _ => None,
    };
    let rho0 = match (&a.input, &params) {
        (Some(path), _) => read_state(path)?,
        (None, Some(p)) => initial_state(p),
        (None, None) => unreachable!("clap requires --theta or --input"),
    };
    if a.steps == 0 {
        return Err(CliError::Usage("--steps must be at least 1".into()));
    }

    let rho = match a.method {
        Method::Analytic => match &params {
            Some(p) => analytic_evolve(p, &channel, a.t)?,
            None => {
                return Err(CliError::Usage(
                    "the analytic method needs --theta; use kraus or rk4 with --input".into(),
                ))
            }
        },
        Method::Kraus => kraus_apply(&rho0, &channel, a.t)?,
        Method::Rk4 => integrate_rk4(&rho0, &channel, a.t, a.steps)?,
    };

    let check = if a.check {
        let (reference, exact, tolerance) = match (a.method, &params) {
            (Method::Analytic, _) => ("kraus", kraus_apply(&rho0, &channel, a.t)?, 1e-14),
            (Method::Kraus, Some(p)) => ("analytic", analytic_evolve(p, &channel, a.t)?, 1e-14),
            (Method::Kraus, None) => ("rk4", integrate_rk4(&rho0, &channel, a.t, a.steps)?, 1e-8),
            (Method::Rk4, Some(p)) => ("analytic", analytic_evolve(p, &channel, a.t)?, 1e-8),
            (Method::Rk4, None) => ("kraus", kraus_apply(&rho0, &channel, a.t)?, 1e-8),
        };
        let max_deviation = rho.matrix().max_abs_diff(exact.matrix());
        Some(CheckOut {
            reference,
            max_deviation,
            tolerance,
            ok: max_deviation <= tolerance,
        })
    } else {
        None
    };

    let method = match a.method {
        Method::Analytic => "analytic",
        Method::Kraus => "kraus",
        Method::Rk4 => "rk4",
    };
    if a.json {
        #[derive(Serialize)]
        struct Out<'a> {
            channel: Axis,
            noisy_qubit: Subsystem,
            method: &'a str,
            gamma: f64,
            t: f64,
            state: &'a DensityMatrix,
            #[serde(skip_serializing_if = "Option::is_none")]
            check: Option<&'a CheckOut>,
        }
        let body = Out {
            channel: a.channel,
            noisy_qubit: channel.qubit,
            method,
            gamma: a.gamma,
            t: a.t,
            state: &rho,
            check: check.as_ref(),
        };
        emit(out, &(to_json(&body, config.precision) + "\n"))?;
    } else {
        let mut text = format!(
            "channel {} on qubit {}\nmethod {method}\ngamma {}\nt {}\nrho\n{}",
            a.channel,
            channel.qubit,
            config.num(a.gamma),
            config.num(a.t),
            matrix_text(rho.matrix(), config.precision)
        );
        if let Some(c) = &check {
            text.push_str(&format!(
                "check: max deviation vs {} {:.3e} (tolerance {:.0e}) {}\n",
                c.reference,
                c.max_deviation,
                c.tolerance,
                if c.ok { "ok" } else { "EXCEEDED" }
            ));
        }
        emit(out, &text)?;
    }
    match check {
        Some(c) if !c.ok => Err(CliError::VerifyFailed),
        _ => Ok(()),
    }
}

fn sweep_cmd(config: &Config, a: SweepArgs, out: &mut impl Write) -> Result<()> {
    let thetas = parse_angle_list(&a.thetas, a.degrees).map_err(CliError::Usage)?;
    let gamma = a.gamma.unwrap_or(1.0);
    let channel = ChannelSpec::new(a.channel, gamma)?;
    let times = uniform_times(a.tmin, a.tmax, a.tsteps)?;
    let gamma_times = times.iter().map(|t| gamma * t).collect();
    let grid = SweepGrid::new(thetas, gamma_times, channel, a.measures)?;
    let options = SweepOptions {
        oracle: a.oracle,
        settings: config.settings,
        measured: config.measured,
        threads: config.threads,
    };
    let rows = sweep(&grid, &options)?;

    let mut buf = Vec::new();
    if a.json {
        buf.extend(to_json(&rows, config.precision).into_bytes());
        buf.push(b'\n');
    } else {
        write_csv(&mut buf, &rows, config.precision).expect("writing to memory");
    }
    match &a.out {
        Some(path) => fs::write(path, buf).map_err(|e| io_error(&format!("cannot write {}", path.display()), e)),
        None => out.write_all(&buf).map_err(|e| io_error("cannot write output", e)),
    }
}

fn deathtime(config: &Config, a: DeathArgs, out: &mut impl Write) -> Result<()> {
    let params = StateParams::new(angle(&a.theta, a.degrees)?)?;
    let channel = ChannelSpec::new(a.channel, a.gamma)?;
    let (label, result): (&str, DeathTimeResult) = match a.measure {
        Measure::Concurrence => ("death_time", death_time(&params, &channel, a.measure, a.threshold)?),
        m => ("half_life", half_life(&params, &channel, m)?),
    };

    if a.json {
        #[derive(Serialize)]
        struct Out<'a> {
            kind: &'a str,
            channel: Axis,
            measure: Measure,
            theta: f64,
            gamma: f64,
            #[serde(flatten)]
            result: &'a DeathTimeResult,
        }
        let body = Out {
            kind: label,
            channel: a.channel,
            measure: a.measure,
            theta: params.theta,
            gamma: a.gamma,
            result: &result,
        };
        return emit(out, &(to_json(&body, config.precision) + "\n"));
    }

    let show = |t: Option<f64>| t.map_or("none".to_string(), |v| config.num(v));
    let mut text = format!("{label} {}\n", show(result.time));
    if let Some(t) = result.closed_form_time {
        text.push_str(&format!("closed_form {}\n", config.num(t)));
    }
    text.push_str(&format!(
        "bracket {} {}\niterations {}\n",
        config.num(result.bracket.0),
        config.num(result.bracket.1),
        result.iterations
    ));
    if let Some(d) = &result.diagnostic {
        text.push_str(&format!("note {d}\n"));
    }
    emit(out, &text)
}

fn verify(config: &Config, a: VerifyArgs, out: &mut impl Write) -> Result<()> {
    let report = verify_suite(&config.settings);
    if a.json {
        emit(out, &(to_json(&report, config.precision) + "\n"))?;
    } else {
        let mut text = String::new();
        for c in &report.checks {
            let status = match c.status {
                CheckStatus::Pass => "PASS",
                CheckStatus::Fail => "FAIL",
                CheckStatus::ExpectedFail => "XFAIL",
            };
            text.push_str(&format!(
                "{status:<5} {:<30} max_dev {:>10.3e}  tol {:>8.1e}  n {:>5}  {}\n",
                c.name, c.max_deviation, c.tolerance, c.grid_size, c.detail
            ));
        }
        let count = |s| report.checks.iter().filter(|c| c.status == s).count();
        text.push_str(&format!(
            "{} checks: {} pass, {} expected-fail, {} fail\n",
            report.checks.len(),
            count(CheckStatus::Pass),
            count(CheckStatus::ExpectedFail),
            count(CheckStatus::Fail)
        ));
        emit(out, &text)?;
    }
    if report.passed() {
        Ok(())
    } else {
        Err(CliError::VerifyFailed)
    }
}
