//! Command-line interface.
//!
//! Exit codes: `0` success, `1` usage error, `2` invalid parameters, `3`
//! solver failure or a failed diagnostic check.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::closedform::{critical_cost, critical_threshold, expected_exit_time};
use crate::diagnostics::full_report;
use crate::error::{Error, Result};
use crate::fbp::{solve, Problem, ValueFunction};
use crate::mc::{estimate_cost, SimConfig};
use crate::model::{DriftSign, ProblemParams};
use crate::policy::{
    constant_policy, optimal_max_policy, optimal_min_policy, perturbed_min_policy, Policy,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_FAILURE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "driftswitch",
    version,
    about = "Optimal drift switching for a Brownian particle on [0, 1]"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
struct DriftArgs {
    /// Drift magnitude μ > 0.
    #[arg(long, allow_hyphen_values = true)]
    mu: f64,
    /// Noise level σ > 0; values are reported in the units of this σ.
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    sigma: f64,
}

#[derive(Debug, Clone, Args)]
struct InstanceArgs {
    #[command(flatten)]
    drift: DriftArgs,
    /// Switching cost c > 0.
    #[arg(long, allow_hyphen_values = true)]
    cost: f64,
}

impl InstanceArgs {
    fn params(&self) -> Result<ProblemParams> {
        ProblemParams::new(self.drift.mu, self.cost, self.drift.sigma)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ProblemArg {
    Min,
    Max,
}

impl From<ProblemArg> for Problem {
    fn from(p: ProblemArg) -> Problem {
        match p {
            ProblemArg::Min => Problem::Min,
            ProblemArg::Max => Problem::Max,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PolicyArg {
    OptimalMin,
    OptimalMax,
    Constant,
    Perturbed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve both problems and print thresholds and coefficients.
    Solve(InstanceArgs),
    /// Print the critical cost c*(μ) and its location x*.
    CriticalCost(DriftArgs),
    /// Evaluate a value function at one point.
    Value {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        /// Drift in force: +1 or -1.
        #[arg(long, allow_hyphen_values = true)]
        drift: DriftSign,
        #[arg(long, value_enum, default_value_t = ProblemArg::Min)]
        problem: ProblemArg,
    },
    /// Write value functions and exit times on a uniform grid as CSV.
    Curve {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Number of grid points on [0, 1].
        #[arg(long, default_value_t = 1001)]
        grid: usize,
    },
    /// Estimate the expected cost of a policy by Monte Carlo.
    Simulate {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, value_enum, default_value_t = PolicyArg::OptimalMin)]
        policy: PolicyArg,
        /// Threshold shift for the perturbed policy.
        #[arg(long, default_value_t = 0.1, allow_hyphen_values = true)]
        shift: f64,
        #[arg(long, default_value_t = 100_000)]
        paths: usize,
        #[arg(long, default_value_t = 1e-4, allow_hyphen_values = true)]
        dt: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, allow_hyphen_values = true)]
        x0: f64,
        /// Initial drift: +1 or -1. Also the drift of the constant policy.
        #[arg(long, default_value = "+1", allow_hyphen_values = true)]
        drift: DriftSign,
        /// Cost functional; defaults to max for optimal-max, min otherwise.
        #[arg(long, value_enum)]
        problem: Option<ProblemArg>,
        #[arg(long, default_value_t = 1e4, allow_hyphen_values = true)]
        max_time: f64,
        /// Disable the Brownian-bridge crossing tests.
        #[arg(long)]
        no_bridge: bool,
    },
    /// Run the diagnostic checks on a solved instance.
    Check {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, default_value_t = 1001)]
        grid: usize,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
}

/// Formats with 15 significant digits, positional where readable.
pub fn fmt_num(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..15).contains(&exp) {
        format!("{:.*}", (14 - exp) as usize, x)
    } else {
        format!("{x:.14e}")
    }
}

fn kv(out: &mut dyn Write, key: &str, value: impl std::fmt::Display) -> Result<()> {
    writeln!(out, "{key:<16} {value}").map_err(io_err)
}

fn io_err(e: std::io::Error) -> Error {
    Error::Internal(format!("write failed: {e}"))
}

fn csv_err(e: csv::Error) -> Error {
    Error::Internal(format!("csv: {e}"))
}

/// Parses `argv` (including the program name), executes the subcommand and
/// returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_domain_error() {
                EXIT_DOMAIN
            } else {
                EXIT_FAILURE
            }
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Solve(instance) => {
            let params = instance.params()?;
            let (min, max) = solve(&params)?;
            kv(out, "mu", fmt_num(params.mu()))?;
            kv(out, "cost", fmt_num(params.cost()))?;
            kv(out, "sigma", fmt_num(params.sigma()))?;
            kv(out, "critical_cost", fmt_num(min.critical_cost))?;
            kv(out, "degenerate", min.degenerate)?;
            kv(out, "a_c", fmt_num(min.a_c))?;
            kv(out, "b_c", fmt_num(min.b_c))?;
            kv(out, "a_max", fmt_num(max.a_max))?;
            kv(out, "b_max", fmt_num(max.b_max))?;
            kv(out, "alpha_c", fmt_num(min.alpha_c))?;
            kv(out, "beta_c", fmt_num(min.beta_c))?;
            kv(out, "gamma_c", fmt_num(max.gamma_c))?;
            kv(out, "delta_c", fmt_num(max.delta_c))?;
            kv(out, "t_c", fmt_num(min.t_c))?;
            kv(out, "s_c", fmt_num(min.s_c))?;
            kv(out, "s_max", fmt_num(max.s_max))?;
            kv(out, "m_tilde", fmt_num(min.m_tilde))?;
        }
        Command::CriticalCost(drift) => {
            let params = ProblemParams::new(drift.mu, 1.0, drift.sigma)?;
            let mu = params.reduced().mu();
            kv(
                out,
                "critical_cost",
                fmt_num(critical_cost(mu)? * params.value_scale()),
            )?;
            kv(out, "x_star", fmt_num(critical_threshold(mu)?))?;
        }
        Command::Value {
            instance,
            x,
            drift,
            problem,
        } => {
            let (min, max) = solve(&instance.params()?)?;
            let v = match problem {
                ProblemArg::Min => min.value(x, drift)?,
                ProblemArg::Max => max.value(x, drift)?,
            };
            writeln!(out, "{}", fmt_num(v)).map_err(io_err)?;
        }
        Command::Curve { instance, grid } => {
            if grid < 2 {
                return Err(Error::InvalidConfig(format!(
                    "grid must have at least 2 points, got {grid}"
                )));
            }
            let params = instance.params()?;
            let (min, max) = solve(&params)?;
            let nu = params.reduced().mu();
            let scale = params.value_scale();
            let mut w = csv::Writer::from_writer(out);
            w.write_record([
                "x",
                "V_min_up",
                "V_min_down",
                "V_max_up",
                "V_max_down",
                "f_plus",
                "f_minus",
            ])
            .map_err(csv_err)?;
            for i in 0..grid {
                let x = i as f64 / (grid - 1) as f64;
                let row = [
                    x,
                    min.value(x, DriftSign::Up)?,
                    min.value(x, DriftSign::Down)?,
                    max.value(x, DriftSign::Up)?,
                    max.value(x, DriftSign::Down)?,
                    scale * expected_exit_time(nu, x)?,
                    scale * expected_exit_time(-nu, x)?,
                ];
                w.write_record(row.iter().map(|v| fmt_num(*v)))
                    .map_err(csv_err)?;
            }
            w.flush().map_err(io_err)?;
        }
        Command::Simulate {
            instance,
            policy,
            shift,
            paths,
            dt,
            seed,
            x0,
            drift,
            problem,
            max_time,
            no_bridge,
        } => {
            let params = instance.params()?;
            let (min, max) = solve(&params)?;
            let pol: Policy = match policy {
                PolicyArg::OptimalMin => optimal_min_policy(&min),
                PolicyArg::OptimalMax => optimal_max_policy(&max),
                PolicyArg::Constant => constant_policy(drift),
                PolicyArg::Perturbed => perturbed_min_policy(&min, shift),
            };
            let problem = problem.unwrap_or(match policy {
                PolicyArg::OptimalMax => ProblemArg::Max,
                _ => ProblemArg::Min,
            });
            let config = SimConfig {
                dt,
                n_paths: paths,
                seed,
                max_time,
                bridge_correction: !no_bridge,
            };
            let est = estimate_cost(&params, &pol, x0, drift, &config, problem.into())?;
            let optimal = match problem {
                ProblemArg::Min => min.value(x0, drift)?,
                ProblemArg::Max => max.value(x0, drift)?,
            };
            kv(out, "policy", &pol)?;
            kv(out, "x0", fmt_num(x0))?;
            kv(out, "drift", drift)?;
            kv(out, "mean_cost", fmt_num(est.mean_cost))?;
            kv(out, "std_error", fmt_num(est.std_error))?;
            kv(out, "mean_tau", fmt_num(est.mean_tau))?;
            kv(out, "tau_std_error", fmt_num(est.tau_std_error))?;
            kv(out, "mean_switches", fmt_num(est.mean_switches))?;
            kv(out, "n_paths", est.n_paths)?;
            kv(out, "n_truncated", est.n_truncated)?;
            kv(out, "optimal_value", fmt_num(optimal))?;
        }
        Command::Check {
            instance,
            grid,
            format,
        } => {
            let report = full_report(&instance.params()?, grid)?;
            let text = match format {
                FormatArg::Text => report.to_text(),
                FormatArg::Csv => report.to_csv()?,
            };
            write!(out, "{text}").map_err(io_err)?;
            if !report.all_passed() {
                return Ok(EXIT_FAILURE);
            }
        }
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("driftswitch").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    fn field(out: &str, key: &str) -> f64 {
        out.lines()
            .find_map(|l| {
                let mut it = l.split_whitespace();
                (it.next() == Some(key)).then(|| it.next().unwrap().parse().unwrap())
            })
            .unwrap_or_else(|| panic!("no {key} in {out}"))
    }

    #[test]
    fn solve_prints_thresholds() {
        let (code, out, _) = call(&["solve", "--mu", "1", "--cost", "0.01"]);
        assert_eq!(code, 0);
        assert!((field(&out, "a_c") - 0.0882).abs() < 5e-4);
        assert!((field(&out, "b_max") - 0.9387).abs() < 5e-4);
        assert_eq!(field(&out, "a_max"), 1.0 - field(&out, "b_c"));
    }

    #[test]
    fn critical_cost_command() {
        let (code, out, _) = call(&["critical-cost", "--mu", "1"]);
        assert_eq!(code, 0);
        assert!((field(&out, "critical_cost") - 0.0583).abs() < 1e-4);
    }

    #[test]
    fn value_command_accepts_signed_drift() {
        let (code, out, _) = call(&[
            "value",
            "--mu",
            "1",
            "--cost",
            "0.04",
            "--x",
            "0.3",
            "--drift",
            "-1",
            "--problem",
            "max",
        ]);
        assert_eq!(code, 0, "{out}");
        let v: f64 = out.trim().parse().unwrap();
        assert!(v > 0.0);
    }

    #[test]
    fn curve_csv_shape() {
        let (code, out, _) = call(&["curve", "--mu", "1", "--cost", "0.04", "--grid", "11"]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines.len(), 12);
        assert_eq!(
            lines[0],
            "x,V_min_up,V_min_down,V_max_up,V_max_down,f_plus,f_minus"
        );
        assert!(lines[1].starts_with("0,0,0,0,0,0,0"));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(
            call(&["solve", "--mu", "-1", "--cost", "0.01"]).0,
            EXIT_DOMAIN
        );
        assert_eq!(call(&["solve", "--mu", "1"]).0, EXIT_USAGE);
        assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(call(&["--help"]).0, EXIT_OK);
        let (code, _, err) = call(&[
            "value", "--mu", "1", "--cost", "0.01", "--x", "2", "--drift", "+1",
        ]);
        assert_eq!(code, EXIT_DOMAIN);
        assert!(err.starts_with("error:"));
        assert_eq!(
            call(&["value", "--mu", "1", "--cost", "0.01", "--x", "0.5", "--drift", "0"]).0,
            EXIT_USAGE
        );
    }

    #[test]
    fn check_command_formats() {
        let (code, out, _) = call(&["check", "--mu", "1", "--cost", "0.01", "--grid", "101"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.lines().skip(1).all(|l| l.starts_with("PASS")));
        let (code, out, _) = call(&[
            "check", "--mu", "1", "--cost", "0.01", "--grid", "101", "--format", "csv",
        ]);
        assert_eq!(code, 0);
        assert!(out.starts_with("check,max_violation"));
    }

    #[test]
    fn simulate_small_run() {
        let (code, out, err) = call(&[
            "simulate", "--mu", "1", "--cost", "0.04", "--policy", "constant", "--paths", "200",
            "--dt", "1e-3", "--x0", "0.5", "--seed", "3",
        ]);
        assert_eq!(code, 0, "{err}");
        assert_eq!(field(&out, "n_paths"), 200.0);
        assert_eq!(field(&out, "mean_switches"), 0.0);
        let (code, _, _) = call(&[
            "simulate", "--mu", "1", "--cost", "0.04", "--paths", "10", "--dt", "0", "--x0", "0.5",
        ]);
        assert_eq!(code, EXIT_DOMAIN);
    }

    #[test]
    fn number_format() {
        assert_eq!(fmt_num(0.0), "0");
        assert_eq!(fmt_num(1.0), "1.00000000000000");
        assert_eq!(fmt_num(0.25), "0.250000000000000");
        assert_eq!(fmt_num(1.5e-7), "1.50000000000000e-7");
        assert_eq!(fmt_num(-0.0583), "-0.0583000000000000");
    }
}
