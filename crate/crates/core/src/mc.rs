//! Monte Carlo simulation of the controlled diffusion
//! `dX = A·μ dt + σ dB` with a switching policy, killed on leaving `]0,1[`.
//!
//! Each path draws from its own ChaCha8 stream selected by
//! `(seed, path_index)`, so results do not depend on scheduling. Outcomes
//! are collected in path order and reduced with pairwise summation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fbp::{Problem, Span};
use crate::model::{check_unit_interval, DriftSign, ProblemParams, State};
use crate::policy::Policy;

/// Largest admissible fraction of paths reaching `max_time`.
pub const MAX_TRUNCATED_FRACTION: f64 = 1e-3;

/// Crossing probabilities below `e^{-50}` are not sampled.
const BRIDGE_CUTOFF: f64 = 50.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimConfig {
    pub dt: f64,
    pub n_paths: usize,
    pub seed: u64,
    /// Paths still alive at this time are abandoned and marked truncated.
    pub max_time: f64,
    /// Test for boundary crossings of the Brownian bridge between grid
    /// points, both for exits and for entries into the switching set.
    pub bridge_correction: bool,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            dt: 1e-4,
            n_paths: 100_000,
            seed: 0,
            max_time: 1e4,
            bridge_correction: true,
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "dt must be positive, got {}",
                self.dt
            )));
        }
        if self.n_paths == 0 {
            return Err(Error::InvalidConfig("n_paths must be at least 1".into()));
        }
        if !(self.max_time > 0.0 && self.max_time.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "max_time must be positive, got {}",
                self.max_time
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PathOutcome {
    pub tau: f64,
    pub n_switches: u64,
    /// Boundary through which the path left (`0` or `1`); `None` if
    /// truncated.
    pub exit_side: Option<u8>,
    pub truncated: bool,
}

impl PathOutcome {
    /// `τ + cN` for the expulsion problem, `τ - cN` for confinement.
    pub fn cost(&self, cost: f64, problem: Problem) -> f64 {
        let penalty = cost * self.n_switches as f64;
        match problem {
            Problem::Min => self.tau + penalty,
            Problem::Max => self.tau - penalty,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct McEstimate {
    pub mean_cost: f64,
    pub std_error: f64,
    pub mean_tau: f64,
    pub tau_std_error: f64,
    pub mean_switches: f64,
    pub n_paths: usize,
    pub n_truncated: usize,
}

/// Empirical distribution of the number of switches.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SwitchHistogram {
    /// `counts[k]` = number of paths with exactly `k` switches.
    pub counts: Vec<u64>,
    pub n_paths: usize,
}

impl SwitchHistogram {
    pub fn count(&self, k: usize) -> u64 {
        self.counts.get(k).copied().unwrap_or(0)
    }

    pub fn pmf(&self, k: usize) -> f64 {
        self.count(k) as f64 / self.n_paths as f64
    }
}

fn path_rng(seed: u64, path_index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(path_index);
    rng
}

/// Probability that a Brownian bridge over one step, with both endpoints at
/// distances `d0, d1 > 0` on the same side of a level, touches the level.
fn bridge_touch(d0: f64, d1: f64, var: f64) -> Option<f64> {
    let arg = 2.0 * d0 * d1 / var;
    (arg < BRIDGE_CUTOFF).then(|| (-arg).exp())
}

fn sampled_touch(d0: f64, d1: f64, var: f64, rng: &mut ChaCha8Rng) -> bool {
    match bridge_touch(d0, d1, var) {
        Some(p) => rng.random::<f64>() < p,
        None => false,
    }
}

/// Whether the continuous path between `from` and `to` (both outside
/// `set`) entered it.
fn entered(set: &Span, from: f64, to: f64, var: f64, rng: &mut ChaCha8Rng) -> bool {
    // Point sets are hit with probability zero by the bridge test's
    // resolution; leave them to `decide`.
    if set.hi <= set.lo {
        return false;
    }
    if from > set.hi && to > set.hi {
        sampled_touch(from - set.hi, to - set.hi, var, rng)
    } else if from < set.lo && to < set.lo {
        sampled_touch(set.lo - from, set.lo - to, var, rng)
    } else {
        // Endpoints on opposite sides of the whole set.
        true
    }
}

/// Simulates one path started at `(x0, a0)` and returns its exit time and
/// switch count.
pub fn simulate_path(
    params: &ProblemParams,
    policy: &Policy,
    x0: f64,
    a0: DriftSign,
    config: &SimConfig,
    path_index: u64,
) -> Result<PathOutcome> {
    check_unit_interval("x0", x0)?;
    config.validate()?;
    Ok(run_path(params, policy, x0, a0, config, path_index))
}

fn run_path(
    params: &ProblemParams,
    policy: &Policy,
    x0: f64,
    a0: DriftSign,
    config: &SimConfig,
    path_index: u64,
) -> PathOutcome {
    if x0 <= 0.0 || x0 >= 1.0 {
        return PathOutcome {
            tau: 0.0,
            n_switches: 0,
            exit_side: Some(u8::from(x0 >= 1.0)),
            truncated: false,
        };
    }
    let mut rng = path_rng(config.seed, path_index);
    let dt = config.dt;
    let var = params.sigma() * params.sigma() * dt;
    let noise = var.sqrt();
    let mu_dt = params.mu() * dt;
    let max_steps = (config.max_time / dt).ceil() as u64;

    let mut x = x0;
    let mut n_switches = 0u64;
    // One consultation at t = 0 with the drift in force just before.
    let mut drift = policy.decide(State { x, drift: a0 });
    if drift != a0 {
        n_switches += 1;
    }

    for step in 1..=max_steps {
        let z: f64 = rng.sample(StandardNormal);
        let next = x + drift.value() * mu_dt + noise * z;
        let exit = if next <= 0.0 {
            Some(0)
        } else if next >= 1.0 {
            Some(1)
        } else if config.bridge_correction {
            if sampled_touch(x, next, var, &mut rng) {
                Some(0)
            } else if sampled_touch(1.0 - x, 1.0 - next, var, &mut rng) {
                Some(1)
            } else {
                None
            }
        } else {
            None
        };
        if let Some(side) = exit {
            return PathOutcome {
                tau: step as f64 * dt,
                n_switches,
                exit_side: Some(side),
                truncated: false,
            };
        }

        let decided = policy.decide(State { x: next, drift });
        if decided != drift {
            n_switches += 1;
            drift = decided;
        } else if config.bridge_correction {
            if let Some(set) = policy.switching_set(drift) {
                if entered(set, x, next, var, &mut rng) {
                    n_switches += 1;
                    drift = -drift;
                    // The switch happened inside the step; the new drift
                    // gets its own look at the current position.
                    let again = policy.decide(State { x: next, drift });
                    if again != drift {
                        n_switches += 1;
                        drift = again;
                    }
                }
            }
        }
        x = next;
    }
    PathOutcome {
        tau: config.max_time,
        n_switches,
        exit_side: None,
        truncated: true,
    }
}

/// Simulates `config.n_paths` independent paths, returned in path order.
pub fn simulate_paths(
    params: &ProblemParams,
    policy: &Policy,
    x0: f64,
    a0: DriftSign,
    config: &SimConfig,
) -> Result<Vec<PathOutcome>> {
    check_unit_interval("x0", x0)?;
    config.validate()?;
    Ok((0..config.n_paths as u64)
        .into_par_iter()
        .map(|i| run_path(params, policy, x0, a0, config, i))
        .collect())
}

/// Fixed-order pairwise summation.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    const LEAF: usize = 64;
    if values.len() <= LEAF {
        values.iter().sum()
    } else {
        let (l, r) = values.split_at(values.len() / 2);
        pairwise_sum(l) + pairwise_sum(r)
    }
}

/// Sample mean and standard error of the mean.
pub fn mean_and_std_error(values: &[f64]) -> (f64, f64) {
    let n = values.len();
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mean = pairwise_sum(values) / n as f64;
    if n == 1 {
        return (mean, 0.0);
    }
    let sq: Vec<f64> = values.iter().map(|v| (v - mean) * (v - mean)).collect();
    let var = pairwise_sum(&sq) / (n - 1) as f64;
    (mean, (var / n as f64).sqrt())
}

/// Reduces path outcomes to a cost estimate.
pub fn summarize(outcomes: &[PathOutcome], cost: f64, problem: Problem) -> McEstimate {
    let costs: Vec<f64> = outcomes.iter().map(|o| o.cost(cost, problem)).collect();
    let taus: Vec<f64> = outcomes.iter().map(|o| o.tau).collect();
    let switches: Vec<f64> = outcomes.iter().map(|o| o.n_switches as f64).collect();
    let (mean_cost, std_error) = mean_and_std_error(&costs);
    let (mean_tau, tau_std_error) = mean_and_std_error(&taus);
    McEstimate {
        mean_cost,
        std_error,
        mean_tau,
        tau_std_error,
        mean_switches: pairwise_sum(&switches) / outcomes.len() as f64,
        n_paths: outcomes.len(),
        n_truncated: outcomes.iter().filter(|o| o.truncated).count(),
    }
}

/// Estimates `J_c` (min) or `J_c^max` (max) of `policy` from `(x0, a0)`.
pub fn estimate_cost(
    params: &ProblemParams,
    policy: &Policy,
    x0: f64,
    a0: DriftSign,
    config: &SimConfig,
    problem: Problem,
) -> Result<McEstimate> {
    let outcomes = simulate_paths(params, policy, x0, a0, config)?;
    let est = summarize(&outcomes, params.cost(), problem);
    if est.n_truncated as f64 > MAX_TRUNCATED_FRACTION * est.n_paths as f64 {
        return Err(Error::TruncationExcess {
            truncated: est.n_truncated,
            n_paths: est.n_paths,
        });
    }
    Ok(est)
}

/// Empirical distribution of the number of switches before exit.
pub fn switch_pmf(
    params: &ProblemParams,
    policy: &Policy,
    x0: f64,
    a0: DriftSign,
    config: &SimConfig,
) -> Result<SwitchHistogram> {
    let outcomes = simulate_paths(params, policy, x0, a0, config)?;
    Ok(histogram(&outcomes))
}

pub fn histogram(outcomes: &[PathOutcome]) -> SwitchHistogram {
    let top = outcomes.iter().map(|o| o.n_switches).max().unwrap_or(0) as usize;
    let mut counts = vec![0u64; top + 1];
    for o in outcomes {
        counts[o.n_switches as usize] += 1;
    }
    SwitchHistogram {
        counts,
        n_paths: outcomes.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closedform::expected_exit_time;
    use crate::fbp::solve_min;
    use crate::policy::{constant_policy, optimal_min_policy};

    fn cfg(n_paths: usize, dt: f64) -> SimConfig {
        SimConfig {
            dt,
            n_paths,
            seed: 7,
            ..SimConfig::default()
        }
    }

    #[test]
    fn start_on_boundary_exits_immediately() {
        let p = ProblemParams::unit(1.0, 0.01).unwrap();
        let pol = constant_policy(DriftSign::Up);
        for x0 in [0.0, 1.0] {
            let o = simulate_path(&p, &pol, x0, DriftSign::Up, &cfg(1, 1e-4), 0).unwrap();
            assert_eq!(o.tau, 0.0);
            assert_eq!(o.n_switches, 0);
            assert!(!o.truncated);
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let p = ProblemParams::unit(1.0, 0.01).unwrap();
        let pol = constant_policy(DriftSign::Up);
        assert!(simulate_path(&p, &pol, 1.5, DriftSign::Up, &cfg(1, 1e-4), 0).is_err());
        assert!(simulate_path(&p, &pol, 0.5, DriftSign::Up, &cfg(1, 0.0), 0).is_err());
        assert!(simulate_paths(&p, &pol, 0.5, DriftSign::Up, &cfg(0, 1e-4)).is_err());
    }

    #[test]
    fn paths_are_reproducible_and_independent_of_order() {
        let p = ProblemParams::unit(1.0, 0.01).unwrap();
        let sol = solve_min(&p).unwrap();
        let pol = optimal_min_policy(&sol);
        let c = cfg(64, 1e-3);
        let all = simulate_paths(&p, &pol, 0.6, DriftSign::Up, &c).unwrap();
        for i in [0u64, 17, 63] {
            let one = simulate_path(&p, &pol, 0.6, DriftSign::Up, &c, i).unwrap();
            assert_eq!(one, all[i as usize]);
        }
        let again = simulate_paths(&p, &pol, 0.6, DriftSign::Up, &c).unwrap();
        assert_eq!(all, again);
        assert_ne!(all[0], all[1]);
    }

    #[test]
    fn truncation_is_reported() {
        let p = ProblemParams::unit(1.0, 0.01).unwrap();
        let pol = constant_policy(DriftSign::Up);
        let c = SimConfig {
            max_time: 1e-3,
            ..cfg(100, 1e-4)
        };
        let err = estimate_cost(&p, &pol, 0.5, DriftSign::Up, &c, Problem::Min).unwrap_err();
        assert!(matches!(err, Error::TruncationExcess { .. }));
        let o = simulate_path(&p, &pol, 0.5, DriftSign::Up, &c, 0).unwrap();
        assert!(o.truncated && o.tau == 1e-3 && o.exit_side.is_none());
    }

    #[test]
    fn constant_policy_never_switches() {
        let p = ProblemParams::unit(1.0, 0.04).unwrap();
        let pol = constant_policy(DriftSign::Up);
        let h = switch_pmf(&p, &pol, 0.3, DriftSign::Up, &cfg(500, 1e-3)).unwrap();
        assert_eq!(h.counts, vec![500]);
        assert_eq!(h.pmf(0), 1.0);
    }

    #[test]
    fn constant_policy_exit_time_is_close_to_closed_form() {
        let p = ProblemParams::unit(1.0, 0.04).unwrap();
        let pol = constant_policy(DriftSign::Up);
        let est = estimate_cost(
            &p,
            &pol,
            0.5,
            DriftSign::Up,
            &cfg(20_000, 1e-4),
            Problem::Min,
        )
        .unwrap();
        let exact = expected_exit_time(1.0, 0.5).unwrap();
        assert!((est.mean_tau - exact).abs() < 3.0 * est.tau_std_error + 2e-3);
        assert_eq!(est.mean_cost, est.mean_tau);
        assert_eq!(est.n_truncated, 0);
    }

    #[test]
    fn pairwise_sum_matches_naive_on_exact_data() {
        let v: Vec<f64> = (0..1000).map(|i| i as f64).collect();
        assert_eq!(pairwise_sum(&v), 499_500.0);
        let (m, se) = mean_and_std_error(&[1.0, 3.0]);
        assert_eq!(m, 2.0);
        assert!((se - 1.0).abs() < 1e-15);
    }

    #[test]
    fn bridge_probability_limits() {
        assert_eq!(bridge_touch(0.0, 0.1, 1e-4), Some(1.0));
        assert!(bridge_touch(0.5, 0.5, 1e-4).is_none());
        let p = bridge_touch(0.01, 0.01, 1e-4).unwrap();
        assert!((p - (-2.0f64).exp()).abs() < 1e-15);
    }
}
