//! Statistical properties of the simulator at reduced path counts.

use driftswitch::closedform::expected_exit_time;
use driftswitch::fbp::{solve, Problem};
use driftswitch::mc::{estimate_cost, SimConfig};
use driftswitch::policy::{constant_policy, optimal_min_policy};
use driftswitch::{DriftSign, ProblemParams};

fn config(n_paths: usize, dt: f64, seed: u64, bridge: bool) -> SimConfig {
    SimConfig {
        dt,
        n_paths,
        seed,
        max_time: 1e4,
        bridge_correction: bridge,
    }
}

#[test]
fn estimates_are_deterministic() {
    let p = ProblemParams::unit(1.0, 0.04).unwrap();
    let (min, _) = solve(&p).unwrap();
    let pol = optimal_min_policy(&min);
    let c = config(5_000, 1e-3, 42, true);
    let a = estimate_cost(&p, &pol, 0.4, DriftSign::Up, &c, Problem::Min).unwrap();
    let b = estimate_cost(&p, &pol, 0.4, DriftSign::Up, &c, Problem::Min).unwrap();
    assert_eq!(a, b);
}

#[test]
fn mirrored_start_gives_the_same_cost() {
    let p = ProblemParams::unit(1.0, 0.04).unwrap();
    let (min, _) = solve(&p).unwrap();
    let pol = optimal_min_policy(&min);
    let up = estimate_cost(
        &p,
        &pol,
        0.3,
        DriftSign::Up,
        &config(20_000, 1e-4, 1, true),
        Problem::Min,
    )
    .unwrap();
    let down = estimate_cost(
        &p,
        &pol,
        0.7,
        DriftSign::Down,
        &config(20_000, 1e-4, 2, true),
        Problem::Min,
    )
    .unwrap();
    let se = (up.std_error.powi(2) + down.std_error.powi(2)).sqrt();
    assert!(
        (up.mean_cost - down.mean_cost).abs() <= 3.0 * se,
        "{up:?} {down:?}"
    );
}

#[test]
fn refining_the_step_reduces_exit_time_bias() {
    // Without the bridge test exits are detected late, biasing E[τ] upward
    // by O(√dt). Shared seeds keep the comparison tight.
    let p = ProblemParams::unit(1.0, 0.04).unwrap();
    let pol = constant_policy(DriftSign::Up);
    let exact = expected_exit_time(1.0, 0.5).unwrap();
    let errors: Vec<f64> = [4e-3, 1e-3, 2.5e-4]
        .iter()
        .map(|&dt| {
            let est = estimate_cost(
                &p,
                &pol,
                0.5,
                DriftSign::Up,
                &config(20_000, dt, 9, false),
                Problem::Min,
            )
            .unwrap();
            est.mean_tau - exact
        })
        .collect();
    assert!(errors[0] > errors[1] && errors[1] > errors[2], "{errors:?}");
    assert!(errors[0] > 0.0);
}

#[test]
fn bridge_correction_removes_most_of_the_bias() {
    let p = ProblemParams::unit(1.0, 0.04).unwrap();
    let pol = constant_policy(DriftSign::Up);
    let exact = expected_exit_time(1.0, 0.5).unwrap();
    let est = estimate_cost(
        &p,
        &pol,
        0.5,
        DriftSign::Up,
        &config(20_000, 4e-3, 9, true),
        Problem::Min,
    )
    .unwrap();
    assert!(
        (est.mean_tau - exact).abs() <= 3.0 * est.tau_std_error + 1e-3,
        "{est:?}"
    );
}

#[test]
fn above_critical_cost_the_optimal_policy_never_switches() {
    // With c above c* the optimal policy never switches away from its start.
    let p = ProblemParams::unit(1.0, 0.2).unwrap();
    let (min, _) = solve(&p).unwrap();
    assert!(min.degenerate);
    let est = estimate_cost(
        &p,
        &optimal_min_policy(&min),
        0.7,
        DriftSign::Up,
        &config(2_000, 1e-3, 5, true),
        Problem::Min,
    )
    .unwrap();
    assert_eq!(est.mean_switches, 0.0);
}
