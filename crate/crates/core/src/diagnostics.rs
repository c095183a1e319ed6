//! Numerical verification of a solved instance: generator residuals, smooth
//! and continuous fit at the free boundaries, the switching inequalities,
//! threshold equations, the σ-scaling reduction and the small-cost limit.
//!
//! Each check yields a [`CheckEntry`] holding the largest violation seen and
//! the threshold it is compared to. Strict inequalities are reported as
//! `max(0, margin - slack)` against a threshold of zero.

use std::fmt::Write as _;

use serde::Serialize;

use crate::closedform::zero_cost_value;
use crate::error::{Error, Result};
use crate::fbp::{
    h_max_tilde, h_min, h_min_tilde, solve, solve_max_from, solve_min, FbpSolutionMax,
    FbpSolutionMin, Side, ValueFunction,
};
use crate::model::{DriftSign, ProblemParams};

/// Grid points closer than this to a breakpoint are moved off it.
pub const BREAKPOINT_OFFSET: f64 = 1e-9;

/// Strict inequalities degenerate quadratically at the free boundaries
/// (smooth fit), so they are only asserted this far away from them.
pub const STRICT_EXCLUSION: f64 = 1e-4;

pub const ODE_TOL: f64 = 1e-8;
pub const SMOOTH_FIT_TOL: f64 = 1e-9;
pub const VALUE_GAP_TOL: f64 = 1e-12;
pub const ROOT_TOL: f64 = 1e-10;
pub const SCALING_TOL: f64 = 1e-10;
/// Relative slack demanded of strict inequalities.
pub const STRICT_MARGIN: f64 = 1e-12;

/// Costs used for the small-cost limit when none are supplied.
pub const DEFAULT_COST_SEQUENCE: [f64; 5] = [1e-2, 1e-3, 1e-4, 1e-5, 1e-6];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub max_violation: f64,
    pub threshold: f64,
    pub pass: bool,
}

impl CheckEntry {
    pub fn new(name: impl Into<String>, max_violation: f64, threshold: f64) -> Self {
        CheckEntry {
            name: name.into(),
            max_violation,
            threshold,
            // NaN violations fail.
            pass: max_violation <= threshold,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiagnosticsReport {
    pub instance: ProblemParams,
    pub checks: Vec<CheckEntry>,
    pub grid_size: usize,
}

impl DiagnosticsReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&CheckEntry> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let p = &self.instance;
        let _ = writeln!(
            out,
            "instance mu={} cost={} sigma={} grid={}",
            p.mu(),
            p.cost(),
            p.sigma(),
            self.grid_size
        );
        for c in &self.checks {
            let _ = writeln!(
                out,
                "{} {:<32} max_violation={:.6e} threshold={:.6e}",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.max_violation,
                c.threshold
            );
        }
        out
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Internal(format!("csv: {e}"));
        w.write_record(["check", "max_violation", "threshold", "pass"])
            .map_err(io)?;
        for c in &self.checks {
            w.write_record([
                c.name.clone(),
                format!("{:.15e}", c.max_violation),
                format!("{:.15e}", c.threshold),
                c.pass.to_string(),
            ])
            .map_err(io)?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| Error::Internal(format!("csv: {e}")))?;
        String::from_utf8(bytes).map_err(|e| Error::Internal(e.to_string()))
    }
}

fn check_grid_size(grid_size: usize) -> Result<()> {
    if grid_size < 10 {
        return Err(Error::InvalidConfig(format!(
            "grid_size must be at least 10, got {grid_size}"
        )));
    }
    Ok(())
}

/// Uniform grid on `[0, 1]` plus points just either side of each breakpoint,
/// with nothing closer than [`BREAKPOINT_OFFSET`] to a breakpoint.
fn grid(grid_size: usize, breakpoints: &[f64]) -> Vec<f64> {
    let near = |x: f64| {
        breakpoints
            .iter()
            .any(|b| (x - b).abs() < BREAKPOINT_OFFSET * 0.5)
    };
    let mut pts: Vec<f64> = (0..grid_size)
        .map(|i| i as f64 / (grid_size - 1) as f64)
        .filter(|&x| !near(x))
        .collect();
    for &b in breakpoints {
        for x in [b - BREAKPOINT_OFFSET, b + BREAKPOINT_OFFSET] {
            if (0.0..=1.0).contains(&x) && !near(x) {
                pts.push(x);
            }
        }
    }
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}

fn breakpoints<V: ValueFunction>(sol: &V) -> Vec<f64> {
    let (lo, hi) = sol.switching_interval();
    vec![lo, hi, 1.0 - hi, 1.0 - lo]
}

fn distance_to(x: f64, pts: &[f64]) -> f64 {
    pts.iter()
        .map(|b| (x - b).abs())
        .fold(f64::INFINITY, f64::min)
}

fn label<V: ValueFunction>(sol: &V) -> &'static str {
    match sol.problem() {
        crate::fbp::Problem::Min => "min",
        crate::fbp::Problem::Max => "max",
    }
}

fn ode_entries<V: ValueFunction>(sol: &V, grid_size: usize) -> Result<Vec<CheckEntry>> {
    let bps = breakpoints(sol);
    let pts = grid(grid_size, &bps);
    // Inside the switching set the residual is `±2μ ∂V/∂x(x, -a)`: positive
    // for expulsion, negative for confinement.
    let sign = match sol.problem() {
        crate::fbp::Problem::Min => 1.0,
        crate::fbp::Problem::Max => -1.0,
    };
    let mut worst_cont: f64 = 0.0;
    let mut worst_sign: f64 = 0.0;
    for a in DriftSign::BOTH {
        let region = sol.region(a);
        for &x in &pts {
            let r = sol.generator_residual(x, a)?;
            if region.in_continuation(x) {
                worst_cont = worst_cont.max(r.abs());
            } else if region.switching.contains_interior(x) {
                worst_sign = worst_sign.max((STRICT_MARGIN - sign * r).max(0.0));
            }
        }
    }
    let tag = label(sol);
    Ok(vec![
        CheckEntry::new(format!("ode_residual_{tag}"), worst_cont, ODE_TOL),
        CheckEntry::new(format!("switching_residual_sign_{tag}"), worst_sign, 0.0),
    ])
}

/// Generator residual `1 + aμV' + V''/2` in continuation regions and its sign
/// inside switching regions, for both problems and both drifts.
pub fn check_ode_residual(
    sol_min: &FbpSolutionMin,
    sol_max: &FbpSolutionMax,
    grid_size: usize,
) -> Result<Vec<CheckEntry>> {
    check_grid_size(grid_size)?;
    let mut out = ode_entries(sol_min, grid_size)?;
    out.extend(ode_entries(sol_max, grid_size)?);
    Ok(out)
}

fn fit_entries<V: ValueFunction>(sol: &V) -> Result<Vec<CheckEntry>> {
    let pw = sol.piecewise();
    let scale = sol.params().value_scale();
    let (lo, hi) = sol.switching_interval();
    let mut d_gap: f64 = 0.0;
    let mut v_gap: f64 = 0.0;
    for x in [lo, hi] {
        let l = sol.dvalue_dx_side(x, DriftSign::Up, Side::Left)?;
        let r = sol.dvalue_dx_side(x, DriftSign::Up, Side::Right)?;
        d_gap = d_gap.max((l - r).abs());
        let vl = pw.piece_towards(x, Side::Left).value(x);
        let vr = pw.piece_towards(x, Side::Right).value(x);
        v_gap = v_gap.max(scale * (vl - vr).abs());
    }
    let tag = label(sol);
    Ok(vec![
        CheckEntry::new(format!("smooth_fit_{tag}"), d_gap, SMOOTH_FIT_TOL),
        CheckEntry::new(format!("continuous_fit_{tag}"), v_gap, VALUE_GAP_TOL),
    ])
}

/// One-sided derivative gaps and value gaps at `a_c, b_c, a_max, b_max`.
///
/// By symmetry the drift `-1` boundaries are the mirror images of these.
pub fn check_smooth_fit(
    sol_min: &FbpSolutionMin,
    sol_max: &FbpSolutionMax,
) -> Result<Vec<CheckEntry>> {
    let mut out = fit_entries(sol_min)?;
    out.extend(fit_entries(sol_max)?);
    Ok(out)
}

fn switch_entries<V: ValueFunction>(sol: &V, grid_size: usize) -> Result<Vec<CheckEntry>> {
    let bps = breakpoints(sol);
    let pts = grid(grid_size, &bps);
    let c = sol.effective_cost();
    // Min: V(x,a) ≤ c + V(x,-a); max: V(x,a) ≥ V(x,-a) - c. Written as a
    // slack that is ≥ 0, with equality on the switching set.
    let slack = |x: f64, a: DriftSign| -> Result<(f64, f64)> {
        let here = sol.value(x, a)?;
        let there = sol.value(x, -a)?;
        let s = match sol.problem() {
            crate::fbp::Problem::Min => c + there - here,
            crate::fbp::Problem::Max => here - there + c,
        };
        Ok((s, here.abs().max(there.abs()).max(1.0)))
    };
    let mut strict: f64 = 0.0;
    let mut equality: f64 = 0.0;
    for a in DriftSign::BOTH {
        let region = sol.region(a);
        let sw = &region.switching;
        let mut on_switching: Vec<f64> = pts.iter().copied().filter(|&x| sw.contains(x)).collect();
        on_switching.extend([sw.lo, sw.hi]);
        for x in on_switching {
            let (s, scale) = slack(x, a)?;
            equality = equality.max(s.abs() / scale);
        }
        for &x in &pts {
            if region.in_continuation(x) && distance_to(x, &bps) >= STRICT_EXCLUSION {
                let (s, scale) = slack(x, a)?;
                strict = strict.max((STRICT_MARGIN * scale - s).max(0.0));
            }
        }
    }
    let tag = label(sol);
    Ok(vec![
        CheckEntry::new(format!("switch_inequality_{tag}"), strict, 0.0),
        CheckEntry::new(format!("switch_equality_{tag}"), equality, VALUE_GAP_TOL),
    ])
}

/// Strict switching inequality on continuation regions and equality on
/// switching regions. The equality gap is relative to `max(1, |V|)`.
pub fn check_switch_inequality(
    sol_min: &FbpSolutionMin,
    sol_max: &FbpSolutionMax,
    grid_size: usize,
) -> Result<Vec<CheckEntry>> {
    check_grid_size(grid_size)?;
    let mut out = switch_entries(sol_min, grid_size)?;
    out.extend(switch_entries(sol_max, grid_size)?);
    Ok(out)
}

/// Residuals of the three threshold equations at the computed roots.
/// Degenerate instances have no roots and yield no entries.
pub fn check_root_residuals(sol_min: &FbpSolutionMin, sol_max: &FbpSolutionMax) -> Vec<CheckEntry> {
    let p = &sol_min.params;
    let mut out = Vec::new();
    if !sol_min.degenerate {
        out.push(CheckEntry::new(
            "root_h",
            h_min(sol_min.t_c, p).abs(),
            ROOT_TOL,
        ));
        out.push(CheckEntry::new(
            "root_h_tilde",
            h_min_tilde(sol_min.s_c, sol_min.alpha_c, p).abs(),
            ROOT_TOL,
        ));
    }
    if !sol_max.degenerate {
        out.push(CheckEntry::new(
            "root_h_tilde_max",
            h_max_tilde(sol_max.s_max, sol_max.gamma_c, &sol_max.params).abs(),
            ROOT_TOL,
        ));
    }
    out
}

/// `0 < a_c ≤ b_c < 1/2 < a_max ≤ b_max < 1`, `a_max = 1 - b_c` and, away
/// from the critical cost, `b_max > 1 - a_c`.
pub fn check_ordering(sol_min: &FbpSolutionMin, sol_max: &FbpSolutionMax) -> CheckEntry {
    let (a, b) = (sol_min.a_c, sol_min.b_c);
    let (am, bm) = (sol_max.a_max, sol_max.b_max);
    // (gap, strict): each gap must be positive (strict) or non-negative.
    let mut gaps = vec![
        (a, true),
        (b - a, false),
        (0.5 - b, true),
        (am - 0.5, true),
        (bm - am, false),
        (1.0 - bm, true),
        (-(am - (1.0 - b)).abs(), false),
    ];
    if !sol_min.degenerate {
        gaps.push((bm - (1.0 - a), true));
    }
    let violation = gaps
        .into_iter()
        .map(|(g, strict)| {
            if g > 0.0 || (!strict && g == 0.0) {
                0.0
            } else {
                (-g).max(f64::MIN_POSITIVE)
            }
        })
        .fold(0.0, f64::max);
    CheckEntry::new("threshold_ordering", violation, 0.0)
}

/// The σ-problem against `σ^{-2}` times the unit-noise problem with
/// `(μ/σ², cσ²)`, threshold invariance under σ, and the generator
/// `1 + aμV' + (σ²/2)V''` of the σ-problem in its continuation regions.
pub fn check_scaling(mu: f64, c: f64, sigma: f64, grid_size: usize) -> Result<Vec<CheckEntry>> {
    check_grid_size(grid_size)?;
    let direct = ProblemParams::new(mu, c, sigma)?;
    let unit = ProblemParams::unit(mu / (sigma * sigma), c * sigma * sigma)?;
    let (dmin, dmax) = solve(&direct)?;
    let (umin, umax) = solve(&unit)?;
    let s2 = sigma * sigma;

    let mut identity: f64 = 0.0;
    for i in 0..grid_size {
        let x = i as f64 / (grid_size - 1) as f64;
        for a in DriftSign::BOTH {
            identity = identity.max((dmin.value(x, a)? - umin.value(x, a)? / s2).abs());
            identity = identity.max((dmax.value(x, a)? - umax.value(x, a)? / s2).abs());
        }
    }
    let thresholds = [
        (dmin.a_c, umin.a_c),
        (dmin.b_c, umin.b_c),
        (dmax.a_max, umax.a_max),
        (dmax.b_max, umax.b_max),
    ]
    .iter()
    .map(|(p, q)| (p - q).abs())
    .fold(0.0, f64::max);

    let mut generator: f64 = 0.0;
    let pts = grid(grid_size, &breakpoints(&dmin));
    let pts_max = grid(grid_size, &breakpoints(&dmax));
    for a in DriftSign::BOTH {
        let m = a.value() * mu;
        let r = dmin.region(a);
        for &x in pts.iter().filter(|&&x| r.in_continuation(x)) {
            let g = 1.0 + m * dmin.dvalue_dx(x, a)? + 0.5 * s2 * dmin.d2value_dx2(x, a)?;
            generator = generator.max(g.abs());
        }
        let r = dmax.region(a);
        for &x in pts_max.iter().filter(|&&x| r.in_continuation(x)) {
            let g = 1.0 + m * dmax.dvalue_dx(x, a)? + 0.5 * s2 * dmax.d2value_dx2(x, a)?;
            generator = generator.max(g.abs());
        }
    }
    Ok(vec![
        CheckEntry::new("scaling_identity", identity, SCALING_TOL),
        CheckEntry::new("scaling_thresholds", thresholds, 1e-14),
        CheckEntry::new("scaling_generator", generator, ODE_TOL),
    ])
}

/// `(a_c, b_c, sup |V - V_0|, |α_c - α_0|, |β_c - β_0|)` for one cost.
type LimitRow = (f64, f64, f64, f64, f64);

/// Behaviour along a decreasing cost sequence: `a_c ↓ 0`, `b_c ↑ 1/2`,
/// `α_c`, `β_c` approach their limits and the value approaches the
/// zero-cost value in sup norm.
///
/// The final-value thresholds are `1e-3` for the value and `1e-2` for the
/// thresholds and coefficients, which converge like `c^{1/3}`.
pub fn check_zero_cost_limit(mu: f64, costs: &[f64], grid_size: usize) -> Result<Vec<CheckEntry>> {
    check_grid_size(grid_size)?;
    if costs.is_empty() || costs.windows(2).any(|w| w[1] >= w[0]) || costs[0] <= 0.0 {
        return Err(Error::InvalidConfig(
            "cost sequence must be positive and strictly decreasing".into(),
        ));
    }
    let alpha_lim = -(-mu).exp() / (2.0 * mu * mu);
    let beta_lim = (-mu).exp() / (2.0 * mu * mu) - 1.0 / (mu * mu);
    let mut rows: Vec<LimitRow> = Vec::with_capacity(costs.len());
    for &c in costs {
        let sol = solve_min(&ProblemParams::unit(mu, c)?)?;
        let mut dist: f64 = 0.0;
        for i in 0..grid_size {
            let x = i as f64 / (grid_size - 1) as f64;
            let v0 = zero_cost_value(mu, x)?;
            for a in DriftSign::BOTH {
                dist = dist.max((sol.value(x, a)? - v0).abs());
            }
        }
        rows.push((
            sol.a_c,
            sol.b_c,
            dist,
            (sol.alpha_c - alpha_lim).abs(),
            (sol.beta_c - beta_lim).abs(),
        ));
    }
    // Largest step in the wrong direction; zero when monotone.
    let non_monotone = |f: &dyn Fn(&LimitRow) -> f64| {
        rows.windows(2)
            .map(|w| (f(&w[1]) - f(&w[0])).max(0.0))
            .fold(0.0, f64::max)
    };
    let last = rows[rows.len() - 1];
    Ok(vec![
        CheckEntry::new("zero_cost_a_decreasing", non_monotone(&|r| r.0), 0.0),
        CheckEntry::new("zero_cost_b_increasing", non_monotone(&|r| -r.1), 0.0),
        CheckEntry::new("zero_cost_distance_decreasing", non_monotone(&|r| r.2), 0.0),
        CheckEntry::new("zero_cost_final_a", last.0, 1e-2),
        CheckEntry::new("zero_cost_final_b", (last.1 - 0.5).abs(), 1e-2),
        CheckEntry::new("zero_cost_final_distance", last.2, 1e-3),
        CheckEntry::new("zero_cost_alpha_approach", non_monotone(&|r| r.3), 0.0),
        CheckEntry::new("zero_cost_beta_approach", non_monotone(&|r| r.4), 0.0),
        CheckEntry::new("zero_cost_alpha_limit", last.3, 1e-2),
        CheckEntry::new("zero_cost_beta_limit", last.4, 1e-2),
    ])
}

/// Every check for one instance. The small-cost limit uses the instance's
/// drift with [`DEFAULT_COST_SEQUENCE`].
pub fn full_report(params: &ProblemParams, grid_size: usize) -> Result<DiagnosticsReport> {
    check_grid_size(grid_size)?;
    let sol_min = solve_min(params)?;
    let sol_max = solve_max_from(&sol_min)?;
    let mut checks = Vec::new();
    checks.extend(check_root_residuals(&sol_min, &sol_max));
    checks.push(check_ordering(&sol_min, &sol_max));
    checks.extend(check_ode_residual(&sol_min, &sol_max, grid_size)?);
    checks.extend(check_smooth_fit(&sol_min, &sol_max)?);
    checks.extend(check_switch_inequality(&sol_min, &sol_max, grid_size)?);
    checks.extend(check_scaling(
        params.mu(),
        params.cost(),
        params.sigma(),
        grid_size,
    )?);
    let reduced_mu = params.reduced().mu();
    checks.extend(check_zero_cost_limit(
        reduced_mu,
        &DEFAULT_COST_SEQUENCE,
        grid_size,
    )?);
    Ok(DiagnosticsReport {
        instance: *params,
        checks,
        grid_size,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closedform::critical_cost;

    fn solved(mu: f64, c: f64) -> (FbpSolutionMin, FbpSolutionMax) {
        solve(&ProblemParams::unit(mu, c).unwrap()).unwrap()
    }

    fn assert_all_pass(entries: &[CheckEntry]) {
        for e in entries {
            assert!(e.pass, "{e:?}");
        }
    }

    #[test]
    fn reference_instance_passes_everything() {
        let report = full_report(&ProblemParams::unit(1.0, 0.01).unwrap(), 1001).unwrap();
        assert!(report.all_passed(), "{}", report.to_text());
        assert!(report.get("ode_residual_min").unwrap().max_violation < 1e-8);
        assert!(report.get("smooth_fit_max").is_some());
    }

    #[test]
    fn stress_instance_smooth_fit() {
        let c = 0.9 * critical_cost(0.1).unwrap();
        let (lo, hi) = solved(0.1, c);
        assert_all_pass(&check_smooth_fit(&lo, &hi).unwrap());
        assert_all_pass(&check_ode_residual(&lo, &hi, 501).unwrap());
    }

    #[test]
    fn degenerate_instance_has_zero_residual_everywhere() {
        let (lo, hi) = solved(1.0, 0.2);
        assert!(lo.degenerate);
        let entries = check_ode_residual(&lo, &hi, 1001).unwrap();
        assert_all_pass(&entries);
        assert!(check_root_residuals(&lo, &hi).is_empty());
        assert!(check_ordering(&lo, &hi).pass);
    }

    #[test]
    fn switching_residual_is_twice_mu_times_mirrored_slope() {
        let (lo, _) = solved(1.0, 0.01);
        let x = 0.5 * (lo.a_c + lo.b_c);
        let r = lo.generator_residual(x, DriftSign::Up).unwrap();
        let d = lo.dvalue_dx(x, DriftSign::Down).unwrap();
        assert!(r > 0.0);
        assert!((r - 2.0 * d).abs() < 1e-12);
    }

    #[test]
    fn switch_gap_on_mirrored_switching_set_is_twice_the_cost() {
        let (lo, _) = solved(1.0, 0.04);
        let x = 1.0 - 0.5 * (lo.a_c + lo.b_c);
        let gap =
            0.04 + lo.value(x, DriftSign::Down).unwrap() - lo.value(x, DriftSign::Up).unwrap();
        assert!((gap - 0.08).abs() < 1e-12);
        let v =
            lo.value(0.5, DriftSign::Down).unwrap() + 0.04 - lo.value(0.5, DriftSign::Up).unwrap();
        assert!(v > 0.0);
        assert_all_pass(
            &check_switch_inequality(&lo, &solve_max_from(&lo).unwrap(), 1001).unwrap(),
        );
    }

    #[test]
    fn scaling_checks() {
        assert_all_pass(&check_scaling(1.0, 0.01, 2.0, 1001).unwrap());
        assert_all_pass(&check_scaling(2.0, 0.05, 0.5, 1001).unwrap());
        let id = check_scaling(1.0, 0.01, 1.0, 101).unwrap();
        assert_eq!(id[0].max_violation, 0.0);
    }

    #[test]
    fn zero_cost_limit() {
        let e = check_zero_cost_limit(1.0, &DEFAULT_COST_SEQUENCE, 1001).unwrap();
        assert_all_pass(&e);
        assert!(check_zero_cost_limit(1.0, &[1e-3, 1e-2], 101).is_err());
    }

    #[test]
    fn grid_avoids_breakpoints() {
        let g = grid(11, &[0.3, 0.5]);
        assert!(g
            .iter()
            .all(|x| (x - 0.3).abs() >= 0.5e-9 && (x - 0.5).abs() >= 0.5e-9));
        assert!(g.contains(&(0.5 + BREAKPOINT_OFFSET)));
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        assert!(check_ode_residual(&solved(1.0, 0.01).0, &solved(1.0, 0.01).1, 5).is_err());
    }

    #[test]
    fn report_serializes() {
        let r = full_report(&ProblemParams::unit(1.0, 0.04).unwrap(), 101).unwrap();
        let csv = r.to_csv().unwrap();
        assert!(csv.starts_with("check,max_violation,threshold,pass\n"));
        assert_eq!(csv.lines().count(), r.checks.len() + 1);
        assert!(r.to_text().lines().count() == r.checks.len() + 1);
    }

    #[test]
    fn failing_entry_reports_failure() {
        assert!(!CheckEntry::new("x", 2.0, 1.0).pass);
        assert!(!CheckEntry::new("x", f64::NAN, 1.0).pass);
        assert!(CheckEntry::new("x", 0.0, 0.0).pass);
    }
}
