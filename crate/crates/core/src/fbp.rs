//! Exact solutions of the expulsion (min) and confinement (max) free
//! boundary problems.
//!
//! Both solutions are computed for the unit-diffusion problem
//! [`ProblemParams::reduced`]; thresholds carry over unchanged and values are
//! rescaled by `sigma⁻²`. The coefficients stored in the solution structs
//! (`alpha_c`, `beta_c`, `gamma_c`, `delta_c`, `t_c`, `s_c`, ...) are those of
//! the reduced problem.
//!
//! For drift `+1` each value function has three pieces of the form
//! `k + q·x + r·(e^{λ(x - x₀)} - 1)`, split at the two switching boundaries,
//! and the value for drift `-1` follows from `V(x, -1) = V(1 - x, +1)`.

use serde::Serialize;

use crate::closedform::{critical_cost, critical_log_term, log_sinhc};
use crate::error::{Error, Result};
use crate::model::{check_unit_interval, DriftSign, ProblemParams};
use crate::rootfind::{find_root, Bracket, DEFAULT_MAX_ITER};

/// Costs within this distance of `c*` are treated as critical.
pub const CRITICAL_BAND: f64 = 1e-12;

/// Root tolerance used for the threshold equations: iterate to machine
/// precision, the brackets are analytic.
const ROOT_TOL: f64 = f64::MIN_POSITIVE;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Problem {
    Min,
    Max,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    fn mirrored(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// `offset + slope·x + amp·(e^{rate·(x - anchor)} - 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExpPiece {
    pub offset: f64,
    pub slope: f64,
    pub amp: f64,
    pub rate: f64,
    pub anchor: f64,
}

impl ExpPiece {
    pub fn value(&self, x: f64) -> f64 {
        self.offset + self.slope * x + self.amp * (self.rate * (x - self.anchor)).exp_m1()
    }

    pub fn d1(&self, x: f64) -> f64 {
        self.slope + self.amp * self.rate * (self.rate * (x - self.anchor)).exp()
    }

    pub fn d2(&self, x: f64) -> f64 {
        self.amp * self.rate * self.rate * (self.rate * (x - self.anchor)).exp()
    }

    /// `1 + m·v' + v''/2` for drift `m`, with the exponential terms grouped
    /// before summation.
    pub fn generator(&self, x: f64, m: f64) -> f64 {
        let e = (self.rate * (x - self.anchor)).exp();
        (1.0 + m * self.slope) + self.amp * self.rate * e * (m + 0.5 * self.rate)
    }
}

/// The value function for drift `+1` of the reduced problem, split at
/// `lower ≤ upper`. The middle piece owns both endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PiecewiseValue {
    pub lower: f64,
    pub upper: f64,
    pub pieces: [ExpPiece; 3],
}

impl PiecewiseValue {
    fn single(piece: ExpPiece, at: f64) -> Self {
        PiecewiseValue {
            lower: at,
            upper: at,
            pieces: [piece; 3],
        }
    }

    pub fn piece_at(&self, x: f64) -> &ExpPiece {
        if x < self.lower {
            &self.pieces[0]
        } else if x <= self.upper {
            &self.pieces[1]
        } else {
            &self.pieces[2]
        }
    }

    pub fn piece_towards(&self, x: f64, side: Side) -> &ExpPiece {
        let idx = match side {
            Side::Left if x <= self.lower => 0,
            Side::Left if x <= self.upper => 1,
            Side::Right if x < self.lower => 0,
            Side::Right if x < self.upper => 1,
            _ => 2,
        };
        &self.pieces[idx]
    }
}

/// Position/continuation/switching partition of `[0, 1]` for one drift.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Span {
    pub lo: f64,
    pub hi: f64,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Span {
    pub fn closed(lo: f64, hi: f64) -> Self {
        Span {
            lo,
            hi,
            lo_closed: true,
            hi_closed: true,
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        let above = if self.lo_closed {
            x >= self.lo
        } else {
            x > self.lo
        };
        let below = if self.hi_closed {
            x <= self.hi
        } else {
            x < self.hi
        };
        above && below
    }

    pub fn contains_interior(&self, x: f64) -> bool {
        x > self.lo && x < self.hi
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Region {
    pub drift: DriftSign,
    pub continuation: Vec<Span>,
    pub switching: Span,
}

impl Region {
    /// Region with closed switching set `[lo, hi]` for drift `+1`, mirrored
    /// to `[1 - hi, 1 - lo]` for drift `-1`.
    pub fn from_up_interval(lo: f64, hi: f64, drift: DriftSign) -> Self {
        let (lo, hi) = match drift {
            DriftSign::Up => (lo, hi),
            DriftSign::Down => (1.0 - hi, 1.0 - lo),
        };
        let continuation = vec![
            Span {
                lo: 0.0,
                hi: lo,
                lo_closed: true,
                hi_closed: false,
            },
            Span {
                lo: hi,
                hi: 1.0,
                lo_closed: false,
                hi_closed: true,
            },
        ];
        Region {
            drift,
            continuation,
            switching: Span::closed(lo, hi),
        }
    }

    pub fn in_switching(&self, x: f64) -> bool {
        self.switching.contains(x)
    }

    pub fn in_continuation(&self, x: f64) -> bool {
        self.continuation.iter().any(|s| s.contains(x))
    }
}

/// Solution of the expulsion problem.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FbpSolutionMin {
    pub params: ProblemParams,
    /// Root of `h_c` in `]-cμ²-1, -cμ²[` (reduced parameters).
    pub t_c: f64,
    /// Root of `h̃_c` in `]0, t_c + μ]`.
    pub s_c: f64,
    pub a_c: f64,
    pub b_c: f64,
    pub alpha_c: f64,
    pub beta_c: f64,
    pub m_tilde: f64,
    pub degenerate: bool,
    /// `c*` expressed in the units of `params.cost()`.
    pub critical_cost: f64,
    value: PiecewiseValue,
}

/// Solution of the confinement problem.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FbpSolutionMax {
    pub params: ProblemParams,
    pub a_max: f64,
    pub b_max: f64,
    /// Root of `h̃_c^max`, equal to `2μ(1 - b_max)`.
    pub s_max: f64,
    pub gamma_c: f64,
    pub delta_c: f64,
    pub degenerate: bool,
    pub critical_cost: f64,
    /// Expulsion thresholds the confinement solution is built from.
    pub a_c: f64,
    pub b_c: f64,
    value: PiecewiseValue,
}

/// Behaviour shared by both solutions.
pub trait ValueFunction {
    fn problem(&self) -> Problem;
    fn params(&self) -> &ProblemParams;
    fn is_degenerate(&self) -> bool;
    fn piecewise(&self) -> &PiecewiseValue;

    /// Cost actually paid at a switching point: `min(c, c*)`.
    fn effective_cost(&self) -> f64;

    /// Switching interval `[lower, upper]` for drift `+1`.
    fn switching_interval(&self) -> (f64, f64) {
        let pw = self.piecewise();
        (pw.lower, pw.upper)
    }

    fn value(&self, x: f64, a: DriftSign) -> Result<f64> {
        check_unit_interval("x", x)?;
        let y = up_coordinate(x, a);
        Ok(self.params().value_scale() * self.piecewise().piece_at(y).value(y))
    }

    /// `∂V/∂x` using the piece that owns `x`.
    fn dvalue_dx(&self, x: f64, a: DriftSign) -> Result<f64> {
        check_unit_interval("x", x)?;
        let y = up_coordinate(x, a);
        let d = self.piecewise().piece_at(y).d1(y);
        Ok(self.params().value_scale() * a.value() * d)
    }

    /// One-sided `∂V/∂x` at `x`.
    fn dvalue_dx_side(&self, x: f64, a: DriftSign, side: Side) -> Result<f64> {
        check_unit_interval("x", x)?;
        let y = up_coordinate(x, a);
        let side = match a {
            DriftSign::Up => side,
            DriftSign::Down => side.mirrored(),
        };
        let d = self.piecewise().piece_towards(y, side).d1(y);
        Ok(self.params().value_scale() * a.value() * d)
    }

    fn d2value_dx2(&self, x: f64, a: DriftSign) -> Result<f64> {
        check_unit_interval("x", x)?;
        let y = up_coordinate(x, a);
        Ok(self.params().value_scale() * self.piecewise().piece_at(y).d2(y))
    }

    /// `1 + aμ ∂V/∂x + (σ²/2) ∂²V/∂x²` at `x`, using the piece that owns `x`.
    fn generator_residual(&self, x: f64, a: DriftSign) -> Result<f64> {
        check_unit_interval("x", x)?;
        let y = up_coordinate(x, a);
        // In the +1 coordinate both drifts see the generator with drift +μ.
        let mu = self.params().reduced().mu();
        Ok(self.piecewise().piece_at(y).generator(y, mu))
    }

    fn region(&self, a: DriftSign) -> Region {
        let (lo, hi) = self.switching_interval();
        Region::from_up_interval(lo, hi, a)
    }
}

fn up_coordinate(x: f64, a: DriftSign) -> f64 {
    match a {
        DriftSign::Up => x,
        DriftSign::Down => 1.0 - x,
    }
}

impl ValueFunction for FbpSolutionMin {
    fn problem(&self) -> Problem {
        Problem::Min
    }
    fn params(&self) -> &ProblemParams {
        &self.params
    }
    fn is_degenerate(&self) -> bool {
        self.degenerate
    }
    fn piecewise(&self) -> &PiecewiseValue {
        &self.value
    }
    fn effective_cost(&self) -> f64 {
        self.params.cost().min(self.critical_cost)
    }
}

impl ValueFunction for FbpSolutionMax {
    fn problem(&self) -> Problem {
        Problem::Max
    }
    fn params(&self) -> &ProblemParams {
        &self.params
    }
    fn is_degenerate(&self) -> bool {
        self.degenerate
    }
    fn piecewise(&self) -> &PiecewiseValue {
        &self.value
    }
    fn effective_cost(&self) -> f64 {
        self.params.cost().min(self.critical_cost)
    }
}

/// `h_c(t) = e^{2t}(t + cμ² - 1) + t + cμ² + 1`, evaluated as
/// `(t + cμ²)(e^{2t} + 1) - (e^{2t} - 1)`.
pub fn h_min(t: f64, params: &ProblemParams) -> f64 {
    let p = params.reduced();
    let u = t + p.cost() * p.mu() * p.mu();
    u * ((2.0 * t).exp() + 1.0) - (2.0 * t).exp_m1()
}

/// `h̃_c(s) = μ²α e^{2s} + (1 - 2μ²α) e^s - s + μ²α - cμ² - 1`, evaluated as
/// `μ²α (e^s - 1)² + (e^s - 1 - s) - cμ²`.
pub fn h_min_tilde(s: f64, alpha: f64, params: &ProblemParams) -> f64 {
    let p = params.reduced();
    let m2 = p.mu() * p.mu();
    let em1 = s.exp_m1();
    m2 * alpha * em1 * em1 + (em1 - s) - p.cost() * m2
}

/// `h̃_c^max(s) = γμ² e^{-2s} + e^{-s}(1 - 2γμ²) + s - 1 + γμ² + cμ²`,
/// evaluated as `γμ² (e^{-s} - 1)² + (e^{-s} - 1 + s) + cμ²`.
pub fn h_max_tilde(s: f64, gamma: f64, params: &ProblemParams) -> f64 {
    let p = params.reduced();
    let m2 = p.mu() * p.mu();
    let em1 = (-s).exp_m1();
    m2 * gamma * em1 * em1 + (em1 + s) + p.cost() * m2
}

/// `-μ + sinh(μ)/cosh(t)`, the exact value of `h̃_c(t + μ)` when `h_c(t) = 0`.
fn h_min_tilde_at_upper(t: f64, mu: f64) -> f64 {
    // sinh μ / cosh t = (e^{μ+t} - e^{-μ+t}) / (e^{2t} + 1) for t < 0.
    let num = (mu + t).exp() * -(-2.0 * mu).exp_m1();
    -mu + num / ((2.0 * t).exp() + 1.0)
}

/// `e^{±μ} / (2μ² cosh t)` computed without overflow for `t < 0`.
fn exp_over_cosh(sign_mu: f64, t: f64, mu: f64) -> f64 {
    (sign_mu + t - (2.0 * t).exp().ln_1p()).exp() / (mu * mu)
}

struct Critical {
    t: f64,
    x: f64,
    /// Amplitude of `f^μ` in the piece form: `1 / (μ (e^{-2μ} - 1))`.
    amp: f64,
    m_tilde: f64,
}

fn critical_solution(mu: f64) -> Critical {
    let t = critical_log_term(mu);
    Critical {
        t,
        x: (t + mu) / (2.0 * mu),
        amp: 1.0 / (mu * (-2.0 * mu).exp_m1()),
        m_tilde: mu + log_sinhc(mu),
    }
}

/// Expected exit time `f^μ` as a single piece.
fn exit_time_piece(mu: f64, amp: f64) -> ExpPiece {
    ExpPiece {
        offset: 0.0,
        slope: -1.0 / mu,
        amp,
        rate: -2.0 * mu,
        anchor: 0.0,
    }
}

fn root(f: impl Fn(f64) -> f64, bracket: Bracket) -> Result<f64> {
    find_root(f, bracket, ROOT_TOL, DEFAULT_MAX_ITER)
        .map_err(|e| Error::Internal(format!("threshold equation: {e}")))
}

/// Solves the expulsion problem.
pub fn solve_min(params: &ProblemParams) -> Result<FbpSolutionMin> {
    let red = params.reduced();
    let (mu, c) = (red.mu(), red.cost());
    let c_star = critical_cost(mu)?;
    let critical_cost = c_star * params.value_scale();

    let degenerate = |crit: Critical| FbpSolutionMin {
        params: *params,
        t_c: crit.t,
        s_c: crit.t + mu,
        a_c: crit.x,
        b_c: crit.x,
        // α* = β* e^{-2μ}, β* = 1/(μ(e^{-2μ} - 1)).
        alpha_c: crit.amp * (-2.0 * mu).exp(),
        beta_c: crit.amp,
        m_tilde: crit.m_tilde,
        degenerate: true,
        critical_cost,
        value: PiecewiseValue::single(exit_time_piece(mu, crit.amp), crit.x),
    };

    if c >= c_star - CRITICAL_BAND {
        return Ok(degenerate(critical_solution(mu)));
    }

    let cm2 = c * mu * mu;
    let t_bracket = Bracket::from_values(
        -cm2 - 1.0,
        -cm2,
        -2.0 * (-2.0 * (cm2 + 1.0)).exp(),
        -(-2.0 * cm2).exp_m1(),
    )?;
    let t = root(|t| h_min(t, params), t_bracket)?;
    if t + mu <= 0.0 {
        return Err(Error::Internal(format!("t_c = {t} below -mu for c < c*")));
    }
    let alpha = -exp_over_cosh(-mu, t, mu);

    let upper = t + mu;
    let f_upper = match h_min_tilde(upper, alpha, params) {
        v if v > 0.0 => v,
        _ => h_min_tilde_at_upper(t, mu),
    };
    if f_upper <= 0.0 {
        // Only reachable within rounding of c*: the bracket has collapsed.
        return Ok(degenerate(critical_solution(mu)));
    }
    let s_bracket = Bracket::from_values(0.0, upper, -cm2, f_upper)?;
    let s = root(|s| h_min_tilde(s, alpha, params), s_bracket)?;
    let beta = -alpha * (2.0 * s).exp() - s.exp() / (mu * mu);

    let a_c = s / (2.0 * mu);
    let b_c = upper / (2.0 * mu);
    let value = PiecewiseValue {
        lower: a_c,
        upper: b_c,
        pieces: [
            ExpPiece {
                offset: 0.0,
                slope: -1.0 / mu,
                amp: beta,
                rate: -2.0 * mu,
                anchor: 0.0,
            },
            ExpPiece {
                offset: c,
                slope: 1.0 / mu,
                amp: alpha,
                rate: 2.0 * mu,
                anchor: 0.0,
            },
            ExpPiece {
                offset: 1.0 / mu,
                slope: -1.0 / mu,
                amp: alpha,
                rate: -2.0 * mu,
                anchor: 1.0,
            },
        ],
    };
    Ok(FbpSolutionMin {
        params: *params,
        t_c: t,
        s_c: s,
        a_c,
        b_c,
        alpha_c: alpha,
        beta_c: beta,
        m_tilde: mu + (2.0 * t).exp().ln_1p() - t - std::f64::consts::LN_2,
        degenerate: false,
        critical_cost,
        value,
    })
}

/// Solves the confinement problem. The expulsion solution supplies
/// `a_max = 1 - b_c` and `γ_c = α_c e^{2μ}`.
pub fn solve_max(params: &ProblemParams) -> Result<FbpSolutionMax> {
    let min = solve_min(params)?;
    solve_max_from(&min)
}

/// [`solve_max`] reusing an already computed expulsion solution.
pub fn solve_max_from(min: &FbpSolutionMin) -> Result<FbpSolutionMax> {
    let params = &min.params;
    let red = params.reduced();
    let (mu, c) = (red.mu(), red.cost());

    let degenerate = || {
        let crit = critical_solution(mu);
        FbpSolutionMax {
            params: *params,
            a_max: 1.0 - crit.x,
            b_max: 1.0 - crit.x,
            s_max: 2.0 * mu * crit.x,
            gamma_c: crit.amp,
            delta_c: crit.amp * (-2.0 * mu).exp(),
            degenerate: true,
            critical_cost: min.critical_cost,
            a_c: crit.x,
            b_c: crit.x,
            value: PiecewiseValue::single(exit_time_piece(mu, crit.amp), 1.0 - crit.x),
        }
    };
    if min.degenerate {
        return Ok(degenerate());
    }

    let t = min.t_c;
    let gamma = -exp_over_cosh(mu, t, mu);
    let upper = t + mu;
    let f_upper = match h_max_tilde(upper, gamma, params) {
        v if v < 0.0 => v,
        _ => -h_min_tilde_at_upper(t, mu),
    };
    if f_upper >= 0.0 {
        return Ok(degenerate());
    }
    let bracket = Bracket::from_values(0.0, upper, c * mu * mu, f_upper)?;
    let s = root(|s| h_max_tilde(s, gamma, params), bracket)?;
    let delta = -(-s).exp() / (mu * mu) - gamma * (-2.0 * s).exp();
    let a_max = 1.0 - min.b_c;
    let b_max = 1.0 - s / (2.0 * mu);

    let value = PiecewiseValue {
        lower: a_max,
        upper: b_max,
        pieces: [
            ExpPiece {
                offset: 0.0,
                slope: -1.0 / mu,
                amp: gamma,
                rate: -2.0 * mu,
                anchor: 0.0,
            },
            ExpPiece {
                offset: -1.0 / mu - c,
                slope: 1.0 / mu,
                amp: gamma,
                rate: 2.0 * mu,
                anchor: 1.0,
            },
            ExpPiece {
                offset: 1.0 / mu,
                slope: -1.0 / mu,
                amp: delta,
                rate: -2.0 * mu,
                anchor: 1.0,
            },
        ],
    };
    Ok(FbpSolutionMax {
        params: *params,
        a_max,
        b_max,
        s_max: s,
        gamma_c: gamma,
        delta_c: delta,
        degenerate: false,
        critical_cost: min.critical_cost,
        a_c: min.a_c,
        b_c: min.b_c,
        value,
    })
}

/// Solves both problems for one instance.
pub fn solve(params: &ProblemParams) -> Result<(FbpSolutionMin, FbpSolutionMax)> {
    let min = solve_min(params)?;
    let max = solve_max_from(&min)?;
    Ok((min, max))
}
