//! Closed-form quantities for drifted Brownian motion on `[0, 1]`: expected
//! exit times, the critical switching cost and its location, the zero-cost
//! value function and two-sided hitting probabilities.

use crate::error::{Error, Result};
use crate::model::check_unit_interval;

/// Below this drift magnitude the exit time uses its second-order expansion
/// in `nu` around the driftless value `x(1 - x)`.
const SMALL_DRIFT: f64 = 1e-4;

/// Probability that a drifted Brownian motion started strictly between two
/// levels hits the lower one first.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct HittingProb(pub f64);

impl HittingProb {
    pub fn value(self) -> f64 {
        self.0
    }
}

/// `f^ν(x)`: expected exit time from `]0,1[` of `B_t + νt` started at `x`.
pub fn expected_exit_time(nu: f64, x: f64) -> Result<f64> {
    check_unit_interval("x", x)?;
    if !nu.is_finite() {
        return Err(Error::OutOfDomain {
            what: "nu",
            value: nu,
            domain: "finite reals",
        });
    }
    if x == 0.0 || x == 1.0 {
        return Ok(0.0);
    }
    if nu.abs() < SMALL_DRIFT {
        let base = x * (1.0 - x);
        let first = x * (x - 1.0) * (2.0 * x - 1.0) / 3.0;
        let second = -base * base / 3.0;
        return Ok(base + nu * (first + nu * second));
    }
    // (1 - e^{-2νx}) / (1 - e^{-2ν}) written with expm1 on both sides.
    let ratio = (-2.0 * nu * x).exp_m1() / (-2.0 * nu).exp_m1();
    Ok((ratio - x) / nu)
}

/// Pieces shared by `c*(μ)` and `x*(μ)`.
///
/// Returns `(ln(sinh μ / μ), q)` with `q = sqrt(1 - μ²/sinh²μ)`, both computed
/// without cancellation for small `μ` and without overflow for large `μ`.
fn log_sinhc_and_q(mu: f64) -> (f64, f64) {
    if mu < 0.5 {
        // sinh μ - μ from its series; the direct difference loses all digits.
        let m2 = mu * mu;
        let excess = mu
            * m2
            * (1.0 / 6.0
                + m2 * (1.0 / 120.0
                    + m2 * (1.0 / 5040.0 + m2 * (1.0 / 362_880.0 + m2 / 39_916_800.0))));
        let sinh = mu + excess;
        let q = (excess * (sinh + mu)).sqrt() / sinh;
        ((excess / mu).ln_1p(), q)
    } else {
        let log_sinh = mu + (-(-2.0 * mu).exp()).ln_1p() - std::f64::consts::LN_2;
        let log_sinhc = log_sinh - mu.ln();
        let ratio = (mu.ln() - log_sinh).exp();
        let q = ((1.0 - ratio) * (1.0 + ratio)).sqrt();
        (log_sinhc, q)
    }
}

/// `ln(sinh(μ)/μ)`.
pub(crate) fn log_sinhc(mu: f64) -> f64 {
    log_sinhc_and_q(mu).0
}

/// `ln( sinh(μ)/μ · (1 - q) )`, equal to `t_{c*}`, the critical value of the
/// boundary variable `μ(2b - 1)`.
///
/// Uses `sinh(μ)/μ · (1 - q) = 1 / (sinh(μ)/μ · (1 + q))`.
pub(crate) fn critical_log_term(mu: f64) -> f64 {
    let (log_sinhc, q) = log_sinhc_and_q(mu);
    -(log_sinhc + q.ln_1p())
}

fn check_mu(mu: f64) -> Result<()> {
    if mu.is_finite() && mu > 0.0 {
        Ok(())
    } else {
        Err(Error::NonPositiveParameter {
            name: "mu",
            value: mu,
        })
    }
}

/// `c*(μ) = max_x (f^μ(x) - f^{-μ}(x))`, the cost above which switching
/// never pays.
pub fn critical_cost(mu: f64) -> Result<f64> {
    check_mu(mu)?;
    let (log_sinhc, q) = log_sinhc_and_q(mu);
    // -(L + q)/μ² with L = -(ln sinhc + ln(1+q)).
    Ok((log_sinhc - q_minus_log1p(q)) / (mu * mu))
}

/// `q - ln(1 + q)`, accurate to a few ulps also for small `q`, where the
/// two terms nearly cancel.
fn q_minus_log1p(q: f64) -> f64 {
    if q < 0.1 {
        // Alternating series q²/2 - q³/3 + ...; 0.1^17 is below one ulp.
        let mut sum = 0.0;
        let mut power = q;
        for k in 2..20 {
            power *= -q;
            sum -= power / k as f64;
        }
        sum
    } else {
        q - q.ln_1p()
    }
}

/// `x*(μ)`, the point where `f^μ - f^{-μ}` attains `c*(μ)`.
pub fn critical_threshold(mu: f64) -> Result<f64> {
    check_mu(mu)?;
    Ok((critical_log_term(mu) + mu) / (2.0 * mu))
}

/// Value function of the expulsion problem without switching cost.
pub fn zero_cost_value(mu: f64, x: f64) -> Result<f64> {
    check_mu(mu)?;
    check_unit_interval("x", x)?;
    let d = 0.5 - (0.5 - x).abs();
    Ok(d / mu - (-mu).exp() / (2.0 * mu * mu) * (2.0 * mu * d).exp_m1())
}

/// Probability that `B_t + νt` started at `x` hits `lo` before `hi`.
pub fn hit_prob(nu: f64, x: f64, lo: f64, hi: f64) -> Result<HittingProb> {
    if !(lo < x && x < hi) || !nu.is_finite() {
        return Err(Error::OutOfDomain {
            what: "x",
            value: x,
            domain: "]lo, hi[",
        });
    }
    Ok(HittingProb(hit_prob_unchecked(nu, x, lo, hi)))
}

fn hit_prob_unchecked(nu: f64, x: f64, lo: f64, hi: f64) -> f64 {
    if nu == 0.0 {
        (hi - x) / (hi - lo)
    } else if nu < 0.0 {
        // Reflect: -X has drift -ν and hits -lo (its upper level) first.
        1.0 - hit_prob_unchecked(-nu, -x, -hi, -lo)
    } else {
        // Scale function e^{-2νy}; every exponent below is non-positive.
        let below = (-2.0 * nu * (x - lo)).exp();
        below * (-2.0 * nu * (hi - x)).exp_m1() / (-2.0 * nu * (hi - lo)).exp_m1()
    }
}
