//! Problem parameters, drift signs and particle states.

use std::fmt;
use std::ops::Neg;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// One instance of the control problem: drift magnitude `mu`, switching
/// cost `cost` (in time units) and diffusion coefficient `sigma`.
///
/// Fields are private so that every value in circulation has passed
/// [`validate_params`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProblemParams {
    mu: f64,
    cost: f64,
    sigma: f64,
}

/// Validates raw inputs into a [`ProblemParams`].
pub fn validate_params(mu: f64, cost: f64, sigma: f64) -> Result<ProblemParams> {
    for (name, value) in [("mu", mu), ("cost", cost), ("sigma", sigma)] {
        if !(value.is_finite() && value > 0.0) {
            return Err(Error::NonPositiveParameter { name, value });
        }
    }
    Ok(ProblemParams { mu, cost, sigma })
}

impl ProblemParams {
    pub fn new(mu: f64, cost: f64, sigma: f64) -> Result<Self> {
        validate_params(mu, cost, sigma)
    }

    /// Parameters with `sigma = 1`.
    pub fn unit(mu: f64, cost: f64) -> Result<Self> {
        validate_params(mu, cost, 1.0)
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn cost(&self) -> f64 {
        self.cost
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// The equivalent unit-diffusion problem `(mu / sigma², cost · sigma², 1)`.
    ///
    /// Positions are unchanged by the time change; expected costs of the
    /// original problem are those of the reduced one divided by `sigma²`.
    pub fn reduced(&self) -> ProblemParams {
        let s2 = self.sigma * self.sigma;
        ProblemParams {
            mu: self.mu / s2,
            cost: self.cost * s2,
            sigma: 1.0,
        }
    }

    /// Factor `sigma⁻²` mapping reduced-problem costs back to this problem.
    pub fn value_scale(&self) -> f64 {
        1.0 / (self.sigma * self.sigma)
    }

    pub fn with_cost(&self, cost: f64) -> Result<Self> {
        validate_params(self.mu, cost, self.sigma)
    }
}

/// Sign of the controlled drift.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum DriftSign {
    Up,
    Down,
}

impl DriftSign {
    pub const BOTH: [DriftSign; 2] = [DriftSign::Up, DriftSign::Down];

    pub fn value(self) -> f64 {
        match self {
            DriftSign::Up => 1.0,
            DriftSign::Down => -1.0,
        }
    }

    pub fn flipped(self) -> DriftSign {
        -self
    }
}

impl Neg for DriftSign {
    type Output = DriftSign;

    fn neg(self) -> DriftSign {
        match self {
            DriftSign::Up => DriftSign::Down,
            DriftSign::Down => DriftSign::Up,
        }
    }
}

impl fmt::Display for DriftSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DriftSign::Up => f.write_str("+1"),
            DriftSign::Down => f.write_str("-1"),
        }
    }
}

impl FromStr for DriftSign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "+1" | "1" | "+" | "up" => Ok(DriftSign::Up),
            "-1" | "-" | "down" => Ok(DriftSign::Down),
            _ => Err(Error::InvalidConfig(format!(
                "drift must be +1 or -1, got `{s}`"
            ))),
        }
    }
}

/// Particle position together with the drift in force just before now.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct State {
    pub x: f64,
    pub drift: DriftSign,
}

impl State {
    pub fn new(x: f64, drift: DriftSign) -> Result<Self> {
        check_unit_interval("x", x)?;
        Ok(State { x, drift })
    }
}

pub(crate) fn check_unit_interval(what: &'static str, x: f64) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::OutOfDomain {
            what,
            value: x,
            domain: "[0, 1]",
        })
    }
}
