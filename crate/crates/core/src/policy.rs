//! Drift decision rules: the optimal threshold policies, the constant
//! policy and shifted thresholds used for suboptimality experiments.

use std::fmt;

use crate::fbp::{FbpSolutionMax, FbpSolutionMin, Span, ValueFunction};
use crate::model::{DriftSign, State};

#[derive(Debug, Clone, PartialEq)]
pub enum PolicyKind {
    /// Flip on entry into the switching set of the current drift.
    Threshold { up: Span, down: Span },
    /// Always apply the same drift.
    Constant(DriftSign),
    /// Threshold rule whose switching sets were shifted by `shift`.
    PerturbedThreshold { up: Span, down: Span, shift: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Policy {
    pub kind: PolicyKind,
    pub description: String,
}

impl fmt::Display for Policy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.description)
    }
}

fn mirror(span: &Span) -> Span {
    Span::closed(1.0 - span.hi, 1.0 - span.lo)
}

fn threshold_policy(sol: &impl ValueFunction, description: String) -> Policy {
    let (lo, hi) = sol.switching_interval();
    let up = Span::closed(lo, hi);
    let down = mirror(&up);
    Policy {
        kind: PolicyKind::Threshold { up, down },
        description,
    }
}

/// `A^c`: keep the drift in `C_a`, flip it on entry into `D_a`.
pub fn optimal_min_policy(sol: &FbpSolutionMin) -> Policy {
    threshold_policy(
        sol,
        format!("optimal-min D+ = [{:.6}, {:.6}]", sol.a_c, sol.b_c),
    )
}

/// `G^c`: the confinement analogue of [`optimal_min_policy`].
pub fn optimal_max_policy(sol: &FbpSolutionMax) -> Policy {
    threshold_policy(
        sol,
        format!("optimal-max D+ = [{:.6}, {:.6}]", sol.a_max, sol.b_max),
    )
}

pub fn constant_policy(a: DriftSign) -> Policy {
    Policy {
        kind: PolicyKind::Constant(a),
        description: format!("constant {a}"),
    }
}

/// `[a_c + shift, b_c + shift]` clamped to `[0, 1/2]`, mirrored for drift -1.
pub fn perturbed_min_policy(sol: &FbpSolutionMin, shift: f64) -> Policy {
    let lo = (sol.a_c + shift).clamp(0.0, 0.5);
    let hi = (sol.b_c + shift).clamp(0.0, 0.5);
    let up = Span::closed(lo, hi);
    let down = mirror(&up);
    Policy {
        kind: PolicyKind::PerturbedThreshold { up, down, shift },
        description: format!("perturbed-min shift {shift} D+ = [{lo:.6}, {hi:.6}]"),
    }
}

impl Policy {
    /// Switching set for the given current drift, if the policy has one.
    pub fn switching_set(&self, drift: DriftSign) -> Option<&Span> {
        match &self.kind {
            PolicyKind::Threshold { up, down }
            | PolicyKind::PerturbedThreshold { up, down, .. } => Some(match drift {
                DriftSign::Up => up,
                DriftSign::Down => down,
            }),
            PolicyKind::Constant(_) => None,
        }
    }

    /// Drift to apply now given the position and the drift in force just
    /// before now.
    pub fn decide(&self, state: State) -> DriftSign {
        match &self.kind {
            PolicyKind::Constant(a) => *a,
            _ => match self.switching_set(state.drift) {
                Some(set) if set.contains(state.x) => -state.drift,
                _ => state.drift,
            },
        }
    }
}
