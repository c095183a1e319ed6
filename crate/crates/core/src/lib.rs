//! Optimal control of the drift sign of a Brownian particle on `[0, 1]`
//! when every change of drift costs a fixed amount of time.
//!
//! Two problems are solved exactly:
//!
//! * **expulsion**: minimise `E[τ + c·N]`, the exit time from `]0,1[` plus
//!   `c` times the number of drift switches;
//! * **confinement**: maximise `E[τ − c·N]`.
//!
//! For switching costs below the critical cost `c*(μ)` both optimal policies
//! are threshold rules described by two switching boundaries per drift. Above
//! `c*(μ)` it is optimal never to switch.
//!
//! The crate computes the closed-form quantities ([`closedform`]), solves both
//! free boundary problems ([`fbp`]), builds the optimal policies ([`policy`]),
//! checks them by Monte Carlo simulation of the controlled SDE ([`mc`]) and
//! verifies the analytic properties of the solutions ([`diagnostics`]).
//!
//! ```
//! use driftswitch::{fbp, ProblemParams};
//!
//! let params = ProblemParams::new(1.0, 0.01, 1.0).unwrap();
//! let sol = fbp::solve_min(&params).unwrap();
//! assert!((sol.a_c - 0.0882).abs() < 5e-4);
//! assert!((sol.b_c - 0.3426).abs() < 5e-4);
//! ```

pub mod cli;
pub mod closedform;
pub mod diagnostics;
pub mod error;
pub mod fbp;
pub mod mc;
pub mod model;
pub mod policy;
pub mod rootfind;

pub use error::{Error, Result};
pub use model::{validate_params, DriftSign, ProblemParams, State};
