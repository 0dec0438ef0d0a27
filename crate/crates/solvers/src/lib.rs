//! Solvers for monotone variational inequalities.
//!
//! The [`peg`] module holds the proximal extrapolated gradient methods with
//! their adaptive linesearch; [`baseline`] the proximal gradient, FISTA,
//! forward-backward-forward and primal-dual methods used for comparison.
//!
//! Every solver owns its [`Counters`](vi_core::Counters) and returns a
//! [`SolveReport`](vi_core::SolveReport) whose trace has one row per outer
//! iteration.

pub mod baseline;
pub mod linesearch;
pub mod observer;
pub mod peg;

pub use linesearch::{alg1_linesearch, alg2_linesearch, alg3_linesearch, max_feasible_lambda, LinesearchOutcome};
pub use observer::{DescentStep, FbfStep, Silent, StepObserver, StepView};
pub use peg::{alg1_solve, alg2_solve, alg3_solve, fixed_step_solve, solve_observed, FixedStepVariant, Method};
pub use baseline::{
    cp_pd_solve, fbf_solve, fbf_solve_observed, fista_solve, fista_solve_observed, pgm_solve,
    pgm_solve_observed, spectral_norm, BacktrackConfig, PDConfig,
};
