//! Core data model for monotone variational inequalities
//!
//! find x* : <F(x*), x - x*> + g(x) - g(x*) >= 0 for all x
//!
//! with `F` monotone and `g` convex with a cheap proximal operator. This crate
//! holds the pieces every solver shares: points, operators, proximal maps,
//! evaluation counters, the extrapolation step, stepsize initialization and
//! ergodic averaging, together with the convergence measures used to judge
//! the iterates.

pub mod config;
pub mod counters;
pub mod ergodic;
pub mod error;
pub mod extrapolation;
pub mod matrix;
pub mod metrics;
pub mod operator;
pub mod problem;
pub mod prox;
pub mod report;
pub mod state;
pub mod vector;

pub use config::SolverConfig;
pub use counters::Counters;
pub use ergodic::ErgodicAverage;
pub use error::VIError;
pub use extrapolation::{affine_extrapolated_value, extrapolate, init_lambda0, InitialStep};
pub use matrix::DenseMatrix;
pub use operator::{AffineMap, ClosureMap, ClosureObjective, MonotoneMap, SmoothObjective};
pub use problem::{CompositeProblem, ResidualMetric, VIProblem};
pub use prox::ProxFriendly;
pub use report::{IterationTrace, RunInit, SolveReport, Termination};
pub use state::SolverState;
pub use vector::Vector;

/// `sqrt(2) - 1`, the exclusive upper bound for the linesearch constant `alpha`.
pub const ALPHA_BOUND: f64 = std::f64::consts::SQRT_2 - 1.0;

/// Golden ratio, an upper bound on the extrapolation factor of the general method.
pub const GOLDEN_RATIO: f64 = 1.618_033_988_749_895;

/// Absolute tolerance used when deciding membership in a constraint set.
pub const FEASIBILITY_TOL: f64 = 1e-9;
