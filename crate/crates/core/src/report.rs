//! Per-iteration traces and the summary of a run.

use crate::counters::Counters;
use crate::vector::Vector;

/// One row of a run trace.
#[derive(Clone, Debug, PartialEq)]
pub struct IterationTrace {
    pub iter: usize,
    pub residual: f64,
    pub lambda: f64,
    pub tau: f64,
    /// Trial points evaluated by the inner linesearch.
    pub ls_inner: usize,
    pub n_op: u64,
    pub n_fval: u64,
    pub n_prox: u64,
    pub n_mult: u64,
    pub elapsed_s: f64,
}

impl IterationTrace {
    pub fn new(
        iter: usize,
        residual: f64,
        lambda: f64,
        tau: f64,
        ls_inner: usize,
        counters: &Counters,
        elapsed_s: f64,
    ) -> Self {
        IterationTrace {
            iter,
            residual,
            lambda,
            tau,
            ls_inner,
            n_op: counters.n_op,
            n_fval: counters.n_fval,
            n_prox: counters.n_prox,
            n_mult: counters.n_mult,
            elapsed_s,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Termination {
    TolReached,
    MaxIter,
    LinesearchFailed { iter: usize, trials: usize },
}

/// Initialization data entering the ergodic bound.
#[derive(Clone, Debug, PartialEq)]
pub struct RunInit {
    pub x0: Vector,
    pub y0: Vector,
    pub x1: Vector,
    pub lambda1: f64,
    pub tau1: f64,
}

#[derive(Clone, Debug)]
pub struct SolveReport {
    pub final_x: Vector,
    pub final_y: Vector,
    pub trace: Vec<IterationTrace>,
    pub counters: Counters,
    /// Present once the first extrapolated iteration has run.
    pub ergodic_x: Option<Vector>,
    pub ergodic_weight: f64,
    pub termination: Termination,
    pub init: Option<RunInit>,
    /// Operator evaluations spent before the first iteration.
    pub init_op_evals: u64,
}

impl SolveReport {
    pub fn iterations(&self) -> usize {
        self.trace.len()
    }

    pub fn succeeded(&self) -> bool {
        !matches!(self.termination, Termination::LinesearchFailed { .. })
    }

    /// Sum of `ls_inner` over the trace.
    pub fn total_trials(&self) -> usize {
        self.trace.iter().map(|t| t.ls_inner).sum()
    }
}
