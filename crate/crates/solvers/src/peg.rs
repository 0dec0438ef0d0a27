//! Proximal extrapolated gradient methods.
//!
//! All three methods iterate
//!
//! ```text
//! y_n     = x_n + tau_n (x_n - x_{n-1})
//! x_{n+1} = prox_{lambda_n g}(x_n - lambda_n F(y_n))
//! ```
//!
//! and differ only in how the linesearch picks `(tau_n, lambda_n)`. The run
//! starts from `y_0 = x_0`, `tau_0 = 1` and a single proximal step
//! `x_1 = prox_{lambda_0 g}(x_0 - lambda_0 F(x_0))`, which is counted as the
//! first iteration. Every iteration performs exactly one proximal step.

use std::time::Instant;

use vi_core::extrapolation::extrapolate_into;
use vi_core::vector::forward_step_into;
use vi_core::{
    init_lambda0, CompositeProblem, Counters, IterationTrace, MonotoneMap, ProxFriendly, RunInit,
    SolveReport, SolverConfig, SolverState, Termination, VIError, VIProblem, Vector,
};

use crate::linesearch::{alg1_linesearch, alg2_linesearch, alg3_linesearch};
use crate::observer::{Silent, StepObserver, StepView};

/// Which linesearch drives the extrapolated iteration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Projected VI. The convergence theory assumes `g` is an indicator;
    /// for any other `g` the projection of step 2 becomes `prox_{lambda g}`
    /// and the method is a heuristic.
    Alg1,
    /// General composite VI.
    Alg2,
    /// Composite minimization; `F` is the gradient of the smooth part and
    /// `SolverConfig::theta` tunes the extrapolation.
    Alg3,
}

pub fn alg1_solve(problem: &VIProblem, cfg: &SolverConfig, x0: &[f64]) -> Result<SolveReport, VIError> {
    solve_observed(Method::Alg1, problem, cfg, x0, &mut Silent)
}

pub fn alg2_solve(problem: &VIProblem, cfg: &SolverConfig, x0: &[f64]) -> Result<SolveReport, VIError> {
    solve_observed(Method::Alg2, problem, cfg, x0, &mut Silent)
}

pub fn alg3_solve(
    problem: &CompositeProblem,
    cfg: &SolverConfig,
    x0: &[f64],
) -> Result<SolveReport, VIError> {
    solve_observed(Method::Alg3, &problem.as_vi(), cfg, x0, &mut Silent)
}

fn prox_step(
    g: &dyn ProxFriendly,
    lambda: f64,
    x: &[f64],
    dir: &[f64],
    counters: &mut Counters,
) -> Vector {
    let mut v = Vector::zeros(x.len());
    forward_step_into(x, lambda, dir, &mut v);
    let mut out = Vector::zeros(x.len());
    g.prox(lambda, &v, &mut out);
    counters.record_prox();
    out
}

fn metric(problem: &VIProblem, cfg: &SolverConfig, x: &[f64]) -> f64 {
    if cfg.track_residual || cfg.tol > 0.0 {
        problem.residual(x)
    } else {
        f64::NAN
    }
}

fn reached(cfg: &SolverConfig, residual: f64) -> bool {
    cfg.tol > 0.0 && residual <= cfg.tol
}

fn check_start(problem: &VIProblem, cfg: &SolverConfig, x0: &[f64]) -> Result<(), VIError> {
    cfg.validate()?;
    if x0.len() != problem.dim() {
        return Err(VIError::DimensionMismatch {
            expected: problem.dim(),
            got: x0.len(),
        });
    }
    Ok(())
}

fn empty_report(x0: &[f64]) -> SolveReport {
    SolveReport {
        final_x: Vector::from(x0),
        final_y: Vector::from(x0),
        trace: Vec::new(),
        counters: Counters::default(),
        ergodic_x: None,
        ergodic_weight: 0.0,
        termination: Termination::MaxIter,
        init: None,
        init_op_evals: 0,
    }
}

/// Runs `method`, reporting every proximal step to `observer`.
pub fn solve_observed(
    method: Method,
    problem: &VIProblem,
    cfg: &SolverConfig,
    x0: &[f64],
    observer: &mut dyn StepObserver,
) -> Result<SolveReport, VIError> {
    check_start(problem, cfg, x0)?;
    let op: &dyn MonotoneMap = problem.op.as_ref();
    let g: &dyn ProxFriendly = problem.g.as_ref();
    if cfg.max_iter == 0 {
        return Ok(empty_report(x0));
    }
    let start = Instant::now();
    let mut counters = Counters::default();
    let x0 = Vector::from(x0);

    let (lambda0, op_x0) = match cfg.lambda0 {
        Some(l) => {
            counters.record_op(op);
            (l, op.eval(&x0))
        }
        None => {
            let s = init_lambda0(op, &x0, cfg.alpha, cfg.seed)?;
            counters.record_op(op);
            counters.record_op(op);
            (s.lambda0.min(cfg.lambda_max), s.op_x0)
        }
    };
    if !op_x0.is_finite() {
        return Err(VIError::NonFinite("operator is not finite at the starting point".into()));
    }
    let init_op_evals = counters.n_op;

    let x1 = prox_step(g, lambda0, &x0, &op_x0, &mut counters);
    observer.on_step(&StepView {
        iter: 1,
        is_init: true,
        x_prev: &x0,
        x: &x0,
        x_next: &x1,
        y_prev: &x0,
        y: &x0,
        op_y_prev: &op_x0,
        op_y: &op_x0,
        lambda_prev: lambda0,
        lambda: lambda0,
        tau_prev: 1.0,
        tau: 1.0,
        trials: 0,
    });
    let residual = metric(problem, cfg, &x1);
    let mut trace = Vec::with_capacity(cfg.max_iter);
    trace.push(IterationTrace::new(
        1,
        residual,
        lambda0,
        1.0,
        0,
        &counters,
        start.elapsed().as_secs_f64(),
    ));
    let mut termination = if reached(cfg, residual) {
        Termination::TolReached
    } else {
        Termination::MaxIter
    };

    let mut state = SolverState::new(x1, x0.clone(), x0.clone(), op_x0.clone(), lambda0, 1.0);
    if op.is_affine() {
        counters.record_op(op);
        let op_x1 = op.eval(&state.x);
        state = state.with_affine_cache(op_x1, op_x0);
    }
    let mut run_init = None;
    let mut last_y = x0.clone();

    while termination == Termination::MaxIter && trace.len() < cfg.max_iter {
        state.iter = trace.len();
        let outcome = match method {
            Method::Alg1 => alg1_linesearch(&state, op, cfg, g.domain_affine(), &mut counters),
            Method::Alg2 => alg2_linesearch(&state, op, cfg, &mut counters),
            Method::Alg3 => alg3_linesearch(&state, op, cfg, &mut counters),
        };
        let ls = match outcome {
            Ok(ls) => ls,
            Err(VIError::LinesearchFailed { iter, trials }) => {
                // The linesearch counts from the step it extends; the report
                // names the trace row that could not be produced.
                termination = Termination::LinesearchFailed {
                    iter: iter + 1,
                    trials,
                };
                break;
            }
            Err(e) => return Err(e),
        };
        debug_assert!(method != Method::Alg3 || ls.tau < 2.0);

        let x_next = prox_step(g, ls.lambda, &state.x, &ls.op_y, &mut counters);
        if state.iter == 1 {
            state.ergodic.start(ls.lambda, ls.tau, &state.x);
            run_init = Some(RunInit {
                x0: x0.clone(),
                y0: x0.clone(),
                x1: state.x.clone(),
                lambda1: ls.lambda,
                tau1: ls.tau,
            });
        } else {
            state.ergodic.push(ls.lambda, &ls.y)?;
        }
        observer.on_step(&StepView {
            iter: state.iter + 1,
            is_init: false,
            x_prev: &state.x_prev,
            x: &state.x,
            x_next: &x_next,
            y_prev: &state.y_prev,
            y: &ls.y,
            op_y_prev: &state.op_y_prev,
            op_y: &ls.op_y,
            lambda_prev: state.lambda_prev,
            lambda: ls.lambda,
            tau_prev: state.tau_prev,
            tau: ls.tau,
            trials: ls.trials,
        });

        if let Some(op_x) = state.op_x.take() {
            counters.record_op(op);
            state.op_x = Some(op.eval(&x_next));
            state.op_x_prev = Some(op_x);
        }
        state.x_prev = std::mem::replace(&mut state.x, x_next);
        state.y_prev = ls.y.clone();
        state.op_y_prev = ls.op_y;
        state.lambda_prev = ls.lambda;
        state.tau_prev = ls.tau;
        last_y = ls.y;

        let residual = metric(problem, cfg, &state.x);
        trace.push(IterationTrace::new(
            trace.len() + 1,
            residual,
            ls.lambda,
            ls.tau,
            ls.trials,
            &counters,
            start.elapsed().as_secs_f64(),
        ));
        if reached(cfg, residual) {
            termination = Termination::TolReached;
        }
    }

    counters.wall_time_s = start.elapsed().as_secs_f64();
    let ergodic_x = state.ergodic.point().ok();
    Ok(SolveReport {
        final_x: state.x,
        final_y: last_y,
        trace,
        counters,
        ergodic_x,
        ergodic_weight: state.ergodic.weight(),
        termination,
        init: run_init,
        init_op_evals,
    })
}

/// Extrapolation rule of the fixed-stepsize variants.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FixedStepVariant {
    /// `tau = 1`; converges for `lambda < alpha / L`.
    Reflected,
    /// `tau = theta / (2 theta - 1)`; converges for
    /// `lambda < alpha (2 theta - 1) / (theta L)` when `F = grad f`.
    Composite { theta: f64 },
}

impl FixedStepVariant {
    pub fn tau(&self) -> f64 {
        match *self {
            FixedStepVariant::Reflected => 1.0,
            FixedStepVariant::Composite { theta } => theta / (2.0 * theta - 1.0),
        }
    }
}

/// Runs the extrapolated iteration with a constant stepsize and no
/// linesearch: one operator evaluation and one proximal step per iteration.
///
/// The iteration starts from `x_{-1} = x_0`. Whether `lambda` is small
/// enough is the caller's responsibility.
pub fn fixed_step_solve(
    problem: &VIProblem,
    cfg: &SolverConfig,
    x0: &[f64],
    lambda: f64,
    variant: FixedStepVariant,
) -> Result<SolveReport, VIError> {
    check_start(problem, cfg, x0)?;
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(VIError::InvalidConfig(format!("stepsize {lambda} must be positive")));
    }
    if let FixedStepVariant::Composite { theta } = variant {
        if !(1.0..=2.0).contains(&theta) {
            return Err(VIError::InvalidConfig(format!("theta = {theta} must lie in [1, 2]")));
        }
    }
    let op = problem.op.as_ref();
    let g = problem.g.as_ref();
    let tau = variant.tau();
    let start = Instant::now();
    let mut counters = Counters::default();
    let mut x_prev = Vector::from(x0);
    let mut x = Vector::from(x0);
    let mut y = Vector::from(x0);
    let mut ergodic = vi_core::ErgodicAverage::new();
    let mut trace = Vec::with_capacity(cfg.max_iter);
    let mut termination = Termination::MaxIter;

    while trace.len() < cfg.max_iter {
        extrapolate_into(&x, &x_prev, tau, &mut y);
        counters.record_op(op);
        let op_y = op.eval(&y);
        let x_next = prox_step(g, lambda, &x, &op_y, &mut counters);
        ergodic.push(lambda, &y)?;
        x_prev = std::mem::replace(&mut x, x_next);

        let residual = metric(problem, cfg, &x);
        trace.push(IterationTrace::new(
            trace.len() + 1,
            residual,
            lambda,
            tau,
            0,
            &counters,
            start.elapsed().as_secs_f64(),
        ));
        if reached(cfg, residual) {
            termination = Termination::TolReached;
            break;
        }
    }
    counters.wall_time_s = start.elapsed().as_secs_f64();
    Ok(SolveReport {
        final_x: x,
        final_y: y,
        trace,
        counters,
        ergodic_x: ergodic.point().ok(),
        ergodic_weight: ergodic.weight(),
        termination,
        init: None,
        init_op_evals: 0,
    })
}
