use std::time::Instant;

use vi_core::vector::{dist_sq, dot, forward_step_into};
use vi_core::{
    CompositeProblem, Counters, IterationTrace, SolveReport, Termination, VIError, Vector,
};

use super::{metric_or_nan, BacktrackConfig};
use crate::observer::DescentStep;

struct Accepted {
    z: Vector,
    f_z: f64,
    lambda: f64,
    trials: usize,
}

/// Shrinks `lambda` by `beta` until `z = prox_{lambda g}(x - lambda grad)`
/// satisfies `f(z) <= f(x) + <grad, z - x> + ||z - x||² / (2 lambda)`.
#[allow(clippy::too_many_arguments)]
fn backtrack(
    problem: &CompositeProblem,
    cfg: &BacktrackConfig,
    x: &[f64],
    f_x: f64,
    grad: &[f64],
    lambda_start: f64,
    iter: usize,
    counters: &mut Counters,
) -> Result<Accepted, VIError> {
    let mut lambda = lambda_start;
    let mut v = Vector::zeros(x.len());
    for trials in 1..=cfg.max_trials {
        forward_step_into(x, lambda, grad, &mut v);
        let mut z = Vector::zeros(x.len());
        problem.g.prox(lambda, &v, &mut z);
        counters.record_prox();
        let f_z = problem.f.value(&z);
        counters.record_fval();
        let diff: Vector = z.sub(x);
        if f_z.is_finite() && f_z <= f_x + dot(grad, &diff) + dist_sq(&z, x) / (2.0 * lambda) {
            return Ok(Accepted {
                z,
                f_z,
                lambda,
                trials,
            });
        }
        lambda *= cfg.beta;
    }
    Err(VIError::LinesearchFailed {
        iter,
        trials: cfg.max_trials,
    })
}

fn check(problem: &CompositeProblem, cfg: &BacktrackConfig, x0: &[f64]) -> Result<(), VIError> {
    cfg.validate()?;
    if x0.len() != problem.dim() {
        return Err(VIError::DimensionMismatch {
            expected: problem.dim(),
            got: x0.len(),
        });
    }
    Ok(())
}

pub fn pgm_solve(
    problem: &CompositeProblem,
    cfg: &BacktrackConfig,
    x0: &[f64],
    max_iter: usize,
) -> Result<SolveReport, VIError> {
    pgm_solve_observed(problem, cfg, x0, max_iter, &mut |_: &DescentStep<'_>| {})
}

pub fn fista_solve(
    problem: &CompositeProblem,
    cfg: &BacktrackConfig,
    x0: &[f64],
    max_iter: usize,
) -> Result<SolveReport, VIError> {
    fista_solve_observed(problem, cfg, x0, max_iter, &mut |_: &DescentStep<'_>| {})
}

/// Proximal gradient method with backtracking. Each iteration starts the
/// search from the previous stepsize, so the stepsizes never increase.
pub fn pgm_solve_observed(
    problem: &CompositeProblem,
    cfg: &BacktrackConfig,
    x0: &[f64],
    max_iter: usize,
    observer: &mut dyn FnMut(&DescentStep<'_>),
) -> Result<SolveReport, VIError> {
    run(problem, cfg, x0, max_iter, false, observer)
}

/// FISTA: the same backtracking applied at the extrapolated point
/// `w_{k+1} = x_{k+1} + (t_k - 1) / t_{k+1} (x_{k+1} - x_k)` with
/// `t_1 = 1`, `t_{k+1} = (1 + sqrt(1 + 4 t_k²)) / 2`.
pub fn fista_solve_observed(
    problem: &CompositeProblem,
    cfg: &BacktrackConfig,
    x0: &[f64],
    max_iter: usize,
    observer: &mut dyn FnMut(&DescentStep<'_>),
) -> Result<SolveReport, VIError> {
    run(problem, cfg, x0, max_iter, true, observer)
}

/// `t_{k+1}` of the accelerated scheme.
pub(crate) fn next_t(t: f64) -> f64 {
    (1.0 + (1.0 + 4.0 * t * t).sqrt()) / 2.0
}

fn run(
    problem: &CompositeProblem,
    cfg: &BacktrackConfig,
    x0: &[f64],
    max_iter: usize,
    accelerated: bool,
    observer: &mut dyn FnMut(&DescentStep<'_>),
) -> Result<SolveReport, VIError> {
    check(problem, cfg, x0)?;
    let start = Instant::now();
    let mut counters = Counters::default();
    let mut x = Vector::from(x0);
    // Point the gradient step is taken from; `x` itself for PGM.
    let mut w = x.clone();
    let mut f_w = f64::NAN;
    let mut t = 1.0;
    let mut lambda = cfg.lambda_init.unwrap_or(1.0);
    let mut trace = Vec::with_capacity(max_iter);
    let mut termination = Termination::MaxIter;

    while trace.len() < max_iter {
        let iter = trace.len() + 1;
        if accelerated || iter == 1 {
            f_w = problem.f.value(&w);
            counters.record_fval();
        }
        counters.record_op(problem.f.as_ref());
        let grad = problem.f.eval(&w);
        let acc = match backtrack(problem, cfg, &w, f_w, &grad, lambda, iter, &mut counters) {
            Ok(acc) => acc,
            Err(VIError::LinesearchFailed { iter, trials }) => {
                termination = Termination::LinesearchFailed { iter, trials };
                break;
            }
            Err(e) => return Err(e),
        };
        observer(&DescentStep {
            iter,
            x: &w,
            grad_x: &grad,
            f_x: f_w,
            z: &acc.z,
            f_z: acc.f_z,
            lambda: acc.lambda,
            trials: acc.trials,
        });
        lambda = acc.lambda;

        let coef = if accelerated {
            let t_next = next_t(t);
            let coef = (t - 1.0) / t_next;
            t = t_next;
            w = acc.z.iter().zip(x.iter()).map(|(z, xo)| z + coef * (z - xo)).collect();
            coef
        } else {
            f_w = acc.f_z;
            w = acc.z.clone();
            0.0
        };
        x = acc.z;

        let residual = metric_or_nan(cfg.track_residual, cfg.tol, || problem.residual(&x));
        trace.push(IterationTrace::new(
            iter,
            residual,
            lambda,
            coef,
            acc.trials,
            &counters,
            start.elapsed().as_secs_f64(),
        ));
        if cfg.tol > 0.0 && residual <= cfg.tol {
            termination = Termination::TolReached;
            break;
        }
    }
    counters.wall_time_s = start.elapsed().as_secs_f64();
    Ok(SolveReport {
        final_y: w,
        final_x: x,
        trace,
        counters,
        ergodic_x: None,
        ergodic_weight: 0.0,
        termination,
        init: None,
        init_op_evals: 0,
    })
}
