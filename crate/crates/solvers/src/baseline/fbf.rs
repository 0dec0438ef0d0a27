use std::time::Instant;

use vi_core::vector::{dist, forward_step_into};
use vi_core::{
    init_lambda0, Counters, IterationTrace, SolveReport, Termination, VIError, VIProblem, Vector,
};

use super::{metric_or_nan, BacktrackConfig, FBF_GROWTH_CAP, FBF_PROBE_ALPHA};
use crate::observer::FbfStep;

pub fn fbf_solve(
    problem: &VIProblem,
    cfg: &BacktrackConfig,
    x0: &[f64],
    max_iter: usize,
) -> Result<SolveReport, VIError> {
    fbf_solve_observed(problem, cfg, x0, max_iter, &mut |_: &FbfStep<'_>| {})
}

/// Tseng's forward-backward-forward method.
///
/// Each iteration searches from `lambda = delta lambda_{n-1}` (capped at
/// `1e6` times the initial stepsize), shrinking by `beta` until
/// `z = prox_{lambda g}(x - lambda F(x))` passes
/// `lambda ||F(z) - F(x)|| <= theta ||z - x||`, then corrects
/// `x_{n+1} = z - lambda (F(z) - F(x))`.
///
/// `F(x_n)` is evaluated once per iteration and `F(z)` once per trial. The
/// residual metric is taken at the feasible point `z`.
pub fn fbf_solve_observed(
    problem: &VIProblem,
    cfg: &BacktrackConfig,
    x0: &[f64],
    max_iter: usize,
    observer: &mut dyn FnMut(&FbfStep<'_>),
) -> Result<SolveReport, VIError> {
    cfg.validate()?;
    if x0.len() != problem.dim() {
        return Err(VIError::DimensionMismatch {
            expected: problem.dim(),
            got: x0.len(),
        });
    }
    let op = problem.op.as_ref();
    let g = problem.g.as_ref();
    let start = Instant::now();
    let mut counters = Counters::default();
    let mut x = Vector::from(x0);
    if max_iter == 0 {
        return Ok(SolveReport {
            final_x: x.clone(),
            final_y: x,
            trace: Vec::new(),
            counters,
            ergodic_x: None,
            ergodic_weight: 0.0,
            termination: Termination::MaxIter,
            init: None,
            init_op_evals: 0,
        });
    }

    let (lambda_initial, mut op_x) = match cfg.lambda_init {
        Some(l) => {
            counters.record_op(op);
            (l, op.eval(&x))
        }
        None => {
            let s = init_lambda0(op, &x, FBF_PROBE_ALPHA, cfg.seed)?;
            counters.record_op(op);
            counters.record_op(op);
            (s.lambda0, s.op_x0)
        }
    };
    let init_op_evals = counters.n_op;
    let cap = FBF_GROWTH_CAP * lambda_initial;
    let mut lambda_prev = lambda_initial;
    let mut z = x.clone();
    let mut trace = Vec::with_capacity(max_iter);
    let mut termination = Termination::MaxIter;
    let mut v = Vector::zeros(x.len());

    'outer: while trace.len() < max_iter {
        let iter = trace.len() + 1;
        if iter > 1 {
            counters.record_op(op);
            op_x = op.eval(&x);
        }
        let mut lambda = (cfg.delta * lambda_prev).min(cap);
        let mut trials = 0;
        let op_z = loop {
            if trials == cfg.max_trials {
                termination = Termination::LinesearchFailed { iter, trials };
                break 'outer;
            }
            trials += 1;
            forward_step_into(&x, lambda, &op_x, &mut v);
            g.prox(lambda, &v, &mut z);
            counters.record_prox();
            counters.record_op(op);
            let op_z = op.eval(&z);
            if op_z.is_finite() && lambda * dist(&op_z, &op_x) <= cfg.theta_fbf * dist(&z, &x) {
                break op_z;
            }
            lambda *= cfg.beta;
        };
        let x_next: Vector = z
            .iter()
            .zip(op_z.iter().zip(op_x.iter()))
            .map(|(zi, (fz, fx))| zi - lambda * (fz - fx))
            .collect();
        observer(&FbfStep {
            iter,
            x: &x,
            op_x: &op_x,
            z: &z,
            op_z: &op_z,
            x_next: &x_next,
            lambda,
            trials,
        });
        x = x_next;
        lambda_prev = lambda;

        let residual = metric_or_nan(cfg.track_residual, cfg.tol, || problem.residual(&z));
        trace.push(IterationTrace::new(
            iter,
            residual,
            lambda,
            0.0,
            trials,
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
        final_x: x,
        final_y: z,
        trace,
        counters,
        ergodic_x: None,
        ergodic_weight: 0.0,
        termination,
        init: None,
        init_op_evals,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use vi_core::prox::{Ball, Unconstrained};
    use vi_core::ClosureMap;

    fn identity() -> VIProblem {
        let op = ClosureMap::new(1, |x, out| out.copy_from_slice(x));
        VIProblem::new(Arc::new(op), Arc::new(Unconstrained)).unwrap()
    }

    #[test]
    fn scalar_hand_trace() {
        let cfg = BacktrackConfig {
            lambda_init: Some(0.5),
            ..Default::default()
        };
        let r = fbf_solve(&identity(), &cfg, &[1.0], 1).unwrap();
        assert_eq!(r.final_y.as_slice(), &[0.5]);
        assert_eq!(r.final_x.as_slice(), &[0.75]);
        let r = fbf_solve(&identity(), &cfg, &[1.0], 200).unwrap();
        assert!(r.final_x[0].abs() < 1e-12);
    }

    #[test]
    fn solution_is_a_fixed_point() {
        let cfg = BacktrackConfig::default();
        let r = fbf_solve(&identity(), &cfg, &[0.0], 5).unwrap();
        assert_eq!(r.final_x.as_slice(), &[0.0]);
        assert!(r.trace.iter().all(|t| t.ls_inner == 1));
    }

    #[test]
    fn evaluation_count_identity() {
        let op = ClosureMap::new(2, |x, out| {
            out[0] = x[1] + x[0].powi(3);
            out[1] = -x[0];
        });
        let p = VIProblem::new(Arc::new(op), Arc::new(Ball::new(1.0))).unwrap();
        for delta in [1.0, 2.0] {
            let cfg = BacktrackConfig {
                delta,
                ..Default::default()
            };
            let mut checked = 0;
            let r = fbf_solve_observed(&p, &cfg, &[0.9, -0.3], 40, &mut |s| {
                assert!(s.lambda * dist(s.op_z, s.op_x) <= 0.9 * dist(s.z, s.x));
                checked += 1;
            })
            .unwrap();
            assert_eq!(checked, 40);
            let trials = r.total_trials() as u64;
            assert_eq!(r.counters.n_op, trials + 40 + 1);
            assert_eq!(r.counters.n_prox, trials);
            assert!(r.counters.n_op >= 2 * 40);
        }
    }
}
