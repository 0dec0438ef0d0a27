//! Linesearch procedures of the three extrapolated methods.
//!
//! Each trial costs exactly one operator evaluation, except when the
//! operator is affine: then `F(y)` is recovered from the cached `F(x_n)` and
//! `F(x_{n-1})` at no cost.

use vi_core::extrapolation::affine_extrapolated_value;
use vi_core::vector::{dist, dot, norm_sq};
use vi_core::{extrapolate, Counters, MonotoneMap, SolverConfig, SolverState, VIError, Vector};

/// Accepted trial of a linesearch.
#[derive(Clone, Debug, PartialEq)]
pub struct LinesearchOutcome {
    pub tau: f64,
    pub lambda: f64,
    pub y: Vector,
    pub op_y: Vector,
    /// Trial points evaluated, including the accepted one.
    pub trials: usize,
}

/// Largest `lambda` in `(0, bound]` with `||lambda u - c|| <= r`, or `None`
/// if there is none.
///
/// The feasible set is the interval between the roots of
/// `lambda² ||u||² - 2 lambda <u, c> + ||c||² - r² = 0`.
pub fn max_feasible_lambda(u: &[f64], c: &[f64], r: f64, bound: f64) -> Option<f64> {
    debug_assert!(r >= 0.0 && bound > 0.0);
    let a = norm_sq(u);
    let cc = norm_sq(c) - r * r;
    if a == 0.0 {
        return (cc <= 0.0).then_some(bound);
    }
    let b = dot(u, c);
    let mut disc = b * b - a * cc;
    if disc < 0.0 {
        // A tangent root (`r = 0`, `c` parallel to `u`) may come out slightly
        // negative after rounding.
        if disc < -4.0 * f64::EPSILON * (b * b + (a * cc).abs()) {
            return None;
        }
        disc = 0.0;
    }
    let s = disc.sqrt();
    // Cancellation-free roots: the product of the roots is cc / a.
    let (lo, hi) = if b >= 0.0 {
        let hi = (b + s) / a;
        let lo = if hi > 0.0 { cc / (a * hi) } else { (b - s) / a };
        (lo, hi)
    } else {
        let lo = (b - s) / a;
        let hi = if lo < 0.0 { cc / (a * lo) } else { (b + s) / a };
        (lo, hi)
    };
    if hi <= 0.0 || lo > bound {
        return None;
    }
    let lam = hi.min(bound);
    if lam < hi || satisfied(u, c, r, lam) {
        return Some(lam);
    }
    // The computed root can land a few ulps outside the feasible interval;
    // back off geometrically until the inequality holds as evaluated.
    let floor = lo.max(0.0);
    let mut step = 4.0 * f64::EPSILON * lam;
    while lam - step > floor {
        if satisfied(u, c, r, lam - step) {
            return Some(lam - step);
        }
        step *= 2.0;
    }
    // A (near-)tangent interval is narrower than the rounding error of its
    // roots. Its only candidates are the neighbours of the root and, when
    // `c` is a rounded multiple `s u`, the ratio `s` itself.
    let k = (0..u.len()).max_by(|&i, &j| u[i].abs().total_cmp(&u[j].abs()))?;
    for center in [c[k] / u[k], lam] {
        for ulps in 0..=8i64 {
            for cand in [center * (1.0 + ulps as f64 * f64::EPSILON), center * (1.0 - ulps as f64 * f64::EPSILON)] {
                if cand > 0.0 && cand <= bound && satisfied(u, c, r, cand) {
                    return Some(cand);
                }
            }
        }
    }
    None
}

fn satisfied(u: &[f64], c: &[f64], r: f64, lambda: f64) -> bool {
    let s: f64 = u.iter().zip(c).map(|(ui, ci)| (lambda * ui - ci).powi(2)).sum();
    s.sqrt() <= r
}

fn trial_value(
    state: &SolverState,
    op: &dyn MonotoneMap,
    tau: f64,
    y: &[f64],
    counters: &mut Counters,
) -> Vector {
    match (&state.op_x, &state.op_x_prev) {
        (Some(fx), Some(fx_prev)) => affine_extrapolated_value(fx, fx_prev, tau),
        _ => {
            counters.record_op(op);
            op.eval(y)
        }
    }
}

fn failed(state: &SolverState, trials: usize) -> VIError {
    VIError::LinesearchFailed {
        iter: state.iter,
        trials,
    }
}

/// Projected-VI linesearch: `tau = sigma^i` and the largest `lambda` with
/// `||lambda F(y) - lambda_{n-1} tau F(y_{n-1})|| <= alpha ||y - y_{n-1}||`
/// below `min((1 + tau_{n-1}) / tau * lambda_{n-1}, lambda_max)`.
///
/// With `domain_affine` the growth bound is dropped and only `lambda_max`
/// remains.
pub fn alg1_linesearch(
    state: &SolverState,
    op: &dyn MonotoneMap,
    cfg: &SolverConfig,
    domain_affine: bool,
    counters: &mut Counters,
) -> Result<LinesearchOutcome, VIError> {
    for i in 0..cfg.max_ls_iter {
        let tau = cfg.sigma.powi(i as i32);
        let y = extrapolate(&state.x, &state.x_prev, tau)?;
        let op_y = trial_value(state, op, tau, &y, counters);
        if !op_y.is_finite() {
            continue;
        }
        let growth = (1.0 + state.tau_prev) / tau * state.lambda_prev;
        let bound = if domain_affine {
            cfg.lambda_max
        } else {
            growth.min(cfg.lambda_max)
        };
        let c = state.op_y_prev.scaled(state.lambda_prev * tau);
        let r = cfg.alpha * dist(&y, &state.y_prev);
        if let Some(mut lambda) = max_feasible_lambda(&op_y, &c, r, bound) {
            if lambda.is_infinite() {
                // F(y) = 0 with no finite bound: every stepsize passes, so
                // fall back to the growth bound.
                lambda = growth;
            }
            return Ok(LinesearchOutcome {
                tau,
                lambda,
                y,
                op_y,
                trials: i + 1,
            });
        }
    }
    Err(failed(state, cfg.max_ls_iter))
}

/// General-VI linesearch: `tau = sqrt(1 + tau_{n-1}) sigma^i` (or `sigma^i`
/// once `lambda_{n-1} > lambda_max / 2`), `lambda = tau lambda_{n-1}`,
/// accepted when `lambda ||F(y) - F(y_{n-1})|| <= alpha ||y - y_{n-1}||`.
pub fn alg2_linesearch(
    state: &SolverState,
    op: &dyn MonotoneMap,
    cfg: &SolverConfig,
    counters: &mut Counters,
) -> Result<LinesearchOutcome, VIError> {
    let base = if state.lambda_prev <= cfg.lambda_max / 2.0 {
        (1.0 + state.tau_prev).sqrt()
    } else {
        1.0
    };
    for i in 0..cfg.max_ls_iter {
        let tau = base * cfg.sigma.powi(i as i32);
        let lambda = tau * state.lambda_prev;
        let y = extrapolate(&state.x, &state.x_prev, tau)?;
        let op_y = trial_value(state, op, tau, &y, counters);
        if !op_y.is_finite() {
            continue;
        }
        if lambda * dist(&op_y, &state.op_y_prev) <= cfg.alpha * dist(&y, &state.y_prev) {
            return Ok(LinesearchOutcome {
                tau,
                lambda,
                y,
                op_y,
                trials: i + 1,
            });
        }
    }
    Err(failed(state, cfg.max_ls_iter))
}

/// Composite-minimization linesearch with parameter `theta = cfg.theta`:
/// `tau = sqrt((1 + theta tau_{n-1}) / (2 theta - 1)) sigma^i`,
/// `lambda = (2 - 1/theta) tau lambda_{n-1}`, accepted when
/// `lambda ||grad f(y) - grad f(y_{n-1})|| <= alpha (2 - 1/theta) ||y - y_{n-1}||`.
///
/// For `theta = 1` every trial is bitwise identical to [`alg2_linesearch`].
pub fn alg3_linesearch(
    state: &SolverState,
    grad: &dyn MonotoneMap,
    cfg: &SolverConfig,
    counters: &mut Counters,
) -> Result<LinesearchOutcome, VIError> {
    let theta = cfg.theta;
    let gain = 2.0 - 1.0 / theta;
    let base = if state.lambda_prev <= cfg.lambda_max / 2.0 {
        ((1.0 + theta * state.tau_prev) / (2.0 * theta - 1.0)).sqrt()
    } else {
        1.0
    };
    for i in 0..cfg.max_ls_iter {
        let tau = base * cfg.sigma.powi(i as i32);
        let lambda = (gain * tau) * state.lambda_prev;
        let y = extrapolate(&state.x, &state.x_prev, tau)?;
        let op_y = trial_value(state, grad, tau, &y, counters);
        if !op_y.is_finite() {
            continue;
        }
        if lambda * dist(&op_y, &state.op_y_prev) <= (cfg.alpha * gain) * dist(&y, &state.y_prev) {
            return Ok(LinesearchOutcome {
                tau,
                lambda,
                y,
                op_y,
                trials: i + 1,
            });
        }
    }
    Err(failed(state, cfg.max_ls_iter))
}
