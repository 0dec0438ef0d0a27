//! Convergence measures and the quantities appearing in the convergence
//! analysis: the natural residual, the gap integrand `Psi`, the primal-dual
//! gap of a matrix game, the Lyapunov energy and the ergodic bound.
//!
//! Nothing here touches benchmark counters.

use crate::error::{check_dim, VIError};
use crate::matrix::DenseMatrix;
use crate::operator::MonotoneMap;
use crate::problem::{natural_residual_raw, CompositeProblem, VIProblem};
use crate::prox::ProxFriendly;
use crate::report::RunInit;
use crate::vector::dist_sq;
use crate::FEASIBILITY_TOL;

/// `||x - prox_{lam g}(x - lam F(x))||`, zero exactly at solutions.
pub fn natural_residual(problem: &VIProblem, x: &[f64], lam: f64) -> f64 {
    debug_assert!(lam > 0.0);
    natural_residual_raw(problem.op.as_ref(), problem.g.as_ref(), x, lam)
}

/// `Psi(x, y) = <F(x), y - x> + g(y) - g(x)`.
///
/// `+inf` when `y` lies outside `dom g`.
pub fn psi(problem: &VIProblem, x: &[f64], y: &[f64]) -> f64 {
    psi_raw(problem.op.as_ref(), problem.g.as_ref(), x, y)
}

fn psi_raw(op: &dyn MonotoneMap, g: &dyn ProxFriendly, x: &[f64], y: &[f64]) -> f64 {
    let gy = g.value(y);
    if gy == f64::INFINITY {
        return f64::INFINITY;
    }
    let fx = op.eval(x);
    let lin: f64 = fx.iter().zip(y.iter().zip(x)).map(|(f, (a, b))| f * (a - b)).sum();
    lin + gy - g.value(x)
}

/// Value of a gap together with the indices attaining it.
#[derive(Clone, Debug, PartialEq)]
pub struct GapReport {
    pub value: f64,
    /// Row attaining `max_i (A x)_i`.
    pub argmax_row: usize,
    /// Column attaining `min_j (A^T y)_j`.
    pub argmin_col: usize,
}

fn check_simplex(p: &[f64], what: &str) -> Result<(), VIError> {
    let sum: f64 = p.iter().sum();
    if p.iter().any(|&v| v < -FEASIBILITY_TOL || !v.is_finite())
        || (sum - 1.0).abs() > FEASIBILITY_TOL * (p.len() as f64).max(1.0)
    {
        return Err(VIError::Infeasible(format!("{what} is not in the unit simplex")));
    }
    Ok(())
}

/// `G(x, y) = max_i (A x)_i - min_j (A^T y)_j` for `x` in the column simplex
/// and `y` in the row simplex of `A`.
pub fn matrix_game_gap(a: &DenseMatrix, x: &[f64], y: &[f64]) -> Result<GapReport, VIError> {
    check_dim(a.cols(), x.len())?;
    check_dim(a.rows(), y.len())?;
    check_simplex(x, "primal point")?;
    check_simplex(y, "dual point")?;
    let ax = a.mul_vec(x);
    let aty = a.tr_mul_vec(y);
    let (argmax_row, max) = ax
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |acc, (i, v)| if v > acc.1 { (i, v) } else { acc });
    let (argmin_col, min) = aty
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::INFINITY), |acc, (j, v)| if v < acc.1 { (j, v) } else { acc });
    Ok(GapReport {
        value: max - min,
        argmax_row,
        argmin_col,
    })
}

/// The iterates one Lyapunov value depends on.
#[derive(Clone, Copy, Debug)]
pub struct LyapunovSnapshot<'a> {
    /// `x_n`
    pub x: &'a [f64],
    /// `y_n`
    pub y: &'a [f64],
    /// `x_{n+1}`
    pub x_next: &'a [f64],
    pub lambda: f64,
    pub tau: f64,
}

/// Which energy to evaluate.
#[derive(Clone, Copy)]
pub enum EnergyModel<'a> {
    /// `||x_{n+1} - x̄||² + α||x_{n+1} - y_n||² + 2λ_n(1 + τ_n)Ψ(x̄, x_n)`
    Alg12 { problem: &'a VIProblem, alpha: f64 },
    /// `||x_{n+1} - x̄||² + (2θ-1)α||x_{n+1} - y_n||² + 2λ_n(1 + θτ_n)(Φ(x_n) - Φ*)`
    Alg3 {
        problem: &'a CompositeProblem,
        alpha: f64,
        theta: f64,
        phi_star: Option<f64>,
    },
}

/// Lyapunov value `a_{n+1}` at a reference solution `x_ref`.
pub fn lyapunov_energy(
    snap: &LyapunovSnapshot<'_>,
    x_ref: &[f64],
    model: EnergyModel<'_>,
) -> Result<f64, VIError> {
    check_dim(x_ref.len(), snap.x_next.len())?;
    let dist = dist_sq(snap.x_next, x_ref);
    let inertia = dist_sq(snap.x_next, snap.y);
    match model {
        EnergyModel::Alg12 { problem, alpha } => {
            let p = psi(problem, x_ref, snap.x);
            Ok(dist + alpha * inertia + 2.0 * snap.lambda * (1.0 + snap.tau) * p)
        }
        EnergyModel::Alg3 {
            problem,
            alpha,
            theta,
            phi_star,
        } => {
            let phi_star = phi_star.ok_or(VIError::MissingOptimalValue)?;
            let excess = problem.objective(snap.x) - phi_star;
            Ok(dist
                + (2.0 * theta - 1.0) * alpha * inertia
                + 2.0 * snap.lambda * (1.0 + theta * snap.tau) * excess)
        }
    }
}

/// Numerator of the ergodic bound
/// `||x_1 - x||² + α||x_1 - y_0||² + 2λ_1τ_1Ψ(x, x_0)`;
/// divide by the ergodic weight to bound `Ψ(x, x̄_N)`.
pub fn ergodic_bound_rhs(problem: &VIProblem, x: &[f64], init: &RunInit, alpha: f64) -> f64 {
    ergodic_bound_terms(
        dist_sq(&init.x1, x),
        dist_sq(&init.x1, &init.y0),
        init.lambda1,
        init.tau1,
        psi(problem, x, &init.x0),
        alpha,
    )
}

fn ergodic_bound_terms(d1: f64, d2: f64, lambda1: f64, tau1: f64, psi0: f64, alpha: f64) -> f64 {
    d1 + alpha * d2 + 2.0 * lambda1 * tau1 * psi0
}
