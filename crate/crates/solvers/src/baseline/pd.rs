use std::time::Instant;

use vi_core::metrics::matrix_game_gap;
use vi_core::prox::project_simplex_into;
use vi_core::vector::norm;
use vi_core::{Counters, DenseMatrix, IterationTrace, SolveReport, Termination, VIError, Vector};

/// Stepsizes of the primal-dual method.
#[derive(Clone, Debug, PartialEq)]
pub struct PDConfig {
    pub tau: f64,
    pub sigma: f64,
    /// Stop once the primal-dual gap drops to `tol`; `0` runs the full budget.
    pub tol: f64,
    pub track_residual: bool,
}

impl PDConfig {
    /// `tau = sigma = 1 / ||A||`.
    pub fn for_matrix(a: &DenseMatrix) -> Result<Self, VIError> {
        let l = spectral_norm(a, 1e-6);
        if l == 0.0 {
            return Err(VIError::InvalidConfig("the payoff matrix is zero".into()));
        }
        Ok(PDConfig {
            tau: 1.0 / l,
            sigma: 1.0 / l,
            tol: 0.0,
            track_residual: true,
        })
    }
}

/// Largest singular value of `a` by power iteration on `AᵀA`, stopped when
/// the estimate changes by less than `tol` relative. Zero for a zero matrix.
pub fn spectral_norm(a: &DenseMatrix, tol: f64) -> f64 {
    const MAX_ITER: usize = 10_000;
    if a.is_zero() {
        return 0.0;
    }
    // Deterministic, non-symmetric start so that no singular direction of a
    // structured matrix is missed.
    let mut v: Vector = (0..a.cols())
        .map(|i| 1.0 + ((i as f64 + 1.0) * 0.618_033_988_749_895).fract())
        .collect();
    let n = v.norm();
    v = v.scaled(1.0 / n);
    let mut est = 0.0;
    for _ in 0..MAX_ITER {
        let av = a.mul_vec(&v);
        est = norm(&av);
        let w = a.tr_mul_vec(&av);
        let wn = norm(&w);
        if wn == 0.0 {
            return est;
        }
        // Stop once v is an eigenvector of AᵀA up to a relative residual of
        // `tol`; the eigenvalue estimate est² is then accurate to `tol`.
        let mu = est * est;
        let resid = w.iter().zip(v.iter()).map(|(wi, vi)| (wi - mu * vi).powi(2)).sum::<f64>().sqrt();
        if resid <= tol * mu {
            return est;
        }
        v = w.scaled(1.0 / wn);
    }
    est
}

/// Chambolle–Pock primal-dual method for `min_{x in Δ_l} max_{y in Δ_k} <A x, y>`:
///
/// ```text
/// x_{n+1} = P(x_n - tau Aᵀ y_n)
/// y_{n+1} = P(y_n + sigma A (2 x_{n+1} - x_n))
/// ```
///
/// Two matrix-vector products and one (blockwise) projection per
/// iteration. The report stacks the primal and dual parts as `(x; y)`; the
/// residual column holds the primal-dual gap.
pub fn cp_pd_solve(
    a: &DenseMatrix,
    x0: &[f64],
    y0: &[f64],
    cfg: &PDConfig,
    max_iter: usize,
) -> Result<SolveReport, VIError> {
    if x0.len() != a.cols() {
        return Err(VIError::DimensionMismatch {
            expected: a.cols(),
            got: x0.len(),
        });
    }
    if y0.len() != a.rows() {
        return Err(VIError::DimensionMismatch {
            expected: a.rows(),
            got: y0.len(),
        });
    }
    if !(cfg.tau > 0.0 && cfg.sigma > 0.0) {
        return Err(VIError::InvalidConfig("stepsizes must be positive".into()));
    }
    let start = Instant::now();
    let mut counters = Counters::default();
    let mut x = Vector::from(x0);
    let mut y = Vector::from(y0);
    let mut x_next = Vector::zeros(x.dim());
    let mut y_next = Vector::zeros(y.dim());
    let mut trace = Vec::with_capacity(max_iter);
    let mut termination = Termination::MaxIter;

    while trace.len() < max_iter {
        let aty = a.tr_mul_vec(&y);
        let v: Vector = x.iter().zip(aty.iter()).map(|(xi, g)| xi - cfg.tau * g).collect();
        project_simplex_into(&v, &mut x_next);
        let x_bar: Vector = x_next.iter().zip(x.iter()).map(|(n, o)| 2.0 * n - o).collect();
        let ax = a.mul_vec(&x_bar);
        let w: Vector = y.iter().zip(ax.iter()).map(|(yi, g)| yi + cfg.sigma * g).collect();
        project_simplex_into(&w, &mut y_next);
        counters.n_mult += 2;
        counters.record_prox();
        std::mem::swap(&mut x, &mut x_next);
        std::mem::swap(&mut y, &mut y_next);

        let gap = if cfg.track_residual || cfg.tol > 0.0 {
            matrix_game_gap(a, &x, &y)?.value
        } else {
            f64::NAN
        };
        trace.push(IterationTrace::new(
            trace.len() + 1,
            gap,
            cfg.tau,
            1.0,
            0,
            &counters,
            start.elapsed().as_secs_f64(),
        ));
        if cfg.tol > 0.0 && gap <= cfg.tol {
            termination = Termination::TolReached;
            break;
        }
    }
    counters.wall_time_s = start.elapsed().as_secs_f64();
    let z: Vector = x.iter().chain(y.iter()).copied().collect();
    Ok(SolveReport {
        final_x: z.clone(),
        final_y: z,
        trace,
        counters,
        ergodic_x: None,
        ergodic_weight: 0.0,
        termination,
        init: None,
        init_op_evals: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spectral_norm_examples() {
        assert!((spectral_norm(&DenseMatrix::identity(3), 1e-12) - 1.0).abs() < 1e-12);
        let d = DenseMatrix::from_rows(&[vec![3.0, 0.0], vec![0.0, 1.0]]);
        assert!((spectral_norm(&d, 1e-12) - 3.0).abs() < 1e-9);
        assert_eq!(spectral_norm(&DenseMatrix::zeros(2, 3), 1e-6), 0.0);
        // Top right singular vector orthogonal to the all-ones vector.
        let r = DenseMatrix::from_rows(&[vec![1.0, -1.0]]);
        assert!((spectral_norm(&r, 1e-12) - 2f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn zero_matrix_keeps_barycenters() {
        let a = DenseMatrix::zeros(2, 3);
        let cfg = PDConfig {
            tau: 1.0,
            sigma: 1.0,
            tol: 0.0,
            track_residual: true,
        };
        let x0 = [1.0 / 3.0; 3];
        let y0 = [0.5; 2];
        let r = cp_pd_solve(&a, &x0, &y0, &cfg, 10).unwrap();
        for (got, want) in r.final_x.iter().zip(x0.iter().chain(y0.iter())) {
            assert!((got - want).abs() < 1e-15);
        }
        assert_eq!(r.counters.n_mult, 20);
    }

    #[test]
    fn symmetric_game() {
        let a = DenseMatrix::from_rows(&[vec![1.0, -1.0], vec![-1.0, 1.0]]);
        let mut cfg = PDConfig::for_matrix(&a).unwrap();
        cfg.tol = 1e-6;
        let r = cp_pd_solve(&a, &[0.9, 0.1], &[0.2, 0.8], &cfg, 500).unwrap();
        assert_eq!(r.termination, Termination::TolReached);
        assert_eq!(r.counters.n_mult, 2 * r.iterations() as u64);
        for v in r.final_x.iter() {
            assert!((v - 0.5).abs() < 1e-5);
        }
    }
}
