//! `min_x (1/p) sum_i ||x - a_i||^p`, a generalized Fermat–Weber problem.

use rand::Rng;
use rand_chacha::ChaCha20Rng;
use vi_core::vector::norm;
use vi_core::{DenseMatrix, MonotoneMap, SmoothObjective, Vector};

#[derive(Clone, Debug)]
pub struct LpSum {
    /// Rows are the points `a_i`.
    points: DenseMatrix,
    p: f64,
}

impl LpSum {
    /// Panics unless `p >= 2`, below which the objective is not smooth.
    pub fn new(points: DenseMatrix, p: f64) -> Self {
        assert!(p >= 2.0, "p = {p} must be at least 2");
        LpSum { points, p }
    }
}

impl MonotoneMap for LpSum {
    fn dim(&self) -> usize {
        self.points.cols()
    }

    fn apply(&self, x: &[f64], out: &mut [f64]) {
        out.fill(0.0);
        let mut diff = vec![0.0; x.len()];
        for i in 0..self.points.rows() {
            for ((d, xi), ai) in diff.iter_mut().zip(x).zip(self.points.row(i)) {
                *d = xi - ai;
            }
            let w = norm(&diff).powf(self.p - 2.0);
            for (o, d) in out.iter_mut().zip(&diff) {
                *o += w * d;
            }
        }
    }
}

impl SmoothObjective for LpSum {
    fn value(&self, x: &[f64]) -> f64 {
        let total: f64 = (0..self.points.rows())
            .map(|i| {
                let r: f64 = x
                    .iter()
                    .zip(self.points.row(i))
                    .map(|(xi, ai)| (xi - ai) * (xi - ai))
                    .sum::<f64>()
                    .sqrt();
                r.powf(self.p)
            })
            .sum();
        total / self.p
    }
}

/// `a_i ~ U[-100, 100]^d` (row by row), then `x0 ~ U[-1000, 1000]^d`.
pub(crate) fn generate(d: usize, m: usize, p: f64, rng: &mut ChaCha20Rng) -> (LpSum, Vector) {
    let points = DenseMatrix::from_fn(m, d, |_, _| rng.random_range(-100.0..=100.0));
    let x0 = (0..d).map(|_| rng.random_range(-1000.0..=1000.0)).collect();
    (LpSum::new(points, p), x0)
}
