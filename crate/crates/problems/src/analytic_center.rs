//! Analytic center of a polyhedron:
//! `min_x -sum_i log(b_i - <a_i, x>)`.
//!
//! Outside the open polyhedron the value is `+inf` and the gradient is NaN;
//! nothing panics.

use rand::Rng;
use rand_chacha::ChaCha20Rng;
use vi_core::{DenseMatrix, MonotoneMap, SmoothObjective, Vector};

#[derive(Clone, Debug)]
pub struct AnalyticCenter {
    a: DenseMatrix,
    b: Vector,
}

impl AnalyticCenter {
    pub fn new(a: DenseMatrix, b: Vector) -> Self {
        assert_eq!(a.rows(), b.dim());
        AnalyticCenter { a, b }
    }

    /// `b - A x`, or `None` when some slack is not positive.
    fn slacks(&self, x: &[f64]) -> Option<Vector> {
        let mut s = self.a.mul_vec(x);
        for (si, bi) in s.iter_mut().zip(self.b.iter()) {
            *si = bi - *si;
        }
        s.iter().all(|&v| v > 0.0).then_some(s)
    }
}

impl MonotoneMap for AnalyticCenter {
    fn dim(&self) -> usize {
        self.a.cols()
    }

    fn apply(&self, x: &[f64], out: &mut [f64]) {
        match self.slacks(x) {
            Some(s) => {
                let inv: Vector = s.iter().map(|v| 1.0 / v).collect();
                self.a.tr_mul_vec_into(&inv, out);
            }
            None => out.fill(f64::NAN),
        }
    }
}

impl SmoothObjective for AnalyticCenter {
    fn value(&self, x: &[f64]) -> f64 {
        match self.slacks(x) {
            Some(s) => -s.iter().map(|v| v.ln()).sum::<f64>(),
            None => f64::INFINITY,
        }
    }
}

/// Number of constraints made nearly active at the origin.
pub const TIGHT_ROWS: usize = 100;

/// `a_i ~ U[-1, 1]^d`; the first `min(100, m)` entries of `b` are `0.01`,
/// the rest `100`, so the origin is feasible but close to a vertex.
pub(crate) fn generate(d: usize, m: usize, rng: &mut ChaCha20Rng) -> (AnalyticCenter, Vector) {
    let a = DenseMatrix::from_fn(m, d, |_, _| rng.random_range(-1.0..=1.0));
    let b = (0..m)
        .map(|i| if i < TIGHT_ROWS { 0.01 } else { 100.0 })
        .collect();
    (AnalyticCenter::new(a, b), Vector::zeros(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single() -> AnalyticCenter {
        AnalyticCenter::new(DenseMatrix::from_rows(&[vec![1.0]]), Vector::from([1.0]))
    }

    #[test]
    fn scalar_barrier() {
        let f = single();
        assert_eq!(f.eval(&[0.0])[0], 1.0);
        assert_eq!(f.eval(&[0.5])[0], 2.0);
        assert!((f.value(&[0.5]) - 2.0_f64.ln()).abs() <= 1e-15);
    }

    #[test]
    fn outside_domain() {
        let f = single();
        assert!(f.eval(&[1.0])[0].is_nan());
        assert!(f.eval(&[3.0])[0].is_nan());
        assert_eq!(f.value(&[1.0]), f64::INFINITY);
    }

    #[test]
    fn gradient_at_origin() {
        let a = DenseMatrix::from_rows(&[vec![1.0, -0.5], vec![0.2, 0.3]]);
        let f = AnalyticCenter::new(a, Vector::from([0.01, 100.0]));
        let g = f.eval(&[0.0, 0.0]);
        let expect = [1.0 / 0.01 + 0.2 / 100.0, -0.5 / 0.01 + 0.3 / 100.0];
        for j in 0..2 {
            assert!((g[j] - expect[j]).abs() <= 1e-12);
        }
    }
}
