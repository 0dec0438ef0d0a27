//! `min_{||x|| <= 100} sum_i q_i (e^{x_i} - x_i - 1) + ||x||² / 2`.
//!
//! The objective is strongly convex with minimizer `0`, and its gradient
//! changes very fast away from it.

use rand::Rng;
use rand_chacha::ChaCha20Rng;
use vi_core::{MonotoneMap, SmoothObjective, Vector};

#[derive(Clone, Debug)]
pub struct ConsMin {
    q: Vec<f64>,
}

impl ConsMin {
    pub fn new(q: Vec<f64>) -> Self {
        ConsMin { q }
    }

    pub fn q(&self) -> &[f64] {
        &self.q
    }
}

impl MonotoneMap for ConsMin {
    fn dim(&self) -> usize {
        self.q.len()
    }

    fn apply(&self, x: &[f64], out: &mut [f64]) {
        for ((o, q), xi) in out.iter_mut().zip(&self.q).zip(x) {
            *o = q * xi.exp_m1() + xi;
        }
    }
}

impl SmoothObjective for ConsMin {
    fn value(&self, x: &[f64]) -> f64 {
        self.q
            .iter()
            .zip(x)
            .map(|(q, xi)| q * (xi.exp_m1() - xi) + 0.5 * xi * xi)
            .sum()
    }
}

pub const RADIUS: f64 = 100.0;

/// `q ~ U(0, 1000)^d` and `x0 ~ U(-50, 50)^d`, drawn in that order.
pub(crate) fn generate(d: usize, rng: &mut ChaCha20Rng) -> (ConsMin, Vector) {
    let q = (0..d).map(|_| rng.random_range(0.0..1000.0)).collect();
    let x0 = (0..d).map(|_| rng.random_range(-50.0..50.0)).collect();
    (ConsMin::new(q), x0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn origin_is_stationary() {
        let f = ConsMin::new(vec![3.0, 500.0, 0.1]);
        assert_eq!(f.eval(&[0.0; 3]).as_slice(), &[0.0; 3]);
        assert_eq!(f.value(&[0.0; 3]), 0.0);
    }

    #[test]
    fn scalar_formula() {
        let f = ConsMin::new(vec![2.0]);
        let x = 0.7_f64;
        let g = 2.0 * (x.exp() - 1.0) + x;
        assert!((f.eval(&[x])[0] - g).abs() <= 1e-14);
        let v = 2.0 * (x.exp() - x - 1.0) + 0.5 * x * x;
        assert!((f.value(&[x]) - v).abs() <= 1e-14);
    }
}
