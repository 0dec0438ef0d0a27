//! A nonlinear, non-potential VI on the box `[0, 100]^d`:
//! `F(x) = F1(x) + D x + c` with
//!
//! ```text
//! F1(x)_i = x_{i-1}² + x_i² + x_{i-1} x_i + x_i x_{i+1}      (x_0 = x_{d+1} = 0)
//! D       = tridiag(1, 4, -2),  c = (-1, ..., -1)
//! ```
//!
//! evaluated in `O(d)`.

use rand::Rng;
use rand_chacha::ChaCha20Rng;
use vi_core::{MonotoneMap, Vector};

#[derive(Clone, Copy, Debug)]
pub struct SunOperator {
    dim: usize,
}

impl SunOperator {
    pub fn new(dim: usize) -> Self {
        SunOperator { dim }
    }
}

pub const BOX_HI: f64 = 100.0;

impl MonotoneMap for SunOperator {
    fn dim(&self) -> usize {
        self.dim
    }

    fn apply(&self, x: &[f64], out: &mut [f64]) {
        let d = x.len();
        for i in 0..d {
            let prev = if i > 0 { x[i - 1] } else { 0.0 };
            let next = if i + 1 < d { x[i + 1] } else { 0.0 };
            let xi = x[i];
            let f1 = prev * prev + xi * xi + prev * xi + xi * next;
            out[i] = f1 + (4.0 * xi + prev - 2.0 * next) - 1.0;
        }
    }
}

/// `x0 ~ U[0, 100]^d`.
pub(crate) fn generate(d: usize, rng: &mut ChaCha20Rng) -> (SunOperator, Vector) {
    let x0 = (0..d).map(|_| rng.random_range(0.0..=BOX_HI)).collect();
    (SunOperator::new(d), x0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_dimensional_hand_evaluation() {
        assert_eq!(SunOperator::new(2).eval(&[1.0, 2.0]).as_slice(), &[2.0, 15.0]);
    }

    #[test]
    fn origin_maps_to_c() {
        assert_eq!(SunOperator::new(4).eval(&[0.0; 4]).as_slice(), &[-1.0; 4]);
    }

    #[test]
    fn single_coordinate() {
        // f_1 = x², D = 4
        assert_eq!(SunOperator::new(1).eval(&[3.0])[0], 9.0 + 12.0 - 1.0);
    }
}
