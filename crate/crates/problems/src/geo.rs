//! Geometric programming:
//! `min_x sum_i e^{<a_i, x> + b_i} + <c, x> + ||x||_1`.

use rand::Rng;
use rand_chacha::ChaCha20Rng;
use vi_core::{DenseMatrix, MonotoneMap, SmoothObjective, Vector};

#[derive(Clone, Debug)]
pub struct GeoProg {
    /// Rows are the `a_i`.
    a: DenseMatrix,
    b: Vector,
    c: Vector,
}

impl GeoProg {
    pub fn new(a: DenseMatrix, b: Vector, c: Vector) -> Self {
        assert_eq!(a.rows(), b.dim());
        assert_eq!(a.cols(), c.dim());
        GeoProg { a, b, c }
    }

    /// `e^{<a_i, x> + b_i}` for every `i`; overflows to `+inf`.
    fn exponentials(&self, x: &[f64]) -> Vector {
        let mut t = self.a.mul_vec(x);
        for (ti, bi) in t.iter_mut().zip(self.b.iter()) {
            *ti = (*ti + bi).exp();
        }
        t
    }
}

impl MonotoneMap for GeoProg {
    fn dim(&self) -> usize {
        self.c.dim()
    }

    fn apply(&self, x: &[f64], out: &mut [f64]) {
        let e = self.exponentials(x);
        self.a.tr_mul_vec_into(&e, out);
        for (o, ci) in out.iter_mut().zip(self.c.iter()) {
            *o += ci;
        }
    }
}

impl SmoothObjective for GeoProg {
    fn value(&self, x: &[f64]) -> f64 {
        let e = self.exponentials(x);
        e.iter().sum::<f64>() + vi_core::vector::dot(&self.c, x)
    }
}

/// `a_i ~ U(0, 1)^d` (row by row), then `b ~ U(-1, 1)^m`, then
/// `c ~ U(-1, 1)^d`; the start is the origin.
pub(crate) fn generate(d: usize, m: usize, rng: &mut ChaCha20Rng) -> (GeoProg, Vector) {
    let a = DenseMatrix::from_fn(m, d, |_, _| rng.random_range(0.0..1.0));
    let b = (0..m).map(|_| rng.random_range(-1.0..1.0)).collect();
    let c = (0..d).map(|_| rng.random_range(-1.0..1.0)).collect();
    (GeoProg::new(a, b, c), Vector::zeros(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gradient_at_origin_is_weighted_row_sum() {
        let a = DenseMatrix::from_rows(&[vec![0.5, 0.25], vec![1.0, 0.0], vec![0.1, 0.9]]);
        let b = Vector::from([0.3, -0.2, 0.0]);
        let c = Vector::from([-1.0, 0.5]);
        let f = GeoProg::new(a.clone(), b.clone(), c.clone());
        let mut expect = c.clone();
        for i in 0..3 {
            for j in 0..2 {
                expect[j] += b[i].exp() * a.get(i, j);
            }
        }
        let g = f.eval(&[0.0, 0.0]);
        for j in 0..2 {
            assert!((g[j] - expect[j]).abs() <= 1e-14);
        }
    }

    #[test]
    fn degenerate_exponent_gives_constant_gradient() {
        let f = GeoProg::new(
            DenseMatrix::zeros(1, 2),
            Vector::from([0.4]),
            Vector::from([2.0, -3.0]),
        );
        assert_eq!(f.eval(&[5.0, 7.0]).as_slice(), &[2.0, -3.0]);
        let v = 0.4_f64.exp() + 2.0 * 5.0 - 3.0 * 7.0;
        assert!((f.value(&[5.0, 7.0]) - v).abs() <= 1e-13);
    }

    #[test]
    fn overflow_is_non_finite_not_a_panic() {
        let f = GeoProg::new(
            DenseMatrix::from_rows(&[vec![1.0]]),
            Vector::from([0.0]),
            Vector::from([0.0]),
        );
        assert!(!f.eval(&[1000.0]).is_finite());
        assert!(!f.value(&[1000.0]).is_finite());
    }
}
