//! Bilinear matrix game `min_{x in Δ_l} max_{y in Δ_k} <A x, y>` as the VI
//! with `z = (x; y)` and the skew operator `F(z) = (Aᵀ y; -A x)`.

use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};
use vi_core::{DenseMatrix, MonotoneMap, Vector};

/// Entry distribution of the payoff matrix.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GameDist {
    /// `U(-1, 1)`
    #[default]
    Uniform,
    /// Standard normal, not clipped.
    Normal,
}

#[derive(Clone, Debug)]
pub struct GameOperator {
    a: Arc<DenseMatrix>,
}

impl GameOperator {
    pub fn new(a: Arc<DenseMatrix>) -> Self {
        GameOperator { a }
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.a
    }
}

impl MonotoneMap for GameOperator {
    fn dim(&self) -> usize {
        self.a.rows() + self.a.cols()
    }

    fn apply(&self, z: &[f64], out: &mut [f64]) {
        let l = self.a.cols();
        let (x, y) = z.split_at(l);
        let (out_x, out_y) = out.split_at_mut(l);
        self.a.tr_mul_vec_into(y, out_x);
        self.a.mul_vec_into(x, out_y);
        for v in out_y.iter_mut() {
            *v = -*v;
        }
    }

    fn is_affine(&self) -> bool {
        true
    }

    fn mults_per_eval(&self) -> u64 {
        2
    }
}

/// `A` (`k x l`, row by row) from `dist`; the start is the pair of
/// barycenters.
pub(crate) fn generate(
    k: usize,
    l: usize,
    dist: GameDist,
    rng: &mut ChaCha20Rng,
) -> (Arc<DenseMatrix>, Vector) {
    let a = match dist {
        GameDist::Uniform => DenseMatrix::from_fn(k, l, |_, _| rng.random_range(-1.0..1.0)),
        GameDist::Normal => DenseMatrix::from_fn(k, l, |_, _| StandardNormal.sample(rng)),
    };
    (Arc::new(a), barycenters(k, l))
}

/// `(1/l, ..., 1/l; 1/k, ..., 1/k)`
pub fn barycenters(k: usize, l: usize) -> Vector {
    let x = std::iter::repeat_n(1.0 / l as f64, l);
    let y = std::iter::repeat_n(1.0 / k as f64, k);
    x.chain(y).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_matrix_gives_zero_operator() {
        let op = GameOperator::new(Arc::new(DenseMatrix::zeros(2, 3)));
        assert_eq!(op.eval(&[0.3, -1.0, 2.0, 5.0, 7.0]).as_slice(), &[0.0; 5]);
    }

    #[test]
    fn layout_is_x_then_y() {
        // A = [[1, 2]], x = (1, 0), y = (3)
        let op = GameOperator::new(Arc::new(DenseMatrix::from_rows(&[vec![1.0, 2.0]])));
        assert_eq!(op.eval(&[1.0, 0.0, 3.0]).as_slice(), &[3.0, 6.0, -1.0]);
        assert_eq!(op.dim(), 3);
    }

    #[test]
    fn barycenter_layout() {
        let z = barycenters(2, 4);
        assert_eq!(z.as_slice(), &[0.25, 0.25, 0.25, 0.25, 0.5, 0.5]);
    }
}
