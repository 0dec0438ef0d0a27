//! Operators `F` and smooth objectives `f`.
//!
//! Evaluators are pure: they never count their own calls. Solvers own a
//! [`Counters`](crate::Counters) and record every evaluation they request.

use std::sync::Arc;

use crate::matrix::DenseMatrix;
use crate::vector::Vector;

/// A monotone operator `F : R^d -> R^d`.
pub trait MonotoneMap: Send + Sync {
    fn dim(&self) -> usize;

    /// Writes `F(x)` into `out`. Points outside the natural domain of the
    /// operator produce non-finite entries rather than panicking.
    fn apply(&self, x: &[f64], out: &mut [f64]);

    /// `F(x + t(x - x')) = (1 + t) F(x) - t F(x')` holds for every `t`.
    fn is_affine(&self) -> bool {
        false
    }

    /// Matrix-vector products performed by one evaluation.
    fn mults_per_eval(&self) -> u64 {
        0
    }

    fn eval(&self, x: &[f64]) -> Vector {
        let mut out = Vector::zeros(self.dim());
        self.apply(x, &mut out);
        out
    }
}

/// A convex differentiable `f` whose gradient is the operator.
pub trait SmoothObjective: MonotoneMap {
    fn value(&self, x: &[f64]) -> f64;
}

type ApplyFn = dyn Fn(&[f64], &mut [f64]) + Send + Sync;
type ValueFn = dyn Fn(&[f64]) -> f64 + Send + Sync;

/// Operator defined by a closure.
#[derive(Clone)]
pub struct ClosureMap {
    dim: usize,
    affine: bool,
    apply: Arc<ApplyFn>,
}

impl ClosureMap {
    pub fn new(dim: usize, apply: impl Fn(&[f64], &mut [f64]) + Send + Sync + 'static) -> Self {
        ClosureMap {
            dim,
            affine: false,
            apply: Arc::new(apply),
        }
    }

    /// Marks the map as affine, enabling the extrapolation shortcut.
    pub fn affine(mut self) -> Self {
        self.affine = true;
        self
    }
}

impl MonotoneMap for ClosureMap {
    fn dim(&self) -> usize {
        self.dim
    }

    fn apply(&self, x: &[f64], out: &mut [f64]) {
        (self.apply)(x, out)
    }

    fn is_affine(&self) -> bool {
        self.affine
    }
}

/// Smooth objective defined by a value closure and a gradient closure.
#[derive(Clone)]
pub struct ClosureObjective {
    grad: ClosureMap,
    value: Arc<ValueFn>,
}

impl ClosureObjective {
    pub fn new(
        dim: usize,
        value: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
        grad: impl Fn(&[f64], &mut [f64]) + Send + Sync + 'static,
    ) -> Self {
        ClosureObjective {
            grad: ClosureMap::new(dim, grad),
            value: Arc::new(value),
        }
    }
}

impl MonotoneMap for ClosureObjective {
    fn dim(&self) -> usize {
        self.grad.dim
    }

    fn apply(&self, x: &[f64], out: &mut [f64]) {
        self.grad.apply(x, out)
    }
}

impl SmoothObjective for ClosureObjective {
    fn value(&self, x: &[f64]) -> f64 {
        (self.value)(x)
    }
}

/// `F(x) = A x + b` with a square dense `A`.
#[derive(Clone, Debug)]
pub struct AffineMap {
    a: DenseMatrix,
    b: Vector,
}

impl AffineMap {
    pub fn new(a: DenseMatrix, b: Vector) -> Self {
        assert_eq!(a.rows(), a.cols(), "affine map needs a square matrix");
        assert_eq!(a.rows(), b.dim());
        AffineMap { a, b }
    }
}

impl MonotoneMap for AffineMap {
    fn dim(&self) -> usize {
        self.b.dim()
    }

    fn apply(&self, x: &[f64], out: &mut [f64]) {
        self.a.mul_vec_into(x, out);
        for (o, bi) in out.iter_mut().zip(self.b.iter()) {
            *o += bi;
        }
    }

    fn is_affine(&self) -> bool {
        true
    }

    fn mults_per_eval(&self) -> u64 {
        1
    }
}
