use crate::ergodic::ErgodicAverage;
use crate::vector::Vector;

/// Rolling state of the extrapolated methods at the start of iteration `n`.
#[derive(Clone, Debug)]
pub struct SolverState {
    /// `x_n`
    pub x: Vector,
    /// `x_{n-1}`
    pub x_prev: Vector,
    /// `y_{n-1}`
    pub y_prev: Vector,
    /// `F(y_{n-1})`
    pub op_y_prev: Vector,
    pub lambda_prev: f64,
    pub tau_prev: f64,
    /// `F(x_n)` and `F(x_{n-1})`, cached when `F` is affine.
    pub op_x: Option<Vector>,
    pub op_x_prev: Option<Vector>,
    pub ergodic: ErgodicAverage,
    /// Index `n` of the iteration about to run.
    pub iter: usize,
}

impl SolverState {
    pub fn new(
        x: Vector,
        x_prev: Vector,
        y_prev: Vector,
        op_y_prev: Vector,
        lambda_prev: f64,
        tau_prev: f64,
    ) -> Self {
        debug_assert!(lambda_prev > 0.0 && tau_prev > 0.0);
        SolverState {
            x,
            x_prev,
            y_prev,
            op_y_prev,
            lambda_prev,
            tau_prev,
            op_x: None,
            op_x_prev: None,
            ergodic: ErgodicAverage::new(),
            iter: 1,
        }
    }

    pub fn with_affine_cache(mut self, op_x: Vector, op_x_prev: Vector) -> Self {
        self.op_x = Some(op_x);
        self.op_x_prev = Some(op_x_prev);
        self
    }
}
