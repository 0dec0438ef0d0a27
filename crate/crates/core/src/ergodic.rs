//! Stepsize-weighted ergodic average of the extrapolated iterates.
//!
//! After `N` updates the accumulators hold
//!
//! ```text
//! weight = lambda_1 + tau_1 lambda_1 + lambda_2 + ... + lambda_N
//! sum    = (1 + tau_1) lambda_1 x_1 + lambda_2 y_2 + ... + lambda_N y_N
//! ```
//!
//! so `sum / weight` is a convex combination of `x_1, ..., x_N` and stays in
//! `dom g` whenever the iterates do.

use crate::error::{check_dim, VIError};
use crate::vector::{axpy, Vector};

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ErgodicAverage {
    sum: Vector,
    weight: f64,
    updates: usize,
}

impl ErgodicAverage {
    pub fn new() -> Self {
        Self::default()
    }

    /// Installs the base terms from the first iteration.
    pub fn start(&mut self, lambda1: f64, tau1: f64, x1: &[f64]) {
        debug_assert!(lambda1 > 0.0);
        self.weight = lambda1 + tau1 * lambda1;
        self.sum = x1.iter().map(|v| (1.0 + tau1) * lambda1 * v).collect();
        self.updates = 1;
    }

    /// Adds `lambda_n y_n` for `n >= 2`. On an empty accumulator this is
    /// `start` with `tau_1 = 0`.
    pub fn push(&mut self, lambda: f64, y: &[f64]) -> Result<(), VIError> {
        debug_assert!(lambda > 0.0);
        if self.updates == 0 {
            self.start(lambda, 0.0, y);
            return Ok(());
        }
        check_dim(self.sum.dim(), y.len())?;
        self.weight += lambda;
        axpy(lambda, y, &mut self.sum);
        self.updates += 1;
        Ok(())
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }

    pub fn updates(&self) -> usize {
        self.updates
    }

    /// `sum / weight`
    pub fn point(&self) -> Result<Vector, VIError> {
        if self.updates == 0 {
            return Err(VIError::EmptyErgodic);
        }
        Ok(self.sum.scaled(1.0 / self.weight))
    }
}
