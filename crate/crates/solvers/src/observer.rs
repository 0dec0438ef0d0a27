//! Read-only hooks into a running solver.

/// One proximal step of an extrapolated method:
/// `x_{n+1} = prox_{lambda g}(x_n - lambda F(y_n))`.
#[derive(Clone, Copy, Debug)]
pub struct StepView<'a> {
    /// Number of proximal steps taken so far, this one included.
    pub iter: usize,
    /// The initialization step `x_1 = prox(x_0 - lambda_0 F(x_0))`, which
    /// runs no linesearch.
    pub is_init: bool,
    pub x_prev: &'a [f64],
    pub x: &'a [f64],
    pub x_next: &'a [f64],
    pub y_prev: &'a [f64],
    pub y: &'a [f64],
    pub op_y_prev: &'a [f64],
    pub op_y: &'a [f64],
    pub lambda_prev: f64,
    pub lambda: f64,
    pub tau_prev: f64,
    pub tau: f64,
    pub trials: usize,
}

pub trait StepObserver {
    fn on_step(&mut self, step: &StepView<'_>);
}

impl<F: FnMut(&StepView<'_>)> StepObserver for F {
    fn on_step(&mut self, step: &StepView<'_>) {
        self(step)
    }
}

/// Observer that ignores every step.
pub struct Silent;

impl StepObserver for Silent {
    fn on_step(&mut self, _: &StepView<'_>) {}
}

/// An accepted backtracking step of the proximal gradient baselines, taken
/// from `x` (the extrapolated point for FISTA).
#[derive(Clone, Copy, Debug)]
pub struct DescentStep<'a> {
    pub iter: usize,
    pub x: &'a [f64],
    pub grad_x: &'a [f64],
    pub f_x: f64,
    pub z: &'a [f64],
    pub f_z: f64,
    pub lambda: f64,
    pub trials: usize,
}

/// An accepted forward-backward-forward step.
#[derive(Clone, Copy, Debug)]
pub struct FbfStep<'a> {
    pub iter: usize,
    pub x: &'a [f64],
    pub op_x: &'a [f64],
    pub z: &'a [f64],
    pub op_z: &'a [f64],
    pub x_next: &'a [f64],
    pub lambda: f64,
    pub trials: usize,
}
