//! Baseline methods: backtracking proximal gradient (PGM), FISTA with the
//! same backtracking, Tseng's forward-backward-forward method (FBF) and the
//! Chambolle–Pock primal-dual method for bilinear matrix games.
//!
//! Trace rows of the baselines reuse the `tau` column for the extrapolation
//! factor each method applies: `0` for PGM and FBF, the momentum
//! coefficient for FISTA and the over-relaxation `1` for the primal-dual
//! method.

mod fbf;
mod pd;
mod pgm;

pub use fbf::{fbf_solve, fbf_solve_observed};
pub use pd::{cp_pd_solve, spectral_norm, PDConfig};
pub use pgm::{fista_solve, fista_solve_observed, pgm_solve, pgm_solve_observed};

use vi_core::VIError;

/// Parameters of the backtracking baselines.
#[derive(Clone, Debug, PartialEq)]
pub struct BacktrackConfig {
    /// Shrink factor, in `(0, 1)`.
    pub beta: f64,
    /// Starting stepsize. `None` means `1` for PGM and FISTA, and the
    /// probe-point estimate of the extrapolated methods for FBF.
    pub lambda_init: Option<f64>,
    /// FBF growth factor applied to the previous stepsize, `>= 1`.
    pub delta: f64,
    /// FBF acceptance constant, in `(0, 1)`.
    pub theta_fbf: f64,
    /// Trials per iteration before giving up.
    pub max_trials: usize,
    /// Stop once the residual metric drops to `tol`; `0` runs the full budget.
    pub tol: f64,
    /// Seed of the FBF initial-stepsize probe.
    pub seed: u64,
    pub track_residual: bool,
}

impl Default for BacktrackConfig {
    fn default() -> Self {
        BacktrackConfig {
            beta: 0.7,
            lambda_init: None,
            delta: 1.0,
            theta_fbf: 0.9,
            max_trials: 500,
            tol: 0.0,
            seed: 0,
            track_residual: true,
        }
    }
}

/// Growth of the FBF stepsize is capped at this multiple of the initial one.
pub const FBF_GROWTH_CAP: f64 = 1e6;

/// Linesearch constant used by the FBF initial-stepsize probe.
pub const FBF_PROBE_ALPHA: f64 = 0.41;

impl BacktrackConfig {
    pub fn validate(&self) -> Result<(), VIError> {
        let bad = |m: String| Err(VIError::InvalidConfig(m));
        if !(self.beta > 0.0 && self.beta < 1.0) {
            return bad(format!("beta = {} must lie in (0, 1)", self.beta));
        }
        if let Some(l) = self.lambda_init {
            if !(l > 0.0 && l.is_finite()) {
                return bad(format!("lambda_init = {l} must be positive"));
            }
        }
        if !(self.delta >= 1.0 && self.delta.is_finite()) {
            return bad(format!("delta = {} must be at least 1", self.delta));
        }
        if !(self.theta_fbf > 0.0 && self.theta_fbf < 1.0) {
            return bad(format!("theta = {} must lie in (0, 1)", self.theta_fbf));
        }
        if self.max_trials == 0 {
            return bad("max_trials must be positive".into());
        }
        if !(self.tol >= 0.0) {
            return bad(format!("tol = {} must be nonnegative", self.tol));
        }
        Ok(())
    }
}

fn metric_or_nan(track: bool, tol: f64, eval: impl FnOnce() -> f64) -> f64 {
    if track || tol > 0.0 {
        eval()
    } else {
        f64::NAN
    }
}
