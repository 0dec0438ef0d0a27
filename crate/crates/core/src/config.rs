use crate::error::VIError;
use crate::ALPHA_BOUND;

/// Parameters of the extrapolated proximal methods.
#[derive(Clone, Debug, PartialEq)]
pub struct SolverConfig {
    /// Linesearch constant, strictly inside `(0, sqrt(2) - 1)`.
    pub alpha: f64,
    /// Shrink factor of the linesearch, in `(0, 1)`.
    pub sigma: f64,
    /// Upper stepsize bound; `+inf` disables it.
    pub lambda_max: f64,
    /// Only read by the composite-minimization method, in `[1, 2]`.
    pub theta: f64,
    /// Initial stepsize; `None` estimates it from a nearby probe point.
    pub lambda0: Option<f64>,
    /// Number of proximal steps (iterations) to perform.
    pub max_iter: usize,
    pub max_ls_iter: usize,
    /// Stop once the residual metric drops to `tol`; `0` runs the full budget.
    pub tol: f64,
    pub seed: u64,
    /// Evaluate the residual metric after every iteration.
    pub track_residual: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            alpha: 0.41,
            sigma: 0.7,
            lambda_max: f64::INFINITY,
            theta: 2.0,
            lambda0: None,
            max_iter: 1000,
            max_ls_iter: 60,
            tol: 0.0,
            seed: 0,
            track_residual: true,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<(), VIError> {
        let bad = |m: String| Err(VIError::InvalidConfig(m));
        if !(self.alpha > 0.0 && self.alpha < ALPHA_BOUND) {
            return bad(format!("alpha = {} must lie in (0, sqrt(2) - 1)", self.alpha));
        }
        if !(self.sigma > 0.0 && self.sigma < 1.0) {
            return bad(format!("sigma = {} must lie in (0, 1)", self.sigma));
        }
        if !(self.lambda_max > 0.0) {
            return bad(format!("lambda_max = {} must be positive", self.lambda_max));
        }
        if !(1.0..=2.0).contains(&self.theta) {
            return bad(format!("theta = {} must lie in [1, 2]", self.theta));
        }
        if let Some(l0) = self.lambda0 {
            if !(l0 > 0.0 && l0.is_finite()) {
                return bad(format!("lambda0 = {l0} must be positive and finite"));
            }
            if l0 > self.lambda_max {
                return bad(format!("lambda0 = {l0} exceeds lambda_max = {}", self.lambda_max));
            }
        }
        if self.max_ls_iter == 0 {
            return bad("max_ls_iter must be positive".into());
        }
        if !(self.tol >= 0.0) {
            return bad(format!("tol = {} must be nonnegative", self.tol));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        SolverConfig::default().validate().unwrap();
    }

    #[test]
    fn rejects_out_of_range() {
        let cfg = |f: fn(&mut SolverConfig)| {
            let mut c = SolverConfig::default();
            f(&mut c);
            c.validate()
        };
        assert!(cfg(|c| c.alpha = ALPHA_BOUND).is_err());
        assert!(cfg(|c| c.alpha = 0.0).is_err());
        assert!(cfg(|c| c.sigma = 1.0).is_err());
        assert!(cfg(|c| c.theta = 2.5).is_err());
        assert!(cfg(|c| c.theta = 0.9).is_err());
        assert!(cfg(|c| {
            c.lambda_max = 1.0;
            c.lambda0 = Some(2.0)
        })
        .is_err());
        assert!(cfg(|c| c.lambda0 = Some(0.0)).is_err());
        assert!(cfg(|c| c.tol = -1.0).is_err());
    }
}
