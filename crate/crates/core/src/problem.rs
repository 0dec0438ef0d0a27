//! Problem containers: a general VI and a composite minimization.

use std::fmt;
use std::sync::Arc;

use crate::error::VIError;
use crate::operator::{MonotoneMap, SmoothObjective};
use crate::prox::ProxFriendly;
use crate::vector::{dist, forward_step_into, Vector};

type MetricFn = dyn Fn(&[f64]) -> f64 + Send + Sync;

/// Convergence measure reported per iteration.
///
/// Evaluating it never touches the benchmark counters.
#[derive(Clone, Default)]
pub enum ResidualMetric {
    /// `||x - prox_g(x - F(x))||`
    #[default]
    Natural,
    /// A problem-specific measure such as the primal-dual gap of a game.
    Custom { label: String, eval: Arc<MetricFn> },
}

impl ResidualMetric {
    pub fn custom(label: &str, eval: impl Fn(&[f64]) -> f64 + Send + Sync + 'static) -> Self {
        ResidualMetric::Custom {
            label: label.to_string(),
            eval: Arc::new(eval),
        }
    }

    pub fn label(&self) -> &str {
        match self {
            ResidualMetric::Natural => "residual",
            ResidualMetric::Custom { label, .. } => label,
        }
    }
}

impl fmt::Debug for ResidualMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// find x* : <F(x*), x - x*> + g(x) - g(x*) >= 0 for all x.
#[derive(Clone)]
pub struct VIProblem {
    pub op: Arc<dyn MonotoneMap>,
    pub g: Arc<dyn ProxFriendly>,
    pub metric: ResidualMetric,
}

impl VIProblem {
    pub fn new(op: Arc<dyn MonotoneMap>, g: Arc<dyn ProxFriendly>) -> Result<Self, VIError> {
        if let Some(gd) = g.dim() {
            crate::error::check_dim(op.dim(), gd)?;
        }
        Ok(VIProblem {
            op,
            g,
            metric: ResidualMetric::Natural,
        })
    }

    pub fn with_metric(mut self, metric: ResidualMetric) -> Self {
        self.metric = metric;
        self
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    /// The configured convergence measure at `x`.
    pub fn residual(&self, x: &[f64]) -> f64 {
        match &self.metric {
            ResidualMetric::Natural => natural_residual_raw(self.op.as_ref(), self.g.as_ref(), x, 1.0),
            ResidualMetric::Custom { eval, .. } => eval(x),
        }
    }
}

pub(crate) fn natural_residual_raw(
    op: &dyn MonotoneMap,
    g: &dyn ProxFriendly,
    x: &[f64],
    lam: f64,
) -> f64 {
    let fx = op.eval(x);
    let mut step = Vector::zeros(x.len());
    forward_step_into(x, lam, &fx, &mut step);
    let p = g.prox_vec(lam, &step);
    dist(x, &p)
}

/// min f(x) + g(x) with `f` convex and differentiable.
#[derive(Clone)]
pub struct CompositeProblem {
    pub f: Arc<dyn SmoothObjective>,
    pub g: Arc<dyn ProxFriendly>,
    pub metric: ResidualMetric,
}

impl CompositeProblem {
    pub fn new(f: Arc<dyn SmoothObjective>, g: Arc<dyn ProxFriendly>) -> Result<Self, VIError> {
        if let Some(gd) = g.dim() {
            crate::error::check_dim(f.dim(), gd)?;
        }
        Ok(CompositeProblem {
            f,
            g,
            metric: ResidualMetric::Natural,
        })
    }

    pub fn with_metric(mut self, metric: ResidualMetric) -> Self {
        self.metric = metric;
        self
    }

    pub fn dim(&self) -> usize {
        self.f.dim()
    }

    /// `f(x) + g(x)`
    pub fn objective(&self, x: &[f64]) -> f64 {
        self.f.value(x) + self.g.value(x)
    }

    /// The first-order optimality conditions as a VI with `F = grad f`.
    pub fn as_vi(&self) -> VIProblem {
        let op: Arc<dyn MonotoneMap> = self.f.clone();
        VIProblem {
            op,
            g: self.g.clone(),
            metric: self.metric.clone(),
        }
    }

    pub fn residual(&self, x: &[f64]) -> f64 {
        match &self.metric {
            ResidualMetric::Natural => {
                natural_residual_raw(self.f.as_ref(), self.g.as_ref(), x, 1.0)
            }
            ResidualMetric::Custom { eval, .. } => eval(x),
        }
    }
}
