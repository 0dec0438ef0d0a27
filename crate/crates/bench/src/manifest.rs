//! Reproducibility records written next to the traces.

use serde::{Deserialize, Serialize};
use vi_core::{SolverConfig, Termination};
use vi_problems::ProblemDescriptor;
use vi_solvers::BacktrackConfig;

use crate::algs::{AlgConfig, AlgId};

pub const TOOL: &str = "vi-bench";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Serializable form of an [`AlgConfig`]. An unbounded `lambda_max` is
/// stored as `null`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum ConfigRecord {
    Extrapolated {
        alpha: f64,
        sigma: f64,
        theta: f64,
        lambda_max: Option<f64>,
        lambda0: Option<f64>,
        max_ls_iter: usize,
        tol: f64,
        seed: u64,
    },
    Backtracking {
        beta: f64,
        lambda_init: Option<f64>,
        delta: f64,
        theta_fbf: f64,
        max_trials: usize,
        tol: f64,
        seed: u64,
    },
    PrimalDual {
        tol: f64,
    },
}

impl From<&AlgConfig> for ConfigRecord {
    fn from(cfg: &AlgConfig) -> Self {
        match cfg {
            AlgConfig::Extrapolated(c) => ConfigRecord::Extrapolated {
                alpha: c.alpha,
                sigma: c.sigma,
                theta: c.theta,
                lambda_max: c.lambda_max.is_finite().then_some(c.lambda_max),
                lambda0: c.lambda0,
                max_ls_iter: c.max_ls_iter,
                tol: c.tol,
                seed: c.seed,
            },
            AlgConfig::Backtracking(c) => ConfigRecord::Backtracking {
                beta: c.beta,
                lambda_init: c.lambda_init,
                delta: c.delta,
                theta_fbf: c.theta_fbf,
                max_trials: c.max_trials,
                tol: c.tol,
                seed: c.seed,
            },
            AlgConfig::PrimalDual { tol, .. } => ConfigRecord::PrimalDual { tol: *tol },
        }
    }
}

impl ConfigRecord {
    /// Rebuilds the solver configuration; `max_iter` is set by the runner.
    pub fn to_config(&self) -> AlgConfig {
        match *self {
            ConfigRecord::Extrapolated {
                alpha,
                sigma,
                theta,
                lambda_max,
                lambda0,
                max_ls_iter,
                tol,
                seed,
            } => AlgConfig::Extrapolated(SolverConfig {
                alpha,
                sigma,
                theta,
                lambda_max: lambda_max.unwrap_or(f64::INFINITY),
                lambda0,
                max_ls_iter,
                tol,
                seed,
                ..SolverConfig::default()
            }),
            ConfigRecord::Backtracking {
                beta,
                lambda_init,
                delta,
                theta_fbf,
                max_trials,
                tol,
                seed,
            } => AlgConfig::Backtracking(BacktrackConfig {
                beta,
                lambda_init,
                delta,
                theta_fbf,
                max_trials,
                tol,
                seed,
                ..BacktrackConfig::default()
            }),
            ConfigRecord::PrimalDual { tol } => AlgConfig::PrimalDual {
                tol,
                track_residual: true,
            },
        }
    }
}

/// How a run ended, in a form fit for files.
pub fn termination_label(t: &Termination) -> String {
    match t {
        Termination::TolReached => "tol_reached".into(),
        Termination::MaxIter => "max_iter".into(),
        Termination::LinesearchFailed { iter, trials } => {
            format!("linesearch_failed(iter={iter},trials={trials})")
        }
    }
}

/// Everything needed to rerun one (problem, algorithm) pair bit-exactly.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub problem: ProblemDescriptor,
    pub alg: AlgId,
    pub config: ConfigRecord,
    pub max_iter: usize,
    /// `wall` or `off`.
    pub timing: String,
    pub metric: String,
    pub started_at_unix: u64,
    pub csv: String,
    pub termination: String,
    /// Solutions or reference runs a result was checked against.
    #[serde(default)]
    pub oracle_refs: Vec<String>,
}

impl RunManifest {
    /// The `# key=value` lines of the trace file.
    pub fn header(&self, wall_time_s: f64) -> Vec<(String, String)> {
        vec![
            ("tool".into(), self.tool.clone()),
            ("version".into(), self.version.clone()),
            ("problem".into(), self.problem.kind.name().into()),
            ("descriptor".into(), json(&self.problem)),
            ("alg".into(), self.alg.name().into()),
            ("label".into(), self.alg.label().into()),
            ("config".into(), json(&self.config)),
            ("max_iter".into(), self.max_iter.to_string()),
            ("metric".into(), self.metric.clone()),
            ("timing".into(), self.timing.clone()),
            ("termination".into(), self.termination.clone()),
            ("started_at_unix".into(), self.started_at_unix.to_string()),
            ("wall_time_s".into(), format!("{wall_time_s:.6}")),
        ]
    }
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("manifest values serialize")
}

/// The manifest of one `run` invocation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BundleManifest {
    pub tool: String,
    pub version: String,
    pub runs: Vec<RunManifest>,
}
