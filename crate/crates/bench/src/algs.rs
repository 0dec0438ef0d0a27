//! Algorithm registry and the parameter values of the benchmark study.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use vi_core::SolverConfig;
use vi_problems::ProblemKind;
use vi_solvers::BacktrackConfig;

use crate::error::BenchError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlgId {
    Alg1,
    Alg2,
    Alg3,
    Pgm,
    Fista,
    /// Forward-backward-forward without stepsize growth (`delta = 1`).
    Fbf1,
    /// Forward-backward-forward with `delta = 2`.
    Fbf2,
    Pd,
}

impl AlgId {
    pub const ALL: [AlgId; 8] = [
        AlgId::Alg1,
        AlgId::Alg2,
        AlgId::Alg3,
        AlgId::Pgm,
        AlgId::Fista,
        AlgId::Fbf1,
        AlgId::Fbf2,
        AlgId::Pd,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AlgId::Alg1 => "alg1",
            AlgId::Alg2 => "alg2",
            AlgId::Alg3 => "alg3",
            AlgId::Pgm => "pgm",
            AlgId::Fista => "fista",
            AlgId::Fbf1 => "fbf1",
            AlgId::Fbf2 => "fbf2",
            AlgId::Pd => "pd",
        }
    }

    /// Row label in summary tables.
    pub fn label(self) -> &'static str {
        match self {
            AlgId::Alg1 => "Alg. 1",
            AlgId::Alg2 => "Alg. 2",
            AlgId::Alg3 => "Alg. 3",
            AlgId::Pgm => "PGM",
            AlgId::Fista => "FISTA",
            AlgId::Fbf1 => "FBF-1",
            AlgId::Fbf2 => "FBF-2",
            AlgId::Pd => "PD",
        }
    }

    /// Whether the method can run on `kind`: the minimization methods need
    /// an objective and the primal-dual method a matrix game.
    pub fn supports(self, kind: ProblemKind) -> bool {
        match self {
            AlgId::Alg3 | AlgId::Pgm | AlgId::Fista => kind.is_composite(),
            AlgId::Pd => kind == ProblemKind::MatrixGame,
            AlgId::Alg1 | AlgId::Alg2 | AlgId::Fbf1 | AlgId::Fbf2 => true,
        }
    }

    pub fn is_extrapolated(self) -> bool {
        matches!(self, AlgId::Alg1 | AlgId::Alg2 | AlgId::Alg3)
    }
}

impl fmt::Display for AlgId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AlgId {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AlgId::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| BenchError::InvalidArgs(format!("unknown algorithm '{s}'")))
    }
}

/// Parses a comma-separated algorithm list, rejecting duplicates.
pub fn parse_alg_list(s: &str) -> Result<Vec<AlgId>, BenchError> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let id: AlgId = part.parse()?;
        if out.contains(&id) {
            return Err(BenchError::InvalidArgs(format!("algorithm '{id}' listed twice")));
        }
        out.push(id);
    }
    if out.is_empty() {
        return Err(BenchError::InvalidArgs("no algorithm given".into()));
    }
    Ok(out)
}

/// Configuration of one method family.
#[derive(Clone, Debug, PartialEq)]
pub enum AlgConfig {
    Extrapolated(SolverConfig),
    Backtracking(BacktrackConfig),
    /// Stepsizes come from the payoff matrix at run time.
    PrimalDual { tol: f64, track_residual: bool },
}

/// The parameter values used throughout the benchmark study, with
/// `lambda_max = inf`.
pub fn default_config(alg: AlgId) -> AlgConfig {
    match alg {
        AlgId::Alg1 | AlgId::Alg2 | AlgId::Alg3 => AlgConfig::Extrapolated(SolverConfig {
            alpha: 0.41,
            sigma: 0.7,
            theta: 2.0,
            lambda_max: f64::INFINITY,
            ..SolverConfig::default()
        }),
        AlgId::Pgm | AlgId::Fista => AlgConfig::Backtracking(BacktrackConfig {
            beta: 0.7,
            lambda_init: Some(1.0),
            ..BacktrackConfig::default()
        }),
        AlgId::Fbf1 | AlgId::Fbf2 => AlgConfig::Backtracking(BacktrackConfig {
            beta: 0.7,
            theta_fbf: 0.9,
            delta: if alg == AlgId::Fbf1 { 1.0 } else { 2.0 },
            ..BacktrackConfig::default()
        }),
        AlgId::Pd => AlgConfig::PrimalDual {
            tol: 0.0,
            track_residual: true,
        },
    }
}

/// Command-line overrides of the default parameters. Each applies only to
/// the methods that have the parameter.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Overrides {
    pub alpha: Option<f64>,
    pub sigma: Option<f64>,
    pub theta: Option<f64>,
    pub beta: Option<f64>,
    pub lambda_max: Option<f64>,
    pub tol: Option<f64>,
    pub seed: Option<u64>,
}

impl Overrides {
    pub fn apply(&self, cfg: &mut AlgConfig) {
        match cfg {
            AlgConfig::Extrapolated(c) => {
                if let Some(v) = self.alpha {
                    c.alpha = v;
                }
                if let Some(v) = self.sigma {
                    c.sigma = v;
                }
                if let Some(v) = self.theta {
                    c.theta = v;
                }
                if let Some(v) = self.lambda_max {
                    c.lambda_max = v;
                }
                if let Some(v) = self.tol {
                    c.tol = v;
                }
                if let Some(v) = self.seed {
                    c.seed = v;
                }
            }
            AlgConfig::Backtracking(c) => {
                if let Some(v) = self.beta {
                    c.beta = v;
                }
                if let Some(v) = self.tol {
                    c.tol = v;
                }
                if let Some(v) = self.seed {
                    c.seed = v;
                }
            }
            AlgConfig::PrimalDual { tol, .. } => {
                if let Some(v) = self.tol {
                    *tol = v;
                }
            }
        }
    }
}

impl AlgConfig {
    pub fn validate(&self) -> Result<(), BenchError> {
        match self {
            AlgConfig::Extrapolated(c) => c.validate()?,
            AlgConfig::Backtracking(c) => c.validate()?,
            AlgConfig::PrimalDual { tol, .. } => {
                if !(*tol >= 0.0) {
                    return Err(BenchError::InvalidArgs(format!("tol = {tol} must be nonnegative")));
                }
            }
        }
        Ok(())
    }

    pub fn set_track_residual(&mut self, track: bool) {
        match self {
            AlgConfig::Extrapolated(c) => c.track_residual = track,
            AlgConfig::Backtracking(c) => c.track_residual = track,
            AlgConfig::PrimalDual { track_residual, .. } => *track_residual = track,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn study_parameters() {
        let AlgConfig::Extrapolated(c) = default_config(AlgId::Alg2) else {
            panic!()
        };
        assert_eq!((c.alpha, c.sigma), (0.41, 0.7));
        assert_eq!(c.lambda_max, f64::INFINITY);
        let AlgConfig::Extrapolated(c) = default_config(AlgId::Alg3) else {
            panic!()
        };
        assert_eq!((c.alpha, c.theta, c.sigma), (0.41, 2.0, 0.7));
        let AlgConfig::Backtracking(c) = default_config(AlgId::Pgm) else {
            panic!()
        };
        assert_eq!((c.beta, c.lambda_init), (0.7, Some(1.0)));
        for (id, delta) in [(AlgId::Fbf1, 1.0), (AlgId::Fbf2, 2.0)] {
            let AlgConfig::Backtracking(c) = default_config(id) else {
                panic!()
            };
            assert_eq!((c.beta, c.theta_fbf, c.delta), (0.7, 0.9, delta));
        }
    }

    #[test]
    fn names_and_lists() {
        for a in AlgId::ALL {
            assert_eq!(a.name().parse::<AlgId>().unwrap(), a);
        }
        assert_eq!(
            parse_alg_list("alg1, alg2,fbf2").unwrap(),
            vec![AlgId::Alg1, AlgId::Alg2, AlgId::Fbf2]
        );
        assert!(parse_alg_list("alg1,alg1").is_err());
        assert!(parse_alg_list("alg4").is_err());
        assert!(parse_alg_list("").is_err());
    }

    #[test]
    fn applicability() {
        assert!(!AlgId::Alg3.supports(ProblemKind::Sun));
        assert!(!AlgId::Pd.supports(ProblemKind::Geo));
        assert!(AlgId::Pd.supports(ProblemKind::MatrixGame));
        assert!(AlgId::Alg1.supports(ProblemKind::Geo));
        assert!(AlgId::Pgm.supports(ProblemKind::Lp));
    }

    #[test]
    fn overrides_touch_only_matching_parameters() {
        let o = Overrides {
            alpha: Some(0.3),
            beta: Some(0.5),
            tol: Some(1e-6),
            ..Overrides::default()
        };
        let mut a = default_config(AlgId::Alg1);
        o.apply(&mut a);
        let AlgConfig::Extrapolated(c) = a else { panic!() };
        assert_eq!((c.alpha, c.sigma, c.tol), (0.3, 0.7, 1e-6));
        let mut b = default_config(AlgId::Fista);
        o.apply(&mut b);
        let AlgConfig::Backtracking(c) = b else { panic!() };
        assert_eq!((c.beta, c.tol), (0.5, 1e-6));
    }
}
