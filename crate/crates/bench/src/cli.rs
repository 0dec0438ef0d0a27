//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 on runtime errors, 2 on bad flags, 3 when a
//! linesearch ran out of trials (the partial traces are still written).

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use vi_problems::{Dims, GameDist, ProblemDescriptor, ProblemKind};

use crate::algs::{parse_alg_list, AlgId, Overrides};
use crate::error::BenchError;
use crate::runner::{run_bundle, BundlePlan, Timing};

#[derive(Debug, Parser)]
#[command(name = "vi-bench", version, about = "Benchmarks for monotone VI solvers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run algorithms on one seeded problem instance.
    Run(RunArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DistArg {
    Uniform,
    Normal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TimingArg {
    /// Record per-iteration wall-clock times.
    Wall,
    /// Write zeros in the elapsed column so traces are reproducible byte for byte.
    Off,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// cons_min, geo, ac, lp, sun or matrix_game.
    #[arg(long)]
    pub problem: ProblemKind,
    /// Payoff distribution of the matrix game.
    #[arg(long, value_enum)]
    pub dist: Option<DistArg>,
    /// Comma-separated methods: alg1,alg2,alg3,pgm,fista,fbf1,fbf2,pd.
    /// Defaults to every method that applies to the problem.
    #[arg(long)]
    pub algs: Option<String>,
    /// Iteration budget; defaults to the recommended budget of the problem.
    #[arg(long)]
    pub iters: Option<usize>,
    /// Stop once the residual measure drops to this value.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "results")]
    pub out: PathBuf,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub sigma: Option<f64>,
    /// Relaxation parameter of the composite method.
    #[arg(long)]
    pub theta: Option<f64>,
    /// Backtracking factor of the baselines.
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long)]
    pub lambda_max: Option<f64>,
    #[arg(long)]
    pub dim: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub l: Option<usize>,
    /// Exponent of the lp objective.
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long, value_enum, default_value = "off")]
    pub timing: TimingArg,
}

impl RunArgs {
    pub fn plan(&self) -> Result<BundlePlan, BenchError> {
        let algs = match &self.algs {
            Some(list) => parse_alg_list(list)?,
            None => AlgId::ALL
                .into_iter()
                .filter(|a| a.supports(self.problem))
                .collect(),
        };
        let mut descriptor = ProblemDescriptor::standard(self.problem, self.seed).with_dims(Dims {
            d: self.dim,
            m: self.m,
            k: self.k,
            l: self.l,
            p: self.p,
        });
        if let Some(dist) = self.dist {
            descriptor = descriptor.with_dist(match dist {
                DistArg::Uniform => GameDist::Uniform,
                DistArg::Normal => GameDist::Normal,
            });
        }
        Ok(BundlePlan {
            descriptor,
            algs,
            max_iter: self.iters,
            overrides: Overrides {
                alpha: self.alpha,
                sigma: self.sigma,
                theta: self.theta,
                beta: self.beta,
                lambda_max: self.lambda_max,
                tol: self.tol,
                seed: Some(self.seed),
            },
            timing: match self.timing {
                TimingArg::Wall => Timing::Wall,
                TimingArg::Off => Timing::Off,
            },
            out_dir: self.out.clone(),
        })
    }
}

/// Parses `args` (program name first), runs, and returns the exit code.
/// The summary table goes to `out`, diagnostics to `err`.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    let Command::Run(args) = cli.command;
    let result = args.plan().and_then(|plan| run_bundle(&plan));
    match result {
        Ok(bundle) => {
            let _ = write!(out, "{}", bundle.summary);
            if bundle.linesearch_failed() {
                for r in &bundle.runs {
                    if r.report.succeeded() {
                        continue;
                    }
                    let _ = writeln!(err, "{}: {}", r.alg.name(), r.manifest.termination);
                }
                3
            } else {
                0
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
