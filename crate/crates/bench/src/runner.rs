//! Runs one algorithm on one instance, and whole benchmark bundles.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use vi_core::{SolveReport, Termination};
use vi_problems::{build, ProblemDescriptor, ProblemInstance};
use vi_solvers::{
    cp_pd_solve, fbf_solve_observed, fista_solve_observed, pgm_solve_observed, solve_observed,
    DescentStep, FbfStep, Method, PDConfig, StepView,
};

use crate::algs::{default_config, AlgConfig, AlgId, Overrides};
use crate::error::BenchError;
use crate::manifest::{termination_label, BundleManifest, ConfigRecord, RunManifest, TOOL, VERSION};
use crate::summary::{render, Layout, SummaryRow};
use crate::trace_csv::write_trace;

/// Optional read-only hooks; each fires only for the methods it fits.
#[derive(Default)]
pub struct Hooks<'a> {
    pub step: Option<&'a mut dyn FnMut(&StepView<'_>)>,
    pub descent: Option<&'a mut dyn FnMut(&DescentStep<'_>)>,
    pub fbf: Option<&'a mut dyn FnMut(&FbfStep<'_>)>,
}

/// Runs `alg` from the instance's start for at most `max_iter` iterations.
///
/// A failed linesearch is not an error: the report carries
/// [`Termination::LinesearchFailed`] and the trace up to the failure.
pub fn run_alg(
    inst: &ProblemInstance,
    alg: AlgId,
    cfg: &AlgConfig,
    max_iter: usize,
    hooks: &mut Hooks<'_>,
) -> Result<SolveReport, BenchError> {
    let kind = inst.descriptor.kind;
    if !alg.supports(kind) {
        return Err(BenchError::InvalidArgs(format!(
            "{} does not apply to {}",
            alg.name(),
            kind.name()
        )));
    }
    cfg.validate()?;
    let x0 = inst.x0.as_slice();
    let report = match (alg, cfg) {
        (AlgId::Alg1 | AlgId::Alg2 | AlgId::Alg3, AlgConfig::Extrapolated(c)) => {
            let method = match alg {
                AlgId::Alg1 => Method::Alg1,
                AlgId::Alg2 => Method::Alg2,
                _ => Method::Alg3,
            };
            let c = vi_core::SolverConfig { max_iter, ..c.clone() };
            match hooks.step.as_deref_mut() {
                Some(f) => solve_observed(method, &inst.vi(), &c, x0, &mut |s: &StepView<'_>| f(s))?,
                None => solve_observed(method, &inst.vi(), &c, x0, &mut vi_solvers::Silent)?,
            }
        }
        (AlgId::Pgm | AlgId::Fista, AlgConfig::Backtracking(c)) => {
            let problem = inst.composite().expect("checked by supports()");
            let mut noop = |_: &DescentStep<'_>| {};
            let obs = match hooks.descent.as_deref_mut() {
                Some(f) => f,
                None => &mut noop,
            };
            if alg == AlgId::Pgm {
                pgm_solve_observed(problem, c, x0, max_iter, obs)?
            } else {
                fista_solve_observed(problem, c, x0, max_iter, obs)?
            }
        }
        (AlgId::Fbf1 | AlgId::Fbf2, AlgConfig::Backtracking(c)) => {
            let mut noop = |_: &FbfStep<'_>| {};
            let obs = match hooks.fbf.as_deref_mut() {
                Some(f) => f,
                None => &mut noop,
            };
            fbf_solve_observed(&inst.vi(), c, x0, max_iter, obs)?
        }
        (AlgId::Pd, AlgConfig::PrimalDual { tol, track_residual }) => {
            let a = inst.game_matrix().expect("checked by supports()");
            let pd = PDConfig {
                tol: *tol,
                track_residual: *track_residual,
                ..PDConfig::for_matrix(a)?
            };
            let (x, y) = x0.split_at(a.cols());
            cp_pd_solve(a, x, y, &pd, max_iter)?
        }
        _ => {
            return Err(BenchError::InvalidArgs(format!(
                "configuration family does not match {}",
                alg.name()
            )))
        }
    };
    Ok(report)
}

/// Whether per-iteration wall-clock times are recorded. With `Off` the
/// `elapsed_s` column is zero, so reruns produce byte-identical traces.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Timing {
    Wall,
    #[default]
    Off,
}

impl Timing {
    pub fn name(self) -> &'static str {
        match self {
            Timing::Wall => "wall",
            Timing::Off => "off",
        }
    }
}

/// A set of runs on one instance, all written into `out_dir`.
#[derive(Clone, Debug)]
pub struct BundlePlan {
    pub descriptor: ProblemDescriptor,
    pub algs: Vec<AlgId>,
    /// `None` uses the recommended budget of the problem kind.
    pub max_iter: Option<usize>,
    pub overrides: Overrides,
    pub timing: Timing,
    pub out_dir: PathBuf,
}

pub struct RunResult {
    pub alg: AlgId,
    pub report: SolveReport,
    pub manifest: RunManifest,
}

pub struct BundleResult {
    pub runs: Vec<RunResult>,
    pub summary: String,
    pub manifest: BundleManifest,
}

impl BundleResult {
    pub fn linesearch_failed(&self) -> bool {
        self.runs
            .iter()
            .any(|r| matches!(r.report.termination, Termination::LinesearchFailed { .. }))
    }
}

pub fn trace_file_name(plan: &BundlePlan, alg: AlgId) -> String {
    format!("{}_{}.csv", plan.descriptor.kind.name(), alg.name())
}

/// Builds the instance, checks every requested method before running any,
/// then runs them in order, writing one trace per method plus
/// `summary.txt` and `manifest.json`.
pub fn run_bundle(plan: &BundlePlan) -> Result<BundleResult, BenchError> {
    let kind = plan.descriptor.kind;
    if plan.descriptor.dist.is_some() && kind != vi_problems::ProblemKind::MatrixGame {
        return Err(BenchError::InvalidArgs(format!(
            "--dist applies only to matrix_game, not {}",
            kind.name()
        )));
    }
    let mut configs = Vec::with_capacity(plan.algs.len());
    for &alg in &plan.algs {
        if !alg.supports(kind) {
            return Err(BenchError::InvalidArgs(format!(
                "{} does not apply to {}",
                alg.name(),
                kind.name()
            )));
        }
        let mut cfg = default_config(alg);
        plan.overrides.apply(&mut cfg);
        cfg.validate()?;
        configs.push(cfg);
    }
    let inst = build(&plan.descriptor)?;
    let max_iter = plan.max_iter.unwrap_or(inst.recommended_iters);
    let metric = inst.vi().metric.label().to_string();
    fs::create_dir_all(&plan.out_dir).map_err(|e| BenchError::io(&plan.out_dir, e))?;

    let mut runs = Vec::with_capacity(plan.algs.len());
    let mut rows = Vec::with_capacity(plan.algs.len());
    for (&alg, cfg) in plan.algs.iter().zip(&configs) {
        let started_at_unix = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map_or(0, |d| d.as_secs());
        let mut report = run_alg(&inst, alg, cfg, max_iter, &mut Hooks::default())?;
        if plan.timing == Timing::Off {
            for r in &mut report.trace {
                r.elapsed_s = 0.0;
            }
        }
        let csv_name = trace_file_name(plan, alg);
        let manifest = RunManifest {
            tool: TOOL.into(),
            version: VERSION.into(),
            problem: plan.descriptor.clone(),
            alg,
            config: ConfigRecord::from(cfg),
            max_iter,
            timing: plan.timing.name().into(),
            metric: metric.clone(),
            started_at_unix,
            csv: csv_name.clone(),
            termination: termination_label(&report.termination),
            oracle_refs: Vec::new(),
        };
        let path = plan.out_dir.join(&csv_name);
        write_file(&path, |w| {
            write_trace(w, &manifest.header(report.counters.wall_time_s), &report.trace)
        })?;
        rows.push(SummaryRow::from_report(alg.label(), &report));
        runs.push(RunResult {
            alg,
            report,
            manifest,
        });
    }

    let summary = render(Layout::for_kind(kind), &metric, &rows);
    let summary_path = plan.out_dir.join("summary.txt");
    fs::write(&summary_path, &summary).map_err(|e| BenchError::io(&summary_path, e))?;
    let manifest = BundleManifest {
        tool: TOOL.into(),
        version: VERSION.into(),
        runs: runs.iter().map(|r| r.manifest.clone()).collect(),
    };
    write_file(&plan.out_dir.join("manifest.json"), |w| {
        serde_json::to_writer_pretty(w, &manifest)?;
        Ok(())
    })?;
    Ok(BundleResult {
        runs,
        summary,
        manifest,
    })
}

fn write_file(
    path: &Path,
    body: impl FnOnce(&mut BufWriter<File>) -> Result<(), BenchError>,
) -> Result<(), BenchError> {
    let file = File::create(path).map_err(|e| BenchError::io(path, e))?;
    let mut w = BufWriter::new(file);
    body(&mut w)?;
    w.flush().map_err(|e| BenchError::io(path, e))
}
