//! Benchmark harness: builds seeded problem instances, runs the solvers,
//! and writes per-iteration CSV traces, summary tables and manifests.
//!
//! A trace file starts with `# key=value` lines describing the run,
//! followed by the columns
//! `iter,residual,lambda,tau,ls_inner,n_F,n_f,n_prox,n_mult,elapsed_s`.
//! [`read_trace`] accepts exactly what [`write_trace`] produces.

pub mod algs;
pub mod cli;
pub mod error;
pub mod manifest;
pub mod runner;
pub mod summary;
pub mod trace_csv;

pub use algs::{default_config, parse_alg_list, AlgConfig, AlgId, Overrides};
pub use cli::run_cli;
pub use error::BenchError;
pub use manifest::{BundleManifest, ConfigRecord, RunManifest};
pub use runner::{run_alg, run_bundle, BundlePlan, BundleResult, Hooks, RunResult, Timing};
pub use summary::{render, Layout, SummaryRow};
pub use trace_csv::{read_trace, write_trace, TraceFile, COLUMNS};
