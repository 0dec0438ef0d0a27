//! Per-iteration trace files.
//!
//! ```text
//! # key=value            manifest lines, one per key
//! iter,residual,lambda,tau,ls_inner,n_F,n_f,n_prox,n_mult,elapsed_s
//! 1,3.1415926535897931e0,...
//! ```
//!
//! Reals are written with 17 significant digits, so parsing a file gives
//! back the exact values that were written.

use std::io::{Read, Write};

use serde::Deserialize;
use vi_core::IterationTrace;

use crate::error::BenchError;

pub const COLUMNS: [&str; 10] = [
    "iter", "residual", "lambda", "tau", "ls_inner", "n_F", "n_f", "n_prox", "n_mult", "elapsed_s",
];

/// A parsed trace file.
#[derive(Clone, Debug, Default)]
pub struct TraceFile {
    pub header: Vec<(String, String)>,
    pub rows: Vec<IterationTrace>,
}

impl TraceFile {
    pub fn get(&self, key: &str) -> Option<&str> {
        self.header
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

fn real(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_trace<W: Write>(
    out: W,
    header: &[(String, String)],
    rows: &[IterationTrace],
) -> Result<(), BenchError> {
    let mut out = out;
    for (k, v) in header {
        if k.contains('=') || k.contains('\n') || v.contains('\n') {
            return Err(BenchError::Malformed(format!("header entry '{k}' cannot be encoded")));
        }
        writeln!(out, "# {k}={v}").map_err(|e| BenchError::io("trace", e))?;
    }
    let mut w = csv::Writer::from_writer(out);
    w.write_record(COLUMNS)?;
    for r in rows {
        w.write_record([
            r.iter.to_string(),
            real(r.residual),
            real(r.lambda),
            real(r.tau),
            r.ls_inner.to_string(),
            r.n_op.to_string(),
            r.n_fval.to_string(),
            r.n_prox.to_string(),
            r.n_mult.to_string(),
            real(r.elapsed_s),
        ])?;
    }
    w.flush().map_err(|e| BenchError::io("trace", e))?;
    Ok(())
}

#[derive(Deserialize)]
struct Row {
    iter: usize,
    residual: f64,
    lambda: f64,
    tau: f64,
    ls_inner: usize,
    #[serde(rename = "n_F")]
    n_op: u64,
    #[serde(rename = "n_f")]
    n_fval: u64,
    n_prox: u64,
    n_mult: u64,
    elapsed_s: f64,
}

pub fn read_trace<R: Read>(input: R) -> Result<TraceFile, BenchError> {
    let mut text = String::new();
    let mut input = input;
    input
        .read_to_string(&mut text)
        .map_err(|e| BenchError::io("trace", e))?;

    let mut header = Vec::new();
    for line in text.lines().take_while(|l| l.starts_with('#')) {
        let body = line[1..].trim_start();
        let (k, v) = body
            .split_once('=')
            .ok_or_else(|| BenchError::Malformed(format!("header line without '=': {line}")))?;
        header.push((k.to_string(), v.to_string()));
    }

    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let cols = rdr.headers()?.clone();
    if cols.iter().ne(COLUMNS) {
        return Err(BenchError::Malformed(format!(
            "expected columns {}, found {}",
            COLUMNS.join(","),
            cols.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut rows = Vec::new();
    for rec in rdr.deserialize() {
        let r: Row = rec?;
        rows.push(IterationTrace {
            iter: r.iter,
            residual: r.residual,
            lambda: r.lambda,
            tau: r.tau,
            ls_inner: r.ls_inner,
            n_op: r.n_op,
            n_fval: r.n_fval,
            n_prox: r.n_prox,
            n_mult: r.n_mult,
            elapsed_s: r.elapsed_s,
        });
    }
    Ok(TraceFile { header, rows })
}

/// Everything after the manifest lines: the part that must be identical
/// between repeated runs.
pub fn body(text: &str) -> &str {
    let mut rest = text;
    while rest.starts_with('#') {
        rest = match rest.find('\n') {
            Some(i) => &rest[i + 1..],
            None => "",
        };
    }
    rest
}
