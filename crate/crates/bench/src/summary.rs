//! Plain-text summary tables with the column sets of the benchmark study:
//! `#iter #f #grad #prox time` for minimization problems, `#iter #F #prox
//! time` for variational inequalities and `#iter #mult #prox time` for
//! matrix games, each followed by the final value of the convergence
//! measure and the stopping reason.

use vi_core::SolveReport;
use vi_problems::ProblemKind;

use crate::manifest::termination_label;

#[derive(Clone, Debug, PartialEq)]
pub struct SummaryRow {
    pub label: String,
    pub iters: usize,
    pub n_fval: u64,
    pub n_op: u64,
    pub n_prox: u64,
    pub n_mult: u64,
    pub time_s: f64,
    pub final_metric: f64,
    pub status: String,
}

impl SummaryRow {
    /// Counter columns are read from the last trace row, so the table and
    /// the trace file always agree.
    pub fn from_report(label: &str, report: &SolveReport) -> Self {
        let last = report.trace.last();
        SummaryRow {
            label: label.to_string(),
            iters: report.iterations(),
            n_fval: last.map_or(0, |r| r.n_fval),
            n_op: last.map_or(0, |r| r.n_op),
            n_prox: last.map_or(0, |r| r.n_prox),
            n_mult: last.map_or(0, |r| r.n_mult),
            time_s: report.counters.wall_time_s,
            final_metric: last.map_or(f64::NAN, |r| r.residual),
            status: termination_label(&report.termination),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Layout {
    Minimization,
    Vi,
    Game,
}

impl Layout {
    pub fn for_kind(kind: ProblemKind) -> Self {
        match kind {
            ProblemKind::Sun => Layout::Vi,
            ProblemKind::MatrixGame => Layout::Game,
            _ => Layout::Minimization,
        }
    }

    pub fn columns(self) -> &'static [&'static str] {
        match self {
            Layout::Minimization => &["#iter", "#f", "#grad", "#prox", "time"],
            Layout::Vi => &["#iter", "#F", "#prox", "time"],
            Layout::Game => &["#iter", "#mult", "#prox", "time"],
        }
    }

    fn cells(self, r: &SummaryRow) -> Vec<String> {
        let time = format!("{:.3}", r.time_s);
        match self {
            Layout::Minimization => vec![
                r.iters.to_string(),
                r.n_fval.to_string(),
                r.n_op.to_string(),
                r.n_prox.to_string(),
                time,
            ],
            Layout::Vi => vec![r.iters.to_string(), r.n_op.to_string(), r.n_prox.to_string(), time],
            Layout::Game => vec![
                r.iters.to_string(),
                r.n_mult.to_string(),
                r.n_prox.to_string(),
                time,
            ],
        }
    }
}

/// Renders an aligned table; `metric` names the final-value column.
pub fn render(layout: Layout, metric: &str, rows: &[SummaryRow]) -> String {
    let mut header: Vec<String> = vec![String::new()];
    header.extend(layout.columns().iter().map(|c| c.to_string()));
    header.push(metric.to_string());
    header.push("stop".to_string());

    let mut table = vec![header];
    for r in rows {
        let mut line = vec![r.label.clone()];
        line.extend(layout.cells(r));
        line.push(format!("{:.3e}", r.final_metric));
        line.push(r.status.clone());
        table.push(line);
    }
    let ncol = table[0].len();
    let widths: Vec<usize> = (0..ncol)
        .map(|j| table.iter().map(|l| l[j].chars().count()).max().unwrap_or(0))
        .collect();

    let mut out = String::new();
    for line in &table {
        let mut cells = Vec::with_capacity(ncol);
        for (j, cell) in line.iter().enumerate() {
            let pad = widths[j] - cell.chars().count();
            // Labels and the stop reason are left-aligned, numbers right-aligned.
            if j == 0 || j == ncol - 1 {
                cells.push(format!("{cell}{}", " ".repeat(pad)));
            } else {
                cells.push(format!("{}{cell}", " ".repeat(pad)));
            }
        }
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(label: &str, iters: usize) -> SummaryRow {
        SummaryRow {
            label: label.into(),
            iters,
            n_fval: 0,
            n_op: 2 * iters as u64 + 1,
            n_prox: iters as u64,
            n_mult: 0,
            time_s: 0.5,
            final_metric: 1e-7,
            status: "max_iter".into(),
        }
    }

    #[test]
    fn vi_layout() {
        let s = render(Layout::Vi, "residual", &[row("FBF-1", 100), row("Alg. 1", 100)]);
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(lines.len(), 3);
        let head: Vec<&str> = lines[0].split_whitespace().collect();
        assert_eq!(head, ["#iter", "#F", "#prox", "time", "residual", "stop"]);
        assert!(lines[1].starts_with("FBF-1 "));
        let cells: Vec<&str> = lines[2].split_whitespace().collect();
        assert_eq!(cells, ["Alg.", "1", "100", "201", "100", "0.500", "1.000e-7", "max_iter"]);
        // Right-aligned numeric columns line up.
        assert_eq!(lines[1].find("201"), lines[2].find("201"));
    }

    #[test]
    fn layouts_follow_problem_kind() {
        assert_eq!(Layout::for_kind(ProblemKind::Geo), Layout::Minimization);
        assert_eq!(Layout::for_kind(ProblemKind::Sun), Layout::Vi);
        assert_eq!(Layout::for_kind(ProblemKind::MatrixGame).columns()[1], "#mult");
    }
}
