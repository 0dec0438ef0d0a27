//! The trace file grammar: what the writer emits, the reader accepts
//! unchanged, and nothing else.

use proptest::prelude::*;
use vi_bench::trace_csv::body;
use vi_bench::{read_trace, write_trace, COLUMNS};
use vi_core::IterationTrace;

fn real() -> impl Strategy<Value = f64> {
    prop_oneof![
        8 => any::<f64>().prop_filter("finite", |v| v.is_finite()),
        2 => -1e3..1e3f64,
        1 => Just(0.0),
        1 => Just(-0.0),
        1 => Just(f64::NAN),
        1 => Just(f64::INFINITY),
        1 => Just(f64::MIN_POSITIVE / 4.0),
    ]
}

fn trace_row() -> impl Strategy<Value = IterationTrace> {
    (
        (0usize..1_000_000, real(), real(), real(), 0usize..100),
        (any::<u64>(), any::<u64>(), any::<u64>(), any::<u64>(), real()),
    )
        .prop_map(|((iter, residual, lambda, tau, ls_inner), (n_op, n_fval, n_prox, n_mult, elapsed_s))| {
            IterationTrace {
                iter,
                residual,
                lambda,
                tau,
                ls_inner,
                n_op,
                n_fval,
                n_prox,
                n_mult,
                elapsed_s,
            }
        })
}

/// Bitwise float equality, with all NaNs equal.
fn same(a: f64, b: f64) -> bool {
    (a.is_nan() && b.is_nan()) || a.to_bits() == b.to_bits()
}

fn same_row(a: &IterationTrace, b: &IterationTrace) -> bool {
    a.iter == b.iter
        && same(a.residual, b.residual)
        && same(a.lambda, b.lambda)
        && same(a.tau, b.tau)
        && a.ls_inner == b.ls_inner
        && a.n_op == b.n_op
        && a.n_fval == b.n_fval
        && a.n_prox == b.n_prox
        && a.n_mult == b.n_mult
        && same(a.elapsed_s, b.elapsed_s)
}

proptest! {
    #[test]
    fn round_trip(
        rows in prop::collection::vec(trace_row(), 0..20),
        header in prop::collection::vec(("[a-z_]{1,10}", "[ -~]{0,30}"), 0..5),
    ) {
        let header: Vec<(String, String)> = header;
        let mut buf = Vec::new();
        write_trace(&mut buf, &header, &rows).unwrap();
        let parsed = read_trace(buf.as_slice()).unwrap();
        prop_assert_eq!(parsed.rows.len(), rows.len());
        for (a, b) in parsed.rows.iter().zip(&rows) {
            prop_assert!(same_row(a, b), "{:?} != {:?}", a, b);
        }
        // Header values keep their text apart from leading blanks.
        for ((k, v), (pk, pv)) in header.iter().zip(&parsed.header) {
            prop_assert_eq!(k, pk);
            prop_assert_eq!(v.as_str(), pv.as_str());
        }
        // Writing the parsed trace again reproduces the body byte for byte.
        let mut again = Vec::new();
        write_trace(&mut again, &[], &parsed.rows).unwrap();
        let first = String::from_utf8(buf).unwrap();
        let second = String::from_utf8(again).unwrap();
        prop_assert_eq!(body(&first), body(&second));
    }

    #[test]
    fn corrupted_fields_are_rejected(row in trace_row(), col in 0usize..10) {
        let mut buf = Vec::new();
        write_trace(&mut buf, &[], std::slice::from_ref(&row)).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let (head, data) = text.split_once('\n').unwrap();
        let mut cells: Vec<String> = data.trim_end().split(',').map(str::to_string).collect();
        cells[col] = format!("{}x", cells[col]);
        let bad = format!("{head}\n{}\n", cells.join(","));
        prop_assert!(read_trace(bad.as_bytes()).is_err());
    }
}

#[test]
fn column_set_is_exact() {
    let row = IterationTrace {
        iter: 1,
        residual: 1.0,
        lambda: 1.0,
        tau: 1.0,
        ls_inner: 0,
        n_op: 2,
        n_fval: 0,
        n_prox: 1,
        n_mult: 0,
        elapsed_s: 0.0,
    };
    let mut buf = Vec::new();
    write_trace(&mut buf, &[], &[row]).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert_eq!(
        text.lines().next().unwrap(),
        "iter,residual,lambda,tau,ls_inner,n_F,n_f,n_prox,n_mult,elapsed_s"
    );

    // Extra, missing or reordered columns.
    let extra = text.replacen("elapsed_s", "elapsed_s,extra", 1).replacen("e0\n", "e0,1\n", 1);
    assert!(read_trace(extra.as_bytes()).is_err());
    let mut swapped: Vec<&str> = COLUMNS.to_vec();
    swapped.swap(0, 1);
    let reordered = text.replacen(&COLUMNS.join(","), &swapped.join(","), 1);
    assert!(read_trace(reordered.as_bytes()).is_err());
    let truncated = text.replacen(",0.0000000000000000e0\n", "\n", 1);
    assert!(read_trace(truncated.as_bytes()).is_err());
}
