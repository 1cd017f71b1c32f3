//! Acceptance run: one PASS/FAIL line per criterion, then a single assertion.
//!
//! Every tolerance below is written out explicitly rather than taken from the
//! suite defaults, so a change to a suite cannot silently loosen a criterion.

use std::io::Write;

use qolct::cli::{bench, BenchRow};
use qolct::verify::{run_suite, Suite, TrialConfig};
use qolct::{OlctParams, Preset, VerificationReport};

/// Writes straight to the stderr handle, which the test harness does not
/// capture, so the criterion lines appear in a plain `cargo test` run.
fn show(line: &str) {
    let _ = writeln!(std::io::stderr().lock(), "{line}");
}

struct Ledger {
    lines: Vec<(bool, String)>,
}

impl Ledger {
    fn record(&mut self, id: usize, title: &str, parts: Vec<(String, bool)>) {
        let ok = parts.iter().all(|(_, ok)| *ok);
        let detail: Vec<_> = parts.into_iter().map(|(s, _)| s).collect();
        let line = format!("criterion {id:>2} [{}] {title}: {}", if ok { "PASS" } else { "FAIL" }, detail.join("; "));
        show(&line);
        self.lines.push((ok, line));
    }
}

fn run(suite: Suite, n_samples: usize, n_trials: usize) -> VerificationReport {
    let cfg = TrialConfig { n_samples, n_trials, ..TrialConfig::for_suite(suite) };
    run_suite(suite, &cfg).unwrap_or_else(|e| panic!("{suite} could not run: {e}"))
}

fn at_most(label: &str, value: f64, tol: f64) -> (String, bool) {
    (format!("{label} {value:.3e} <= {tol:.0e}"), value <= tol)
}

fn check(report: &VerificationReport, name: &str) -> f64 {
    report
        .checks
        .iter()
        .find(|c| c.name == name)
        .unwrap_or_else(|| panic!("{} has no check {name}", report.suite))
        .max_residual
}

fn trials(report: &VerificationReport, want: usize) -> (String, bool) {
    (format!("{} trials", report.trials), report.trials >= want)
}

fn note_value(report: &VerificationReport, metric: &str) -> Option<f64> {
    let prefix = format!("max {metric} = ");
    report.notes.iter().find_map(|n| n.strip_prefix(&prefix)?.parse().ok())
}

fn scaling(rows: &[BenchRow]) -> Vec<(String, bool)> {
    let find = |n: usize| rows.iter().find(|r| r.size == n).unwrap();
    let mut parts = Vec::new();
    let worst = rows.iter().filter_map(|r| r.max_rel_deviation).fold(0.0, f64::max);
    parts.push(at_most("bench deviation", worst, 1e-9));
    for n in [1024, 2048] {
        let (a, b) = (find(n).direct_ms.unwrap(), find(2 * n).direct_ms.unwrap());
        parts.push((format!("direct {}/{} = {:.2} >= 3", 2 * n, n, b / a), b / a >= 3.0));
    }
    for n in [4096, 16384] {
        let ratio = find(4 * n).fast_ms / find(n).fast_ms;
        parts.push((format!("fast {}/{} = {ratio:.2} <= 6", 4 * n, n), ratio <= 6.0));
    }
    parts
}

#[test]
fn acceptance_criteria() {
    let mut ledger = Ledger { lines: Vec::new() };

    let r = run(Suite::Roundtrip, 1024, 50);
    ledger.record(1, "inversion", vec![trials(&r, 50), at_most("round-trip", r.max_residual, 1e-6)]);

    let r = run(Suite::Moyal, 1024, 100);
    ledger.record(2, "Moyal formula", vec![trials(&r, 100), at_most("inner product", r.max_residual, 1e-6)]);

    let r = run(Suite::Linearity, 1024, 100);
    ledger.record(3, "left quaternion linearity", vec![trials(&r, 100), at_most("linearity", r.max_residual, 1e-12)]);

    let r = run(Suite::Conjugation, 1024, 50);
    ledger.record(
        4,
        "conjugation lemma",
        vec![
            trials(&r, 50),
            at_most("corrected identity", r.max_residual, 1e-8),
            at_most("literal", check(&r, "literal"), 1e-8),
            at_most("remark", check(&r, "remark"), 1e-8),
        ],
    );

    // 50 trials with p = q = 0 plus a second batch of 50 with p != 0.
    let r = run(Suite::Convolution, 1024, 50);
    let w2_only = note_value(&r, "w2_only_phase_residual").unwrap_or(0.0);
    ledger.record(
        5,
        "convolution theorem",
        vec![
            trials(&r, 100),
            at_most("product identity", r.max_residual, 1e-6),
            (format!("w2-only phase residual {w2_only:.3e} (nonzero)"), w2_only > 1e-6),
        ],
    );

    let r = run(Suite::Product, 1024, 50);
    ledger.record(
        6,
        "product theorem",
        vec![trials(&r, 50), at_most("commuting", r.max_residual, 1e-6), at_most("quaternion", check(&r, "quaternion"), 1e-5)],
    );

    let r = run(Suite::Composition, 1024, 50);
    ledger.record(
        7,
        "composition",
        vec![trials(&r, 50), at_most("normalized", r.max_residual, 1e-5), at_most("|c| - 1", check(&r, "unit_modulus"), 1e-6)],
    );

    let r = run(Suite::SpecialCases, 1024, 50);
    let bitwise = Preset::Qfrft { theta: std::f64::consts::FRAC_PI_2 }.params().unwrap() == Preset::Qft.params().unwrap();
    ledger.record(
        8,
        "special cases",
        vec![
            trials(&r, 50),
            at_most("qft", r.max_residual, 1e-10),
            at_most("qlct", check(&r, "qlct"), 1e-8),
            at_most("qfrft", check(&r, "qfrft"), 1e-8),
            at_most("qfrft(pi/2) vs qft", check(&r, "qfrft_half_pi_is_qft"), 0.0),
            ("qfrft(pi/2) == qft parameters".into(), bitwise),
        ],
    );

    let small = run(Suite::FastVsDirect, 1024, 50);
    let large = run(Suite::FastVsDirect, 2048, 50);
    let params = OlctParams::new(1.0, 2.0, 0.0, 1.0, 0.3, -0.1).unwrap();
    let rows = bench(&params, &[1024, 2048, 4096, 16384, 65536], 4096, 5).unwrap();
    for row in &rows {
        let direct = row.direct_ms.map_or("skipped".to_string(), |ms| format!("{ms:.3} ms"));
        show(&format!("    bench {:>6}: direct {direct}, fast {:.3} ms", row.size, row.fast_ms));
    }
    let mut parts = vec![
        trials(&large, 50),
        at_most("fast vs direct N=1024", small.max_residual, 1e-9),
        at_most("fast vs direct N=2048", large.max_residual, 1e-9),
    ];
    parts.extend(scaling(&rows));
    ledger.record(9, "fast vs direct", parts);

    let oracle = check(&small, "oracle_vs_direct").max(check(&large, "oracle_vs_direct"));
    ledger.record(10, "oracle independence", vec![trials(&small, 50), at_most("oracle vs direct", oracle, 1e-12)]);

    let failed: Vec<_> = ledger.lines.iter().filter(|(ok, _)| !ok).map(|(_, l)| l.as_str()).collect();
    assert!(failed.is_empty(), "failed criteria:\n{}", failed.join("\n"));
}
