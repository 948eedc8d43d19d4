use std::io::Write;

use lam_core::suite::{run_suite, Suite, SuiteParams};

// Written to the stdout handle directly so the lines survive output capture.
macro_rules! out {
    ($($t:tt)*) => {{
        let mut h = std::io::stdout().lock();
        writeln!(h, $($t)*).unwrap();
        h.flush().unwrap();
    }};
}

const CRITERIA: [(u32, &str, Suite); 10] = [
    (1, "blowup separation", Suite::Blowup),
    (2, "subject reduction", Suite::SubjectReduction),
    (3, "linear strong normalization", Suite::StrongNormalization),
    (4, "unique normal forms", Suite::Confluence),
    (5, "cut-elimination", Suite::CutelimCubic),
    (6, "cut classification", Suite::Classification),
    (7, "inhabitant enumeration", Suite::Inhabitants),
    (8, "eraser/duplicator contracts", Suite::Duplicator),
    (9, "translation soundness", Suite::Soundness),
    (10, "compression", Suite::Compression),
];

#[test]
fn acceptance() {
    let params = SuiteParams::default();
    out!();
    let mut failed = Vec::new();
    for (k, name, suite) in CRITERIA {
        let r = run_suite(suite, params);
        let verdict = if r.passed() { "PASS" } else { "FAIL" };
        let secs = r.measurements.get("seconds").and_then(|v| v.as_f64()).unwrap_or(0.0);
        out!("{verdict} {k:>2} {name} ({secs:.2}s)");
        for (key, v) in &r.measurements {
            if key != "seconds" && !v.is_array() {
                out!("      {key} = {v}");
            }
        }
        for d in r.details.iter().take(5) {
            out!("      {d}");
        }
        if !r.passed() {
            failed.push(k);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
