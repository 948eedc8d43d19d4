//! Verification suites producing structured reports.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::cutelim::{
    classify_cuts, elim_step, eliminate, eliminate_observed, CritStatus, CutClass, CutElimError, ElimOptions,
};
use crate::derivation::{check, System};
use crate::gen::{add_term, copy_first_example, corpus, deadlock_example, gen_add, ladd_applied, CorpusEntry};
use crate::inhabit::enumerate_inhabitants;
use crate::reduce::{find_redexes, normalize, push_reduction, Strategy};
use crate::syntax::{Term, Type};
use crate::translate::{check_contracts, check_soundness, compression_report, eraser_size, translate_type};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Info,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub measurements: BTreeMap<String, Value>,
    pub verdict: Verdict,
    pub details: Vec<String>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Report {
        Report {
            command: command.into(),
            inputs: BTreeMap::new(),
            measurements: BTreeMap::new(),
            verdict: Verdict::Pass,
            details: Vec::new(),
        }
    }

    pub fn input(&mut self, k: &str, v: impl Serialize) {
        self.inputs.insert(k.to_string(), json!(v));
    }

    pub fn measure(&mut self, k: &str, v: impl Serialize) {
        self.measurements.insert(k.to_string(), json!(v));
    }

    pub fn note(&mut self, msg: impl Into<String>) {
        self.details.push(msg.into());
    }

    pub fn fail(&mut self, msg: impl Into<String>) {
        self.verdict = Verdict::Fail;
        self.details.push(msg.into());
    }

    /// Records a failure unless `ok`.
    pub fn require(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if !ok {
            self.fail(msg());
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict != Verdict::Fail
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Blowup,
    SubjectReduction,
    StrongNormalization,
    Confluence,
    CutelimCubic,
    Classification,
    Inhabitants,
    Duplicator,
    Soundness,
    Compression,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Blowup,
        Suite::SubjectReduction,
        Suite::StrongNormalization,
        Suite::Confluence,
        Suite::CutelimCubic,
        Suite::Classification,
        Suite::Inhabitants,
        Suite::Duplicator,
        Suite::Soundness,
        Suite::Compression,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Blowup => "blowup",
            Suite::SubjectReduction => "subject-reduction",
            Suite::StrongNormalization => "strong-normalization",
            Suite::Confluence => "confluence",
            Suite::CutelimCubic => "cutelim-cubic",
            Suite::Classification => "classification",
            Suite::Inhabitants => "inhabitants",
            Suite::Duplicator => "duplicator",
            Suite::Soundness => "soundness",
            Suite::Compression => "compression",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Suite, String> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| {
            let names: Vec<_> = Suite::ALL.iter().map(|x| x.name()).collect();
            format!("unknown suite `{s}`, expected one of {}", names.join(", "))
        })
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SuiteParams {
    pub seed: u64,
    /// Number of random entries added to the fixed corpus.
    pub random: usize,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams { seed: 0, random: 200 }
    }
}

pub fn run_suite(suite: Suite, params: SuiteParams) -> Report {
    let mut r = Report::new(format!("suite {suite}"));
    r.input("seed", params.seed);
    let start = Instant::now();
    match suite {
        Suite::Blowup => blowup(&mut r),
        Suite::Compression => compression(&mut r),
        Suite::Duplicator => duplicator(&mut r),
        Suite::Inhabitants => inhabitants(&mut r),
        Suite::Classification => classification(&mut r),
        _ => match corpus(params.seed, params.random) {
            Err(e) => r.fail(format!("corpus generation failed: {e}")),
            Ok(c) => {
                r.input("corpus_size", c.len());
                match suite {
                    Suite::SubjectReduction => subject_reduction(&mut r, &c),
                    Suite::StrongNormalization => strong_normalization(&mut r, &c),
                    Suite::Confluence => confluence(&mut r, &c),
                    Suite::CutelimCubic => cutelim_cubic(&mut r, &c),
                    Suite::Soundness => soundness(&mut r, &c),
                    _ => unreachable!(),
                }
            }
        },
    }
    r.measure("seconds", start.elapsed().as_secs_f64());
    r
}

pub fn run_all(params: SuiteParams) -> Vec<Report> {
    Suite::ALL.iter().map(|s| run_suite(*s, params)).collect()
}

fn blowup(r: &mut Report) {
    let start = Instant::now();
    let mut rows = Vec::new();
    let mut prev_nf: Option<usize> = None;
    r.input("n", "1..8");
    for n in 1..=8usize {
        let add = match gen_add(n, &Term::tt(), &Type::boolean()) {
            Ok((t, d)) => {
                r.require(check(&d, System::Imall2).is_ok(), || format!("add n={n}: derivation rejected"));
                t
            }
            Err(e) => return r.fail(format!("gen_add({n}): {e}")),
        };
        let Ok((nf, trace)) = normalize(&add, Strategy::Leftmost, 10 * add.size()) else {
            return r.fail(format!("add n={n} did not normalize"));
        };
        let add_size = add_term(n, "x").size();
        r.require(trace.len() == n + 1, || format!("add n={n}: {} steps, expected {}", trace.len(), n + 1));
        r.require(add_size == 5 * n + 1, || format!("|add_{n}| = {add_size}, expected {}", 5 * n + 1));
        let base = prev_nf.unwrap_or(Term::tt().size());
        r.require(nf.size() == 2 * base + 1, || format!("|M_[{n}]| = {}, expected {}", nf.size(), 2 * base + 1));
        prev_nf = Some(nf.size());

        let d = match ladd_applied(n, &Type::unit(), None) {
            Ok(d) => d,
            Err(e) => return r.fail(format!("ladd({n}): {e}")),
        };
        let m = d.subject();
        let Ok((_, ltrace)) = normalize(m, Strategy::Leftmost, m.size()) else {
            return r.fail(format!("ladd n={n} did not normalize"));
        };
        r.require(ltrace.len() == 2 * n + 1, || format!("ladd n={n}: {} steps, expected {}", ltrace.len(), 2 * n + 1));
        r.require(ltrace.strictly_shrinking(), || format!("ladd n={n}: size does not strictly decrease"));
        rows.push(json!({
            "n": n, "add_steps": trace.len(), "add_size": add_size, "add_nf_size": nf.size(),
            "ladd_steps": ltrace.len(), "ladd_size": m.size(), "ladd_nf_size": ltrace.steps.last().map(|s| s.size_after),
        }));
    }
    let secs = start.elapsed().as_secs_f64();
    r.require(secs < 5.0, || format!("took {secs:.2}s, limit 5s"));
    r.measure("rows", rows);
}

fn subject_reduction(r: &mut Report, corpus: &[CorpusEntry]) {
    let mut steps = 0usize;
    let mut lam = 0usize;
    for e in corpus {
        if check(&e.derivation, System::Lam).is_err() {
            r.fail(format!("{}: corpus derivation does not check", e.name));
            continue;
        }
        lam += 1;
        let mut cur = e.derivation.clone();
        loop {
            let redexes = find_redexes(cur.subject());
            let Some(first) = redexes.first().cloned() else { break };
            let mut next_cur = None;
            for red in redexes {
                steps += 1;
                match push_reduction(&cur, &red) {
                    Ok(next) => {
                        let ok = check(&next, System::Lam).is_ok() && next.subject().size() < cur.subject().size();
                        r.require(ok, || format!("{}: step {:?} at {:?} breaks subject reduction", e.name, red.kind, red.path));
                        if red == first {
                            next_cur = Some(next);
                        }
                    }
                    Err(err) => r.fail(format!("{}: {err}", e.name)),
                }
            }
            match next_cur {
                Some(n) => cur = n,
                None => break,
            }
        }
    }
    r.require(lam >= 200, || format!("only {lam} LAM-checked derivations"));
    r.measure("derivations", lam);
    r.measure("steps_checked", steps);
}

const STRATEGIES: [Strategy; 5] =
    [Strategy::Leftmost, Strategy::Rightmost, Strategy::Random(1), Strategy::Random(2), Strategy::Random(3)];

fn strong_normalization(r: &mut Report, corpus: &[CorpusEntry]) {
    let mut worst = 0.0f64;
    for e in corpus {
        let m = e.derivation.subject();
        for s in &STRATEGIES[..3] {
            match normalize(m, *s, m.size()) {
                Ok((_, t)) => {
                    worst = worst.max(t.len() as f64 / m.size() as f64);
                    r.require(t.len() <= m.size(), || format!("{} under {s}: {} steps > {}", e.name, t.len(), m.size()));
                }
                Err(err) => r.fail(format!("{} under {s}: {err}", e.name)),
            }
        }
    }
    r.input("strategies", STRATEGIES[..3].iter().map(ToString::to_string).collect::<Vec<_>>());
    r.measure("max_steps_over_size", worst);
}

fn confluence(r: &mut Report, corpus: &[CorpusEntry]) {
    for e in corpus {
        let m = e.derivation.subject();
        let mut forms = Vec::new();
        for s in STRATEGIES {
            match normalize(m, s, m.size()) {
                Ok((nf, _)) => forms.push(nf),
                Err(err) => r.fail(format!("{} under {s}: {err}", e.name)),
            }
        }
        r.require(forms.windows(2).all(|w| w[0] == w[1]), || format!("{}: normal forms differ", e.name));
    }
    r.input("strategies", STRATEGIES.iter().map(ToString::to_string).collect::<Vec<_>>());
}

fn steps_over_cube(d: &crate::Derivation) -> Result<(usize, usize, f64), CutElimError> {
    let (_, t) = eliminate(d)?;
    let s = d.size();
    Ok((s, t.total_steps, t.total_steps as f64 / (s * s * s) as f64))
}

fn cutelim_cubic(r: &mut Report, corpus: &[CorpusEntry]) {
    let mut c = 0.0f64;
    let mut rows = Vec::new();
    for n in 1..=8 {
        let d = match ladd_applied(n, &Type::unit(), None) {
            Ok(d) => d,
            Err(e) => return r.fail(format!("ladd({n}): {e}")),
        };
        match steps_over_cube(&d) {
            Ok((size, steps, ratio)) => {
                if n <= 3 {
                    c = c.max(ratio);
                } else {
                    r.require(ratio <= c, || format!("ladd n={n}: {steps} steps exceed C·|D|³ with C={c:.5}"));
                }
                rows.push(json!({"n": n, "size": size, "steps": steps, "steps_over_cube": ratio}));
            }
            Err(e) => r.fail(format!("ladd n={n}: {e}")),
        }
    }
    r.measure("fitted_c", c);
    r.measure("ladd_rows", rows);
    let mut lazy = 0;
    let mut worst = 0.0f64;
    for e in corpus {
        let d = &e.derivation;
        if !d.conclusion.is_forall_lazy() {
            continue;
        }
        lazy += 1;
        let (out, trace) = match eliminate(d) {
            Ok(x) => x,
            Err(err) => {
                r.fail(format!("{}: {err}", e.name));
                continue;
            }
        };
        let s = out.subject();
        r.require(out.is_cut_free(), || format!("{}: not cut-free", e.name));
        r.require(!s.has_copy_or_proj(), || format!("{}: copy or projection left", e.name));
        r.require(!out.context().is_empty() || s.is_value(), || format!("{}: closed result is not a value", e.name));
        let cube = d.size().pow(3);
        worst = worst.max(trace.total_steps as f64 / cube as f64);
        r.require(trace.total_steps <= cube, || format!("{}: {} steps exceed |D|³ = {cube}", e.name, trace.total_steps));
        match normalize(d.subject(), Strategy::Leftmost, d.subject().size()) {
            Ok((nf, _)) => r.require(&nf == s, || format!("{}: cut-free subject differs from the normal form", e.name)),
            Err(err) => r.fail(format!("{}: {err}", e.name)),
        }
    }
    r.measure("forall_lazy_derivations", lazy);
    r.measure("corpus_max_steps_over_cube", worst);
}

fn classification(r: &mut Report) {
    let cases = [("deadlock", deadlock_example(), CutClass::Critical(CritStatus::Deadlock)), ("copy-first", copy_first_example(), CutClass::CopyFirst)];
    for (name, d, want) in cases {
        let d = match d {
            Ok(d) => d,
            Err(e) => return r.fail(format!("{name}: {e}")),
        };
        match classify_cuts(&d) {
            Ok(cs) => {
                let root = cs.iter().find(|(p, _)| p.is_empty()).map(|(_, c)| *c);
                r.require(root == Some(want), || format!("{name}: classified {root:?}"));
                r.measure(name, root.map(|c| c.label()));
            }
            Err(e) => r.fail(format!("{name}: {e}")),
        }
        r.require(matches!(elim_step(&d, &[]), Err(CutElimError::NoRule(_))), || format!("{name}: a rule fired"));
        r.require(matches!(eliminate(&d), Err(CutElimError::NotForallLazy)), || format!("{name}: eliminate accepted it"));
    }
}

fn inhabitants(r: &mut Report) {
    let start = Instant::now();
    let b = Type::boolean();
    let cases = [("1", Type::unit(), 1), ("B", b.clone(), 2), ("B⊗B", Type::tensor(b.clone(), b.clone()), 4)];
    for (name, a, want) in cases {
        let set = match enumerate_inhabitants(&a, None) {
            Ok(s) => s,
            Err(e) => return r.fail(format!("{name}: {e}")),
        };
        r.require(set.len() == want, || format!("{name}: {} inhabitants, expected {want}", set.len()));
        r.measure(name, set.len());
        for (m, d) in &set.members {
            let ctx: usize = d.context().entries().iter().map(|(_, t)| t.size()).sum();
            let bound = ctx + a.size();
            r.require(m.size() <= bound && bound <= 2 * d.size(), || {
                format!("{name}: |{m}| = {}, |Γ|+|A| = {bound}, |D| = {}", m.size(), d.size())
            });
        }
        if name == "B" {
            let has = |t: &Term| set.terms().any(|m| m == t);
            r.require(has(&Term::tt()) && has(&Term::ff()), || "B: tt and ff are not both enumerated".into());
        }
    }
    let secs = start.elapsed().as_secs_f64();
    r.require(secs < 30.0, || format!("took {secs:.2}s, limit 30s"));
}

/// Least-squares slope and intercept.
fn fit(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

fn duplicator(r: &mut Report) {
    let start = Instant::now();
    let (one, b) = (Type::unit(), Type::boolean());
    let types = [
        ("1", one.clone()),
        ("B", b.clone()),
        ("1⊗1", Type::tensor(one.clone(), one.clone())),
        ("B⊗B", Type::tensor(b.clone(), b.clone())),
        ("(1∧1)•", translate_type(&Type::with(one.clone(), one))),
    ];
    let mut rows = Vec::new();
    for (name, a) in &types {
        match check_contracts(a) {
            Ok(c) => {
                r.require(c.eraser_ok, || format!("{name}: eraser contract fails"));
                r.require(c.duplicator_ok, || format!("{name}: duplicator contract fails"));
                rows.push(json!({"type": name, "type_size": a.size(), "inhabitants": c.inhabitants,
                    "eraser_size": c.eraser_size, "duplicator_size": c.duplicator_size}));
            }
            Err(e) => r.fail(format!("{name}: {e}")),
        }
    }
    // eraser growth over a longer chain of tensors
    let mut a = Type::boolean();
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    for _ in 0..8 {
        if let Ok(e) = eraser_size(&a) {
            xs.push(a.size() as f64);
            ys.push(e as f64);
        }
        a = Type::tensor(a, Type::boolean());
    }
    let (slope, intercept) = fit(&xs, &ys);
    let linear = xs.iter().zip(&ys).all(|(x, y)| (slope * x + intercept - y).abs() <= 1e-6 * y.max(1.0));
    r.require(linear, || "eraser size is not affine in the type size".into());
    r.measure("eraser_slope", slope);
    r.measure("gadgets", rows);
    let secs = start.elapsed().as_secs_f64();
    r.require(secs < 120.0, || format!("took {secs:.2}s, limit 120s"));
}

fn soundness(r: &mut Report, corpus: &[CorpusEntry]) {
    let (mut steps, mut traces) = (0usize, 0usize);
    let mut end_to_end = 0usize;
    for e in corpus {
        let d = &e.derivation;
        if !d.conclusion.is_forall_lazy() {
            continue;
        }
        traces += 1;
        let mut failures = Vec::new();
        let mut obs = |a: &crate::Derivation, b: &crate::Derivation| {
            steps += 1;
            match check_soundness(a, b) {
                Ok(true) => {}
                Ok(false) => failures.push(format!("{}: step {steps} is not sound", e.name)),
                Err(err) => failures.push(format!("{}: {err}", e.name)),
            }
            Ok(())
        };
        match eliminate_observed(d, ElimOptions::default(), &mut obs) {
            Ok((out, _)) => {
                end_to_end += 1;
                match check_soundness(d, &out) {
                    Ok(ok) => r.require(ok, || format!("{}: end-to-end translations differ", e.name)),
                    Err(err) => r.fail(format!("{}: {err}", e.name)),
                }
            }
            Err(err) => r.fail(format!("{}: {err}", e.name)),
        }
        for f in failures {
            r.fail(f);
        }
    }
    r.measure("traces", traces);
    r.measure("steps_checked", steps);
    r.measure("end_to_end_checked", end_to_end);
}

fn compression(r: &mut Report) {
    let mut rows = Vec::new();
    let mut prev = 0.0f64;
    let mut last = None;
    r.input("family", "ladd over B, n = 1..5");
    for n in 1..=5 {
        let d = match ladd_applied(n, &Type::boolean(), None) {
            Ok(d) => d,
            Err(e) => return r.fail(format!("ladd({n}): {e}")),
        };
        let c = match compression_report(&d) {
            Ok(c) => c,
            Err(e) => return r.fail(format!("n={n}: {e}")),
        };
        let ratio = c.translated_size as f64 / c.deriv_size as f64;
        r.require(ratio > prev, || format!("n={n}: ratio {ratio:.2} does not increase"));
        prev = ratio;
        rows.push(json!({"n": n, "deriv_size": c.deriv_size, "term_size": c.term_size,
            "translated_size": c.translated_size, "ratio": ratio}));
        last = Some(c);
    }
    if let Some(c) = last {
        let sq = (c.deriv_size * c.deriv_size) as u64;
        r.require(c.translated_size > sq, || format!("|D•| = {} does not exceed |D|² = {sq}", c.translated_size));
    }
    r.measure("rows", rows);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn failing_report_has_details() {
        let mut r = Report::new("x");
        r.require(false, || "broken".into());
        assert!(!r.passed());
        assert_eq!(r.details, vec!["broken".to_string()]);
    }

    #[test]
    fn fit_recovers_a_line() {
        let (s, i) = fit(&[1.0, 2.0, 3.0], &[5.0, 7.0, 9.0]);
        assert!((s - 2.0).abs() < 1e-9 && (i - 3.0).abs() < 1e-9);
    }

    #[test]
    fn fast_suites_pass() {
        for s in [Suite::Blowup, Suite::Classification, Suite::Inhabitants, Suite::Compression] {
            let r = run_suite(s, SuiteParams { seed: 0, random: 5 });
            assert!(r.passed(), "{s}: {:?}", r.details);
        }
    }
}
