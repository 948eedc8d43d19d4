use super::*;
use crate::derivation::build;
use crate::gen::{copy_first_example, corpus, deadlock_example, ladd_applied};
use crate::inhabit::maximal_value;
use crate::reduce::{normalize, Strategy};
use crate::syntax::{Index, Type};

fn one() -> Type {
    Type::unit()
}

fn root_class(d: &Derivation) -> CutClass {
    let cs = classify_cuts(d).unwrap();
    cs.into_iter().find(|(p, _)| p.is_empty()).unwrap().1
}

#[test]
fn classifies_the_two_stuck_shapes() {
    assert_eq!(root_class(&deadlock_example().unwrap()), CutClass::Critical(CritStatus::Deadlock));
    assert_eq!(root_class(&copy_first_example().unwrap()), CutClass::CopyFirst);
}

#[test]
fn ready_cut_becomes_with_r0() {
    let (_, v) = maximal_value(&one()).unwrap();
    let copy = build::with_r1(build::ax("x1", one()), build::ax("x2", one()), v.clone(), "x").unwrap();
    let d = build::cut(v, copy, "x").unwrap();
    assert_eq!(root_class(&d), CutClass::Critical(CritStatus::Ready));
    let out = elim_step(&d, &[]).unwrap();
    assert_eq!(out.rule, Rule::WithR0);
    assert!(check(&out, System::Lam).is_ok());
    assert!(verify_simulation(&d, &out));
    assert!(potential(&out) < potential(&d));
    assert!(elim_step(&copy_first_example().unwrap(), &[]).is_err());
}

#[test]
fn with_symmetric_discards_a_component() {
    let (_, v) = maximal_value(&one()).unwrap();
    let pair = build::with_r0(v.clone(), v).unwrap();
    let proj = build::with_l(build::ax("z", one()), Index::First, "z", "y", one()).unwrap();
    let d = build::cut(pair, proj, "y").unwrap();
    assert_eq!(root_class(&d), CutClass::Symmetric(SymKind::With));
    let out = elim_step(&d, &[]).unwrap();
    assert_eq!(root_class(&out), CutClass::Symmetric(SymKind::XAx));
    let (done, _) = eliminate(&d).unwrap();
    assert!(done.is_cut_free());
    assert_eq!(done.subject(), &Term::identity());
}

#[test]
fn ax_cut_renames() {
    let d = build::cut(build::ax("y", one()), build::lolli_r(build::ax("x", one()), "x").unwrap(), "z");
    assert!(d.is_err());
    let r = build::lolli_l(build::ax("u", one()), build::ax("w", one()), "w", "x").unwrap();
    let f = Type::lolli(one(), one());
    let d = build::cut(build::ax("y", f), r, "x").unwrap();
    assert_eq!(root_class(&d), CutClass::Symmetric(SymKind::AxY));
    let out = elim_step(&d, &[]).unwrap();
    assert_eq!(out.subject().to_string(), d.subject().to_string());
    assert!(out.is_cut_free());
}

#[test]
fn ladd_eliminates_to_the_normal_form() {
    for n in 1..=3 {
        let d = ladd_applied(n, &one(), None).unwrap();
        let opts = ElimOptions { simulate: true, budget: None };
        let (out, trace) = eliminate_with(&d, opts).unwrap();
        assert!(out.is_cut_free());
        assert!(check(&out, System::Lam).is_ok());
        let (nf, _) = normalize(d.subject(), Strategy::Leftmost, 10_000).unwrap();
        assert_eq!(out.subject(), &nf);
        let s = d.size();
        assert!(trace.total_steps <= s * s * s, "{} steps for size {s}", trace.total_steps);
        let srcs = trace.rounds.iter().filter(|r| r.src_step != SrcStep::None).count();
        assert!(srcs <= potential(&d));
    }
}

#[test]
fn corpus_forall_lazy_entries_eliminate() {
    for e in corpus(7, 20).unwrap() {
        let d = &e.derivation;
        if !d.conclusion.is_forall_lazy() {
            assert_eq!(eliminate(d).unwrap_err(), CutElimError::NotForallLazy);
            continue;
        }
        let (out, trace) = eliminate(d).unwrap_or_else(|err| panic!("{}: {err}", e.name));
        assert!(out.is_cut_free(), "{}", e.name);
        assert!(!out.subject().has_copy_or_proj(), "{}", e.name);
        if out.context().is_empty() {
            assert!(out.subject().is_value(), "{}", e.name);
        }
        let (nf, _) = normalize(d.subject(), Strategy::Leftmost, 10_000).unwrap();
        assert_eq!(out.subject(), &nf, "{}", e.name);
        let w = &trace.weight_trajectory;
        assert!(w.windows(2).all(|p| p[1] <= p[0]), "{}: {w:?}", e.name);
    }
}

#[test]
fn stuck_shapes_are_not_forall_lazy() {
    for d in [deadlock_example().unwrap(), copy_first_example().unwrap()] {
        assert!(!d.conclusion.is_forall_lazy());
        assert_eq!(eliminate(&d).unwrap_err(), CutElimError::NotForallLazy);
    }
}

#[test]
fn random_corpus_steps_are_simulated() {
    for seed in 0..2 {
        for e in corpus(seed, 40).unwrap() {
            let d = &e.derivation;
            if !d.conclusion.is_forall_lazy() {
                continue;
            }
            let opts = ElimOptions { simulate: true, budget: None };
            let (out, trace) = eliminate_with(d, opts).unwrap_or_else(|err| panic!("{}: {err}", e.name));
            assert!(check(&out, System::Lam).is_ok(), "{}", e.name);
            let s = d.size();
            assert!(trace.total_steps <= s * s * s, "{}", e.name);
        }
    }
}
