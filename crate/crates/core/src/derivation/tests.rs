use super::*;
use crate::derivation::build::*;
use crate::gen::{corpus, deadlock_example, gen_ladd};
use crate::inhabit::{enumerate_inhabitants, maximal_value};
use crate::syntax::{Context, Index, Term, Type};

fn unit_id() -> Derivation {
    maximal_value(&Type::unit()).unwrap().1
}

fn conditions(d: &Derivation, s: System) -> Vec<&'static str> {
    check(d, s).err().unwrap_or_default().into_iter().map(|v| v.condition).collect()
}

#[test]
fn deadlock_example_checks() {
    let d = deadlock_example().unwrap();
    assert_eq!(check(&d, System::Lam), Ok(()));
    assert!(!d.conclusion.is_forall_lazy());
}

#[test]
fn with_r1_needs_a_single_assumption() {
    let good = with_r1(ax("x1", Type::unit()), ax("x2", Type::unit()), unit_id(), "x").unwrap();
    let mut bad = good.clone();
    bad.conclusion.context.push("extra", Type::var("a")).unwrap();
    assert!(conditions(&bad, System::Lam).contains(&"single-assumption context"));
}

#[test]
fn closure_condition_ii() {
    // y:a ⊢ λx.x : 1 is not derivable; fake a forallR over an open context
    let inner = lolli_r(ax("x", Type::var("b")), "x").unwrap();
    let pair = Derivation::new(
        Rule::ForallR,
        Judgement::new(Context::single("y", Type::var("c")), Term::abs("x", Term::var("x")), Type::unit()),
        vec![inner],
    );
    assert!(conditions(&pair, System::Lam).iter().any(|c| c.contains("(ii)")));
}

#[test]
fn closure_condition_i() {
    // f : a ⊸ 1 applied to an open argument
    let d = lolli_l(ax("z", Type::var("a")), ax("w", Type::unit()), "w", "f").unwrap();
    assert!(conditions(&d, System::Lam).iter().any(|c| c.contains("(i)")));
    assert_eq!(check(&d, System::Imall2), Ok(()));
}

#[test]
fn additive_rules_by_system() {
    let shared = with_r(ax("x", Type::var("a")), ax("x", Type::var("a"))).unwrap();
    assert_eq!(check(&shared, System::Imall2), Ok(()));
    assert!(check(&shared, System::Lam).is_err());
    assert!(check(&shared, System::Imll2).is_err());
    let pair = with_r0(unit_id(), unit_id()).unwrap();
    assert_eq!(check(&pair, System::Lam), Ok(()));
    assert!(check(&pair, System::Imll2).is_err());
    let proj = with_l(ax("x", Type::var("a")), Index::First, "x", "p", Type::var("a")).unwrap();
    assert!(!conditions(&proj, System::Lam).is_empty());
}

#[test]
fn bad_decoration_is_reported() {
    let mut d = lolli_r(ax("x", Type::var("a")), "x").unwrap();
    d.conclusion.subject = Term::abs("y", Term::var("x"));
    assert!(check(&d, System::Imll2).is_err());
}

#[test]
fn metrics_examples() {
    let m = metrics(&ax("x", Type::var("a")));
    assert_eq!((m.size, m.weight, m.height_sum), (1, 0, 0));
    for n in 0..4 {
        let (_, d) = gen_ladd(n, &Type::unit()).unwrap();
        let m = metrics(&d);
        assert_eq!(m.weight, n);
        assert!(m.weight <= m.size && m.max_height < m.size);
    }
    let d = deadlock_example().unwrap();
    assert_eq!(metrics(&d).height_sum, d.height());
}

#[test]
fn forall_lazy_judgements() {
    let j = |ctx: Context, ty: Type| Judgement::new(ctx, Term::var("m"), ty);
    assert!(judgement_is_forall_lazy(&j(Context::new(), Type::with(Type::unit(), Type::unit()))));
    assert!(!judgement_is_forall_lazy(&j(Context::single("x", Type::unit()), Type::var("a"))));
    assert!(judgement_is_forall_lazy(&j(Context::single("x", Type::var("a")), Type::var("b"))));
}

#[test]
fn propagation_and_bounds_on_enumerated() {
    for a in [Type::unit(), Type::boolean(), Type::with(Type::boolean(), Type::unit())] {
        for (_, d) in enumerate_inhabitants(&a, None).unwrap().members {
            assert_eq!(check_lazy_propagation(&d), Ok(()));
            assert_eq!(eta_expanded(&d), Ok(true));
            let (m, j, twice) = check_size_bounds(&d).unwrap();
            assert!(m <= j && j <= twice);
        }
    }
    let (m, j, _) = check_size_bounds(&unit_id()).unwrap();
    assert_eq!((m, j), (2, 4));
    assert_eq!(check_size_bounds(&ax("x", Type::var("a"))).unwrap(), (1, 2, 2));
}

#[test]
fn eta_expanded_preconditions() {
    assert_eq!(eta_expanded(&ax("x", Type::var("a"))), Ok(true));
    assert_eq!(eta_expanded(&ax("x", Type::lolli(Type::var("a"), Type::var("a")))), Ok(false));
    assert_eq!(eta_expanded(&ax("x", Type::unit())), Err(PreconditionError::NotForallLazy));
    assert_eq!(eta_expanded(&deadlock_example().unwrap()), Err(PreconditionError::NotCutFree));
}

#[test]
fn corpus_properties() {
    for e in corpus(19, 20).unwrap() {
        let d = &e.derivation;
        for p in d.paths() {
            let node = d.at(&p).unwrap();
            for (x, _) in node.context().entries() {
                assert_eq!(node.subject().occurrences(x), 1, "{} at {p:?}", e.name);
            }
        }
        if d.ty().is_closed() {
            assert!(d.context().entries().iter().all(|(_, t)| t.is_closed()), "{}", e.name);
        }
    }
}
