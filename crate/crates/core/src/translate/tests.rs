use super::*;
use crate::cutelim::{elim_step, eliminate_with, ElimOptions};
use crate::derivation::build;
use crate::gen::{corpus, ladd_applied};
use crate::inhabit::maximal_value;
use crate::reduce::beta_normalize;

fn b() -> Type {
    Type::boolean()
}

fn one() -> Type {
    Type::unit()
}

fn small_types() -> Vec<Type> {
    vec![
        one(),
        b(),
        Type::tensor(one(), one()),
        Type::tensor(b(), b()),
        translate_type(&Type::with(one(), one())),
        Type::tensor(b(), Type::tensor(one(), b())),
    ]
}

fn nf(t: &Term) -> Term {
    beta_normalize(t, NORMALIZE_BUDGET).unwrap().0
}

#[test]
fn translate_type_replaces_with_by_tensor() {
    assert_eq!(translate_type(&Type::var("a")), Type::var("a"));
    assert_eq!(translate_type(&Type::with(one(), one())), Type::tensor(one(), one()));
    let open = Type::with(Type::var("a"), Type::var("a"));
    assert_eq!(translate_type(&open.subst("a", &Type::with(b(), b()))), translate_type(&open).subst("a", &translate_type(&Type::with(b(), b()))));
}

#[test]
fn boolean_gadgets_behave() {
    let e = build_eraser(&b()).unwrap();
    let d = build_duplicator(&b()).unwrap();
    for v in [Term::tt(), Term::ff()] {
        assert_eq!(nf(&Term::app(e.clone(), v.clone())), Term::identity());
        assert_eq!(nf(&Term::app(d.clone(), v.clone())), Term::tensor_pair(v.clone(), v));
    }
    let e1 = build_eraser(&one()).unwrap();
    assert_eq!(e1.to_string(), Term::abs("z", Term::var("z")).to_string());
    assert_eq!(nf(&Term::app(e1, Term::identity())), Term::identity());
}

#[test]
fn contracts_hold_exhaustively() {
    for a in small_types() {
        let r = check_contracts(&a).unwrap();
        assert!(r.eraser_ok && r.duplicator_ok, "{a}: {r:?}");
        assert!(r.inhabitants >= 1);
    }
    assert_eq!(check_contracts(&Type::tensor(b(), b())).unwrap().inhabitants, 4);
}

#[test]
fn gadgets_are_linear() {
    for a in small_types() {
        assert!(build_eraser(&a).unwrap().is_linear());
        assert!(build_duplicator(&a).unwrap().is_linear());
    }
}

#[test]
fn size_formula_matches_built_duplicators() {
    for a in small_types() {
        assert_eq!(duplicator_size(&a).unwrap(), build_duplicator(&a).unwrap().size() as u64, "{a}");
    }
}

#[test]
fn unsupported_types_are_reported() {
    let a = Type::lolli(b(), b());
    assert!(matches!(build_eraser(&a), Err(TranslateError::Unsupported(_))));
    assert!(matches!(build_duplicator(&Type::var("a")), Err(TranslateError::Unsupported(_))));
}

#[test]
fn axiom_translates_to_its_variable() {
    let d = build::ax("x", b());
    assert_eq!(translate_derivation(&d).unwrap(), Term::var("x"));
    assert_eq!(compression_report(&d).unwrap().translated_size, 1);
}

#[test]
fn value_derivation_translates_to_the_value() {
    let (v, d) = maximal_value(&b()).unwrap();
    let t = translate_derivation(&d).unwrap();
    assert!(beta_eta_equal(&t, &v, NORMALIZE_BUDGET).unwrap());
}

#[test]
fn copy_of_unit_uses_the_duplicator() {
    let (_, v) = maximal_value(&one()).unwrap();
    let copy = build::with_r1(build::ax("x1", one()), build::ax("x2", one()), v, "x").unwrap();
    let t = translate_derivation(&copy).unwrap();
    let dup = build_duplicator(&one()).unwrap();
    let Term::App(f, _) = &t else { panic!("{t}") };
    let Term::App(head, _) = f.as_ref() else { panic!("{t}") };
    assert_eq!(head.as_ref(), &dup);
}

#[test]
fn translated_size_matches_built_terms() {
    for e in corpus(3, 15).unwrap() {
        let t = translate_derivation(&e.derivation).unwrap_or_else(|err| panic!("{}: {err}", e.name));
        let r = compression_report(&e.derivation).unwrap();
        assert_eq!(r.translated_size, t.size() as u64, "{}", e.name);
        assert!(t.is_linear(), "{}", e.name);
    }
}

#[test]
fn steps_are_sound_on_ladd() {
    for n in 1..=2 {
        for base in [one(), b()] {
            let d = ladd_applied(n, &base, None).unwrap();
            let (out, _) = eliminate_with(&d, ElimOptions::default()).unwrap();
            let t = translate_derivation(&d).unwrap();
            let u = translate_derivation(&out).unwrap();
            assert!(beta_eta_equal(&t, &u, NORMALIZE_BUDGET).unwrap());
        }
    }
}

#[test]
fn single_steps_are_sound() {
    let (_, v) = maximal_value(&b()).unwrap();
    let copy = build::with_r1(build::ax("x1", b()), build::ax("x2", b()), v.clone(), "x").unwrap();
    let ready = build::cut(v.clone(), copy, "x").unwrap();
    let after = elim_step(&ready, &[]).unwrap();
    assert!(check_soundness(&ready, &after).unwrap());
    let pair = build::with_r0(v.clone(), v).unwrap();
    let proj = build::with_l(build::ax("z", b()), Index::Second, "z", "y", b()).unwrap();
    let sym = build::cut(pair, proj, "y").unwrap();
    let after = elim_step(&sym, &[]).unwrap();
    assert!(check_soundness(&sym, &after).unwrap());
}

mod props {
    use super::*;
    use proptest::prelude::*;

    fn shape_type() -> impl Strategy<Value = Type> {
        let leaf = prop_oneof![Just(Type::unit()), Just(Type::boolean())];
        leaf.prop_recursive(3, 6, 2, |inner| (inner.clone(), inner).prop_map(|(a, b)| Type::tensor(a, b)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn gadgets_typecheck_and_size_formula_holds(a in shape_type()) {
            let d = build_duplicator(&a).unwrap();
            prop_assert_eq!(duplicator_size(&a).unwrap(), d.size() as u64);
            prop_assert!(d.is_linear());
            prop_assert_eq!(eraser_size(&a).unwrap(), build_eraser(&a).unwrap().size());
        }

        #[test]
        fn contracts_hold_on_random_small_shapes(a in shape_type().prop_filter("small", |t| t.size() <= 40)) {
            let r = check_contracts(&a).unwrap();
            prop_assert!(r.eraser_ok && r.duplicator_ok, "{:?}", r);
        }
    }
}
