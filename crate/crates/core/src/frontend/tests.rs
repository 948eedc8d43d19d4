use proptest::prelude::*;

use super::*;
use crate::derivation::{Derivation, Judgement, Rule};
use crate::syntax::{Context, Index, Term, Type};

#[test]
fn term_examples() {
    assert_eq!(parse_term("\\x. x").unwrap(), Term::abs("x", Term::var("x")));
    let c = parse_term("copy[I] y as x1,x2 in <x1,x2>").unwrap();
    let expected =
        Term::copy(Term::identity(), Term::var("y"), "x1", "x2", Term::var("x1"), Term::var("x2")).unwrap();
    assert_eq!(c, expected);
    assert_eq!(print_term(&Term::abs("x", Term::var("x"))), "\\x. x");
    assert_eq!(parse_term("f a b").unwrap(), Term::apps(Term::var("f"), [Term::var("a"), Term::var("b")]));
    assert_eq!(parse_term("p2(<I, tt>)").unwrap(), Term::proj(Index::Second, Term::pair(Term::identity(), Term::tt())));
}

#[test]
fn macros_expand() {
    assert_eq!(parse_term("\\x y. x * y").unwrap(), Term::tt());
    assert_eq!(parse_term("let m be I in n").unwrap(), Term::app(Term::var("m"), Term::var("n")));
    assert_eq!(
        parse_term("let m be a * b in f a b").unwrap(),
        Term::let_tensor(Term::var("m"), "a", "b", Term::apps(Term::var("f"), [Term::var("a"), Term::var("b")]))
    );
}

#[test]
fn type_examples() {
    assert_eq!(parse_type("forall a. a -o a").unwrap(), Type::unit());
    assert_eq!(parse_type("1").unwrap(), Type::unit());
    assert_eq!(parse_type("forall a. a -o a -o a * a").unwrap(), Type::boolean());
    assert_eq!(print_type(&Type::unit()), "forall a. a -o a");
    assert_eq!(print_type_with(&Type::unit(), PrintOptions { use_macros: true }), "1");
    assert_eq!(print_type_with(&Type::boolean(), PrintOptions { use_macros: true }), "Bool");
    assert_eq!(parse_type("a -o b -o c").unwrap(), Type::lolli(Type::var("a"), Type::lolli(Type::var("b"), Type::var("c"))));
}

#[test]
fn errors_are_located() {
    let e = parse_term("\\x. (x").unwrap_err();
    assert_eq!(e.span.start, 6);
    assert!(!e.message.is_empty());
    let e = parse_term("copy[y] z as a,b in <a,b>").unwrap_err();
    assert!(e.message.contains("not a value"));
    assert!(parse_type("a -o").is_err());
    assert!(parse_term("x $").is_err());
}

#[test]
fn derivation_round_trip() {
    let ax = Derivation::new(
        Rule::Ax,
        Judgement::new(Context::single("x", Type::var("a")), Term::var("x"), Type::var("a")),
        vec![],
    );
    let lam = Derivation::new(
        Rule::LolliR,
        Judgement::new(Context::new(), Term::abs("x", Term::var("x")), Type::lolli(Type::var("a"), Type::var("a"))),
        vec![ax],
    );
    let text = print_derivation(&lam);
    assert_eq!(parse_derivation(&text).unwrap(), lam);
    let commented = format!("; identity\n{text}");
    assert_eq!(parse_derivation(&commented).unwrap(), lam);
}

#[test]
fn derivation_errors() {
    assert!(parse_derivation("(rule nope (seq () \"x\" \"a\"))").is_err());
    assert!(parse_derivation("(rule ax (seq ((x \"a\")) \"x\" \"a\") extra)").is_err());
    let e = parse_derivation("(rule ax (seq ((x \"a\")) \"(x\" \"a\"))").unwrap_err();
    assert!(e.span.start > 20);
}

pub(crate) fn arb_type() -> impl Strategy<Value = Type> {
    let leaf = prop_oneof![
        Just(Type::var("a")),
        Just(Type::var("b")),
        Just(Type::var("c")),
        Just(Type::unit()),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Type::lolli(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Type::with(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Type::tensor(a, b)),
            (prop_oneof![Just("a"), Just("b")], inner).prop_map(|(x, a)| Type::forall(x, a)),
        ]
    })
}

pub(crate) fn arb_term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        Just(Term::var("x")),
        Just(Term::var("y")),
        Just(Term::var("z")),
        Just(Term::identity()),
    ];
    leaf.prop_recursive(4, 32, 3, |inner| {
        let guard = prop_oneof![
            Just(Term::identity()),
            Just(Term::tt()),
            Just(Term::pair(Term::identity(), Term::ff()))
        ];
        prop_oneof![
            (prop_oneof![Just("x"), Just("y")], inner.clone()).prop_map(|(x, m)| Term::abs(x, m)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::app(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::pair(a, b)),
            (any::<bool>(), inner.clone()).prop_map(|(f, m)| Term::proj(if f { Index::First } else { Index::Second }, m)),
            (guard, inner.clone(), inner.clone(), inner).prop_map(|(g, s, p, q)| {
                Term::copy(g, s, "x", "y", p, q).unwrap()
            }),
        ]
    })
}

proptest! {
    #[test]
    fn type_round_trip(a in arb_type()) {
        let printed = print_type(&a);
        prop_assert_eq!(parse_type(&printed).unwrap(), a.clone());
        let sugared = print_type_with(&a, PrintOptions { use_macros: true });
        prop_assert_eq!(parse_type(&sugared).unwrap(), a);
    }

    #[test]
    fn term_round_trip(t in arb_term()) {
        let printed = print_term(&t);
        prop_assert_eq!(parse_term(&printed).unwrap(), t.clone());
        let sugared = print_term_with(&t, PrintOptions { use_macros: true });
        prop_assert_eq!(parse_term(&sugared).unwrap(), t);
    }
}
