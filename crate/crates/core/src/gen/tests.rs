use super::*;
use crate::reduce::{normalize, Strategy};

#[test]
fn add_sizes_and_steps() {
    assert_eq!(add_term(0, "x"), Term::var("x"));
    assert_eq!(add_term(3, "x").size(), 16);
    for n in 0..=4 {
        let (t, d) = gen_add(n, &Term::tt(), &Type::boolean()).unwrap();
        assert!(check(&d, System::Imall2).is_ok(), "{:?}", check(&d, System::Imall2));
        assert!(check(&d, System::Lam).is_err() || n == 0);
        let (nf, trace) = normalize(&t, Strategy::Leftmost, 1000).unwrap();
        assert_eq!(trace.len(), n + 1);
        assert_eq!(nf, Term::tt().nested_pair(n));
    }
}

#[test]
fn ladd_examples() {
    let (t, d) = gen_ladd(0, &Type::unit()).unwrap();
    assert_eq!(t, Term::identity());
    assert!(check(&d, System::Lam).is_ok());
    let d = ladd_applied(1, &Type::unit(), None).unwrap();
    assert!(check(&d, System::Lam).is_ok());
    let (nf, trace) = normalize(d.subject(), Strategy::Leftmost, 100).unwrap();
    assert_eq!(trace.len(), 3);
    assert_eq!(nf, Term::pair(Term::identity(), Term::identity()));
}

#[test]
fn ladd_size_closed_form() {
    for base in [Type::unit(), Type::boolean()] {
        let (v, _) = maximal_value(&base).unwrap();
        for n in 0..=4 {
            let (t, d) = gen_ladd(n, &base).unwrap();
            assert!(check(&d, System::Lam).is_ok());
            let Term::Abs(_, body) = &t else { panic!() };
            let guards: usize = (0..n).map(|i| v.nested_pair(i).size()).sum();
            assert_eq!(body.size(), 7 * n + guards + 1);
            assert_eq!(body.as_ref(), &ladd_term(n, "x", &v));
        }
    }
}

#[test]
fn corpus_is_checked() {
    let c = corpus(7, 30).unwrap();
    assert!(c.len() >= 50);
    for e in &c {
        assert!(check(&e.derivation, System::Lam).is_ok(), "{}", e.name);
    }
}

#[test]
fn uninhabited_base_is_an_error() {
    let bad = Type::forall("a", Type::var("a"));
    assert!(matches!(gen_ladd(2, &bad), Err(GenError::Inhabit(_))));
    assert!(matches!(gen_add(1, &Term::identity(), &Type::boolean()), Err(GenError::BaseTyping { .. })));
}
