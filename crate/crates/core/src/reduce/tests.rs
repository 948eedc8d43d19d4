use super::*;
use crate::derivation::{check, System};
use crate::frontend::parse_term;
use crate::gen::{corpus, gen_add, ladd_applied};
use crate::syntax::Type;

fn t(s: &str) -> Term {
    parse_term(s).unwrap()
}

fn at_root(kind: RedexKind) -> Redex {
    Redex { path: vec![], kind }
}

#[test]
fn step_examples() {
    let c = t("copy[I] I as x1,x2 in <x1,x2>");
    assert_eq!(step(&c, &at_root(RedexKind::Copy)).unwrap(), t("<I, I>"));
    assert_eq!(step(&t("p1(<tt, ff>)"), &at_root(RedexKind::Proj)).unwrap(), Term::tt());
    assert_eq!(step(&t("(\\x. x) I"), &at_root(RedexKind::Beta)).unwrap(), Term::identity());
    assert!(matches!(step(&t("I"), &at_root(RedexKind::Beta)), Err(ReduceError::NotARedex(_))));
    let stuck = t("copy[I] y as x1,x2 in <x1,x2>");
    assert!(step(&stuck, &at_root(RedexKind::Copy)).is_err());
}

#[test]
fn redex_search() {
    assert!(find_redexes(&t("I")).is_empty());
    let two = find_redexes(&t("(\\x. x) ((\\y. y) I)"));
    assert_eq!(two.len(), 2);
    assert!(two.iter().all(|r| r.kind == RedexKind::Beta));
    assert_eq!(two[0].path, Vec::<usize>::new());
    let inner = find_redexes(&t("copy[I] ((\\y. y) I) as a,b in <a,b>"));
    assert_eq!(inner, vec![Redex { path: vec![1], kind: RedexKind::Beta }]);
}

#[test]
fn normalize_examples() {
    let d = ladd_applied(1, &Type::unit(), Some(&Term::identity())).unwrap();
    let (nf, trace) = normalize(d.subject(), Strategy::Leftmost, d.subject().size()).unwrap();
    assert_eq!(trace.len(), 3);
    assert_eq!(nf, t("<I, I>"));
    assert!(trace.strictly_shrinking());
    let (term, _) = gen_add(2, &Term::tt(), &Type::boolean()).unwrap();
    let (nf, trace) = normalize(&term, Strategy::Rightmost, 100).unwrap();
    assert_eq!(trace.len(), 3);
    assert_eq!(nf, Term::tt().nested_pair(2));
    let eb = t("\\z. let z I I be x * y in let y be I in x");
    let (nf, _) = normalize(&Term::app(eb, Term::tt()), Strategy::Leftmost, 100).unwrap();
    assert_eq!(nf, Term::identity());
    assert!(matches!(normalize(&t("(\\x. x x) (\\x. x x)"), Strategy::Leftmost, 10), Err(ReduceError::BudgetExhausted(10))));
}

#[test]
fn eta_examples() {
    assert_eq!(eta_step(&t("\\x. f x")), Some(t("f")));
    assert_eq!(eta_step(&t("I")), None);
    assert_eq!(eta_step(&t("\\x. x I")), None);
    assert!(beta_eta_equal(&t("\\x. tt x"), &Term::tt(), 100).unwrap());
    assert!(!beta_eta_equal(&Term::tt(), &Term::ff(), 100).unwrap());
}

#[test]
fn fast_normaliser_agrees() {
    for e in corpus(3, 20).unwrap() {
        let m = e.derivation.subject();
        let (slow, trace) = normalize(m, Strategy::Leftmost, m.size()).unwrap();
        let (fast, steps) = beta_normalize(m, m.size()).unwrap();
        assert_eq!(slow, fast, "{}", e.name);
        assert_eq!(trace.len(), steps, "{}", e.name);
    }
}

#[test]
fn witness_on_the_copy_case() {
    let d = ladd_applied(1, &Type::unit(), None).unwrap();
    let mut cur = d;
    while let Some(r) = find_redexes(cur.subject()).into_iter().next() {
        let next = push_reduction(&cur, &r).unwrap();
        assert!(check(&next, System::Lam).is_ok());
        assert!(next.subject().size() < cur.subject().size());
        if r.kind == RedexKind::Copy {
            assert!(next.count_rule(|k| k == crate::derivation::Rule::WithR0) > 0);
        }
        cur = next;
    }
    assert_eq!(cur.subject(), &t("<I, I>"));
}

#[test]
fn witness_on_corpus_every_redex() {
    for e in corpus(11, 25).unwrap() {
        let d = &e.derivation;
        for r in find_redexes(d.subject()) {
            let next = push_reduction(d, &r).unwrap_or_else(|err| panic!("{}: {err}", e.name));
            assert_eq!(next.context(), d.context());
        }
    }
}

#[test]
fn strategies_agree_within_linear_bound() {
    for e in corpus(5, 25).unwrap() {
        let m = e.derivation.subject();
        let (reference, _) = normalize(m, Strategy::Leftmost, m.size()).unwrap();
        for s in [Strategy::Rightmost, Strategy::Random(1), Strategy::Random(2)] {
            let (nf, trace) = normalize(m, s, m.size()).unwrap();
            assert!(trace.len() <= m.size());
            assert!(trace.strictly_shrinking());
            assert_eq!(nf, reference, "{} under {s}", e.name);
        }
    }
}
