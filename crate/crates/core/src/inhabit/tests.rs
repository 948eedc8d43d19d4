use super::*;
use crate::derivation::{check, check_size_bounds, eta_expanded, System};
use crate::frontend::parse_type;
use crate::reduce::beta_eta_equal;

fn ty(s: &str) -> Type {
    parse_type(s).unwrap()
}

#[test]
fn unit_has_one_inhabitant() {
    let set = enumerate_inhabitants(&Type::unit(), None).unwrap();
    assert_eq!(set.len(), 1);
    assert!(beta_eta_equal(&set.members[0].0, &Term::identity(), 100).unwrap());
}

#[test]
fn booleans_and_pairs() {
    let set = enumerate_inhabitants(&Type::boolean(), None).unwrap();
    assert_eq!(set.len(), 2);
    for t in [Term::tt(), Term::ff()] {
        assert!(set.terms().any(|m| beta_eta_equal(m, &t, 100).unwrap()));
    }
    let bb = Type::tensor(Type::boolean(), Type::boolean());
    assert_eq!(enumerate_inhabitants(&bb, None).unwrap().len(), 4);
    let with = Type::with(Type::boolean(), Type::boolean());
    assert_eq!(enumerate_inhabitants(&with, None).unwrap().len(), 4);
}

#[test]
fn members_are_checked_values_within_bounds() {
    for a in [Type::unit(), Type::boolean(), ty("Bool * 1"), ty("1 & Bool"), ty("forall a. (a -o a) -o a -o a")] {
        let set = enumerate_inhabitants(&a, None).unwrap();
        let max = set.members[set.maximal.unwrap()].0.size();
        for (m, d) in &set.members {
            assert!(check(d, System::Lam).is_ok(), "{m}");
            assert_eq!(eta_expanded(d), Ok(true));
            assert!(m.is_value());
            assert!(check_size_bounds(d).is_ok());
            assert!(m.size() <= max);
        }
    }
}

#[test]
fn linear_numeral_type_has_one_inhabitant() {
    // only one linear numeral: λf.λx. f x
    let set = enumerate_inhabitants(&ty("forall a. (a -o a) -o a -o a"), None).unwrap();
    assert_eq!(set.len(), 1);
}

#[test]
fn maximal_value_examples() {
    let (v, _) = maximal_value(&Type::unit()).unwrap();
    assert!(beta_eta_equal(&v, &Term::identity(), 100).unwrap());
    let (v, _) = maximal_value(&Type::boolean()).unwrap();
    assert_eq!(v.size(), 8);
    assert!(beta_eta_equal(&v, &Term::tt(), 100).unwrap());
    assert!(matches!(maximal_value(&ty("forall a. a")), Err(InhabitError::Uninhabited(_))));
    assert!(matches!(enumerate_inhabitants(&ty("a -o a"), None), Err(InhabitError::NotClosedForallLazy(_))));
}

#[test]
fn tiny_bound_is_reported() {
    assert_eq!(enumerate_inhabitants(&Type::boolean(), Some(2)).unwrap_err(), InhabitError::BoundExceeded(2));
}

#[test]
fn eta_expand_axioms() {
    let d = build::ax("x", Type::unit());
    let e = eta_expand(&d).unwrap();
    assert!(check(&e, System::Lam).is_ok());
    assert!(crate::derivation::all_axioms_atomic(&e));
    assert!(beta_eta_equal(e.subject(), &Term::var("x"), 100).unwrap());
    let atomic = build::ax("x", Type::var("a"));
    assert_eq!(eta_expand(&atomic).unwrap().subject(), atomic.subject());
    let f = build::lolli_r(build::ax("f", ty("a -o b")), "f").unwrap();
    let e = eta_expand(&f).unwrap();
    assert_eq!(e.subject().size(), 5);
    assert_eq!(eta_expanded(&e), Ok(true));
    assert!(eta_expand(&build::ax("p", ty("a & a"))).is_err());
}
