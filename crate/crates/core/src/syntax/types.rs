//! Second-order types over `⊸`, `∧` and `∀`.
//!
//! Types are stored with names for printing, but equality and hashing are
//! taken up to renaming of bound type variables.

use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};

use super::fresh::fresh_name;

/// A type of the second-order additive/multiplicative fragment.
#[derive(Debug, Clone)]
pub enum Type {
    Var(String),
    Lolli(Box<Type>, Box<Type>),
    With(Box<Type>, Box<Type>),
    Forall(String, Box<Type>),
}

/// Sign of a subtype occurrence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Polarity {
    Positive,
    Negative,
}

impl Polarity {
    pub fn negate(self) -> Polarity {
        match self {
            Polarity::Positive => Polarity::Negative,
            Polarity::Negative => Polarity::Positive,
        }
    }
}

/// Connectives whose occurrences can be located by polarity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Connective {
    Forall,
    Lolli,
    With,
}

/// Classifier flags computed by [`Type::classify`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize)]
pub struct TypeFlags {
    pub closed: bool,
    pub lazy: bool,
    pub forall_lazy: bool,
    pub pi1: bool,
}

impl Type {
    pub fn var(name: impl Into<String>) -> Type {
        Type::Var(name.into())
    }

    pub fn lolli(a: Type, b: Type) -> Type {
        Type::Lolli(Box::new(a), Box::new(b))
    }

    pub fn with(a: Type, b: Type) -> Type {
        Type::With(Box::new(a), Box::new(b))
    }

    pub fn forall(binder: impl Into<String>, body: Type) -> Type {
        Type::Forall(binder.into(), Box::new(body))
    }

    /// `𝟏 ≜ ∀a.a ⊸ a`.
    pub fn unit() -> Type {
        Type::forall("a", Type::lolli(Type::var("a"), Type::var("a")))
    }

    /// `A ⊗ B ≜ ∀c.(A ⊸ B ⊸ c) ⊸ c` with `c` not free in `A`, `B`.
    pub fn tensor(a: Type, b: Type) -> Type {
        let mut avoid = a.free_vars();
        avoid.extend(b.free_vars());
        let c = pick_binder(&avoid);
        Type::forall(
            c.clone(),
            Type::lolli(
                Type::lolli(a, Type::lolli(b, Type::var(c.clone()))),
                Type::var(c),
            ),
        )
    }

    /// Boolean type `B ≜ ∀a.a ⊸ a ⊸ a ⊗ a`.
    pub fn boolean() -> Type {
        let a = Type::var("a");
        Type::forall(
            "a",
            Type::lolli(
                a.clone(),
                Type::lolli(a.clone(), Type::tensor(a.clone(), a)),
            ),
        )
    }

    /// `A_[n]`: `n`-fold nesting `A_[n-1] ∧ A_[n-1]`.
    pub fn nested_with(&self, n: usize) -> Type {
        let mut t = self.clone();
        for _ in 0..n {
            t = Type::with(t.clone(), t);
        }
        t
    }

    pub fn size(&self) -> usize {
        match self {
            Type::Var(_) => 1,
            Type::Lolli(a, b) | Type::With(a, b) => a.size() + b.size() + 1,
            Type::Forall(_, a) => a.size() + 1,
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free<'a>(&'a self, bound: &mut Vec<&'a str>, out: &mut BTreeSet<String>) {
        match self {
            Type::Var(v) => {
                if !bound.contains(&v.as_str()) {
                    out.insert(v.clone());
                }
            }
            Type::Lolli(a, b) | Type::With(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Type::Forall(x, a) => {
                bound.push(x);
                a.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    pub fn has_free(&self, name: &str) -> bool {
        match self {
            Type::Var(v) => v == name,
            Type::Lolli(a, b) | Type::With(a, b) => a.has_free(name) || b.has_free(name),
            Type::Forall(x, a) => x != name && a.has_free(name),
        }
    }

    /// Capture-avoiding substitution `self⟨b/alpha⟩`.
    pub fn subst(&self, alpha: &str, b: &Type) -> Type {
        let fv = b.free_vars();
        self.subst_with(alpha, b, &fv)
    }

    fn subst_with(&self, alpha: &str, b: &Type, fv: &BTreeSet<String>) -> Type {
        match self {
            Type::Var(v) if v == alpha => b.clone(),
            Type::Var(_) => self.clone(),
            Type::Lolli(x, y) => Type::lolli(x.subst_with(alpha, b, fv), y.subst_with(alpha, b, fv)),
            Type::With(x, y) => Type::with(x.subst_with(alpha, b, fv), y.subst_with(alpha, b, fv)),
            Type::Forall(x, body) => {
                if x == alpha || !body.has_free(alpha) {
                    self.clone()
                } else if fv.contains(x) {
                    let mut avoid = fv.clone();
                    avoid.extend(body.free_vars());
                    let fresh = fresh_avoiding(x, &avoid);
                    let renamed = body.subst(x, &Type::var(fresh.clone()));
                    Type::forall(fresh, renamed.subst_with(alpha, b, fv))
                } else {
                    Type::forall(x.clone(), body.subst_with(alpha, b, fv))
                }
            }
        }
    }

    /// Equality up to renaming of bound variables.
    pub fn alpha_eq(&self, other: &Type) -> bool {
        fn go<'a>(a: &'a Type, b: &'a Type, env: &mut Vec<(&'a str, &'a str)>) -> bool {
            match (a, b) {
                (Type::Var(x), Type::Var(y)) => {
                    for (l, r) in env.iter().rev() {
                        if *l == x.as_str() || *r == y.as_str() {
                            return *l == x.as_str() && *r == y.as_str();
                        }
                    }
                    x == y
                }
                (Type::Lolli(a1, a2), Type::Lolli(b1, b2))
                | (Type::With(a1, a2), Type::With(b1, b2)) => go(a1, b1, env) && go(a2, b2, env),
                (Type::Forall(x, a), Type::Forall(y, b)) => {
                    env.push((x, y));
                    let r = go(a, b, env);
                    env.pop();
                    r
                }
                _ => false,
            }
        }
        go(self, other, &mut Vec::new())
    }

    /// Nameless rendering: bound variables become binder-depth indices.
    pub fn canonical_key(&self) -> String {
        fn go(t: &Type, env: &mut Vec<String>, out: &mut String) {
            match t {
                Type::Var(v) => match env.iter().rposition(|b| b == v) {
                    Some(i) => {
                        out.push('#');
                        out.push_str(&(env.len() - 1 - i).to_string());
                    }
                    None => {
                        out.push('$');
                        out.push_str(v);
                    }
                },
                Type::Lolli(a, b) => {
                    out.push_str("(o ");
                    go(a, env, out);
                    out.push(' ');
                    go(b, env, out);
                    out.push(')');
                }
                Type::With(a, b) => {
                    out.push_str("(& ");
                    go(a, env, out);
                    out.push(' ');
                    go(b, env, out);
                    out.push(')');
                }
                Type::Forall(x, a) => {
                    out.push_str("(A ");
                    env.push(x.clone());
                    go(a, env, out);
                    env.pop();
                    out.push(')');
                }
            }
        }
        let mut out = String::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    /// Every occurrence of `connective` together with its polarity, in
    /// pre-order.
    pub fn polarity_occurrences(&self, connective: Connective) -> Vec<(Type, Polarity)> {
        let mut out = Vec::new();
        self.walk_polarity(Polarity::Positive, &mut |t, p| {
            let hit = matches!(
                (t, connective),
                (Type::Forall(..), Connective::Forall)
                    | (Type::Lolli(..), Connective::Lolli)
                    | (Type::With(..), Connective::With)
            );
            if hit {
                out.push((t.clone(), p));
            }
        });
        out
    }

    fn walk_polarity(&self, p: Polarity, f: &mut dyn FnMut(&Type, Polarity)) {
        f(self, p);
        match self {
            Type::Var(_) => {}
            Type::Lolli(a, b) => {
                a.walk_polarity(p.negate(), f);
                b.walk_polarity(p, f);
            }
            Type::With(a, b) => {
                a.walk_polarity(p, f);
                b.walk_polarity(p, f);
            }
            Type::Forall(_, a) => a.walk_polarity(p, f),
        }
    }

    fn has_occurrence(&self, connective: Connective, polarity: Polarity) -> bool {
        let mut found = false;
        self.walk_polarity(Polarity::Positive, &mut |t, p| {
            if p == polarity
                && matches!(
                    (t, connective),
                    (Type::Forall(..), Connective::Forall)
                        | (Type::Lolli(..), Connective::Lolli)
                        | (Type::With(..), Connective::With)
                )
            {
                found = true;
            }
        });
        found
    }

    pub fn contains_with(&self) -> bool {
        match self {
            Type::Var(_) => false,
            Type::With(..) => true,
            Type::Lolli(a, b) => a.contains_with() || b.contains_with(),
            Type::Forall(_, a) => a.contains_with(),
        }
    }

    pub fn is_forall_lazy(&self) -> bool {
        !self.has_occurrence(Connective::Forall, Polarity::Negative)
    }

    pub fn classify(&self) -> TypeFlags {
        let forall_lazy = self.is_forall_lazy();
        TypeFlags {
            closed: self.is_closed(),
            lazy: forall_lazy && !self.has_occurrence(Connective::With, Polarity::Positive),
            forall_lazy,
            pi1: forall_lazy && !self.contains_with(),
        }
    }

    /// Finds `b` with `body⟨b/alpha⟩ ≡ target`. Returns `Some(None)` when
    /// `alpha` does not occur free in `body` and the two agree otherwise.
    pub fn match_instance(body: &Type, alpha: &str, target: &Type) -> Option<Option<Type>> {
        fn go<'a>(
            p: &'a Type,
            t: &'a Type,
            alpha: &str,
            env: &mut Vec<(&'a str, &'a str)>,
            found: &mut Option<Type>,
        ) -> bool {
            match p {
                Type::Var(x) => {
                    let left = env.iter().rposition(|(l, _)| *l == x.as_str());
                    match left {
                        Some(i) => match t {
                            Type::Var(y) => env.iter().rposition(|(_, r)| *r == y.as_str()) == Some(i),
                            _ => false,
                        },
                        None if x == alpha => {
                            if env.iter().any(|(_, r)| t.has_free(r)) {
                                return false;
                            }
                            match found {
                                Some(prev) => prev.alpha_eq(t),
                                None => {
                                    *found = Some(t.clone());
                                    true
                                }
                            }
                        }
                        None => match t {
                            Type::Var(y) => {
                                y == x && !env.iter().any(|(_, r)| *r == y.as_str())
                            }
                            _ => false,
                        },
                    }
                }
                Type::Lolli(a1, a2) => match t {
                    Type::Lolli(b1, b2) => {
                        go(a1, b1, alpha, env, found) && go(a2, b2, alpha, env, found)
                    }
                    _ => false,
                },
                Type::With(a1, a2) => match t {
                    Type::With(b1, b2) => {
                        go(a1, b1, alpha, env, found) && go(a2, b2, alpha, env, found)
                    }
                    _ => false,
                },
                Type::Forall(x, a) => match t {
                    Type::Forall(y, b) => {
                        env.push((x, y));
                        let ok = if x == alpha {
                            // alpha is shadowed below this binder
                            a.alpha_eq_under(b, env)
                        } else {
                            go(a, b, alpha, env, found)
                        };
                        env.pop();
                        ok
                    }
                    _ => false,
                },
            }
        }
        let mut found = None;
        if go(body, target, alpha, &mut Vec::new(), &mut found) {
            Some(found)
        } else {
            None
        }
    }

    fn alpha_eq_under(&self, other: &Type, env: &[(&str, &str)]) -> bool {
        // rebuild both sides closed under the binder environment
        let mut l = self.clone();
        let mut r = other.clone();
        for (x, y) in env.iter().rev() {
            l = Type::forall(*x, l);
            r = Type::forall(*y, r);
        }
        l.alpha_eq(&r)
    }

    /// Recognises the unit encoding `∀a.a ⊸ a`.
    pub fn is_unit(&self) -> bool {
        self.alpha_eq(&Type::unit())
    }

    /// Recognises `∀c.(A ⊸ B ⊸ c) ⊸ c` with `c` not free in `A`, `B`.
    pub fn as_tensor(&self) -> Option<(&Type, &Type)> {
        if let Type::Forall(c, body) = self {
            if let Type::Lolli(f, r) = body.as_ref() {
                if let (Type::Lolli(a, rest), Type::Var(rc)) = (f.as_ref(), r.as_ref()) {
                    if let Type::Lolli(b, c2) = rest.as_ref() {
                        if rc == c
                            && matches!(c2.as_ref(), Type::Var(v) if v == c)
                            && !a.has_free(c)
                            && !b.has_free(c)
                        {
                            return Some((a, b));
                        }
                    }
                }
            }
        }
        None
    }

    pub fn is_boolean(&self) -> bool {
        self.alpha_eq(&Type::boolean())
    }
}

impl PartialEq for Type {
    fn eq(&self, other: &Type) -> bool {
        self.alpha_eq(other)
    }
}

impl Eq for Type {}

impl Hash for Type {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.canonical_key().hash(state)
    }
}

impl serde::Serialize for Type {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::frontend::print_type(self))
    }
}

fn pick_binder(avoid: &BTreeSet<String>) -> String {
    for c in ["c", "d", "e", "g", "h", "k", "r", "s"] {
        if !avoid.contains(c) {
            return c.to_string();
        }
    }
    fresh_avoiding("c", avoid)
}

pub(crate) fn fresh_avoiding(base: &str, avoid: &BTreeSet<String>) -> String {
    loop {
        let n = fresh_name(base);
        if !avoid.contains(&n) {
            return n;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(Type::var("a").size(), 1);
        assert_eq!(Type::unit().size(), 4);
        assert_eq!(Type::with(Type::var("a"), Type::var("b")).size(), 3);
        assert_eq!(Type::boolean().size(), 13);
    }

    #[test]
    fn alpha_equality_ignores_binder_names() {
        let a = Type::forall("x", Type::lolli(Type::var("x"), Type::var("x")));
        assert_eq!(a, Type::unit());
        let b = Type::forall("x", Type::lolli(Type::var("x"), Type::var("a")));
        assert_ne!(b, Type::unit());
    }

    #[test]
    fn substitution_avoids_capture() {
        // (∀a. a ⊸ b)⟨a/b⟩ must not capture
        let t = Type::forall("a", Type::lolli(Type::var("a"), Type::var("b")));
        let s = t.subst("b", &Type::var("a"));
        assert!(s.has_free("a"));
        let expected = Type::forall("z", Type::lolli(Type::var("z"), Type::var("a")));
        assert_eq!(s, expected);
        // (∀α.α⊸β)⟨𝟏/β⟩ = ∀α.α⊸𝟏
        let t = Type::forall("x", Type::lolli(Type::var("x"), Type::var("y")));
        let s = t.subst("y", &Type::unit());
        assert_eq!(s, Type::forall("x", Type::lolli(Type::var("x"), Type::unit())));
    }

    #[test]
    fn free_vars_of_forall() {
        let t = Type::forall("a", Type::lolli(Type::var("a"), Type::var("b")));
        assert_eq!(t.free_vars().into_iter().collect::<Vec<_>>(), vec!["b".to_string()]);
    }

    #[test]
    fn polarity_examples() {
        let t = Type::lolli(Type::forall("a", Type::var("a")), Type::var("b"));
        let occ = t.polarity_occurrences(Connective::Forall);
        assert_eq!(occ.len(), 1);
        assert_eq!(occ[0].1, Polarity::Negative);

        let occ = Type::boolean().polarity_occurrences(Connective::Forall);
        assert_eq!(occ.len(), 2);
        assert!(occ.iter().all(|(_, p)| *p == Polarity::Positive));

        let t = Type::with(Type::var("a"), Type::lolli(Type::var("b"), Type::var("c")));
        let occ = t.polarity_occurrences(Connective::Lolli);
        assert_eq!(occ.len(), 1);
        assert_eq!(occ[0].1, Polarity::Positive);
    }

    #[test]
    fn classification_examples() {
        let one = Type::unit().classify();
        assert!(one.closed && one.lazy && one.forall_lazy && one.pi1);
        let ww = Type::with(Type::unit(), Type::unit()).classify();
        assert!(ww.closed && ww.forall_lazy && !ww.lazy && !ww.pi1);
        let bad = Type::lolli(Type::forall("a", Type::var("a")), Type::var("b")).classify();
        assert_eq!(bad, TypeFlags::default());
    }

    #[test]
    fn instance_matching() {
        let body = Type::lolli(Type::var("a"), Type::var("a"));
        let target = Type::lolli(Type::unit(), Type::unit());
        assert_eq!(Type::match_instance(&body, "a", &target), Some(Some(Type::unit())));
        let bad = Type::lolli(Type::unit(), Type::var("b"));
        assert_eq!(Type::match_instance(&body, "a", &bad), None);
        // bound variables cannot escape
        let body = Type::forall("b", Type::lolli(Type::var("a"), Type::var("b")));
        let target = Type::forall("c", Type::lolli(Type::var("c"), Type::var("c")));
        assert_eq!(Type::match_instance(&body, "a", &target), None);
    }

    #[test]
    fn tensor_recognition() {
        let t = Type::tensor(Type::unit(), Type::boolean());
        let (a, b) = t.as_tensor().unwrap();
        assert!(a.is_unit());
        assert!(b.is_boolean());
        assert!(Type::unit().as_tensor().is_none());
    }
}
