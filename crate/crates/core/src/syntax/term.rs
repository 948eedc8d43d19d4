//! Terms of the copy calculus. Pure linear λ-terms and the pair/projection
//! calculus are sub-languages of the same datatype.

use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};

use super::types::fresh_avoiding;
use super::SyntaxError;

/// Projection index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Index {
    First,
    Second,
}

impl Index {
    pub fn number(self) -> u8 {
        match self {
            Index::First => 1,
            Index::Second => 2,
        }
    }

    pub fn from_number(i: u8) -> Option<Index> {
        match i {
            1 => Some(Index::First),
            2 => Some(Index::Second),
            _ => None,
        }
    }

    pub fn other(self) -> Index {
        match self {
            Index::First => Index::Second,
            Index::Second => Index::First,
        }
    }
}

/// `copy^guard scrutinee as left_binder, right_binder in <left, right>`.
#[derive(Debug, Clone)]
pub struct CopyTerm {
    pub guard: Term,
    pub scrutinee: Term,
    pub left_binder: String,
    pub right_binder: String,
    pub left: Term,
    pub right: Term,
}

#[derive(Debug, Clone)]
pub enum Term {
    Var(String),
    Abs(String, Box<Term>),
    App(Box<Term>, Box<Term>),
    Pair(Box<Term>, Box<Term>),
    Proj(Index, Box<Term>),
    Copy(Box<CopyTerm>),
}

impl Term {
    pub fn var(x: impl Into<String>) -> Term {
        Term::Var(x.into())
    }

    pub fn abs(x: impl Into<String>, body: Term) -> Term {
        Term::Abs(x.into(), Box::new(body))
    }

    pub fn app(f: Term, a: Term) -> Term {
        Term::App(Box::new(f), Box::new(a))
    }

    /// Left-nested application `f a1 ... an`.
    pub fn apps(f: Term, args: impl IntoIterator<Item = Term>) -> Term {
        args.into_iter().fold(f, Term::app)
    }

    pub fn pair(a: Term, b: Term) -> Term {
        Term::Pair(Box::new(a), Box::new(b))
    }

    pub fn proj(i: Index, t: Term) -> Term {
        Term::Proj(i, Box::new(t))
    }

    /// Builds a copy node; the guard must be a value.
    pub fn copy(
        guard: Term,
        scrutinee: Term,
        left_binder: impl Into<String>,
        right_binder: impl Into<String>,
        left: Term,
        right: Term,
    ) -> Result<Term, SyntaxError> {
        if !guard.is_value() {
            return Err(SyntaxError::GuardNotValue(guard.to_string()));
        }
        Ok(Term::copy_node(guard, scrutinee, left_binder, right_binder, left, right))
    }

    pub(crate) fn copy_node(
        guard: Term,
        scrutinee: Term,
        left_binder: impl Into<String>,
        right_binder: impl Into<String>,
        left: Term,
        right: Term,
    ) -> Term {
        Term::Copy(Box::new(CopyTerm {
            guard,
            scrutinee,
            left_binder: left_binder.into(),
            right_binder: right_binder.into(),
            left,
            right,
        }))
    }

    /// `I ≜ λx.x`
    pub fn identity() -> Term {
        Term::abs("x", Term::var("x"))
    }

    /// `M ⊗ N ≜ λz. z M N`
    pub fn tensor_pair(m: Term, n: Term) -> Term {
        let mut avoid = m.free_vars();
        avoid.extend(n.free_vars());
        let z = pick(&["z", "w", "k"], &avoid);
        Term::abs(z.clone(), Term::apps(Term::var(z), [m, n]))
    }

    /// `let M be I in N ≜ M N`
    pub fn let_unit(m: Term, n: Term) -> Term {
        Term::app(m, n)
    }

    /// `let M be x ⊗ y in N ≜ M (λx.λy.N)`
    pub fn let_tensor(m: Term, x: impl Into<String>, y: impl Into<String>, n: Term) -> Term {
        Term::app(m, Term::abs(x, Term::abs(y, n)))
    }

    /// `tt ≜ λx.λy. x ⊗ y`
    pub fn tt() -> Term {
        Term::abs("x", Term::abs("y", Term::tensor_pair(Term::var("x"), Term::var("y"))))
    }

    /// `ff ≜ λx.λy. y ⊗ x`
    pub fn ff() -> Term {
        Term::abs("x", Term::abs("y", Term::tensor_pair(Term::var("y"), Term::var("x"))))
    }

    /// `M_[n]`: `n`-fold nesting `<M_[n-1], M_[n-1]>`.
    pub fn nested_pair(&self, n: usize) -> Term {
        let mut t = self.clone();
        for _ in 0..n {
            t = Term::pair(t.clone(), t);
        }
        t
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::Abs(_, m) | Term::Proj(_, m) => m.size() + 1,
            Term::App(m, n) | Term::Pair(m, n) => m.size() + n.size() + 1,
            Term::Copy(c) => c.guard.size() + c.scrutinee.size() + c.left.size() + c.right.size() + 2,
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free<'a>(&'a self, bound: &mut Vec<&'a str>, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                if !bound.contains(&v.as_str()) {
                    out.insert(v.clone());
                }
            }
            Term::Abs(x, m) => {
                bound.push(x);
                m.collect_free(bound, out);
                bound.pop();
            }
            Term::App(m, n) | Term::Pair(m, n) => {
                m.collect_free(bound, out);
                n.collect_free(bound, out);
            }
            Term::Proj(_, m) => m.collect_free(bound, out),
            Term::Copy(c) => {
                c.guard.collect_free(bound, out);
                c.scrutinee.collect_free(bound, out);
                bound.push(&c.left_binder);
                c.left.collect_free(bound, out);
                bound.pop();
                bound.push(&c.right_binder);
                c.right.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Number of free occurrences of `x`.
    pub fn occurrences(&self, x: &str) -> usize {
        match self {
            Term::Var(v) => usize::from(v == x),
            Term::Abs(y, m) => {
                if y == x {
                    0
                } else {
                    m.occurrences(x)
                }
            }
            Term::App(m, n) | Term::Pair(m, n) => m.occurrences(x) + n.occurrences(x),
            Term::Proj(_, m) => m.occurrences(x),
            Term::Copy(c) => {
                c.guard.occurrences(x)
                    + c.scrutinee.occurrences(x)
                    + if c.left_binder == x { 0 } else { c.left.occurrences(x) }
                    + if c.right_binder == x { 0 } else { c.right.occurrences(x) }
            }
        }
    }

    /// Capture-avoiding substitution `self[n/x]`.
    pub fn subst(&self, x: &str, n: &Term) -> Term {
        let fv = n.free_vars();
        self.subst_with(x, n, &fv)
    }

    fn subst_with(&self, x: &str, n: &Term, fv: &BTreeSet<String>) -> Term {
        match self {
            Term::Var(v) if v == x => n.clone(),
            Term::Var(_) => self.clone(),
            Term::Abs(y, m) => match rebind(y, m, x, fv) {
                None => self.clone(),
                Some((y, m)) => Term::abs(y, m.subst_with(x, n, fv)),
            },
            Term::App(a, b) => Term::app(a.subst_with(x, n, fv), b.subst_with(x, n, fv)),
            Term::Pair(a, b) => Term::pair(a.subst_with(x, n, fv), b.subst_with(x, n, fv)),
            Term::Proj(i, a) => Term::proj(*i, a.subst_with(x, n, fv)),
            Term::Copy(c) => {
                let branch = |b: &String, t: &Term| match rebind(b, t, x, fv) {
                    None => (b.clone(), t.clone()),
                    Some((b, t)) => {
                        let t = t.subst_with(x, n, fv);
                        (b, t)
                    }
                };
                let (lb, l) = branch(&c.left_binder, &c.left);
                let (rb, r) = branch(&c.right_binder, &c.right);
                Term::copy_node(
                    c.guard.subst_with(x, n, fv),
                    c.scrutinee.subst_with(x, n, fv),
                    lb,
                    rb,
                    l,
                    r,
                )
            }
        }
    }

    /// Equality up to renaming of bound variables.
    pub fn alpha_eq(&self, other: &Term) -> bool {
        fn var_eq(env: &[(&str, &str)], x: &str, y: &str) -> bool {
            for (l, r) in env.iter().rev() {
                if *l == x || *r == y {
                    return *l == x && *r == y;
                }
            }
            x == y
        }
        fn go<'a>(a: &'a Term, b: &'a Term, env: &mut Vec<(&'a str, &'a str)>) -> bool {
            match (a, b) {
                (Term::Var(x), Term::Var(y)) => var_eq(env, x, y),
                (Term::Abs(x, m), Term::Abs(y, n)) => {
                    env.push((x, y));
                    let r = go(m, n, env);
                    env.pop();
                    r
                }
                (Term::App(a1, a2), Term::App(b1, b2)) | (Term::Pair(a1, a2), Term::Pair(b1, b2)) => {
                    go(a1, b1, env) && go(a2, b2, env)
                }
                (Term::Proj(i, m), Term::Proj(j, n)) => i == j && go(m, n, env),
                (Term::Copy(c), Term::Copy(d)) => {
                    if !(go(&c.guard, &d.guard, env) && go(&c.scrutinee, &d.scrutinee, env)) {
                        return false;
                    }
                    env.push((&c.left_binder, &d.left_binder));
                    let l = go(&c.left, &d.left, env);
                    env.pop();
                    env.push((&c.right_binder, &d.right_binder));
                    let r = go(&c.right, &d.right, env);
                    env.pop();
                    l && r
                }
                _ => false,
            }
        }
        go(self, other, &mut Vec::new())
    }

    /// Nameless rendering, equal for α-equivalent terms.
    pub fn canonical_key(&self) -> String {
        fn go(t: &Term, env: &mut Vec<String>, out: &mut String) {
            match t {
                Term::Var(v) => match env.iter().rposition(|b| b == v) {
                    Some(i) => {
                        out.push('#');
                        out.push_str(&(env.len() - 1 - i).to_string());
                    }
                    None => {
                        out.push('$');
                        out.push_str(v);
                    }
                },
                Term::Abs(x, m) => {
                    out.push_str("(L ");
                    env.push(x.clone());
                    go(m, env, out);
                    env.pop();
                    out.push(')');
                }
                Term::App(a, b) => {
                    out.push_str("(@ ");
                    go(a, env, out);
                    out.push(' ');
                    go(b, env, out);
                    out.push(')');
                }
                Term::Pair(a, b) => {
                    out.push_str("(P ");
                    go(a, env, out);
                    out.push(' ');
                    go(b, env, out);
                    out.push(')');
                }
                Term::Proj(i, a) => {
                    out.push_str(&format!("(p{} ", i.number()));
                    go(a, env, out);
                    out.push(')');
                }
                Term::Copy(c) => {
                    out.push_str("(C ");
                    go(&c.guard, env, out);
                    out.push(' ');
                    go(&c.scrutinee, env, out);
                    out.push(' ');
                    env.push(c.left_binder.clone());
                    go(&c.left, env, out);
                    env.pop();
                    out.push(' ');
                    env.push(c.right_binder.clone());
                    go(&c.right, env, out);
                    env.pop();
                    out.push(')');
                }
            }
        }
        let mut out = String::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn has_copy_or_proj(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::Abs(_, m) => m.has_copy_or_proj(),
            Term::App(a, b) | Term::Pair(a, b) => a.has_copy_or_proj() || b.has_copy_or_proj(),
            Term::Proj(..) | Term::Copy(_) => true,
        }
    }

    pub fn has_pair(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::Abs(_, m) | Term::Proj(_, m) => m.has_pair(),
            Term::App(a, b) => a.has_pair() || b.has_pair(),
            Term::Pair(..) => true,
            Term::Copy(_) => true,
        }
    }

    fn has_beta_redex(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::Abs(_, m) | Term::Proj(_, m) => m.has_beta_redex(),
            Term::App(a, b) => matches!(**a, Term::Abs(..)) || a.has_beta_redex() || b.has_beta_redex(),
            Term::Pair(a, b) => a.has_beta_redex() || b.has_beta_redex(),
            Term::Copy(c) => {
                c.scrutinee.has_beta_redex() || c.left.has_beta_redex() || c.right.has_beta_redex()
            }
        }
    }

    /// Closed, copy- and projection-free, and normal for `(λx.U)V → U[V/x]`.
    pub fn is_value(&self) -> bool {
        !self.has_copy_or_proj() && self.is_closed() && !self.has_beta_redex()
    }

    /// Each free variable occurs once and each λ-bound variable once in its
    /// body (the usual definition of linear λ-terms, extended to copy
    /// binders).
    pub fn is_linear(&self) -> bool {
        fn go(t: &Term) -> bool {
            match t {
                Term::Var(_) => true,
                Term::Abs(x, m) => m.occurrences(x) == 1 && go(m),
                Term::App(a, b) | Term::Pair(a, b) => {
                    let fa = a.free_vars();
                    b.free_vars().is_disjoint(&fa) && go(a) && go(b)
                }
                Term::Proj(_, m) => go(m),
                Term::Copy(c) => {
                    c.left.occurrences(&c.left_binder) == 1
                        && c.right.occurrences(&c.right_binder) == 1
                        && go(&c.scrutinee)
                        && go(&c.left)
                        && go(&c.right)
                }
            }
        }
        go(self)
    }

    /// Pure λ-term: no pairs, projections or copies.
    pub fn is_pure_lambda(&self) -> bool {
        match self {
            Term::Var(_) => true,
            Term::Abs(_, m) => m.is_pure_lambda(),
            Term::App(a, b) => a.is_pure_lambda() && b.is_pure_lambda(),
            _ => false,
        }
    }

    /// All variable names occurring anywhere (free or bound).
    pub fn all_names(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Abs(x, m) => {
                out.insert(x.clone());
                m.all_names(out);
            }
            Term::App(a, b) | Term::Pair(a, b) => {
                a.all_names(out);
                b.all_names(out);
            }
            Term::Proj(_, m) => m.all_names(out),
            Term::Copy(c) => {
                out.insert(c.left_binder.clone());
                out.insert(c.right_binder.clone());
                c.guard.all_names(out);
                c.scrutinee.all_names(out);
                c.left.all_names(out);
                c.right.all_names(out);
            }
        }
    }
}

/// Renames binder `y` if it would capture a free variable of the substituted
/// term. Returns `None` when `y` shadows `x`.
fn rebind(y: &str, body: &Term, x: &str, fv: &BTreeSet<String>) -> Option<(String, Term)> {
    if y == x {
        return None;
    }
    if !fv.contains(y) || body.occurrences(x) == 0 {
        return Some((y.to_string(), body.clone()));
    }
    let mut avoid = fv.clone();
    body.all_names(&mut avoid);
    avoid.insert(x.to_string());
    let fresh = fresh_avoiding(y, &avoid);
    let renamed = body.subst(y, &Term::var(fresh.clone()));
    Some((fresh, renamed))
}

fn pick(candidates: &[&str], avoid: &BTreeSet<String>) -> String {
    candidates
        .iter()
        .find(|c| !avoid.contains(**c))
        .map(|c| c.to_string())
        .unwrap_or_else(|| fresh_avoiding("z", avoid))
}

impl PartialEq for Term {
    fn eq(&self, other: &Term) -> bool {
        self.alpha_eq(other)
    }
}

impl Eq for Term {}

impl Hash for Term {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.canonical_key().hash(state)
    }
}

impl serde::Serialize for Term {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::frontend::print_term(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &str) -> Term {
        Term::var(x)
    }

    #[test]
    fn sizes() {
        assert_eq!(v("x").size(), 1);
        assert_eq!(Term::tt().size(), 8);
        let c = Term::copy(Term::identity(), Term::identity(), "x1", "x2", v("x1"), v("x2")).unwrap();
        assert_eq!(c.size(), 8);
    }

    #[test]
    fn copy_guard_must_be_value() {
        let redex = Term::app(Term::identity(), Term::identity());
        assert!(Term::copy(redex, v("y"), "a", "b", v("a"), v("b")).is_err());
        assert!(Term::copy(v("z"), v("y"), "a", "b", v("a"), v("b")).is_err());
    }

    #[test]
    fn free_vars_respect_copy_binders() {
        let c = Term::copy(Term::identity(), v("y"), "x1", "x2", v("x1"), v("x2")).unwrap();
        assert_eq!(c.free_vars().into_iter().collect::<Vec<_>>(), vec!["y".to_string()]);
        assert!(Term::identity().free_vars().is_empty());
    }

    #[test]
    fn substitution_avoids_capture() {
        let t = Term::abs("y", Term::app(v("x"), v("y")));
        assert_eq!(t.subst("x", &Term::identity()), Term::abs("y", Term::app(Term::identity(), v("y"))));
        let captured = t.subst("x", &v("y"));
        assert_eq!(captured.free_vars().into_iter().collect::<Vec<_>>(), vec!["y".to_string()]);
        assert!(matches!(&captured, Term::Abs(b, _) if b != "y"));
        // shadowed binder stops substitution
        let s = Term::abs("x", v("x"));
        assert_eq!(s.subst("x", &v("z")), s);
    }

    #[test]
    fn substitution_size_for_linear_occurrence() {
        let t = Term::app(v("f"), Term::abs("y", Term::app(v("x"), v("y"))));
        let n = Term::tt();
        assert_eq!(t.subst("x", &n).size(), t.size() + n.size() - 1);
    }

    #[test]
    fn values() {
        assert!(Term::identity().is_value());
        assert!(Term::pair(Term::identity(), Term::abs("x", Term::app(v("x"), Term::identity()))).is_value());
        assert!(!Term::proj(Index::First, Term::pair(Term::identity(), Term::identity())).is_value());
        assert!(!Term::app(Term::identity(), Term::identity()).is_value());
        assert!(!v("x").is_value());
    }

    #[test]
    fn alpha_equality_and_hash_agree() {
        use std::collections::HashSet;
        let a = Term::abs("x", v("x"));
        let b = Term::abs("y", v("y"));
        assert_eq!(a, b);
        assert_ne!(Term::tt(), Term::ff());
        let set: HashSet<Term> = [a, b].into_iter().collect();
        assert_eq!(set.len(), 1);
        assert_ne!(Term::abs("x", v("z")), Term::abs("z", v("z")));
    }

    #[test]
    fn linearity() {
        assert!(Term::tt().is_linear());
        assert!(!Term::abs("x", Term::app(v("x"), v("x"))).is_linear());
        assert!(!Term::abs("x", v("y")).is_linear());
    }
}
