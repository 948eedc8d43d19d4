//! Church-style terms read off a derivation: type abstraction and
//! instantiation are explicit and cuts survive as `Let` nodes, so a
//! redex can be fired while keeping enough information to rebuild a
//! sequent derivation of the reduct.

use std::collections::BTreeSet;

use super::{subterm, RedexKind};
use crate::derivation::build::{self, BuildError};
use crate::derivation::{ctx_diff, Derivation, Rule};
use crate::syntax::fresh::fresh_name;
use crate::syntax::{Index, Term, Type};

#[derive(Debug, Clone)]
pub(crate) enum Ann {
    Var(String, Type),
    Abs(String, Type, Box<Ann>),
    App(Box<Ann>, Box<Ann>),
    TAbs(String, Box<Ann>),
    TApp(Box<Ann>, Type),
    Pair(Box<Ann>, Box<Ann>),
    Proj(Index, Box<Ann>),
    Copy(Box<AnnCopy>),
    /// A cut: `Let(x, L, R)` stands for `R[L/x]`.
    Let(String, Box<Ann>, Box<Ann>),
}

#[derive(Debug, Clone)]
pub(crate) struct AnnCopy {
    pub guard: Derivation,
    pub scrutinee: Ann,
    pub x1: String,
    pub x2: String,
    pub left: Ann,
    pub right: Ann,
}

type R<T> = Result<T, String>;

fn bx(a: Ann) -> Box<Ann> {
    Box::new(a)
}

fn build_err(e: BuildError) -> String {
    e.to_string()
}

impl Ann {
    pub fn erase(&self) -> Term {
        match self {
            Ann::Var(x, _) => Term::var(x.clone()),
            Ann::Abs(x, _, b) => Term::abs(x.clone(), b.erase()),
            Ann::App(f, a) => Term::app(f.erase(), a.erase()),
            Ann::TAbs(_, b) | Ann::TApp(b, _) => b.erase(),
            Ann::Pair(a, b) => Term::pair(a.erase(), b.erase()),
            Ann::Proj(i, p) => Term::proj(*i, p.erase()),
            Ann::Copy(c) => Term::copy_node(
                c.guard.subject().clone(),
                c.scrutinee.erase(),
                c.x1.clone(),
                c.x2.clone(),
                c.left.erase(),
                c.right.erase(),
            ),
            Ann::Let(x, l, r) => r.erase().subst(x, &l.erase()),
        }
    }

    pub fn ty(&self) -> R<Type> {
        Ok(match self {
            Ann::Var(_, t) => t.clone(),
            Ann::Abs(_, a, b) => Type::lolli(a.clone(), b.ty()?),
            Ann::App(f, _) => match f.ty()? {
                Type::Lolli(_, b) => *b,
                t => return Err(format!("applying a term of type {t}")),
            },
            Ann::TAbs(a, b) => Type::forall(a.clone(), b.ty()?),
            Ann::TApp(g, t) => match g.ty()? {
                Type::Forall(a, b) => b.subst(&a, t),
                u => return Err(format!("instantiating a term of type {u}")),
            },
            Ann::Pair(a, b) => Type::with(a.ty()?, b.ty()?),
            Ann::Proj(i, p) => match p.ty()? {
                Type::With(a, b) => match i {
                    Index::First => *a,
                    Index::Second => *b,
                },
                t => return Err(format!("projecting a term of type {t}")),
            },
            Ann::Copy(c) => Type::with(c.left.ty()?, c.right.ty()?),
            Ann::Let(_, _, r) => r.ty()?,
        })
    }

    fn free_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Ann::Var(x, _) => {
                out.insert(x.clone());
            }
            Ann::Abs(x, _, b) => {
                let mut inner = BTreeSet::new();
                b.free_vars(&mut inner);
                inner.remove(x);
                out.extend(inner);
            }
            Ann::Let(x, l, r) => {
                l.free_vars(out);
                let mut inner = BTreeSet::new();
                r.free_vars(&mut inner);
                inner.remove(x);
                out.extend(inner);
            }
            Ann::App(a, b) | Ann::Pair(a, b) => {
                a.free_vars(out);
                b.free_vars(out);
            }
            Ann::TAbs(_, b) | Ann::TApp(b, _) | Ann::Proj(_, b) => b.free_vars(out),
            Ann::Copy(c) => {
                c.scrutinee.free_vars(out);
                for (x, b) in [(&c.x1, &c.left), (&c.x2, &c.right)] {
                    let mut inner = BTreeSet::new();
                    b.free_vars(&mut inner);
                    inner.remove(x);
                    out.extend(inner);
                }
            }
        }
    }

    /// Every type-variable name mentioned anywhere; a safe over-approximation
    /// of the free type variables.
    fn type_names(&self, out: &mut BTreeSet<String>) {
        match self {
            Ann::Var(_, t) => out.extend(t.free_vars()),
            Ann::Abs(_, t, b) => {
                out.extend(t.free_vars());
                b.type_names(out);
            }
            Ann::TAbs(a, b) => {
                out.insert(a.clone());
                b.type_names(out);
            }
            Ann::TApp(b, t) => {
                out.extend(t.free_vars());
                b.type_names(out);
            }
            Ann::App(a, b) | Ann::Pair(a, b) | Ann::Let(_, a, b) => {
                a.type_names(out);
                b.type_names(out);
            }
            Ann::Proj(_, b) => b.type_names(out),
            Ann::Copy(c) => {
                c.scrutinee.type_names(out);
                c.left.type_names(out);
                c.right.type_names(out);
            }
        }
    }

    fn occurs(&self, x: &str) -> bool {
        let mut fv = BTreeSet::new();
        self.free_vars(&mut fv);
        fv.contains(x)
    }

    /// Capture-avoiding `self[n/x]`.
    pub fn subst(&self, x: &str, n: &Ann) -> Ann {
        let mut fv = BTreeSet::new();
        n.free_vars(&mut fv);
        let mut tv = BTreeSet::new();
        n.type_names(&mut tv);
        self.subst_with(x, n, &fv, &tv)
    }

    fn subst_with(&self, x: &str, n: &Ann, fv: &BTreeSet<String>, tv: &BTreeSet<String>) -> Ann {
        if !self.occurs(x) {
            return self.clone();
        }
        let go = |a: &Ann| a.subst_with(x, n, fv, tv);
        // renames a binder `y` of type `t` in `body` when it would capture
        let bind = |y: &String, t: &Type, body: &Ann| -> (String, Ann) {
            if fv.contains(y) {
                let fresh = fresh_name(y);
                let renamed = body.subst(y, &Ann::Var(fresh.clone(), t.clone()));
                (fresh, renamed.subst_with(x, n, fv, tv))
            } else {
                (y.clone(), body.subst_with(x, n, fv, tv))
            }
        };
        match self {
            Ann::Var(..) => n.clone(),
            Ann::Abs(y, t, b) => {
                if y == x {
                    return self.clone();
                }
                let (y, b) = bind(y, t, b);
                Ann::Abs(y, t.clone(), bx(b))
            }
            Ann::Let(y, l, r) => {
                let l = go(l);
                if y == x {
                    return Ann::Let(y.clone(), bx(l), r.clone());
                }
                let t = l.ty().unwrap_or_else(|_| Type::unit());
                let (y, r) = bind(y, &t, r);
                Ann::Let(y, bx(l), bx(r))
            }
            Ann::App(a, b) => Ann::App(bx(go(a)), bx(go(b))),
            Ann::Pair(a, b) => Ann::Pair(bx(go(a)), bx(go(b))),
            Ann::Proj(i, b) => Ann::Proj(*i, bx(go(b))),
            Ann::TApp(b, t) => Ann::TApp(bx(go(b)), t.clone()),
            Ann::TAbs(a, b) => {
                if tv.contains(a) {
                    let fresh = fresh_name(a);
                    let b = b.tsubst(a, &Type::var(fresh.clone()));
                    Ann::TAbs(fresh, bx(go(&b)))
                } else {
                    Ann::TAbs(a.clone(), bx(go(b)))
                }
            }
            // branches are closed apart from their binders
            Ann::Copy(c) => {
                let mut c = (**c).clone();
                c.scrutinee = go(&c.scrutinee);
                Ann::Copy(Box::new(c))
            }
        }
    }

    /// Capture-avoiding type substitution `self⟨t/alpha⟩`.
    pub fn tsubst(&self, alpha: &str, t: &Type) -> Ann {
        let go = |a: &Ann| a.tsubst(alpha, t);
        match self {
            Ann::Var(x, u) => Ann::Var(x.clone(), u.subst(alpha, t)),
            Ann::Abs(x, u, b) => Ann::Abs(x.clone(), u.subst(alpha, t), bx(go(b))),
            Ann::App(a, b) => Ann::App(bx(go(a)), bx(go(b))),
            Ann::Pair(a, b) => Ann::Pair(bx(go(a)), bx(go(b))),
            Ann::Let(x, a, b) => Ann::Let(x.clone(), bx(go(a)), bx(go(b))),
            Ann::Proj(i, b) => Ann::Proj(*i, bx(go(b))),
            Ann::TApp(b, u) => Ann::TApp(bx(go(b)), u.subst(alpha, t)),
            Ann::TAbs(a, b) => {
                if a == alpha {
                    self.clone()
                } else if t.has_free(a) {
                    let fresh = fresh_name(a);
                    let b = b.tsubst(a, &Type::var(fresh.clone()));
                    Ann::TAbs(fresh, bx(b.tsubst(alpha, t)))
                } else {
                    Ann::TAbs(a.clone(), bx(go(b)))
                }
            }
            Ann::Copy(c) => {
                let mut c = (**c).clone();
                c.scrutinee = go(&c.scrutinee);
                c.left = go(&c.left);
                c.right = go(&c.right);
                Ann::Copy(Box::new(c))
            }
        }
    }
}

fn split_lets(a: Ann) -> (Vec<(String, Ann)>, Ann) {
    let mut chain = Vec::new();
    let mut cur = a;
    while let Ann::Let(x, l, r) = cur {
        chain.push((x, *l));
        cur = *r;
    }
    (chain, cur)
}

fn wrap_lets(chain: Vec<(String, Ann)>, core: Ann) -> Ann {
    chain.into_iter().rev().fold(core, |acc, (x, l)| Ann::Let(x, bx(l), bx(acc)))
}

/// The variable at the head of a chain of type instantiations, if any.
fn tapp_head(a: &Ann) -> Option<&str> {
    match a {
        Ann::Var(x, _) => Some(x),
        Ann::TApp(g, _) => tapp_head(g),
        _ => None,
    }
}

/// Brings an introduction form to the top, underneath a chain of lets, by
/// inlining lets feeding a type-instantiated variable and contracting
/// type redexes.
fn head(a: Ann) -> Ann {
    match a {
        Ann::Let(x, l, r) => {
            let r = head(*r);
            let (chain, core) = split_lets(r);
            if tapp_head(&core) == Some(x.as_str()) {
                let core = core.subst(&x, &l);
                head(wrap_lets(chain, core))
            } else {
                Ann::Let(x, l, bx(wrap_lets(chain, core)))
            }
        }
        Ann::TApp(g, t) => {
            let (chain, core) = split_lets(head(*g));
            match core {
                Ann::TAbs(a, b) => head(wrap_lets(chain, b.tsubst(&a, &t))),
                core => wrap_lets(chain, Ann::TApp(bx(core), t)),
            }
        }
        a => a,
    }
}

/// Renames let binders of `chain` that would capture free variables of `arg`.
fn freshen_chain(chain: Vec<(String, Ann)>, core: Ann, arg: &Ann) -> (Vec<(String, Ann)>, Ann) {
    let mut fv = BTreeSet::new();
    arg.free_vars(&mut fv);
    if chain.iter().all(|(x, _)| !fv.contains(x)) {
        return (chain, core);
    }
    let rebuilt = wrap_lets(chain, core);
    let renamed = rename_lets(rebuilt, &fv);
    split_lets(renamed)
}

fn rename_lets(a: Ann, avoid: &BTreeSet<String>) -> Ann {
    match a {
        Ann::Let(x, l, r) => {
            let t = l.ty().unwrap_or_else(|_| Type::unit());
            let (x, r) = if avoid.contains(&x) {
                let fresh = fresh_name(&x);
                let r = r.subst(&x, &Ann::Var(fresh.clone(), t));
                (fresh, r)
            } else {
                (x, *r)
            };
            Ann::Let(x, l, bx(rename_lets(r, avoid)))
        }
        a => a,
    }
}

fn var_path(t: &Term, x: &str) -> Option<Vec<usize>> {
    fn go(t: &Term, x: &str, path: &mut Vec<usize>) -> bool {
        let child = |i: usize, c: &Term, path: &mut Vec<usize>| {
            path.push(i);
            if go(c, x, path) {
                return true;
            }
            path.pop();
            false
        };
        match t {
            Term::Var(y) => y == x,
            Term::Abs(y, b) => y != x && child(0, b, path),
            Term::Proj(_, b) => child(0, b, path),
            Term::App(a, b) | Term::Pair(a, b) => child(0, a, path) || child(1, b, path),
            Term::Copy(c) => {
                child(1, &c.scrutinee, path)
                    || (c.left_binder != x && child(2, &c.left, path))
                    || (c.right_binder != x && child(3, &c.right, path))
            }
        }
    }
    let mut path = Vec::new();
    go(t, x, &mut path).then_some(path)
}

fn is_redex(t: &Term, kind: RedexKind) -> bool {
    match (kind, t) {
        (RedexKind::Beta, Term::App(f, _)) => matches!(f.as_ref(), Term::Abs(..)),
        (RedexKind::Proj, Term::Proj(_, p)) => matches!(p.as_ref(), Term::Pair(..)),
        (RedexKind::Copy, Term::Copy(c)) => c.scrutinee.is_value(),
        _ => false,
    }
}

/// Fires the redex at erased position `path`.
pub(crate) fn navigate(a: Ann, path: &[usize], kind: RedexKind) -> R<Ann> {
    match a {
        Ann::TAbs(al, b) => Ok(Ann::TAbs(al, bx(navigate(*b, path, kind)?))),
        Ann::TApp(g, t) => Ok(Ann::TApp(bx(navigate(*g, path, kind)?), t)),
        Ann::Let(x, l, r) => {
            let er = r.erase();
            let px = var_path(&er, &x).ok_or_else(|| format!("cut variable {x} does not occur"))?;
            if path.starts_with(&px) {
                Ok(Ann::Let(x, bx(navigate(*l, &path[px.len()..], kind)?), r))
            } else if subterm(&er, path).is_some_and(|t| is_redex(t, kind)) {
                Ok(Ann::Let(x, l, bx(navigate(*r, path, kind)?)))
            } else {
                // the redex is created by the cut itself
                navigate(r.subst(&x, &l), path, kind)
            }
        }
        a if path.is_empty() => fire(a, kind),
        Ann::Abs(x, t, b) if path[0] == 0 => Ok(Ann::Abs(x, t, bx(navigate(*b, &path[1..], kind)?))),
        Ann::App(f, _) | Ann::Pair(f, _) if path[0] > 1 => Err(format!("bad position {path:?} under {}", f.erase())),
        Ann::App(f, b) => Ok(if path[0] == 0 {
            Ann::App(bx(navigate(*f, &path[1..], kind)?), b)
        } else {
            Ann::App(f, bx(navigate(*b, &path[1..], kind)?))
        }),
        Ann::Pair(f, b) => Ok(if path[0] == 0 {
            Ann::Pair(bx(navigate(*f, &path[1..], kind)?), b)
        } else {
            Ann::Pair(f, bx(navigate(*b, &path[1..], kind)?))
        }),
        Ann::Proj(i, b) if path[0] == 0 => Ok(Ann::Proj(i, bx(navigate(*b, &path[1..], kind)?))),
        Ann::Copy(c) => {
            let mut c = *c;
            match path[0] {
                1 => c.scrutinee = navigate(c.scrutinee, &path[1..], kind)?,
                2 => c.left = navigate(c.left, &path[1..], kind)?,
                3 => c.right = navigate(c.right, &path[1..], kind)?,
                _ => return Err(format!("bad position {path:?} in copy")),
            }
            Ok(Ann::Copy(Box::new(c)))
        }
        a => Err(format!("no redex at {path:?} in {}", a.erase())),
    }
}

fn fire(a: Ann, kind: RedexKind) -> R<Ann> {
    match (kind, a) {
        (RedexKind::Beta, Ann::App(f, arg)) => {
            let (chain, core) = split_lets(head(*f));
            let (chain, core) = freshen_chain(chain, core, &arg);
            match core {
                Ann::Abs(z, _, body) => Ok(wrap_lets(chain, Ann::Let(z, arg, body))),
                other => Err(format!("no abstraction in function position: {}", other.erase())),
            }
        }
        (RedexKind::Proj, Ann::Proj(i, p)) => {
            let (chain, core) = split_lets(head(*p));
            match core {
                Ann::Pair(a, b) => Ok(wrap_lets(chain, if i == Index::First { *a } else { *b })),
                other => Err(format!("no pair under projection: {}", other.erase())),
            }
        }
        (RedexKind::Copy, Ann::Copy(c)) => {
            let c = *c;
            if !c.scrutinee.erase().is_value() {
                return Err("copy scrutinee is not a value".into());
            }
            let s2 = c.scrutinee.clone();
            Ok(Ann::Pair(bx(Ann::Let(c.x1, bx(c.scrutinee), bx(c.left))), bx(Ann::Let(c.x2, bx(s2), bx(c.right)))))
        }
        (kind, a) => Err(format!("{kind:?} does not match {}", a.erase())),
    }
}

/// Reads an annotated term off a derivation.
pub(crate) fn from_derivation(d: &Derivation) -> R<Ann> {
    let p = &d.premises;
    let concl = d.context();
    match d.rule {
        Rule::Ax => match d.subject() {
            Term::Var(x) => Ok(Ann::Var(x.clone(), d.ty().clone())),
            t => Err(format!("axiom with subject {t}")),
        },
        Rule::Cut => {
            let (l, r) = (&p[0], &p[1]);
            let x = r
                .context()
                .entries()
                .iter()
                .filter(|(x, a)| a == l.ty() && &r.subject().subst(x, l.subject()) == d.subject())
                .map(|(x, _)| x.clone())
                .next()
                .ok_or("cannot identify the cut formula")?;
            Ok(Ann::Let(x, bx(from_derivation(l)?), bx(from_derivation(r)?)))
        }
        Rule::LolliR => match d.subject() {
            Term::Abs(x, _) => {
                let a = p[0].context().get(x).ok_or("abstracted variable missing")?.clone();
                Ok(Ann::Abs(x.clone(), a, bx(from_derivation(&p[0])?)))
            }
            t => Err(format!("lolliR with subject {t}")),
        },
        Rule::LolliL => {
            let (l, r) = (&p[0], &p[1]);
            for (w, b) in r.context().entries() {
                let want = Type::lolli(l.ty().clone(), b.clone());
                for (y, f) in concl.entries() {
                    if f != &want || l.context().contains(y) {
                        continue;
                    }
                    let app = Term::app(Term::var(y.clone()), l.subject().clone());
                    if &r.subject().subst(w, &app) == d.subject() {
                        let head = Ann::App(bx(Ann::Var(y.clone(), f.clone())), bx(from_derivation(l)?));
                        return Ok(from_derivation(r)?.subst(w, &head));
                    }
                }
            }
            Err("cannot identify the lolliL principal formula".into())
        }
        Rule::WithR0 => Ok(Ann::Pair(bx(from_derivation(&p[0])?), bx(from_derivation(&p[1])?))),
        Rule::WithR1 => match d.subject() {
            Term::Copy(c) => {
                let Term::Var(x) = &c.scrutinee else { return Err("copy scrutinee is not a variable".into()) };
                let (x1, a) = p[0].context().entries().first().cloned().ok_or("empty branch context")?;
                let (x2, _) = p[1].context().entries().first().cloned().ok_or("empty branch context")?;
                Ok(Ann::Copy(Box::new(AnnCopy {
                    guard: p[2].clone(),
                    scrutinee: Ann::Var(x.clone(), a),
                    x1,
                    x2,
                    left: from_derivation(&p[0])?,
                    right: from_derivation(&p[1])?,
                })))
            }
            t => Err(format!("withR1 with subject {t}")),
        },
        Rule::WithL(i) => {
            let (only_c, only_p) = ctx_diff(concl, p[0].context());
            for (y, t) in only_c.entries() {
                for (xi, _) in only_p.entries() {
                    let pr = Term::proj(i, Term::var(y.clone()));
                    if &p[0].subject().subst(xi, &pr) == d.subject() {
                        let proj = Ann::Proj(i, bx(Ann::Var(y.clone(), t.clone())));
                        return Ok(from_derivation(&p[0])?.subst(xi, &proj));
                    }
                }
            }
            Err("cannot identify the withL principal formula".into())
        }
        Rule::ForallR => {
            let Type::Forall(alpha, body) = d.ty() else { return Err("forallR with a non-quantified type".into()) };
            let gamma = match Type::match_instance(body, alpha, p[0].ty()) {
                Some(Some(Type::Var(g))) => g,
                Some(None) => fresh_name(alpha),
                _ => return Err("forallR premise is not an instance".into()),
            };
            Ok(Ann::TAbs(gamma, bx(from_derivation(&p[0])?)))
        }
        Rule::ForallL => {
            let (only_c, only_p) = ctx_diff(concl, p[0].context());
            for (x, t) in only_c.entries() {
                let Type::Forall(alpha, body) = t else { continue };
                let Some(inst) = only_p.get(x) else { continue };
                if let Some(m) = Type::match_instance(body, alpha, inst) {
                    let arg = m.unwrap_or_else(Type::unit);
                    let tapp = Ann::TApp(bx(Ann::Var(x.clone(), t.clone())), arg);
                    return Ok(from_derivation(&p[0])?.subst(x, &tapp));
                }
            }
            Err("cannot identify the forallL principal formula".into())
        }
        Rule::WithR => Err("withR is not a LAM rule".into()),
    }
}

enum Elim<'a> {
    App(&'a Ann),
    TApp(&'a Type),
    Proj(Index),
}

/// Rebuilds a sequent derivation whose context is the free variables of `a`.
pub(crate) fn to_derivation(a: &Ann) -> R<Derivation> {
    match a {
        Ann::Var(x, t) => Ok(build::ax(x.clone(), t.clone())),
        Ann::Abs(x, _, b) => build::lolli_r(to_derivation(b)?, x).map_err(build_err),
        Ann::TAbs(g, b) => Ok(build::forall_r(to_derivation(b)?, g)),
        Ann::Pair(a, b) => build::with_r0(to_derivation(a)?, to_derivation(b)?).map_err(build_err),
        Ann::Let(x, l, r) => build::cut(to_derivation(l)?, to_derivation(r)?, x).map_err(build_err),
        Ann::Copy(c) => {
            let d1 = to_derivation(&c.left)?;
            let d2 = to_derivation(&c.right)?;
            match &c.scrutinee {
                Ann::Var(x, _) => build::with_r1(d1, d2, c.guard.clone(), x).map_err(build_err),
                s => {
                    let w = fresh_name("c");
                    let inner = build::with_r1(d1, d2, c.guard.clone(), &w).map_err(build_err)?;
                    build::cut(to_derivation(s)?, inner, &w).map_err(build_err)
                }
            }
        }
        Ann::App(..) | Ann::TApp(..) | Ann::Proj(..) => {
            let mut elims = Vec::new();
            let mut cur = a;
            loop {
                match cur {
                    Ann::App(f, x) => {
                        elims.push(Elim::App(x));
                        cur = f;
                    }
                    Ann::TApp(g, t) => {
                        elims.push(Elim::TApp(t));
                        cur = g;
                    }
                    Ann::Proj(i, p) => {
                        elims.push(Elim::Proj(*i));
                        cur = p;
                    }
                    _ => break,
                }
            }
            elims.reverse();
            match cur {
                Ann::Var(y, t) => spine(y, t.clone(), &elims),
                h => {
                    let w = fresh_name("h");
                    let rest = spine(&w, h.ty()?, &elims)?;
                    build::cut(to_derivation(h)?, rest, &w).map_err(build_err)
                }
            }
        }
    }
}

/// Left rules on `y : t` consuming the eliminations innermost first.
fn spine(y: &str, t: Type, elims: &[Elim]) -> R<Derivation> {
    let Some((e, tail)) = elims.split_first() else {
        return Ok(build::ax(y, t));
    };
    match (e, t) {
        (Elim::App(arg), Type::Lolli(_, b)) => {
            let w = fresh_name("w");
            let rest = spine(&w, *b, tail)?;
            build::lolli_l(to_derivation(arg)?, rest, &w, y).map_err(build_err)
        }
        (Elim::TApp(u), Type::Forall(alpha, body)) => {
            let rest = spine(y, body.subst(&alpha, u), tail)?;
            build::forall_l(rest, y, &alpha, *body).map_err(build_err)
        }
        (Elim::Proj(i), Type::With(a1, a2)) => {
            let w = fresh_name("w");
            let (ai, other) = if *i == Index::First { (*a1, *a2) } else { (*a2, *a1) };
            let rest = spine(&w, ai, tail)?;
            build::with_l(rest, *i, &w, y, other).map_err(build_err)
        }
        (_, t) => Err(format!("elimination does not match type {t}")),
    }
}
