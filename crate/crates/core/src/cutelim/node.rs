//! Structural view of a single derivation node: which names it binds and
//! how to rebuild it from new premises.

use std::collections::BTreeSet;

use crate::derivation::build;
use crate::derivation::{Derivation, Rule};
use crate::syntax::fresh::fresh_name;
use crate::syntax::{Context, Index, Term, Type};

use super::CutElimError;

type R<T> = Result<T, CutElimError>;

#[derive(Debug, Clone)]
pub(crate) enum Node {
    Ax { x: String, ty: Type },
    /// `x` is the cut variable of the right premise.
    Cut { x: String },
    LolliR { x: String },
    /// `y` is principal in the conclusion, `w` is new in the right premise.
    LolliL { y: String, w: String },
    WithR,
    WithR0,
    WithR1 { x: String, x1: String, x2: String },
    WithL { i: Index, y: String, xi: String, other: Type },
    ForallR { gamma: String },
    ForallL { x: String, alpha: String, body: Type },
}

fn internal(msg: impl Into<String>) -> CutElimError {
    CutElimError::Internal(msg.into())
}

fn single(c: &Context) -> Option<(String, Type)> {
    match c.entries() {
        [(x, a)] => Some((x.clone(), a.clone())),
        _ => None,
    }
}

fn minus(a: &Context, b: &Context) -> Option<Context> {
    let mut rest = a.clone();
    for (x, t) in b.entries() {
        if rest.get(x)? != t {
            return None;
        }
        rest.remove(x);
    }
    Some(rest)
}

pub(crate) fn decode(d: &Derivation) -> R<Node> {
    let p = &d.premises;
    let concl = d.context();
    Ok(match d.rule {
        Rule::Ax => {
            let (x, ty) = single(concl).ok_or_else(|| internal("axiom context"))?;
            Node::Ax { x, ty }
        }
        Rule::Cut => {
            let rest = minus(concl, p[0].context()).ok_or_else(|| internal("cut context split"))?;
            let added = minus(p[1].context(), &rest).ok_or_else(|| internal("cut context split"))?;
            let (x, _) = single(&added).ok_or_else(|| internal("cut variable"))?;
            Node::Cut { x }
        }
        Rule::LolliR => {
            let added = minus(p[0].context(), concl).ok_or_else(|| internal("lolliR context"))?;
            let (x, _) = single(&added).ok_or_else(|| internal("lolliR variable"))?;
            Node::LolliR { x }
        }
        Rule::LolliL => {
            let rest = minus(concl, p[0].context()).ok_or_else(|| internal("lolliL context split"))?;
            for (y, _) in rest.entries() {
                let delta = rest.without(y);
                if let Some((w, _)) = minus(p[1].context(), &delta).as_ref().and_then(single) {
                    let app = Term::app(Term::var(y.clone()), p[0].subject().clone());
                    if &p[1].subject().subst(&w, &app) == d.subject() {
                        return Ok(Node::LolliL { y: y.clone(), w });
                    }
                }
            }
            return Err(internal("lolliL principal formula"));
        }
        Rule::WithR => Node::WithR,
        Rule::WithR0 => Node::WithR0,
        Rule::WithR1 => {
            let (x, _) = single(concl).ok_or_else(|| internal("withR1 context"))?;
            let (x1, _) = single(p[0].context()).ok_or_else(|| internal("withR1 branch"))?;
            let (x2, _) = single(p[1].context()).ok_or_else(|| internal("withR1 branch"))?;
            Node::WithR1 { x, x1, x2 }
        }
        Rule::WithL(i) => {
            let (only_c, only_p) = crate::derivation::ctx_diff(concl, p[0].context());
            let (y, t) = single(&only_c).ok_or_else(|| internal("withL principal formula"))?;
            let (xi, _) = single(&only_p).ok_or_else(|| internal("withL premise variable"))?;
            let Type::With(a1, a2) = t else { return Err(internal("withL on a non-additive")) };
            let other = if i == Index::First { *a2 } else { *a1 };
            Node::WithL { i, y, xi, other }
        }
        Rule::ForallR => {
            let Type::Forall(alpha, body) = d.ty() else { return Err(internal("forallR type")) };
            let gamma = match Type::match_instance(body, alpha, p[0].ty()) {
                Some(Some(Type::Var(g))) => g,
                Some(None) => {
                    // the eigenvariable is absent from the premise type
                    let mut g = alpha.clone();
                    if concl.free_type_vars().contains(&g) {
                        g = fresh_name(alpha);
                    }
                    g
                }
                _ => return Err(internal("forallR premise is not an instance")),
            };
            Node::ForallR { gamma }
        }
        Rule::ForallL => {
            let (only_c, _) = crate::derivation::ctx_diff(concl, p[0].context());
            let (x, t) = single(&only_c).ok_or_else(|| internal("forallL principal formula"))?;
            let Type::Forall(alpha, body) = t else { return Err(internal("forallL type")) };
            Node::ForallL { x, alpha, body: *body }
        }
    })
}

pub(crate) fn rebuild(node: &Node, mut p: Vec<Derivation>) -> R<Derivation> {
    let b = |r: Result<Derivation, build::BuildError>| r.map_err(|e| internal(e.to_string()));
    let mut take = || p.remove(0);
    Ok(match node {
        Node::Ax { x, ty } => build::ax(x.clone(), ty.clone()),
        Node::Cut { x } => {
            let l = take();
            b(build::cut(l, take(), x))?
        }
        Node::LolliR { x } => b(build::lolli_r(take(), x))?,
        Node::LolliL { y, w } => {
            let l = take();
            b(build::lolli_l(l, take(), w, y))?
        }
        Node::WithR => {
            let l = take();
            b(build::with_r(l, take()))?
        }
        Node::WithR0 => {
            let l = take();
            b(build::with_r0(l, take()))?
        }
        Node::WithR1 { x, .. } => {
            let (d1, d2) = (take(), take());
            b(build::with_r1(d1, d2, take(), x))?
        }
        Node::WithL { i, y, xi, other } => b(build::with_l(take(), *i, xi, y, other.clone()))?,
        Node::ForallR { gamma } => build::forall_r(take(), gamma),
        Node::ForallL { x, alpha, body } => b(build::forall_l(take(), x, alpha, body.clone()))?,
    })
}

/// Term variables bound at this node for premise `j`.
fn introduced(node: &Node, j: usize) -> Vec<&str> {
    match (node, j) {
        (Node::Cut { x }, 1) | (Node::LolliR { x }, 0) => vec![x],
        (Node::LolliL { w, .. }, 1) => vec![w],
        (Node::WithR1 { x1, .. }, 0) => vec![x1],
        (Node::WithR1 { x2, .. }, 1) => vec![x2],
        (Node::WithL { xi, .. }, 0) => vec![xi],
        _ => vec![],
    }
}

fn rename_principal(node: &mut Node, from: &str, to: &str) {
    let fix = |s: &mut String| {
        if s == from {
            *s = to.to_string();
        }
    };
    match node {
        Node::Ax { x, .. } | Node::WithR1 { x, .. } | Node::ForallL { x, .. } => fix(x),
        Node::LolliL { y, .. } | Node::WithL { y, .. } => fix(y),
        _ => {}
    }
}

fn set_introduced(node: &mut Node, j: usize, to: &str) {
    let to = to.to_string();
    match (node, j) {
        (Node::Cut { x }, 1) | (Node::LolliR { x }, 0) => *x = to,
        (Node::LolliL { w, .. }, 1) => *w = to,
        (Node::WithR1 { x1, .. }, 0) => *x1 = to,
        (Node::WithR1 { x2, .. }, 1) => *x2 = to,
        (Node::WithL { xi, .. }, 0) => *xi = to,
        _ => {}
    }
}

/// Renames the free term variable `from` to `to`.
pub(crate) fn rename_free(d: &Derivation, from: &str, to: &str) -> R<Derivation> {
    if !d.context().contains(from) {
        return Ok(d.clone());
    }
    let mut node = decode(d)?;
    let mut premises = Vec::with_capacity(d.premises.len());
    for (j, p) in d.premises.iter().enumerate() {
        if p.context().contains(from) && !introduced(&node, j).contains(&from) {
            premises.push(rename_free(p, from, to)?);
        } else {
            premises.push(p.clone());
        }
    }
    rename_principal(&mut node, from, to);
    rebuild(&node, premises)
}

/// Substitutes `t` for the free type variable `alpha` in every judgement.
pub(crate) fn tsubst(d: &Derivation, alpha: &str, t: &Type) -> Derivation {
    if d.rule == Rule::ForallR {
        if let Ok(Node::ForallR { gamma }) = decode(d) {
            if gamma == alpha {
                return d.clone();
            }
        }
    }
    let mut out = d.clone();
    out.conclusion.context = d.context().map_types(|a| a.subst(alpha, t));
    out.conclusion.ty = d.ty().subst(alpha, t);
    out.premises = d.premises.iter().map(|p| tsubst(p, alpha, t)).collect();
    out
}

/// Renames bound term variables and eigenvariables so that every binder
/// in the tree is distinct from every other name in it.
pub(crate) fn uniquify(d: &Derivation) -> R<Derivation> {
    let mut seen: BTreeSet<String> = d.context().names().map(str::to_string).collect();
    let mut seen_ty = d.context().free_type_vars();
    seen_ty.extend(d.ty().free_vars());
    go(d, &mut seen, &mut seen_ty)
}

fn go(d: &Derivation, seen: &mut BTreeSet<String>, seen_ty: &mut BTreeSet<String>) -> R<Derivation> {
    if d.premises.is_empty() {
        return Ok(d.clone());
    }
    let mut node = decode(d)?;
    let mut premises = Vec::with_capacity(d.premises.len());
    for (j, p) in d.premises.iter().enumerate() {
        let mut p = p.clone();
        for v in introduced(&node, j).into_iter().map(str::to_string).collect::<Vec<_>>() {
            if seen.contains(&v) {
                let nv = fresh_name(&v);
                p = rename_free(&p, &v, &nv)?;
                set_introduced(&mut node, j, &nv);
                seen.insert(nv);
            } else {
                seen.insert(v);
            }
        }
        if let Node::ForallR { gamma } = &mut node {
            if seen_ty.contains(gamma.as_str()) {
                let ng = fresh_name(gamma);
                p = tsubst(&p, gamma, &Type::var(ng.clone()));
                *gamma = ng;
            }
            seen_ty.insert(gamma.clone());
        }
        premises.push(go(&p, seen, seen_ty)?);
    }
    rebuild(&node, premises)
}

/// Replaces the subtree at `path` and recomputes every conclusion below it.
pub(crate) fn replace(d: &Derivation, path: &[usize], new: Derivation) -> R<Derivation> {
    let Some((i, rest)) = path.split_first() else { return Ok(new) };
    let node = decode(d)?;
    let mut premises = d.premises.clone();
    let slot = premises.get_mut(*i).ok_or_else(|| internal("path out of range"))?;
    *slot = replace(slot, rest, new)?;
    rebuild(&node, premises)
}
