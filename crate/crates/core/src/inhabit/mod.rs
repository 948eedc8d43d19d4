//! Eta-expansion of cut-free derivations and enumeration of eta-long
//! normal inhabitants of closed forall-lazy types.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::derivation::build::{self, BuildError};
use crate::derivation::Derivation;
use crate::frontend::print_term;
use crate::reduce::annotated::{from_derivation, to_derivation, Ann};
use crate::syntax::fresh::fresh_name;
use crate::syntax::{Term, Type};

#[cfg(test)]
mod tests;

#[derive(Debug, Clone, Error, PartialEq, Eq, Serialize)]
pub enum InhabitError {
    #[error("derivation contains cuts")]
    NotCutFree,
    #[error("type {0} is not closed and forall-lazy")]
    NotClosedForallLazy(String),
    #[error("cannot eta-expand at type {0}")]
    NotExpandable(String),
    #[error("search bound {0} exceeded")]
    BoundExceeded(usize),
    #[error("type {0} is uninhabited")]
    Uninhabited(String),
    #[error("internal: {0}")]
    Internal(String),
}

impl From<BuildError> for InhabitError {
    fn from(e: BuildError) -> Self {
        InhabitError::Internal(e.to_string())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InhabitantSet {
    #[serde(rename = "type")]
    pub ty: Type,
    pub members: Vec<(Term, Derivation)>,
    pub maximal: Option<usize>,
}

impl InhabitantSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = &Term> {
        self.members.iter().map(|(t, _)| t)
    }
}

/// Replaces every non-atomic use of a variable by its eta-long form.
/// Variables of additive type cannot be expanded in LAM.
pub fn eta_expand(d: &Derivation) -> Result<Derivation, InhabitError> {
    if !d.is_cut_free() {
        return Err(InhabitError::NotCutFree);
    }
    let ann = from_derivation(d).map_err(InhabitError::Internal)?;
    let expanded = eta_ann(ann)?;
    to_derivation(&expanded).map_err(InhabitError::Internal)
}

fn expand(s: Ann, ty: &Type) -> Result<Ann, InhabitError> {
    match ty {
        Type::Var(_) => Ok(s),
        Type::Lolli(a, b) => {
            let y = fresh_name("y");
            let arg = expand(Ann::Var(y.clone(), (**a).clone()), a)?;
            let body = expand(Ann::App(Box::new(s), Box::new(arg)), b)?;
            Ok(Ann::Abs(y, (**a).clone(), Box::new(body)))
        }
        Type::Forall(alpha, b) => {
            let g = fresh_name(alpha);
            let inst = b.subst(alpha, &Type::var(g.clone()));
            let body = expand(Ann::TApp(Box::new(s), Type::var(g.clone())), &inst)?;
            Ok(Ann::TAbs(g, Box::new(body)))
        }
        Type::With(..) => Err(InhabitError::NotExpandable(ty.to_string())),
    }
}

fn eta_ann(a: Ann) -> Result<Ann, InhabitError> {
    let bx = Box::new;
    match a {
        Ann::Abs(x, t, b) => Ok(Ann::Abs(x, t, bx(eta_ann(*b)?))),
        Ann::TAbs(g, b) => Ok(Ann::TAbs(g, bx(eta_ann(*b)?))),
        Ann::Pair(a, b) => Ok(Ann::Pair(bx(eta_ann(*a)?), bx(eta_ann(*b)?))),
        Ann::Copy(mut c) => {
            c.left = eta_ann(c.left)?;
            c.right = eta_ann(c.right)?;
            Ok(Ann::Copy(c))
        }
        Ann::Let(..) => Err(InhabitError::NotCutFree),
        s => {
            let ty = s.ty().map_err(InhabitError::Internal)?;
            let s = eta_spine_args(s)?;
            expand(s, &ty)
        }
    }
}

fn eta_spine_args(s: Ann) -> Result<Ann, InhabitError> {
    let bx = Box::new;
    Ok(match s {
        Ann::App(f, a) => Ann::App(bx(eta_spine_args(*f)?), bx(eta_ann(*a)?)),
        Ann::TApp(g, t) => Ann::TApp(bx(eta_spine_args(*g)?), t),
        Ann::Proj(i, p) => Ann::Proj(i, bx(eta_spine_args(*p)?)),
        Ann::Var(..) => s,
        head => eta_ann(head)?,
    })
}

struct Search {
    names: usize,
    depth_limit: usize,
}

impl Search {
    fn name(&mut self, stem: &str) -> String {
        self.names += 1;
        format!("{stem}{}", self.names)
    }

    /// All focused cut-free derivations of `ctx ⊢ goal` with atomic axioms.
    fn solve(&mut self, ctx: &[(String, Type)], goal: &Type, depth: usize) -> Result<Vec<Derivation>, InhabitError> {
        if depth > self.depth_limit {
            return Err(InhabitError::BoundExceeded(self.depth_limit));
        }
        match goal {
            Type::Forall(alpha, body) => {
                let g = self.name("a");
                let inst = body.subst(alpha, &Type::var(g.clone()));
                let ds = self.solve(ctx, &inst, depth + 1)?;
                Ok(ds.into_iter().map(|d| build::forall_r(d, &g)).collect())
            }
            Type::Lolli(a, b) => {
                let x = self.name("x");
                let mut inner = ctx.to_vec();
                inner.push((x.clone(), (**a).clone()));
                let ds = self.solve(&inner, b, depth + 1)?;
                ds.into_iter().map(|d| Ok(build::lolli_r(d, &x)?)).collect()
            }
            Type::With(a, b) => {
                if !ctx.is_empty() {
                    return Ok(Vec::new());
                }
                let da = self.solve(&[], a, depth + 1)?;
                let db = self.solve(&[], b, depth + 1)?;
                let mut out = Vec::new();
                for l in &da {
                    for r in &db {
                        out.push(build::with_r0(l.clone(), r.clone())?);
                    }
                }
                Ok(out)
            }
            Type::Var(alpha) => {
                let mut out = Vec::new();
                for (i, (y, t)) in ctx.iter().enumerate() {
                    let mut args = Vec::new();
                    let mut cur = t;
                    while let Type::Lolli(a, b) = cur {
                        args.push((**a).clone());
                        cur = b;
                    }
                    if !matches!(cur, Type::Var(v) if v == alpha) {
                        continue;
                    }
                    let rest: Vec<_> = ctx.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, e)| e.clone()).collect();
                    if args.is_empty() {
                        if rest.is_empty() {
                            out.push(build::ax(y.clone(), t.clone()));
                        }
                        continue;
                    }
                    for split in splits(&rest, args.len()) {
                        let mut per_arg = Vec::new();
                        for (part, a) in split.iter().zip(&args) {
                            per_arg.push(self.solve(part, a, depth + 1)?);
                        }
                        for choice in product(&per_arg) {
                            out.push(spine(y, t, choice)?);
                        }
                    }
                }
                Ok(out)
            }
        }
    }
}

/// Every assignment of the entries of `ctx` to `n` ordered parts.
fn splits(ctx: &[(String, Type)], n: usize) -> Vec<Vec<Vec<(String, Type)>>> {
    let mut out = vec![vec![Vec::new(); n]];
    for e in ctx {
        let mut next = Vec::new();
        for s in &out {
            for k in 0..n {
                let mut s2 = s.clone();
                s2[k].push(e.clone());
                next.push(s2);
            }
        }
        out = next;
    }
    out
}

fn product(options: &[Vec<Derivation>]) -> Vec<Vec<Derivation>> {
    options.iter().fold(vec![Vec::new()], |acc, opts| {
        acc.iter()
            .flat_map(|prefix| {
                opts.iter().map(move |o| {
                    let mut p = prefix.clone();
                    p.push(o.clone());
                    p
                })
            })
            .collect()
    })
}

fn spine(y: &str, t: &Type, args: Vec<Derivation>) -> Result<Derivation, InhabitError> {
    let mut args = args.into_iter();
    match (t, args.next()) {
        (_, None) => Ok(build::ax(y, t.clone())),
        (Type::Lolli(_, b), Some(first)) => {
            let w = fresh_name("w");
            let rest = spine(&w, b, args.collect())?;
            Ok(build::lolli_l(first, rest, &w, y)?)
        }
        _ => Err(InhabitError::Internal("spine type mismatch".into())),
    }
}

/// The eta-long normal inhabitants of a closed forall-lazy type, in
/// search order, with `bound` capping the search depth.
pub fn enumerate_inhabitants(a: &Type, bound: Option<usize>) -> Result<InhabitantSet, InhabitError> {
    let flags = a.classify();
    if !flags.closed || !flags.forall_lazy {
        return Err(InhabitError::NotClosedForallLazy(a.to_string()));
    }
    let mut search = Search { names: 0, depth_limit: bound.unwrap_or(a.size()) };
    let found = search.solve(&[], a, 0)?;
    let mut seen = BTreeSet::new();
    let mut members = Vec::new();
    for d in found {
        if seen.insert(d.subject().canonical_key()) {
            members.push((d.subject().clone(), d));
        }
    }
    let maximal = maximal_index(&members);
    Ok(InhabitantSet { ty: a.clone(), members, maximal })
}

fn maximal_index(members: &[(Term, Derivation)]) -> Option<usize> {
    let key = |t: &Term| (std::cmp::Reverse(t.size()), print_term(t));
    (0..members.len()).min_by(|&i, &j| key(&members[i].0).cmp(&key(&members[j].0)))
}

/// A largest inhabitant, ties broken by the smallest printed form.
pub fn maximal_value(a: &Type) -> Result<(Term, Derivation), InhabitError> {
    let set = enumerate_inhabitants(a, None)?;
    match set.maximal {
        Some(i) => Ok(set.members[i].clone()),
        None => Err(InhabitError::Uninhabited(a.to_string())),
    }
}
