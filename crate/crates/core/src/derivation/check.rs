use serde::Serialize;

use super::tree::{Derivation, Path, Rule};
use crate::syntax::{Context, Index, Term, Type};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum System {
    #[serde(rename = "lam")]
    Lam,
    #[serde(rename = "imall2")]
    Imall2,
    #[serde(rename = "imll2")]
    Imll2,
}

impl System {
    pub fn allows(self, rule: Rule) -> bool {
        match self {
            System::Lam => rule != Rule::WithR,
            // withR0 is the empty-context instance of withR
            System::Imall2 => rule != Rule::WithR1,
            System::Imll2 => !matches!(rule, Rule::WithR | Rule::WithR0 | Rule::WithR1 | Rule::WithL(_)),
        }
    }
}

impl std::str::FromStr for System {
    type Err = String;

    fn from_str(s: &str) -> Result<System, String> {
        match s.to_ascii_lowercase().as_str() {
            "lam" => Ok(System::Lam),
            "imall2" => Ok(System::Imall2),
            "imll2" => Ok(System::Imll2),
            other => Err(format!("unknown system `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub path: Path,
    pub rule: Rule,
    pub condition: &'static str,
    pub explanation: String,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "at {:?} ({}): {}: {}", self.path, self.rule, self.condition, self.explanation)
    }
}

/// Checks every node of `d` against its rule schema in `system`.
pub fn check(d: &Derivation, system: System) -> Result<(), Vec<Violation>> {
    let mut out = Vec::new();
    walk(d, system, &mut Vec::new(), &mut out);
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

fn walk(d: &Derivation, system: System, path: &mut Path, out: &mut Vec<Violation>) {
    for (i, p) in d.premises.iter().enumerate() {
        path.push(i);
        walk(p, system, path, out);
        path.pop();
    }
    let mut errs = Vec::new();
    node(d, system, &mut errs);
    out.extend(errs.into_iter().map(|(condition, explanation)| Violation {
        path: path.clone(),
        rule: d.rule,
        condition,
        explanation,
    }));
}

type Errs = Vec<(&'static str, String)>;

/// `a − b` as multisets of (name, type); `None` if `b ⊄ a`.
pub(crate) fn ctx_minus(a: &Context, b: &Context) -> Option<Context> {
    let mut rest = a.clone();
    for (x, t) in b.entries() {
        if rest.get(x)? != t {
            return None;
        }
        rest.remove(x);
    }
    Some(rest)
}

/// Entries of `a` not matched in `b` and entries of `b` not matched in `a`,
/// matching on name and type.
pub(crate) fn ctx_diff(a: &Context, b: &Context) -> (Context, Context) {
    let only = |p: &Context, q: &Context| -> Context {
        p.entries()
            .iter()
            .filter(|(x, t)| q.get(x) != Some(t))
            .cloned()
            .collect()
    };
    (only(a, b), only(b, a))
}

fn single(c: &Context) -> Option<(&str, &Type)> {
    match c.entries() {
        [(x, a)] => Some((x.as_str(), a)),
        _ => None,
    }
}

fn closed_forall_lazy(a: &Type) -> bool {
    a.is_closed() && a.is_forall_lazy()
}

fn node(d: &Derivation, system: System, errs: &mut Errs) {
    let concl = &d.conclusion;
    if !system.allows(d.rule) {
        errs.push(("rule not in system", format!("{} is not a rule of {:?}", d.rule, system)));
        return;
    }
    if d.premises.len() != d.rule.arity() {
        errs.push(("arity", format!("{} takes {} premises, found {}", d.rule, d.rule.arity(), d.premises.len())));
        return;
    }
    // every context variable is used, and only those
    let fv = concl.subject.free_vars();
    for x in concl.context.names() {
        let n = concl.subject.occurrences(x);
        if n == 0 || (system != System::Imall2 && n != 1) {
            errs.push(("linearity", format!("`{x}` occurs {n} times in the subject")));
        }
    }
    for x in &fv {
        if !concl.context.contains(x) {
            errs.push(("linearity", format!("free variable `{x}` is not in the context")));
        }
    }
    if system == System::Imll2 && !concl.subject.is_pure_lambda() {
        errs.push(("pure lambda term", "IMLL2 subjects contain no pairs, projections or copies".into()));
    }
    let p = &d.premises;
    match d.rule {
        Rule::Ax => match single(&concl.context) {
            Some((x, a)) => {
                if !matches!(&concl.subject, Term::Var(v) if v == x) {
                    errs.push(("subject decoration", format!("axiom subject must be `{x}`")));
                }
                if a != &concl.ty {
                    errs.push(("type mismatch", format!("assumption {a} differs from conclusion {}", concl.ty)));
                }
            }
            None => errs.push(("single-assumption context", "axiom has exactly one assumption".into())),
        },
        Rule::Cut => cut_like(d, system, errs),
        Rule::LolliL => cut_like(d, system, errs),
        Rule::LolliR => {
            let prem = &p[0];
            let added = ctx_minus(prem.context(), &concl.context);
            match added.as_ref().and_then(single) {
                Some((x, a)) => {
                    let expected = Term::abs(x, prem.subject().clone());
                    if expected != concl.subject {
                        errs.push(("subject decoration", format!("expected {expected}")));
                    }
                    let ty = Type::lolli(a.clone(), prem.ty().clone());
                    if ty != concl.ty {
                        errs.push(("type mismatch", format!("expected {ty}")));
                    }
                }
                None => errs.push(("context split", "premise context must extend the conclusion's by one".into())),
            }
        }
        Rule::WithR => {
            if p[0].context() != &concl.context || p[1].context() != &concl.context {
                errs.push(("shared context", "both premises share the conclusion context".into()));
            }
            pair_decoration(d, errs);
        }
        Rule::WithR0 => {
            if !concl.context.is_empty() || !p[0].context().is_empty() || !p[1].context().is_empty() {
                errs.push(("empty context", "withR0 premises and conclusion have empty contexts".into()));
            }
            if system == System::Lam {
                for q in p {
                    if !closed_forall_lazy(q.ty()) {
                        errs.push(("closed forall-lazy", format!("premise type {} must be closed and forall-lazy", q.ty())));
                    }
                }
            }
            pair_decoration(d, errs);
        }
        Rule::WithR1 => with_r1(d, errs),
        Rule::WithL(i) => with_l(d, i, system, errs),
        Rule::ForallR => forall_r(d, system, errs),
        Rule::ForallL => forall_l(d, errs),
    }
}

fn pair_decoration(d: &Derivation, errs: &mut Errs) {
    let (a, b) = (&d.premises[0], &d.premises[1]);
    let expected = Term::pair(a.subject().clone(), b.subject().clone());
    if expected != d.conclusion.subject {
        errs.push(("subject decoration", format!("expected {expected}")));
    }
    let ty = Type::with(a.ty().clone(), b.ty().clone());
    if ty != d.conclusion.ty {
        errs.push(("type mismatch", format!("expected {ty}")));
    }
}

/// Shared reconstruction for `cut` and `lolliL`.
fn cut_like(d: &Derivation, system: System, errs: &mut Errs) {
    let concl = &d.conclusion;
    let (left, right) = (&d.premises[0], &d.premises[1]);
    let Some(rest) = ctx_minus(&concl.context, left.context()) else {
        errs.push(("context split", "left premise context is not part of the conclusion context".into()));
        return;
    };
    if right.ty() != &concl.ty {
        errs.push(("type mismatch", format!("right premise concludes {}, expected {}", right.ty(), concl.ty)));
    }
    if d.rule == Rule::Cut {
        let Some(added) = ctx_minus(right.context(), &rest) else {
            errs.push(("context split", "right premise context does not contain the remaining assumptions".into()));
            return;
        };
        let Some((x, a)) = single(&added) else {
            errs.push(("context split", "right premise must add exactly one cut variable".into()));
            return;
        };
        if a != left.ty() {
            errs.push(("type mismatch", format!("cut formula {a} differs from left premise type {}", left.ty())));
        }
        let expected = right.subject().subst(x, left.subject());
        if expected != concl.subject {
            errs.push(("subject decoration", format!("expected {expected}")));
        }
        return;
    }
    // lolliL: rest = Δ + {y : A⊸B}; right context = Δ + {x : B}
    let candidates: Vec<(String, Type)> = rest
        .entries()
        .iter()
        .filter(|(y, _)| !right.context().contains(y) || right.context().get(y) != rest.get(y))
        .cloned()
        .collect();
    let mut found = None;
    for (y, f) in &candidates {
        let delta = rest.without(y);
        if let Some(added) = ctx_minus(right.context(), &delta) {
            if let Some((x, b)) = single(&added) {
                found = Some((y.clone(), f.clone(), x.to_string(), b.clone()));
                break;
            }
        }
    }
    let Some((y, f, x, b)) = found else {
        errs.push(("context split", "cannot identify the principal assumption of lolliL".into()));
        return;
    };
    let expected_f = Type::lolli(left.ty().clone(), b.clone());
    if f != expected_f {
        errs.push(("type mismatch", format!("principal assumption has type {f}, expected {expected_f}")));
    }
    let expected = right.subject().subst(&x, &Term::app(Term::var(&y), left.subject().clone()));
    if expected != concl.subject {
        errs.push(("subject decoration", format!("expected {expected}")));
    }
    if system == System::Lam && b.is_closed() && !left.ty().is_closed() {
        errs.push((
            "closure condition (i)",
            format!("principal type {f} has a closed codomain but an open domain"),
        ));
    }
}

fn with_r1(d: &Derivation, errs: &mut Errs) {
    let concl = &d.conclusion;
    let (d1, d2, g) = (&d.premises[0], &d.premises[1], &d.premises[2]);
    let Some((x, a)) = single(&concl.context) else {
        errs.push(("single-assumption context", "withR1 shares exactly one assumption".into()));
        return;
    };
    let (Some((x1, a1)), Some((x2, a2))) = (single(d1.context()), single(d2.context())) else {
        errs.push(("single-assumption context", "withR1 side premises have exactly one assumption".into()));
        return;
    };
    if a1 != a || a2 != a {
        errs.push(("type mismatch", format!("side premises must assume {a}")));
    }
    if !g.context().is_empty() {
        errs.push(("empty context", "guard premise has an empty context".into()));
    }
    if g.ty() != a {
        errs.push(("type mismatch", format!("guard premise has type {}, expected {a}", g.ty())));
    }
    if !g.subject().is_value() {
        errs.push(("guard value", format!("guard {} is not a value", g.subject())));
    }
    if !g.is_cut_free() || !all_axioms_atomic(g) {
        errs.push(("guard eta-expanded", "guard premise derivation must be eta-expanded".into()));
    }
    for t in [a, d1.ty(), d2.ty()] {
        if !closed_forall_lazy(t) {
            errs.push(("closed forall-lazy", format!("type {t} must be closed and forall-lazy")));
        }
    }
    let expected = Term::copy_node(
        g.subject().clone(),
        Term::var(x),
        x1,
        x2,
        d1.subject().clone(),
        d2.subject().clone(),
    );
    if expected != concl.subject {
        errs.push(("subject decoration", format!("expected {expected}")));
    }
    let ty = Type::with(d1.ty().clone(), d2.ty().clone());
    if ty != concl.ty {
        errs.push(("type mismatch", format!("expected {ty}")));
    }
}

pub(crate) fn all_axioms_atomic(d: &Derivation) -> bool {
    if d.rule == Rule::Ax {
        return matches!(d.ty(), Type::Var(_));
    }
    d.premises.iter().all(all_axioms_atomic)
}

fn with_l(d: &Derivation, i: Index, system: System, errs: &mut Errs) {
    let concl = &d.conclusion;
    let prem = &d.premises[0];
    let (removed, added) = ctx_diff(&concl.context, prem.context());
    let (Some((y, pair_ty)), Some((xi, ai))) = (single(&removed), single(&added)) else {
        errs.push(("context split", "premise and conclusion contexts differ by more than one assumption".into()));
        return;
    };
    match pair_ty {
        Type::With(l, r) => {
            let comp = if i == Index::First { l } else { r };
            if comp.as_ref() != ai {
                errs.push(("type mismatch", format!("component {} differs from premise assumption {ai}", comp)));
            }
        }
        other => errs.push(("type mismatch", format!("principal assumption {other} is not a with type"))),
    }
    if system == System::Lam && !closed_forall_lazy(pair_ty) {
        errs.push(("closed forall-lazy", format!("type {pair_ty} must be closed and forall-lazy")));
    }
    if prem.ty() != &concl.ty {
        errs.push(("type mismatch", "premise and conclusion types differ".into()));
    }
    let expected = prem.subject().subst(xi, &Term::proj(i, Term::var(y)));
    if expected != concl.subject {
        errs.push(("subject decoration", format!("expected {expected}")));
    }
}

fn forall_r(d: &Derivation, system: System, errs: &mut Errs) {
    let concl = &d.conclusion;
    let prem = &d.premises[0];
    if prem.context() != &concl.context {
        errs.push(("context split", "forallR keeps the context unchanged".into()));
    }
    if prem.subject() != &concl.subject {
        errs.push(("subject decoration", "forallR keeps the subject unchanged".into()));
    }
    let Type::Forall(alpha, body) = &concl.ty else {
        errs.push(("type mismatch", format!("{} is not a universal type", concl.ty)));
        return;
    };
    match Type::match_instance(body, alpha, prem.ty()) {
        None => errs.push(("type mismatch", format!("{} is not an instance of {}", prem.ty(), concl.ty))),
        Some(None) => {}
        Some(Some(Type::Var(gamma))) => {
            if concl.context.free_type_vars().contains(&gamma) {
                errs.push(("eigenvariable", format!("`{gamma}` is free in the context")));
            }
            if concl.ty.has_free(&gamma) {
                errs.push(("eigenvariable", format!("`{gamma}` is free in the conclusion type")));
            }
        }
        Some(Some(t)) => errs.push(("eigenvariable", format!("instance {t} is not a type variable"))),
    }
    if system == System::Lam && concl.ty.is_closed() && !concl.context.free_type_vars().is_empty() {
        errs.push(("closure condition (ii)", "closed universal conclusion with an open context".into()));
    }
}

fn forall_l(d: &Derivation, errs: &mut Errs) {
    let concl = &d.conclusion;
    let prem = &d.premises[0];
    if prem.subject() != &concl.subject {
        errs.push(("subject decoration", "forallL keeps the subject unchanged".into()));
    }
    if prem.ty() != &concl.ty {
        errs.push(("type mismatch", "forallL keeps the conclusion type unchanged".into()));
    }
    let (removed, added) = ctx_diff(&concl.context, prem.context());
    let (Some((x, quant)), Some((x2, inst))) = (single(&removed), single(&added)) else {
        errs.push(("context split", "premise and conclusion contexts differ by more than one assumption".into()));
        return;
    };
    if x != x2 {
        errs.push(("context split", format!("instantiated assumption `{x2}` differs from `{x}`")));
    }
    match quant {
        Type::Forall(alpha, body) => {
            if Type::match_instance(body, alpha, inst).is_none() {
                errs.push(("type mismatch", format!("{inst} is not an instance of {quant}")));
            }
        }
        other => errs.push(("type mismatch", format!("{other} is not a universal type"))),
    }
}
