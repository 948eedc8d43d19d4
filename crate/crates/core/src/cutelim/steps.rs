//! The individual rewriting rules applied at a cut node.

use crate::derivation::build;
use crate::derivation::{Derivation, Rule};
use crate::syntax::Type;

use super::node::{decode, rebuild, rename_free, tsubst, Node};
use super::{CritStatus, CutClass, CutElimError, SymKind};

type R<T> = Result<T, CutElimError>;

fn internal(msg: impl Into<String>) -> CutElimError {
    CutElimError::Internal(msg.into())
}

fn cut(l: Derivation, r: Derivation, x: &str) -> R<Derivation> {
    build::cut(l, r, x).map_err(|e| internal(e.to_string()))
}

/// Whether `x` is the principal assumption introduced by the last rule of `r`.
pub(crate) fn principal(r: &Derivation, x: &str) -> R<bool> {
    Ok(match decode(r)? {
        Node::Ax { x: y, .. } | Node::WithR1 { x: y, .. } | Node::ForallL { x: y, .. } => y == x,
        Node::LolliL { y, .. } | Node::WithL { y, .. } => y == x,
        _ => false,
    })
}

pub(crate) fn classify(d: &Derivation) -> R<CutClass> {
    let Node::Cut { x } = decode(d)? else { return Err(CutElimError::NotACut) };
    let (l, r) = (&d.premises[0], &d.premises[1]);
    if r.rule == Rule::Ax {
        return Ok(CutClass::Symmetric(SymKind::XAx));
    }
    if l.rule == Rule::Ax {
        return Ok(CutClass::Symmetric(SymKind::AxY));
    }
    if !principal(r, &x)? {
        return Ok(CutClass::Commuting);
    }
    Ok(match (l.rule, r.rule) {
        (_, Rule::WithR1) => {
            let status = if !l.context().is_empty() {
                CritStatus::Deadlock
            } else if l.is_cut_free() {
                CritStatus::Ready
            } else {
                CritStatus::Safe
            };
            CutClass::Critical(status)
        }
        (Rule::WithR1, Rule::WithL(_)) => CutClass::CopyFirst,
        (Rule::LolliR, Rule::LolliL) => CutClass::Symmetric(SymKind::Lolli),
        (Rule::WithR0, Rule::WithL(_)) => CutClass::Symmetric(SymKind::With),
        (Rule::ForallR, Rule::ForallL) => CutClass::Symmetric(SymKind::Forall),
        _ => CutClass::Commuting,
    })
}

pub(crate) fn symmetric(d: &Derivation, kind: SymKind) -> R<Derivation> {
    let Node::Cut { x } = decode(d)? else { return Err(CutElimError::NotACut) };
    let (l, r) = (&d.premises[0], &d.premises[1]);
    match kind {
        SymKind::XAx => Ok(l.clone()),
        SymKind::AxY => {
            let Node::Ax { x: y, .. } = decode(l)? else { return Err(internal("expected an axiom")) };
            rename_free(r, &x, &y)
        }
        SymKind::Lolli => {
            let Node::LolliR { x: v } = decode(l)? else { return Err(internal("expected lolliR")) };
            let Node::LolliL { w, .. } = decode(r)? else { return Err(internal("expected lolliL")) };
            let inner = cut(r.premises[0].clone(), l.premises[0].clone(), &v)?;
            cut(inner, r.premises[1].clone(), &w)
        }
        SymKind::With => {
            let Node::WithL { i, xi, .. } = decode(r)? else { return Err(internal("expected withL")) };
            let side = l.premises[i.number() as usize - 1].clone();
            cut(side, r.premises[0].clone(), &xi)
        }
        SymKind::Forall => {
            let Node::ForallR { gamma } = decode(l)? else { return Err(internal("expected forallR")) };
            let Node::ForallL { alpha, body, .. } = decode(r)? else { return Err(internal("expected forallL")) };
            let rp = &r.premises[0];
            let inst = rp.context().get(&x).ok_or_else(|| internal("forallL premise"))?;
            let lp = match Type::match_instance(&body, &alpha, inst) {
                Some(Some(t)) => tsubst(&l.premises[0], &gamma, &t),
                Some(None) => l.premises[0].clone(),
                None => return Err(internal("forallL premise is not an instance")),
            };
            cut(lp, rp.clone(), &x)
        }
    }
}

/// Ready cut against `withR1`: the cut-free value derivation is duplicated
/// into both branches and the rule becomes `withR0`.
pub(crate) fn ready(d: &Derivation) -> R<Derivation> {
    let (l, r) = (&d.premises[0], &d.premises[1]);
    let Node::WithR1 { x1, x2, .. } = decode(r)? else { return Err(internal("expected withR1")) };
    let c1 = cut(l.clone(), r.premises[0].clone(), &x1)?;
    let c2 = cut(l.clone(), r.premises[1].clone(), &x2)?;
    build::with_r0(c1, c2).map_err(|e| internal(e.to_string()))
}

/// Permutes the cut one rule upward. When `x` is not principal in the
/// right premise the cut moves into the right premise, otherwise into the
/// left premise.
pub(crate) fn commute(d: &Derivation) -> R<Derivation> {
    let Node::Cut { x } = decode(d)? else { return Err(CutElimError::NotACut) };
    let (l, r) = (&d.premises[0], &d.premises[1]);
    if !principal(r, &x)? {
        let node = decode(r)?;
        let mut ps = r.premises.clone();
        let j = ps
            .iter()
            .enumerate()
            .position(|(j, p)| p.context().contains(&x) && !binds(&node, j, &x))
            .ok_or_else(|| internal("cut variable not found in the right premise"))?;
        ps[j] = cut(l.clone(), ps[j].clone(), &x)?;
        return rebuild(&node, ps);
    }
    let node = decode(l)?;
    let j = match (&node, l.rule) {
        (Node::LolliL { .. }, _) | (Node::Cut { .. }, _) => 1,
        (Node::WithL { .. }, _) | (Node::ForallL { .. }, _) => 0,
        (_, rule) => return Err(CutElimError::NoRule(format!("({rule}, {})", r.rule))),
    };
    let mut ps = l.premises.clone();
    ps[j] = cut(ps[j].clone(), r.clone(), &x)?;
    rebuild(&node, ps)
}

fn binds(node: &Node, j: usize, x: &str) -> bool {
    match (node, j) {
        (Node::Cut { x: v }, 1) | (Node::LolliR { x: v }, 0) | (Node::LolliL { w: v, .. }, 1) => v == x,
        (Node::WithL { xi, .. }, 0) => xi == x,
        _ => false,
    }
}

/// Which commuting steps the strategy may take. Passing a cut through
/// another cut is only done as `cut(L, cut(R1,R2)) → cut(cut(L,R1), R2)`,
/// or as an exchange into `R2` when that lowers the cut mass; a cut whose
/// left premise ends in a cut waits for that cut instead.
pub(crate) fn commute_allowed(d: &Derivation) -> R<bool> {
    let Node::Cut { x } = decode(d)? else { return Err(CutElimError::NotACut) };
    let (l, r) = (&d.premises[0], &d.premises[1]);
    if principal(r, &x)? {
        return Ok(l.rule != Rule::Cut);
    }
    if r.rule != Rule::Cut || r.premises[0].context().contains(&x) {
        return Ok(true);
    }
    Ok(cut_mass(&commute(d)?) < cut_mass(d))
}

/// Sum over cut nodes of the size of the subtree they root.
pub(crate) fn cut_mass(d: &Derivation) -> usize {
    let own = if d.rule == Rule::Cut { d.size() } else { 0 };
    own + d.premises.iter().map(cut_mass).sum::<usize>()
}
