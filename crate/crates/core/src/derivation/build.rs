//! Smart constructors computing conclusions from premises.
//!
//! These never fail on well-formed input; they do not check side
//! conditions (that is `check`'s job) but return an error when the
//! premises cannot even be combined, e.g. on a name clash.

use thiserror::Error;

use super::tree::{Derivation, Judgement, Rule};
use crate::syntax::{Context, Index, SyntaxError, Term, Type};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum BuildError {
    #[error("variable `{0}` is not in the premise context")]
    MissingVariable(String),
    #[error("premise has type {found}, expected {expected}")]
    TypeMismatch { expected: String, found: String },
    #[error("premise context must be {0}")]
    BadContext(&'static str),
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
}

pub fn ax(x: impl Into<String>, a: Type) -> Derivation {
    let x = x.into();
    Derivation::new(Rule::Ax, Judgement::new(Context::single(x.clone(), a.clone()), Term::var(x), a), vec![])
}

/// `Γ ⊢ N:A` and `Δ, x:A ⊢ M:C` give `Γ, Δ ⊢ M[N/x]:C`.
pub fn cut(left: Derivation, right: Derivation, x: &str) -> Result<Derivation, BuildError> {
    let a = right.context().get(x).ok_or_else(|| BuildError::MissingVariable(x.to_string()))?;
    if a != left.ty() {
        return Err(BuildError::TypeMismatch { expected: a.to_string(), found: left.ty().to_string() });
    }
    let ctx = left.context().union(&right.context().without(x))?;
    let subject = right.subject().subst(x, left.subject());
    let ty = right.ty().clone();
    Ok(Derivation::new(Rule::Cut, Judgement::new(ctx, subject, ty), vec![left, right]))
}

pub fn lolli_r(premise: Derivation, x: &str) -> Result<Derivation, BuildError> {
    let a = premise.context().get(x).ok_or_else(|| BuildError::MissingVariable(x.to_string()))?.clone();
    let ctx = premise.context().without(x);
    let subject = Term::abs(x, premise.subject().clone());
    let ty = Type::lolli(a, premise.ty().clone());
    Ok(Derivation::new(Rule::LolliR, Judgement::new(ctx, subject, ty), vec![premise]))
}

/// `Γ ⊢ N:A` and `Δ, x:B ⊢ M:C` give `Γ, y:A⊸B, Δ ⊢ M[yN/x]:C`.
pub fn lolli_l(left: Derivation, right: Derivation, x: &str, y: &str) -> Result<Derivation, BuildError> {
    let b = right.context().get(x).ok_or_else(|| BuildError::MissingVariable(x.to_string()))?.clone();
    let f = Type::lolli(left.ty().clone(), b);
    let mut ctx = left.context().with(y, f)?;
    ctx = ctx.union(&right.context().without(x))?;
    let subject = right.subject().subst(x, &Term::app(Term::var(y), left.subject().clone()));
    let ty = right.ty().clone();
    Ok(Derivation::new(Rule::LolliL, Judgement::new(ctx, subject, ty), vec![left, right]))
}

/// Additive right rule with shared context.
pub fn with_r(d1: Derivation, d2: Derivation) -> Result<Derivation, BuildError> {
    if d1.context() != d2.context() {
        return Err(BuildError::BadContext("shared between both premises"));
    }
    let j = Judgement::new(
        d1.context().clone(),
        Term::pair(d1.subject().clone(), d2.subject().clone()),
        Type::with(d1.ty().clone(), d2.ty().clone()),
    );
    Ok(Derivation::new(Rule::WithR, j, vec![d1, d2]))
}

pub fn with_r0(d1: Derivation, d2: Derivation) -> Result<Derivation, BuildError> {
    if !d1.context().is_empty() || !d2.context().is_empty() {
        return Err(BuildError::BadContext("empty"));
    }
    let j = Judgement::new(
        Context::new(),
        Term::pair(d1.subject().clone(), d2.subject().clone()),
        Type::with(d1.ty().clone(), d2.ty().clone()),
    );
    Ok(Derivation::new(Rule::WithR0, j, vec![d1, d2]))
}

/// `x1:A ⊢ M1:A1`, `x2:A ⊢ M2:A2`, `⊢ V:A` give
/// `x:A ⊢ copy^V x as x1,x2 in <M1,M2> : A1∧A2`.
pub fn with_r1(d1: Derivation, d2: Derivation, guard: Derivation, x: &str) -> Result<Derivation, BuildError> {
    let single = |d: &Derivation| -> Result<(String, Type), BuildError> {
        match d.context().entries() {
            [(y, a)] => Ok((y.clone(), a.clone())),
            _ => Err(BuildError::BadContext("a single assumption")),
        }
    };
    let (x1, a) = single(&d1)?;
    let (x2, _) = single(&d2)?;
    if !guard.context().is_empty() {
        return Err(BuildError::BadContext("empty for the guard premise"));
    }
    let subject = Term::copy(
        guard.subject().clone(),
        Term::var(x),
        x1,
        x2,
        d1.subject().clone(),
        d2.subject().clone(),
    )?;
    let j = Judgement::new(Context::single(x, a), subject, Type::with(d1.ty().clone(), d2.ty().clone()));
    Ok(Derivation::new(Rule::WithR1, j, vec![d1, d2, guard]))
}

/// `Γ, xi:Ai ⊢ M:C` gives `Γ, y:A1∧A2 ⊢ M[πi(y)/xi]:C`; `other` is the
/// discarded component type.
pub fn with_l(premise: Derivation, i: Index, xi: &str, y: &str, other: Type) -> Result<Derivation, BuildError> {
    let ai = premise.context().get(xi).ok_or_else(|| BuildError::MissingVariable(xi.to_string()))?.clone();
    let pair_ty = match i {
        Index::First => Type::with(ai, other),
        Index::Second => Type::with(other, ai),
    };
    let ctx = premise.context().without(xi).with(y, pair_ty)?;
    let subject = premise.subject().subst(xi, &Term::proj(i, Term::var(y)));
    let j = Judgement::new(ctx, subject, premise.ty().clone());
    Ok(Derivation::new(Rule::WithL(i), j, vec![premise]))
}

/// Generalises the eigenvariable `gamma`, reusing it as the binder.
pub fn forall_r(premise: Derivation, gamma: &str) -> Derivation {
    let j = Judgement::new(
        premise.context().clone(),
        premise.subject().clone(),
        Type::forall(gamma, premise.ty().clone()),
    );
    Derivation::new(Rule::ForallR, j, vec![premise])
}

/// Premise has `x : body⟨b/alpha⟩`; conclusion has `x : ∀alpha.body`.
pub fn forall_l(premise: Derivation, x: &str, alpha: &str, body: Type) -> Result<Derivation, BuildError> {
    if premise.context().get(x).is_none() {
        return Err(BuildError::MissingVariable(x.to_string()));
    }
    let ctx = premise.context().without(x).with(x, Type::forall(alpha, body))?;
    let j = Judgement::new(ctx, premise.subject().clone(), premise.ty().clone());
    Ok(Derivation::new(Rule::ForallL, j, vec![premise]))
}
