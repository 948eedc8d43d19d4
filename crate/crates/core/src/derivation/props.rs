use serde::Serialize;
use thiserror::Error;

use super::check::all_axioms_atomic;
use super::tree::{Derivation, Judgement, Path, Rule};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ProofMetrics {
    pub size: usize,
    pub weight: usize,
    pub height_sum: usize,
    pub max_height: usize,
}

/// Size, weight (withR1 count), sum of heights of cut-rooted subtrees,
/// and height.
pub fn metrics(d: &Derivation) -> ProofMetrics {
    fn height_sum(d: &Derivation) -> usize {
        let own = if d.rule == Rule::Cut { d.height() } else { 0 };
        own + d.premises.iter().map(height_sum).sum::<usize>()
    }
    ProofMetrics { size: d.size(), weight: d.weight(), height_sum: height_sum(d), max_height: d.height() }
}

pub fn judgement_is_forall_lazy(j: &Judgement) -> bool {
    j.is_forall_lazy()
}

#[derive(Debug, Clone, Error, PartialEq, Eq, Serialize)]
pub enum PreconditionError {
    #[error("derivation contains cuts")]
    NotCutFree,
    #[error("root judgement is not forall-lazy")]
    NotForallLazy,
    #[error("derivation is not eta-expanded")]
    NotEtaExpanded,
}

#[derive(Debug, Clone, Error, PartialEq, Eq, Serialize)]
#[error("at {path:?}: {reason}")]
pub struct LazyCounterexample {
    pub path: Path,
    pub reason: String,
}

/// For a cut-free forall-lazy derivation: no withR1, withLi or forallL
/// nodes; the subject is normal and free of copy and projections; with an
/// empty context the subject is a value.
pub fn check_lazy_propagation(d: &Derivation) -> Result<(), LazyCounterexample> {
    let fail = |path: Path, reason: &str| Err(LazyCounterexample { path, reason: reason.to_string() });
    if !d.is_cut_free() {
        return fail(vec![], "derivation is not cut-free");
    }
    if !d.conclusion.is_forall_lazy() {
        return fail(vec![], "root judgement is not forall-lazy");
    }
    for path in d.paths() {
        let n = d.at(&path).expect("path from paths()");
        if matches!(n.rule, Rule::WithR1 | Rule::WithL(_) | Rule::ForallL) {
            return fail(path, &format!("contains a {} node", n.rule));
        }
    }
    let m = d.subject();
    if !crate::reduce::is_normal(m) {
        return fail(vec![], "subject is not normal");
    }
    if m.has_copy_or_proj() {
        return fail(vec![], "subject contains copy or a projection");
    }
    if d.context().is_empty() && !m.is_value() {
        return fail(vec![], "closed subject is not a value");
    }
    Ok(())
}

/// Whether every axiom concludes `x:α ⊢ x:α` for a type variable `α`.
pub fn eta_expanded(d: &Derivation) -> Result<bool, PreconditionError> {
    if !d.is_cut_free() {
        return Err(PreconditionError::NotCutFree);
    }
    if !d.conclusion.is_forall_lazy() {
        return Err(PreconditionError::NotForallLazy);
    }
    Ok(all_axioms_atomic(d))
}

#[derive(Debug, Clone, Error, PartialEq, Eq, Serialize)]
pub enum SizeBoundError {
    #[error(transparent)]
    Precondition(#[from] PreconditionError),
    #[error("bound violated: |M| = {term}, |Γ|+|A| = {judgement}, 2|D| = {twice_derivation}")]
    Violated { term: usize, judgement: usize, twice_derivation: usize },
}

/// `|M| ≤ |Γ| + |A| ≤ 2·|D|` at the root of an eta-expanded derivation.
pub fn check_size_bounds(d: &Derivation) -> Result<(usize, usize, usize), SizeBoundError> {
    if !eta_expanded(d)? {
        return Err(PreconditionError::NotEtaExpanded.into());
    }
    let term = d.subject().size();
    let judgement = d.context().size() + d.ty().size();
    let twice_derivation = 2 * d.size();
    if term <= judgement && judgement <= twice_derivation {
        Ok((term, judgement, twice_derivation))
    } else {
        Err(SizeBoundError::Violated { term, judgement, twice_derivation })
    }
}
