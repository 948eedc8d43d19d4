use thiserror::Error;

use super::annotated::{from_derivation, navigate, to_derivation};
use super::{step, Redex};
use crate::derivation::{check, Derivation, System};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("subject-reduction witness failed at {path:?}: {reason}")]
pub struct WitnessError {
    pub path: Vec<usize>,
    pub reason: String,
}

fn fail(reason: impl Into<String>) -> WitnessError {
    WitnessError { path: Vec::new(), reason: reason.into() }
}

/// Builds a LAM derivation of the same judgement with the redex `r`
/// contracted in the subject. The redex is fired on the annotated term
/// read off `d`; cuts are inlined only where the redex straddles them,
/// and the result is rechecked.
pub fn push_reduction(d: &Derivation, r: &Redex) -> Result<Derivation, WitnessError> {
    let expected = step(d.subject(), r).map_err(|e| fail(e.to_string()))?;
    let ann = from_derivation(d).map_err(fail)?;
    let fired = navigate(ann, &r.path, r.kind).map_err(fail)?;
    let out = to_derivation(&fired).map_err(fail)?;
    if out.subject() != &expected {
        return Err(fail(format!("rebuilt subject {} differs from {}", out.subject(), expected)));
    }
    if out.context() != d.context() || out.ty() != d.ty() {
        return Err(fail("rebuilt derivation changes the judgement"));
    }
    if out.subject().size() >= d.subject().size() {
        return Err(fail("subject did not shrink"));
    }
    if let Err(vs) = check(&out, System::Lam) {
        let v = &vs[0];
        return Err(WitnessError { path: v.path.clone(), reason: format!("{}: {}", v.condition, v.explanation) });
    }
    Ok(out)
}
