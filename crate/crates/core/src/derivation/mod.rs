//! Derivation trees, rule checking and proof metrics.

pub mod build;
mod check;
mod props;
mod tree;

#[cfg(test)]
mod tests;

pub use check::{check, System, Violation};
pub(crate) use check::ctx_diff;
#[cfg(test)]
pub(crate) use check::all_axioms_atomic;
pub use props::{
    check_lazy_propagation, check_size_bounds, eta_expanded, judgement_is_forall_lazy, metrics, LazyCounterexample,
    PreconditionError, ProofMetrics, SizeBoundError,
};
pub use tree::{Derivation, Judgement, Path, Rule};
