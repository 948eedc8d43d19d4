//! Kernel for the LAM type assignment system: linear additives over
//! second-order multiplicative linear logic.

pub mod derivation;
pub mod frontend;
pub mod gen;
pub mod inhabit;
pub mod reduce;
pub mod syntax;
pub mod cutelim;
pub mod suite;
pub mod translate;

pub use derivation::{Derivation, Judgement, Rule};
pub use syntax::{Context, Index, Term, Type};
