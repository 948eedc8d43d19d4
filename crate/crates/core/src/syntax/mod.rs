//! Abstract syntax shared by every calculus in the crate.

pub mod fresh;
pub mod term;
pub mod types;

use serde::Serialize;
use thiserror::Error;

pub use term::{CopyTerm, Index, Term};
pub use types::{Connective, Polarity, Type, TypeFlags};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SyntaxError {
    #[error("copy guard is not a value: {0}")]
    GuardNotValue(String),
    #[error("duplicate variable `{0}` in context")]
    DuplicateVariable(String),
}

/// A linear context: an ordered list of assumptions compared as a multiset.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Context {
    entries: Vec<(String, Type)>,
}

impl Context {
    pub fn new() -> Context {
        Context::default()
    }

    pub fn from_entries(entries: Vec<(String, Type)>) -> Result<Context, SyntaxError> {
        let mut ctx = Context::new();
        for (x, a) in entries {
            ctx.push(x, a)?;
        }
        Ok(ctx)
    }

    pub fn single(x: impl Into<String>, a: Type) -> Context {
        Context { entries: vec![(x.into(), a)] }
    }

    pub fn push(&mut self, x: impl Into<String>, a: Type) -> Result<(), SyntaxError> {
        let x = x.into();
        if self.contains(&x) {
            return Err(SyntaxError::DuplicateVariable(x));
        }
        self.entries.push((x, a));
        Ok(())
    }

    pub fn with(&self, x: impl Into<String>, a: Type) -> Result<Context, SyntaxError> {
        let mut c = self.clone();
        c.push(x, a)?;
        Ok(c)
    }

    pub fn entries(&self) -> &[(String, Type)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, x: &str) -> bool {
        self.entries.iter().any(|(y, _)| y == x)
    }

    pub fn get(&self, x: &str) -> Option<&Type> {
        self.entries.iter().find(|(y, _)| y == x).map(|(_, a)| a)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(x, _)| x.as_str())
    }

    /// Removes `x`, returning its type.
    pub fn remove(&mut self, x: &str) -> Option<Type> {
        let i = self.entries.iter().position(|(y, _)| y == x)?;
        Some(self.entries.remove(i).1)
    }

    pub fn without(&self, x: &str) -> Context {
        let mut c = self.clone();
        c.remove(x);
        c
    }

    /// Sum of the sizes of the assumption types.
    pub fn size(&self) -> usize {
        self.entries.iter().map(|(_, a)| a.size()).sum()
    }

    pub fn free_type_vars(&self) -> std::collections::BTreeSet<String> {
        self.entries.iter().flat_map(|(_, a)| a.free_vars()).collect()
    }

    /// Disjoint union; fails on a shared variable name.
    pub fn union(&self, other: &Context) -> Result<Context, SyntaxError> {
        let mut c = self.clone();
        for (x, a) in &other.entries {
            c.push(x.clone(), a.clone())?;
        }
        Ok(c)
    }

    /// Entries sorted by name, for deterministic output.
    pub fn sorted(&self) -> Vec<(String, Type)> {
        let mut v = self.entries.clone();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }

    pub fn map_types(&self, f: impl Fn(&Type) -> Type) -> Context {
        Context {
            entries: self.entries.iter().map(|(x, a)| (x.clone(), f(a))).collect(),
        }
    }

    pub fn rename(&self, from: &str, to: &str) -> Context {
        Context {
            entries: self
                .entries
                .iter()
                .map(|(x, a)| (if x == from { to.to_string() } else { x.clone() }, a.clone()))
                .collect(),
        }
    }
}

impl PartialEq for Context {
    fn eq(&self, other: &Context) -> bool {
        self.len() == other.len()
            && self.entries.iter().all(|(x, a)| other.get(x).is_some_and(|b| a == b))
    }
}

impl Eq for Context {}

impl FromIterator<(String, Type)> for Context {
    fn from_iter<I: IntoIterator<Item = (String, Type)>>(iter: I) -> Context {
        let mut c = Context::new();
        for (x, a) in iter {
            let _ = c.push(x, a);
        }
        c
    }
}
