//! One-step reduction, normalisation with step accounting, and eta.

pub(crate) mod annotated;
mod eval;
mod witness;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::syntax::{Index, Term};

pub use eval::{beta_eta_equal, beta_normalize, eta_normalize};
pub use witness::{push_reduction, WitnessError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RedexKind {
    Beta,
    Proj,
    Copy,
    LetUnit,
    LetTensor,
    Eta,
}

/// Children are numbered left to right: `App` fun 0 / arg 1, `Pair` 0 / 1,
/// `Abs` and `Proj` body 0, `Copy` guard 0 / scrutinee 1 / branches 2, 3.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Redex {
    pub path: Vec<usize>,
    pub kind: RedexKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
pub enum ReduceError {
    #[error("not a redex at {0:?}")]
    NotARedex(Vec<usize>),
    #[error("copy scrutinee is not a value")]
    GuardNotValue,
    #[error("budget of {0} steps exhausted")]
    BudgetExhausted(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub redex: Redex,
    pub size_after: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Trace {
    pub initial_size: usize,
    pub strategy: Strategy,
    pub steps: Vec<TraceStep>,
}

impl Trace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Whether sizes strictly decrease along the trace.
    pub fn strictly_shrinking(&self) -> bool {
        let mut prev = self.initial_size;
        for s in &self.steps {
            if s.size_after >= prev {
                return false;
            }
            prev = s.size_after;
        }
        true
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    Leftmost,
    Rightmost,
    Random(u64),
}

impl std::fmt::Display for Strategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Strategy::Leftmost => write!(f, "leftmost"),
            Strategy::Rightmost => write!(f, "rightmost"),
            Strategy::Random(s) => write!(f, "random({s})"),
        }
    }
}

pub fn subterm<'a>(t: &'a Term, path: &[usize]) -> Option<&'a Term> {
    let Some((i, rest)) = path.split_first() else {
        return Some(t);
    };
    let child = match (t, i) {
        (Term::Abs(_, b), 0) | (Term::Proj(_, b), 0) => b.as_ref(),
        (Term::App(a, _), 0) | (Term::Pair(a, _), 0) => a.as_ref(),
        (Term::App(_, b), 1) | (Term::Pair(_, b), 1) => b.as_ref(),
        (Term::Copy(c), 0) => &c.guard,
        (Term::Copy(c), 1) => &c.scrutinee,
        (Term::Copy(c), 2) => &c.left,
        (Term::Copy(c), 3) => &c.right,
        _ => return None,
    };
    subterm(child, rest)
}

/// Replaces the subterm at `path` by `f(subterm)`.
pub(crate) fn replace_at(
    t: &Term,
    path: &[usize],
    f: &mut dyn FnMut(&Term) -> Result<Term, ReduceError>,
) -> Result<Term, ReduceError> {
    let Some((i, rest)) = path.split_first() else {
        return f(t);
    };
    let bad = || ReduceError::NotARedex(path.to_vec());
    Ok(match (t, i) {
        (Term::Abs(x, b), 0) => Term::abs(x.clone(), replace_at(b, rest, f)?),
        (Term::Proj(k, b), 0) => Term::proj(*k, replace_at(b, rest, f)?),
        (Term::App(a, b), 0) => Term::app(replace_at(a, rest, f)?, (**b).clone()),
        (Term::App(a, b), 1) => Term::app((**a).clone(), replace_at(b, rest, f)?),
        (Term::Pair(a, b), 0) => Term::pair(replace_at(a, rest, f)?, (**b).clone()),
        (Term::Pair(a, b), 1) => Term::pair((**a).clone(), replace_at(b, rest, f)?),
        (Term::Copy(c), j @ 1..=3) => {
            let mut c = (**c).clone();
            match j {
                1 => c.scrutinee = replace_at(&c.scrutinee, rest, f)?,
                2 => c.left = replace_at(&c.left, rest, f)?,
                _ => c.right = replace_at(&c.right, rest, f)?,
            }
            Term::Copy(Box::new(c))
        }
        _ => return Err(bad()),
    })
}

/// Contracts the redex at the root of `t`.
pub fn contract(t: &Term, kind: RedexKind) -> Result<Term, ReduceError> {
    let bad = || ReduceError::NotARedex(vec![]);
    match (kind, t) {
        (RedexKind::Beta, Term::App(f, a)) => match f.as_ref() {
            Term::Abs(x, b) => Ok(b.subst(x, a)),
            _ => Err(bad()),
        },
        (RedexKind::Proj, Term::Proj(i, p)) => match p.as_ref() {
            Term::Pair(a, b) => Ok(if *i == Index::First { (**a).clone() } else { (**b).clone() }),
            _ => Err(bad()),
        },
        (RedexKind::Copy, Term::Copy(c)) => {
            if !c.scrutinee.is_value() {
                return Err(ReduceError::GuardNotValue);
            }
            Ok(Term::pair(
                c.left.subst(&c.left_binder, &c.scrutinee),
                c.right.subst(&c.right_binder, &c.scrutinee),
            ))
        }
        // let I be I in N → N
        (RedexKind::LetUnit, Term::App(f, n)) if f.alpha_eq(&Term::identity()) => Ok((**n).clone()),
        // let M1⊗M2 be x⊗y in N → N[M1/x, M2/y]
        (RedexKind::LetTensor, Term::App(p, k)) => {
            let Term::Abs(z, body) = p.as_ref() else { return Err(bad()) };
            let Term::App(zm, m2) = body.as_ref() else { return Err(bad()) };
            let Term::App(zz, m1) = zm.as_ref() else { return Err(bad()) };
            if !matches!(zz.as_ref(), Term::Var(v) if v == z) || m1.occurrences(z) + m2.occurrences(z) != 0 {
                return Err(bad());
            }
            let Term::Abs(x, inner) = k.as_ref() else { return Err(bad()) };
            let Term::Abs(y, n) = inner.as_ref() else { return Err(bad()) };
            // contract the two abstractions one after the other
            let step1 = Term::abs(y.clone(), (**n).clone()).subst(x, m1);
            match step1 {
                Term::Abs(y2, n2) => Ok(n2.subst(&y2, m2)),
                _ => Err(bad()),
            }
        }
        (RedexKind::Eta, Term::Abs(x, b)) => match b.as_ref() {
            Term::App(m, v) if matches!(v.as_ref(), Term::Var(w) if w == x) && m.occurrences(x) == 0 => {
                Ok((**m).clone())
            }
            _ => Err(bad()),
        },
        _ => Err(bad()),
    }
}

pub fn step(t: &Term, r: &Redex) -> Result<Term, ReduceError> {
    replace_at(t, &r.path, &mut |s| {
        contract(s, r.kind).map_err(|e| match e {
            ReduceError::NotARedex(_) => ReduceError::NotARedex(r.path.clone()),
            other => other,
        })
    })
}

/// All beta, projection and copy redexes in pre-order (left-outermost
/// first). A copy is a redex only once its scrutinee is a value.
pub fn find_redexes(t: &Term) -> Vec<Redex> {
    fn go(t: &Term, path: &mut Vec<usize>, out: &mut Vec<Redex>) {
        let kind = match t {
            Term::App(f, _) if matches!(f.as_ref(), Term::Abs(..)) => Some(RedexKind::Beta),
            Term::Proj(_, p) if matches!(p.as_ref(), Term::Pair(..)) => Some(RedexKind::Proj),
            Term::Copy(c) if c.scrutinee.is_value() => Some(RedexKind::Copy),
            _ => None,
        };
        if let Some(kind) = kind {
            out.push(Redex { path: path.clone(), kind });
        }
        let child = |i: usize, c: &Term, path: &mut Vec<usize>, out: &mut Vec<Redex>| {
            path.push(i);
            go(c, path, out);
            path.pop();
        };
        match t {
            Term::Var(_) => {}
            Term::Abs(_, b) | Term::Proj(_, b) => child(0, b, path, out),
            Term::App(a, b) | Term::Pair(a, b) => {
                child(0, a, path, out);
                child(1, b, path, out);
            }
            // guards are values and contain no redexes
            Term::Copy(c) => {
                child(1, &c.scrutinee, path, out);
                child(2, &c.left, path, out);
                child(3, &c.right, path, out);
            }
        }
    }
    let mut out = Vec::new();
    go(t, &mut Vec::new(), &mut out);
    out
}

pub fn is_normal(t: &Term) -> bool {
    find_redexes(t).is_empty()
}

/// Reduces to normal form, recording every step.
pub fn normalize(t: &Term, strategy: Strategy, budget: usize) -> Result<(Term, Trace), ReduceError> {
    let mut rng = match strategy {
        Strategy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };
    let mut cur = t.clone();
    let mut trace = Trace { initial_size: t.size(), strategy, steps: Vec::new() };
    loop {
        let mut redexes = find_redexes(&cur);
        if redexes.is_empty() {
            return Ok((cur, trace));
        }
        if trace.steps.len() >= budget {
            return Err(ReduceError::BudgetExhausted(budget));
        }
        let r = match (&mut rng, strategy) {
            (_, Strategy::Leftmost) => redexes.swap_remove(0),
            (_, Strategy::Rightmost) => redexes.pop().expect("nonempty"),
            (Some(rng), _) => {
                let i = rng.gen_range(0..redexes.len());
                redexes.swap_remove(i)
            }
            (None, _) => unreachable!("random strategy always has a generator"),
        };
        cur = step(&cur, &r)?;
        trace.steps.push(TraceStep { size_after: cur.size(), redex: r });
    }
}

/// First eta-redex `λx.M x` with `x ∉ FV(M)` in pre-order, contracted.
pub fn eta_step(t: &Term) -> Option<Term> {
    fn find(t: &Term, path: &mut Vec<usize>) -> Option<Vec<usize>> {
        if contract(t, RedexKind::Eta).is_ok() {
            return Some(path.clone());
        }
        let kids: Vec<(usize, &Term)> = match t {
            Term::Var(_) => vec![],
            Term::Abs(_, b) | Term::Proj(_, b) => vec![(0, b)],
            Term::App(a, b) | Term::Pair(a, b) => vec![(0, a), (1, b)],
            Term::Copy(c) => vec![(1, &c.scrutinee), (2, &c.left), (3, &c.right)],
        };
        for (i, k) in kids {
            path.push(i);
            if let Some(p) = find(k, path) {
                return Some(p);
            }
            path.pop();
        }
        None
    }
    let path = find(t, &mut Vec::new())?;
    step(t, &Redex { path, kind: RedexKind::Eta }).ok()
}

#[cfg(test)]
mod tests;
