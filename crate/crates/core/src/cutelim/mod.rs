//! Cut classification and forall-lazy cut-elimination by rounds.

pub(crate) mod node;
mod steps;

#[cfg(test)]
mod tests;

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::derivation::{check, metrics, Derivation, Path, Rule, System};
use crate::reduce::{find_redexes, step};
use crate::syntax::Term;

pub(crate) use node::uniquify;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum SymKind {
    /// (⊸R, ⊸L)
    Lolli,
    /// (∧R0, ∧Li)
    With,
    /// (∀R, ∀L)
    Forall,
    /// (X, ax)
    XAx,
    /// (ax, Y)
    AxY,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CritStatus {
    Safe,
    Deadlock,
    Ready,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CutClass {
    Symmetric(SymKind),
    Commuting,
    CopyFirst,
    Critical(CritStatus),
}

impl CutClass {
    pub fn label(self) -> &'static str {
        match self {
            CutClass::Symmetric(SymKind::Lolli) => "symmetric(lolliR,lolliL)",
            CutClass::Symmetric(SymKind::With) => "symmetric(withR0,withL)",
            CutClass::Symmetric(SymKind::Forall) => "symmetric(forallR,forallL)",
            CutClass::Symmetric(SymKind::XAx) => "symmetric(X,ax)",
            CutClass::Symmetric(SymKind::AxY) => "symmetric(ax,Y)",
            CutClass::Commuting => "commuting",
            CutClass::CopyFirst => "copy-first",
            CutClass::Critical(CritStatus::Safe) => "critical(safe)",
            CutClass::Critical(CritStatus::Deadlock) => "critical(deadlock)",
            CutClass::Critical(CritStatus::Ready) => "critical(ready)",
        }
    }

    /// Classes for which a rewriting rule exists.
    pub fn has_rule(self) -> bool {
        matches!(self, CutClass::Symmetric(_) | CutClass::Commuting | CutClass::Critical(CritStatus::Ready))
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq, Serialize)]
pub enum CutElimError {
    #[error("derivation does not check in LAM: {0}")]
    Unchecked(String),
    #[error("root judgement is not forall-lazy")]
    NotForallLazy,
    #[error("no cut at the given path")]
    NotACut,
    #[error("no rule for this cut class: {0}")]
    NoRule(String),
    #[error("stuck with cuts {0:?}")]
    Stuck(Vec<String>),
    #[error("step budget {0} exhausted")]
    BudgetExhausted(usize),
    #[error("internal: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SrcStep {
    Symmetric,
    Ready,
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Round {
    pub commuting_steps: usize,
    pub src_step: SrcStep,
    /// Cut classes present at the start of the round.
    pub cuts: BTreeMap<String, usize>,
    /// `|D| + 2·weight` after the round.
    pub potential: usize,
    pub height_sum: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ElimTrace {
    pub rounds: Vec<Round>,
    pub total_steps: usize,
    /// Potential before the first round and after each round.
    pub weight_trajectory: Vec<usize>,
    /// Whether every step was checked against term reduction.
    pub simulated: bool,
}

pub fn potential(d: &Derivation) -> usize {
    d.size() + 2 * d.weight()
}

fn require_lam(d: &Derivation) -> Result<(), CutElimError> {
    check(d, System::Lam).map_err(|vs| {
        CutElimError::Unchecked(vs.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))
    })
}

/// Every cut node with its class, in pre-order.
pub fn classify_cuts(d: &Derivation) -> Result<Vec<(Path, CutClass)>, CutElimError> {
    require_lam(d)?;
    classify_unchecked(d)
}

fn classify_unchecked(d: &Derivation) -> Result<Vec<(Path, CutClass)>, CutElimError> {
    let mut out = Vec::new();
    for path in d.paths() {
        let node = d.at(&path).expect("listed path");
        if node.rule == Rule::Cut {
            out.push((path, steps::classify(node)?));
        }
    }
    Ok(out)
}

/// Applies the rule for the cut at `path`.
pub fn elim_step(d: &Derivation, path: &[usize]) -> Result<Derivation, CutElimError> {
    let d = uniquify(d)?;
    step_at(&d, path)
}

fn step_at(d: &Derivation, path: &[usize]) -> Result<Derivation, CutElimError> {
    let sub = d.at(path).ok_or(CutElimError::NotACut)?;
    if sub.rule != Rule::Cut {
        return Err(CutElimError::NotACut);
    }
    let class = steps::classify(sub)?;
    let new = match class {
        CutClass::Symmetric(kind) => steps::symmetric(sub, kind)?,
        CutClass::Commuting => steps::commute(sub)?,
        CutClass::Critical(CritStatus::Ready) => steps::ready(sub)?,
        other => return Err(CutElimError::NoRule(other.label().into())),
    };
    let out = node::replace(d, path, new)?;
    Ok(if class == CutClass::Critical(CritStatus::Ready) { uniquify(&out)? } else { out })
}

/// True iff the subject of `before` reduces to the subject of `after` in
/// at most a few steps, up to alpha-equivalence.
pub fn verify_simulation(before: &Derivation, after: &Derivation) -> bool {
    reaches(before.subject(), after.subject(), 3)
}

fn reaches(from: &Term, to: &Term, depth: usize) -> bool {
    let mut frontier = VecDeque::from([(from.clone(), 0)]);
    let mut seen = BTreeSet::new();
    while let Some((t, k)) = frontier.pop_front() {
        if &t == to {
            return true;
        }
        if k == depth || !seen.insert(t.canonical_key()) {
            continue;
        }
        for r in find_redexes(&t) {
            if let Ok(next) = step(&t, &r) {
                frontier.push_back((next, k + 1));
            }
        }
    }
    false
}

fn post_order(d: &Derivation) -> Vec<Path> {
    let mut out = Vec::new();
    fn go(d: &Derivation, cur: &mut Path, out: &mut Vec<Path>) {
        for (i, p) in d.premises.iter().enumerate() {
            cur.push(i);
            go(p, cur, out);
            cur.pop();
        }
        out.push(cur.clone());
    }
    go(d, &mut Vec::new(), &mut out);
    out
}

/// Options for `eliminate_with`.
#[derive(Debug, Clone, Copy, Default)]
pub struct ElimOptions {
    /// Check every step against term reduction.
    pub simulate: bool,
    /// Maximum number of steps; `None` uses `10·|D|³ + 100`.
    pub budget: Option<usize>,
}

pub fn eliminate(d: &Derivation) -> Result<(Derivation, ElimTrace), CutElimError> {
    eliminate_with(d, ElimOptions::default())
}

pub fn eliminate_with(d: &Derivation, opts: ElimOptions) -> Result<(Derivation, ElimTrace), CutElimError> {
    eliminate_observed(d, opts, &mut |_, _| Ok(()))
}

/// Step callback: receives the derivation before and after each step.
pub type Observer<'a> = dyn FnMut(&Derivation, &Derivation) -> Result<(), String> + 'a;

/// Like `eliminate_with`, calling `observe` after every step. An error from
/// the observer aborts elimination.
pub fn eliminate_observed(
    d: &Derivation,
    opts: ElimOptions,
    observe: &mut Observer<'_>,
) -> Result<(Derivation, ElimTrace), CutElimError> {
    require_lam(d)?;
    if !d.conclusion.is_forall_lazy() {
        return Err(CutElimError::NotForallLazy);
    }
    let n = d.size();
    let budget = opts.budget.unwrap_or(10 * n * n * n + 100);
    let mut cur = uniquify(d)?;
    let mut trace = ElimTrace { simulated: opts.simulate, weight_trajectory: vec![potential(&cur)], ..Default::default() };
    let mut apply = |cur: &Derivation, path: &[usize], trace: &mut ElimTrace| -> Result<Derivation, CutElimError> {
        if trace.total_steps >= budget {
            return Err(CutElimError::BudgetExhausted(budget));
        }
        let next = step_at(cur, path)?;
        trace.total_steps += 1;
        if opts.simulate && !verify_simulation(cur, &next) {
            return Err(CutElimError::Internal(format!("step at {path:?} is not simulated by reduction")));
        }
        observe(cur, &next).map_err(CutElimError::Internal)?;
        Ok(next)
    };
    while !cur.is_cut_free() {
        let cuts = histogram(&classify_unchecked(&cur)?);
        // part 1: commuting cuts, innermost first
        let mut commuting_steps = 0;
        loop {
            let mut moved = false;
            for path in post_order(&cur) {
                let sub = cur.at(&path).expect("listed path");
                if sub.rule != Rule::Cut || steps::classify(sub)? != CutClass::Commuting {
                    continue;
                }
                if !steps::commute_allowed(sub)? {
                    continue;
                }
                cur = apply(&cur, &path, &mut trace)?;
                commuting_steps += 1;
                moved = true;
                break;
            }
            if !moved {
                break;
            }
        }
        // part 2: one symmetric cut, else the highest ready cut
        let classes = classify_unchecked(&cur)?;
        let sym = classes.iter().find(|(_, c)| matches!(c, CutClass::Symmetric(_)));
        let ready = classes
            .iter()
            .filter(|(_, c)| *c == CutClass::Critical(CritStatus::Ready))
            .max_by_key(|(p, _)| (cur.at(p).map_or(0, Derivation::height), std::cmp::Reverse(p.clone())));
        let src_step = match (sym, ready) {
            (Some((p, _)), _) => {
                let p = p.clone();
                cur = apply(&cur, &p, &mut trace)?;
                SrcStep::Symmetric
            }
            (None, Some((p, _))) => {
                let p = p.clone();
                cur = apply(&cur, &p, &mut trace)?;
                SrcStep::Ready
            }
            (None, None) if commuting_steps == 0 && !cur.is_cut_free() => {
                return Err(CutElimError::Stuck(classes.iter().map(|(p, c)| format!("{p:?} {}", c.label())).collect()));
            }
            _ => SrcStep::None,
        };
        let m = metrics(&cur);
        trace.rounds.push(Round { commuting_steps, src_step, cuts, potential: potential(&cur), height_sum: m.height_sum });
        trace.weight_trajectory.push(potential(&cur));
    }
    Ok((cur, trace))
}

fn histogram(classes: &[(Path, CutClass)]) -> BTreeMap<String, usize> {
    let mut h = BTreeMap::new();
    for (_, c) in classes {
        *h.entry(c.label().to_string()).or_insert(0) += 1;
    }
    h
}
