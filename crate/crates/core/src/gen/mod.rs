//! Derivation families: the IMALL2 `add` terms, the LAM `ladd` terms, and a
//! seeded corpus of LAM derivations for property checks.

pub(crate) mod gadgets;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::derivation::build::{self, BuildError};
use crate::derivation::{check, Derivation, System};
use crate::inhabit::{enumerate_inhabitants, maximal_value, InhabitError};
use crate::reduce::annotated::{to_derivation, Ann};
use crate::syntax::{Index, Term, Type};

use gadgets::*;

#[cfg(test)]
mod tests;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum GenError {
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Inhabit(#[from] InhabitError),
    #[error("{term} is not an eta-long inhabitant of {ty}")]
    BaseTyping { term: String, ty: String },
    #[error("generated derivation `{name}` is rejected: {reason}")]
    Rejected { name: String, reason: String },
}

/// `add^x_n`: `x` for `n = 0`, else `(λy.add^y_{n-1})<x,x>`.
pub fn add_term(n: usize, x: &str) -> Term {
    if n == 0 {
        return Term::var(x);
    }
    let y = format!("y{n}");
    Term::app(Term::abs(y.clone(), add_term(n - 1, &y)), Term::pair(Term::var(x), Term::var(x)))
}

/// `ladd^{x,V_[k]}_n` with `v` the guard at level `k`.
pub fn ladd_term(n: usize, x: &str, v: &Term) -> Term {
    if n == 0 {
        return Term::var(x);
    }
    let y = format!("y{n}");
    let inner = ladd_term(n - 1, &y, &Term::pair(v.clone(), v.clone()));
    let copy = Term::copy_node(v.clone(), Term::var(x), "x1", "x2", Term::var("x1"), Term::var("x2"));
    Term::app(Term::abs(y, inner), copy)
}

/// Finds the enumerated derivation of a value, up to alpha-equivalence.
pub fn value_derivation(term: &Term, ty: &Type) -> Result<Derivation, GenError> {
    let set = enumerate_inhabitants(ty, None)?;
    set.members
        .into_iter()
        .find(|(t, _)| t == term)
        .map(|(_, d)| d)
        .ok_or_else(|| GenError::BaseTyping { term: term.to_string(), ty: ty.to_string() })
}

/// `f` applied to the closed `arg` as a cut against a lolliL.
fn apply(f: Derivation, arg: Derivation, result: &Type, tag: &str) -> Result<Derivation, GenError> {
    let w = format!("w{tag}");
    let g = format!("f{tag}");
    let l = build::lolli_l(arg, build::ax(w.clone(), result.clone()), &w, &g)?;
    Ok(build::cut(f, l, &g)?)
}

fn add_derivation(k: usize, n: usize, x: &str, base: &Type) -> Result<Derivation, GenError> {
    let here = base.nested_with(k);
    if n == 0 {
        return Ok(build::ax(x, here));
    }
    let y = format!("y{n}");
    let lam = build::lolli_r(add_derivation(k + 1, n - 1, &y, base)?, &y)?;
    let pair = build::with_r(build::ax(x, here.clone()), build::ax(x, here))?;
    apply(lam, pair, &base.nested_with(k + n), &k.to_string())
}

/// `(λx.add^x_n) base` with its IMALL2 derivation of type `A_[n]`.
pub fn gen_add(n: usize, base_term: &Term, base_type: &Type) -> Result<(Term, Derivation), GenError> {
    let base = value_derivation(base_term, base_type)?;
    let lam = build::lolli_r(add_derivation(0, n, "x", base_type)?, "x")?;
    let d = apply(lam, base, &base_type.nested_with(n), "")?;
    Ok((d.subject().clone(), d))
}

fn ladd_derivation(k: usize, n: usize, x: &str, base: &Type, guards: &[Derivation]) -> Result<Derivation, GenError> {
    let here = base.nested_with(k);
    if n == 0 {
        return Ok(build::ax(x, here));
    }
    let y = format!("y{n}");
    let lam = build::lolli_r(ladd_derivation(k + 1, n - 1, &y, base, guards)?, &y)?;
    let copy = build::with_r1(build::ax("x1", here.clone()), build::ax("x2", here), guards[k].clone(), x)?;
    apply(lam, copy, &base.nested_with(k + n), &k.to_string())
}

fn guards(base: &Type, n: usize) -> Result<Vec<Derivation>, GenError> {
    let (_, v) = maximal_value(base)?;
    let mut out = vec![v];
    for k in 1..n {
        let g = build::with_r0(out[k - 1].clone(), out[k - 1].clone())?;
        out.push(g);
    }
    Ok(out)
}

/// `λx.ladd^{x,V}_n` with `V` the maximal value of `base_type`, derived at
/// `A ⊸ A_[n]`.
pub fn gen_ladd(n: usize, base_type: &Type) -> Result<(Term, Derivation), GenError> {
    let gs = guards(base_type, n)?;
    let d = build::lolli_r(ladd_derivation(0, n, "x", base_type, &gs)?, "x")?;
    Ok((d.subject().clone(), d))
}

/// `(λx.ladd^{x,V}_n) U` at `A_[n]`; `U` defaults to the maximal value.
pub fn ladd_applied(n: usize, base_type: &Type, arg: Option<&Term>) -> Result<Derivation, GenError> {
    let (_, lam) = gen_ladd(n, base_type)?;
    let arg = match arg {
        Some(t) => value_derivation(t, base_type)?,
        None => maximal_value(base_type)?.1,
    };
    apply(lam, arg, &base_type.nested_with(n), "")
}

#[derive(Debug, Clone, Serialize)]
pub struct CorpusEntry {
    pub name: String,
    pub derivation: Derivation,
}

fn entry(name: impl Into<String>, a: &Ann) -> Result<CorpusEntry, GenError> {
    let name = name.into();
    let d = to_derivation(a).map_err(|reason| GenError::Rejected { name: name.clone(), reason })?;
    if let Err(vs) = check(&d, System::Lam) {
        return Err(GenError::Rejected { name, reason: vs[0].to_string() });
    }
    Ok(CorpusEntry { name, derivation: d })
}

/// Fixed boolean and unit gadget applications.
pub fn gadget_examples() -> Result<Vec<CorpusEntry>, GenError> {
    let bb = Type::tensor(b(), b());
    let uu = Type::with(one(), one());
    let and_tt = |x: Ann| app(app(and(), x), tt());
    let list = vec![
        ("not-tt", app(not(), tt())),
        ("not-not-ff", app(not(), app(not(), ff()))),
        ("and-tt-ff", app(app(and(), tt()), ff())),
        ("and-ff-tt", app(app(and(), ff()), tt())),
        ("and-tt", and_tt(tt())),
        ("erase-tt", app(erase_bool(), tt())),
        ("erase-unit", app(erase_unit(), identity())),
        ("swap", app(swap(&b()), app(pair_with(&b(), ff(), &b()), tt()))),
        ("first", app(first(&b(), erase_bool()), app(swap(&b()), app(pair_with(&b(), tt(), &b()), ff())))),
        ("copy-not", app(copy_map(&b(), Some(not()), None)?, tt())),
        ("copy-unit-proj", app(proj(Index::First, &uu), app(copy_map(&one(), None, None)?, identity()))),
        ("proj-copy-not", app(proj(Index::Second, &Type::with(b(), b())), app(copy_map(&b(), None, Some(not()))?, ff()))),
        ("open-not", app(not(), app(not(), v("x0", &b())))),
        ("open-copy", app(copy_map(&b(), Some(not()), Some(not()))?, app(not(), v("x0", &b())))),
        ("open-tensor", app(first(&b(), erase_bool()), v("p0", &bb))),
    ];
    list.into_iter().map(|(n, a)| entry(n, &a)).collect()
}

/// Gadgets accepting `ty`, each with its result type.
fn gadgets_for(ty: &Type) -> Result<Vec<(Ann, Type)>, GenError> {
    let id = lam("i", ty, v("i", ty));
    let mut out = vec![(id, ty.clone())];
    if ty.is_unit() {
        out.push((erase_unit(), one()));
        out.push((copy_map(ty, None, None)?, Type::with(one(), one())));
        out.push((copy_map(ty, Some(erase_unit()), None)?, Type::with(one(), one())));
        out.push((pair_with(ty, identity(), &one()), Type::tensor(one(), one())));
    } else if ty.is_boolean() {
        out.push((not(), b()));
        out.push((erase_bool(), one()));
        out.push((copy_map(ty, Some(not()), None)?, Type::with(b(), b())));
        out.push((lam("q", ty, app(app(and(), v("q", ty)), tt())), b()));
        out.push((pair_with(ty, ff(), &b()), Type::tensor(b(), b())));
    } else if let Some((l, _)) = ty.as_tensor() {
        let (a, eraser) = if l.is_boolean() { (b(), erase_bool()) } else { (one(), erase_unit()) };
        out.push((swap(&a), ty.clone()));
        out.push((first(&a, eraser), a));
    } else if let Type::With(a1, a2) = ty {
        out.push((proj(Index::First, ty), (**a1).clone()));
        out.push((proj(Index::Second, ty), (**a2).clone()));
    }
    Ok(out)
}

/// A random chain of gadgets over a unit or boolean start, sometimes open.
pub fn random_entry(rng: &mut ChaCha8Rng, name: &str) -> Result<CorpusEntry, GenError> {
    let starts = [(identity(), one()), (tt(), b()), (ff(), b())];
    let (mut term, mut ty) = starts.choose(rng).cloned().expect("nonempty");
    if rng.gen_bool(0.15) {
        term = v("x0", &ty);
    }
    for _ in 0..rng.gen_range(1..=4) {
        let options = gadgets_for(&ty)?;
        let (g, out) = options.choose(rng).cloned().expect("identity is always available");
        term = app(g, term);
        ty = out;
    }
    entry(name, &term)
}

/// The property-test corpus: ladd derivations over `𝟏` and `B`, the
/// gadget examples, and `random` seeded compositions.
pub fn corpus(seed: u64, random: usize) -> Result<Vec<CorpusEntry>, GenError> {
    let mut out = Vec::new();
    for n in 1..=4 {
        out.push(CorpusEntry { name: format!("ladd-unit-{n}"), derivation: ladd_applied(n, &one(), None)? });
    }
    for n in 1..=3 {
        for (label, u) in [("tt", Term::tt()), ("ff", Term::ff())] {
            let d = ladd_applied(n, &b(), Some(&u))?;
            out.push(CorpusEntry { name: format!("ladd-bool-{label}-{n}"), derivation: d });
        }
        out.push(CorpusEntry { name: format!("ladd-lambda-{n}"), derivation: gen_ladd(n, &one())?.1 });
    }
    out.extend(gadget_examples()?);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..random {
        out.push(random_entry(&mut rng, &format!("random-{i}"))?);
    }
    Ok(out)
}

fn unit_value() -> Result<Derivation, GenError> {
    Ok(maximal_value(&one())?.1)
}

fn unit_copy(x: &str) -> Result<Derivation, GenError> {
    Ok(build::with_r1(build::ax("x1", one()), build::ax("x2", one()), unit_value()?, x)?)
}

/// `y:𝟏 ⊢ copy^I (y I) as x1,x2 in <x1,x2> : 𝟏∧𝟏`, a cut of `y I` against
/// a withR1 whose left side has a nonempty context.
pub fn deadlock_example() -> Result<Derivation, GenError> {
    let body = Type::lolli(Type::var("a"), Type::var("a"));
    let app = build::lolli_l(unit_value()?, build::ax("w", one()), "w", "y")?;
    let left = build::forall_l(app, "y", "a", body)?;
    Ok(build::cut(left, unit_copy("x")?, "x")?)
}

/// `x:𝟏 ⊢ π1(copy^I x as x1,x2 in <x1,x2>) : 𝟏`, a withR1 cut against withL1.
pub fn copy_first_example() -> Result<Derivation, GenError> {
    let right = build::with_l(build::ax("z", one()), Index::First, "z", "y", one())?;
    Ok(build::cut(unit_copy("x")?, right, "y")?)
}
