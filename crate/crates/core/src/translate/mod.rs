//! Translation of LAM derivations into linear IMLL₂ terms. `∧` becomes `⊗`,
//! projections discard through erasers and copies go through duplicators.

mod gadgets;
mod imll2;

#[cfg(test)]
mod tests;

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::cutelim::node::{decode, Node};
use crate::derivation::{check, Derivation, System};
use crate::inhabit::enumerate_inhabitants;
use crate::reduce::annotated::Ann;
use crate::reduce::{beta_eta_equal, beta_normalize};
use crate::syntax::fresh::fresh_name;
use crate::syntax::{Context, Index, Term, Type};

use gadgets::{let_tensor, let_unit, tabs, tapp, tensor, Shape};

#[derive(Debug, Clone, Error, PartialEq, Eq, Serialize)]
pub enum TranslateError {
    #[error("derivation does not check in LAM: {0}")]
    NotLam(String),
    #[error("no eraser or duplicator for {0}: only tensors of units and booleans are supported")]
    Unsupported(String),
    #[error("translation is not typable in IMLL2: {0}")]
    Imll2(String),
    #[error("reduction failed: {0}")]
    Reduce(String),
}

type R<T> = Result<T, TranslateError>;

/// Budget for the normalisations done by soundness and contract checks.
pub const NORMALIZE_BUDGET: usize = 5_000_000;

pub fn translate_type(a: &Type) -> Type {
    match a {
        Type::Var(_) => a.clone(),
        Type::Lolli(x, y) => Type::lolli(translate_type(x), translate_type(y)),
        Type::With(x, y) => Type::tensor(translate_type(x), translate_type(y)),
        Type::Forall(g, body) => Type::forall(g.clone(), translate_type(body)),
    }
}

fn shape(a: &Type) -> R<Shape> {
    Shape::of(a).ok_or_else(|| TranslateError::Unsupported(a.to_string()))
}

#[derive(Debug, Clone)]
struct Gadgets {
    eraser: Ann,
    duplicator: Option<Ann>,
}

/// Erasers and duplicators cached per type, keyed up to renaming.
#[derive(Debug, Default)]
pub struct GadgetLibrary {
    cache: HashMap<String, Gadgets>,
}

impl GadgetLibrary {
    pub fn new() -> Self {
        Self::default()
    }

    fn entry(&mut self, a: &Type) -> R<&mut Gadgets> {
        let s = shape(a)?;
        Ok(self.cache.entry(a.canonical_key()).or_insert_with(|| Gadgets { eraser: gadgets::eraser(&s), duplicator: None }))
    }

    fn eraser_ann(&mut self, a: &Type) -> R<Ann> {
        Ok(self.entry(a)?.eraser.clone())
    }

    fn duplicator_ann(&mut self, a: &Type) -> R<Ann> {
        let s = shape(a)?;
        let g = self.entry(a)?;
        Ok(g.duplicator.get_or_insert_with(|| gadgets::duplicator(&s)).clone())
    }

    pub fn eraser(&mut self, a: &Type) -> R<Term> {
        Ok(self.eraser_ann(a)?.erase())
    }

    pub fn duplicator(&mut self, a: &Type) -> R<Term> {
        Ok(self.duplicator_ann(a)?.erase())
    }

    pub fn len(&self) -> usize {
        self.cache.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cache.is_empty()
    }
}

fn checked_gadget(ann: Ann, expected: Type) -> R<Term> {
    let t = imll2::check(&ann, &Context::new()).map_err(TranslateError::Imll2)?;
    if t != expected {
        return Err(TranslateError::Imll2(format!("gadget has type {t}, expected {expected}")));
    }
    Ok(ann.erase())
}

/// Closed linear eraser of type `a ⊸ 𝟏`.
pub fn build_eraser(a: &Type) -> R<Term> {
    checked_gadget(gadgets::eraser(&shape(a)?), Type::lolli(a.clone(), Type::unit()))
}

/// Closed linear duplicator of type `a ⊸ a ⊗ a`.
pub fn build_duplicator(a: &Type) -> R<Term> {
    let ann = gadgets::duplicator(&shape(a)?);
    checked_gadget(ann, Type::lolli(a.clone(), Type::tensor(a.clone(), a.clone())))
}

pub fn eraser_size(a: &Type) -> R<usize> {
    Ok(gadgets::eraser(&shape(a)?).erase().size())
}

/// Size of the duplicator at `a`, computed without building the term.
pub fn duplicator_size(a: &Type) -> R<u64> {
    Ok(gadgets::duplicator_size(&shape(a)?))
}

/// Result of checking both gadget contracts on every inhabitant of a type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContractReport {
    pub ty: String,
    pub inhabitants: usize,
    pub eraser_ok: bool,
    pub duplicator_ok: bool,
    pub eraser_size: usize,
    pub duplicator_size: usize,
}

/// `E_a M →* I` and `D_a M =βη M⊗M` for every enumerated inhabitant `M`.
pub fn check_contracts(a: &Type) -> R<ContractReport> {
    let e = build_eraser(a)?;
    let d = build_duplicator(a)?;
    let set = enumerate_inhabitants(a, None).map_err(|err| TranslateError::Reduce(err.to_string()))?;
    let reduce = |err: crate::reduce::ReduceError| TranslateError::Reduce(err.to_string());
    let (mut eraser_ok, mut duplicator_ok) = (true, true);
    for m in set.terms() {
        let (nf, _) = beta_normalize(&Term::app(e.clone(), m.clone()), NORMALIZE_BUDGET).map_err(reduce)?;
        eraser_ok &= nf == Term::identity();
        let pair = Term::tensor_pair(m.clone(), m.clone());
        duplicator_ok &= beta_eta_equal(&Term::app(d.clone(), m.clone()), &pair, NORMALIZE_BUDGET).map_err(reduce)?;
    }
    Ok(ContractReport {
        ty: a.to_string(),
        inhabitants: set.len(),
        eraser_ok,
        duplicator_ok,
        eraser_size: e.size(),
        duplicator_size: d.size(),
    })
}

fn require_lam(d: &Derivation) -> R<()> {
    check(d, System::Lam).map_err(|vs| {
        TranslateError::NotLam(vs.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))
    })
}

fn ctx_type<'a>(d: &'a Derivation, x: &str) -> R<&'a Type> {
    d.context().get(x).ok_or_else(|| TranslateError::NotLam(format!("{x} is not in the context")))
}

fn node_of(d: &Derivation) -> R<Node> {
    decode(d).map_err(|e| TranslateError::NotLam(e.to_string()))
}

/// The translation as a Church-style term.
fn translate_ann(d: &Derivation, lib: &mut GadgetLibrary) -> R<Ann> {
    let p = &d.premises;
    let tr = |i: usize, lib: &mut GadgetLibrary| translate_ann(&p[i], lib);
    Ok(match node_of(d)? {
        Node::Ax { x, ty } => Ann::Var(x, translate_type(&ty)),
        Node::Cut { x } => {
            let l = tr(0, lib)?;
            tr(1, lib)?.subst(&x, &l)
        }
        Node::LolliR { x } => {
            let a = translate_type(ctx_type(&p[0], &x)?);
            Ann::Abs(x, a, Box::new(tr(0, lib)?))
        }
        Node::LolliL { y, w } => {
            let f = Ann::Var(y.clone(), translate_type(ctx_type(d, &y)?));
            let arg = Ann::App(Box::new(f), Box::new(tr(0, lib)?));
            tr(1, lib)?.subst(&w, &arg)
        }
        Node::WithR => return Err(TranslateError::NotLam("withR is not a LAM rule".into())),
        Node::WithR0 => {
            let (a, b) = (tr(0, lib)?, tr(1, lib)?);
            tensor(a, &translate_type(p[0].ty()), b, &translate_type(p[1].ty()))
        }
        Node::WithR1 { x, x1, x2 } => {
            let a = translate_type(ctx_type(d, &x)?);
            let dup = lib.duplicator_ann(&a)?;
            let scrut = Ann::App(Box::new(dup), Box::new(Ann::Var(x, a.clone())));
            let (b1, b2) = (translate_type(p[0].ty()), translate_type(p[1].ty()));
            let pair = tensor(tr(0, lib)?, &b1, tr(1, lib)?, &b2);
            let_tensor(scrut, &x1, &a, &x2, &a, pair, &translate_type(d.ty()))
        }
        Node::WithL { i, y, xi, .. } => {
            let Type::With(b1, b2) = ctx_type(d, &y)? else {
                return Err(TranslateError::NotLam("withL on a non-additive".into()));
            };
            let (b1, b2) = (translate_type(b1), translate_type(b2));
            let other = fresh_name("e");
            let (n1, n2, kept_other) = match i {
                Index::First => (xi, other.clone(), &b2),
                Index::Second => (other.clone(), xi, &b1),
            };
            let c = translate_type(d.ty());
            let drop = Ann::App(Box::new(lib.eraser_ann(kept_other)?), Box::new(Ann::Var(other, kept_other.clone())));
            let body = let_unit(drop, tr(0, lib)?, &c);
            let pt = Type::tensor(b1.clone(), b2.clone());
            let_tensor(Ann::Var(y, pt), &n1, &b1, &n2, &b2, body, &c)
        }
        Node::ForallR { gamma } => tabs(&gamma, tr(0, lib)?),
        Node::ForallL { x, alpha, body } => {
            let inst = ctx_type(&p[0], &x)?;
            let c = match Type::match_instance(&body, &alpha, inst) {
                Some(Some(c)) => c,
                Some(None) => Type::unit(),
                None => return Err(TranslateError::NotLam("forallL premise is not an instance".into())),
            };
            let poly = translate_type(&Type::forall(alpha, body));
            let inst = tapp(Ann::Var(x.clone(), poly), &translate_type(&c));
            tr(0, lib)?.subst(&x, &inst)
        }
    })
}

/// The IMLL₂ term of a LAM derivation, re-checked at `Γ• ⊢ _ : A•`.
pub fn translate_derivation(d: &Derivation) -> R<Term> {
    translate_with(d, &mut GadgetLibrary::new())
}

pub fn translate_with(d: &Derivation, lib: &mut GadgetLibrary) -> R<Term> {
    require_lam(d)?;
    let ann = translate_ann(d, lib)?;
    let ctx = d.context().map_types(translate_type);
    let t = imll2::check(&ann, &ctx).map_err(TranslateError::Imll2)?;
    let want = translate_type(d.ty());
    if t != want {
        return Err(TranslateError::Imll2(format!("translation has type {t}, expected {want}")));
    }
    Ok(ann.erase())
}

/// Whether the translations of the two derivations are βη-equal.
pub fn check_soundness(before: &Derivation, after: &Derivation) -> R<bool> {
    let mut lib = GadgetLibrary::new();
    let a = translate_with(before, &mut lib)?;
    let b = translate_with(after, &mut lib)?;
    beta_eta_equal(&a, &b, NORMALIZE_BUDGET).map_err(|e| TranslateError::Reduce(e.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GadgetSize {
    pub kind: &'static str,
    pub ty: String,
    pub size: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompressionReport {
    pub deriv_size: usize,
    pub term_size: usize,
    pub translated_size: u64,
    pub gadget_sizes: Vec<GadgetSize>,
}

/// Sizes of `d`, its subject and its translation. The translated size is
/// computed from the rule structure, so it works where the term itself
/// would be too large to build.
pub fn compression_report(d: &Derivation) -> R<CompressionReport> {
    require_lam(d)?;
    let mut gadget_sizes = Vec::new();
    let translated_size = translated_size(d, &mut gadget_sizes)?;
    gadget_sizes.sort_by(|a, b| (a.kind, &a.ty).cmp(&(b.kind, &b.ty)));
    gadget_sizes.dedup();
    Ok(CompressionReport { deriv_size: d.size(), term_size: d.subject().size(), translated_size, gadget_sizes })
}

fn translated_size(d: &Derivation, gadgets: &mut Vec<GadgetSize>) -> R<u64> {
    let p = &d.premises;
    let sz = |i: usize, gadgets: &mut Vec<GadgetSize>| translated_size(&p[i], gadgets);
    Ok(match node_of(d)? {
        Node::Ax { .. } => 1,
        // the cut variable occurs exactly once
        Node::Cut { .. } => sz(0, gadgets)? + sz(1, gadgets)? - 1,
        Node::LolliR { .. } => sz(0, gadgets)? + 1,
        Node::LolliL { .. } => sz(0, gadgets)? + sz(1, gadgets)? + 1,
        Node::WithR => return Err(TranslateError::NotLam("withR is not a LAM rule".into())),
        Node::WithR0 => sz(0, gadgets)? + sz(1, gadgets)? + 4,
        Node::WithR1 { x, .. } => {
            let a = translate_type(ctx_type(d, &x)?);
            let dup = duplicator_size(&a)?;
            gadgets.push(GadgetSize { kind: "duplicator", ty: a.to_string(), size: dup });
            dup.saturating_add(sz(0, gadgets)? + sz(1, gadgets)? + 9)
        }
        Node::WithL { other, .. } => {
            let a = translate_type(&other);
            let e = eraser_size(&a)? as u64;
            gadgets.push(GadgetSize { kind: "eraser", ty: a.to_string(), size: e });
            e + sz(0, gadgets)? + 7
        }
        Node::ForallR { .. } | Node::ForallL { .. } => sz(0, gadgets)?,
    })
}
