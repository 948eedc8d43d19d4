//! Closed LAM gadgets over booleans, units and their tensors, written as
//! annotated terms so derivations come out of `to_derivation`.

use crate::derivation::Derivation;
use crate::inhabit::maximal_value;
use crate::reduce::annotated::{Ann, AnnCopy};
use crate::syntax::{Index, Type};

use super::GenError;

pub(crate) fn v(x: &str, t: &Type) -> Ann {
    Ann::Var(x.to_string(), t.clone())
}

pub(crate) fn lam(x: &str, t: &Type, body: Ann) -> Ann {
    Ann::Abs(x.to_string(), t.clone(), Box::new(body))
}

pub(crate) fn app(f: Ann, a: Ann) -> Ann {
    Ann::App(Box::new(f), Box::new(a))
}

fn tabs(a: &str, body: Ann) -> Ann {
    Ann::TAbs(a.to_string(), Box::new(body))
}

fn tapp(f: Ann, t: &Type) -> Ann {
    Ann::TApp(Box::new(f), t.clone())
}

fn tv(a: &str) -> Type {
    Type::var(a)
}

pub(crate) fn b() -> Type {
    Type::boolean()
}

pub(crate) fn one() -> Type {
    Type::unit()
}

pub(crate) fn identity() -> Ann {
    tabs("a", lam("u", &tv("a"), v("u", &tv("a"))))
}

/// `Λc.λz. z m n` at `mt ⊗ nt`.
fn tensor(m: Ann, mt: &Type, n: Ann, nt: &Type) -> Ann {
    let zt = Type::lolli(mt.clone(), Type::lolli(nt.clone(), tv("c")));
    tabs("c", lam("z", &zt, app(app(v("z", &zt), m), n)))
}

fn boolean(first: bool) -> Ann {
    let a = tv("a");
    let (l, r) = if first { (v("x", &a), v("y", &a)) } else { (v("y", &a), v("x", &a)) };
    tabs("a", lam("x", &a, lam("y", &a, tensor(l, &a, r, &a))))
}

pub(crate) fn tt() -> Ann {
    boolean(true)
}

pub(crate) fn ff() -> Ann {
    boolean(false)
}

/// `let m be x⊗y in body` with `m : xt ⊗ yt` and `body : out`.
fn let_tensor(m: Ann, x: &str, xt: &Type, y: &str, yt: &Type, body: Ann, out: &Type) -> Ann {
    app(tapp(m, out), lam(x, xt, lam(y, yt, body)))
}

/// `let m be I in body` with `m : 𝟏`.
fn let_unit(m: Ann, body: Ann, out: &Type) -> Ann {
    app(tapp(m, out), body)
}

/// `λb. Λa.λx.λy. b y x`
pub(crate) fn not() -> Ann {
    let a = tv("a");
    let body = app(app(tapp(v("b", &b()), &a), v("y", &a)), v("x", &a));
    lam("b", &b(), tabs("a", lam("x", &a, lam("y", &a, body))))
}

/// `λz. let z I I be x⊗y in (let y be I in x)`
pub(crate) fn erase_bool() -> Ann {
    let o = one();
    let zii = app(app(tapp(v("z", &b()), &o), identity()), identity());
    let inner = let_unit(v("y", &o), v("x", &o), &o);
    lam("z", &b(), let_tensor(zii, "x", &o, "y", &o, inner, &o))
}

/// `λz. let z be I in I`
pub(crate) fn erase_unit() -> Ann {
    lam("z", &one(), let_unit(v("z", &one()), identity(), &one()))
}

/// `λp. let p be x⊗y in y⊗x` on `a ⊗ a`.
pub(crate) fn swap(a: &Type) -> Ann {
    let t = Type::tensor(a.clone(), a.clone());
    let body = tensor(v("y", a), a, v("x", a), a);
    lam("p", &t, let_tensor(v("p", &t), "x", a, "y", a, body, &t))
}

/// `λp. let p be x⊗y in let E y be I in x` on `a ⊗ a`, `eraser : a ⊸ 𝟏`.
pub(crate) fn first(a: &Type, eraser: Ann) -> Ann {
    let t = Type::tensor(a.clone(), a.clone());
    let body = let_unit(app(eraser, v("y", a)), v("x", a), a);
    lam("p", &t, let_tensor(v("p", &t), "x", a, "y", a, body, a))
}

/// `λx. x ⊗ m`
pub(crate) fn pair_with(a: &Type, m: Ann, mt: &Type) -> Ann {
    lam("x", a, tensor(v("x", a), a, m, mt))
}

/// `λp.λq. let p q ff be u⊗w in let E_B w be I in u`
pub(crate) fn and() -> Ann {
    let bb = b();
    let pq = app(app(tapp(v("p", &bb), &bb), v("q", &bb)), ff());
    let body = let_unit(app(erase_bool(), v("w", &bb)), v("u", &bb), &bb);
    lam("p", &bb, lam("q", &bb, let_tensor(pq, "u", &bb, "w", &bb, body, &bb)))
}

pub(crate) fn proj(i: Index, a: &Type) -> Ann {
    lam("p", a, Ann::Proj(i, Box::new(v("p", a))))
}

/// `λx. copy^V x as x1,x2 in <f x1, g x2>` with the maximal value of `a`
/// as guard; `None` leaves a branch as the bare variable.
pub(crate) fn copy_map(a: &Type, f: Option<Ann>, g: Option<Ann>) -> Result<Ann, GenError> {
    let (_, guard): (_, Derivation) = maximal_value(a)?;
    let branch = |h: Option<Ann>, x: &str| match h {
        Some(h) => app(h, v(x, a)),
        None => v(x, a),
    };
    let c = AnnCopy {
        guard,
        scrutinee: v("x", a),
        x1: "x1".into(),
        x2: "x2".into(),
        left: branch(f, "x1"),
        right: branch(g, "x2"),
    };
    Ok(lam("x", a, Ann::Copy(Box::new(c))))
}
