//! Erasers and duplicators for tensor trees over `𝟏` and `B`.
//!
//! The duplicator unpacks its argument into leaves, then selects the
//! candidate pair by branching on each boolean leaf in turn. Unselected
//! branches are closures that get erased.

use crate::gen::gadgets::{app, erase_bool, identity, lam, tt, ff, v};
use crate::reduce::annotated::Ann;
use crate::syntax::fresh::fresh_name;
use crate::syntax::Type;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Shape {
    Unit,
    Bool,
    Tensor(Box<Shape>, Box<Shape>),
}

impl Shape {
    pub(crate) fn of(t: &Type) -> Option<Shape> {
        if t.is_unit() {
            return Some(Shape::Unit);
        }
        if t.is_boolean() {
            return Some(Shape::Bool);
        }
        let (a, b) = t.as_tensor()?;
        Some(Shape::Tensor(Box::new(Shape::of(a)?), Box::new(Shape::of(b)?)))
    }

    pub(crate) fn ty(&self) -> Type {
        match self {
            Shape::Unit => Type::unit(),
            Shape::Bool => Type::boolean(),
            Shape::Tensor(a, b) => Type::tensor(a.ty(), b.ty()),
        }
    }

    fn bools(&self) -> usize {
        match self {
            Shape::Unit => 0,
            Shape::Bool => 1,
            Shape::Tensor(a, b) => a.bools() + b.bools(),
        }
    }
}

pub(crate) fn tabs(a: &str, body: Ann) -> Ann {
    Ann::TAbs(a.to_string(), Box::new(body))
}

pub(crate) fn tapp(f: Ann, t: &Type) -> Ann {
    Ann::TApp(Box::new(f), t.clone())
}

fn apps(f: Ann, args: impl IntoIterator<Item = Ann>) -> Ann {
    args.into_iter().fold(f, app)
}

/// `Λc.λz. z m n` with fresh binders.
pub(crate) fn tensor(m: Ann, mt: &Type, n: Ann, nt: &Type) -> Ann {
    let Type::Forall(c, _) = Type::tensor(mt.clone(), nt.clone()) else { unreachable!() };
    let zt = Type::lolli(mt.clone(), Type::lolli(nt.clone(), Type::var(c.clone())));
    let z = fresh_name("z");
    tabs(&c, lam(&z, &zt, app(app(v(&z, &zt), m), n)))
}

pub(crate) fn let_tensor(m: Ann, x: &str, xt: &Type, y: &str, yt: &Type, body: Ann, out: &Type) -> Ann {
    app(tapp(m, out), lam(x, xt, lam(y, yt, body)))
}

pub(crate) fn let_unit(m: Ann, body: Ann, out: &Type) -> Ann {
    app(tapp(m, out), body)
}

pub(crate) fn eraser(s: &Shape) -> Ann {
    match s {
        Shape::Unit => lam("z", &Type::unit(), v("z", &Type::unit())),
        Shape::Bool => erase_bool(),
        Shape::Tensor(a, b) => {
            let (at, bt, one) = (a.ty(), b.ty(), Type::unit());
            let (p, x, y) = (fresh_name("p"), fresh_name("x"), fresh_name("y"));
            let body = let_unit(app(eraser(a), v(&x, &at)), app(eraser(b), v(&y, &bt)), &one);
            lam(&p, &s.ty(), let_tensor(v(&p, &s.ty()), &x, &at, &y, &bt, body, &one))
        }
    }
}

fn value(s: &Shape, bits: &mut impl Iterator<Item = bool>) -> Ann {
    match s {
        Shape::Unit => identity(),
        Shape::Bool => {
            if bits.next().expect("one bit per boolean leaf") {
                tt()
            } else {
                ff()
            }
        }
        Shape::Tensor(a, b) => {
            let va = value(a, bits);
            tensor(va, &a.ty(), value(b, bits), &b.ty())
        }
    }
}

struct Dup<'a> {
    shape: &'a Shape,
    t: Type,
    pair: Type,
    erase_pair: Ann,
    m: usize,
}

impl Dup<'_> {
    /// `B ⊸ … ⊸ B ⊸ A⊗A` with `k` arguments.
    fn closure_ty(&self, k: usize) -> Type {
        (0..k).fold(self.pair.clone(), |acc, _| Type::lolli(Type::boolean(), acc))
    }

    fn unpack(&self, mut pending: Vec<(Ann, Shape)>, mut leaves: Vec<String>) -> Ann {
        if pending.is_empty() {
            return self.select(0, Vec::new(), &leaves);
        }
        let (m, s) = pending.remove(0);
        match s {
            Shape::Tensor(a, b) => {
                let (at, bt) = (a.ty(), b.ty());
                let (x, y) = (fresh_name("x"), fresh_name("y"));
                let mut next = vec![(v(&x, &at), *a), (v(&y, &bt), *b)];
                next.extend(pending);
                let rest = self.unpack(next, leaves);
                let_tensor(m, &x, &at, &y, &bt, rest, &self.pair)
            }
            Shape::Unit => let_unit(m, self.unpack(pending, leaves), &self.pair),
            Shape::Bool => {
                let Ann::Var(x, _) = m else { unreachable!("leaves are variables") };
                leaves.push(x);
                self.unpack(pending, leaves)
            }
        }
    }

    /// Branches on boolean `i`; `names` are leaves `i..`, in order.
    fn select(&self, i: usize, chosen: Vec<bool>, names: &[String]) -> Ann {
        let b = Type::boolean();
        if i == self.m {
            let val = value(self.shape, &mut chosen.into_iter());
            return tensor(val.clone(), &self.t, val, &self.t);
        }
        let k = self.m - i - 1;
        let f = self.closure_ty(k);
        let branch = |bit: bool| {
            let params: Vec<String> = (0..k).map(|_| fresh_name("l")).collect();
            let mut c = chosen.clone();
            c.push(bit);
            let mut body = self.select(i + 1, c, &params);
            for q in params.iter().rev() {
                body = lam(q, &b, body);
            }
            body
        };
        let scrut = app(app(tapp(v(&names[0], &b), &f), branch(true)), branch(false));
        let (x, y) = (fresh_name("s"), fresh_name("r"));
        let rest = names[1..].iter().map(|n| v(n, &b));
        let body = let_unit(app(self.erase_closure(k), v(&y, &f)), apps(v(&x, &f), rest), &self.pair);
        let_tensor(scrut, &x, &f, &y, &f, body, &self.pair)
    }

    /// `λf. E_{A⊗A} (f tt … tt)`
    fn erase_closure(&self, k: usize) -> Ann {
        let f = self.closure_ty(k);
        let name = fresh_name("f");
        lam(&name, &f, app(self.erase_pair.clone(), apps(v(&name, &f), (0..k).map(|_| tt()))))
    }
}

pub(crate) fn duplicator(s: &Shape) -> Ann {
    let t = s.ty();
    let pair = Type::tensor(t.clone(), t.clone());
    let erase_pair = eraser(&Shape::Tensor(Box::new(s.clone()), Box::new(s.clone())));
    let dup = Dup { shape: s, t: t.clone(), pair, erase_pair, m: s.bools() };
    let p = fresh_name("p");
    lam(&p, &t, dup.unpack(vec![(v(&p, &t), s.clone())], Vec::new()))
}

fn size_of(a: &Ann) -> u64 {
    a.erase().size() as u64
}

/// Size of the erased `duplicator(s)`, computed without building it.
pub(crate) fn duplicator_size(s: &Shape) -> u64 {
    let pair_shape = Shape::Tensor(Box::new(s.clone()), Box::new(s.clone()));
    let e_pair = size_of(&eraser(&pair_shape));
    let tt_size = size_of(&tt());
    debug_assert_eq!(tt_size, size_of(&ff()));
    let unit_size = size_of(&identity());
    fn val(s: &Shape, unit: u64, bit: u64) -> u64 {
        match s {
            Shape::Unit => unit,
            Shape::Bool => bit,
            Shape::Tensor(a, b) => 4 + val(a, unit, bit) + val(b, unit, bit),
        }
    }
    fn unpack(s: &Shape) -> u64 {
        match s {
            Shape::Unit => 2,
            Shape::Bool => 0,
            Shape::Tensor(a, b) => 4 + unpack(a) + unpack(b),
        }
    }
    let m = s.bools() as u64;
    let mut sel = 4 + 2 * val(s, unit_size, tt_size);
    for i in (0..m).rev() {
        let k = m - i - 1;
        let closure = k.saturating_add(sel);
        let scrut = closure.saturating_mul(2).saturating_add(3);
        let e_f = e_pair + k * (tt_size + 1) + 3;
        let body = e_f + 2 * k + 4;
        sel = scrut.saturating_add(body + 3);
    }
    (1 + unpack(s)).saturating_add(sel)
}
