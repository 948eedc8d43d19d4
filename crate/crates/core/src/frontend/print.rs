use crate::syntax::{Term, Type};

/// Printer settings. With `use_macros` the unit, boolean and tensor
/// encodings are folded back into `1`, `Bool`, `*`, `I`, `tt` and `ff`.
#[derive(Debug, Clone, Copy, Default)]
pub struct PrintOptions {
    pub use_macros: bool,
}

pub fn print_type(a: &Type) -> String {
    print_type_with(a, PrintOptions::default())
}

pub fn print_term(t: &Term) -> String {
    print_term_with(t, PrintOptions::default())
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum TyPrec {
    Top,
    Binary,
    Atom,
}

pub fn print_type_with(a: &Type, opts: PrintOptions) -> String {
    let mut out = String::new();
    ty(a, TyPrec::Top, opts, &mut out);
    out
}

fn ty(a: &Type, prec: TyPrec, opts: PrintOptions, out: &mut String) {
    if opts.use_macros {
        if a.is_unit() {
            out.push('1');
            return;
        }
        if a.is_boolean() {
            out.push_str("Bool");
            return;
        }
        if let Some((l, r)) = a.as_tensor() {
            let paren = prec > TyPrec::Binary;
            open(paren, out);
            ty(l, TyPrec::Binary, opts, out);
            out.push_str(" * ");
            ty(r, TyPrec::Atom, opts, out);
            close(paren, out);
            return;
        }
    }
    match a {
        Type::Var(x) => out.push_str(x),
        Type::Forall(x, b) => {
            let paren = prec > TyPrec::Top;
            open(paren, out);
            out.push_str("forall ");
            out.push_str(x);
            out.push_str(". ");
            ty(b, TyPrec::Top, opts, out);
            close(paren, out);
        }
        Type::Lolli(l, r) => {
            let paren = prec > TyPrec::Top;
            open(paren, out);
            ty(l, TyPrec::Binary, opts, out);
            out.push_str(" -o ");
            ty(r, TyPrec::Top, opts, out);
            close(paren, out);
        }
        Type::With(l, r) => {
            let paren = prec > TyPrec::Binary;
            open(paren, out);
            ty(l, TyPrec::Binary, opts, out);
            out.push_str(" & ");
            ty(r, TyPrec::Atom, opts, out);
            close(paren, out);
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Prec {
    Top,
    Tensor,
    App,
    Atom,
}

pub fn print_term_with(t: &Term, opts: PrintOptions) -> String {
    let mut out = String::new();
    term(t, Prec::Top, opts, &mut out);
    out
}

/// `λz. z M N` with `z` fresh for `M` and `N`.
fn as_tensor_pair(t: &Term) -> Option<(&Term, &Term)> {
    if let Term::Abs(z, body) = t {
        if let Term::App(f, n) = body.as_ref() {
            if let Term::App(g, m) = f.as_ref() {
                if matches!(g.as_ref(), Term::Var(v) if v == z)
                    && m.occurrences(z) == 0
                    && n.occurrences(z) == 0
                {
                    return Some((m, n));
                }
            }
        }
    }
    None
}

fn term(t: &Term, prec: Prec, opts: PrintOptions, out: &mut String) {
    if opts.use_macros {
        if t.alpha_eq(&Term::identity()) {
            out.push('I');
            return;
        }
        if t.alpha_eq(&Term::tt()) {
            out.push_str("tt");
            return;
        }
        if t.alpha_eq(&Term::ff()) {
            out.push_str("ff");
            return;
        }
        if let Some((m, n)) = as_tensor_pair(t) {
            let paren = prec > Prec::Tensor;
            open(paren, out);
            term(m, Prec::App, opts, out);
            out.push_str(" * ");
            term(n, Prec::Tensor, opts, out);
            close(paren, out);
            return;
        }
    }
    match t {
        Term::Var(x) => out.push_str(x),
        Term::Abs(x, b) => {
            let paren = prec > Prec::Top;
            open(paren, out);
            out.push('\\');
            out.push_str(x);
            out.push_str(". ");
            term(b, Prec::Top, opts, out);
            close(paren, out);
        }
        Term::App(f, a) => {
            let paren = prec > Prec::App;
            open(paren, out);
            term(f, Prec::App, opts, out);
            out.push(' ');
            term(a, Prec::Atom, opts, out);
            close(paren, out);
        }
        Term::Pair(a, b) => {
            out.push('<');
            term(a, Prec::Top, opts, out);
            out.push_str(", ");
            term(b, Prec::Top, opts, out);
            out.push('>');
        }
        Term::Proj(i, a) => {
            out.push_str(&format!("p{}(", i.number()));
            term(a, Prec::Top, opts, out);
            out.push(')');
        }
        Term::Copy(c) => {
            // a copy is self-delimiting but reads poorly as an argument
            let paren = prec > Prec::App;
            open(paren, out);
            out.push_str("copy[");
            term(&c.guard, Prec::Top, opts, out);
            out.push_str("] ");
            term(&c.scrutinee, Prec::App, opts, out);
            out.push_str(" as ");
            out.push_str(&c.left_binder);
            out.push_str(", ");
            out.push_str(&c.right_binder);
            out.push_str(" in <");
            term(&c.left, Prec::Top, opts, out);
            out.push_str(", ");
            term(&c.right, Prec::Top, opts, out);
            out.push('>');
            close(paren, out);
        }
    }
}

fn open(paren: bool, out: &mut String) {
    if paren {
        out.push('(');
    }
}

fn close(paren: bool, out: &mut String) {
    if paren {
        out.push(')');
    }
}
