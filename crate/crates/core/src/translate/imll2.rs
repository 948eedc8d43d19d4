//! Linear type checking of Church-style terms in IMLL₂.

use crate::reduce::annotated::Ann;
use crate::syntax::{Context, Type};

struct Entry {
    name: String,
    ty: Type,
    used: bool,
}

/// Type of `a` under `ctx`, requiring every variable to be used exactly once.
pub(crate) fn check(a: &Ann, ctx: &Context) -> Result<Type, String> {
    let mut env: Vec<Entry> =
        ctx.entries().iter().map(|(x, t)| Entry { name: x.clone(), ty: t.clone(), used: false }).collect();
    let t = infer(a, &mut env)?;
    if let Some(e) = env.iter().find(|e| !e.used) {
        return Err(format!("context variable {} is unused", e.name));
    }
    Ok(t)
}

fn infer(a: &Ann, env: &mut Vec<Entry>) -> Result<Type, String> {
    match a {
        Ann::Var(x, t) => {
            let e = env.iter_mut().rev().find(|e| &e.name == x).ok_or_else(|| format!("unbound variable {x}"))?;
            if e.used {
                return Err(format!("variable {x} used twice"));
            }
            if &e.ty != t {
                return Err(format!("variable {x} annotated {t}, bound at {}", e.ty));
            }
            e.used = true;
            Ok(t.clone())
        }
        Ann::Abs(x, t, body) => {
            env.push(Entry { name: x.clone(), ty: t.clone(), used: false });
            let bt = infer(body, env)?;
            let e = env.pop().expect("pushed above");
            if !e.used {
                return Err(format!("bound variable {x} is unused"));
            }
            Ok(Type::lolli(t.clone(), bt))
        }
        Ann::App(f, arg) => {
            let ft = infer(f, env)?;
            let at = infer(arg, env)?;
            match ft {
                Type::Lolli(dom, cod) if *dom == at => Ok(*cod),
                Type::Lolli(dom, _) => Err(format!("argument of type {at} where {dom} is expected")),
                other => Err(format!("application of a term of type {other}")),
            }
        }
        Ann::TAbs(g, body) => {
            let before: Vec<bool> = env.iter().map(|e| e.used).collect();
            let bt = infer(body, env)?;
            for (e, was) in env.iter().zip(before) {
                if e.used && !was && e.ty.has_free(g) {
                    return Err(format!("eigenvariable {g} is free in the type of {}", e.name));
                }
            }
            Ok(Type::forall(g.clone(), bt))
        }
        Ann::TApp(f, t) => match infer(f, env)? {
            Type::Forall(alpha, body) => Ok(body.subst(&alpha, t)),
            other => Err(format!("type application of a term of type {other}")),
        },
        Ann::Pair(..) | Ann::Proj(..) | Ann::Copy(_) | Ann::Let(..) => {
            Err("additive or cut construct outside IMLL2".to_string())
        }
    }
}
