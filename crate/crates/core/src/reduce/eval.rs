//! Fast normalisation without per-step traces, used for large IMLL2 terms.

use super::ReduceError;
use crate::syntax::{Index, Term};

struct Fuel {
    used: usize,
    budget: usize,
}

impl Fuel {
    fn tick(&mut self) -> Result<(), ReduceError> {
        self.used += 1;
        if self.used > self.budget {
            Err(ReduceError::BudgetExhausted(self.budget))
        } else {
            Ok(())
        }
    }
}

fn whnf(t: Term, fuel: &mut Fuel) -> Result<Term, ReduceError> {
    match t {
        Term::App(f, a) => {
            let f = whnf(*f, fuel)?;
            match f {
                Term::Abs(x, b) => {
                    fuel.tick()?;
                    whnf(b.subst(&x, &a), fuel)
                }
                f => Ok(Term::App(Box::new(f), a)),
            }
        }
        Term::Proj(i, p) => {
            let p = whnf(*p, fuel)?;
            match p {
                Term::Pair(a, b) => {
                    fuel.tick()?;
                    whnf(if i == Index::First { *a } else { *b }, fuel)
                }
                p => Ok(Term::Proj(i, Box::new(p))),
            }
        }
        Term::Copy(c) => {
            let c = *c;
            let scrutinee = nf(c.scrutinee, fuel)?;
            if scrutinee.is_value() {
                fuel.tick()?;
                let l = c.left.subst(&c.left_binder, &scrutinee);
                let r = c.right.subst(&c.right_binder, &scrutinee);
                return Ok(Term::pair(l, r));
            }
            Ok(Term::copy_node(c.guard, scrutinee, c.left_binder, c.right_binder, c.left, c.right))
        }
        t => Ok(t),
    }
}

fn nf(t: Term, fuel: &mut Fuel) -> Result<Term, ReduceError> {
    match whnf(t, fuel)? {
        Term::Abs(x, b) => Ok(Term::abs(x, nf(*b, fuel)?)),
        Term::App(f, a) => Ok(Term::app(nf(*f, fuel)?, nf(*a, fuel)?)),
        Term::Pair(a, b) => Ok(Term::pair(nf(*a, fuel)?, nf(*b, fuel)?)),
        Term::Proj(i, p) => Ok(Term::proj(i, nf(*p, fuel)?)),
        // whnf leaves a copy only when its scrutinee is stuck and normal
        Term::Copy(c) => {
            let c = *c;
            Ok(Term::copy_node(c.guard, c.scrutinee, c.left_binder, c.right_binder, nf(c.left, fuel)?, nf(c.right, fuel)?))
        }
        v @ Term::Var(_) => Ok(v),
    }
}

/// Normal form and the number of contractions performed.
pub fn beta_normalize(t: &Term, budget: usize) -> Result<(Term, usize), ReduceError> {
    let mut fuel = Fuel { used: 0, budget };
    let n = nf(t.clone(), &mut fuel)?;
    Ok((n, fuel.used))
}

/// Exhaustive eta-contraction, bottom-up.
pub fn eta_normalize(t: &Term) -> Term {
    match t {
        Term::Var(_) => t.clone(),
        Term::Abs(x, b) => {
            let b = eta_normalize(b);
            if let Term::App(m, v) = &b {
                if matches!(v.as_ref(), Term::Var(w) if w == x) && m.occurrences(x) == 0 {
                    return (**m).clone();
                }
            }
            Term::abs(x.clone(), b)
        }
        Term::App(a, b) => Term::app(eta_normalize(a), eta_normalize(b)),
        Term::Pair(a, b) => Term::pair(eta_normalize(a), eta_normalize(b)),
        Term::Proj(i, a) => Term::proj(*i, eta_normalize(a)),
        Term::Copy(c) => Term::copy_node(
            c.guard.clone(),
            eta_normalize(&c.scrutinee),
            c.left_binder.clone(),
            c.right_binder.clone(),
            eta_normalize(&c.left),
            eta_normalize(&c.right),
        ),
    }
}

/// Equality of beta-normal, eta-contracted forms.
pub fn beta_eta_equal(t1: &Term, t2: &Term, budget: usize) -> Result<bool, ReduceError> {
    let (n1, _) = beta_normalize(t1, budget)?;
    let (n2, _) = beta_normalize(t2, budget)?;
    Ok(eta_normalize(&n1) == eta_normalize(&n2))
}
