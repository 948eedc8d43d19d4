use std::fmt;

use serde::Serialize;

use crate::syntax::{Context, Index, Term, Type};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    Ax,
    Cut,
    LolliR,
    LolliL,
    /// Additive right rule with a shared context (IMALL2 only).
    WithR,
    WithR0,
    WithR1,
    WithL(Index),
    ForallR,
    ForallL,
}

impl Rule {
    pub const ALL: [Rule; 11] = [
        Rule::Ax,
        Rule::Cut,
        Rule::LolliR,
        Rule::LolliL,
        Rule::WithR,
        Rule::WithR0,
        Rule::WithR1,
        Rule::WithL(Index::First),
        Rule::WithL(Index::Second),
        Rule::ForallR,
        Rule::ForallL,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Rule::Ax => "ax",
            Rule::Cut => "cut",
            Rule::LolliR => "lolliR",
            Rule::LolliL => "lolliL",
            Rule::WithR => "withR",
            Rule::WithR0 => "withR0",
            Rule::WithR1 => "withR1",
            Rule::WithL(Index::First) => "withL1",
            Rule::WithL(Index::Second) => "withL2",
            Rule::ForallR => "forallR",
            Rule::ForallL => "forallL",
        }
    }

    pub fn from_name(s: &str) -> Option<Rule> {
        Rule::ALL.into_iter().find(|r| r.name() == s)
    }

    pub fn arity(self) -> usize {
        match self {
            Rule::Ax => 0,
            Rule::LolliR | Rule::WithL(_) | Rule::ForallR | Rule::ForallL => 1,
            Rule::Cut | Rule::LolliL | Rule::WithR | Rule::WithR0 => 2,
            Rule::WithR1 => 3,
        }
    }
}

impl Serialize for Rule {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `Γ ⊢ M : A`
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Judgement {
    pub context: Context,
    pub subject: Term,
    #[serde(rename = "type")]
    pub ty: Type,
}

impl Judgement {
    pub fn new(context: Context, subject: Term, ty: Type) -> Judgement {
        Judgement { context, subject, ty }
    }

    /// The curried type `A1 ⊸ … ⊸ An ⊸ B`.
    pub fn curried_type(&self) -> Type {
        self.context
            .entries()
            .iter()
            .rev()
            .fold(self.ty.clone(), |acc, (_, a)| Type::lolli(a.clone(), acc))
    }

    pub fn is_forall_lazy(&self) -> bool {
        self.curried_type().is_forall_lazy()
    }
}

impl fmt::Display for Judgement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ctx: Vec<String> = self
            .context
            .entries()
            .iter()
            .map(|(x, a)| format!("{x}: {a}"))
            .collect();
        write!(f, "{} |- {} : {}", ctx.join(", "), self.subject, self.ty)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Derivation {
    pub rule: Rule,
    pub conclusion: Judgement,
    pub premises: Vec<Derivation>,
}

/// Position of a node: indices of premises followed from the root.
pub type Path = Vec<usize>;

impl Derivation {
    pub fn new(rule: Rule, conclusion: Judgement, premises: Vec<Derivation>) -> Derivation {
        Derivation { rule, conclusion, premises }
    }

    pub fn context(&self) -> &Context {
        &self.conclusion.context
    }

    pub fn subject(&self) -> &Term {
        &self.conclusion.subject
    }

    pub fn ty(&self) -> &Type {
        &self.conclusion.ty
    }

    pub fn at(&self, path: &[usize]) -> Option<&Derivation> {
        match path.split_first() {
            None => Some(self),
            Some((i, rest)) => self.premises.get(*i)?.at(rest),
        }
    }

    pub fn at_mut(&mut self, path: &[usize]) -> Option<&mut Derivation> {
        match path.split_first() {
            None => Some(self),
            Some((i, rest)) => self.premises.get_mut(*i)?.at_mut(rest),
        }
    }

    /// Number of rule instances.
    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(Derivation::size).sum::<usize>()
    }

    /// Number of `withR1` instances.
    pub fn weight(&self) -> usize {
        usize::from(self.rule == Rule::WithR1) + self.premises.iter().map(Derivation::weight).sum::<usize>()
    }

    /// Longest root-to-leaf path, counted in edges.
    pub fn height(&self) -> usize {
        self.premises.iter().map(|p| p.height() + 1).max().unwrap_or(0)
    }

    pub fn is_cut_free(&self) -> bool {
        self.rule != Rule::Cut && self.premises.iter().all(Derivation::is_cut_free)
    }

    /// Pre-order listing of all node paths.
    pub fn paths(&self) -> Vec<Path> {
        let mut out = Vec::new();
        fn go(d: &Derivation, cur: &mut Path, out: &mut Vec<Path>) {
            out.push(cur.clone());
            for (i, p) in d.premises.iter().enumerate() {
                cur.push(i);
                go(p, cur, out);
                cur.pop();
            }
        }
        go(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn count_rule(&self, pred: impl Fn(Rule) -> bool + Copy) -> usize {
        usize::from(pred(self.rule)) + self.premises.iter().map(|p| p.count_rule(pred)).sum::<usize>()
    }
}
