use super::lexer::{lex, Spanned, Tok};
use super::{ParseError, SourceSpan};
use crate::syntax::{Index, Term, Type};

const KEYWORDS: &[&str] = &["let", "be", "in", "as", "copy", "I", "tt", "ff", "p1", "p2", "Bool"];

pub(crate) struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    pub(crate) fn new(src: &str, base: usize) -> Result<Parser, ParseError> {
        Ok(Parser { toks: lex(src, base)?, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn span(&self) -> SourceSpan {
        self.toks[self.pos].span
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        ParseError::new(
            self.span(),
            format!("unexpected {}", self.peek().describe()),
            expected.iter().map(|s| s.to_string()).collect(),
        )
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&[&tok.describe()]))
        }
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        if self.is_keyword(kw) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&[&format!("`{kw}`")]))
        }
    }

    fn name(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                self.bump();
                Ok(s)
            }
            _ => Err(self.error(&["variable"])),
        }
    }

    pub(crate) fn finish(&mut self) -> Result<(), ParseError> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            Err(self.error(&["end of input"]))
        }
    }

    // ---- terms ----

    pub(crate) fn term(&mut self) -> Result<Term, ParseError> {
        match self.peek() {
            Tok::Lambda => {
                self.bump();
                let mut binders = vec![self.name()?];
                while matches!(self.peek(), Tok::Ident(_)) {
                    binders.push(self.name()?);
                }
                self.expect(Tok::Dot)?;
                let body = self.term()?;
                Ok(binders.into_iter().rev().fold(body, |b, x| Term::abs(x, b)))
            }
            Tok::Ident(s) if s == "let" => {
                self.bump();
                let m = self.term()?;
                self.expect_keyword("be")?;
                if self.is_keyword("I") {
                    self.bump();
                    self.expect_keyword("in")?;
                    let n = self.term()?;
                    return Ok(Term::let_unit(m, n));
                }
                let x = self.name()?;
                self.expect(Tok::Star)?;
                let y = self.name()?;
                self.expect_keyword("in")?;
                let n = self.term()?;
                Ok(Term::let_tensor(m, x, y, n))
            }
            _ => self.tensor_term(),
        }
    }

    fn tensor_term(&mut self) -> Result<Term, ParseError> {
        let left = self.app_term()?;
        if *self.peek() == Tok::Star {
            self.bump();
            let right = match self.peek() {
                Tok::Lambda => self.term()?,
                Tok::Ident(s) if s == "let" => self.term()?,
                _ => self.tensor_term()?,
            };
            return Ok(Term::tensor_pair(left, right));
        }
        Ok(left)
    }

    fn starts_atom(&self) -> bool {
        match self.peek() {
            Tok::LParen | Tok::LAngle => true,
            Tok::Ident(s) => !matches!(s.as_str(), "let" | "be" | "in" | "as"),
            _ => false,
        }
    }

    fn app_term(&mut self) -> Result<Term, ParseError> {
        let mut t = self.atom_term()?;
        loop {
            if self.starts_atom() {
                let a = self.atom_term()?;
                t = Term::app(t, a);
            } else if matches!(self.peek(), Tok::Lambda) {
                // trailing abstraction argument: `f \x. M`
                let a = self.term()?;
                return Ok(Term::app(t, a));
            } else {
                return Ok(t);
            }
        }
    }

    fn atom_term(&mut self) -> Result<Term, ParseError> {
        let start = self.span();
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Tok::LAngle => {
                self.bump();
                let a = self.term()?;
                self.expect(Tok::Comma)?;
                let b = self.term()?;
                self.expect(Tok::RAngle)?;
                Ok(Term::pair(a, b))
            }
            Tok::Ident(s) => match s.as_str() {
                "I" => {
                    self.bump();
                    Ok(Term::identity())
                }
                "tt" => {
                    self.bump();
                    Ok(Term::tt())
                }
                "ff" => {
                    self.bump();
                    Ok(Term::ff())
                }
                "p1" | "p2" if *self.peek_at(1) == Tok::LParen => {
                    let i = if s == "p1" { Index::First } else { Index::Second };
                    self.bump();
                    self.bump();
                    let t = self.term()?;
                    self.expect(Tok::RParen)?;
                    Ok(Term::proj(i, t))
                }
                "copy" => {
                    self.bump();
                    self.expect(Tok::LBracket)?;
                    let guard_span = self.span();
                    let guard = self.term()?;
                    self.expect(Tok::RBracket)?;
                    let scrutinee = self.app_term()?;
                    self.expect_keyword("as")?;
                    let x = self.name()?;
                    self.expect(Tok::Comma)?;
                    let y = self.name()?;
                    self.expect_keyword("in")?;
                    self.expect(Tok::LAngle)?;
                    let p = self.term()?;
                    self.expect(Tok::Comma)?;
                    let q = self.term()?;
                    self.expect(Tok::RAngle)?;
                    Term::copy(guard, scrutinee, x, y, p, q).map_err(|e| {
                        ParseError::new(SourceSpan::new(start.start, guard_span.end), e.to_string(), vec!["value".into()])
                    })
                }
                _ => Ok(Term::var(self.name()?)),
            },
            _ => Err(self.error(&["term"])),
        }
    }

    // ---- types ----

    pub(crate) fn ty(&mut self) -> Result<Type, ParseError> {
        if *self.peek() == Tok::Forall {
            self.bump();
            let mut binders = vec![self.name()?];
            while matches!(self.peek(), Tok::Ident(_)) {
                binders.push(self.name()?);
            }
            self.expect(Tok::Dot)?;
            let body = self.ty()?;
            return Ok(binders.into_iter().rev().fold(body, |b, a| Type::forall(a, b)));
        }
        let left = self.binary_ty()?;
        if *self.peek() == Tok::Lolli {
            self.bump();
            let right = self.ty()?;
            return Ok(Type::lolli(left, right));
        }
        Ok(left)
    }

    fn binary_ty(&mut self) -> Result<Type, ParseError> {
        let mut t = self.atom_ty()?;
        loop {
            match self.peek() {
                Tok::Amp => {
                    self.bump();
                    let r = self.atom_ty()?;
                    t = Type::with(t, r);
                }
                Tok::Star => {
                    self.bump();
                    let r = self.atom_ty()?;
                    t = Type::tensor(t, r);
                }
                _ => return Ok(t),
            }
        }
    }

    fn atom_ty(&mut self) -> Result<Type, ParseError> {
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let t = self.ty()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Tok::One => {
                self.bump();
                Ok(Type::unit())
            }
            Tok::Ident(s) if s == "Bool" => {
                self.bump();
                Ok(Type::boolean())
            }
            Tok::Ident(_) => Ok(Type::var(self.name()?)),
            _ => Err(self.error(&["type"])),
        }
    }
}

pub fn parse_term(src: &str) -> Result<Term, ParseError> {
    parse_term_at(src, 0)
}

pub(crate) fn parse_term_at(src: &str, base: usize) -> Result<Term, ParseError> {
    let mut p = Parser::new(src, base)?;
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

pub fn parse_type(src: &str) -> Result<Type, ParseError> {
    parse_type_at(src, 0)
}

pub(crate) fn parse_type_at(src: &str, base: usize) -> Result<Type, ParseError> {
    let mut p = Parser::new(src, base)?;
    let t = p.ty()?;
    p.finish()?;
    Ok(t)
}
