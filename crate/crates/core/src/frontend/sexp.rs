//! S-expression reader and writer for derivation files.

use super::parse::{parse_term_at, parse_type_at};
use super::print::{print_term, print_type};
use super::{ParseError, SourceSpan};
use crate::derivation::{Derivation, Judgement, Rule};
use crate::syntax::Context;

#[derive(Debug, Clone)]
enum Sexp {
    Atom(String, SourceSpan),
    Str(String, SourceSpan),
    List(Vec<Sexp>, SourceSpan),
}

impl Sexp {
    fn span(&self) -> SourceSpan {
        match self {
            Sexp::Atom(_, s) | Sexp::Str(_, s) | Sexp::List(_, s) => *s,
        }
    }
}

struct Reader<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Reader<'a> {
    fn skip_ws(&mut self) {
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() {
            match bytes[self.pos] {
                b';' => {
                    while self.pos < bytes.len() && bytes[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                c if c.is_ascii_whitespace() => self.pos += 1,
                _ => break,
            }
        }
    }

    fn err(&self, msg: &str, expected: &[&str]) -> ParseError {
        let end = (self.pos + 1).min(self.src.len());
        ParseError::new(
            SourceSpan::new(self.pos, end.max(self.pos)),
            msg,
            expected.iter().map(|s| s.to_string()).collect(),
        )
    }

    fn read(&mut self) -> Result<Sexp, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.src.as_bytes();
        match bytes.get(self.pos) {
            None => Err(self.err("unexpected end of input", &["`(`", "atom", "string"])),
            Some(b'(') => {
                self.pos += 1;
                let mut items = Vec::new();
                loop {
                    self.skip_ws();
                    match bytes.get(self.pos) {
                        None => return Err(self.err("unclosed list", &["`)`"])),
                        Some(b')') => {
                            self.pos += 1;
                            return Ok(Sexp::List(items, SourceSpan::new(start, self.pos)));
                        }
                        Some(_) => items.push(self.read()?),
                    }
                }
            }
            Some(b')') => Err(self.err("unexpected `)`", &["`(`", "atom", "string"])),
            Some(b'"') => {
                self.pos += 1;
                let mut s = String::new();
                let mut chars = self.src[self.pos..].char_indices();
                loop {
                    match chars.next() {
                        None => {
                            self.pos = self.src.len();
                            return Err(self.err("unterminated string", &["`\"`"]));
                        }
                        Some((i, '"')) => {
                            self.pos += i + 1;
                            return Ok(Sexp::Str(s, SourceSpan::new(start, self.pos)));
                        }
                        // only `\"` is an escape; terms use `\` for lambda
                        Some((_, '\\')) if peek_quote(&chars) => {
                            chars.next();
                            s.push('"');
                        }
                        Some((_, c)) => s.push(c),
                    }
                }
            }
            Some(_) => {
                let rest = &self.src[self.pos..];
                let len = rest
                    .find(|c: char| c.is_whitespace() || c == '(' || c == ')' || c == '"' || c == ';')
                    .unwrap_or(rest.len());
                self.pos += len;
                Ok(Sexp::Atom(rest[..len].to_string(), SourceSpan::new(start, self.pos)))
            }
        }
    }
}

fn expect_list<'s>(s: &'s Sexp, what: &str) -> Result<&'s [Sexp], ParseError> {
    match s {
        Sexp::List(items, _) => Ok(items),
        other => Err(ParseError::new(other.span(), format!("expected {what}"), vec!["`(`".into()])),
    }
}

fn expect_atom<'s>(s: &'s Sexp, what: &str) -> Result<&'s str, ParseError> {
    match s {
        Sexp::Atom(a, _) => Ok(a),
        other => Err(ParseError::new(other.span(), format!("expected {what}"), vec![what.into()])),
    }
}

fn text<'s>(s: &'s Sexp, what: &str) -> Result<(&'s str, usize), ParseError> {
    match s {
        // offset of the first character after the opening quote
        Sexp::Str(t, span) => Ok((t, span.start + 1)),
        Sexp::Atom(t, span) => Ok((t, span.start)),
        other => Err(ParseError::new(other.span(), format!("expected {what}"), vec!["string".into()])),
    }
}

fn judgement(s: &Sexp) -> Result<Judgement, ParseError> {
    let items = expect_list(s, "`(seq ...)`")?;
    if items.len() != 4 || !matches!(&items[0], Sexp::Atom(a, _) if a == "seq") {
        return Err(ParseError::new(s.span(), "malformed sequent", vec!["`(seq (CONTEXT) TERM TYPE)`".into()]));
    }
    let mut ctx = Context::new();
    for entry in expect_list(&items[1], "context list")? {
        let pair = expect_list(entry, "assumption `(x TYPE)`")?;
        if pair.len() != 2 {
            return Err(ParseError::new(entry.span(), "malformed assumption", vec!["`(x TYPE)`".into()]));
        }
        let x = expect_atom(&pair[0], "variable")?;
        let (ty_src, base) = text(&pair[1], "type")?;
        let ty = parse_type_at(ty_src, base)?;
        ctx.push(x, ty)
            .map_err(|e| ParseError::new(pair[0].span(), e.to_string(), vec![]))?;
    }
    let (term_src, tb) = text(&items[2], "term")?;
    let (ty_src, yb) = text(&items[3], "type")?;
    Ok(Judgement::new(ctx, parse_term_at(term_src, tb)?, parse_type_at(ty_src, yb)?))
}

fn derivation(s: &Sexp) -> Result<Derivation, ParseError> {
    let items = expect_list(s, "`(rule ...)`")?;
    if items.len() < 3 || !matches!(&items[0], Sexp::Atom(a, _) if a == "rule") {
        return Err(ParseError::new(s.span(), "malformed rule node", vec!["`(rule NAME (seq ...) PREMISE...)`".into()]));
    }
    let name = expect_atom(&items[1], "rule name")?;
    let rule = Rule::from_name(name).ok_or_else(|| {
        ParseError::new(
            items[1].span(),
            format!("unknown rule `{name}`"),
            Rule::ALL.iter().map(|r| r.name().to_string()).collect(),
        )
    })?;
    let conclusion = judgement(&items[2])?;
    let premises = items[3..].iter().map(derivation).collect::<Result<Vec<_>, _>>()?;
    if premises.len() != rule.arity() {
        return Err(ParseError::new(
            s.span(),
            format!("rule {name} takes {} premises, found {}", rule.arity(), premises.len()),
            vec![],
        ));
    }
    Ok(Derivation::new(rule, conclusion, premises))
}

pub fn parse_derivation(src: &str) -> Result<Derivation, ParseError> {
    let mut r = Reader { src, pos: 0 };
    let s = r.read()?;
    r.skip_ws();
    if r.pos < src.len() {
        return Err(r.err("trailing input after derivation", &["end of input"]));
    }
    derivation(&s)
}

fn peek_quote(chars: &std::str::CharIndices<'_>) -> bool {
    chars.clone().next().is_some_and(|(_, c)| c == '"')
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\\\""))
}

pub fn print_derivation(d: &Derivation) -> String {
    let mut out = String::new();
    write_node(d, 0, &mut out);
    out.push('\n');
    out
}

fn write_node(d: &Derivation, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    let ctx: Vec<String> = d
        .conclusion
        .context
        .entries()
        .iter()
        .map(|(x, a)| format!("({x} {})", quote(&print_type(a))))
        .collect();
    out.push_str(&format!(
        "{pad}(rule {} (seq ({}) {} {})",
        d.rule.name(),
        ctx.join(" "),
        quote(&print_term(&d.conclusion.subject)),
        quote(&print_type(&d.conclusion.ty)),
    ));
    for p in &d.premises {
        out.push('\n');
        write_node(p, indent + 2, out);
    }
    out.push(')');
}
