use super::{ParseError, SourceSpan};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Lambda,
    Dot,
    LParen,
    RParen,
    LAngle,
    RAngle,
    LBracket,
    RBracket,
    Comma,
    Star,
    Amp,
    Lolli,
    One,
    Forall,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Lambda => "`\\`".into(),
            Tok::Dot => "`.`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LAngle => "`<`".into(),
            Tok::RAngle => "`>`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Star => "`*`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Lolli => "`-o`".into(),
            Tok::One => "`1`".into(),
            Tok::Forall => "`forall`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Spanned {
    pub tok: Tok,
    pub span: SourceSpan,
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

/// Tokenises `src`; spans are shifted by `base`.
pub fn lex(src: &str, base: usize) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut it = src.char_indices().peekable();
    while let Some(&(i, c)) = it.peek() {
        let single = |tok| Spanned { tok, span: SourceSpan::new(base + i, base + i + c.len_utf8()) };
        match c {
            c if c.is_whitespace() => {
                it.next();
            }
            ';' => {
                while let Some(&(_, c)) = it.peek() {
                    if c == '\n' {
                        break;
                    }
                    it.next();
                }
            }
            '\\' | 'λ' => {
                out.push(single(Tok::Lambda));
                it.next();
            }
            '.' => {
                out.push(single(Tok::Dot));
                it.next();
            }
            '(' => {
                out.push(single(Tok::LParen));
                it.next();
            }
            ')' => {
                out.push(single(Tok::RParen));
                it.next();
            }
            '<' | '⟨' => {
                out.push(single(Tok::LAngle));
                it.next();
            }
            '>' | '⟩' => {
                out.push(single(Tok::RAngle));
                it.next();
            }
            '[' => {
                out.push(single(Tok::LBracket));
                it.next();
            }
            ']' => {
                out.push(single(Tok::RBracket));
                it.next();
            }
            ',' => {
                out.push(single(Tok::Comma));
                it.next();
            }
            '*' | '⊗' => {
                out.push(single(Tok::Star));
                it.next();
            }
            '&' | '∧' => {
                out.push(single(Tok::Amp));
                it.next();
            }
            '⊸' => {
                out.push(single(Tok::Lolli));
                it.next();
            }
            '∀' => {
                out.push(single(Tok::Forall));
                it.next();
            }
            '1' | '𝟏' => {
                out.push(single(Tok::One));
                it.next();
            }
            '-' => {
                it.next();
                match it.peek() {
                    Some(&(j, 'o')) => {
                        it.next();
                        out.push(Spanned { tok: Tok::Lolli, span: SourceSpan::new(base + i, base + j + 1) });
                    }
                    _ => {
                        return Err(ParseError::new(
                            SourceSpan::new(base + i, base + i + 1),
                            "expected `-o`",
                            vec!["`-o`".into()],
                        ))
                    }
                }
            }
            c if is_ident_start(c) => {
                let mut end = i;
                let mut s = String::new();
                while let Some(&(j, c)) = it.peek() {
                    if !is_ident_char(c) {
                        break;
                    }
                    s.push(c);
                    end = j + c.len_utf8();
                    it.next();
                }
                let tok = if s == "forall" { Tok::Forall } else { Tok::Ident(s) };
                out.push(Spanned { tok, span: SourceSpan::new(base + i, base + end) });
            }
            other => {
                return Err(ParseError::new(
                    SourceSpan::new(base + i, base + i + other.len_utf8()),
                    format!("unexpected character `{other}`"),
                    vec![],
                ))
            }
        }
    }
    let end = base + src.len();
    out.push(Spanned { tok: Tok::Eof, span: SourceSpan::new(end, end) });
    Ok(out)
}
