//! Concrete syntax for terms, types and derivations.

mod lexer;
mod parse;
mod print;
mod sexp;

use serde::Serialize;
use thiserror::Error;

pub use parse::{parse_term, parse_type};
pub use print::{print_term, print_term_with, print_type, print_type_with, PrintOptions};
pub use sexp::{parse_derivation, print_derivation};

/// Byte offsets into the parsed text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
}

impl SourceSpan {
    pub fn new(start: usize, end: usize) -> SourceSpan {
        SourceSpan { start, end: end.max(start) }
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq, Serialize)]
#[error("{message} at {}..{}", span.start, span.end)]
pub struct ParseError {
    pub span: SourceSpan,
    pub message: String,
    pub expected: Vec<String>,
}

impl ParseError {
    pub fn new(span: SourceSpan, message: impl Into<String>, expected: Vec<String>) -> ParseError {
        ParseError { span, message: message.into(), expected }
    }

    /// Line and column (1-based) of the error start within `src`.
    pub fn line_col(&self, src: &str) -> (usize, usize) {
        let upto = &src[..self.span.start.min(src.len())];
        let line = upto.matches('\n').count() + 1;
        let col = upto.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        (line, col)
    }
}

#[cfg(test)]
mod tests;
