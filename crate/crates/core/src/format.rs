//! Line-oriented text formats shared by both theories.

use thiserror::Error;

use crate::contract::Simplifier;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

/// Reading and writing a theory's element files.
///
/// Files hold one element per line; lines whose first non-blank character
/// is `#` are comments and blank lines are skipped.
pub trait ElementFormat: Simplifier {
    fn parse_set(&self, text: &str) -> Result<Vec<Self::Element>, ParseError>;

    fn render(&self, e: &Self::Element) -> String;

    fn render_interpretation(&self, i: &Self::Interp) -> String;

    /// One element per line, each line newline-terminated.
    fn render_set(&self, s: &[Self::Element]) -> String {
        let mut out = String::new();
        for e in s {
            out.push_str(&self.render(e));
            out.push('\n');
        }
        out
    }
}

/// Iterate `(line_number, indent, trimmed_line)` over the content lines of a
/// file. `indent` is the byte offset of the trimmed text in the raw line.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.len() - l.trim_start().len(), l.trim()))
        .filter(|(_, _, l)| !l.is_empty() && !l.starts_with('#'))
}
