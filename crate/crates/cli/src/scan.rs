//! Line scanning shared by the text formats.

use thiserror::Error;

/// A malformed input file, located by 1-based line and column.
#[derive(Clone, PartialEq, Eq, Debug, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct SyntaxError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl SyntaxError {
    pub(crate) fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        SyntaxError {
            line,
            column,
            message: message.into(),
        }
    }
}

/// The lines of `text` with `;` comments removed, skipping blank ones.
/// A `;` inside a double-quoted string does not start a comment.
pub(crate) fn lines(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let text = strip_comment(raw);
        (!text.trim().is_empty()).then(|| Line {
            text,
            pos: 0,
            number: i + 1,
        })
    })
}

fn strip_comment(raw: &str) -> &str {
    let mut quoted = false;
    let mut escaped = false;
    for (i, c) in raw.char_indices() {
        if quoted {
            match c {
                _ if escaped => escaped = false,
                '\\' => escaped = true,
                '"' => quoted = false,
                _ => {}
            }
        } else if c == '"' {
            quoted = true;
        } else if c == ';' {
            return &raw[..i];
        }
    }
    raw
}

/// Spells `text` as a double-quoted string, escaping `"` and `\`.
pub fn quote(text: &str) -> String {
    let mut out = String::with_capacity(text.len() + 2);
    out.push('"');
    for c in text.chars() {
        if matches!(c, '"' | '\\') {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

pub(crate) struct Line<'a> {
    text: &'a str,
    pos: usize,
    pub number: usize,
}

impl<'a> Line<'a> {
    pub fn column(&self) -> usize {
        self.text[..self.pos].chars().count() + 1
    }

    pub fn error(&self, message: impl Into<String>) -> SyntaxError {
        SyntaxError::new(self.number, self.column(), message)
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        let rest = self.rest();
        self.pos += rest.len() - rest.trim_start().len();
    }

    pub fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.text.len()
    }

    pub fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    pub fn eat(&mut self, literal: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(literal) {
            self.pos += literal.len();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, literal: &str) -> Result<(), SyntaxError> {
        if self.eat(literal) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{literal}`")))
        }
    }

    pub fn finish(&mut self) -> Result<(), SyntaxError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("unexpected trailing text"))
        }
    }

    /// A run of characters up to whitespace or one of `stops`. Double-quoted
    /// stretches are taken verbatim, quotes included, so generated spellings
    /// such as `(q0|"em Hans"|q1)` stay one word.
    pub fn word(&mut self, what: &str, stops: &[char]) -> Result<&'a str, SyntaxError> {
        self.skip_ws();
        let rest = self.rest();
        let mut end = rest.len();
        let mut quoted = false;
        let mut escaped = false;
        for (i, c) in rest.char_indices() {
            if quoted {
                match c {
                    _ if escaped => escaped = false,
                    '\\' => escaped = true,
                    '"' => quoted = false,
                    _ => {}
                }
            } else if c.is_whitespace() || stops.contains(&c) {
                end = i;
                break;
            } else if c == '"' {
                quoted = true;
            }
        }
        if quoted {
            return Err(self.error(format!("unterminated quote in {what}")));
        }
        if end == 0 {
            return Err(self.error(format!("expected {what}")));
        }
        self.pos += end;
        Ok(&rest[..end])
    }

    /// A double-quoted string with `\"` and `\\` escapes, decoded.
    pub fn quoted(&mut self, what: &str) -> Result<String, SyntaxError> {
        self.skip_ws();
        if !self.rest().starts_with('"') {
            return Err(self.error(format!("expected quoted {what}")));
        }
        let mut out = String::new();
        let mut escaped = false;
        for (i, c) in self.rest().char_indices().skip(1) {
            if escaped {
                out.push(c);
                escaped = false;
            } else if c == '\\' {
                escaped = true;
            } else if c == '"' {
                self.pos += i + 1;
                return Ok(out);
            } else {
                out.push(c);
            }
        }
        Err(self.error(format!("unterminated quoted {what}")))
    }

    /// A quoted string when one starts here, otherwise a bare word.
    pub fn item(&mut self, what: &str) -> Result<String, SyntaxError> {
        if self.peek() == Some('"') {
            self.quoted(what)
        } else {
            self.word(what, &[]).map(str::to_string)
        }
    }
}
