//! Token strings: whitespace-separated, with `'…'` around multiword tokens.

use thfsg_core::Symbol;

use crate::scan::SyntaxError;

/// Splits `text` into tokens. A `'` opens a quoted token only at the start
/// of a token, so `d'chind` is one plain token; a quoted token runs to the
/// next `'` followed by whitespace or the end of input.
pub fn parse_tokens(text: &str) -> Result<Vec<Symbol>, SyntaxError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        if chars[i].1.is_whitespace() {
            i += 1;
            continue;
        }
        let open = i;
        if chars[i].1 == '\'' {
            let close = (i + 1..chars.len())
                .find(|&j| chars[j].1 == '\'' && chars.get(j + 1).is_none_or(|c| c.1.is_whitespace()))
                .ok_or_else(|| SyntaxError::new(1, open + 1, "unterminated quoted token"))?;
            let inner = &text[chars[i].0 + 1..chars[close].0];
            if inner.trim().is_empty() {
                return Err(SyntaxError::new(1, open + 1, "empty quoted token"));
            }
            out.push(Symbol::new(inner));
            i = close + 1;
        } else {
            while i < chars.len() && !chars[i].1.is_whitespace() {
                i += 1;
            }
            let end = chars.get(i).map_or(text.len(), |c| c.0);
            out.push(Symbol::new(&text[chars[open].0..end]));
        }
    }
    Ok(out)
}

/// The inverse of [`parse_tokens`].
pub fn format_tokens(tokens: &[Symbol]) -> String {
    tokens
        .iter()
        .map(|t| {
            if t.contains(char::is_whitespace) || t.starts_with('\'') {
                format!("'{t}'")
            } else {
                t.to_string()
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}
