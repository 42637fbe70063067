//! Escaping for whitespace-separated text formats.
//!
//! Words are written with `\\`, `\s`, `\t`, `\n` and `\r` escapes so that a
//! token containing whitespace survives a round trip through the graph, walk
//! and embedding files. Ordinary words are written unchanged.

use std::borrow::Cow;

pub fn escape(word: &str) -> Cow<'_, str> {
    if !word.contains(['\\', ' ', '\t', '\n', '\r']) {
        return Cow::Borrowed(word);
    }
    let mut out = String::with_capacity(word.len() + 4);
    for c in word.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            ' ' => out.push_str("\\s"),
            '\t' => out.push_str("\\t"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            c => out.push(c),
        }
    }
    Cow::Owned(out)
}

/// Inverse of [`escape`]. Returns `None` on a dangling or unknown escape.
pub fn unescape(field: &str) -> Option<Cow<'_, str>> {
    if !field.contains('\\') {
        return Some(Cow::Borrowed(field));
    }
    let mut out = String::with_capacity(field.len());
    let mut chars = field.chars();
    while let Some(c) = chars.next() {
        if c != '\\' {
            out.push(c);
            continue;
        }
        out.push(match chars.next()? {
            '\\' => '\\',
            's' => ' ',
            't' => '\t',
            'n' => '\n',
            'r' => '\r',
            _ => return None,
        });
    }
    Some(Cow::Owned(out))
}
