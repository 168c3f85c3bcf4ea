//! Plain-text file formats. Every format starts with a versioned header line
//! and is written in one canonical form, so `write(read(text)) == text` for
//! any text produced by a writer.

mod colors;
mod coreset;
mod instance;
mod matroid;

pub use colors::{read_colors, write_colors};
pub use coreset::{read_coreset_dump, write_coreset_dump, CoresetDump, DumpEntry};
pub use instance::{read_instance, write_instance};
pub use matroid::{read_matroid, write_matroid};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

pub type FormatResult<T> = Result<T, FormatError>;

pub(crate) fn fail<T>(line: usize, message: impl Into<String>) -> FormatResult<T> {
    Err(FormatError { line, message: message.into() })
}

/// Numbered, nonempty lines.
pub(crate) struct Lines<'a> {
    inner: std::iter::Peekable<std::iter::Enumerate<std::str::Lines<'a>>>,
    last: usize,
}

impl<'a> Lines<'a> {
    pub fn new(text: &'a str) -> Self {
        Lines { inner: text.lines().enumerate().peekable(), last: 0 }
    }

    pub fn next_line(&mut self) -> Option<(usize, &'a str)> {
        for (i, line) in self.inner.by_ref() {
            self.last = i + 1;
            let line = line.trim();
            if !line.is_empty() {
                return Some((i + 1, line));
            }
        }
        None
    }

    pub fn expect(&mut self, what: &str) -> FormatResult<(usize, &'a str)> {
        match self.next_line() {
            Some(l) => Ok(l),
            None => fail(self.last + 1, format!("unexpected end of file, expected {what}")),
        }
    }

    /// `key=value` with the given key.
    pub fn key(&mut self, key: &str) -> FormatResult<(usize, &'a str)> {
        let (n, line) = self.expect(&format!("`{key}=`"))?;
        match line.split_once('=') {
            Some((k, v)) if k.trim() == key => Ok((n, v.trim())),
            _ => fail(n, format!("expected `{key}=...`, found `{line}`")),
        }
    }

    pub fn header(&mut self, expected: &str) -> FormatResult<()> {
        let (n, line) = self.expect(expected)?;
        if line != expected {
            return fail(n, format!("expected header `{expected}`, found `{line}`"));
        }
        Ok(())
    }
}

pub(crate) fn parse<T: std::str::FromStr>(line: usize, field: &str, what: &str) -> FormatResult<T> {
    match field.trim().parse() {
        Ok(v) => Ok(v),
        Err(_) => fail(line, format!("invalid {what} `{field}`")),
    }
}

pub(crate) fn parse_list<T: std::str::FromStr>(line: usize, field: &str, what: &str) -> FormatResult<Vec<T>> {
    if field.trim().is_empty() {
        return Ok(Vec::new());
    }
    field.split(',').map(|f| parse(line, f, what)).collect()
}

pub(crate) fn join<T: std::fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}
