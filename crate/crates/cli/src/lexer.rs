//! Tokens of the workspace DSL.
//!
//! Names are bare runs of characters outside the delimiter set, may contain
//! balanced `(...)` / `[...]` groups (inside which commas, dots and spaces
//! are ordinary characters), or are double-quoted with `\"` and `\\` escapes.

use std::fmt;
use std::sync::Arc;

use crate::diag::{Diagnostic, Location};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Name(String),
    LBrace,
    RBrace,
    Semi,
    Colon,
    Comma,
    Dot,
    Eq,
    /// `->`
    Arrow,
    /// `~>`
    HetArrow,
    /// `=>`
    MapsTo,
    Star,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Name(n) => write!(f, "`{n}`"),
            Tok::LBrace => f.write_str("`{`"),
            Tok::RBrace => f.write_str("`}`"),
            Tok::Semi => f.write_str("`;`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::Eq => f.write_str("`=`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::HetArrow => f.write_str("`~>`"),
            Tok::MapsTo => f.write_str("`=>`"),
            Tok::Star => f.write_str("`*`"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Token {
    pub tok: Tok,
    pub loc: Location,
    /// First token on its line; items may end at a line break.
    pub line_start: bool,
}

const DELIMS: &[char] = &['{', '}', ';', ':', ',', '.', '=', '*', '#', '"'];

fn closing(c: char) -> Option<char> {
    match c {
        '(' => Some(')'),
        '[' => Some(']'),
        _ => None,
    }
}

/// Whether `name` lexes back as a single bare name.
pub fn is_bare_name(name: &str) -> bool {
    !name.starts_with('"')
        && matches!(lex(name, "").as_deref(), Ok([Token { tok: Tok::Name(n), .. }]) if n == name)
}

/// Streaming tokenizer over a source text.
pub struct Lexer<'a> {
    text: &'a str,
    /// Byte offset of the next character.
    i: usize,
    line: usize,
    col: usize,
    last_line: usize,
    file: Arc<str>,
    failed: bool,
}

impl<'a> Lexer<'a> {
    pub fn new(text: &'a str, file: &str) -> Lexer<'a> {
        Lexer {
            text,
            i: 0,
            line: 1,
            col: 1,
            last_line: 0,
            file: Arc::from(file),
            failed: false,
        }
    }

    fn loc(&self, line: usize, col: usize) -> Location {
        Location {
            file: self.file.clone(),
            line,
            col,
        }
    }

    /// Location just past the last character.
    pub fn end_location(&self) -> Location {
        let line = self.text.split('\n').count();
        let col = self.text.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        self.loc(line, col)
    }

    fn fail(&mut self, d: Diagnostic) -> Option<Result<Token, Diagnostic>> {
        self.failed = true;
        Some(Err(d))
    }

    /// A bare name starting at the current position: its byte length and
    /// character count.
    fn bare_name(&self) -> Result<(usize, usize), Diagnostic> {
        let rest = &self.text[self.i..];
        let mut stack: Vec<char> = Vec::new();
        let mut it = rest.char_indices().peekable();
        let mut count = 0;
        while let Some((j, ch)) = it.next() {
            if let Some(close) = closing(ch) {
                stack.push(close);
            } else if stack.last() == Some(&ch) {
                stack.pop();
            } else if ch == '\n' || ch == '"' {
                if !stack.is_empty() {
                    return Err(Diagnostic::at(self.loc(self.line, self.col), "unclosed bracket in name"));
                }
                return Ok((j, count));
            } else if stack.is_empty() {
                let after = it.peek().map(|&(_, c)| c);
                if ch == ')' || ch == ']' {
                    return Err(Diagnostic::at(self.loc(self.line, self.col + count), format!("unbalanced `{ch}`")));
                }
                if ch.is_whitespace() || DELIMS.contains(&ch) || ((ch == '-' || ch == '~') && after == Some('>')) {
                    return Ok((j, count));
                }
            }
            count += 1;
        }
        if !stack.is_empty() {
            return Err(Diagnostic::at(self.loc(self.line, self.col), "unclosed bracket in name"));
        }
        Ok((rest.len(), count))
    }
}

impl Iterator for Lexer<'_> {
    type Item = Result<Token, Diagnostic>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        loop {
            let c = self.text[self.i..].chars().next()?;
            if c == '\n' {
                self.i += 1;
                self.line += 1;
                self.col = 1;
            } else if c.is_whitespace() {
                self.i += c.len_utf8();
                self.col += 1;
            } else if c == '#' {
                self.i += self.text[self.i..].find('\n').unwrap_or(self.text.len() - self.i);
            } else {
                break;
            }
        }
        let rest = &self.text[self.i..];
        let mut chars = rest.chars();
        let c = chars.next()?;
        let next = chars.next();
        let start = self.loc(self.line, self.col);
        // (token, bytes, characters)
        let (tok, bytes, width) = match c {
            '{' => (Tok::LBrace, 1, 1),
            '}' => (Tok::RBrace, 1, 1),
            ';' => (Tok::Semi, 1, 1),
            ':' => (Tok::Colon, 1, 1),
            ',' => (Tok::Comma, 1, 1),
            '.' => (Tok::Dot, 1, 1),
            '*' => (Tok::Star, 1, 1),
            '=' if next == Some('>') => (Tok::MapsTo, 2, 2),
            '=' => (Tok::Eq, 1, 1),
            '-' if next == Some('>') => (Tok::Arrow, 2, 2),
            '~' if next == Some('>') => (Tok::HetArrow, 2, 2),
            '"' => {
                let mut name = String::new();
                let mut it = rest.char_indices().skip(1);
                let mut width = 1;
                let end = loop {
                    match it.next() {
                        None | Some((_, '\n')) => return self.fail(Diagnostic::at(start, "unterminated quoted name")),
                        Some((j, '"')) => break j + 1,
                        Some((_, '\\')) => {
                            match it.next() {
                                Some((_, e @ ('"' | '\\'))) => name.push(e),
                                _ => {
                                    let at = self.loc(self.line, self.col + width);
                                    return self.fail(Diagnostic::at(at, "unknown escape in quoted name"));
                                }
                            }
                            width += 2;
                        }
                        Some((_, ch)) => {
                            name.push(ch);
                            width += 1;
                        }
                    }
                };
                (Tok::Name(name), end, width + 1)
            }
            ')' | ']' => return self.fail(Diagnostic::at(start, format!("unbalanced `{c}`"))),
            _ => match self.bare_name() {
                Ok((bytes, width)) => (Tok::Name(rest[..bytes].to_string()), bytes, width),
                Err(d) => return self.fail(d),
            },
        };
        let line_start = self.line != self.last_line;
        self.last_line = self.line;
        self.i += bytes;
        self.col += width;
        Some(Ok(Token {
            tok,
            loc: start,
            line_start,
        }))
    }
}

pub fn lex(text: &str, file: &str) -> Result<Vec<Token>, Diagnostic> {
    Lexer::new(text, file).collect()
}
