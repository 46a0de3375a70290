//! Tokenizer shared by the Turtle and SPARQL parsers, and the error type
//! both report.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::model::{is_pn_chars, is_pn_chars_base, is_pn_chars_u};

/// A syntax error pinned to a 1-based line and column of the source.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[error("line {line}, column {column}: {message} (near `{snippet}`)")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub snippet: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Position {
    pub offset: usize,
    pub line: usize,
    pub column: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Token {
    IriRef(String),
    PrefixedName { prefix: String, local: String },
    /// Decoded contents of a double-quoted string.
    Str(String),
    /// `@word`: a directive such as `@prefix`, or a language tag.
    AtWord(String),
    /// Bare identifier such as `a`, `SELECT` or `OPTIONAL`.
    Word(String),
    Var(String),
    DoubleCaret,
    Dot,
    Semicolon,
    Comma,
    Star,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Eof,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::IriRef(iri) => write!(f, "<{iri}>"),
            Token::PrefixedName { prefix, local } => write!(f, "{prefix}:{local}"),
            Token::Str(_) => f.write_str("string literal"),
            Token::AtWord(w) => write!(f, "@{w}"),
            Token::Word(w) => f.write_str(w),
            Token::Var(v) => write!(f, "?{v}"),
            Token::DoubleCaret => f.write_str("^^"),
            Token::Dot => f.write_str("'.'"),
            Token::Semicolon => f.write_str("';'"),
            Token::Comma => f.write_str("','"),
            Token::Star => f.write_str("'*'"),
            Token::LBrace => f.write_str("'{'"),
            Token::RBrace => f.write_str("'}'"),
            Token::LBracket => f.write_str("'['"),
            Token::RBracket => f.write_str("']'"),
            Token::LParen => f.write_str("'('"),
            Token::RParen => f.write_str("')'"),
            Token::Eof => f.write_str("end of input"),
        }
    }
}

pub struct Lexer<'a> {
    src: &'a str,
    pos: Position,
    peeked: Option<(Position, Token)>,
}

impl<'a> Lexer<'a> {
    pub fn new(src: &'a str) -> Self {
        Lexer { src, pos: Position { offset: 0, line: 1, column: 1 }, peeked: None }
    }

    pub fn error_at(&self, at: Position, message: impl Into<String>) -> ParseError {
        let rest = &self.src[at.offset..];
        let line_rest = rest.split('\n').next().unwrap_or("");
        let snippet: String = line_rest.chars().take(40).collect();
        ParseError { line: at.line, column: at.column, message: message.into(), snippet }
    }

    /// Next token without consuming it.
    pub fn peek(&mut self) -> Result<&(Position, Token), ParseError> {
        if self.peeked.is_none() {
            let tok = self.lex()?;
            self.peeked = Some(tok);
        }
        Ok(self.peeked.as_ref().unwrap())
    }

    pub fn next_token(&mut self) -> Result<(Position, Token), ParseError> {
        match self.peeked.take() {
            Some(tok) => Ok(tok),
            None => self.lex(),
        }
    }

    fn current(&self) -> Option<char> {
        self.src[self.pos.offset..].chars().next()
    }

    fn nth(&self, n: usize) -> Option<char> {
        self.src[self.pos.offset..].chars().nth(n)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.current()?;
        self.pos.offset += c.len_utf8();
        if c == '\n' {
            self.pos.line += 1;
            self.pos.column = 1;
        } else {
            self.pos.column += 1;
        }
        Some(c)
    }

    fn skip_trivia(&mut self) {
        while let Some(c) = self.current() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '#' {
                while let Some(c) = self.bump() {
                    if c == '\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn lex(&mut self) -> Result<(Position, Token), ParseError> {
        self.skip_trivia();
        let start = self.pos;
        let Some(c) = self.current() else {
            return Ok((start, Token::Eof));
        };
        let simple = match c {
            '.' => Some(Token::Dot),
            ';' => Some(Token::Semicolon),
            ',' => Some(Token::Comma),
            '*' => Some(Token::Star),
            '{' => Some(Token::LBrace),
            '}' => Some(Token::RBrace),
            '[' => Some(Token::LBracket),
            ']' => Some(Token::RBracket),
            '(' => Some(Token::LParen),
            ')' => Some(Token::RParen),
            _ => None,
        };
        if let Some(tok) = simple {
            self.bump();
            return Ok((start, tok));
        }
        let tok = match c {
            '<' => self.lex_iri(start)?,
            '"' => self.lex_string(start)?,
            '\'' => return Err(self.error_at(start, "single-quoted strings are not supported")),
            '@' => {
                self.bump();
                let word = self.take_while(|c| c.is_ascii_alphanumeric() || c == '-');
                if word.is_empty() {
                    return Err(self.error_at(start, "expected a directive or language tag after '@'"));
                }
                Token::AtWord(word)
            }
            '^' => {
                self.bump();
                if self.current() != Some('^') {
                    return Err(self.error_at(start, "expected '^^'"));
                }
                self.bump();
                Token::DoubleCaret
            }
            '?' | '$' => {
                self.bump();
                let name = self.take_while(|c| c.is_ascii_alphanumeric() || c == '_');
                if name.is_empty() || !name.starts_with(|c: char| c.is_ascii_alphabetic()) {
                    return Err(self.error_at(start, "malformed variable name"));
                }
                Token::Var(name)
            }
            '_' if self.nth(1) == Some(':') => {
                return Err(self.error_at(start, "blank nodes are not supported"));
            }
            c if c.is_ascii_digit() || c == '+' || c == '-' => {
                return Err(self.error_at(start, "numeric literals are not supported"));
            }
            c if is_pn_chars_base(c) || c == ':' => self.lex_name(start)?,
            other => return Err(self.error_at(start, format!("unexpected character {other:?}"))),
        };
        Ok((start, tok))
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> String {
        let mut out = String::new();
        while let Some(c) = self.current() {
            if !pred(c) {
                break;
            }
            out.push(c);
            self.bump();
        }
        out
    }

    fn lex_iri(&mut self, start: Position) -> Result<Token, ParseError> {
        self.bump();
        let mut value = String::new();
        loop {
            match self.current() {
                None => return Err(self.error_at(start, "unterminated IRI")),
                Some('>') => {
                    self.bump();
                    return Ok(Token::IriRef(value));
                }
                Some(c) if c.is_whitespace() || matches!(c, '<' | '"' | '{' | '}' | '|' | '^' | '`' | '\\') => {
                    return Err(self.error_at(self.pos, format!("character {c:?} not allowed in IRI")));
                }
                Some(c) => {
                    value.push(c);
                    self.bump();
                }
            }
        }
    }

    fn lex_string(&mut self, start: Position) -> Result<Token, ParseError> {
        self.bump();
        if self.current() == Some('"') && self.nth(1) == Some('"') {
            return Err(self.error_at(start, "multi-line strings are not supported"));
        }
        let mut value = String::new();
        loop {
            let here = self.pos;
            match self.bump() {
                None | Some('\n') | Some('\r') => return Err(self.error_at(start, "unterminated string literal")),
                Some('"') => return Ok(Token::Str(value)),
                Some('\\') => match self.bump() {
                    Some('"') => value.push('"'),
                    Some('\\') => value.push('\\'),
                    Some('n') => value.push('\n'),
                    Some('t') => value.push('\t'),
                    Some('u') => {
                        let mut hex = String::new();
                        while hex.len() < 4 {
                            match self.current() {
                                Some(c) if c.is_ascii_hexdigit() => {
                                    hex.push(c);
                                    self.bump();
                                }
                                _ => break,
                            }
                        }
                        let decoded = (hex.len() == 4)
                            .then(|| u32::from_str_radix(&hex, 16).ok().and_then(char::from_u32))
                            .flatten();
                        match decoded {
                            Some(c) => value.push(c),
                            None => return Err(self.error_at(here, "invalid \\u escape")),
                        }
                    }
                    _ => return Err(self.error_at(here, "unsupported escape sequence")),
                },
                Some(c) => value.push(c),
            }
        }
    }

    /// Prefixed name (`pfx:local`, `:local`, `pfx:`) or bare word.
    fn lex_name(&mut self, start: Position) -> Result<Token, ParseError> {
        let mut prefix = String::new();
        if self.current() != Some(':') {
            prefix = self.take_while(|c| is_pn_chars(c) || c == '.');
            // a trailing '.' ends the statement rather than the name
            while prefix.ends_with('.') {
                prefix.pop();
                self.unbump_dot();
            }
            if self.current() != Some(':') {
                return Ok(Token::Word(prefix));
            }
        }
        self.bump(); // ':'
        let mut local = String::new();
        if let Some(c) = self.current() {
            if is_pn_chars_u(c) || c == ':' || c.is_ascii_digit() {
                local = self.take_while(|c| is_pn_chars(c) || c == '.' || c == ':');
                while local.ends_with('.') {
                    local.pop();
                    self.unbump_dot();
                }
            }
        }
        if prefix.ends_with(|c: char| !is_pn_chars(c)) {
            return Err(self.error_at(start, "malformed prefix label"));
        }
        Ok(Token::PrefixedName { prefix, local })
    }

    fn unbump_dot(&mut self) {
        self.pos.offset -= 1;
        self.pos.column -= 1;
    }
}
