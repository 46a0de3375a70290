use crate::model::{is_valid_lang_tag, vocab, Iri, ModelError, PrefixMap, Term, Triple};
use crate::syntax::{Lexer, ParseError, Position, Token};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ParsedDocument {
    pub prefixes: PrefixMap,
    /// In source order; may contain duplicates.
    pub triples: Vec<Triple>,
    /// Non-fatal diagnostics, such as a prefix label being redefined.
    pub warnings: Vec<String>,
}

/// Parses a Turtle-subset document, stopping at the first error.
pub fn parse_document(source: &str) -> Result<ParsedDocument, ParseError> {
    let mut parser = Parser { lexer: Lexer::new(source), doc: ParsedDocument::default() };
    parser.document()?;
    Ok(parser.doc)
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    doc: ParsedDocument,
}

impl Parser<'_> {
    fn document(&mut self) -> Result<(), ParseError> {
        loop {
            let (pos, tok) = self.lexer.peek()?.clone();
            match tok {
                Token::Eof => return Ok(()),
                Token::AtWord(ref w) if w == "prefix" => {
                    self.lexer.next_token()?;
                    self.prefix_decl()?;
                }
                Token::AtWord(ref w) if w == "base" => {
                    return Err(self.lexer.error_at(pos, "@base is not supported"));
                }
                Token::AtWord(w) => return Err(self.lexer.error_at(pos, format!("unknown directive @{w}"))),
                Token::Word(ref w) if w.eq_ignore_ascii_case("prefix") || w.eq_ignore_ascii_case("base") => {
                    return Err(self.lexer.error_at(pos, "SPARQL-style directives are not supported; use @prefix"));
                }
                _ => self.statement()?,
            }
        }
    }

    fn prefix_decl(&mut self) -> Result<(), ParseError> {
        let (pos, tok) = self.lexer.next_token()?;
        let label = match tok {
            Token::PrefixedName { prefix, local } if local.is_empty() => prefix,
            other => return Err(self.lexer.error_at(pos, format!("expected prefix label like `qreg:`, found {other}"))),
        };
        let (pos, tok) = self.lexer.next_token()?;
        let namespace = match tok {
            Token::IriRef(iri) => self.make_iri(pos, iri)?,
            other => return Err(self.lexer.error_at(pos, format!("expected namespace IRI, found {other}"))),
        };
        self.expect_dot()?;
        if let Some(old) = self.doc.prefixes.insert(label.clone(), namespace.clone()) {
            if old != namespace {
                self.doc
                    .warnings
                    .push(format!("line {}: prefix `{label}:` redefined from {old} to {namespace}", pos.line));
            }
        }
        Ok(())
    }

    fn statement(&mut self) -> Result<(), ParseError> {
        let subject = self.subject()?;
        loop {
            let predicate = self.verb()?;
            loop {
                let object = self.object()?;
                self.doc.triples.push(Triple::new(subject.clone(), predicate.clone(), object));
                if matches!(self.lexer.peek()?.1, Token::Comma) {
                    self.lexer.next_token()?;
                } else {
                    break;
                }
            }
            if !matches!(self.lexer.peek()?.1, Token::Semicolon) {
                break;
            }
            while matches!(self.lexer.peek()?.1, Token::Semicolon) {
                self.lexer.next_token()?;
            }
            // trailing ';' before '.'
            if matches!(self.lexer.peek()?.1, Token::Dot) {
                break;
            }
        }
        self.expect_dot()
    }

    fn expect_dot(&mut self) -> Result<(), ParseError> {
        match self.lexer.next_token()? {
            (_, Token::Dot) => Ok(()),
            (pos, other) => Err(self.lexer.error_at(pos, format!("expected '.', found {other}"))),
        }
    }

    fn subject(&mut self) -> Result<Iri, ParseError> {
        let (pos, tok) = self.lexer.next_token()?;
        match tok {
            Token::IriRef(_) | Token::PrefixedName { .. } => self.iri_from(pos, tok),
            Token::LBracket => Err(self.lexer.error_at(pos, "blank nodes are not supported")),
            Token::LParen => Err(self.lexer.error_at(pos, "collections are not supported")),
            Token::Str(_) => Err(self.lexer.error_at(pos, "a literal cannot be a subject")),
            other => Err(self.lexer.error_at(pos, format!("expected subject, found {other}"))),
        }
    }

    fn verb(&mut self) -> Result<Iri, ParseError> {
        let (pos, tok) = self.lexer.next_token()?;
        match tok {
            Token::Word(ref w) if w == "a" => Ok(vocab::iri(vocab::RDF_TYPE)),
            Token::IriRef(_) | Token::PrefixedName { .. } => self.iri_from(pos, tok),
            other => Err(self.lexer.error_at(pos, format!("expected predicate, found {other}"))),
        }
    }

    fn object(&mut self) -> Result<Term, ParseError> {
        let (pos, tok) = self.lexer.next_token()?;
        match tok {
            Token::IriRef(_) | Token::PrefixedName { .. } => Ok(Term::Iri(self.iri_from(pos, tok)?)),
            Token::Str(text) => self.literal_suffix(text),
            Token::LBracket => Err(self.lexer.error_at(pos, "blank nodes are not supported")),
            Token::LParen => Err(self.lexer.error_at(pos, "collections are not supported")),
            Token::Word(ref w) if w == "true" || w == "false" => {
                Err(self.lexer.error_at(pos, "boolean literals are not supported"))
            }
            other => Err(self.lexer.error_at(pos, format!("expected object, found {other}"))),
        }
    }

    fn literal_suffix(&mut self, text: String) -> Result<Term, ParseError> {
        match self.lexer.peek()?.clone() {
            (pos, Token::AtWord(lang)) => {
                self.lexer.next_token()?;
                if !is_valid_lang_tag(&lang) {
                    return Err(self.lexer.error_at(pos, format!("invalid language tag `{lang}`")));
                }
                Ok(Term::Lang { text, lang })
            }
            (_, Token::DoubleCaret) => {
                self.lexer.next_token()?;
                let (pos, tok) = self.lexer.next_token()?;
                match tok {
                    Token::IriRef(_) | Token::PrefixedName { .. } => Ok(Term::typed(text, self.iri_from(pos, tok)?)),
                    other => Err(self.lexer.error_at(pos, format!("expected datatype IRI, found {other}"))),
                }
            }
            _ => Ok(Term::Plain(text)),
        }
    }

    fn iri_from(&self, pos: Position, tok: Token) -> Result<Iri, ParseError> {
        match tok {
            Token::IriRef(iri) => self.make_iri(pos, iri),
            Token::PrefixedName { prefix, local } => {
                self.doc.prefixes.expand(&format!("{prefix}:{local}")).map_err(|e| match e {
                    ModelError::UnknownPrefix(p) => self.lexer.error_at(pos, format!("unknown prefix `{p}:`")),
                    other => self.lexer.error_at(pos, other.to_string()),
                })
            }
            other => Err(self.lexer.error_at(pos, format!("expected IRI, found {other}"))),
        }
    }

    fn make_iri(&self, pos: Position, value: String) -> Result<Iri, ParseError> {
        Iri::new(value).map_err(|_| self.lexer.error_at(pos, "relative or malformed IRI (no @base support)"))
    }
}
