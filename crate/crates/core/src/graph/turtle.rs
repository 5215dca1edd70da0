//! Parser for the Turtle subset used by ontology, patch and export files.
//!
//! Supported: `@prefix`/`@base` (and the SPARQL-style `PREFIX`/`BASE`),
//! predicate lists with `;`, object lists with `,`, the `a` keyword, IRIs,
//! prefixed names, labelled and empty `[]` blank nodes, quoted strings with
//! an optional language tag or datatype, bare integers and decimals, and `#`
//! comments. Collections, nested property lists and quoted triples are
//! rejected.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;
use url::Url;

use super::{is_absolute_iri, Graph, Literal, PrefixMap, Term, Triple};
use crate::vocab;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("{line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{line}:{column}: undefined prefix '{prefix}:'")]
    UndefinedPrefix {
        line: usize,
        column: usize,
        prefix: String,
    },
    #[error("{line}:{column}: relative IRI <{iri}> with no base")]
    RelativeIri {
        line: usize,
        column: usize,
        iri: String,
    },
}

impl SyntaxError {
    pub fn line(&self) -> usize {
        match self {
            SyntaxError::Syntax { line, .. }
            | SyntaxError::UndefinedPrefix { line, .. }
            | SyntaxError::RelativeIri { line, .. } => *line,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseWarning {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

/// Parses a document in the supported Turtle subset.
pub fn parse_turtle(document: &str, base: Option<&str>) -> Result<Graph, SyntaxError> {
    parse_turtle_with_warnings(document, base).map(|(graph, _)| graph)
}

/// Like [`parse_turtle`], also returning non-fatal warnings such as
/// redefined prefixes.
pub fn parse_turtle_with_warnings(
    document: &str,
    base: Option<&str>,
) -> Result<(Graph, Vec<ParseWarning>), SyntaxError> {
    let mut parser = Parser::new(document, base);
    parser.document()?;
    let mut prefixes = parser.prefixes;
    prefixes.set_base(parser.base);
    let mut graph = Graph::with_prefixes(prefixes);
    graph.extend(parser.triples);
    Ok((graph, parser.warnings))
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    IriRef(String),
    PName(String, String),
    BlankLabel(String),
    LBracket,
    RBracket,
    LParen,
    QuotedOpen,
    Dot,
    Semicolon,
    Comma,
    A,
    Str(String),
    LangTag(String),
    Carets,
    Integer(String),
    Decimal(String),
    AtPrefix,
    AtBase,
    SparqlPrefix,
    SparqlBase,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::IriRef(i) => format!("<{i}>"),
            Tok::PName(p, l) => format!("'{p}:{l}'"),
            Tok::BlankLabel(l) => format!("'_:{l}'"),
            Tok::Str(_) => "string literal".into(),
            Tok::Integer(v) | Tok::Decimal(v) => format!("number '{v}'"),
            Tok::LangTag(t) => format!("'@{t}'"),
            Tok::Eof => "end of input".into(),
            other => format!("'{}'", other.symbol()),
        }
    }

    fn symbol(&self) -> &'static str {
        match self {
            Tok::LBracket => "[",
            Tok::RBracket => "]",
            Tok::LParen => "(",
            Tok::QuotedOpen => "<<",
            Tok::Dot => ".",
            Tok::Semicolon => ";",
            Tok::Comma => ",",
            Tok::A => "a",
            Tok::Carets => "^^",
            Tok::AtPrefix => "@prefix",
            Tok::AtBase => "@base",
            Tok::SparqlPrefix => "PREFIX",
            Tok::SparqlBase => "BASE",
            _ => "?",
        }
    }
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '-' | '.' | ':' | '%')
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            chars: src.chars().peekable(),
            line: 1,
            column: 1,
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn peek2(&self) -> Option<char> {
        let mut it = self.chars.clone();
        it.next();
        it.next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn err(&self, line: usize, column: usize, message: impl Into<String>) -> SyntaxError {
        SyntaxError::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    fn skip_trivia(&mut self) {
        while let Some(c) = self.peek() {
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

    /// Reads a run of name characters, leaving a trailing `.` unconsumed.
    fn name_run(&mut self) -> String {
        let mut out = String::new();
        while let Some(c) = self.peek() {
            if !is_name_char(c) {
                break;
            }
            if c == '.' && !self.peek2().is_some_and(|n| is_name_char(n) && n != '.') {
                break;
            }
            out.push(c);
            self.bump();
        }
        out
    }

    fn next_token(&mut self) -> Result<(Tok, usize, usize), SyntaxError> {
        self.skip_trivia();
        let (line, col) = (self.line, self.column);
        let Some(c) = self.peek() else {
            return Ok((Tok::Eof, line, col));
        };
        let tok = match c {
            '<' => {
                self.bump();
                if self.peek() == Some('<') {
                    self.bump();
                    Tok::QuotedOpen
                } else {
                    let mut iri = String::new();
                    loop {
                        match self.bump() {
                            Some('>') => break,
                            Some(c) if c.is_whitespace() || c == '<' || c == '"' => {
                                return Err(self.err(line, col, "invalid character in IRI"));
                            }
                            Some(c) => iri.push(c),
                            None => return Err(self.err(line, col, "unterminated IRI")),
                        }
                    }
                    Tok::IriRef(iri)
                }
            }
            '"' => {
                self.bump();
                Tok::Str(self.string_body(line, col)?)
            }
            '[' => {
                self.bump();
                Tok::LBracket
            }
            ']' => {
                self.bump();
                Tok::RBracket
            }
            '(' => {
                self.bump();
                Tok::LParen
            }
            ';' => {
                self.bump();
                Tok::Semicolon
            }
            ',' => {
                self.bump();
                Tok::Comma
            }
            '^' => {
                self.bump();
                if self.bump() != Some('^') {
                    return Err(self.err(line, col, "expected '^^'"));
                }
                Tok::Carets
            }
            '@' => {
                self.bump();
                let mut word = String::new();
                while let Some(c) = self.peek() {
                    if c.is_ascii_alphanumeric() || c == '-' {
                        word.push(c);
                        self.bump();
                    } else {
                        break;
                    }
                }
                match word.as_str() {
                    "prefix" => Tok::AtPrefix,
                    "base" => Tok::AtBase,
                    "" => return Err(self.err(line, col, "empty language tag")),
                    _ => Tok::LangTag(word),
                }
            }
            '.' if !self.peek2().is_some_and(|n| n.is_ascii_digit()) => {
                self.bump();
                Tok::Dot
            }
            '+' | '-' | '.' | '0'..='9' => self.number(line, col)?,
            '_' if self.peek2() == Some(':') => {
                self.bump();
                self.bump();
                let label = self.name_run();
                if label.is_empty() || label.contains(':') {
                    return Err(self.err(line, col, "invalid blank node label"));
                }
                Tok::BlankLabel(label)
            }
            c if c.is_alphabetic() || c == ':' || c == '_' => {
                let word = self.name_run();
                if word == "a" {
                    Tok::A
                } else if let Some((prefix, local)) = word.split_once(':') {
                    Tok::PName(prefix.to_owned(), local.to_owned())
                } else if word.eq_ignore_ascii_case("prefix") {
                    Tok::SparqlPrefix
                } else if word.eq_ignore_ascii_case("base") {
                    Tok::SparqlBase
                } else if word == "true" || word == "false" {
                    return Err(self.err(line, col, "boolean literals are not supported"));
                } else {
                    return Err(self.err(line, col, format!("unexpected word '{word}'")));
                }
            }
            other => return Err(self.err(line, col, format!("unexpected character '{other}'"))),
        };
        Ok((tok, line, col))
    }

    fn string_body(&mut self, line: usize, col: usize) -> Result<String, SyntaxError> {
        if self.peek() == Some('"') && self.peek2() == Some('"') {
            return Err(self.err(line, col, "long (triple-quoted) strings are not supported"));
        }
        let mut out = String::new();
        loop {
            match self.bump() {
                Some('"') => return Ok(out),
                Some('\\') => {
                    let esc = self.bump();
                    match esc {
                        Some('"') => out.push('"'),
                        Some('\\') => out.push('\\'),
                        Some('n') => out.push('\n'),
                        Some('t') => out.push('\t'),
                        Some('r') => out.push('\r'),
                        Some('\'') => out.push('\''),
                        Some(u @ ('u' | 'U')) => {
                            let width = if u == 'u' { 4 } else { 8 };
                            let hex: String = (0..width).filter_map(|_| self.bump()).collect();
                            let ch = u32::from_str_radix(&hex, 16).ok().and_then(char::from_u32);
                            match ch {
                                Some(ch) if hex.len() == width => out.push(ch),
                                _ => return Err(self.err(self.line, self.column, "invalid unicode escape")),
                            }
                        }
                        _ => return Err(self.err(self.line, self.column, "invalid string escape")),
                    }
                }
                Some('\n') | None => return Err(self.err(line, col, "unterminated string literal")),
                Some(c) => out.push(c),
            }
        }
    }

    fn number(&mut self, line: usize, col: usize) -> Result<Tok, SyntaxError> {
        let mut text = String::new();
        if let Some(sign @ ('+' | '-')) = self.peek() {
            text.push(sign);
            self.bump();
        }
        while let Some(d) = self.peek().filter(char::is_ascii_digit) {
            text.push(d);
            self.bump();
        }
        let mut decimal = false;
        if self.peek() == Some('.') && self.peek2().is_some_and(|c| c.is_ascii_digit()) {
            decimal = true;
            text.push('.');
            self.bump();
            while let Some(d) = self.peek().filter(char::is_ascii_digit) {
                text.push(d);
                self.bump();
            }
        }
        if !text.chars().any(|c| c.is_ascii_digit()) {
            return Err(self.err(line, col, "malformed number"));
        }
        if matches!(self.peek(), Some('e' | 'E')) {
            return Err(self.err(line, col, "double literals are not supported"));
        }
        Ok(if decimal { Tok::Decimal(text) } else { Tok::Integer(text) })
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    current: Tok,
    line: usize,
    column: usize,
    // position of the most recently consumed token
    last_line: usize,
    last_column: usize,
    prefixes: PrefixMap,
    base: Option<String>,
    triples: Vec<Triple>,
    warnings: Vec<ParseWarning>,
    reserved_labels: HashSet<String>,
    next_anon: usize,
    pending_error: Option<SyntaxError>,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, base: Option<&str>) -> Self {
        // Labels written in the document; generated labels must avoid them.
        let reserved_labels = src
            .match_indices("_:")
            .map(|(i, _)| {
                src[i + 2..]
                    .chars()
                    .take_while(|&c| is_name_char(c))
                    .collect::<String>()
                    .trim_end_matches('.')
                    .to_owned()
            })
            .collect();
        let mut parser = Parser {
            lexer: Lexer::new(src),
            current: Tok::Eof,
            line: 1,
            column: 1,
            last_line: 1,
            last_column: 1,
            prefixes: PrefixMap::new(),
            base: base.map(str::to_owned),
            triples: Vec::new(),
            warnings: Vec::new(),
            reserved_labels,
            next_anon: 0,
            pending_error: None,
        };
        parser.advance_or_stash();
        parser
    }

    fn advance_or_stash(&mut self) {
        match self.lexer.next_token() {
            Ok((tok, line, col)) => {
                self.current = tok;
                self.line = line;
                self.column = col;
            }
            Err(e) => {
                self.current = Tok::Eof;
                self.pending_error = Some(e);
            }
        }
    }

    fn advance(&mut self) -> Result<Tok, SyntaxError> {
        if let Some(e) = self.pending_error.take() {
            return Err(e);
        }
        let tok = std::mem::replace(&mut self.current, Tok::Eof);
        self.last_line = self.line;
        self.last_column = self.column;
        self.advance_or_stash();
        Ok(tok)
    }

    fn peek(&mut self) -> Result<&Tok, SyntaxError> {
        if let Some(e) = self.pending_error.take() {
            return Err(e);
        }
        Ok(&self.current)
    }

    fn err(&self, message: impl Into<String>) -> SyntaxError {
        SyntaxError::Syntax {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }

    fn expect(&mut self, want: Tok) -> Result<(), SyntaxError> {
        let got = self.peek()?.clone();
        if got == want {
            self.advance()?;
            Ok(())
        } else {
            Err(self.err(format!("expected '{}', found {}", want.symbol(), got.describe())))
        }
    }

    fn document(&mut self) -> Result<(), SyntaxError> {
        loop {
            match self.peek()?.clone() {
                Tok::Eof => return Ok(()),
                Tok::AtPrefix => {
                    self.advance()?;
                    self.prefix_directive()?;
                    self.expect(Tok::Dot)?;
                }
                Tok::SparqlPrefix => {
                    self.advance()?;
                    self.prefix_directive()?;
                }
                Tok::AtBase => {
                    self.advance()?;
                    self.base_directive()?;
                    self.expect(Tok::Dot)?;
                }
                Tok::SparqlBase => {
                    self.advance()?;
                    self.base_directive()?;
                }
                _ => {
                    self.statement()?;
                }
            }
        }
    }

    fn prefix_directive(&mut self) -> Result<(), SyntaxError> {
        let line = self.line;
        let label = match self.advance()? {
            Tok::PName(prefix, local) if local.is_empty() => prefix,
            other => return Err(self.err(format!("expected prefix label, found {}", other.describe()))),
        };
        let namespace = match self.advance()? {
            Tok::IriRef(iri) => self.resolve(iri)?,
            other => return Err(self.err(format!("expected namespace IRI, found {}", other.describe()))),
        };
        if let Some(previous) = self.prefixes.insert(label.clone(), namespace.clone()) {
            if previous != namespace {
                self.warnings.push(ParseWarning {
                    line,
                    message: format!("prefix '{label}:' redefined from <{previous}> to <{namespace}>; last one wins"),
                });
            }
        }
        Ok(())
    }

    fn base_directive(&mut self) -> Result<(), SyntaxError> {
        match self.advance()? {
            Tok::IriRef(iri) => {
                let resolved = self.resolve(iri)?;
                self.base = Some(resolved);
                Ok(())
            }
            other => Err(self.err(format!("expected base IRI, found {}", other.describe()))),
        }
    }

    fn resolve(&self, iri: String) -> Result<String, SyntaxError> {
        if is_absolute_iri(&iri) {
            return Ok(iri);
        }
        let relative = || SyntaxError::RelativeIri {
            line: self.last_line,
            column: self.last_column,
            iri: iri.clone(),
        };
        let base = self.base.as_deref().ok_or_else(relative)?;
        Url::parse(base)
            .and_then(|b| b.join(&iri))
            .map(String::from)
            .map_err(|_| relative())
    }

    fn fresh_blank(&mut self) -> Term {
        loop {
            let label = format!("anon{}", self.next_anon);
            self.next_anon += 1;
            if !self.reserved_labels.contains(&label) {
                return Term::Blank(label);
            }
        }
    }

    fn iri_term(&mut self, tok: Tok) -> Result<Term, SyntaxError> {
        match tok {
            Tok::IriRef(iri) => Ok(Term::Iri(self.resolve(iri)?)),
            Tok::PName(prefix, local) => match self.prefixes.expand(&prefix, &local) {
                Some(iri) => Ok(Term::Iri(iri)),
                None => Err(SyntaxError::UndefinedPrefix {
                    line: self.last_line,
                    column: self.last_column,
                    prefix,
                }),
            },
            other => Err(self.err(format!("expected IRI, found {}", other.describe()))),
        }
    }

    fn unsupported(&self, tok: &Tok) -> Option<SyntaxError> {
        match tok {
            Tok::LParen => Some(self.err("collections '( ... )' are not supported")),
            Tok::QuotedOpen => Some(self.err("quoted triples '<< ... >>' are not supported")),
            _ => None,
        }
    }

    /// Parses `[]`; the opening bracket is already consumed.
    fn anonymous(&mut self) -> Result<Term, SyntaxError> {
        if self.peek()? != &Tok::RBracket {
            return Err(self.err("nested property lists inside '[ ]' are not supported"));
        }
        self.advance()?;
        Ok(self.fresh_blank())
    }

    fn statement(&mut self) -> Result<(), SyntaxError> {
        let (line, column) = (self.line, self.column);
        let tok = self.peek()?.clone();
        if let Some(e) = self.unsupported(&tok) {
            return Err(e);
        }
        self.advance()?;
        let subject = match tok {
            Tok::IriRef(_) | Tok::PName(..) => self.iri_term(tok)?,
            Tok::BlankLabel(label) => Term::Blank(label),
            Tok::LBracket => self.anonymous()?,
            other => {
                return Err(SyntaxError::Syntax {
                    line,
                    column,
                    message: format!("expected subject, found {}", other.describe()),
                })
            }
        };
        self.predicate_object_list(&subject)?;
        self.expect(Tok::Dot)
    }

    fn predicate_object_list(&mut self, subject: &Term) -> Result<(), SyntaxError> {
        loop {
            let verb = match self.advance()? {
                Tok::A => Term::iri(vocab::RDF_TYPE),
                tok @ (Tok::IriRef(_) | Tok::PName(..)) => self.iri_term(tok)?,
                other => return Err(self.err(format!("expected predicate, found {}", other.describe()))),
            };
            loop {
                let object = self.object()?;
                self.triples.push(Triple::new(subject.clone(), verb.clone(), object));
                if self.peek()? == &Tok::Comma {
                    self.advance()?;
                } else {
                    break;
                }
            }
            if self.peek()? != &Tok::Semicolon {
                return Ok(());
            }
            while self.peek()? == &Tok::Semicolon {
                self.advance()?;
            }
            if matches!(self.peek()?, Tok::Dot) {
                return Ok(());
            }
        }
    }

    fn object(&mut self) -> Result<Term, SyntaxError> {
        let tok = self.peek()?.clone();
        if let Some(e) = self.unsupported(&tok) {
            return Err(e);
        }
        self.advance()?;
        match tok {
            Tok::IriRef(_) | Tok::PName(..) => self.iri_term(tok),
            Tok::BlankLabel(label) => Ok(Term::Blank(label)),
            Tok::LBracket => self.anonymous(),
            Tok::Integer(v) => Ok(Term::Literal(Literal::typed(v, vocab::XSD_INTEGER))),
            Tok::Decimal(v) => Ok(Term::Literal(Literal::typed(v, vocab::XSD_DECIMAL))),
            Tok::Str(lexical) => match self.peek()?.clone() {
                Tok::LangTag(lang) => {
                    self.advance()?;
                    Ok(Term::Literal(Literal::lang_string(lexical, lang)))
                }
                Tok::Carets => {
                    self.advance()?;
                    let dt_tok = self.advance()?;
                    let datatype = self.iri_term(dt_tok)?;
                    let Term::Iri(dt) = datatype else { unreachable!() };
                    Ok(Term::Literal(Literal::typed(lexical, dt)))
                }
                _ => Ok(Term::Literal(Literal::string(lexical))),
            },
            other => Err(self.err(format!("expected object, found {}", other.describe()))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(doc: &str) -> Graph {
        parse_turtle(doc, None).unwrap()
    }

    #[test]
    fn empty_document_is_empty_graph() {
        assert_eq!(parse("").len(), 0);
        assert_eq!(parse("# only a comment\n").len(), 0);
    }

    #[test]
    fn single_triple() {
        let g = parse("<http://e/a> <http://e/b> <http://e/c> .");
        assert_eq!(g.len(), 1);
        assert!(g.contains(&Triple::iris("http://e/a", "http://e/b", "http://e/c")));
    }

    #[test]
    fn prefixes_lists_and_keyword_a() {
        let g = parse(
            "@prefix : <http://e/> .\nPREFIX rdfs: <http://www.w3.org/2000/01/rdf-schema#>\n\
             :Arjuna a :Person, :Warrior ;\n  rdfs:label \"Arjuna\"@en ;\n  :age 42 ; :height 1.85 ;\n  :bow \"Gandiva\"^^<http://e/Name> .",
        );
        assert_eq!(g.len(), 6);
        let arjuna = Term::iri("http://e/Arjuna");
        let ty = Term::iri(vocab::RDF_TYPE);
        assert_eq!(g.objects(&arjuna, &ty).len(), 2);
        let age = g.objects(&arjuna, &Term::iri("http://e/age")).first().copied().unwrap();
        assert_eq!(age.as_literal().unwrap().datatype(), vocab::XSD_INTEGER);
        let h = g.objects(&arjuna, &Term::iri("http://e/height")).first().copied().unwrap();
        assert_eq!(h.as_literal().unwrap().datatype(), vocab::XSD_DECIMAL);
        let label = g.objects(&arjuna, &Term::iri(vocab::RDFS_LABEL)).first().copied().unwrap();
        assert_eq!(label.as_literal().unwrap().lang(), Some("en"));
    }

    #[test]
    fn string_escapes() {
        let g = parse(r#"<http://e/a> <http://e/b> "say \"hi\"\n\tback\\slash" ."#);
        let t = g.iter().next().unwrap();
        assert_eq!(t.object.as_literal().unwrap().lexical(), "say \"hi\"\n\tback\\slash");
    }

    #[test]
    fn blank_nodes_labelled_and_anonymous() {
        let g = parse("@prefix : <http://e/> .\n_:anon0 :p [] .\n[] :q _:x .");
        assert_eq!(g.len(), 2);
        let blanks: HashSet<_> = g
            .iter()
            .flat_map(|t| [&t.subject, &t.object])
            .filter(|t| t.is_blank())
            .collect();
        // the two generated labels must not collide with the written `anon0`
        assert_eq!(blanks.len(), 4);
    }

    #[test]
    fn base_resolution() {
        let g = parse_turtle("<a> <#p> </c> .", Some("http://e/dir/doc")).unwrap();
        assert!(g.contains(&Triple::iris("http://e/dir/a", "http://e/dir/doc#p", "http://e/c")));
        let g = parse("@base <http://x/y/> .\n<a> <b> <c> .");
        assert!(g.contains(&Triple::iris("http://x/y/a", "http://x/y/b", "http://x/y/c")));
    }

    #[test]
    fn relative_iri_without_base_is_an_error() {
        let err = parse_turtle("<a> <http://e/b> <http://e/c> .", None).unwrap_err();
        assert!(matches!(err, SyntaxError::RelativeIri { line: 1, .. }), "{err:?}");
    }

    #[test]
    fn undefined_prefix_reports_position() {
        let err = parse_turtle("<http://e/a> <http://e/b> <http://e/c> .\n  ex:a ex:b ex:c .", None).unwrap_err();
        assert_eq!(
            err,
            SyntaxError::UndefinedPrefix {
                line: 2,
                column: 3,
                prefix: "ex".into()
            }
        );
    }

    #[test]
    fn syntax_errors_carry_line_and_column() {
        let err = parse_turtle("@prefix : <http://e/> .\n:a :b :c\n:d :e :f .", None).unwrap_err();
        match err {
            SyntaxError::Syntax { line, column, .. } => assert_eq!((line, column), (3, 1)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unsupported_constructs_are_rejected() {
        for doc in [
            "@prefix : <http://e/> . :a :b ( :c :d ) .",
            "@prefix : <http://e/> . :a :b [ :c :d ] .",
            "@prefix : <http://e/> . << :a :b :c >> :d :e .",
            "@prefix : <http://e/> . :a :b \"\"\"long\"\"\" .",
            "@prefix : <http://e/> . :a :b true .",
        ] {
            assert!(parse_turtle(doc, None).is_err(), "{doc}");
        }
        let err = parse_turtle("@prefix : <http://e/> . :a :b ( :c ) .", None).unwrap_err();
        assert!(err.to_string().contains("collections"));
    }

    #[test]
    fn duplicate_prefix_last_wins_with_warning() {
        let (g, warnings) =
            parse_turtle_with_warnings("@prefix e: <http://one/> .\n@prefix e: <http://two/> .\ne:a e:b e:c .", None)
                .unwrap();
        assert!(g.contains(&Triple::iris("http://two/a", "http://two/b", "http://two/c")));
        assert_eq!(warnings.len(), 1);
        assert_eq!(warnings[0].line, 2);
    }

    #[test]
    fn trailing_dot_after_local_name_terminates_statement() {
        let g = parse("@prefix : <http://e/> .\n:a :b :c.\n:d.x :e :f.");
        assert!(g.contains(&Triple::iris("http://e/a", "http://e/b", "http://e/c")));
        assert!(g.contains(&Triple::iris("http://e/d.x", "http://e/e", "http://e/f")));
    }

    #[test]
    fn repeated_semicolons_and_trailing_semicolon() {
        let g = parse("@prefix : <http://e/> .\n:a :b :c ;; :d :e ; .");
        assert_eq!(g.len(), 2);
    }

    #[test]
    fn numbers_followed_by_terminator() {
        let g = parse("@prefix : <http://e/> .\n:a :b 5.\n:a :c -0.5 .");
        assert_eq!(g.len(), 2);
    }
}
