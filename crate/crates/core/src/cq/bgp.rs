use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{is_absolute_iri, Graph, Literal, PrefixMap, Term, Triple};
use crate::vocab;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PatternTerm {
    Var(String),
    Term(Term),
}

impl PatternTerm {
    pub fn var(name: impl Into<String>) -> Self {
        PatternTerm::Var(name.into())
    }

    fn resolve<'b>(&'b self, binding: &'b Binding) -> Option<&'b Term> {
        match self {
            PatternTerm::Term(t) => Some(t),
            PatternTerm::Var(v) => binding.get(v),
        }
    }
}

impl fmt::Display for PatternTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternTerm::Var(v) => write!(f, "?{v}"),
            PatternTerm::Term(t) => write!(f, "{t}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TriplePattern {
    pub subject: PatternTerm,
    pub predicate: PatternTerm,
    pub object: PatternTerm,
}

impl TriplePattern {
    pub fn new(subject: PatternTerm, predicate: PatternTerm, object: PatternTerm) -> Self {
        TriplePattern {
            subject,
            predicate,
            object,
        }
    }

    fn positions(&self) -> [&PatternTerm; 3] {
        [&self.subject, &self.predicate, &self.object]
    }
}

/// A basic graph pattern: a conjunction of triple patterns.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bgp {
    pub patterns: Vec<TriplePattern>,
}

pub type Binding = BTreeMap<String, Term>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BgpError {
    #[error("empty pattern")]
    Empty,
    #[error("unterminated string literal")]
    UnterminatedString,
    #[error("invalid escape '\\{0}' in literal")]
    BadEscape(char),
    #[error("empty variable name")]
    EmptyVariable,
    #[error("undefined prefix '{0}:'")]
    UndefinedPrefix(String),
    #[error("'{0}' is not a term")]
    BadTerm(String),
    #[error("relative IRI <{0}>")]
    RelativeIri(String),
    #[error("literal '{0}' cannot be a subject or predicate")]
    MisplacedLiteral(String),
    #[error("a triple pattern needs three terms, found {0}")]
    Incomplete(usize),
}

impl Bgp {
    pub fn new(patterns: Vec<TriplePattern>) -> Result<Self, BgpError> {
        if patterns.is_empty() {
            return Err(BgpError::Empty);
        }
        Ok(Bgp { patterns })
    }

    /// Parses `term term term .` repeated. The final `.` may be omitted.
    pub fn parse(text: &str, prefixes: &PrefixMap) -> Result<Self, BgpError> {
        let tokens = tokenize(text)?;
        let mut patterns = Vec::new();
        let mut current: Vec<PatternTerm> = Vec::new();
        for token in tokens {
            if token == Token::Dot {
                if current.len() != 3 {
                    return Err(BgpError::Incomplete(current.len()));
                }
                patterns.push(finish(&mut current)?);
                continue;
            }
            if current.len() == 3 {
                return Err(BgpError::Incomplete(4));
            }
            current.push(resolve_token(token, prefixes)?);
        }
        match current.len() {
            0 => {}
            3 => patterns.push(finish(&mut current)?),
            n => return Err(BgpError::Incomplete(n)),
        }
        Bgp::new(patterns)
    }

    /// Distinct variable names in order of first appearance.
    pub fn variables(&self) -> Vec<&str> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for p in &self.patterns {
            for pos in p.positions() {
                if let PatternTerm::Var(v) = pos {
                    if seen.insert(v.as_str()) {
                        out.push(v.as_str());
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for Bgp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.patterns.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{} {} {} .", p.subject, p.predicate, p.object)?;
        }
        Ok(())
    }
}

fn finish(current: &mut Vec<PatternTerm>) -> Result<TriplePattern, BgpError> {
    let o = current.pop().unwrap();
    let p = current.pop().unwrap();
    let s = current.pop().unwrap();
    for t in [&s, &p] {
        if let PatternTerm::Term(Term::Literal(l)) = t {
            return Err(BgpError::MisplacedLiteral(l.lexical().to_owned()));
        }
    }
    Ok(TriplePattern::new(s, p, o))
}

#[derive(Debug, PartialEq)]
enum Token {
    Dot,
    Word(String),
    Literal { lexical: String, suffix: String },
}

fn tokenize(text: &str) -> Result<Vec<Token>, BgpError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c == '"' {
            chars.next();
            let mut lexical = String::new();
            loop {
                match chars.next() {
                    None => return Err(BgpError::UnterminatedString),
                    Some('"') => break,
                    Some('\\') => lexical.push(match chars.next() {
                        Some('"') => '"',
                        Some('\\') => '\\',
                        Some('n') => '\n',
                        Some('t') => '\t',
                        Some(other) => return Err(BgpError::BadEscape(other)),
                        None => return Err(BgpError::UnterminatedString),
                    }),
                    Some(ch) => lexical.push(ch),
                }
            }
            let mut suffix = String::new();
            let mut in_iri = false;
            while let Some(&ch) = chars.peek() {
                if !in_iri && (ch.is_whitespace() || (ch == '.' && !continues_name(&suffix, &mut chars.clone()))) {
                    break;
                }
                match ch {
                    '<' => in_iri = true,
                    '>' => in_iri = false,
                    _ => {}
                }
                suffix.push(ch);
                chars.next();
            }
            out.push(Token::Literal { lexical, suffix });
        } else {
            let mut word = String::new();
            let mut in_iri = false;
            while let Some(&ch) = chars.peek() {
                if !in_iri && ch.is_whitespace() {
                    break;
                }
                if !in_iri && ch == '.' && !continues_name(&word, &mut chars.clone()) {
                    break;
                }
                match ch {
                    '<' => in_iri = true,
                    '>' => in_iri = false,
                    _ => {}
                }
                word.push(ch);
                chars.next();
            }
            if word.is_empty() {
                chars.next();
                out.push(Token::Dot);
            } else {
                out.push(Token::Word(word));
            }
        }
    }
    Ok(out)
}

/// A '.' inside a prefixed name continues it when followed by a name char.
fn continues_name(word: &str, rest: &mut std::iter::Peekable<std::str::Chars<'_>>) -> bool {
    if word.is_empty() || word.starts_with('<') {
        return false;
    }
    rest.next();
    rest.peek().is_some_and(|c| c.is_alphanumeric() || *c == '_')
}

fn resolve_token(token: Token, prefixes: &PrefixMap) -> Result<PatternTerm, BgpError> {
    match token {
        Token::Dot => unreachable!("dots are handled by the caller"),
        Token::Literal { lexical, suffix } => {
            let literal = if suffix.is_empty() {
                Literal::string(lexical)
            } else if let Some(lang) = suffix.strip_prefix('@') {
                if lang.is_empty() {
                    return Err(BgpError::BadTerm(format!("\"{lexical}\"@")));
                }
                Literal::lang_string(lexical, lang)
            } else if let Some(dt) = suffix.strip_prefix("^^") {
                match resolve_token(Token::Word(dt.to_owned()), prefixes)? {
                    PatternTerm::Term(Term::Iri(iri)) => Literal::typed(lexical, iri),
                    _ => return Err(BgpError::BadTerm(suffix)),
                }
            } else {
                return Err(BgpError::BadTerm(suffix));
            };
            Ok(PatternTerm::Term(Term::Literal(literal)))
        }
        Token::Word(word) => {
            if let Some(name) = word.strip_prefix('?') {
                if name.is_empty() {
                    return Err(BgpError::EmptyVariable);
                }
                if !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
                    return Err(BgpError::BadTerm(word));
                }
                return Ok(PatternTerm::Var(name.to_owned()));
            }
            if word == "a" {
                return Ok(PatternTerm::Term(Term::iri(vocab::RDF_TYPE)));
            }
            if let Some(iri) = word.strip_prefix('<').and_then(|w| w.strip_suffix('>')) {
                if !is_absolute_iri(iri) {
                    return Err(BgpError::RelativeIri(iri.to_owned()));
                }
                return Ok(PatternTerm::Term(Term::iri(iri)));
            }
            if word.chars().all(|c| c.is_ascii_digit() || c == '-' || c == '+') && word.chars().any(|c| c.is_ascii_digit()) {
                let lexical = word.trim_start_matches('+');
                return Ok(PatternTerm::Term(Term::Literal(Literal::typed(lexical, vocab::XSD_INTEGER))));
            }
            match word.split_once(':') {
                Some((prefix, local)) if !word.contains(['<', '>', '"']) => prefixes
                    .expand(prefix, local)
                    .map(|iri| PatternTerm::Term(Term::iri(iri)))
                    .ok_or_else(|| BgpError::UndefinedPrefix(prefix.to_owned())),
                _ => Err(BgpError::BadTerm(word)),
            }
        }
    }
}

/// All solutions of `q` over `g`, deduplicated and sorted.
///
/// Patterns are joined by backtracking; at each step the pattern with the
/// most bound positions under the current binding is matched next.
pub fn eval_pattern(g: &Graph, q: &Bgp) -> Vec<Binding> {
    let mut solutions = BTreeSet::new();
    let mut remaining: Vec<&TriplePattern> = q.patterns.iter().collect();
    extend(g, &mut remaining, &mut Binding::new(), &mut solutions);
    solutions.into_iter().collect()
}

/// True when `q` has at least one solution. Stops at the first one.
pub fn has_solution(g: &Graph, q: &Bgp) -> bool {
    let mut remaining: Vec<&TriplePattern> = q.patterns.iter().collect();
    first(g, &mut remaining, &mut Binding::new())
}

fn bound_count(p: &TriplePattern, b: &Binding) -> usize {
    p.positions().iter().filter(|t| t.resolve(b).is_some()).count()
}

fn pick_next(remaining: &[&TriplePattern], b: &Binding) -> usize {
    (0..remaining.len())
        .max_by_key(|&i| (bound_count(remaining[i], b), std::cmp::Reverse(i)))
        .expect("remaining is non-empty")
}

/// Binds the pattern's variables against `t`. Returns the newly bound
/// names, or `None` on conflict (a repeated variable with two values).
fn unify(p: &TriplePattern, t: &Triple, b: &mut Binding) -> Option<Vec<String>> {
    let mut added = Vec::new();
    for (pos, term) in p.positions().into_iter().zip([&t.subject, &t.predicate, &t.object]) {
        if let PatternTerm::Var(v) = pos {
            match b.get(v) {
                Some(existing) if existing != term => {
                    for name in &added {
                        b.remove(name);
                    }
                    return None;
                }
                Some(_) => {}
                None => {
                    b.insert(v.clone(), term.clone());
                    added.push(v.clone());
                }
            }
        }
    }
    Some(added)
}

fn candidates<'g>(g: &'g Graph, p: &TriplePattern, b: &Binding) -> Vec<&'g Triple> {
    g.matching(p.subject.resolve(b), p.predicate.resolve(b), p.object.resolve(b))
        .collect()
}

fn extend(g: &Graph, remaining: &mut Vec<&TriplePattern>, b: &mut Binding, out: &mut BTreeSet<Binding>) {
    if remaining.is_empty() {
        out.insert(b.clone());
        return;
    }
    let idx = pick_next(remaining, b);
    let pattern = remaining.swap_remove(idx);
    for t in candidates(g, pattern, b) {
        if let Some(added) = unify(pattern, t, b) {
            extend(g, remaining, b, out);
            for name in added {
                b.remove(&name);
            }
        }
    }
    remaining.push(pattern);
    let last = remaining.len() - 1;
    remaining.swap(idx, last);
}

fn first(g: &Graph, remaining: &mut Vec<&TriplePattern>, b: &mut Binding) -> bool {
    if remaining.is_empty() {
        return true;
    }
    let idx = pick_next(remaining, b);
    let pattern = remaining.swap_remove(idx);
    let mut found = false;
    for t in candidates(g, pattern, b) {
        if let Some(added) = unify(pattern, t, b) {
            found = first(g, remaining, b);
            for name in added {
                b.remove(&name);
            }
            if found {
                break;
            }
        }
    }
    remaining.push(pattern);
    let last = remaining.len() - 1;
    remaining.swap(idx, last);
    found
}
