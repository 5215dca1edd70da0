//! RDF terms, triples and an indexed in-memory graph.

mod iso;
mod serialize;
mod turtle;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::vocab;

pub use iso::graph_equal;
pub use serialize::serialize_turtle;
pub use turtle::{parse_turtle, parse_turtle_with_warnings, ParseWarning, SyntaxError};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Literal {
    lexical: String,
    datatype: String,
    lang: Option<String>,
}

impl Literal {
    pub fn string(lexical: impl Into<String>) -> Self {
        Literal {
            lexical: lexical.into(),
            datatype: vocab::XSD_STRING.to_owned(),
            lang: None,
        }
    }

    pub fn lang_string(lexical: impl Into<String>, lang: impl Into<String>) -> Self {
        let lang = lang.into();
        if lang.is_empty() {
            return Literal::string(lexical);
        }
        Literal {
            lexical: lexical.into(),
            datatype: vocab::RDF_LANG_STRING.to_owned(),
            lang: Some(lang.to_ascii_lowercase()),
        }
    }

    /// A typed literal. Passing `rdf:langString` without a tag yields a plain string.
    pub fn typed(lexical: impl Into<String>, datatype: impl Into<String>) -> Self {
        let datatype = datatype.into();
        if datatype == vocab::RDF_LANG_STRING {
            return Literal::string(lexical);
        }
        Literal {
            lexical: lexical.into(),
            datatype,
            lang: None,
        }
    }

    pub fn integer(value: i64) -> Self {
        Literal::typed(value.to_string(), vocab::XSD_INTEGER)
    }

    pub fn lexical(&self) -> &str {
        &self.lexical
    }

    pub fn datatype(&self) -> &str {
        &self.datatype
    }

    pub fn lang(&self) -> Option<&str> {
        self.lang.as_deref()
    }
}

/// An RDF term. IRIs are stored in expanded, absolute form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Term {
    Iri(String),
    Literal(Literal),
    Blank(String),
}

impl Term {
    pub fn iri(iri: impl Into<String>) -> Self {
        Term::Iri(iri.into())
    }

    pub fn blank(label: impl Into<String>) -> Self {
        Term::Blank(label.into())
    }

    pub fn string(lexical: impl Into<String>) -> Self {
        Term::Literal(Literal::string(lexical))
    }

    pub fn as_iri(&self) -> Option<&str> {
        match self {
            Term::Iri(iri) => Some(iri),
            _ => None,
        }
    }

    pub fn as_literal(&self) -> Option<&Literal> {
        match self {
            Term::Literal(lit) => Some(lit),
            _ => None,
        }
    }

    pub fn is_blank(&self) -> bool {
        matches!(self, Term::Blank(_))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Iri(iri) => write!(f, "<{iri}>"),
            Term::Blank(label) => write!(f, "_:{label}"),
            Term::Literal(lit) => {
                write!(f, "\"{}\"", serialize::escape_string(&lit.lexical))?;
                match (&lit.lang, lit.datatype.as_str()) {
                    (Some(lang), _) => write!(f, "@{lang}"),
                    (None, vocab::XSD_STRING) => Ok(()),
                    (None, dt) => write!(f, "^^<{dt}>"),
                }
            }
        }
    }
}

/// Returns true when `iri` starts with a URI scheme followed by `:`.
pub fn is_absolute_iri(iri: &str) -> bool {
    let Some(colon) = iri.find(':') else {
        return false;
    };
    let scheme = &iri[..colon];
    let mut chars = scheme.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '+' | '-' | '.'))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Triple {
    pub subject: Term,
    pub predicate: Term,
    pub object: Term,
}

impl Triple {
    /// Panics if `predicate` is not an IRI or `subject` is a literal.
    pub fn new(subject: Term, predicate: Term, object: Term) -> Self {
        assert!(
            matches!(predicate, Term::Iri(_)),
            "triple predicate must be an IRI, got {predicate}"
        );
        assert!(
            !matches!(subject, Term::Literal(_)),
            "triple subject must not be a literal, got {subject}"
        );
        Triple {
            subject,
            predicate,
            object,
        }
    }

    /// Convenience constructor for all-IRI triples.
    pub fn iris(s: &str, p: &str, o: &str) -> Self {
        Triple::new(Term::iri(s), Term::iri(p), Term::iri(o))
    }

    pub fn has_blank(&self) -> bool {
        self.subject.is_blank() || self.object.is_blank()
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} .", self.subject, self.predicate, self.object)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrefixMap {
    entries: BTreeMap<String, String>,
    base: Option<String>,
}

impl PrefixMap {
    pub fn new() -> Self {
        Self::default()
    }

    /// Binds `label` to `namespace`, returning the previous binding.
    pub fn insert(&mut self, label: impl Into<String>, namespace: impl Into<String>) -> Option<String> {
        self.entries.insert(label.into(), namespace.into())
    }

    pub fn get(&self, label: &str) -> Option<&str> {
        self.entries.get(label).map(String::as_str)
    }

    pub fn base(&self) -> Option<&str> {
        self.base.as_deref()
    }

    pub fn set_base(&mut self, base: Option<String>) {
        self.base = base;
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Expands `prefix:local`, or `None` if the prefix is unbound.
    pub fn expand(&self, prefix: &str, local: &str) -> Option<String> {
        self.get(prefix).map(|ns| format!("{ns}{local}"))
    }

    /// Adds every binding of `other` whose label is not yet bound here.
    pub fn merge_missing(&mut self, other: &PrefixMap) {
        for (label, ns) in other.iter() {
            self.entries.entry(label.to_owned()).or_insert_with(|| ns.to_owned());
        }
    }

    /// The usual bindings for rdf, rdfs, owl, xsd and the tool namespace.
    pub fn standard() -> Self {
        let mut map = PrefixMap::new();
        map.insert("rdf", vocab::RDF);
        map.insert("rdfs", vocab::RDFS);
        map.insert("owl", vocab::OWL);
        map.insert("xsd", vocab::XSD);
        map.insert("genome", vocab::GENOME);
        map
    }
}

type Index = HashMap<Term, BTreeSet<Triple>>;

/// A set of triples with subject, predicate and object indexes.
#[derive(Debug, Clone, Default)]
pub struct Graph {
    triples: BTreeSet<Triple>,
    by_subject: Index,
    by_predicate: Index,
    by_object: Index,
    prefixes: PrefixMap,
}

fn index_insert(index: &mut Index, key: &Term, triple: &Triple) {
    index.entry(key.clone()).or_default().insert(triple.clone());
}

fn index_remove(index: &mut Index, key: &Term, triple: &Triple) {
    if let Some(set) = index.get_mut(key) {
        set.remove(triple);
        if set.is_empty() {
            index.remove(key);
        }
    }
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_prefixes(prefixes: PrefixMap) -> Self {
        Graph {
            prefixes,
            ..Self::default()
        }
    }

    pub fn prefixes(&self) -> &PrefixMap {
        &self.prefixes
    }

    pub fn prefixes_mut(&mut self) -> &mut PrefixMap {
        &mut self.prefixes
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    /// Inserts a triple; returns false if it was already present.
    pub fn insert(&mut self, triple: Triple) -> bool {
        if self.triples.contains(&triple) {
            return false;
        }
        index_insert(&mut self.by_subject, &triple.subject, &triple);
        index_insert(&mut self.by_predicate, &triple.predicate, &triple);
        index_insert(&mut self.by_object, &triple.object, &triple);
        self.triples.insert(triple);
        true
    }

    /// Removes a triple; returns false if it was absent.
    pub fn remove(&mut self, triple: &Triple) -> bool {
        if !self.triples.remove(triple) {
            return false;
        }
        index_remove(&mut self.by_subject, &triple.subject, triple);
        index_remove(&mut self.by_predicate, &triple.predicate, triple);
        index_remove(&mut self.by_object, &triple.object, triple);
        true
    }

    pub fn contains(&self, triple: &Triple) -> bool {
        self.triples.contains(triple)
    }

    /// Triples in subject, predicate, object order.
    pub fn iter(&self) -> impl Iterator<Item = &Triple> {
        self.triples.iter()
    }

    /// Returns every triple matching the bound positions, in sorted order.
    /// `None` positions are wildcards.
    pub fn match_triples(
        &self,
        subject: Option<&Term>,
        predicate: Option<&Term>,
        object: Option<&Term>,
    ) -> Vec<Triple> {
        self.matching(subject, predicate, object).cloned().collect()
    }

    /// Borrowing form of [`Graph::match_triples`].
    pub fn matching<'a, 'q>(
        &'a self,
        subject: Option<&'q Term>,
        predicate: Option<&'q Term>,
        object: Option<&'q Term>,
    ) -> Box<dyn Iterator<Item = &'a Triple> + 'q>
    where
        'a: 'q,
    {
        let bound = [
            subject.map(|t| (t, &self.by_subject)),
            predicate.map(|t| (t, &self.by_predicate)),
            object.map(|t| (t, &self.by_object)),
        ];
        let mut best: Option<&BTreeSet<Triple>> = None;
        for (term, index) in bound.into_iter().flatten() {
            match index.get(term) {
                None => return Box::new(std::iter::empty()),
                Some(set) if best.is_none_or(|b| set.len() < b.len()) => best = Some(set),
                Some(_) => {}
            }
        }
        let candidates: Box<dyn Iterator<Item = &Triple>> = match best {
            Some(set) => Box::new(set.iter()),
            None => Box::new(self.triples.iter()),
        };
        Box::new(candidates.filter(move |t| {
            subject.is_none_or(|s| &t.subject == s)
                && predicate.is_none_or(|p| &t.predicate == p)
                && object.is_none_or(|o| &t.object == o)
        }))
    }

    /// Objects of all `(subject, predicate, ?)` triples.
    pub fn objects<'a>(&'a self, subject: &Term, predicate: &Term) -> Vec<&'a Term> {
        self.matching(Some(subject), Some(predicate), None).map(|t| &t.object).collect()
    }

    /// Subjects of all `(?, predicate, object)` triples.
    pub fn subjects<'a>(&'a self, predicate: &Term, object: &Term) -> Vec<&'a Term> {
        self.matching(None, Some(predicate), Some(object)).map(|t| &t.subject).collect()
    }

    /// Every distinct term in any position.
    pub fn terms(&self) -> BTreeSet<&Term> {
        self.by_subject
            .keys()
            .chain(self.by_predicate.keys())
            .chain(self.by_object.keys())
            .collect()
    }

    #[cfg(test)]
    fn indexes_consistent(&self) -> bool {
        let check = |index: &Index, key: fn(&Triple) -> &Term| {
            let total: usize = index.values().map(BTreeSet::len).sum();
            total == self.triples.len()
                && index
                    .iter()
                    .all(|(k, set)| !set.is_empty() && set.iter().all(|t| key(t) == k && self.triples.contains(t)))
        };
        check(&self.by_subject, |t| &t.subject)
            && check(&self.by_predicate, |t| &t.predicate)
            && check(&self.by_object, |t| &t.object)
    }
}

impl Extend<Triple> for Graph {
    fn extend<I: IntoIterator<Item = Triple>>(&mut self, iter: I) {
        for triple in iter {
            self.insert(triple);
        }
    }
}

impl FromIterator<Triple> for Graph {
    fn from_iter<I: IntoIterator<Item = Triple>>(iter: I) -> Self {
        let mut graph = Graph::new();
        graph.extend(iter);
        graph
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn linear_scan(g: &Graph, s: Option<&Term>, p: Option<&Term>, o: Option<&Term>) -> Vec<Triple> {
        g.iter()
            .filter(|t| {
                s.is_none_or(|s| &t.subject == s) && p.is_none_or(|p| &t.predicate == p) && o.is_none_or(|o| &t.object == o)
            })
            .cloned()
            .collect()
    }

    #[test]
    fn empty_graph_matches_nothing() {
        assert!(Graph::new().match_triples(None, None, None).is_empty());
    }

    #[test]
    fn subject_lookup_returns_all_its_triples() {
        let mut g = Graph::new();
        g.insert(Triple::iris("http://e/x", "http://e/p", "http://e/a"));
        g.insert(Triple::iris("http://e/x", "http://e/p", "http://e/b"));
        g.insert(Triple::iris("http://e/x", "http://e/q", "http://e/a"));
        g.insert(Triple::iris("http://e/y", "http://e/p", "http://e/x"));
        let x = Term::iri("http://e/x");
        let found = g.match_triples(Some(&x), None, None);
        assert_eq!(found.len(), 3);
        assert_eq!(found, linear_scan(&g, Some(&x), None, None));
    }

    #[test]
    fn insert_is_idempotent_and_remove_updates_indexes() {
        let mut g = Graph::new();
        let t = Triple::iris("http://e/a", "http://e/b", "http://e/c");
        assert!(g.insert(t.clone()));
        assert!(!g.insert(t.clone()));
        assert_eq!(g.len(), 1);
        assert!(g.remove(&t));
        assert!(!g.remove(&t));
        assert!(g.is_empty());
        assert!(g.indexes_consistent());
        assert!(g.match_triples(None, Some(&Term::iri("http://e/b")), None).is_empty());
    }

    #[test]
    fn absolute_iri_detection() {
        assert!(is_absolute_iri("http://e/a"));
        assert!(is_absolute_iri("urn:isbn:1"));
        assert!(!is_absolute_iri("a/b"));
        assert!(!is_absolute_iri(":x"));
        assert!(!is_absolute_iri("1http://x"));
    }

    #[test]
    fn lang_tag_only_on_lang_strings() {
        let lit = Literal::lang_string("Arjuna", "EN");
        assert_eq!(lit.datatype(), vocab::RDF_LANG_STRING);
        assert_eq!(lit.lang(), Some("en"));
        assert_eq!(Literal::lang_string("x", "").lang(), None);
        assert_eq!(Literal::typed("x", vocab::RDF_LANG_STRING).datatype(), vocab::XSD_STRING);
    }

    fn arb_term(n: u8) -> impl Strategy<Value = Term> {
        (0..n).prop_map(|i| Term::iri(format!("http://e/n{i}")))
    }

    fn arb_graph() -> impl Strategy<Value = Vec<Triple>> {
        prop::collection::vec(
            (arb_term(12), (0u8..4).prop_map(|i| Term::iri(format!("http://e/p{i}"))), arb_term(12)),
            0..200,
        )
        .prop_map(|v| v.into_iter().map(|(s, p, o)| Triple::new(s, p, o)).collect())
    }

    proptest! {
        #[test]
        fn match_agrees_with_linear_scan_for_all_masks(
            triples in arb_graph(),
            s in arb_term(12),
            p in (0u8..4).prop_map(|i| Term::iri(format!("http://e/p{i}"))),
            o in arb_term(12),
        ) {
            let g: Graph = triples.into_iter().collect();
            prop_assert!(g.indexes_consistent());
            for mask in 0u8..8 {
                let sb = (mask & 1 != 0).then_some(&s);
                let pb = (mask & 2 != 0).then_some(&p);
                let ob = (mask & 4 != 0).then_some(&o);
                prop_assert_eq!(g.match_triples(sb, pb, ob), linear_scan(&g, sb, pb, ob));
            }
        }

        #[test]
        fn double_insert_keeps_size(triples in arb_graph()) {
            let once: Graph = triples.iter().cloned().collect();
            let mut twice = once.clone();
            twice.extend(triples);
            prop_assert_eq!(once.len(), twice.len());
            prop_assert!(twice.indexes_consistent());
        }
    }
}
