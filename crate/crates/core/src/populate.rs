//! Population: maps KR template rows into the graph as individuals and
//! assertions.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{is_absolute_iri, Graph, Literal, PrefixMap, Term, Triple};
use crate::schema::build_schema_view;
use crate::template::{expand_relation, KrRow};
use crate::vocab;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct PopulateConfig {
    pub base_namespace: String,
    pub strict: bool,
    pub character_class: String,
    /// Phrase predicate to property IRI.
    pub predicate_map: BTreeMap<String, String>,
    pub auto_declare: bool,
    /// Object name to the class its individual is typed with, instead of
    /// `owl:NamedIndividual`.
    pub class_hints: BTreeMap<String, String>,
}

impl Default for PopulateConfig {
    fn default() -> Self {
        PopulateConfig {
            base_namespace: "http://example.org/epic#".to_owned(),
            strict: false,
            character_class: "http://example.org/epic#Character".to_owned(),
            predicate_map: BTreeMap::new(),
            auto_declare: true,
            class_hints: BTreeMap::new(),
        }
    }
}

impl PopulateConfig {
    pub fn new(base_namespace: impl Into<String>) -> Self {
        let base_namespace = base_namespace.into();
        PopulateConfig {
            character_class: format!("{base_namespace}Character"),
            base_namespace,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PopulationReport {
    pub individuals_created: usize,
    pub assertions_added: usize,
    pub predicates_auto_declared: Vec<String>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PopulateError {
    #[error("base namespace <{0}> is not an absolute IRI")]
    InvalidNamespace(String),
    #[error("'{0}' has no letters or digits to mint an IRI from")]
    EmptySlug(String),
    #[error("character class <{0}> is not declared in the schema")]
    UndeclaredCharacterClass(String),
    #[error("row {serial}: no property for relation '{predicate}'")]
    UnresolvedPredicate { serial: u32, predicate: String },
    #[error("line {line}: {message}")]
    PredicateMap { line: usize, message: String },
}

/// `ns` followed by the alphanumeric characters of `name`.
pub fn mint_iri(name: &str, ns: &str) -> Result<String, PopulateError> {
    let slug: String = name.chars().filter(|c| c.is_alphanumeric()).collect();
    if slug.is_empty() {
        return Err(PopulateError::EmptySlug(name.to_owned()));
    }
    Ok(format!("{ns}{slug}"))
}

/// Reads `phraseToken = prefixed:property` lines. `<iri>` is accepted too,
/// and `@prefix p: <iri> .` lines extend `prefixes`.
pub fn parse_predicate_map(text: &str, prefixes: &PrefixMap) -> Result<BTreeMap<String, String>, PopulateError> {
    let mut prefixes = prefixes.clone();
    let mut map = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let err = |message: String| PopulateError::PredicateMap { line, message };
        if let Some(rest) = content.strip_prefix("@prefix") {
            let rest = rest.trim().trim_end_matches('.').trim();
            let parsed = rest.split_once(char::is_whitespace).and_then(|(label, ns)| {
                let ns = ns.trim().strip_prefix('<')?.strip_suffix('>')?;
                Some((label.strip_suffix(':')?, ns))
            });
            let (label, ns) = parsed.ok_or_else(|| err("expected '@prefix label: <iri> .'".to_owned()))?;
            prefixes.insert(label, ns);
            continue;
        }
        let (token, target) = content
            .split_once('=')
            .ok_or_else(|| err("expected 'phraseToken = prefix:property'".to_owned()))?;
        let (token, target) = (token.trim(), target.trim());
        if token.is_empty() || token.contains(char::is_whitespace) {
            return Err(err(format!("'{token}' is not a single phrase token")));
        }
        let iri = if let Some(iri) = target.strip_prefix('<').and_then(|t| t.strip_suffix('>')) {
            iri.to_owned()
        } else {
            let (prefix, local) = target
                .split_once(':')
                .ok_or_else(|| err(format!("'{target}' is neither <iri> nor prefix:name")))?;
            prefixes
                .expand(prefix, local)
                .ok_or_else(|| err(format!("undefined prefix '{prefix}:'")))?
        };
        if !is_absolute_iri(&iri) {
            return Err(err(format!("<{iri}> is not absolute")));
        }
        map.insert(token.to_owned(), iri);
    }
    Ok(map)
}

struct Resolver {
    declared: BTreeSet<String>,
    by_local: BTreeMap<String, String>,
}

impl Resolver {
    fn new(g: &Graph) -> Self {
        let v = build_schema_view(g);
        let declared: BTreeSet<String> = v.object_properties.union(&v.data_properties).cloned().collect();
        let mut by_local = BTreeMap::new();
        for iri in &declared {
            by_local.entry(vocab::local_name(iri).to_owned()).or_insert_with(|| iri.clone());
        }
        Resolver { declared, by_local }
    }

    fn declared(&self, predicate: &str, cfg: &PopulateConfig) -> Option<String> {
        if let Some(iri) = cfg.predicate_map.get(predicate) {
            return Some(iri.clone());
        }
        let slug: String = predicate.chars().filter(|c| c.is_alphanumeric()).collect();
        let local = format!("{}{slug}", cfg.base_namespace);
        if self.declared.contains(&local) {
            return Some(local);
        }
        self.by_local.get(&slug).cloned()
    }
}

/// Adds the rows to a copy of `g`. Running it again on the result adds
/// nothing.
pub fn populate_graph(g: &Graph, rows: &[KrRow], cfg: &PopulateConfig) -> Result<(Graph, PopulationReport), PopulateError> {
    if !is_absolute_iri(&cfg.base_namespace) {
        return Err(PopulateError::InvalidNamespace(cfg.base_namespace.clone()));
    }
    let mut resolver = Resolver::new(g);
    if cfg.strict {
        let v = build_schema_view(g);
        if !v.classes.contains(&cfg.character_class) {
            return Err(PopulateError::UndeclaredCharacterClass(cfg.character_class.clone()));
        }
    }
    let existing: BTreeSet<Term> = g.terms().into_iter().cloned().collect();
    let mut out = g.clone();
    let mut report = PopulationReport::default();
    let mut minted: BTreeSet<String> = BTreeSet::new();
    let mut skipped: BTreeSet<String> = BTreeSet::new();
    let ns = cfg.base_namespace.as_str();

    for row in rows {
        let subject = mint_iri(&row.character, ns)?;
        minted.insert(subject.clone());
        out.insert(Triple::iris(&subject, vocab::RDF_TYPE, &cfg.character_class));
        out.insert(Triple::new(
            Term::iri(&subject),
            Term::iri(vocab::GENOME_PRIMARY_DEFINITION),
            Term::Literal(Literal::string(row.primary.to_string())),
        ));
        for phrase in row.phrases() {
            let property = match resolver.declared(&phrase.predicate, cfg) {
                Some(iri) => iri,
                None if cfg.auto_declare => {
                    let iri = mint_iri(&phrase.predicate, ns)?;
                    out.insert(Triple::iris(&iri, vocab::RDF_TYPE, vocab::OWL_OBJECT_PROPERTY));
                    resolver.declared.insert(iri.clone());
                    report.warnings.push(format!(
                        "auto-declared object property <{iri}> for relation '{}' (no domain or range)",
                        phrase.predicate
                    ));
                    report.predicates_auto_declared.push(iri.clone());
                    iri
                }
                None if cfg.strict => {
                    return Err(PopulateError::UnresolvedPredicate {
                        serial: row.serial,
                        predicate: phrase.predicate.clone(),
                    })
                }
                None => {
                    if skipped.insert(phrase.predicate.clone()) {
                        report
                            .warnings
                            .push(format!("skipped relation '{}': no matching property", phrase.predicate));
                    }
                    continue;
                }
            };
            for (_, object) in expand_relation(phrase) {
                let object_iri = mint_iri(&object, ns)?;
                minted.insert(object_iri.clone());
                let class = cfg.class_hints.get(&object).map_or(vocab::OWL_NAMED_INDIVIDUAL, String::as_str);
                out.insert(Triple::iris(&object_iri, vocab::RDF_TYPE, class));
                out.insert(Triple::iris(&subject, &property, &object_iri));
            }
        }
    }
    report.individuals_created = minted.iter().filter(|iri| !existing.contains(&Term::iri(*iri))).count();
    report.assertions_added = out.len() - g.len();
    Ok((out, report))
}
