use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::bgp::{Bgp, BgpError};
use crate::graph::{is_absolute_iri, PrefixMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CqKind {
    Factual,
    Descriptive,
}

impl fmt::Display for CqKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CqKind::Factual => "factual",
            CqKind::Descriptive => "descriptive",
        })
    }
}

/// A competency question.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cq {
    pub id: String,
    pub asker: String,
    pub text: String,
    pub kind: CqKind,
    pub dup_of: Option<String>,
    pub pattern: Option<Bgp>,
}

impl Cq {
    pub fn is_duplicate(&self) -> bool {
        self.dup_of.is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorpusError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: bad pattern: {source}")]
    Pattern { line: usize, source: BgpError },
    #[error("line {line}: duplicate id '{id}'")]
    DuplicateId { line: usize, id: String },
    #[error("line {line}: dup_of refers to unknown id '{id}'")]
    UnknownDupOf { line: usize, id: String },
}

impl CorpusError {
    pub fn line(&self) -> usize {
        match self {
            CorpusError::Malformed { line, .. }
            | CorpusError::Pattern { line, .. }
            | CorpusError::DuplicateId { line, .. }
            | CorpusError::UnknownDupOf { line, .. } => *line,
        }
    }
}

fn field(raw: &str) -> Option<&str> {
    let v = raw.trim();
    (!v.is_empty() && v != "-").then_some(v)
}

/// Parses the tab-separated corpus format: an optional `@prefix` block,
/// then one record per line with fields
/// `id, asker, kind, dup_of, text, pattern` (`-` for none).
/// Blank lines and lines starting with `#` are ignored.
pub fn parse_cq_corpus(document: &str) -> Result<Vec<Cq>, CorpusError> {
    let mut prefixes = PrefixMap::standard();
    let mut cqs: Vec<Cq> = Vec::new();
    let mut lines_of: BTreeMap<String, usize> = BTreeMap::new();
    let mut dup_refs = Vec::new();
    for (idx, raw) in document.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let malformed = |message: String| CorpusError::Malformed { line, message };
        if let Some(rest) = trimmed.strip_prefix("@prefix") {
            if !cqs.is_empty() {
                return Err(malformed("@prefix after the first record".to_owned()));
            }
            let rest = rest.trim().trim_end_matches('.').trim();
            let (label, ns) = rest
                .split_once(char::is_whitespace)
                .ok_or_else(|| malformed("expected '@prefix label: <iri>'".to_owned()))?;
            let label = label
                .strip_suffix(':')
                .ok_or_else(|| malformed("prefix label must end with ':'".to_owned()))?;
            let ns = ns
                .trim()
                .strip_prefix('<')
                .and_then(|n| n.strip_suffix('>'))
                .filter(|n| is_absolute_iri(n))
                .ok_or_else(|| malformed("namespace must be an absolute <iri>".to_owned()))?;
            prefixes.insert(label, ns);
            continue;
        }
        let fields: Vec<&str> = raw.split('\t').collect();
        if fields.len() != 6 {
            return Err(malformed(format!("expected 6 tab-separated fields, found {}", fields.len())));
        }
        let id = field(fields[0]).ok_or_else(|| malformed("missing id".to_owned()))?;
        let asker = field(fields[1]).ok_or_else(|| malformed("missing asker".to_owned()))?;
        let kind = match fields[2].trim() {
            "factual" => CqKind::Factual,
            "descriptive" => CqKind::Descriptive,
            other => return Err(malformed(format!("kind must be 'factual' or 'descriptive', found '{other}'"))),
        };
        let text = field(fields[4]).ok_or_else(|| malformed("missing question text".to_owned()))?;
        let pattern = field(fields[5])
            .map(|p| Bgp::parse(p, &prefixes))
            .transpose()
            .map_err(|source| CorpusError::Pattern { line, source })?;
        if lines_of.insert(id.to_owned(), line).is_some() {
            return Err(CorpusError::DuplicateId { line, id: id.to_owned() });
        }
        let dup_of = field(fields[3]).map(str::to_owned);
        if let Some(d) = &dup_of {
            dup_refs.push((line, d.clone()));
        }
        cqs.push(Cq {
            id: id.to_owned(),
            asker: asker.to_owned(),
            text: text.to_owned(),
            kind,
            dup_of,
            pattern,
        });
    }
    for (line, id) in dup_refs {
        if !lines_of.contains_key(&id) {
            return Err(CorpusError::UnknownDupOf { line, id });
        }
    }
    Ok(cqs)
}

/// Case-folded text with punctuation removed and whitespace collapsed.
pub fn normalize_text(text: &str) -> String {
    let cleaned: String = text
        .chars()
        .map(|c| if c.is_alphanumeric() { c } else { ' ' })
        .flat_map(char::to_lowercase)
        .collect();
    cleaned.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Marks exact duplicates after normalization. Manual `dup_of` values are
/// kept; the first occurrence of a text is canonical.
pub fn dedup_corpus(cqs: Vec<Cq>) -> Vec<Cq> {
    let manual: BTreeMap<String, Option<String>> = cqs.iter().map(|c| (c.id.clone(), c.dup_of.clone())).collect();
    let root = |id: &str| {
        let mut current = id.to_owned();
        let mut seen = BTreeSet::new();
        while let Some(Some(next)) = manual.get(&current) {
            if !seen.insert(current.clone()) {
                break;
            }
            current = next.clone();
        }
        current
    };
    let mut canonical: BTreeMap<String, String> = BTreeMap::new();
    cqs.into_iter()
        .map(|mut cq| {
            let key = normalize_text(&cq.text);
            match (&cq.dup_of, canonical.get(&key)) {
                (Some(_), _) => {
                    canonical.entry(key).or_insert_with(|| root(&cq.id));
                }
                (None, Some(first)) => cq.dup_of = Some(first.clone()),
                (None, None) => {
                    canonical.insert(key, cq.id.clone());
                }
            }
            cq
        })
        .collect()
}
