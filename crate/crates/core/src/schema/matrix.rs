//! Relationship matrix: hypernym families of object properties.
//!
//! File format, one entry per line:
//!
//! ```text
//! @prefix : <http://example.org/epic#> .
//! # family = member, member, ...
//! :hasParent = :hasFather, :hasMother
//! # optional inverse pairs
//! :hasParent <-> :hasChild
//! ```

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{is_absolute_iri, PrefixMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: undefined prefix '{prefix}:'")]
    UndefinedPrefix { line: usize, prefix: String },
    #[error("<{member}> belongs to both <{first}> and <{second}>")]
    MemberInTwoFamilies {
        member: String,
        first: String,
        second: String,
    },
    #[error("family <{family}> lists itself as a member")]
    SelfMember { family: String },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationshipMatrix {
    families: BTreeMap<String, BTreeSet<String>>,
    inverse_pairs: BTreeSet<(String, String)>,
}

impl RelationshipMatrix {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a family, rejecting members already claimed by another family.
    pub fn add_family<I, S>(&mut self, family: impl Into<String>, members: I) -> Result<(), MatrixError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let family = family.into();
        let members: BTreeSet<String> = members.into_iter().map(Into::into).collect();
        if members.contains(&family) {
            return Err(MatrixError::SelfMember { family });
        }
        for m in &members {
            if let Some(other) = self.family_of(m).filter(|f| *f != family) {
                return Err(MatrixError::MemberInTwoFamilies {
                    member: m.clone(),
                    first: other.to_owned(),
                    second: family,
                });
            }
        }
        self.families.entry(family).or_default().extend(members);
        Ok(())
    }

    pub fn add_inverse(&mut self, a: impl Into<String>, b: impl Into<String>) {
        let (a, b) = (a.into(), b.into());
        let pair = if a <= b { (a, b) } else { (b, a) };
        self.inverse_pairs.insert(pair);
    }

    pub fn families(&self) -> impl Iterator<Item = (&str, &BTreeSet<String>)> {
        self.families.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn inverse_pairs(&self) -> &BTreeSet<(String, String)> {
        &self.inverse_pairs
    }

    pub fn family_of(&self, member: &str) -> Option<&str> {
        self.families
            .iter()
            .find(|(_, members)| members.contains(member))
            .map(|(family, _)| family.as_str())
    }

    /// True if `iri` is a family hypernym or a member of any family.
    pub fn covers(&self, iri: &str) -> bool {
        self.families.contains_key(iri) || self.family_of(iri).is_some()
    }

    pub fn is_empty(&self) -> bool {
        self.families.is_empty()
    }

    /// The kinship families shipped by default, minted in `namespace`:
    /// parent over father/mother, spouse over husband/wife, and sibling over
    /// brother/sister.
    pub fn kinship(namespace: &str) -> Self {
        let mut m = RelationshipMatrix::new();
        let iri = |local: &str| format!("{namespace}{local}");
        let families = [
            ("hasParent", ["hasFather", "hasMother"]),
            ("hasSpouse", ["hasHusband", "hasWife"]),
            ("hasSibling", ["hasBrother", "hasSister"]),
        ];
        for (family, members) in families {
            m.add_family(iri(family), members.map(iri))
                .expect("default families are disjoint");
        }
        m
    }

    pub fn parse(text: &str) -> Result<Self, MatrixError> {
        let mut prefixes = PrefixMap::new();
        let mut matrix = RelationshipMatrix::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = strip_comment(raw).trim();
            if content.is_empty() {
                continue;
            }
            let malformed = |message: &str| MatrixError::Malformed {
                line,
                message: message.to_owned(),
            };
            if let Some(rest) = content.strip_prefix("@prefix") {
                let rest = rest.trim().trim_end_matches('.').trim();
                let (label, ns) = rest
                    .split_once(char::is_whitespace)
                    .ok_or_else(|| malformed("expected '@prefix label: <iri>'"))?;
                let label = label.strip_suffix(':').ok_or_else(|| malformed("prefix label must end with ':'"))?;
                let ns = ns
                    .trim()
                    .strip_prefix('<')
                    .and_then(|n| n.strip_suffix('>'))
                    .ok_or_else(|| malformed("namespace must be written as <iri>"))?;
                prefixes.insert(label, ns);
            } else if let Some((a, b)) = content.split_once("<->") {
                let a = resolve(a.trim(), &prefixes, line)?;
                let b = resolve(b.trim(), &prefixes, line)?;
                matrix.add_inverse(a, b);
            } else if let Some((family, members)) = content.split_once('=') {
                let family = resolve(family.trim(), &prefixes, line)?;
                let members = members
                    .split(',')
                    .map(str::trim)
                    .filter(|m| !m.is_empty())
                    .map(|m| resolve(m, &prefixes, line))
                    .collect::<Result<Vec<_>, _>>()?;
                if members.is_empty() {
                    return Err(malformed("family has no members"));
                }
                matrix.add_family(family, members)?;
            } else {
                return Err(malformed("expected 'family = member, ...' or 'a <-> b'"));
            }
        }
        Ok(matrix)
    }
}

fn strip_comment(line: &str) -> &str {
    // '#' inside <...> belongs to the IRI
    let mut in_iri = false;
    for (i, c) in line.char_indices() {
        match c {
            '<' => in_iri = true,
            '>' => in_iri = false,
            '#' if !in_iri => return &line[..i],
            _ => {}
        }
    }
    line
}

fn resolve(token: &str, prefixes: &PrefixMap, line: usize) -> Result<String, MatrixError> {
    if let Some(iri) = token.strip_prefix('<').and_then(|t| t.strip_suffix('>')) {
        if is_absolute_iri(iri) {
            return Ok(iri.to_owned());
        }
        return Err(MatrixError::Malformed {
            line,
            message: format!("relative IRI <{iri}>"),
        });
    }
    let (prefix, local) = token.split_once(':').ok_or_else(|| MatrixError::Malformed {
        line,
        message: format!("'{token}' is neither <iri> nor prefix:name"),
    })?;
    prefixes.expand(prefix, local).ok_or_else(|| MatrixError::UndefinedPrefix {
        line,
        prefix: prefix.to_owned(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_families_prefixes_and_inverses() {
        let m = RelationshipMatrix::parse(
            "# kinship\n@prefix : <http://e/epic#> .\n:hasParent = :hasFather, :hasMother  # hypernym\n\
             <http://e/epic#hasSpouse> = :hasHusband,:hasWife\n:hasParent <-> :hasChild\n",
        )
        .unwrap();
        assert_eq!(m.families().count(), 2);
        assert_eq!(m.family_of("http://e/epic#hasWife"), Some("http://e/epic#hasSpouse"));
        assert!(m.covers("http://e/epic#hasParent"));
        assert!(!m.covers("http://e/epic#hasChild"));
        assert_eq!(m.inverse_pairs().len(), 1);
    }

    #[test]
    fn member_in_two_families_rejected() {
        let err = RelationshipMatrix::parse("@prefix : <http://e/> .\n:a = :x, :y\n:b = :y\n").unwrap_err();
        assert!(matches!(err, MatrixError::MemberInTwoFamilies { .. }));
    }

    #[test]
    fn self_membership_rejected() {
        let err = RelationshipMatrix::parse("@prefix : <http://e/> .\n:a = :a, :y\n").unwrap_err();
        assert_eq!(err, MatrixError::SelfMember { family: "http://e/a".into() });
    }

    #[test]
    fn undefined_prefix_and_malformed_lines() {
        assert_eq!(
            RelationshipMatrix::parse("ex:a = ex:b").unwrap_err(),
            MatrixError::UndefinedPrefix { line: 1, prefix: "ex".into() }
        );
        assert!(matches!(
            RelationshipMatrix::parse("@prefix : <http://e/> .\n:a :b\n").unwrap_err(),
            MatrixError::Malformed { line: 2, .. }
        ));
        assert!(RelationshipMatrix::parse("@prefix : <http://e/> .\n:a =\n").is_err());
    }

    #[test]
    fn kinship_default() {
        let m = RelationshipMatrix::kinship("http://e/");
        assert_eq!(m.family_of("http://e/hasHusband"), Some("http://e/hasSpouse"));
        assert_eq!(m.families().count(), 3);
    }
}
