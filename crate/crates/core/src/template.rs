//! KR template: the spreadsheet enumerating characters, one primary
//! definition per character and any number of secondary relations.
//!
//! CSV layout (RFC 4180), header row first:
//!
//! ```text
//! Sl. No,Characters,Primary Definition,Secondary Relation,...
//! 48,Dhritarashtra,kingOf Hastinapur,sonOf Vichitravirya and Ambika,performed VaishnavaSacrifice
//! ```
//!
//! A phrase cell reads `predicate object (and object)*`. `brother of X` is
//! read as `brotherOf X`. Multi-word object names are title-cased and joined
//! (`Vaishnava Sacrifice` becomes `VaishnavaSacrifice`); a comma separates
//! objects like `and`. A secondary cell may hold several phrases separated
//! by `;` or line breaks; the primary cell must hold exactly one.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RelationPhrase {
    pub predicate: String,
    pub objects: Vec<String>,
}

impl RelationPhrase {
    pub fn new<S: Into<String>>(predicate: impl Into<String>, objects: impl IntoIterator<Item = S>) -> Self {
        RelationPhrase {
            predicate: predicate.into(),
            objects: objects.into_iter().map(Into::into).collect(),
        }
    }

    /// Reads a single phrase cell.
    pub fn parse(cell: &str) -> Result<Self, String> {
        let tokens: Vec<&str> = cell.split_whitespace().collect();
        let (predicate, rest) = match tokens.as_slice() {
            [] => return Err("empty phrase".to_owned()),
            [first, of, rest @ ..] if of.eq_ignore_ascii_case("of") => (format!("{first}Of"), rest),
            [first, rest @ ..] => ((*first).to_owned(), rest),
        };
        if !predicate.chars().all(|c| c.is_alphanumeric() || c == '_')
            || !predicate.chars().next().is_some_and(char::is_alphabetic)
        {
            return Err(format!("'{predicate}' is not a relation name"));
        }
        let predicate = lower_first(&predicate);
        if rest.is_empty() {
            return Err(format!("relation '{predicate}' has no object"));
        }
        let mut objects = Vec::new();
        let mut current: Vec<String> = Vec::new();
        let flush = |current: &mut Vec<String>, objects: &mut Vec<String>| -> Result<(), String> {
            if current.is_empty() {
                return Err(format!("relation '{predicate}' has an empty object"));
            }
            objects.push(current.drain(..).collect::<String>());
            Ok(())
        };
        for token in rest {
            if *token == "and" {
                flush(&mut current, &mut objects)?;
                continue;
            }
            let mut pieces = token.split(',').peekable();
            while let Some(piece) = pieces.next() {
                if !piece.is_empty() {
                    current.push(title_case(piece));
                }
                if pieces.peek().is_some() {
                    flush(&mut current, &mut objects)?;
                }
            }
        }
        flush(&mut current, &mut objects)?;
        Ok(RelationPhrase { predicate, objects })
    }
}

impl fmt::Display for RelationPhrase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.predicate, self.objects.join(" and "))
    }
}

fn lower_first(s: &str) -> String {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) => c.to_lowercase().chain(chars).collect(),
        None => String::new(),
    }
}

fn title_case(s: &str) -> String {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) => c.to_uppercase().chain(chars).collect(),
        None => String::new(),
    }
}

/// One `(predicate, object)` pair per object.
pub fn expand_relation(r: &RelationPhrase) -> Vec<(String, String)> {
    r.objects.iter().map(|o| (r.predicate.clone(), o.clone())).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KrRow {
    pub serial: u32,
    pub character: String,
    pub primary: RelationPhrase,
    pub secondary: Vec<RelationPhrase>,
}

impl KrRow {
    pub fn phrases(&self) -> impl Iterator<Item = &RelationPhrase> {
        std::iter::once(&self.primary).chain(&self.secondary)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KrTemplate {
    pub rows: Vec<KrRow>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("row {row}: {message}")]
pub struct RowError {
    /// Line of the record in the CSV document, header included.
    pub row: u64,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct TemplateErrors(pub Vec<RowError>);

impl fmt::Display for TemplateErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lines: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        f.write_str(&lines.join("\n"))
    }
}

fn split_phrases(cell: &str) -> impl Iterator<Item = &str> {
    cell.split([';', '\n', '\r']).map(str::trim).filter(|p| !p.is_empty())
}

/// Parses and validates a KR template. Errors from all rows are collected;
/// either every row is valid or the full error list is returned.
pub fn parse_kr_template(csv_document: &str) -> Result<KrTemplate, TemplateErrors> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_reader(csv_document.as_bytes());
    let mut rows = Vec::new();
    let mut errors = Vec::new();
    let mut serials: BTreeMap<u32, u64> = BTreeMap::new();
    for record in reader.records() {
        let record = match record {
            Ok(r) => r,
            Err(e) => {
                let row = e.position().map_or(0, |p| p.line());
                errors.push(RowError {
                    row,
                    message: e.to_string(),
                });
                continue;
            }
        };
        let row = record.position().map_or(0, |p| p.line());
        if record.iter().all(|c| c.trim().is_empty()) {
            continue;
        }
        let mut fail = |message: String| errors.push(RowError { row, message });
        let cell = |i: usize| record.get(i).map(str::trim).unwrap_or("");

        let serial = match cell(0).parse::<u32>() {
            Ok(n) => match serials.insert(n, row) {
                Some(first) => {
                    fail(format!("duplicate serial {n} (first used on row {first})"));
                    None
                }
                None => Some(n),
            },
            Err(_) => {
                fail(format!("invalid serial '{}'", cell(0)));
                None
            }
        };
        let character = cell(1);
        if character.is_empty() {
            fail("missing character name".to_owned());
        }
        let primaries: Vec<&str> = split_phrases(cell(2)).collect();
        let primary = match primaries.as_slice() {
            [] => {
                fail("missing primary definition".to_owned());
                None
            }
            [one] => RelationPhrase::parse(one)
                .map_err(|e| fail(format!("primary definition: {e}")))
                .ok(),
            _ => {
                fail(format!("multiple primary definitions ({})", primaries.len()));
                None
            }
        };
        let mut secondary = Vec::new();
        let mut secondary_ok = true;
        for (col, raw) in record.iter().enumerate().skip(3) {
            for phrase in split_phrases(raw) {
                match RelationPhrase::parse(phrase) {
                    Ok(p) => secondary.push(p),
                    Err(e) => {
                        fail(format!("column {}: {e}", col + 1));
                        secondary_ok = false;
                    }
                }
            }
        }
        if let (Some(serial), Some(primary), false, true) = (serial, primary, character.is_empty(), secondary_ok) {
            rows.push(KrRow {
                serial,
                character: character.to_owned(),
                primary,
                secondary,
            });
        }
    }
    if !errors.is_empty() {
        return Err(TemplateErrors(errors));
    }
    let warnings = unknown_object_warnings(&rows);
    Ok(KrTemplate { rows, warnings })
}

fn unknown_object_warnings(rows: &[KrRow]) -> Vec<String> {
    let characters: BTreeSet<String> = rows.iter().map(|r| r.character.split_whitespace().map(title_case).collect()).collect();
    let mut unknown: BTreeMap<&str, BTreeSet<u32>> = BTreeMap::new();
    for row in rows {
        for phrase in row.phrases() {
            for object in &phrase.objects {
                if !characters.contains(object) {
                    unknown.entry(object).or_default().insert(row.serial);
                }
            }
        }
    }
    unknown
        .into_iter()
        .map(|(name, serials)| {
            let list: Vec<String> = serials.iter().map(ToString::to_string).collect();
            format!("'{name}' (rows {}) is not an enumerated character", list.join(", "))
        })
        .collect()
}
