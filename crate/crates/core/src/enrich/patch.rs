use std::fmt;
use std::fs;
use std::io;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{parse_turtle, Graph, SyntaxError, Triple};
use crate::lint::{LintReport, Severity};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    External,
    Internal,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::External => "external",
            Provenance::Internal => "internal",
        })
    }
}

/// Triples to remove and add, with where they came from.
#[derive(Debug, Clone)]
pub struct Patch {
    additions: Graph,
    removals: Graph,
    pub provenance: Provenance,
    pub note: String,
}

#[derive(Debug, Error)]
pub enum PatchError {
    #[error("{file}: {source}")]
    Syntax { file: String, source: SyntaxError },
    #[error("{count} triple(s) are both added and removed, e.g. {example}")]
    Overlap { count: usize, example: Box<Triple> },
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{path}: {message}")]
    Metadata { path: String, message: String },
}

impl Patch {
    /// Fails if a triple is in both sets.
    pub fn new(additions: Graph, removals: Graph, provenance: Provenance, note: impl Into<String>) -> Result<Self, PatchError> {
        let overlap: Vec<&Triple> = additions.iter().filter(|t| removals.contains(t)).collect();
        if let Some(first) = overlap.first() {
            return Err(PatchError::Overlap {
                count: overlap.len(),
                example: Box::new((*first).clone()),
            });
        }
        Ok(Patch {
            additions,
            removals,
            provenance,
            note: note.into(),
        })
    }

    pub fn empty(provenance: Provenance, note: impl Into<String>) -> Self {
        Patch {
            additions: Graph::new(),
            removals: Graph::new(),
            provenance,
            note: note.into(),
        }
    }

    pub fn additions(&self) -> &Graph {
        &self.additions
    }

    pub fn removals(&self) -> &Graph {
        &self.removals
    }

    pub fn is_empty(&self) -> bool {
        self.additions.is_empty() && self.removals.is_empty()
    }

    pub fn is_additions_only(&self) -> bool {
        self.removals.is_empty()
    }
}

pub fn parse_patch(add_doc: &str, remove_doc: &str, provenance: Provenance, note: &str) -> Result<Patch, PatchError> {
    let parse = |doc: &str, file: &str| {
        parse_turtle(doc, None).map_err(|source| PatchError::Syntax {
            file: file.to_owned(),
            source,
        })
    };
    Patch::new(parse(add_doc, "add.ttl")?, parse(remove_doc, "remove.ttl")?, provenance, note)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PatchMeta {
    provenance: Option<Provenance>,
    note: Option<String>,
}

/// Loads a patch directory: `add.ttl`, `remove.ttl` (either may be absent)
/// and `patch.toml` with `provenance` and `note`. Without metadata the patch
/// is external and its note is the directory name.
pub fn load_patch_dir(dir: &Path) -> Result<Patch, PatchError> {
    if !dir.is_dir() {
        return Err(PatchError::Io {
            path: dir.display().to_string(),
            source: io::Error::new(io::ErrorKind::NotFound, "not a patch directory"),
        });
    }
    let read = |name: &str| -> Result<String, PatchError> {
        let path = dir.join(name);
        match fs::read_to_string(&path) {
            Ok(text) => Ok(text),
            Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(String::new()),
            Err(source) => Err(PatchError::Io {
                path: path.display().to_string(),
                source,
            }),
        }
    };
    let meta_text = read("patch.toml")?;
    let meta: PatchMeta = toml::from_str(&meta_text).map_err(|e| PatchError::Metadata {
        path: dir.join("patch.toml").display().to_string(),
        message: e.message().to_owned(),
    })?;
    let note = meta.note.unwrap_or_else(|| {
        dir.file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default()
    });
    let parse = |name: &str| -> Result<Graph, PatchError> {
        parse_turtle(&read(name)?, None).map_err(|source| PatchError::Syntax {
            file: dir.join(name).display().to_string(),
            source,
        })
    };
    Patch::new(
        parse("add.ttl")?,
        parse("remove.ttl")?,
        meta.provenance.unwrap_or(Provenance::External),
        note,
    )
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApplyReport {
    pub added: usize,
    pub removed: usize,
    pub warnings: Vec<String>,
}

/// Removals first, then additions. Removing an absent triple is a warning;
/// adding a present one is a no-op.
pub fn apply_patch(g: &Graph, p: &Patch) -> (Graph, ApplyReport) {
    let mut out = g.clone();
    let mut report = ApplyReport::default();
    for t in p.removals.iter() {
        if out.remove(t) {
            report.removed += 1;
        } else {
            report.warnings.push(format!("not present, nothing removed: {t}"));
        }
    }
    for t in p.additions.iter() {
        if out.insert(t.clone()) {
            report.added += 1;
        }
    }
    out.prefixes_mut().merge_missing(p.additions.prefixes());
    (out, report)
}

/// Gathers the fixes of all auto-fixable findings into one internal patch.
/// When fixes disagree, an addition wins over a removal.
pub fn suggest_internal_fixes(report: &LintReport) -> Patch {
    let mut additions = Graph::new();
    let mut removals = Graph::new();
    let mut fixed = Vec::new();
    let mut manual = Vec::new();
    for f in &report.findings {
        match &f.fix {
            Some(fix) => {
                additions.extend(fix.additions.iter().cloned());
                removals.extend(fix.removals.iter().cloned());
                fixed.push(format!("{} {}", f.rule_id, crate::vocab::local_name(&f.subject)));
            }
            None if f.severity != Severity::Info => {
                manual.push(format!("{} {}", f.rule_id, crate::vocab::local_name(&f.subject)));
            }
            None => {}
        }
    }
    let conflicting: Vec<Triple> = removals.iter().filter(|t| additions.contains(t)).cloned().collect();
    for t in &conflicting {
        removals.remove(t);
    }
    let mut note = format!("internal fixes for {} finding(s)", fixed.len());
    if !fixed.is_empty() {
        note.push_str(&format!(": {}", fixed.join(", ")));
    }
    if !manual.is_empty() {
        note.push_str(&format!("; needs manual repair: {}", manual.join(", ")));
    }
    Patch::new(additions, removals, Provenance::Internal, note).expect("conflicts were resolved")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::graph_equal;
    use crate::lint::{run_lint, LintConfig};
    use crate::schema::{build_schema_view, RelationshipMatrix};
    use proptest::prelude::*;

    const P: &str = "@prefix : <http://e/> . @prefix owl: <http://www.w3.org/2002/07/owl#> . ";

    #[test]
    fn empty_docs_make_an_empty_patch() {
        let p = parse_patch("", "", Provenance::External, "nothing").unwrap();
        assert!(p.is_empty());
        let g = crate::graph::parse_turtle(&format!("{P} :a :b :c ."), None).unwrap();
        let (out, report) = apply_patch(&g, &p);
        assert!(graph_equal(&g, &out));
        assert_eq!(report, ApplyReport::default());
    }

    #[test]
    fn overlap_is_rejected() {
        let err = parse_patch(&format!("{P} :a :b :c ."), &format!("{P} :a :b :c ."), Provenance::Internal, "x").unwrap_err();
        assert!(matches!(err, PatchError::Overlap { count: 1, .. }));
    }

    #[test]
    fn syntax_errors_name_the_file() {
        let err = parse_patch("", "<broken", Provenance::External, "x").unwrap_err();
        assert!(err.to_string().starts_with("remove.ttl"), "{err}");
    }

    #[test]
    fn removals_before_additions_moves_an_edge() {
        let g = crate::graph::parse_turtle(&format!("{P} :Karna :subClassOf :Pandava ."), None).unwrap();
        let p = parse_patch(
            &format!("{P} :Karna :subClassOf :Kaurava ."),
            &format!("{P} :Karna :subClassOf :Pandava . :Ghost :p :q ."),
            Provenance::Internal,
            "move Karna",
        )
        .unwrap();
        let (out, report) = apply_patch(&g, &p);
        assert_eq!((report.added, report.removed, report.warnings.len()), (1, 1, 1));
        assert!(out.contains(&Triple::iris("http://e/Karna", "http://e/subClassOf", "http://e/Kaurava")));
        assert_eq!(out.len(), 1);
    }

    #[test]
    fn spouse_fix_patch() {
        let g = crate::graph::parse_turtle(
            &format!(
                "{P} @prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .
                 :hasParent a owl:ObjectProperty . :hasFather rdfs:subPropertyOf :hasParent .
                 :hasHusband a owl:ObjectProperty . :hasWife a owl:ObjectProperty ."
            ),
            None,
        )
        .unwrap();
        let report = run_lint(
            &build_schema_view(&g),
            &RelationshipMatrix::kinship("http://e/"),
            &LintConfig::default(),
        );
        let patch = suggest_internal_fixes(&report);
        assert_eq!(patch.provenance, Provenance::Internal);
        assert_eq!(patch.additions().len(), 3);
        assert!(patch.removals().is_empty());
        assert!(patch.note.contains("hasHusband") && patch.note.contains("DR01"), "{}", patch.note);
    }

    #[test]
    fn nothing_fixable_gives_an_empty_patch() {
        let g = crate::graph::parse_turtle(&format!("{P} :Pandavas a :Clan . :Arjuna a :Pandavas ."), None).unwrap();
        let report = run_lint(&build_schema_view(&g), &RelationshipMatrix::new(), &LintConfig::default());
        let patch = suggest_internal_fixes(&report);
        assert!(patch.is_empty());
        assert!(patch.note.contains("PN01 Pandavas"));
    }

    fn triple(s: u8, p: u8, o: u8) -> Triple {
        Triple::iris(&format!("http://e/s{s}"), &format!("http://e/p{p}"), &format!("http://e/o{o}"))
    }

    proptest! {
        #[test]
        fn applying_twice_equals_once(
            base in prop::collection::vec((0u8..4, 0u8..2, 0u8..4), 0..20),
            add in prop::collection::vec((0u8..4, 0u8..2, 0u8..4), 0..10),
            remove in prop::collection::vec((0u8..4, 0u8..2, 0u8..4), 0..10),
        ) {
            let g: Graph = base.into_iter().map(|(s, p, o)| triple(s, p, o)).collect();
            let additions: Graph = add.into_iter().map(|(s, p, o)| triple(s, p, o)).collect();
            let removals: Graph = remove
                .into_iter()
                .map(|(s, p, o)| triple(s, p, o))
                .filter(|t| !additions.contains(t))
                .collect();
            let patch = Patch::new(additions, removals, Provenance::External, "random").unwrap();
            let (once, r1) = apply_patch(&g, &patch);
            let (twice, r2) = apply_patch(&once, &patch);
            prop_assert!(graph_equal(&once, &twice));
            prop_assert_eq!(once.len() + r1.removed, g.len() + r1.added);
            prop_assert_eq!(r2.added, 0);
        }
    }
}
