//! Ontological review: a catalogue of deterministic rules over a
//! [`SchemaView`], producing findings with optional auto-fixes.
//!
//! | id   | rule                                              |
//! |------|---------------------------------------------------|
//! | DR01 | object property missing domain or range           |
//! | ML01 | missing link in a property hierarchy (modulation) |
//! | RG01 | rigidity: anti-rigid over rigid, untagged roles   |
//! | PN01 | IRI used as both class and individual             |
//! | UA01 | upper-ontology alignment summary                  |
//! | XR01 | external vocabulary reuse summary                 |

mod rules;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write};

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, Triple};
use crate::schema::{classify_profile_with, OntologyProfile, ProfileThresholds, RelationshipMatrix, SchemaView};
use crate::vocab;

pub use rules::{
    aligned_classes, namespace_reuse, rule_domain_range, rule_external_reuse, rule_missing_link, rule_punning,
    rule_rigidity, rule_upper_alignment, NamespaceUse,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RuleId {
    DR01,
    ML01,
    RG01,
    PN01,
    UA01,
    XR01,
}

impl RuleId {
    /// Catalogue order.
    pub const ALL: [RuleId; 6] = [
        RuleId::DR01,
        RuleId::ML01,
        RuleId::RG01,
        RuleId::PN01,
        RuleId::UA01,
        RuleId::XR01,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RuleId::DR01 => "DR01",
            RuleId::ML01 => "ML01",
            RuleId::RG01 => "RG01",
            RuleId::PN01 => "PN01",
            RuleId::UA01 => "UA01",
            RuleId::XR01 => "XR01",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            RuleId::DR01 => "object properties must declare a domain and a range",
            RuleId::ML01 => "property hierarchies must not have missing links",
            RuleId::RG01 => "anti-rigid classes must not subsume rigid ones",
            RuleId::PN01 => "an IRI should not be both a class and an individual",
            RuleId::UA01 => "alignment with an upper ontology",
            RuleId::XR01 => "reuse of external vocabularies",
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Severity {
    Error,
    Warning,
    Info,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
            Severity::Info => "info",
        })
    }
}

/// Triples to add and remove to resolve a finding.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fix {
    pub additions: Vec<Triple>,
    pub removals: Vec<Triple>,
}

impl Fix {
    /// Removals first, then additions.
    pub fn apply(&self, g: &mut Graph) {
        for t in &self.removals {
            g.remove(t);
        }
        g.extend(self.additions.iter().cloned());
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LintFinding {
    pub rule_id: RuleId,
    pub severity: Severity,
    pub subject: String,
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fix: Option<Fix>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct LintConfig {
    pub enabled_rules: BTreeSet<RuleId>,
    pub severity_overrides: BTreeMap<RuleId, Severity>,
    /// Suggested by DR01 fixes when a property lacks a domain.
    pub default_domain: Option<String>,
    /// Suggested by DR01 fixes when a property lacks a range.
    pub default_range: Option<String>,
    /// Words that mark a class as a role (RG01).
    pub role_lexicon: Vec<String>,
    /// Namespaces of upper ontologies for UA01. When empty, UA01 is skipped.
    pub upper_namespaces: Vec<String>,
    /// Escalates a missing upper alignment to a warning.
    pub data_integration: bool,
    pub profile_thresholds: ProfileThresholds,
}

impl Default for LintConfig {
    fn default() -> Self {
        LintConfig {
            enabled_rules: RuleId::ALL.into_iter().collect(),
            severity_overrides: BTreeMap::new(),
            default_domain: None,
            default_range: None,
            role_lexicon: ["charioteer", "teacher", "king"].map(String::from).to_vec(),
            upper_namespaces: Vec::new(),
            data_integration: false,
            profile_thresholds: ProfileThresholds::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SkippedRule {
    pub rule_id: RuleId,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LintReport {
    pub findings: Vec<LintFinding>,
    pub counts: BTreeMap<Severity, usize>,
    pub profile: OntologyProfile,
    /// Share of classes with an explicit rigidity tag.
    pub rigidity_coverage: f64,
    pub skipped_rules: Vec<SkippedRule>,
    /// Review notes that are not rule findings, e.g. untyped individuals.
    pub notes: Vec<String>,
}

impl LintReport {
    pub fn count(&self, severity: Severity) -> usize {
        self.counts.get(&severity).copied().unwrap_or(0)
    }

    pub fn error_count(&self) -> usize {
        self.count(Severity::Error)
    }

    pub fn findings_for(&self, rule: RuleId) -> impl Iterator<Item = &LintFinding> {
        self.findings.iter().filter(move |f| f.rule_id == rule)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("lint report serializes")
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# Ontological review\n");
        let _ = writeln!(
            out,
            "Profile: **{}** (subclass share {:.4}, data-property share {:.4}, lexical share {:.4}, {} axioms)\n",
            serde_json::to_value(self.profile.value)
                .ok()
                .and_then(|v| v.as_str().map(str::to_owned))
                .unwrap_or_default(),
            self.profile.subclass_share(),
            self.profile.data_property_share(),
            self.profile.lexical_share(),
            self.profile.metrics.total_axioms,
        );
        let _ = writeln!(
            out,
            "Findings: {} error, {} warning, {} info. Rigidity tags cover {:.1}% of classes.\n",
            self.count(Severity::Error),
            self.count(Severity::Warning),
            self.count(Severity::Info),
            self.rigidity_coverage * 100.0
        );
        if !self.findings.is_empty() {
            out.push_str("| Rule | Severity | Subject | Message | Fix |\n|---|---|---|---|---|\n");
            for f in &self.findings {
                let fix = match &f.fix {
                    Some(fix) => format!("+{} / -{}", fix.additions.len(), fix.removals.len()),
                    None => "-".to_owned(),
                };
                let _ = writeln!(
                    out,
                    "| {} | {} | `{}` | {} | {} |",
                    f.rule_id,
                    f.severity,
                    f.subject,
                    f.message.replace('|', "\\|"),
                    fix
                );
            }
            out.push('\n');
        }
        for s in &self.skipped_rules {
            let _ = writeln!(out, "- {} skipped: {}", s.rule_id, s.reason);
        }
        for note in &self.notes {
            let _ = writeln!(out, "- note: {note}");
        }
        out
    }
}

/// Runs every enabled rule in catalogue order and attaches the profile.
/// Findings are ordered by rule id, then subject, then message.
pub fn run_lint(v: &SchemaView, m: &RelationshipMatrix, config: &LintConfig) -> LintReport {
    let mut findings = Vec::new();
    let mut skipped_rules = Vec::new();
    for rule in RuleId::ALL {
        if !config.enabled_rules.contains(&rule) {
            skipped_rules.push(SkippedRule {
                rule_id: rule,
                reason: "disabled in configuration".to_owned(),
            });
            continue;
        }
        let produced = match rule {
            RuleId::DR01 => rule_domain_range(v, config.default_domain.as_deref(), config.default_range.as_deref()),
            RuleId::ML01 => rule_missing_link(v, m),
            RuleId::RG01 => rule_rigidity(v, &config.role_lexicon),
            RuleId::PN01 => rule_punning(v),
            RuleId::UA01 if config.upper_namespaces.is_empty() => {
                skipped_rules.push(SkippedRule {
                    rule_id: rule,
                    reason: "alignment check skipped: no upper-ontology namespaces configured".to_owned(),
                });
                continue;
            }
            RuleId::UA01 => rule_upper_alignment(v, &config.upper_namespaces, config.data_integration),
            RuleId::XR01 => rule_external_reuse(v),
        };
        findings.extend(produced);
    }
    for f in &mut findings {
        if let Some(sev) = config.severity_overrides.get(&f.rule_id) {
            f.severity = *sev;
        }
    }
    findings.sort_by(|a, b| {
        (a.rule_id, &a.subject, &a.message).cmp(&(b.rule_id, &b.subject, &b.message))
    });
    let mut counts = BTreeMap::new();
    for sev in [Severity::Error, Severity::Warning, Severity::Info] {
        counts.insert(sev, findings.iter().filter(|f| f.severity == sev).count());
    }
    let notes = v
        .untyped_individuals
        .iter()
        .map(|iri| format!("{} has no type; counted as an individual", vocab::local_name(iri)))
        .collect();
    LintReport {
        findings,
        counts,
        profile: classify_profile_with(v, config.profile_thresholds),
        rigidity_coverage: v.rigidity_coverage(),
        skipped_rules,
        notes,
    }
}
