use std::collections::BTreeSet;

use super::{Fix, LintFinding, RuleId, Severity};
use crate::graph::Triple;
use crate::schema::{RelationshipMatrix, RigidityTag, SchemaView};
use crate::vocab;

/// DR01: every object property needs a domain and a range. A fix is
/// attached only when defaults cover everything that is missing.
pub fn rule_domain_range(v: &SchemaView, default_domain: Option<&str>, default_range: Option<&str>) -> Vec<LintFinding> {
    let mut out = Vec::new();
    for prop in &v.object_properties {
        let has_domain = v.domains.get(prop).is_some_and(|d| !d.is_empty());
        let has_range = v.ranges.get(prop).is_some_and(|r| !r.is_empty());
        let missing = match (has_domain, has_range) {
            (true, true) => continue,
            (false, false) => "domain and range",
            (false, true) => "domain",
            (true, false) => "range",
        };
        let mut additions = Vec::new();
        let mut fixable = true;
        for (present, default, axiom) in [
            (has_domain, default_domain, vocab::RDFS_DOMAIN),
            (has_range, default_range, vocab::RDFS_RANGE),
        ] {
            if present {
                continue;
            }
            match default {
                Some(class) => additions.push(Triple::iris(prop, axiom, class)),
                None => fixable = false,
            }
        }
        out.push(LintFinding {
            rule_id: RuleId::DR01,
            severity: Severity::Error,
            subject: prop.clone(),
            message: format!("object property {} has no {missing}", vocab::local_name(prop)),
            fix: fixable.then(|| Fix {
                additions,
                removals: Vec::new(),
            }),
        });
    }
    out
}

/// ML01: canon of modulation. Matrix-driven check that family members sit
/// under their hypernym, plus an info-level heuristic for flat outliers in
/// an otherwise layered object-property hierarchy.
pub fn rule_missing_link(v: &SchemaView, m: &RelationshipMatrix) -> Vec<LintFinding> {
    let mut out = Vec::new();
    for (family, members) in m.families() {
        let present: Vec<&String> = members.iter().filter(|p| v.object_properties.contains(*p)).collect();
        if present.is_empty() {
            continue;
        }
        let family_declared = v.is_property(family);
        for member in present {
            if v.property_ancestors(member).contains(family) {
                continue;
            }
            let mut additions = Vec::new();
            if !family_declared {
                additions.push(Triple::iris(family, vocab::RDF_TYPE, vocab::OWL_OBJECT_PROPERTY));
            }
            additions.push(Triple::iris(member, vocab::RDFS_SUBPROPERTY_OF, family));
            let reason = if family_declared {
                format!("is not placed under its hypernym {}", vocab::local_name(family))
            } else {
                format!("has no hypernym; {} is missing", vocab::local_name(family))
            };
            out.push(LintFinding {
                rule_id: RuleId::ML01,
                severity: Severity::Warning,
                subject: member.clone(),
                message: format!("object property {} {reason} (missing link)", vocab::local_name(member)),
                fix: Some(Fix {
                    additions,
                    removals: Vec::new(),
                }),
            });
        }
    }

    let layered = v.object_properties.iter().any(|p| v.property_depth(p) >= 2);
    if layered {
        for prop in &v.object_properties {
            let isolated = v.property_parents.get(prop).is_none_or(BTreeSet::is_empty) && !v.has_sub_properties(prop);
            if isolated && !m.covers(prop) {
                out.push(LintFinding {
                    rule_id: RuleId::ML01,
                    severity: Severity::Info,
                    subject: prop.clone(),
                    message: format!(
                        "object property {} is flat while the property hierarchy is layered; check for a missing hypernym",
                        vocab::local_name(prop)
                    ),
                    fix: None,
                });
            }
        }
    }
    out
}

fn name_words(name: &str) -> Vec<String> {
    let mut words = Vec::new();
    let mut current = String::new();
    let mut prev_lower = false;
    for c in name.chars() {
        if !c.is_alphanumeric() {
            if !current.is_empty() {
                words.push(std::mem::take(&mut current));
            }
            prev_lower = false;
            continue;
        }
        if c.is_uppercase() && prev_lower && !current.is_empty() {
            words.push(std::mem::take(&mut current));
        }
        prev_lower = c.is_lowercase() || c.is_ascii_digit();
        current.extend(c.to_lowercase());
    }
    if !current.is_empty() {
        words.push(current);
    }
    words
}

/// RG01: an anti-rigid class may not subsume a rigid one; classes named
/// like roles should be tagged anti-rigid.
pub fn rule_rigidity(v: &SchemaView, role_lexicon: &[String]) -> Vec<LintFinding> {
    let mut out = Vec::new();
    for (child, parents) in &v.class_parents {
        if v.rigidity_of(child) != RigidityTag::Rigid {
            continue;
        }
        for parent in parents {
            if v.rigidity_of(parent) == RigidityTag::AntiRigid {
                out.push(LintFinding {
                    rule_id: RuleId::RG01,
                    severity: Severity::Error,
                    subject: child.clone(),
                    message: format!(
                        "rigid class {} is subsumed by anti-rigid class {}",
                        v.display_name(child),
                        v.display_name(parent)
                    ),
                    fix: None,
                });
            }
        }
    }
    let lexicon: BTreeSet<String> = role_lexicon.iter().map(|w| w.to_lowercase()).collect();
    for class in &v.classes {
        if v.rigidity_of(class) == RigidityTag::AntiRigid {
            continue;
        }
        let name = v.display_name(class);
        if let Some(word) = name_words(name).into_iter().find(|w| lexicon.contains(w)) {
            out.push(LintFinding {
                rule_id: RuleId::RG01,
                severity: Severity::Warning,
                subject: class.clone(),
                message: format!("class {name} looks like a role ('{word}') but is not tagged anti-rigid"),
                fix: None,
            });
        }
    }
    out
}

/// PN01: an IRI used both as a class and as an individual.
pub fn rule_punning(v: &SchemaView) -> Vec<LintFinding> {
    v.classes
        .intersection(&v.individuals)
        .map(|iri| {
            let types: Vec<&str> = v
                .types
                .get(iri)
                .into_iter()
                .flatten()
                .map(|t| vocab::local_name(t))
                .collect();
            let as_individual = if types.is_empty() {
                "declared as an individual".to_owned()
            } else {
                format!("typed as {}", types.join(", "))
            };
            LintFinding {
                rule_id: RuleId::PN01,
                severity: Severity::Warning,
                subject: iri.clone(),
                message: format!(
                    "{} is used as a class and as an individual ({as_individual})",
                    vocab::local_name(iri)
                ),
                fix: None,
            }
        })
        .collect()
}

/// Classes that subclass something in one of the upper-ontology namespaces.
pub fn aligned_classes(v: &SchemaView, upper_namespaces: &[String]) -> Vec<(String, String)> {
    let mut out = Vec::new();
    for (child, parents) in &v.class_parents {
        for parent in parents {
            if upper_namespaces.iter().any(|ns| parent.starts_with(ns.as_str())) {
                out.push((child.clone(), parent.clone()));
            }
        }
    }
    out
}

/// Subject used for ontology-wide findings.
pub fn ontology_subject(v: &SchemaView) -> String {
    v.ontology_iri
        .clone()
        .or_else(|| v.local_namespaces.iter().next().cloned())
        .unwrap_or_else(|| vocab::GENOME_EXPORT_NODE.to_owned())
}

/// UA01: one summary finding on upper-ontology alignment.
pub fn rule_upper_alignment(v: &SchemaView, upper_namespaces: &[String], data_integration: bool) -> Vec<LintFinding> {
    let subject = ontology_subject(v);
    if upper_namespaces.is_empty() {
        return vec![LintFinding {
            rule_id: RuleId::UA01,
            severity: Severity::Info,
            subject,
            message: "alignment check skipped: no upper-ontology namespaces configured".to_owned(),
            fix: None,
        }];
    }
    let aligned = aligned_classes(v, upper_namespaces);
    let message = if aligned.is_empty() {
        format!(
            "aligned=false: no class subclasses a class in {}",
            upper_namespaces.join(", ")
        )
    } else {
        let examples: Vec<String> = aligned
            .iter()
            .take(5)
            .map(|(c, p)| format!("{} -> {p}", vocab::local_name(c)))
            .collect();
        format!("aligned=true: {} subclass axiom(s) into upper ontology ({})", aligned.len(), examples.join("; "))
    };
    let severity = if aligned.is_empty() && data_integration {
        Severity::Warning
    } else {
        Severity::Info
    };
    vec![LintFinding {
        rule_id: RuleId::UA01,
        severity,
        subject,
        message,
        fix: None,
    }]
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct NamespaceUse {
    pub namespace: String,
    pub count: usize,
    pub annotation_only: bool,
}

/// External namespaces referenced by the ontology, with usage counts.
pub fn namespace_reuse(v: &SchemaView) -> Vec<NamespaceUse> {
    let external = |ns: &str| {
        !ns.is_empty() && !vocab::LANGUAGE_NAMESPACES.contains(&ns) && !v.local_namespaces.contains(ns)
    };
    let mut out: Vec<NamespaceUse> = v
        .schema_namespace_usage
        .iter()
        .filter(|(ns, _)| external(ns))
        .map(|(ns, count)| NamespaceUse {
            namespace: ns.clone(),
            count: *count,
            annotation_only: false,
        })
        .collect();
    out.extend(
        v.annotation_namespace_usage
            .iter()
            .filter(|(ns, _)| external(ns) && !v.schema_namespace_usage.contains_key(*ns))
            .map(|(ns, count)| NamespaceUse {
                namespace: ns.clone(),
                count: *count,
                annotation_only: true,
            }),
    );
    out.sort_by(|a, b| a.namespace.cmp(&b.namespace));
    out
}

/// XR01: reports reused external vocabularies; nothing when there are none.
pub fn rule_external_reuse(v: &SchemaView) -> Vec<LintFinding> {
    let reuse = namespace_reuse(v);
    if reuse.is_empty() {
        return Vec::new();
    }
    let listing: Vec<String> = reuse
        .iter()
        .map(|u| {
            let tag = if u.annotation_only { ", annotation-only" } else { "" };
            format!("{} ({}{tag})", u.namespace, u.count)
        })
        .collect();
    vec![LintFinding {
        rule_id: RuleId::XR01,
        severity: Severity::Info,
        subject: ontology_subject(v),
        message: format!("reuses {} external namespace(s): {}", reuse.len(), listing.join(", ")),
        fix: None,
    }]
}
