mod common;

use std::collections::BTreeSet;

use common::*;
use genome_kit::cq::evaluate_corpus_detailed;
use genome_kit::enrich::{apply_patch, Patch, Provenance};
use genome_kit::graph::{parse_turtle, Graph};
use genome_kit::lint::{run_lint, LintConfig, Severity};
use genome_kit::schema::build_schema_view;
use proptest::prelude::*;

const PROPERTIES: &[&str] = &["hasFather", "hasMother", "hasHusband", "hasWife", "hasBrother", "killed", "cursed"];
const FAMILIES: &[&str] = &["hasParent", "hasSpouse", "hasSibling"];

#[derive(Debug, Clone)]
struct PropSpec {
    domain: bool,
    range: bool,
    placed: bool,
}

fn ontology(props: &[PropSpec], families: &[bool]) -> Graph {
    let mut doc = format!(
        "@prefix : <{EPIC_NS}> .\n@prefix owl: <http://www.w3.org/2002/07/owl#> .\n\
         @prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n:Person a owl:Class .\n"
    );
    for (family, declared) in FAMILIES.iter().zip(families) {
        if *declared {
            doc.push_str(&format!(":{family} a owl:ObjectProperty ; rdfs:domain :Person ; rdfs:range :Person .\n"));
        }
    }
    let matrix = matrix();
    for (name, spec) in PROPERTIES.iter().zip(props) {
        doc.push_str(&format!(":{name} a owl:ObjectProperty .\n"));
        if spec.domain {
            doc.push_str(&format!(":{name} rdfs:domain :Person .\n"));
        }
        if spec.range {
            doc.push_str(&format!(":{name} rdfs:range :Person .\n"));
        }
        if spec.placed {
            if let Some(family) = matrix.family_of(&format!("{EPIC_NS}{name}")) {
                doc.push_str(&format!(":{name} rdfs:subPropertyOf <{family}> .\n"));
            }
        }
    }
    parse_turtle(&doc, None).unwrap()
}

fn prop_spec() -> impl Strategy<Value = PropSpec> {
    (any::<bool>(), any::<bool>(), any::<bool>()).prop_map(|(domain, range, placed)| PropSpec { domain, range, placed })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn each_fix_removes_its_finding(
        props in prop::collection::vec(prop_spec(), PROPERTIES.len()),
        families in prop::collection::vec(any::<bool>(), FAMILIES.len()),
    ) {
        let g = ontology(&props, &families);
        let config = LintConfig {
            default_domain: Some(format!("{EPIC_NS}Person")),
            default_range: Some(format!("{EPIC_NS}Person")),
            ..LintConfig::default()
        };
        let m = matrix();
        let report = run_lint(&build_schema_view(&g), &m, &config);
        for finding in report.findings.iter().filter(|f| f.fix.is_some()) {
            let mut fixed = g.clone();
            finding.fix.as_ref().unwrap().apply(&mut fixed);
            let after = run_lint(&build_schema_view(&fixed), &m, &config);
            prop_assert!(
                !after.findings.iter().any(|f| f.rule_id == finding.rule_id && f.subject == finding.subject),
                "fix did not remove {:?}", finding
            );
            let errors_before = report.findings.iter().filter(|f| f.subject == finding.subject && f.severity == Severity::Error).count();
            let errors_after = after.findings.iter().filter(|f| f.subject == finding.subject && f.severity == Severity::Error).count();
            prop_assert!(errors_after <= errors_before);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn additions_never_lose_answers(picks in prop::collection::vec(any::<prop::sample::Index>(), 1..40)) {
        let pool = candidate_pool();
        let base = load_graph("mini_mahabharata.ttl");
        let cqs = corpus();
        let additions: Graph = picks.iter().map(|i| i.get(&pool).clone()).collect();
        let patch = Patch::new(additions, Graph::new(), Provenance::External, "random").unwrap();
        let (after, _) = apply_patch(&base, &patch);
        let before: BTreeSet<String> = evaluate_corpus_detailed(&base, &cqs).answered_ids().into_iter().map(String::from).collect();
        let now: BTreeSet<String> = evaluate_corpus_detailed(&after, &cqs).answered_ids().into_iter().map(String::from).collect();
        prop_assert!(before.is_subset(&now), "lost {:?}", before.difference(&now).collect::<Vec<_>>());
    }
}
