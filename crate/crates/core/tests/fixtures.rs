mod common;

use std::collections::BTreeSet;

use common::*;
use genome_kit::cq::{decide_satisfaction, evaluate_corpus, evaluate_corpus_detailed, CqStatus, DecisionKind};
use genome_kit::enrich::{apply_patch, run_iteration, suggest_internal_fixes, IterationOptions, Provenance};
use genome_kit::graph::{graph_equal, parse_turtle, serialize_turtle};
use genome_kit::lint::{run_lint, LintConfig, RuleId, Severity};
use genome_kit::schema::{build_schema_view, classify_profile, ProfileKind, RelationshipMatrix};

/// Counts triples by expanding `;` and `,` by hand, one statement at a time.
/// Only valid for documents without separators inside literals.
fn hand_expanded_count(doc: &str) -> usize {
    let body: Vec<&str> = doc
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#') && !l.starts_with("@prefix"))
        .collect();
    let joined = body.join(" ");
    joined
        .split(" .")
        .filter(|s| !s.trim().is_empty())
        .map(|statement| statement.split(" ; ").map(|po| po.split(" , ").count()).sum::<usize>())
        .sum()
}

fn lines_declaring(doc: &str, what: &str) -> BTreeSet<String> {
    doc.lines()
        .filter(|l| l.starts_with(':'))
        .filter_map(|l| {
            let (subject, rest) = l.split_once(' ')?;
            rest.starts_with(&format!("a {what}")).then(|| subject.to_owned())
        })
        .collect()
}

#[test]
fn mini_epic_matches_hand_expansion() {
    let doc = read_fixture("mini_epic.ttl");
    let g = parse_turtle(&doc, None).unwrap();
    assert_eq!(hand_expanded_count(&doc), 21);
    assert_eq!(g.len(), hand_expanded_count(&doc));
}

#[test]
fn every_fixture_round_trips() {
    for name in TURTLE_FIXTURES {
        let g = load_graph(name);
        let text = serialize_turtle(&g);
        let back = parse_turtle(&text, None).unwrap_or_else(|e| panic!("{name}: {e}\n{text}"));
        assert!(graph_equal(&g, &back), "{name} does not round-trip");
        assert_eq!(serialize_turtle(&back), text, "{name} serialization is not stable");
    }
}

#[test]
fn schema_counts_match_a_line_scan() {
    let doc = read_fixture("mini_mahabharata.ttl");
    let v = build_schema_view(&parse_turtle(&doc, None).unwrap());
    let classes = lines_declaring(&doc, "owl:Class");
    let properties = lines_declaring(&doc, "owl:ObjectProperty");
    let individuals: BTreeSet<String> = doc
        .lines()
        .filter(|l| l.starts_with(':'))
        .filter_map(|l| {
            let mut words = l.split_whitespace();
            let subject = words.next()?;
            (words.next()? == "a" && words.next()?.starts_with(":")).then(|| subject.to_owned())
        })
        .collect();
    let local = |set: &BTreeSet<String>| -> BTreeSet<String> {
        set.iter().map(|iri| format!(":{}", iri.strip_prefix(EPIC_NS).unwrap())).collect()
    };
    assert_eq!(local(&v.classes), classes);
    assert_eq!(local(&v.object_properties), properties);
    assert_eq!(local(&v.individuals), individuals);
    assert_eq!((classes.len(), properties.len(), individuals.len()), (23, 17, 62));
}

#[test]
fn seeded_defects_give_exactly_eight_findings() {
    let g = load_graph("seeded_defects.ttl");
    let report = run_lint(&build_schema_view(&g), &matrix(), &LintConfig::default());
    let got: Vec<(RuleId, &str)> = report
        .findings
        .iter()
        .map(|f| (f.rule_id, f.subject.strip_prefix(EPIC_NS).unwrap()))
        .collect();
    assert_eq!(
        got,
        [
            (RuleId::DR01, "cursed"),
            (RuleId::DR01, "foughtAt"),
            (RuleId::DR01, "killed"),
            (RuleId::DR01, "wrote"),
            (RuleId::ML01, "hasHusband"),
            (RuleId::ML01, "hasWife"),
            (RuleId::RG01, "Person"),
            (RuleId::PN01, "Pandavas"),
        ]
    );
    assert_eq!(report.error_count(), 5);
    assert_eq!(report.count(Severity::Warning), 3);
}

#[test]
fn clean_fixture_has_no_findings() {
    let g = load_graph("clean.ttl");
    let report = run_lint(&build_schema_view(&g), &matrix(), &LintConfig::default());
    assert!(report.findings.is_empty(), "{:#?}", report.findings);
    assert!(report.notes.is_empty(), "{:?}", report.notes);
}

#[test]
fn mo_iitm_like_profile_and_review() {
    let g = load_graph("mo_iitm_like.ttl");
    let v = build_schema_view(&g);
    assert_eq!(classify_profile(&v).value, ProfileKind::Classification);

    let report = run_lint(&v, &RelationshipMatrix::new(), &LintConfig::default());
    assert_eq!(report.findings.len(), 4);
    assert!(report.findings.iter().all(|f| f.rule_id == RuleId::DR01));

    let config = LintConfig {
        upper_namespaces: vec!["http://www.loa.istc.cnr.it/ontologies/DOLCE-Lite.owl#".into()],
        ..LintConfig::default()
    };
    let report = run_lint(&v, &RelationshipMatrix::new(), &config);
    let ua: Vec<_> = report.findings_for(RuleId::UA01).collect();
    assert_eq!(ua.len(), 1);
    assert!(ua[0].message.starts_with("aligned=false"), "{}", ua[0].message);
}

#[test]
fn domain_range_fixes_with_defaults_are_eight_triples() {
    let g = load_graph("seeded_defects.ttl");
    let config = LintConfig {
        default_domain: Some(format!("{EPIC_NS}Character")),
        default_range: Some(format!("{EPIC_NS}Character")),
        enabled_rules: [RuleId::DR01].into_iter().collect(),
        ..LintConfig::default()
    };
    let report = run_lint(&build_schema_view(&g), &matrix(), &config);
    assert_eq!(report.findings.len(), 4);
    let patch = suggest_internal_fixes(&report);
    assert_eq!(patch.provenance, Provenance::Internal);
    assert_eq!(patch.additions().len(), 8);
    assert!(patch.removals().is_empty());
    let (fixed, _) = apply_patch(&g, &patch);
    let after = run_lint(&build_schema_view(&fixed), &matrix(), &config);
    assert!(after.findings.is_empty(), "{:#?}", after.findings);
}

#[test]
fn corpus_shape() {
    let cqs = corpus();
    assert_eq!(cqs.len(), 39);
    let table = evaluate_corpus(&load_graph("mini_mahabharata.ttl"), &cqs);
    assert_eq!(table.total.asked, 39);
    assert_eq!(table.total.repeats, 2);
    assert_eq!(table.descriptive_count, 4);
    assert_eq!(table.considered.unique, 33);
}

#[test]
fn two_round_trajectory() {
    let g = load_graph("mini_mahabharata.ttl");
    let cqs = corpus();
    let baseline = evaluate_corpus_detailed(&g, &cqs);
    assert_eq!(baseline.table.considered.answered, 16);
    assert_eq!(decide_satisfaction(&baseline.table, 0.30, 0.85).unwrap().value, DecisionKind::NeedsEnrichment);

    // the external patch alone stops just short of the threshold
    let (external_only, report) = apply_patch(&g, &external_patch());
    assert_eq!(report.removed, 1);
    let table = evaluate_corpus(&external_only, &cqs);
    assert_eq!(table.considered.answered, 28);
    assert_eq!(table.considered.pct_answered.to_string(), "84.8485");

    let options = IterationOptions {
        internal_fixes: true,
        ..IterationOptions::default()
    };
    let (out, log) = run_iteration(&g, &cqs, &matrix(), vec![external_patch()], &options);
    assert_eq!(log.records.len(), 2);
    assert_eq!(log.records[0].table.considered.pct_answered.to_string(), "48.4848");
    assert_eq!(log.records[1].table.considered.pct_answered.to_string(), "90.9091");
    assert_eq!(log.records[1].patches_applied.len(), 2);
    assert_eq!(log.decision.value, DecisionKind::Satisfactory);

    let after = evaluate_corpus_detailed(&out, &cqs);
    let unanswered: Vec<&str> = after.ids_with(CqStatus::Unanswered);
    assert_eq!(unanswered, ["cq17", "cq20", "cq24"]);
    for id in baseline.answered_ids() {
        assert!(after.answered_ids().contains(&id), "{id} lost its answer");
    }
}
