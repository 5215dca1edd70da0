use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::patch::{apply_patch, suggest_internal_fixes, Patch};
use crate::cq::{decide_with, evaluate_corpus, CoverageTable, Cq, Decision, DecisionKind, Thresholds};
use crate::graph::Graph;
use crate::lint::{run_lint, LintConfig, LintReport};
use crate::schema::{build_schema_view, RelationshipMatrix};

/// The outcome of one evaluation pass.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterationRecord {
    pub index: usize,
    pub coverage: f64,
    pub decision: Decision,
    /// Notes of the patches applied to reach this pass.
    pub patches_applied: Vec<String>,
    pub lint_error_count: usize,
    pub table: CoverageTable,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterationLog {
    pub records: Vec<IterationRecord>,
    pub decision: Decision,
    /// Set when `max_iters` passes ran out while enrichment was still needed
    /// and patches were still queued.
    pub truncated: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IterationOptions {
    pub thresholds: Thresholds,
    /// Upper bound on evaluation passes, at least 1.
    pub max_iters: usize,
    /// Apply lint auto-fixes together with each queued patch.
    pub internal_fixes: bool,
    pub lint: LintConfig,
}

impl Default for IterationOptions {
    fn default() -> Self {
        IterationOptions {
            thresholds: Thresholds::default(),
            max_iters: 5,
            internal_fixes: false,
            lint: LintConfig::default(),
        }
    }
}

fn lint(g: &Graph, matrix: &RelationshipMatrix, config: &LintConfig) -> LintReport {
    run_lint(&build_schema_view(g), matrix, config)
}

/// Evaluate, decide, and while enrichment is needed apply the next queued
/// patch (plus internal fixes when enabled) and evaluate again.
pub fn run_iteration(
    g: &Graph,
    corpus: &[Cq],
    matrix: &RelationshipMatrix,
    patch_queue: Vec<Patch>,
    options: &IterationOptions,
) -> (Graph, IterationLog) {
    let max_iters = options.max_iters.max(1);
    let mut graph = g.clone();
    let mut queue: VecDeque<Patch> = patch_queue.into();
    let mut records: Vec<IterationRecord> = Vec::new();
    let mut pending: Vec<String> = Vec::new();
    let mut truncated = false;
    loop {
        let table = evaluate_corpus(&graph, corpus);
        let decision = decide_with(&table, options.thresholds);
        records.push(IterationRecord {
            index: records.len(),
            coverage: decision.coverage,
            decision: decision.clone(),
            patches_applied: std::mem::take(&mut pending),
            lint_error_count: lint(&graph, matrix, &options.lint).error_count(),
            table,
        });
        if decision.value != DecisionKind::NeedsEnrichment || queue.is_empty() {
            break;
        }
        if records.len() >= max_iters {
            truncated = true;
            break;
        }
        let patch = queue.pop_front().expect("queue is non-empty");
        graph = apply_patch(&graph, &patch).0;
        pending.push(patch.note);
        if options.internal_fixes {
            let fixes = suggest_internal_fixes(&lint(&graph, matrix, &options.lint));
            if !fixes.is_empty() {
                graph = apply_patch(&graph, &fixes).0;
                pending.push(fixes.note);
            }
        }
    }
    let decision = records.last().expect("at least one pass").decision.clone();
    (
        graph,
        IterationLog {
            records,
            decision,
            truncated,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cq::parse_cq_corpus;
    use crate::enrich::patch::{parse_patch, Provenance};
    use crate::graph::parse_turtle;

    const P: &str = "@prefix : <http://e/> .\n";

    fn corpus() -> Vec<Cq> {
        let doc = "@prefix : <http://e/> .\n\
            q1\tA\tfactual\t-\tWho fathered Karna?\t?x :fatherOf :Karna .\n\
            q2\tA\tfactual\t-\tWho mothered Karna?\t?x :motherOf :Karna .\n\
            q3\tB\tfactual\t-\tWhom did Karna marry?\t:Karna :hasSpouse ?x .\n\
            q4\tB\tfactual\t-\tWho taught Karna?\t?x :teacherOf :Karna .\n";
        parse_cq_corpus(doc).unwrap()
    }

    fn graph(body: &str) -> Graph {
        parse_turtle(&format!("{P}{body}"), None).unwrap()
    }

    #[test]
    fn already_satisfactory() {
        let g = graph(":Surya :fatherOf :Karna . :Kunti :motherOf :Karna . :Karna :hasSpouse :Vrushali . :Parashurama :teacherOf :Karna .");
        let patch = parse_patch("", "", Provenance::External, "unused").unwrap();
        let (_, log) = run_iteration(&g, &corpus(), &RelationshipMatrix::new(), vec![patch], &IterationOptions::default());
        assert_eq!(log.records.len(), 1);
        assert_eq!(log.decision.value, DecisionKind::Satisfactory);
        assert!(log.records[0].patches_applied.is_empty());
    }

    #[test]
    fn empty_queue_stops_at_needs_enrichment() {
        let g = graph(":Surya :fatherOf :Karna . :Kunti :motherOf :Karna .");
        let (out, log) = run_iteration(&g, &corpus(), &RelationshipMatrix::new(), Vec::new(), &IterationOptions::default());
        assert_eq!(log.records.len(), 1);
        assert_eq!(log.decision.value, DecisionKind::NeedsEnrichment);
        assert!(!log.truncated);
        assert_eq!(out.len(), g.len());
    }

    #[test]
    fn unsatisfactory_stops() {
        let g = graph(":Surya :fatherOf :Arjuna .");
        let patch = parse_patch(&format!("{P} :Kunti :motherOf :Karna ."), "", Provenance::External, "p").unwrap();
        let (_, log) = run_iteration(&g, &corpus(), &RelationshipMatrix::new(), vec![patch], &IterationOptions::default());
        assert_eq!(log.decision.value, DecisionKind::Unsatisfactory);
        assert_eq!(log.records.len(), 1);
    }

    #[test]
    fn patches_raise_coverage_until_satisfied() {
        let g = graph(":Surya :fatherOf :Karna . :Kunti :motherOf :Karna .");
        let p1 = parse_patch(&format!("{P} :Karna :hasSpouse :Vrushali ."), "", Provenance::External, "spouse").unwrap();
        let p2 = parse_patch(&format!("{P} :Parashurama :teacherOf :Karna ."), "", Provenance::External, "teacher").unwrap();
        let unused = parse_patch(&format!("{P} :x :y :z ."), "", Provenance::External, "unused").unwrap();
        let (out, log) = run_iteration(&g, &corpus(), &RelationshipMatrix::new(), vec![p1, p2, unused], &IterationOptions::default());
        let coverages: Vec<f64> = log.records.iter().map(|r| r.coverage).collect();
        assert_eq!(coverages, [0.5, 0.75, 1.0]);
        assert_eq!(log.records[2].patches_applied, ["teacher"]);
        assert_eq!(log.decision.value, DecisionKind::Satisfactory);
        assert_eq!(out.len(), g.len() + 2);
        for (i, r) in log.records.iter().enumerate() {
            assert_eq!(r.index, i);
        }
    }

    #[test]
    fn truncation() {
        let g = graph(":Surya :fatherOf :Karna . :Kunti :motherOf :Karna .");
        let p1 = parse_patch(&format!("{P} :a :b :c ."), "", Provenance::External, "noop").unwrap();
        let options = IterationOptions {
            max_iters: 2,
            ..Default::default()
        };
        let (_, log) = run_iteration(&g, &corpus(), &RelationshipMatrix::new(), vec![p1.clone(), p1.clone(), p1], &options);
        assert_eq!(log.records.len(), 2);
        assert!(log.truncated);
    }

    #[test]
    fn internal_fixes_ride_along() {
        let g = parse_turtle(
            "@prefix : <http://e/> . @prefix owl: <http://www.w3.org/2002/07/owl#> .
             :Surya :fatherOf :Karna . :Kunti :motherOf :Karna .
             :hasHusband a owl:ObjectProperty .",
            None,
        )
        .unwrap();
        let p1 = parse_patch(&format!("{P} :Karna :hasSpouse :Vrushali ."), "", Provenance::External, "spouse").unwrap();
        let options = IterationOptions {
            internal_fixes: true,
            ..Default::default()
        };
        let (out, log) = run_iteration(&g, &corpus(), &RelationshipMatrix::kinship("http://e/"), vec![p1], &options);
        assert_eq!(log.records.len(), 2);
        assert_eq!(log.records[1].patches_applied.len(), 2);
        assert!(out.contains(&crate::graph::Triple::iris(
            "http://e/hasHusband",
            crate::vocab::RDFS_SUBPROPERTY_OF,
            "http://e/hasSpouse"
        )));
    }
}
