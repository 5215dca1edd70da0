use serde::Serialize;
use thiserror::Error;

use crate::cq::{Decision, DecisionKind, Percent};
use crate::graph::{serialize_turtle, Graph, Literal, Term, Triple};
use crate::vocab;

pub const FEKR_STATUS: &str = "FEKR";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExportError {
    #[error("export refused: the model is {decision} (coverage {coverage}%), a FEKR needs a satisfactory examination")]
    NotSatisfactory { decision: DecisionKind, coverage: String },
}

/// Provenance for an exported FEKR. Only obtainable from a satisfactory
/// decision.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FekrMetadata {
    status: &'static str,
    coverage: f64,
    iterations: usize,
    timestamp: String,
}

impl FekrMetadata {
    pub fn from_decision(decision: &Decision, iterations: usize, timestamp: impl Into<String>) -> Result<Self, ExportError> {
        if !decision.is_satisfactory() {
            return Err(ExportError::NotSatisfactory {
                decision: decision.value,
                coverage: coverage_percent(decision.coverage).to_string(),
            });
        }
        Ok(FekrMetadata {
            status: FEKR_STATUS,
            coverage: decision.coverage,
            iterations,
            timestamp: timestamp.into(),
        })
    }

    pub fn status(&self) -> &str {
        self.status
    }

    pub fn coverage(&self) -> f64 {
        self.coverage
    }

    pub fn iterations(&self) -> usize {
        self.iterations
    }

    pub fn timestamp(&self) -> &str {
        &self.timestamp
    }
}

fn coverage_percent(fraction: f64) -> Percent {
    Percent::from_units((fraction * 1_000_000.0).round() as u64)
}

/// The node that carries provenance: the first `owl:Ontology` subject, or
/// `genome:fekr` when the graph has no ontology header.
pub fn header_node(g: &Graph) -> Term {
    g.subjects(&Term::iri(vocab::RDF_TYPE), &Term::iri(vocab::OWL_ONTOLOGY))
        .into_iter()
        .next()
        .cloned()
        .unwrap_or_else(|| Term::iri(vocab::GENOME_EXPORT_NODE))
}

/// The three triples recorded on the header node.
pub fn provenance_triples(g: &Graph, meta: &FekrMetadata) -> Vec<Triple> {
    let node = header_node(g);
    let literal = |p: &str, lit: Literal| Triple::new(node.clone(), Term::iri(p), Term::Literal(lit));
    vec![
        literal(
            vocab::GENOME_COVERAGE_PERCENT,
            Literal::typed(coverage_percent(meta.coverage).to_string(), vocab::XSD_DECIMAL),
        ),
        literal(vocab::GENOME_ITERATION_COUNT, Literal::integer(meta.iterations as i64)),
        literal(
            vocab::GENOME_EXPORTED_AT,
            Literal::typed(meta.timestamp.clone(), vocab::XSD_DATE_TIME),
        ),
    ]
}

/// The graph with provenance on its header node, replacing provenance from
/// an earlier export.
pub fn fekr_graph(g: &Graph, meta: &FekrMetadata) -> Graph {
    let mut out = g.clone();
    let node = header_node(g);
    for p in [vocab::GENOME_COVERAGE_PERCENT, vocab::GENOME_ITERATION_COUNT, vocab::GENOME_EXPORTED_AT] {
        for t in out.match_triples(Some(&node), Some(&Term::iri(p)), None) {
            out.remove(&t);
        }
    }
    out.extend(provenance_triples(g, meta));
    if out.prefixes().get("genome").is_none() {
        out.prefixes_mut().insert("genome", vocab::GENOME);
    }
    if out.prefixes().get("xsd").is_none() {
        out.prefixes_mut().insert("xsd", vocab::XSD);
    }
    out
}

pub fn export_fekr(g: &Graph, meta: &FekrMetadata) -> String {
    serialize_turtle(&fekr_graph(g, meta))
}
