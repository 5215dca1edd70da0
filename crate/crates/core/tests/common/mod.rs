#![allow(dead_code)]

pub mod stats_cases;

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use genome_kit::cq::{dedup_corpus, parse_cq_corpus, Cq};
use genome_kit::enrich::{load_patch_dir, Patch};
use genome_kit::graph::{parse_turtle, Graph, Term, Triple};
use genome_kit::schema::RelationshipMatrix;

pub const EPIC_NS: &str = "http://example.org/epic#";

pub const TURTLE_FIXTURES: &[&str] = &[
    "mini_epic.ttl",
    "mini_mahabharata.ttl",
    "seeded_defects.ttl",
    "clean.ttl",
    "mo_iitm_like.ttl",
    "patches/external/add.ttl",
    "patches/external/remove.ttl",
];

pub fn fixture_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn read_fixture(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn load_graph(name: &str) -> Graph {
    parse_turtle(&read_fixture(name), None).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn matrix() -> RelationshipMatrix {
    RelationshipMatrix::parse(&read_fixture("relationship_matrix.txt")).unwrap()
}

pub fn corpus() -> Vec<Cq> {
    dedup_corpus(parse_cq_corpus(&read_fixture("mini_mahabharata_cqs.tsv")).unwrap())
}

pub fn external_patch() -> Patch {
    load_patch_dir(&fixture_path("patches/external")).unwrap()
}

/// Candidate triples built from the terms of the mini epic and its patch,
/// for random additions-only patches.
pub fn candidate_pool() -> Vec<Triple> {
    let base = load_graph("mini_mahabharata.ttl");
    let extra = external_patch();
    let mut nodes: BTreeSet<Term> = BTreeSet::new();
    let mut predicates: BTreeSet<Term> = BTreeSet::new();
    for t in base.iter().chain(extra.additions().iter()) {
        nodes.insert(t.subject.clone());
        predicates.insert(t.predicate.clone());
        nodes.insert(t.object.clone());
    }
    let nodes: Vec<Term> = nodes.into_iter().filter(|n| n.as_iri().is_some()).collect();
    let literals = [Term::string("Sairandhri"), Term::string("female")];
    let mut pool = Vec::new();
    for (i, s) in nodes.iter().enumerate().step_by(3) {
        for (j, p) in predicates.iter().enumerate() {
            let o = if j % 5 == 0 { &literals[(i + j) % 2] } else { &nodes[(i * 7 + j * 13) % nodes.len()] };
            pool.push(Triple::new(s.clone(), p.clone(), o.clone()));
        }
    }
    pool.extend(extra.additions().iter().cloned());
    pool
}
