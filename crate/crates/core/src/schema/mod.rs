//! Ontology-level view derived from a graph: class and property
//! hierarchies, domains and ranges, individuals and rigidity tags.

mod matrix;
mod profile;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, Term};
use crate::vocab;

pub use matrix::{MatrixError, RelationshipMatrix};
pub use profile::{classify_profile, classify_profile_with, OntologyProfile, ProfileKind, ProfileThresholds};

/// OntoClean rigidity metaproperty as read from `genome:rigidity`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum RigidityTag {
    Rigid,
    AntiRigid,
    #[default]
    Unspecified,
}

impl RigidityTag {
    /// Accepts `rigid` and `antiRigid` (also `anti_rigid`, `anti-rigid`), case-insensitively.
    pub fn from_token(token: &str) -> Self {
        match token.to_ascii_lowercase().replace(['_', '-'], "").as_str() {
            "rigid" => RigidityTag::Rigid,
            "antirigid" => RigidityTag::AntiRigid,
            _ => RigidityTag::Unspecified,
        }
    }
}

/// Raw axiom tallies used by the profile classifier.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomMetrics {
    pub subclass_axioms: usize,
    pub data_property_assertions: usize,
    pub lexical_annotations: usize,
    /// Every triple except metamodel declarations (`x a owl:Class` etc.)
    /// and tool annotations in the `genome:` namespace.
    pub total_axioms: usize,
}

type MultiMap = BTreeMap<String, BTreeSet<String>>;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemaView {
    pub classes: BTreeSet<String>,
    pub class_parents: MultiMap,
    pub object_properties: BTreeSet<String>,
    pub data_properties: BTreeSet<String>,
    pub property_parents: MultiMap,
    pub domains: MultiMap,
    pub ranges: MultiMap,
    pub individuals: BTreeSet<String>,
    pub types: MultiMap,
    pub rigidity: BTreeMap<String, RigidityTag>,
    pub labels: BTreeMap<String, String>,
    /// Subjects with no type that are never used as a class or property.
    /// They are counted as individuals and surfaced as review notes.
    pub untyped_individuals: BTreeSet<String>,
    /// Namespaces of IRIs used in schema axioms, with usage counts.
    pub schema_namespace_usage: BTreeMap<String, usize>,
    /// Namespaces of predicates used outside schema axioms and property
    /// assertions (annotations).
    pub annotation_namespace_usage: BTreeMap<String, usize>,
    /// IRI of the `owl:Ontology` header node, if any (smallest when several).
    pub ontology_iri: Option<String>,
    /// The ontology's own namespaces (default prefix, base, header IRI).
    pub local_namespaces: BTreeSet<String>,
    pub metrics: AxiomMetrics,
}

fn add(map: &mut MultiMap, key: &str, value: &str) {
    map.entry(key.to_owned()).or_default().insert(value.to_owned());
}

fn is_datatype_iri(iri: &str) -> bool {
    iri.starts_with(vocab::XSD) || iri == vocab::RDFS_LITERAL || iri == vocab::RDF_LANG_STRING
}

fn is_annotation_predicate(iri: &str) -> bool {
    vocab::LEXICAL_ANNOTATIONS.contains(&iri) || iri.starts_with(vocab::GENOME)
}

/// Derives the schema view. The graph is not modified.
pub fn build_schema_view(g: &Graph) -> SchemaView {
    let mut v = SchemaView::default();
    let mut declared_data = BTreeSet::new();
    let mut declared_object = BTreeSet::new();
    let mut untyped_candidates = BTreeSet::new();
    let mut typed = BTreeSet::new();
    let mut ontology_headers = BTreeSet::new();
    let mut best_labels: BTreeMap<String, (bool, String)> = BTreeMap::new();

    for t in g.iter() {
        let Term::Iri(p) = &t.predicate else { continue };
        let s = t.subject.as_iri();
        let o = t.object.as_iri();
        match (p.as_str(), s, o) {
            (vocab::RDF_TYPE, Some(s), Some(o)) => {
                typed.insert(s.to_owned());
                match o {
                    vocab::OWL_CLASS | vocab::RDFS_CLASS => {
                        v.classes.insert(s.to_owned());
                    }
                    vocab::OWL_OBJECT_PROPERTY | vocab::RDF_PROPERTY => {
                        declared_object.insert(s.to_owned());
                    }
                    vocab::OWL_DATATYPE_PROPERTY => {
                        declared_data.insert(s.to_owned());
                    }
                    vocab::OWL_NAMED_INDIVIDUAL => {
                        v.individuals.insert(s.to_owned());
                    }
                    vocab::OWL_ONTOLOGY => {
                        ontology_headers.insert(s.to_owned());
                    }
                    o if vocab::is_metamodel_class(o) => {}
                    o => {
                        v.classes.insert(o.to_owned());
                        v.individuals.insert(s.to_owned());
                        add(&mut v.types, s, o);
                    }
                }
            }
            (vocab::RDFS_SUBCLASS_OF, Some(s), Some(o)) => {
                v.classes.insert(s.to_owned());
                v.classes.insert(o.to_owned());
                add(&mut v.class_parents, s, o);
            }
            (vocab::RDFS_SUBPROPERTY_OF, Some(s), Some(o)) => add(&mut v.property_parents, s, o),
            (vocab::RDFS_DOMAIN, Some(s), Some(o)) => add(&mut v.domains, s, o),
            (vocab::RDFS_RANGE, Some(s), Some(o)) => add(&mut v.ranges, s, o),
            (vocab::GENOME_RIGIDITY, Some(s), _) => {
                if let Some(lit) = t.object.as_literal() {
                    v.rigidity.insert(s.to_owned(), RigidityTag::from_token(lit.lexical()));
                }
            }
            (vocab::RDFS_LABEL, Some(s), _) => {
                if let Some(lit) = t.object.as_literal() {
                    // prefer untagged or English labels, then the smallest
                    let rank = (!matches!(lit.lang(), None | Some("en")), lit.lexical().to_owned());
                    let entry = best_labels.entry(s.to_owned()).or_insert_with(|| rank.clone());
                    if rank < *entry {
                        *entry = rank;
                    }
                }
            }
            _ => {}
        }
        if let Some(s) = s {
            untyped_candidates.insert(s.to_owned());
        }

        let is_declaration = p == vocab::RDF_TYPE && o.is_some_and(vocab::is_metamodel_class);
        if !is_declaration && !p.starts_with(vocab::GENOME) {
            v.metrics.total_axioms += 1;
        }
        if p == vocab::RDFS_SUBCLASS_OF {
            v.metrics.subclass_axioms += 1;
        }
        if vocab::LEXICAL_ANNOTATIONS.contains(&p.as_str()) {
            v.metrics.lexical_annotations += 1;
        }
    }

    // Properties that only appear in hierarchy or domain/range axioms.
    let mentioned: BTreeSet<String> = v
        .property_parents
        .iter()
        .flat_map(|(child, parents)| std::iter::once(child).chain(parents))
        .chain(v.domains.keys())
        .chain(v.ranges.keys())
        .cloned()
        .collect();
    for prop in mentioned {
        if declared_data.contains(&prop) || declared_object.contains(&prop) {
            continue;
        }
        let literal_range = v
            .ranges
            .get(&prop)
            .is_some_and(|r| !r.is_empty() && r.iter().all(|x| is_datatype_iri(x)));
        if literal_range {
            declared_data.insert(prop);
        } else {
            declared_object.insert(prop);
        }
    }
    v.labels = best_labels.into_iter().map(|(k, (_, l))| (k, l)).collect();
    v.object_properties = declared_object;
    v.data_properties = declared_data;

    for t in g.iter() {
        let Term::Iri(p) = &t.predicate else { continue };
        if v.data_properties.contains(p) {
            v.metrics.data_property_assertions += 1;
        }
    }

    for s in untyped_candidates {
        let used_as_schema = v.classes.contains(&s)
            || v.object_properties.contains(&s)
            || v.data_properties.contains(&s)
            || ontology_headers.contains(&s);
        if !typed.contains(&s) && !used_as_schema && !is_annotation_predicate(&s) {
            v.individuals.insert(s.clone());
            v.untyped_individuals.insert(s);
        }
    }

    tally_namespaces(g, &mut v, &ontology_headers);
    v.ontology_iri = ontology_headers.into_iter().next();
    v
}

fn tally_namespaces(g: &Graph, v: &mut SchemaView, ontology_headers: &BTreeSet<String>) {
    let is_schema_entity = |iri: &str| {
        v.classes.contains(iri) || v.object_properties.contains(iri) || v.data_properties.contains(iri)
    };
    let mut schema: BTreeMap<String, usize> = BTreeMap::new();
    let mut annotation: BTreeMap<String, usize> = BTreeMap::new();
    for t in g.iter() {
        let Term::Iri(p) = &t.predicate else { continue };
        let schema_axiom = matches!(
            p.as_str(),
            vocab::RDFS_SUBCLASS_OF | vocab::RDFS_SUBPROPERTY_OF | vocab::RDFS_DOMAIN | vocab::RDFS_RANGE
        ) || (p == vocab::RDF_TYPE && t.subject.as_iri().is_some_and(is_schema_entity));
        if schema_axiom {
            let iris = [t.subject.as_iri(), Some(p.as_str()), t.object.as_iri()];
            for iri in iris.into_iter().flatten() {
                *schema.entry(vocab::namespace_of(iri).to_owned()).or_default() += 1;
            }
        } else if p != vocab::RDF_TYPE && !v.object_properties.contains(p) && !v.data_properties.contains(p) {
            *annotation.entry(vocab::namespace_of(p).to_owned()).or_default() += 1;
        }
    }
    v.schema_namespace_usage = schema;
    v.annotation_namespace_usage = annotation;

    let mut local = BTreeSet::new();
    if let Some(ns) = g.prefixes().get("") {
        local.insert(ns.to_owned());
    }
    if let Some(base) = g.prefixes().base() {
        local.insert(base.to_owned());
    }
    for header in ontology_headers {
        local.insert(vocab::namespace_of(header).to_owned());
        local.insert(format!("{header}#"));
        local.insert(format!("{header}/"));
    }
    if local.is_empty() {
        // fall back to the namespace declaring the most schema entities
        let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
        for iri in v.classes.iter().chain(&v.object_properties).chain(&v.data_properties) {
            *counts.entry(vocab::namespace_of(iri)).or_default() += 1;
        }
        if let Some((ns, _)) = counts.into_iter().max_by_key(|(ns, n)| (*n, std::cmp::Reverse(*ns))) {
            local.insert(ns.to_owned());
        }
    }
    v.local_namespaces = local;
}

impl SchemaView {
    pub fn is_property(&self, iri: &str) -> bool {
        self.object_properties.contains(iri) || self.data_properties.contains(iri)
    }

    pub fn rigidity_of(&self, iri: &str) -> RigidityTag {
        self.rigidity.get(iri).copied().unwrap_or_default()
    }

    /// Every transitive super-property of `prop` (cycle-safe).
    pub fn property_ancestors(&self, prop: &str) -> BTreeSet<String> {
        ancestors(&self.property_parents, prop)
    }

    pub fn class_ancestors(&self, class: &str) -> BTreeSet<String> {
        ancestors(&self.class_parents, class)
    }

    /// Length of the longest super-property chain above `prop`; roots are 0.
    pub fn property_depth(&self, prop: &str) -> usize {
        fn walk(v: &SchemaView, p: &str, seen: &mut Vec<String>) -> usize {
            if seen.iter().any(|s| s == p) {
                return 0;
            }
            seen.push(p.to_owned());
            let depth = v
                .property_parents
                .get(p)
                .map(|ps| ps.iter().map(|q| 1 + walk(v, q, seen)).max().unwrap_or(0))
                .unwrap_or(0);
            seen.pop();
            depth
        }
        walk(self, prop, &mut Vec::new())
    }

    pub fn has_sub_properties(&self, prop: &str) -> bool {
        self.property_parents.values().any(|ps| ps.contains(prop))
    }

    /// Display name for an entity: its label, else the local name.
    pub fn display_name<'a>(&'a self, iri: &'a str) -> &'a str {
        self.labels.get(iri).map(String::as_str).unwrap_or_else(|| vocab::local_name(iri))
    }

    /// Fraction of classes carrying an explicit rigid or anti-rigid tag.
    pub fn rigidity_coverage(&self) -> f64 {
        if self.classes.is_empty() {
            return 0.0;
        }
        let tagged = self
            .classes
            .iter()
            .filter(|c| self.rigidity_of(c) != RigidityTag::Unspecified)
            .count();
        tagged as f64 / self.classes.len() as f64
    }
}

fn ancestors(parents: &MultiMap, start: &str) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    let mut stack = vec![start.to_owned()];
    while let Some(node) = stack.pop() {
        for p in parents.get(&node).into_iter().flatten() {
            if out.insert(p.clone()) {
                stack.push(p.clone());
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_turtle;

    const PRELUDE: &str = "@prefix : <http://e/> .
@prefix rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#> .
@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .
@prefix owl: <http://www.w3.org/2002/07/owl#> .
@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .
@prefix genome: <http://genome-kit.org/ns#> .
";

    fn view(body: &str) -> SchemaView {
        build_schema_view(&parse_turtle(&format!("{PRELUDE}{body}"), None).unwrap())
    }

    #[test]
    fn empty_graph_gives_empty_view() {
        assert_eq!(build_schema_view(&Graph::new()), SchemaView::default());
    }

    #[test]
    fn subproperty_edges_are_read_off() {
        let v = view(":Father rdfs:subPropertyOf :Parent .");
        assert!(v.property_parents["http://e/Father"].contains("http://e/Parent"));
        assert!(v.object_properties.contains("http://e/Father"));
        assert!(v.object_properties.contains("http://e/Parent"));
    }

    #[test]
    fn roles_from_declarations_and_usage() {
        let v = view(
            ":Person a owl:Class .
             :Warrior rdfs:subClassOf :Person .
             :age a owl:DatatypeProperty ; rdfs:domain :Person ; rdfs:range xsd:integer .
             :height rdfs:range xsd:decimal .
             :knows rdfs:domain :Person .
             :Arjuna a :Warrior ; :age 30 ; :knows :Krishna .
             :Krishna :knows :Arjuna .",
        );
        assert_eq!(
            v.classes,
            ["http://e/Person", "http://e/Warrior"].map(String::from).into()
        );
        assert!(v.data_properties.contains("http://e/age"));
        assert!(v.data_properties.contains("http://e/height"));
        assert!(v.object_properties.contains("http://e/knows"));
        assert!(v.individuals.contains("http://e/Arjuna"));
        assert!(v.individuals.contains("http://e/Krishna"));
        assert_eq!(v.untyped_individuals, ["http://e/Krishna".to_owned()].into());
        assert_eq!(v.metrics.data_property_assertions, 1);
        assert_eq!(v.metrics.subclass_axioms, 1);
        for key in v.domains.keys().chain(v.ranges.keys()) {
            assert!(v.is_property(key), "{key}");
        }
    }

    #[test]
    fn rigidity_annotations() {
        let v = view(
            ":Person genome:rigidity \"rigid\" .
             :Charioteer genome:rigidity \"antiRigid\" .
             :Person a owl:Class . :Charioteer a owl:Class . :Horse a owl:Class .",
        );
        assert_eq!(v.rigidity_of("http://e/Person"), RigidityTag::Rigid);
        assert_eq!(v.rigidity_of("http://e/Charioteer"), RigidityTag::AntiRigid);
        assert_eq!(v.rigidity_of("http://e/Horse"), RigidityTag::Unspecified);
        assert!((v.rigidity_coverage() - 2.0 / 3.0).abs() < 1e-12);
        assert_eq!(RigidityTag::from_token("ANTI_RIGID"), RigidityTag::AntiRigid);
    }

    #[test]
    fn depth_and_ancestors() {
        let v = view(":c rdfs:subPropertyOf :b . :b rdfs:subPropertyOf :a . :x rdfs:subPropertyOf :x .");
        assert_eq!(v.property_depth("http://e/c"), 2);
        assert_eq!(v.property_depth("http://e/a"), 0);
        assert_eq!(v.property_ancestors("http://e/c").len(), 2);
        // self loops terminate
        assert_eq!(v.property_depth("http://e/x"), 1);
    }

    #[test]
    fn labels_prefer_english() {
        let v = view(":a rdfs:label \"Zeta\"@hi, \"Alpha\"@en .");
        assert_eq!(v.labels["http://e/a"], "Alpha");
        assert_eq!(v.display_name("http://e/a"), "Alpha");
        assert_eq!(v.display_name("http://e/b"), "b");
    }

    #[test]
    fn building_twice_is_identical() {
        let g = parse_turtle(&format!("{PRELUDE}:A rdfs:subClassOf :B . :x a :A ."), None).unwrap();
        let before = g.len();
        assert_eq!(build_schema_view(&g), build_schema_view(&g));
        assert_eq!(g.len(), before);
    }
}
