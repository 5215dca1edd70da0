//! IRIs of the vocabularies the toolkit reads and writes.

pub const RDF: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
pub const RDFS: &str = "http://www.w3.org/2000/01/rdf-schema#";
pub const OWL: &str = "http://www.w3.org/2002/07/owl#";
pub const XSD: &str = "http://www.w3.org/2001/XMLSchema#";
pub const SKOS: &str = "http://www.w3.org/2004/02/skos/core#";

/// Tool namespace for rigidity tags and export provenance.
pub const GENOME: &str = "http://genome-kit.org/ns#";

pub const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
pub const RDF_PROPERTY: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#Property";
pub const RDF_LANG_STRING: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";

pub const RDFS_CLASS: &str = "http://www.w3.org/2000/01/rdf-schema#Class";
pub const RDFS_SUBCLASS_OF: &str = "http://www.w3.org/2000/01/rdf-schema#subClassOf";
pub const RDFS_SUBPROPERTY_OF: &str = "http://www.w3.org/2000/01/rdf-schema#subPropertyOf";
pub const RDFS_DOMAIN: &str = "http://www.w3.org/2000/01/rdf-schema#domain";
pub const RDFS_RANGE: &str = "http://www.w3.org/2000/01/rdf-schema#range";
pub const RDFS_LABEL: &str = "http://www.w3.org/2000/01/rdf-schema#label";
pub const RDFS_COMMENT: &str = "http://www.w3.org/2000/01/rdf-schema#comment";
pub const RDFS_LITERAL: &str = "http://www.w3.org/2000/01/rdf-schema#Literal";

pub const OWL_CLASS: &str = "http://www.w3.org/2002/07/owl#Class";
pub const OWL_OBJECT_PROPERTY: &str = "http://www.w3.org/2002/07/owl#ObjectProperty";
pub const OWL_DATATYPE_PROPERTY: &str = "http://www.w3.org/2002/07/owl#DatatypeProperty";
pub const OWL_ANNOTATION_PROPERTY: &str = "http://www.w3.org/2002/07/owl#AnnotationProperty";
pub const OWL_NAMED_INDIVIDUAL: &str = "http://www.w3.org/2002/07/owl#NamedIndividual";
pub const OWL_ONTOLOGY: &str = "http://www.w3.org/2002/07/owl#Ontology";
pub const OWL_THING: &str = "http://www.w3.org/2002/07/owl#Thing";
pub const OWL_INVERSE_OF: &str = "http://www.w3.org/2002/07/owl#inverseOf";

pub const XSD_STRING: &str = "http://www.w3.org/2001/XMLSchema#string";
pub const XSD_INTEGER: &str = "http://www.w3.org/2001/XMLSchema#integer";
pub const XSD_DECIMAL: &str = "http://www.w3.org/2001/XMLSchema#decimal";
pub const XSD_DATE_TIME: &str = "http://www.w3.org/2001/XMLSchema#dateTime";

pub const SKOS_PREF_LABEL: &str = "http://www.w3.org/2004/02/skos/core#prefLabel";
pub const SKOS_ALT_LABEL: &str = "http://www.w3.org/2004/02/skos/core#altLabel";
pub const SKOS_DEFINITION: &str = "http://www.w3.org/2004/02/skos/core#definition";

pub const GENOME_RIGIDITY: &str = "http://genome-kit.org/ns#rigidity";
pub const GENOME_PRIMARY_DEFINITION: &str = "http://genome-kit.org/ns#primaryDefinition";
pub const GENOME_COVERAGE_PERCENT: &str = "http://genome-kit.org/ns#coveragePercent";
pub const GENOME_ITERATION_COUNT: &str = "http://genome-kit.org/ns#iterationCount";
pub const GENOME_EXPORTED_AT: &str = "http://genome-kit.org/ns#exportedAt";
pub const GENOME_EXPORT_NODE: &str = "http://genome-kit.org/ns#fekr";

/// Classes whose instances are schema entities rather than domain individuals.
pub const METAMODEL_CLASSES: &[&str] = &[
    OWL_CLASS,
    RDFS_CLASS,
    OWL_OBJECT_PROPERTY,
    OWL_DATATYPE_PROPERTY,
    OWL_ANNOTATION_PROPERTY,
    RDF_PROPERTY,
    OWL_NAMED_INDIVIDUAL,
    OWL_ONTOLOGY,
];

/// Namespaces that belong to the modelling languages themselves. Usage of
/// these is never counted as vocabulary reuse.
pub const LANGUAGE_NAMESPACES: &[&str] = &[RDF, RDFS, OWL, XSD, GENOME];

pub const LEXICAL_ANNOTATIONS: &[&str] = &[
    RDFS_LABEL,
    RDFS_COMMENT,
    SKOS_PREF_LABEL,
    SKOS_ALT_LABEL,
    SKOS_DEFINITION,
];

pub fn is_metamodel_class(iri: &str) -> bool {
    METAMODEL_CLASSES.contains(&iri)
}

/// Splits an IRI into (namespace, local name) at the last `#` or `/`.
pub fn split_iri(iri: &str) -> (&str, &str) {
    match iri.rfind(['#', '/']) {
        Some(idx) => iri.split_at(idx + 1),
        None => match iri.find(':') {
            Some(idx) => iri.split_at(idx + 1),
            None => ("", iri),
        },
    }
}

pub fn local_name(iri: &str) -> &str {
    split_iri(iri).1
}

pub fn namespace_of(iri: &str) -> &str {
    split_iri(iri).0
}
