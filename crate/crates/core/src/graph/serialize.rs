use std::fmt::Write;

use super::{Graph, Literal, PrefixMap, Term};
use crate::vocab;

pub(crate) fn escape_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            c => out.push(c),
        }
    }
    out
}

/// Local names we are willing to write in prefixed form. Conservative on
/// purpose: anything else falls back to `<...>`.
fn is_safe_local(local: &str) -> bool {
    let mut chars = local.chars();
    match chars.next() {
        None => true,
        Some(c) if c.is_ascii_alphanumeric() || c == '_' => {
            chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
        }
        Some(_) => false,
    }
}

fn compact(iri: &str, prefixes: &PrefixMap) -> String {
    let best = prefixes
        .iter()
        .filter(|(_, ns)| !ns.is_empty() && iri.starts_with(ns) && is_safe_local(&iri[ns.len()..]))
        .max_by_key(|(label, ns)| (ns.len(), std::cmp::Reverse(*label)));
    match best {
        Some((label, ns)) => format!("{label}:{}", &iri[ns.len()..]),
        None => format!("<{iri}>"),
    }
}

fn is_bare_integer(s: &str) -> bool {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    !digits.is_empty() && digits.chars().all(|c| c.is_ascii_digit())
}

fn is_bare_decimal(s: &str) -> bool {
    let body = s.strip_prefix(['+', '-']).unwrap_or(s);
    match body.split_once('.') {
        Some((int, frac)) => {
            int.chars().all(|c| c.is_ascii_digit()) && !frac.is_empty() && frac.chars().all(|c| c.is_ascii_digit())
        }
        None => false,
    }
}

fn literal(lit: &Literal, prefixes: &PrefixMap) -> String {
    let lexical = lit.lexical();
    match (lit.lang(), lit.datatype()) {
        (Some(lang), _) => format!("\"{}\"@{lang}", escape_string(lexical)),
        (None, vocab::XSD_STRING) => format!("\"{}\"", escape_string(lexical)),
        (None, vocab::XSD_INTEGER) if is_bare_integer(lexical) => lexical.to_owned(),
        (None, vocab::XSD_DECIMAL) if is_bare_decimal(lexical) => lexical.to_owned(),
        (None, dt) => format!("\"{}\"^^{}", escape_string(lexical), compact(dt, prefixes)),
    }
}

fn term(t: &Term, prefixes: &PrefixMap) -> String {
    match t {
        Term::Iri(iri) => compact(iri, prefixes),
        Term::Blank(label) => format!("_:{label}"),
        Term::Literal(lit) => literal(lit, prefixes),
    }
}

/// Writes the graph as Turtle. Prefix declarations come first, sorted by
/// label; statements follow in subject, predicate, object order so the
/// output is reproducible.
pub fn serialize_turtle(g: &Graph) -> String {
    let prefixes = g.prefixes();
    let mut out = String::new();
    for (label, ns) in prefixes.iter() {
        let _ = writeln!(out, "@prefix {label}: <{ns}> .");
    }
    let rdf_type = Term::iri(vocab::RDF_TYPE);
    let mut current_subject: Option<&Term> = None;
    let mut current_predicate: Option<&Term> = None;
    for triple in g.iter() {
        if current_subject != Some(&triple.subject) {
            if current_subject.is_some() {
                out.push_str(" .\n");
            }
            out.push('\n');
            out.push_str(&term(&triple.subject, prefixes));
            out.push(' ');
            current_subject = Some(&triple.subject);
            current_predicate = None;
        }
        if current_predicate == Some(&triple.predicate) {
            out.push_str(", ");
        } else {
            if current_predicate.is_some() {
                out.push_str(" ;\n    ");
            }
            if triple.predicate == rdf_type {
                out.push('a');
            } else {
                out.push_str(&term(&triple.predicate, prefixes));
            }
            out.push(' ');
            current_predicate = Some(&triple.predicate);
        }
        out.push_str(&term(&triple.object, prefixes));
    }
    if current_subject.is_some() {
        out.push_str(" .\n");
    }
    out
}
