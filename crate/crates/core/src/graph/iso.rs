//! Graph equality modulo blank-node relabelling.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::hash::{Hash, Hasher};

use super::{Graph, Term, Triple};

/// True iff the two graphs are isomorphic under a bijection of blank-node
/// labels. For blank-free graphs this is triple-set equality.
pub fn graph_equal(g1: &Graph, g2: &Graph) -> bool {
    if g1.len() != g2.len() {
        return false;
    }
    let (ground1, blank1): (Vec<&Triple>, Vec<&Triple>) = g1.iter().partition(|t| !t.has_blank());
    let (ground2, blank2): (Vec<&Triple>, Vec<&Triple>) = g2.iter().partition(|t| !t.has_blank());
    if ground1 != ground2 || blank1.len() != blank2.len() {
        return false;
    }
    if blank1.is_empty() {
        return true;
    }
    let colors1 = refine_colors(&blank1);
    let colors2 = refine_colors(&blank2);
    let histogram = |c: &BTreeMap<&str, u64>| {
        let mut h: Vec<u64> = c.values().copied().collect();
        h.sort_unstable();
        h
    };
    if histogram(&colors1) != histogram(&colors2) {
        return false;
    }
    let target: HashSet<&Triple> = blank2.iter().copied().collect();
    let mut order: Vec<&str> = colors1.keys().copied().collect();
    // most distinctive colours first keeps the search narrow
    let mut class_size: HashMap<u64, usize> = HashMap::new();
    for c in colors1.values() {
        *class_size.entry(*c).or_default() += 1;
    }
    order.sort_by_key(|b| (class_size[&colors1[b]], *b));
    let mut search = Search {
        order,
        colors1: &colors1,
        colors2: &colors2,
        source: &blank1,
        target: &target,
        mapping: HashMap::new(),
        used: HashSet::new(),
    };
    search.extend(0)
}

fn hash_of<T: Hash>(value: &T) -> u64 {
    let mut h = DefaultHasher::new();
    value.hash(&mut h);
    h.finish()
}

/// Iterated neighbourhood hashing: each blank node's colour folds in the
/// ground terms around it and, after the first round, its blank neighbours'
/// colours.
fn refine_colors<'a>(triples: &[&'a Triple]) -> BTreeMap<&'a str, u64> {
    let mut colors: BTreeMap<&str, u64> = BTreeMap::new();
    for t in triples {
        for term in [&t.subject, &t.object] {
            if let Term::Blank(label) = term {
                colors.insert(label, 0);
            }
        }
    }
    let rounds = colors.len().min(4) + 1;
    for _ in 0..rounds {
        let mut signatures: BTreeMap<&str, Vec<u64>> = BTreeMap::new();
        for t in triples {
            let view = |term: &Term, colors: &BTreeMap<&str, u64>| match term {
                Term::Blank(label) => hash_of(&("b", colors[label.as_str()])),
                other => hash_of(&("g", other)),
            };
            let s = view(&t.subject, &colors);
            let o = view(&t.object, &colors);
            if let Term::Blank(label) = &t.subject {
                signatures.entry(label).or_default().push(hash_of(&(0u8, &t.predicate, o)));
            }
            if let Term::Blank(label) = &t.object {
                signatures.entry(label).or_default().push(hash_of(&(1u8, &t.predicate, s)));
            }
        }
        for (label, mut sig) in signatures {
            sig.sort_unstable();
            let old = colors[label];
            colors.insert(label, hash_of(&(old, sig)));
        }
    }
    colors
}

struct Search<'a, 'g> {
    order: Vec<&'g str>,
    colors1: &'a BTreeMap<&'g str, u64>,
    colors2: &'a BTreeMap<&'g str, u64>,
    source: &'a [&'g Triple],
    target: &'a HashSet<&'g Triple>,
    mapping: HashMap<&'g str, &'g str>,
    used: HashSet<&'g str>,
}

impl<'g> Search<'_, 'g> {
    fn map_term(&self, term: &Term) -> Option<Term> {
        match term {
            Term::Blank(label) => self.mapping.get(label.as_str()).map(|m| Term::Blank((*m).to_owned())),
            other => Some(other.clone()),
        }
    }

    /// Checks every source triple whose blanks are all mapped.
    fn consistent(&self, just_mapped: &str) -> bool {
        self.source
            .iter()
            .filter(|t| {
                [&t.subject, &t.object]
                    .iter()
                    .any(|x| matches!(x, Term::Blank(l) if l == just_mapped))
            })
            .all(|t| match (self.map_term(&t.subject), self.map_term(&t.object)) {
                (Some(s), Some(o)) => self.target.contains(&Triple {
                    subject: s,
                    predicate: t.predicate.clone(),
                    object: o,
                }),
                _ => true,
            })
    }

    fn extend(&mut self, depth: usize) -> bool {
        let Some(&blank) = self.order.get(depth) else {
            return true;
        };
        let color = self.colors1[blank];
        let candidates: BTreeSet<&'g str> = self
            .colors2
            .iter()
            .filter(|(label, c)| **c == color && !self.used.contains(*label))
            .map(|(label, _)| *label)
            .collect();
        for candidate in candidates {
            self.mapping.insert(blank, candidate);
            self.used.insert(candidate);
            if self.consistent(blank) && self.extend(depth + 1) {
                return true;
            }
            self.mapping.remove(blank);
            self.used.remove(candidate);
        }
        false
    }
}
