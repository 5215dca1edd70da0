use std::fmt::{self, Write};

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use super::bgp::has_solution;
use super::corpus::{Cq, CqKind};
use crate::graph::Graph;

/// A percentage held as an integer count of 1/10000 of a percent, so that
/// four-decimal rendering is exact.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Percent(u64);

const UNITS_PER_PERCENT: u64 = 10_000;
const UNITS_PER_WHOLE: u64 = 100 * UNITS_PER_PERCENT;

impl Percent {
    /// `100 * part / whole` rounded half-up at four decimals; 0 when `whole` is 0.
    pub fn of(part: u64, whole: u64) -> Percent {
        if whole == 0 {
            return Percent(0);
        }
        Percent((2 * part * UNITS_PER_WHOLE + whole) / (2 * whole))
    }

    pub fn from_units(units: u64) -> Percent {
        Percent(units)
    }

    pub fn units(self) -> u64 {
        self.0
    }

    /// The value as a fraction in [0, 1].
    pub fn fraction(self) -> f64 {
        self.0 as f64 / UNITS_PER_WHOLE as f64
    }

    pub fn as_f64(self) -> f64 {
        self.0 as f64 / UNITS_PER_PERCENT as f64
    }
}

/// Four decimals with trailing zeros dropped: `80`, `56.25`, `46.9697`.
impl fmt::Display for Percent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let whole = self.0 / UNITS_PER_PERCENT;
        let frac = self.0 % UNITS_PER_PERCENT;
        if frac == 0 {
            return write!(f, "{whole}");
        }
        let digits = format!("{frac:04}");
        write!(f, "{whole}.{}", digits.trim_end_matches('0'))
    }
}

impl Serialize for Percent {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(self.as_f64())
    }
}

impl<'de> Deserialize<'de> for Percent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = f64::deserialize(d)?;
        if !(0.0..=100.0).contains(&v) {
            return Err(serde::de::Error::custom(format!("percentage {v} out of range")));
        }
        Ok(Percent((v * UNITS_PER_PERCENT as f64).round() as u64))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverageError {
    #[error("{asker}: repeats ({repeats}) exceed questions asked ({asked})")]
    TooManyRepeats { asker: String, asked: u64, repeats: u64 },
    #[error("{asker}: answered ({answered}) exceeds unique questions ({unique})")]
    TooManyAnswered { asker: String, unique: u64, answered: u64 },
    #[error("descriptive count {descriptive} exceeds unique questions {unique}")]
    TooManyDescriptive { unique: u64, descriptive: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverageRow {
    pub asker: String,
    pub asked: u64,
    pub repeats: u64,
    pub unique: u64,
    pub answered: u64,
    pub pct_answered: Percent,
    pub unanswered: u64,
}

impl CoverageRow {
    pub fn from_counts(asker: impl Into<String>, asked: u64, repeats: u64, answered: u64) -> Result<Self, CoverageError> {
        let asker = asker.into();
        let unique = asked
            .checked_sub(repeats)
            .ok_or_else(|| CoverageError::TooManyRepeats {
                asker: asker.clone(),
                asked,
                repeats,
            })?;
        let unanswered = unique
            .checked_sub(answered)
            .ok_or_else(|| CoverageError::TooManyAnswered {
                asker: asker.clone(),
                unique,
                answered,
            })?;
        Ok(CoverageRow {
            asker,
            asked,
            repeats,
            unique,
            answered,
            pct_answered: Percent::of(answered, unique),
            unanswered,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverageTable {
    pub rows: Vec<CoverageRow>,
    pub total: CoverageRow,
    pub descriptive_count: u64,
    pub considered: CoverageRow,
}

pub const TOTAL_LABEL: &str = "Total";
pub const DESCRIPTIVE_LABEL: &str = "Descriptive Questions";
pub const CONSIDERED_LABEL: &str = "Considered";

impl CoverageTable {
    /// Builds the table from per-asker rows and the number of unique
    /// descriptive questions. Descriptive questions count towards asked and
    /// unique in the asker rows but are never answered.
    pub fn from_rows(rows: Vec<CoverageRow>, descriptive_count: u64) -> Result<Self, CoverageError> {
        let sum = |f: fn(&CoverageRow) -> u64| rows.iter().map(f).sum::<u64>();
        let total = CoverageRow::from_counts(TOTAL_LABEL, sum(|r| r.asked), sum(|r| r.repeats), sum(|r| r.answered))?;
        if descriptive_count + total.answered > total.unique {
            return Err(CoverageError::TooManyDescriptive {
                unique: total.unique,
                descriptive: descriptive_count,
            });
        }
        let considered = CoverageRow::from_counts(
            CONSIDERED_LABEL,
            total.asked - descriptive_count,
            total.repeats,
            total.answered,
        )?;
        Ok(CoverageTable {
            rows,
            total,
            descriptive_count,
            considered,
        })
    }

    /// Arithmetic path: `(asker, asked, repeats, answered)` per asker.
    pub fn from_counts<S: Into<String>>(
        counts: impl IntoIterator<Item = (S, u64, u64, u64)>,
        descriptive_count: u64,
    ) -> Result<Self, CoverageError> {
        let rows = counts
            .into_iter()
            .map(|(asker, asked, repeats, answered)| CoverageRow::from_counts(asker, asked, repeats, answered))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_rows(rows, descriptive_count)
    }

    pub fn descriptive_row(&self) -> CoverageRow {
        let d = self.descriptive_count;
        CoverageRow::from_counts(DESCRIPTIVE_LABEL, d, 0, 0).expect("zero repeats and answers are always valid")
    }

    /// Fraction of considered questions answered.
    pub fn coverage(&self) -> f64 {
        self.considered.pct_answered.fraction()
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::from(
            "| Questions By | Questions | Repetition | Unique questions | Answered | % Answered | Unanswered |\n\
             |---|---:|---:|---:|---:|---:|---:|\n",
        );
        let descriptive = self.descriptive_row();
        let trailer = [&self.total, &descriptive, &self.considered];
        for r in self.rows.iter().chain(trailer) {
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} | {} | {} | {} |",
                r.asker, r.asked, r.repeats, r.unique, r.answered, r.pct_answered, r.unanswered
            );
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("coverage table serializes")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CqStatus {
    Answered,
    Unanswered,
    /// Factual, unique, but no formal pattern to evaluate.
    NoPattern,
    Duplicate,
    Descriptive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CqOutcome {
    pub id: String,
    pub asker: String,
    pub status: CqStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEvaluation {
    pub table: CoverageTable,
    pub outcomes: Vec<CqOutcome>,
}

impl CorpusEvaluation {
    pub fn answered_ids(&self) -> Vec<&str> {
        self.ids_with(CqStatus::Answered)
    }

    pub fn ids_with(&self, status: CqStatus) -> Vec<&str> {
        self.outcomes
            .iter()
            .filter(|o| o.status == status)
            .map(|o| o.id.as_str())
            .collect()
    }
}

pub fn classify_cq(g: &Graph, cq: &Cq) -> CqStatus {
    if cq.is_duplicate() {
        CqStatus::Duplicate
    } else if cq.kind == CqKind::Descriptive {
        CqStatus::Descriptive
    } else {
        match &cq.pattern {
            None => CqStatus::NoPattern,
            Some(p) if has_solution(g, p) => CqStatus::Answered,
            Some(_) => CqStatus::Unanswered,
        }
    }
}

/// Evaluates a deduplicated corpus. Rows follow the order in which askers
/// first appear.
pub fn evaluate_corpus_detailed(g: &Graph, cqs: &[Cq]) -> CorpusEvaluation {
    let outcomes: Vec<CqOutcome> = cqs
        .iter()
        .map(|cq| CqOutcome {
            id: cq.id.clone(),
            asker: cq.asker.clone(),
            status: classify_cq(g, cq),
        })
        .collect();
    let mut askers: Vec<&str> = Vec::new();
    for o in &outcomes {
        if !askers.contains(&o.asker.as_str()) {
            askers.push(&o.asker);
        }
    }
    let counts = askers.iter().map(|asker| {
        let mine = outcomes.iter().filter(|o| o.asker == *asker);
        let count = |s: CqStatus| mine.clone().filter(|o| o.status == s).count() as u64;
        (
            asker.to_string(),
            mine.clone().count() as u64,
            count(CqStatus::Duplicate),
            count(CqStatus::Answered),
        )
    });
    let descriptive = outcomes.iter().filter(|o| o.status == CqStatus::Descriptive).count() as u64;
    let table = CoverageTable::from_counts(counts, descriptive).expect("counts derived from one corpus are consistent");
    CorpusEvaluation { table, outcomes }
}

pub fn evaluate_corpus(g: &Graph, cqs: &[Cq]) -> CoverageTable {
    evaluate_corpus_detailed(g, cqs).table
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecisionKind {
    Satisfactory,
    NeedsEnrichment,
    Unsatisfactory,
}

impl fmt::Display for DecisionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DecisionKind::Satisfactory => "satisfactory",
            DecisionKind::NeedsEnrichment => "needs_enrichment",
            DecisionKind::Unsatisfactory => "unsatisfactory",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    pub lower: f64,
    pub upper: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds { lower: 0.30, upper: 0.85 }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("invalid thresholds: need 0 <= lower < upper <= 1, got lower={lower}, upper={upper}")]
pub struct ThresholdError {
    pub lower: f64,
    pub upper: f64,
}

impl Thresholds {
    pub fn new(lower: f64, upper: f64) -> Result<Self, ThresholdError> {
        let t = Thresholds { lower, upper };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<(), ThresholdError> {
        if 0.0 <= self.lower && self.lower < self.upper && self.upper <= 1.0 {
            Ok(())
        } else {
            Err(ThresholdError {
                lower: self.lower,
                upper: self.upper,
            })
        }
    }

    pub fn decide(&self, coverage: f64) -> DecisionKind {
        if coverage >= self.upper {
            DecisionKind::Satisfactory
        } else if coverage < self.lower {
            DecisionKind::Unsatisfactory
        } else {
            DecisionKind::NeedsEnrichment
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Decision {
    pub value: DecisionKind,
    pub coverage: f64,
    pub thresholds: Thresholds,
}

impl Decision {
    pub fn is_satisfactory(&self) -> bool {
        self.value == DecisionKind::Satisfactory
    }

    /// What the methodology prescribes next.
    pub fn next_action(&self) -> &'static str {
        match self.value {
            DecisionKind::Satisfactory => "accept the model as a FEKR and export it",
            DecisionKind::NeedsEnrichment => "enrich the model (external and internal enrichment) and re-evaluate",
            DecisionKind::Unsatisfactory => "return to conceptual analysis and design a new ontology",
        }
    }
}

pub fn decide_satisfaction(t: &CoverageTable, lower: f64, upper: f64) -> Result<Decision, ThresholdError> {
    let thresholds = Thresholds::new(lower, upper)?;
    Ok(decide_with(t, thresholds))
}

pub fn decide_with(t: &CoverageTable, thresholds: Thresholds) -> Decision {
    let coverage = t.coverage();
    Decision {
        value: thresholds.decide(coverage),
        coverage,
        thresholds,
    }
}
