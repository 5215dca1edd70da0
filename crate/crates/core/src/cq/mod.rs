//! Competency questions: corpus parsing, basic-graph-pattern evaluation,
//! coverage tables, the satisfaction decision and the significance test.

mod bgp;
mod corpus;
mod coverage;
mod stats;

pub use bgp::{eval_pattern, has_solution, Bgp, BgpError, Binding, PatternTerm, TriplePattern};
pub use corpus::{dedup_corpus, normalize_text, parse_cq_corpus, CorpusError, Cq, CqKind};
pub use coverage::{
    classify_cq, decide_satisfaction, decide_with, evaluate_corpus, evaluate_corpus_detailed, CorpusEvaluation,
    CoverageError, CoverageRow, CoverageTable, CqOutcome, CqStatus, Decision, DecisionKind, Percent, ThresholdError,
    Thresholds, CONSIDERED_LABEL, DESCRIPTIVE_LABEL, TOTAL_LABEL,
};
pub use stats::{significance_test, student_t_two_sided, StatsError, TTest, TestMode};
