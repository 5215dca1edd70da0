use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use anyhow::anyhow;
use chrono::{DateTime, SecondsFormat, Utc};
use genome_kit::cq::{
    decide_with, dedup_corpus, evaluate_corpus_detailed, parse_cq_corpus, CorpusEvaluation, CoverageTable, CqStatus,
    Cq, Decision,
};
use genome_kit::enrich::{
    apply_patch, export_fekr, load_patch_dir, run_iteration, suggest_internal_fixes, FekrMetadata, IterationLog,
    IterationOptions, Patch, PatchError,
};
use genome_kit::graph::{parse_turtle, serialize_turtle, Graph, PrefixMap};
use genome_kit::lint::run_lint;
use genome_kit::populate::{parse_predicate_map, populate_graph, PopulateConfig, PopulateError};
use genome_kit::schema::{build_schema_view, RelationshipMatrix};
use genome_kit::template::parse_kr_template;
use genome_kit::vocab;
use serde::Deserialize;

use crate::config::{Config, Format};
use crate::Failure;

pub struct Context {
    pub config: Config,
    pub out: Option<PathBuf>,
    pub matrix: Option<PathBuf>,
}

impl Context {
    fn emit(&self, text: &str) -> Result<(), Failure> {
        match &self.out {
            Some(path) => fs::write(path, text).map_err(|e| Failure::io(anyhow!("{}: {e}", path.display()))),
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout.write_all(text.as_bytes()).map_err(Failure::io)
            }
        }
    }

    /// The matrix file when given, else the kinship families in the
    /// ontology's default namespace.
    fn matrix(&self, g: &Graph) -> Result<RelationshipMatrix, Failure> {
        match &self.matrix {
            Some(path) => RelationshipMatrix::parse(&read(path)?).map_err(|e| at(path, e)),
            None => Ok(g.prefixes().get("").map(RelationshipMatrix::kinship).unwrap_or_default()),
        }
    }
}

fn at(path: &Path, e: impl std::fmt::Display) -> Failure {
    Failure::io(anyhow!("{}: {e}", path.display()))
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| at(path, e))
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    // syntax errors read as path:line:column: message
    parse_turtle(&read(path)?, None).map_err(|e| Failure::io(anyhow!("{}:{e}", path.display())))
}

fn load_corpus(path: &Path) -> Result<Vec<Cq>, Failure> {
    Ok(dedup_corpus(parse_cq_corpus(&read(path)?).map_err(|e| at(path, e))?))
}

fn load_patch(path: &Path) -> Result<Patch, Failure> {
    load_patch_dir(path).map_err(|e| match e {
        PatchError::Overlap { .. } => Failure::invalid(anyhow!("{}: {e}", path.display())),
        other => Failure::io(anyhow!(other)),
    })
}

fn decision_lines(decision: &Decision) -> String {
    format!(
        "Decision: {} (coverage {:.4}, thresholds {} / {})\nNext action: {}\n",
        decision.value,
        decision.coverage,
        decision.thresholds.lower,
        decision.thresholds.upper,
        decision.next_action()
    )
}

fn evaluation_report(config: &Config, eval: &CorpusEvaluation, decision: &Decision) -> String {
    match config.format {
        Format::Markdown => {
            let mut out = eval.table.to_markdown();
            out.push('\n');
            for (label, status) in [("Unanswered", CqStatus::Unanswered), ("No pattern", CqStatus::NoPattern)] {
                let ids = eval.ids_with(status);
                if !ids.is_empty() {
                    let _ = writeln!(out, "{label}: {}", ids.join(", "));
                }
            }
            out.push_str(&decision_lines(decision));
            out
        }
        Format::Json => {
            let value = serde_json::json!({
                "table": eval.table,
                "outcomes": eval.outcomes,
                "decision": decision,
                "next_action": decision.next_action(),
            });
            serde_json::to_string_pretty(&value).expect("report serializes") + "\n"
        }
    }
}

pub fn review(ctx: &Context, ontology: &Path) -> Result<(), Failure> {
    let g = load_graph(ontology)?;
    let matrix = ctx.matrix(&g)?;
    let report = run_lint(&build_schema_view(&g), &matrix, &ctx.config.lint);
    let text = match ctx.config.format {
        Format::Markdown => report.to_markdown(),
        Format::Json => report.to_json() + "\n",
    };
    ctx.emit(&text)?;
    match report.error_count() {
        0 => Ok(()),
        n => Err(Failure::invalid(anyhow!("{}: {n} error finding(s)", ontology.display()))),
    }
}

pub fn evaluate(ctx: &Context, ontology: &Path, corpus: &Path) -> Result<(), Failure> {
    let thresholds = ctx.config.thresholds().map_err(Failure::invalid)?;
    let g = load_graph(ontology)?;
    let cqs = load_corpus(corpus)?;
    let eval = evaluate_corpus_detailed(&g, &cqs);
    let decision = decide_with(&eval.table, thresholds);
    ctx.emit(&evaluation_report(&ctx.config, &eval, &decision))
}

#[derive(Debug, Deserialize)]
struct CountsRecord {
    questions_by: String,
    questions: u64,
    repetition: u64,
    answered: u64,
}

type CountRow = (String, u64, u64, u64);

/// Per-asker counts. A `Descriptive Questions` row sets the descriptive
/// count; `Total` and `Considered` rows are derived and ignored.
fn parse_counts(text: &str) -> anyhow::Result<(Vec<CountRow>, u64)> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let mut rows = Vec::new();
    let mut descriptive = 0;
    for record in reader.deserialize() {
        let r: CountsRecord = record?;
        match r.questions_by.to_lowercase().as_str() {
            "total" | "considered" => {}
            label if label.starts_with("descriptive") => descriptive = r.questions,
            _ => rows.push((r.questions_by, r.questions, r.repetition, r.answered)),
        }
    }
    Ok((rows, descriptive))
}

pub fn evaluate_counts(ctx: &Context, counts: &Path) -> Result<(), Failure> {
    let thresholds = ctx.config.thresholds().map_err(Failure::invalid)?;
    let (rows, descriptive) = parse_counts(&read(counts)?).map_err(|e| at(counts, e))?;
    let table = CoverageTable::from_counts(rows, descriptive).map_err(|e| Failure::invalid(anyhow!("{}: {e}", counts.display())))?;
    let decision = decide_with(&table, thresholds);
    let eval = CorpusEvaluation {
        table,
        outcomes: Vec::new(),
    };
    ctx.emit(&evaluation_report(&ctx.config, &eval, &decision))
}

pub fn populate(
    ctx: &Context,
    template: &Path,
    ontology: Option<&Path>,
    predicate_map: Option<&Path>,
) -> Result<(), Failure> {
    let kr = parse_kr_template(&read(template)?).map_err(|errors| {
        let lines: Vec<String> = errors.0.iter().map(|e| format!("{}: {e}", template.display())).collect();
        Failure::invalid(anyhow!(lines.join("\n")))
    })?;
    for w in &kr.warnings {
        eprintln!("warning: {}: {w}", template.display());
    }
    let schema = match ontology {
        Some(path) => load_graph(path)?,
        None => Graph::new(),
    };
    let mut cfg = PopulateConfig::new(ctx.config.base.clone());
    cfg.strict = ctx.config.strict;
    if let Some(path) = predicate_map {
        let mut prefixes = PrefixMap::standard();
        prefixes.merge_missing(schema.prefixes());
        cfg.predicate_map = parse_predicate_map(&read(path)?, &prefixes).map_err(|e| at(path, e))?;
    }
    let (mut out, report) = populate_graph(&schema, &kr.rows, &cfg).map_err(|e| match e {
        PopulateError::PredicateMap { .. } => Failure::io(anyhow!(e)),
        e => Failure::invalid(anyhow!("{}: {e}", template.display())),
    })?;
    let mut prefixes = PrefixMap::standard();
    prefixes.insert("", ctx.config.base.clone());
    prefixes.insert("genome", vocab::GENOME);
    out.prefixes_mut().merge_missing(&prefixes);
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    eprintln!(
        "populated {} row(s): {} new individual(s), {} triple(s) added",
        kr.rows.len(),
        report.individuals_created,
        report.assertions_added
    );
    ctx.emit(&serialize_turtle(&out))
}

pub fn enrich(ctx: &Context, ontology: &Path, patches: &[PathBuf]) -> Result<(), Failure> {
    let mut g = load_graph(ontology)?;
    for path in patches {
        let patch = load_patch(path)?;
        let (next, report) = apply_patch(&g, &patch);
        for w in &report.warnings {
            eprintln!("warning: {}: {w}", path.display());
        }
        eprintln!(
            "{} patch '{}': +{} -{}",
            patch.provenance, patch.note, report.added, report.removed
        );
        g = next;
    }
    if ctx.config.internal_fixes {
        let matrix = ctx.matrix(&g)?;
        let fixes = suggest_internal_fixes(&run_lint(&build_schema_view(&g), &matrix, &ctx.config.lint));
        let (next, report) = apply_patch(&g, &fixes);
        eprintln!("{}: +{} -{}", fixes.note, report.added, report.removed);
        g = next;
    }
    ctx.emit(&serialize_turtle(&g))
}

fn iteration_summary(log: &IterationLog) -> String {
    let mut out = String::from("| Round | Coverage % | Decision | Lint errors | Applied |\n|---:|---:|---|---:|---|\n");
    for r in &log.records {
        let applied = if r.patches_applied.is_empty() {
            "-".to_owned()
        } else {
            r.patches_applied.join("; ")
        };
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} | {} |",
            r.index, r.table.considered.pct_answered, r.decision.value, r.lint_error_count, applied
        );
    }
    out.push('\n');
    if log.truncated {
        out.push_str("Stopped at the iteration limit with patches still queued.\n");
    }
    out.push_str(&decision_lines(&log.decision));
    out
}

pub fn iterate(
    ctx: &Context,
    ontology: &Path,
    corpus: &Path,
    patches: &[PathBuf],
    log_path: Option<&Path>,
) -> Result<(), Failure> {
    let thresholds = ctx.config.thresholds().map_err(Failure::invalid)?;
    let g = load_graph(ontology)?;
    let cqs = load_corpus(corpus)?;
    let matrix = ctx.matrix(&g)?;
    let queue = patches.iter().map(|p| load_patch(p)).collect::<Result<Vec<_>, _>>()?;
    let options = IterationOptions {
        thresholds,
        max_iters: ctx.config.max_iters,
        internal_fixes: ctx.config.internal_fixes,
        lint: ctx.config.lint.clone(),
    };
    let (out, log) = run_iteration(&g, &cqs, &matrix, queue, &options);
    let json = serde_json::to_string_pretty(&log).expect("log serializes") + "\n";
    if let Some(path) = log_path {
        fs::write(path, &json).map_err(|e| at(path, e))?;
    }
    if let Some(path) = &ctx.out {
        fs::write(path, serialize_turtle(&out)).map_err(|e| at(path, e))?;
    }
    let summary = match ctx.config.format {
        Format::Markdown => iteration_summary(&log),
        Format::Json => json,
    };
    print!("{summary}");
    Ok(())
}

pub fn export(
    ctx: &Context,
    ontology: &Path,
    corpus: &Path,
    timestamp: Option<String>,
    iterations: usize,
) -> Result<(), Failure> {
    let thresholds = ctx.config.thresholds().map_err(Failure::invalid)?;
    let timestamp = match timestamp {
        Some(t) => {
            DateTime::parse_from_rfc3339(&t).map_err(|e| Failure::invalid(anyhow!("timestamp '{t}': {e}")))?;
            t
        }
        None => Utc::now().to_rfc3339_opts(SecondsFormat::Secs, true),
    };
    let g = load_graph(ontology)?;
    let cqs = load_corpus(corpus)?;
    let eval = evaluate_corpus_detailed(&g, &cqs);
    let decision = decide_with(&eval.table, thresholds);
    let meta = FekrMetadata::from_decision(&decision, iterations, timestamp)
        .map_err(|e| Failure::invalid(anyhow!("{e}\nnext action: {}", decision.next_action())))?;
    ctx.emit(&export_fekr(&g, &meta))
}
