mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{Config, Format};

/// Review, evaluate, populate and enrich epic ontologies.
#[derive(Debug, Parser)]
#[command(name = "genome-kit", version)]
struct Cli {
    /// TOML config file; flags override its values.
    #[arg(long, env = "GENOME_CONFIG", global = true)]
    config: Option<PathBuf>,
    /// Print the effective config and exit.
    #[arg(long, global = true)]
    print_config: bool,
    #[command(flatten)]
    flags: Flags,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Debug, Args)]
struct Flags {
    /// Lower coverage threshold.
    #[arg(long, global = true)]
    lower: Option<f64>,
    /// Upper coverage threshold (inclusive).
    #[arg(long, global = true)]
    upper: Option<f64>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    max_iters: Option<usize>,
    /// Fail on unresolved template relations instead of skipping them.
    #[arg(long, global = true)]
    strict: bool,
    /// Relationship matrix file (families of properties).
    #[arg(long, global = true)]
    matrix: Option<PathBuf>,
    /// Upper-ontology namespace for the alignment check (repeatable).
    #[arg(long = "upper-ns", global = true)]
    upper_ns: Vec<String>,
    /// Namespace for minted IRIs.
    #[arg(long, global = true)]
    base: Option<String>,
    /// Apply lint auto-fixes along with patches.
    #[arg(long, global = true)]
    internal_fixes: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Lint the ontology and classify its profile.
    Review {
        #[arg(long)]
        ontology: PathBuf,
    },
    /// Coverage table and decision for a CQ corpus, or for a counts file.
    Evaluate {
        #[arg(long, required_unless_present = "counts", requires = "corpus")]
        ontology: Option<PathBuf>,
        #[arg(long, requires = "ontology")]
        corpus: Option<PathBuf>,
        /// CSV of per-asker counts: questions_by,questions,repetition,answered.
        #[arg(long, conflicts_with_all = ["ontology", "corpus"])]
        counts: Option<PathBuf>,
    },
    /// Populate an ontology from a KR template.
    Populate {
        #[arg(long)]
        template: PathBuf,
        /// Schema to populate; an empty graph when absent.
        #[arg(long)]
        ontology: Option<PathBuf>,
        /// Lines of `phraseToken = prefix:property`.
        #[arg(long)]
        predicate_map: Option<PathBuf>,
    },
    /// Apply patch directories in order.
    Enrich {
        #[arg(long)]
        ontology: PathBuf,
        #[arg(long, required = true)]
        patch: Vec<PathBuf>,
    },
    /// Evaluate and enrich until the decision settles.
    Iterate {
        #[arg(long)]
        ontology: PathBuf,
        #[arg(long)]
        corpus: PathBuf,
        /// Patch directories, queued in order.
        #[arg(long)]
        patch: Vec<PathBuf>,
        /// Where to write the iteration log as JSON.
        #[arg(long)]
        log: Option<PathBuf>,
    },
    /// Export a satisfactory model as a FEKR.
    Export {
        #[arg(long)]
        ontology: PathBuf,
        #[arg(long)]
        corpus: PathBuf,
        /// Export time recorded in the provenance; now when absent.
        #[arg(long)]
        timestamp: Option<String>,
        /// Evaluation passes that led to this model.
        #[arg(long, default_value_t = 1)]
        iterations: usize,
    },
}

/// An error with the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub error: anyhow::Error,
}

impl Failure {
    /// Guard and validation failures.
    pub fn invalid(error: impl Into<anyhow::Error>) -> Self {
        Failure {
            code: 1,
            error: error.into(),
        }
    }

    /// I/O and parse failures.
    pub fn io(error: impl Into<anyhow::Error>) -> Self {
        Failure {
            code: 2,
            error: error.into(),
        }
    }
}

fn effective_config(cli: &Cli) -> Result<Config, Failure> {
    let mut config = match &cli.config {
        Some(path) => Config::load(path).map_err(Failure::io)?,
        None => Config::default(),
    };
    let f = &cli.flags;
    if let Some(v) = f.lower {
        config.lower = v;
    }
    if let Some(v) = f.upper {
        config.upper = v;
    }
    if let Some(v) = f.format {
        config.format = v;
    }
    if let Some(v) = f.max_iters {
        config.max_iters = v;
    }
    if let Some(v) = &f.base {
        config.base = v.clone();
    }
    config.strict |= f.strict;
    config.internal_fixes |= f.internal_fixes;
    for ns in &f.upper_ns {
        if !config.lint.upper_namespaces.contains(ns) {
            config.lint.upper_namespaces.push(ns.clone());
        }
    }
    Ok(config)
}

fn run(cli: Cli) -> Result<(), Failure> {
    let config = effective_config(&cli)?;
    if cli.print_config {
        print!("{}", config.to_toml());
        return Ok(());
    }
    let Some(command) = cli.command else {
        return Err(Failure::io(anyhow::anyhow!("no subcommand given; see --help")));
    };
    let ctx = commands::Context {
        config,
        out: cli.flags.out,
        matrix: cli.flags.matrix,
    };
    match command {
        Command::Review { ontology } => commands::review(&ctx, &ontology),
        Command::Evaluate {
            ontology,
            corpus,
            counts,
        } => match (ontology, corpus, counts) {
            (_, _, Some(counts)) => commands::evaluate_counts(&ctx, &counts),
            (Some(ontology), Some(corpus), None) => commands::evaluate(&ctx, &ontology, &corpus),
            _ => unreachable!("clap enforces --ontology with --corpus, or --counts"),
        },
        Command::Populate {
            template,
            ontology,
            predicate_map,
        } => commands::populate(&ctx, &template, ontology.as_deref(), predicate_map.as_deref()),
        Command::Enrich { ontology, patch } => commands::enrich(&ctx, &ontology, &patch),
        Command::Iterate {
            ontology,
            corpus,
            patch,
            log,
        } => commands::iterate(&ctx, &ontology, &corpus, &patch, log.as_deref()),
        Command::Export {
            ontology,
            corpus,
            timestamp,
            iterations,
        } => commands::export(&ctx, &ontology, &corpus, timestamp, iterations),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {:#}", failure.error);
            ExitCode::from(failure.code)
        }
    }
}
