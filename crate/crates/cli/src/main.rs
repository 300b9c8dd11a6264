//! `capote`: batch workflows for controversy scoring and crowd-annotation
//! analysis. Every run writes its outputs atomically plus a JSON manifest.
//!
//! Exit codes: 0 success, 1 data validation, 2 configuration/resources,
//! 3 statistical preconditions.

mod commands;
mod error;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use capote::corpus::{DateRange, DEFAULT_BASE_URL};
use capote::model::PAPER_MODEL_NAME;
use capote::Execution;
use chrono::NaiveDate;
use clap::{Args, Parser, Subcommand};

use crate::error::CliError;
use crate::manifest::RunManifest;

#[derive(Parser)]
#[command(name = "capote", version, about = "Controversy scoring and crowd-annotation analysis")]
struct Cli {
    /// Run batch loops on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a JSONL corpus and write its normalized form.
    Ingest { corpus: PathBuf, out: PathBuf },
    /// Score every debate in a corpus and apply a controversy model.
    Score(Box<ScoreCmd>),
    /// Aggregate crowd annotations and run the correlation and regression suite.
    Fit { annotations: PathBuf, out_dir: PathBuf },
    /// Write only the text analysis report for an annotation file.
    Report { annotations: PathBuf, out: PathBuf },
    /// Per-question clarity and per-worker agreement.
    Crowdtruth { annotations: PathBuf, out_dir: PathBuf },
    /// Download articles from the content API (key from CAPOTE_GUARDIAN_KEY).
    Fetch(FetchCmd),
}

#[derive(Args)]
struct ScoreCmd {
    corpus: PathBuf,
    out: PathBuf,
    #[arg(long)]
    lexicon: PathBuf,
    #[arg(long)]
    gazetteer: PathBuf,
    /// `key = value` scorer config; flags below override it.
    #[arg(long, env = "CAPOTE_CONFIG")]
    config: Option<PathBuf>,
    /// Built-in model name or a model file.
    #[arg(long, default_value = PAPER_MODEL_NAME)]
    model: String,
    #[arg(long)]
    actor_ref_count: Option<String>,
    #[arg(long)]
    sentiment_threshold: Option<String>,
    #[arg(long)]
    emotion_gain: Option<String>,
    #[arg(long)]
    source_ref_count: Option<String>,
    #[arg(long)]
    span_ref_days: Option<String>,
    #[arg(long)]
    burst_ref_count: Option<String>,
    #[arg(long)]
    burst_sigma: Option<String>,
}

impl ScoreCmd {
    fn overrides(&self) -> Vec<(&'static str, String)> {
        let flags = [
            ("actor_ref_count", &self.actor_ref_count),
            ("sentiment_threshold", &self.sentiment_threshold),
            ("emotion_gain", &self.emotion_gain),
            ("source_ref_count", &self.source_ref_count),
            ("span_ref_days", &self.span_ref_days),
            ("burst_ref_count", &self.burst_ref_count),
            ("burst_sigma", &self.burst_sigma),
        ];
        flags.into_iter().filter_map(|(k, v)| v.clone().map(|v| (k, v))).collect()
    }
}

#[derive(Args)]
struct FetchCmd {
    out: PathBuf,
    #[arg(long)]
    query: String,
    #[arg(long)]
    from: NaiveDate,
    #[arg(long)]
    to: NaiveDate,
    #[arg(long, default_value_t = 100)]
    max: usize,
    #[arg(long, default_value = DEFAULT_BASE_URL)]
    base_url: String,
}

fn run(cli: Cli, m: &mut RunManifest) -> Result<String, CliError> {
    let exec = if cli.sequential { Execution::Sequential } else { Execution::default() };
    match &cli.command {
        Command::Ingest { corpus, out } => commands::ingest(m, corpus, out),
        Command::Score(s) => {
            let args = commands::ScoreArgs {
                corpus: &s.corpus,
                lexicon: &s.lexicon,
                gazetteer: &s.gazetteer,
                config: s.config.as_deref(),
                overrides: s.overrides(),
                model: &s.model,
                out: &s.out,
            };
            commands::score(m, args, exec)
        }
        Command::Fit { annotations, out_dir } => commands::fit(m, annotations, out_dir, exec),
        Command::Report { annotations, out } => commands::report(m, annotations, out, exec),
        Command::Crowdtruth { annotations, out_dir } => commands::crowdtruth(m, annotations, out_dir, exec),
        Command::Fetch(f) => {
            if f.from > f.to {
                return Err(CliError::config(format!("--from {} is after --to {}", f.from, f.to)));
            }
            let range = DateRange { from: f.from, to: f.to };
            commands::fetch(m, &f.base_url, &f.query, range, f.max, &f.out)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let command_line = std::env::args().collect::<Vec<_>>().join(" ");
    let cli = Cli::parse();
    let mut manifest = RunManifest::start(command_line);
    match run(cli, &mut manifest) {
        Ok(summary) => {
            println!("{summary}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code() as u8)
        }
    }
}
