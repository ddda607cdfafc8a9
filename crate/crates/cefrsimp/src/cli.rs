//! Command-line interface.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use cefrsimp_core::orchestrator::run_pipeline;
use cefrsimp_core::{Mode, PipelineError};
use clap::{Args, Parser, Subcommand};

use crate::backends::{Backends, LlmOptions, ScorerSelection};
use crate::config::AppConfig;
use crate::exec::RayonExecutor;
use crate::io::{read_outputs, read_tasks, write_outputs};
use crate::report::{eval_records, evaluation_table, gap_table, EvalSummary};

#[derive(Debug, Parser)]
#[command(name = "cefrsimp", version, about = "Rewrite texts to a target CEFR level and evaluate the results")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Simplify every task of a JSONL dataset.
    Simplify(SimplifyArgs),
    /// Score an output file against its dataset: RMSE, proxy similarities, confusion matrix.
    Evaluate(EvalArgs),
    /// Break evaluation results down by CEFR gap between source and target.
    GapAnalysis(EvalArgs),
    /// Predict the CEFR level of one text and show each head's vote.
    PredictLevel(PredictArgs),
}

#[derive(Debug, Args)]
pub struct ScorerArgs {
    /// TOML configuration file.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// `builtin`, `http`, or role=backend pairs such as `predictor=http,llm=fixture`.
    #[arg(long, default_value = "builtin")]
    pub scorers: ScorerSelection,
    /// Recorded LLM completions (JSONL of {"prompt","completion"}).
    #[arg(long)]
    pub llm_fixture: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimplifyArgs {
    /// Dataset: one {"text_id","original","target_cefr","reference"?} object per line.
    #[arg(long)]
    pub input: PathBuf,
    /// Output file: one {"text_id","simplified_sentence"} object per line.
    #[arg(long)]
    pub output: PathBuf,
    /// Overrides the configured mode.
    #[arg(long)]
    pub mode: Option<Mode>,
    /// Worker threads; 0 uses every available core.
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
    /// Write the run report (JSON) here.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Save every LLM completion of this run as a fixture file.
    #[arg(long)]
    pub llm_record: Option<PathBuf>,
    #[command(flatten)]
    pub scorer: ScorerArgs,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// The dataset the outputs were produced from.
    #[arg(long)]
    pub input: PathBuf,
    /// The output file to score.
    #[arg(long)]
    pub outputs: PathBuf,
    /// Write the tab-separated table here instead of stdout.
    #[arg(long)]
    pub table: Option<PathBuf>,
    /// Write the JSON summary here.
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[command(flatten)]
    pub scorer: ScorerArgs,
}

#[derive(Debug, Args)]
#[group(id = "source", required = true, multiple = false)]
pub struct PredictArgs {
    /// Text to classify.
    #[arg(long, group = "source")]
    pub text: Option<String>,
    /// File whose contents are classified as one text.
    #[arg(long, group = "source")]
    pub text_file: Option<PathBuf>,
    #[command(flatten)]
    pub scorer: ScorerArgs,
}

/// Bad invocation detected after argument parsing.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

fn load_config(path: Option<&Path>) -> anyhow::Result<AppConfig> {
    match path {
        Some(path) => AppConfig::load(path),
        None => Ok(AppConfig::default()),
    }
}

fn write_file(path: &Path, contents: &str) -> anyhow::Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn emit(path: Option<&Path>, contents: &str) -> anyhow::Result<()> {
    match path {
        Some(path) => write_file(path, contents),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(contents.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

pub fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Simplify(args) => simplify(args),
        Command::Evaluate(args) => evaluate(args, false),
        Command::GapAnalysis(args) => evaluate(args, true),
        Command::PredictLevel(args) => predict_level(args),
    }
}

fn simplify(args: SimplifyArgs) -> anyhow::Result<()> {
    let mut config = load_config(args.scorer.config.as_deref())?;
    if let Some(mode) = args.mode {
        config.pipeline.mode = mode;
    }
    config.pipeline.validate()?;
    let llm_opts = LlmOptions {
        fixture: args.scorer.llm_fixture.clone(),
        record: args.llm_record.clone(),
    };
    let backends = Backends::build(args.scorer.scorers, &config, &llm_opts)?;
    let mode = config.pipeline.mode;
    if mode == Mode::Baseline && !backends.has_llm() {
        return Err(UsageError("baseline mode needs an LLM (--scorers llm=http|fixture or --llm-fixture)".into()).into());
    }
    if config.pipeline.wants_llm_seed() && !backends.has_llm() {
        log::warn!("mrs-joint without an LLM backend: running rule candidates only");
    }
    let tasks = read_tasks(&args.input)?;
    let executor = RayonExecutor::new(args.workers)?;
    log::info!("{} tasks, mode {mode}, {} workers", tasks.len(), executor.workers());

    let run = run_pipeline(&tasks, &config.pipeline, &backends.scorers(), &executor).map_err(|e| match e {
        PipelineError::ScorerUnavailable(_) => anyhow::Error::new(e).context("aborting run"),
        other => other.into(),
    })?;
    write_outputs(&args.output, &run.outputs)?;
    if let Some(path) = &args.report {
        let mut json = serde_json::to_string_pretty(&run.report)?;
        json.push('\n');
        write_file(path, &json)?;
    }
    backends.save_recording(&llm_opts)?;
    let report = &run.report;
    log::info!(
        "hits {} of {}, nearest-level fills {}, fallbacks {}, LLM calls {}",
        report.hits(),
        tasks.len(),
        report.filled_by_nearest,
        report.fallbacks,
        report.llm_calls
    );
    Ok(())
}

fn evaluate(args: EvalArgs, by_gap: bool) -> anyhow::Result<()> {
    let config = load_config(args.scorer.config.as_deref())?;
    let backends = Backends::build(args.scorer.scorers, &config, &LlmOptions::default())?;
    let tasks = read_tasks(&args.input)?;
    let outputs = read_outputs(&args.outputs)?;
    let records = eval_records(&tasks, &outputs, &backends.ensemble, &*backends.embedder)?;
    let summary = EvalSummary::from_records(&records)?;
    let table = if by_gap {
        gap_table(&summary.gaps)
    } else {
        evaluation_table(&summary)
    };
    emit(args.table.as_deref(), &table)?;
    if let Some(path) = &args.report {
        let mut json = serde_json::to_string_pretty(&summary)?;
        json.push('\n');
        write_file(path, &json)?;
    }
    Ok(())
}

fn predict_level(args: PredictArgs) -> anyhow::Result<()> {
    let text = match (&args.text, &args.text_file) {
        (Some(text), _) => text.clone(),
        (None, Some(path)) => fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?,
        (None, None) => bail!(UsageError("give --text or --text-file".into())),
    };
    if text.trim().is_empty() {
        bail!(UsageError("text is empty".into()));
    }
    let config = load_config(args.scorer.config.as_deref())?;
    let backends = Backends::build(args.scorer.scorers, &config, &LlmOptions::default())?;
    let prediction = backends.ensemble.predict(text.trim())?;
    let mut out = String::from("head\tlevel\tconfidence\n");
    for (head, vote) in backends.ensemble.heads().iter().zip(prediction.votes.iter()) {
        out.push_str(&format!("{}\t{}\t{:.4}\n", head.name(), vote.level, vote.confidence));
    }
    out.push_str(&format!("resolved\t{}\n", prediction.resolved));
    emit(None, &out)
}
