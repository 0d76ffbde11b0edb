mod config;
mod io;

use std::collections::HashMap;
use std::fmt;
use std::num::NonZeroUsize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use log::{info, warn};
use serde::{Deserialize, Serialize};
use sumqg::annotation::{parse_annotation_with, Validation};
use sumqg::dataset::{build_qa_pairs, Outcome, ParagraphRecord, QuestionSource, TripleMeta};
use sumqg::stats::{LintInput, StatsReport};
use sumqg::{
    build_qg_triples, build_squad_json, clean_wiki_paragraphs, emit_seq2seq_input, DocumentPair, Executor, QaPair,
    QgTriple,
};

use crate::config::HeuristicArgs;
use crate::io::{ensure_distinct, for_each_chunk, AtomicOutput};

/// Bad flags, config or paths; exits with status 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

#[derive(Debug, Parser)]
#[command(name = "sumqg", version, about = "Question generation from annotated summaries")]
struct Cli {
    /// Worker threads for record processing.
    #[arg(long, global = true, default_value = "1")]
    workers: NonZeroUsize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build QG training triples from a passage/summary corpus.
    GenQgData {
        #[arg(long)]
        pairs: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Reject log; defaults to <out> with extension rejects.jsonl.
        #[arg(long)]
        rejects: Option<PathBuf>,
        #[command(flatten)]
        heuristics: HeuristicArgs,
    },
    /// Build a SQuAD-style QA dataset from NER-annotated paragraphs.
    GenQaData {
        #[arg(long)]
        paragraphs: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        rejects: Option<PathBuf>,
        /// JSON Lines of {"id", "question"} keyed by pair id. Without it,
        /// questions come from the paragraph's own frames.
        #[arg(long)]
        questions: Option<PathBuf>,
        /// Also write "passage <SEP> answer <SEP>" inputs as JSON Lines.
        #[arg(long)]
        inputs_out: Option<PathBuf>,
        #[arg(long, default_value = "sumqg")]
        dataset_name: String,
        #[command(flatten)]
        heuristics: HeuristicArgs,
    },
    /// Strip markup from raw wiki text and keep long paragraphs.
    CleanWiki {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 500)]
        min_chars: usize,
    },
    /// Question-type distribution, lexical overlap and lint summary.
    Stats {
        /// Triples (JSON Lines) or a SQuAD document.
        #[arg(long)]
        questions: PathBuf,
        #[arg(long)]
        report: PathBuf,
    },
    /// Per-question lint issues as JSON Lines.
    Lint {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check records against the annotation schema and report counts.
    Validate {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = RecordKind::Annotation)]
        kind: RecordKind,
        /// Allow paragraph annotations without a dependency layer.
        #[arg(long)]
        paragraph: bool,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum RecordKind {
    Annotation,
    Pairs,
    Paragraphs,
}

fn default_rejects(out: &Path) -> PathBuf {
    out.with_extension("rejects.jsonl")
}

fn to_line<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("record serializes")
}

enum LineResult<T> {
    Invalid { line: usize, error: String },
    Outcomes(Vec<Outcome<T>>),
}

fn gen_qg_data(
    exec: &Executor,
    pairs: &Path,
    out: &Path,
    rejects: Option<PathBuf>,
    heuristics: &HeuristicArgs,
) -> Result<()> {
    let cfg = heuristics.resolve()?;
    let rejects = rejects.unwrap_or_else(|| default_rejects(out));
    ensure_distinct(&[pairs], &[out, &rejects])?;

    let mut triples_out = AtomicOutput::create(out)?;
    let mut rejects_out = AtomicOutput::create(&rejects)?;
    let (mut accepted, mut rejected, mut invalid) = (0usize, 0usize, 0usize);
    for_each_chunk(pairs, |chunk| {
        let results = exec.map_ordered(&chunk, |(line, text)| match DocumentPair::from_json_line(text) {
            Ok(pair) => LineResult::Outcomes(build_qg_triples(&pair, &cfg)),
            Err(e) => LineResult::Invalid { line: *line, error: e.to_string() },
        });
        for r in results {
            match r {
                LineResult::Invalid { line, error } => {
                    warn!("{}:{line}: skipped: {error}", pairs.display());
                    invalid += 1;
                }
                LineResult::Outcomes(outcomes) => {
                    for o in outcomes {
                        match o {
                            Outcome::Accept(t) => {
                                triples_out.write_line(&to_line(&t))?;
                                accepted += 1;
                            }
                            Outcome::Reject(r) => {
                                rejects_out.write_line(&to_line(&r))?;
                                rejected += 1;
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    })?;
    triples_out.commit()?;
    rejects_out.commit()?;
    info!("ladder {}: {accepted} triples, {rejected} rejected, {invalid} invalid records", cfg.ladder_name());
    Ok(())
}

#[derive(Deserialize)]
struct QuestionLine {
    id: String,
    question: String,
}

fn load_questions(path: &Path) -> Result<HashMap<String, String>> {
    let mut map = HashMap::new();
    for (i, line) in io::open_lines(path)?.enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let q: QuestionLine = serde_json::from_str(&line)
            .map_err(|e| UsageError(format!("{}:{}: {e}", path.display(), i + 1)))?;
        map.insert(q.id, q.question);
    }
    Ok(map)
}

#[derive(Serialize)]
struct Seq2SeqLine<'a> {
    id: &'a str,
    input: String,
}

#[allow(clippy::too_many_arguments)]
fn gen_qa_data(
    exec: &Executor,
    paragraphs: &Path,
    out: &Path,
    rejects: Option<PathBuf>,
    questions: Option<&Path>,
    inputs_out: Option<&Path>,
    dataset_name: &str,
    heuristics: &HeuristicArgs,
) -> Result<()> {
    let cfg = heuristics.resolve()?;
    let rejects = rejects.unwrap_or_else(|| default_rejects(out));
    let mut inputs: Vec<&Path> = vec![paragraphs];
    inputs.extend(questions);
    let mut outputs: Vec<&Path> = vec![out, &rejects];
    outputs.extend(inputs_out);
    ensure_distinct(&inputs, &outputs)?;

    let table = questions.map(load_questions).transpose()?;
    let source = match &table {
        Some(t) => QuestionSource::Table(t),
        None => QuestionSource::Heuristic,
    };

    let mut rejects_out = AtomicOutput::create(&rejects)?;
    let mut seq_out = inputs_out.map(AtomicOutput::create).transpose()?;
    let mut pairs: Vec<QaPair> = Vec::new();
    let (mut rejected, mut invalid) = (0usize, 0usize);
    for_each_chunk(paragraphs, |chunk| {
        let results = exec.map_ordered(&chunk, |(line, text)| match ParagraphRecord::from_json_line(text) {
            Ok(rec) => LineResult::Outcomes(build_qa_pairs(&rec, &cfg, source)),
            Err(e) => LineResult::Invalid { line: *line, error: e.to_string() },
        });
        for r in results {
            match r {
                LineResult::Invalid { line, error } => {
                    warn!("{}:{line}: skipped: {error}", paragraphs.display());
                    invalid += 1;
                }
                LineResult::Outcomes(outcomes) => {
                    for o in outcomes {
                        match o {
                            Outcome::Accept(p) => {
                                if let Some(w) = seq_out.as_mut() {
                                    let input = emit_seq2seq_input(&p.paragraph_text, &p.answer_text);
                                    w.write_line(&to_line(&Seq2SeqLine { id: &p.pair_id, input }))?;
                                }
                                pairs.push(p);
                            }
                            Outcome::Reject(r) => {
                                rejects_out.write_line(&to_line(&r))?;
                                rejected += 1;
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    })?;

    let squad = build_squad_json(&pairs, dataset_name)?;
    let mut squad_out = AtomicOutput::create(out)?;
    squad_out.write_all(squad.as_bytes())?;
    squad_out.commit()?;
    rejects_out.commit()?;
    if let Some(w) = seq_out {
        w.commit()?;
    }
    info!("{} qa pairs, {rejected} rejected, {invalid} invalid records", pairs.len());
    Ok(())
}

#[derive(Serialize)]
struct ParagraphLine<'a> {
    para_id: String,
    text: &'a str,
}

fn clean_wiki(input: &Path, out: &Path, min_chars: usize) -> Result<()> {
    ensure_distinct(&[input], &[out])?;
    let raw = std::fs::read_to_string(input).with_context(|| format!("cannot read {}", input.display()))?;
    let stem = input.file_stem().and_then(|s| s.to_str()).unwrap_or("para");
    let paragraphs = clean_wiki_paragraphs(&raw, min_chars);
    let mut w = AtomicOutput::create(out)?;
    for (k, text) in paragraphs.iter().enumerate() {
        w.write_line(&to_line(&ParagraphLine { para_id: format!("{stem}-{k}"), text }))?;
    }
    w.commit()?;
    info!("{} paragraphs kept", paragraphs.len());
    Ok(())
}

#[derive(Deserialize)]
struct QuestionRecord {
    #[serde(default)]
    id: Option<String>,
    question: String,
    #[serde(default)]
    passage: Option<String>,
    #[serde(default)]
    answer: Option<String>,
    #[serde(default)]
    meta: Option<TripleMeta>,
}

#[derive(Deserialize)]
struct SquadDoc {
    data: Vec<SquadArticle>,
}

#[derive(Deserialize)]
struct SquadArticle {
    paragraphs: Vec<SquadParagraph>,
}

#[derive(Deserialize)]
struct SquadParagraph {
    context: String,
    qas: Vec<SquadQa>,
}

#[derive(Deserialize)]
struct SquadQa {
    id: String,
    question: String,
    answers: Vec<SquadAnswer>,
}

#[derive(Deserialize)]
struct SquadAnswer {
    text: String,
}

/// Lint inputs from a triples file or a SQuAD document.
fn read_questions(path: &Path) -> Result<Vec<LintInput>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    if let Ok(doc) = serde_json::from_str::<SquadDoc>(&text) {
        let mut out = Vec::new();
        for p in doc.data.into_iter().flat_map(|a| a.paragraphs) {
            for qa in p.qas {
                out.push(LintInput {
                    id: qa.id,
                    question: qa.question,
                    answer: qa.answers.into_iter().next().map(|a| a.text).unwrap_or_default(),
                    passage: p.context.clone(),
                    ..Default::default()
                });
            }
        }
        return Ok(out);
    }
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let rec: QuestionRecord = serde_json::from_str(line)
            .map_err(|e| UsageError(format!("{}:{}: {e}", path.display(), i + 1)))?;
        out.push(match rec.meta {
            Some(meta) => LintInput::from(&QgTriple {
                passage: rec.passage.unwrap_or_default(),
                answer: rec.answer.unwrap_or_default(),
                question: rec.question,
                meta,
            }),
            None => LintInput {
                id: rec.id.unwrap_or_else(|| format!("line-{}", i + 1)),
                question: rec.question,
                answer: rec.answer.unwrap_or_default(),
                passage: rec.passage.unwrap_or_default(),
                ..Default::default()
            },
        });
    }
    Ok(out)
}

fn stats(questions: &Path, report: &Path) -> Result<()> {
    ensure_distinct(&[questions], &[report])?;
    let records = read_questions(questions)?;
    let r = StatsReport::build(&records);
    let mut w = AtomicOutput::create(report)?;
    w.write_all(serde_json::to_string_pretty(&r)?.as_bytes())?;
    w.write_all(b"\n")?;
    w.commit()?;
    info!("{} questions, mean overlap {:.4}, {} lint issues", r.total, r.mean_overlap, r.lint.len());
    Ok(())
}

fn lint(exec: &Executor, input: &Path, out: &Path) -> Result<()> {
    ensure_distinct(&[input], &[out])?;
    let records = read_questions(input)?;
    let issues = exec.map_ordered(&records, sumqg::lint_question);
    let mut w = AtomicOutput::create(out)?;
    let mut count = 0;
    for issue in issues.iter().flatten() {
        w.write_line(&to_line(issue))?;
        count += 1;
    }
    w.commit()?;
    info!("{count} issues in {} questions", records.len());
    Ok(())
}

#[derive(Serialize)]
struct ValidationSummary {
    records: usize,
    valid: usize,
    invalid: usize,
}

fn validate(input: &Path, kind: RecordKind, paragraph: bool) -> Result<()> {
    let profile = if paragraph { Validation::Paragraph } else { Validation::Sentence };
    let mut summary = ValidationSummary { records: 0, valid: 0, invalid: 0 };
    for_each_chunk(input, |chunk| {
        for (line, text) in chunk {
            summary.records += 1;
            let result = match kind {
                RecordKind::Annotation => parse_annotation_with(&text, profile).map(drop).map_err(|e| e.to_string()),
                RecordKind::Pairs => DocumentPair::from_json_line(&text).map(drop).map_err(|e| e.to_string()),
                RecordKind::Paragraphs => ParagraphRecord::from_json_line(&text).map(drop).map_err(|e| e.to_string()),
            };
            match result {
                Ok(()) => summary.valid += 1,
                Err(e) => {
                    summary.invalid += 1;
                    warn!("{}:{line}: {e}", input.display());
                }
            }
        }
        Ok(())
    })?;
    println!("{}", to_line(&summary));
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    let exec = Executor::new(cli.workers.get())?;
    match cli.command {
        Command::GenQgData { pairs, out, rejects, heuristics } => gen_qg_data(&exec, &pairs, &out, rejects, &heuristics),
        Command::GenQaData { paragraphs, out, rejects, questions, inputs_out, dataset_name, heuristics } => gen_qa_data(
            &exec,
            &paragraphs,
            &out,
            rejects,
            questions.as_deref(),
            inputs_out.as_deref(),
            &dataset_name,
            &heuristics,
        ),
        Command::CleanWiki { input, out, min_chars } => clean_wiki(&input, &out, min_chars),
        Command::Stats { questions, report } => stats(&questions, &report),
        Command::Lint { input, out } => lint(&exec, &input, &out),
        Command::Validate { input, kind, paragraph } => validate(&input, kind, paragraph),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
