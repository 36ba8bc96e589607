//! Command-line workflows around the BPE core: train a merge table under a
//! selection policy, apply it to text, invert the joiner convention, report
//! corpus/segmentation statistics, compare segmentations, and sweep a
//! methods × merge-budgets × seeds grid with per-cell replication summaries.
//!
//! Diagnostics go to stderr and data to stdout; two invocations with
//! identical flags and inputs produce byte-identical outputs.

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use bpekit_core::{
    compare_reports, corpus_stats_from_reader, coverage, merge_file, segmentation_report,
    segmentation_report_from_lines, train_bpe, Error, JoinerConvention, Result, SamplingMethod,
    Segmenter, WordTypeCorpus,
};

mod report;
mod sweep;

use report::OutputFormat;

#[derive(Parser)]
#[command(
    name = "bpekit",
    version,
    about = "Byte pair encoding with greedy or randomized merge selection"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Learn a merge table from a tokenized corpus
    Train(TrainArgs),
    /// Segment tokenized text with a learned merge table
    Apply(ApplyArgs),
    /// Remove the joiner convention, restoring the original tokenization
    Desegment(DesegmentArgs),
    /// Corpus and segmentation statistics
    Stats {
        #[command(subcommand)]
        what: StatsCommand,
    },
    /// Compare two segmented files against a shared original
    Compare(CompareArgs),
    /// Train and evaluate a methods x merge-budgets x seeds grid
    Sweep(SweepArgs),
}

#[derive(Args)]
struct TrainArgs {
    /// Tokenized training corpus; stdin when omitted
    #[arg(long)]
    input: Option<PathBuf>,
    /// Merge file destination; a `.meta` sidecar is written next to it
    #[arg(long)]
    output: PathBuf,
    /// Number of merge operations to learn
    #[arg(long)]
    merges: usize,
    /// Merge selection policy: standard, softmax, countprop or uniform
    #[arg(long, default_value = "standard", value_parser = parse_method)]
    method: SamplingMethod,
    /// Seed for the sampling policies (standard ignores it)
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct ApplyArgs {
    /// Merge file produced by `train`
    #[arg(long)]
    merges: PathBuf,
    /// Tokenized text to segment; stdin when omitted
    #[arg(long)]
    input: Option<PathBuf>,
    /// Segmented output; stdout when omitted
    #[arg(long)]
    output: Option<PathBuf>,
    /// Suffix marking non-final subwords
    #[arg(long, default_value = "@@")]
    joiner: String,
}

#[derive(Args)]
struct DesegmentArgs {
    /// Segmented text; stdin when omitted
    #[arg(long)]
    input: Option<PathBuf>,
    /// Restored output; stdout when omitted
    #[arg(long)]
    output: Option<PathBuf>,
    /// Suffix marking non-final subwords
    #[arg(long, default_value = "@@")]
    joiner: String,
}

#[derive(Subcommand)]
enum StatsCommand {
    /// Sentence, token and word-type counts with the type-token ratio
    Corpus(StatsCorpusArgs),
    /// Fertility, subword vocabulary and frequency coverage
    Segmentation(StatsSegmentationArgs),
}

#[derive(Args)]
struct StatsCorpusArgs {
    /// Tokenized corpus; stdin when omitted
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
}

#[derive(Args)]
struct StatsSegmentationArgs {
    /// The original tokenized file
    #[arg(long)]
    original: PathBuf,
    /// Its line-aligned segmentation
    #[arg(long)]
    segmented: PathBuf,
    /// Frequency threshold for the coverage report
    #[arg(long, default_value_t = 100)]
    threshold: u64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
}

#[derive(Args)]
struct CompareArgs {
    /// The shared original tokenized file
    #[arg(long)]
    original: PathBuf,
    /// First segmented file (the ratio denominator)
    segmented_a: PathBuf,
    /// Second segmented file (the ratio numerator)
    segmented_b: PathBuf,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
}

#[derive(Args)]
struct SweepArgs {
    /// Tokenized corpus to train and evaluate on
    #[arg(long)]
    input: PathBuf,
    /// Comma-separated selection policies
    #[arg(long, default_value = "standard,softmax,countprop,uniform")]
    methods: String,
    /// Comma-separated merge budgets
    #[arg(long)]
    merges: String,
    /// Seeds, either `a..b` (inclusive) or a comma-separated list
    #[arg(long, default_value = "0..9")]
    seeds: String,
    /// Frequency threshold for per-cell coverage
    #[arg(long, default_value_t = 100)]
    threshold: u64,
    /// Suffix marking non-final subwords
    #[arg(long, default_value = "@@")]
    joiner: String,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
}

fn parse_method(s: &str) -> Result<SamplingMethod> {
    SamplingMethod::from_str(s)
}

fn open_input(path: Option<&Path>) -> Result<Box<dyn BufRead>> {
    match path {
        Some(path) => Ok(Box::new(BufReader::new(File::open(path)?))),
        None => Ok(Box::new(BufReader::new(io::stdin()))),
    }
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    match path {
        Some(path) => Ok(Box::new(BufWriter::new(File::create(path)?))),
        None => Ok(Box::new(BufWriter::new(io::stdout()))),
    }
}

fn read_lines(path: &Path) -> Result<Vec<String>> {
    let reader = BufReader::new(File::open(path)?);
    reader.lines().map(|l| l.map_err(Error::from)).collect()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("bpekit: {err}");
            ExitCode::FAILURE
        }
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Train(args) => cmd_train(args),
        Command::Apply(args) => cmd_apply(args),
        Command::Desegment(args) => cmd_desegment(args),
        Command::Stats { what } => match what {
            StatsCommand::Corpus(args) => cmd_stats_corpus(args),
            StatsCommand::Segmentation(args) => cmd_stats_segmentation(args),
        },
        Command::Compare(args) => cmd_compare(args),
        Command::Sweep(args) => sweep::run(args),
    }
}

fn cmd_train(args: TrainArgs) -> Result<()> {
    let reader = open_input(args.input.as_deref())?;
    let corpus = WordTypeCorpus::from_reader(reader)?;
    let table = train_bpe(&corpus, args.merges, args.method, args.seed);
    merge_file::write_merge_file(&args.output, &table)?;
    eprintln!(
        "learned {} merge rules (requested {})",
        table.len(),
        args.merges
    );
    if table.provenance().is_some_and(|p| p.early_stopped) {
        eprintln!(
            "warning: pair supply exhausted after {} merges",
            table.len()
        );
    }
    Ok(())
}

const APPLY_CHUNK_LINES: usize = 4096;

fn cmd_apply(args: ApplyArgs) -> Result<()> {
    let table = merge_file::read_merge_file(&args.merges)?;
    let conv = JoinerConvention::new(&args.joiner)?;
    let segmenter = Segmenter::new(table, conv);
    let reader = open_input(args.input.as_deref())?;
    let mut writer = open_output(args.output.as_deref())?;

    // bounded chunks keep memory flat while letting the batch path shard
    let mut chunk = Vec::with_capacity(APPLY_CHUNK_LINES);
    for line in reader.lines() {
        chunk.push(line?);
        if chunk.len() == APPLY_CHUNK_LINES {
            write_segmented(&segmenter, &chunk, writer.as_mut())?;
            chunk.clear();
        }
    }
    write_segmented(&segmenter, &chunk, writer.as_mut())?;
    writer.flush()?;
    Ok(())
}

fn write_segmented(segmenter: &Segmenter, lines: &[String], writer: &mut dyn Write) -> Result<()> {
    for segmented in segmenter.segment_lines(lines)? {
        writer.write_all(segmented.as_bytes())?;
        writer.write_all(b"\n")?;
    }
    Ok(())
}

fn cmd_desegment(args: DesegmentArgs) -> Result<()> {
    let conv = JoinerConvention::new(&args.joiner)?;
    let reader = open_input(args.input.as_deref())?;
    let mut writer = open_output(args.output.as_deref())?;
    for line in reader.lines() {
        let restored = bpekit_core::desegment_line(&line?, &conv);
        writer.write_all(restored.as_bytes())?;
        writer.write_all(b"\n")?;
    }
    writer.flush()?;
    Ok(())
}

fn cmd_stats_corpus(args: StatsCorpusArgs) -> Result<()> {
    let reader = open_input(args.input.as_deref())?;
    let stats = corpus_stats_from_reader(reader)?;
    let mut writer = open_output(None)?;
    report::write_corpus_stats(writer.as_mut(), &stats, args.format)?;
    writer.flush()?;
    Ok(())
}

fn cmd_stats_segmentation(args: StatsSegmentationArgs) -> Result<()> {
    let original = BufReader::new(File::open(&args.original)?);
    let segmented = BufReader::new(File::open(&args.segmented)?);
    let seg_report = segmentation_report(original, segmented)?;
    let cov = coverage(&seg_report, args.threshold)?;
    let mut writer = open_output(None)?;
    report::write_segmentation_report(writer.as_mut(), &seg_report, &cov, args.format)?;
    writer.flush()?;
    Ok(())
}

fn cmd_compare(args: CompareArgs) -> Result<()> {
    let original = read_lines(&args.original)?;
    let a = segmentation_report_from_lines(&original, &read_lines(&args.segmented_a)?)?;
    let b = segmentation_report_from_lines(&original, &read_lines(&args.segmented_b)?)?;
    let ratio = compare_reports(&a, &b)?;
    let mut writer = open_output(None)?;
    report::write_comparison(writer.as_mut(), &a, &b, ratio, args.format)?;
    writer.flush()?;
    Ok(())
}
