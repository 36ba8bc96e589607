//! The sweep driver: trains and evaluates every (method, merge budget)
//! cell across the requested seeds on one corpus, then aggregates fertility
//! with mean/standard-error per cell — a desk-scale replication grid.
//!
//! Cells are independent (each run owns its random source), so with the
//! `parallel` feature they execute on the rayon pool; output order is the
//! method-major, budget-minor order of the request either way.

use std::str::FromStr;

use bpekit_core::{
    coverage, mean_std_error, segmentation_report_from_lines, train_bpe, Error, JoinerConvention,
    ReplicationSummary, Result, SamplingMethod, Segmenter,
};

use crate::report;
use crate::SweepArgs;

/// Aggregated metrics for one (method, merges) cell.
pub struct CellSummary {
    pub method: SamplingMethod,
    pub merges: usize,
    pub fertility: ReplicationSummary,
    pub vocab_mean: f64,
    pub coverage_mean: f64,
}

pub fn run(args: SweepArgs) -> Result<()> {
    let methods = parse_methods(&args.methods)?;
    let budgets = parse_budgets(&args.merges)?;
    let seeds = parse_seeds(&args.seeds)?;
    if seeds.len() < 2 {
        return Err(Error::Validation(
            "sweep needs at least 2 seeds to report a standard error".into(),
        ));
    }
    let conv = JoinerConvention::new(&args.joiner)?;

    let lines = crate::read_lines(&args.input)?;
    let corpus = bpekit_core::WordTypeCorpus::from_tokenized_lines(&lines)?;
    if corpus.is_empty() {
        return Err(Error::Validation("sweep corpus has no tokens".into()));
    }

    let specs: Vec<(SamplingMethod, usize)> = methods
        .iter()
        .flat_map(|&method| budgets.iter().map(move |&merges| (method, merges)))
        .collect();

    let cells = evaluate_cells(&specs, &corpus, &lines, &seeds, &conv, args.threshold)?;

    let mut writer = crate::open_output(None)?;
    report::write_sweep_table(writer.as_mut(), &cells, args.threshold, args.format)?;
    writer.flush()?;
    Ok(())
}

fn evaluate_cells(
    specs: &[(SamplingMethod, usize)],
    corpus: &bpekit_core::WordTypeCorpus,
    lines: &[String],
    seeds: &[u64],
    conv: &JoinerConvention,
    threshold: u64,
) -> Result<Vec<CellSummary>> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        specs
            .par_iter()
            .map(|&(method, merges)| {
                evaluate_cell(method, merges, corpus, lines, seeds, conv, threshold)
            })
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        specs
            .iter()
            .map(|&(method, merges)| {
                evaluate_cell(method, merges, corpus, lines, seeds, conv, threshold)
            })
            .collect()
    }
}

fn evaluate_cell(
    method: SamplingMethod,
    merges: usize,
    corpus: &bpekit_core::WordTypeCorpus,
    lines: &[String],
    seeds: &[u64],
    conv: &JoinerConvention,
    threshold: u64,
) -> Result<CellSummary> {
    let mut fertilities = Vec::with_capacity(seeds.len());
    let mut vocab_sizes = Vec::with_capacity(seeds.len());
    let mut coverages = Vec::with_capacity(seeds.len());

    for &seed in seeds {
        let table = train_bpe(corpus, merges, method, seed);
        let segmenter = Segmenter::new(table, conv.clone());
        let segmented = segmenter.segment_lines_seq(lines)?;
        let report = segmentation_report_from_lines(lines, &segmented)?;
        fertilities.push(report.fertility());
        vocab_sizes.push(report.vocab_size() as f64);
        coverages.push(coverage(&report, threshold)?.fraction_at_or_above);
    }

    Ok(CellSummary {
        method,
        merges,
        fertility: mean_std_error(&fertilities)?,
        vocab_mean: mean(&vocab_sizes),
        coverage_mean: mean(&coverages),
    })
}

fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

fn parse_methods(spec: &str) -> Result<Vec<SamplingMethod>> {
    let methods: Vec<SamplingMethod> = spec
        .split(',')
        .map(|s| SamplingMethod::from_str(s.trim()))
        .collect::<Result<_>>()?;
    if methods.is_empty() {
        return Err(Error::Validation("no sampling methods given".into()));
    }
    Ok(methods)
}

fn parse_budgets(spec: &str) -> Result<Vec<usize>> {
    spec.split(',')
        .map(|s| {
            s.trim().parse::<usize>().map_err(|_| {
                Error::Validation(format!("invalid merge budget {s:?} (expected an integer)"))
            })
        })
        .collect()
}

/// Accepts `a..b` (inclusive on both ends) or a comma-separated list.
fn parse_seeds(spec: &str) -> Result<Vec<u64>> {
    let bad = |what: &str| Error::Validation(format!("invalid seed specification {what:?}"));
    if let Some((start, end)) = spec.split_once("..") {
        let start: u64 = start.trim().parse().map_err(|_| bad(spec))?;
        let end: u64 = end.trim().parse().map_err(|_| bad(spec))?;
        if end < start {
            return Err(bad(spec));
        }
        return Ok((start..=end).collect());
    }
    spec.split(',')
        .map(|s| s.trim().parse::<u64>().map_err(|_| bad(spec)))
        .collect()
}
