//! Report rendering: aligned-column text for reading, `key=value` lines for
//! machines. The text format rounds the type-token ratio to two decimals;
//! the key-value format always carries full precision.

use std::io::Write;

use clap::ValueEnum;

use bpekit_core::{CorpusStats, CoverageReport, Result, SegmentationReport};

use crate::sweep::CellSummary;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    /// Aligned columns for humans
    Text,
    /// One key=value per line
    Kv,
}

/// Full-precision float rendering for the key-value format.
pub fn fmt_full(value: f64) -> String {
    format!("{value}")
}

pub fn write_corpus_stats(
    writer: &mut dyn Write,
    stats: &CorpusStats,
    format: OutputFormat,
) -> Result<()> {
    let ttr = stats.type_token_ratio();
    match format {
        OutputFormat::Text => {
            writeln!(writer, "{:<18} {}", "sentences", stats.sentences)?;
            writeln!(writer, "{:<18} {}", "tokens", stats.tokens)?;
            writeln!(writer, "{:<18} {}", "types", stats.types)?;
            match ttr {
                Some(ttr) => writeln!(writer, "{:<18} {ttr:.2}", "type-token ratio")?,
                None => writeln!(writer, "{:<18} undefined", "type-token ratio")?,
            }
        }
        OutputFormat::Kv => {
            writeln!(writer, "sentences={}", stats.sentences)?;
            writeln!(writer, "tokens={}", stats.tokens)?;
            writeln!(writer, "types={}", stats.types)?;
            match ttr {
                Some(ttr) => writeln!(writer, "type_token_ratio={}", fmt_full(ttr))?,
                None => writeln!(writer, "type_token_ratio=undefined")?,
            }
        }
    }
    Ok(())
}

pub fn write_segmentation_report(
    writer: &mut dyn Write,
    report: &SegmentationReport,
    cov: &CoverageReport,
    format: OutputFormat,
) -> Result<()> {
    match format {
        OutputFormat::Text => {
            writeln!(
                writer,
                "{:<18} {}",
                "original tokens", report.original_tokens
            )?;
            writeln!(writer, "{:<18} {}", "subword tokens", report.subword_tokens)?;
            writeln!(writer, "{:<18} {:.4}", "fertility", report.fertility())?;
            writeln!(writer, "{:<18} {}", "subword vocab", report.vocab_size())?;
            writeln!(
                writer,
                "coverage@{:<9} {:.4} ({})",
                cov.threshold,
                cov.fraction_at_or_above,
                if cov.passes_95() { "pass" } else { "fail" }
            )?;
        }
        OutputFormat::Kv => {
            writeln!(writer, "original_tokens={}", report.original_tokens)?;
            writeln!(writer, "subword_tokens={}", report.subword_tokens)?;
            writeln!(writer, "fertility={}", fmt_full(report.fertility()))?;
            writeln!(writer, "subword_vocab={}", report.vocab_size())?;
            writeln!(writer, "coverage_threshold={}", cov.threshold)?;
            writeln!(
                writer,
                "coverage_fraction={}",
                fmt_full(cov.fraction_at_or_above)
            )?;
            writeln!(writer, "coverage_passes95={}", cov.passes_95())?;
        }
    }
    Ok(())
}

pub fn write_comparison(
    writer: &mut dyn Write,
    a: &SegmentationReport,
    b: &SegmentationReport,
    ratio: f64,
    format: OutputFormat,
) -> Result<()> {
    match format {
        OutputFormat::Text => {
            writeln!(writer, "{:<22} {:.4}", "fertility a", a.fertility())?;
            writeln!(writer, "{:<22} {:.4}", "fertility b", b.fertility())?;
            writeln!(writer, "{:<22} {ratio:.4}", "length ratio (b/a)")?;
        }
        OutputFormat::Kv => {
            writeln!(writer, "fertility_a={}", fmt_full(a.fertility()))?;
            writeln!(writer, "fertility_b={}", fmt_full(b.fertility()))?;
            writeln!(writer, "length_ratio={}", fmt_full(ratio))?;
        }
    }
    Ok(())
}

pub fn write_sweep_table(
    writer: &mut dyn Write,
    cells: &[CellSummary],
    threshold: u64,
    format: OutputFormat,
) -> Result<()> {
    match format {
        OutputFormat::Text => {
            writeln!(
                writer,
                "{:<10} {:>8}  {:<22} {:>12}  {:>14}",
                "method",
                "merges",
                "fertility mean (SE)",
                "vocab mean",
                format!("cov@{threshold} mean")
            )?;
            for cell in cells {
                writeln!(
                    writer,
                    "{:<10} {:>8}  {:<22} {:>12.1}  {:>14.4}",
                    cell.method.name(),
                    cell.merges,
                    format!(
                        "{:.4} ({:.4})",
                        cell.fertility.mean, cell.fertility.std_error
                    ),
                    cell.vocab_mean,
                    cell.coverage_mean
                )?;
            }
        }
        OutputFormat::Kv => {
            for (i, cell) in cells.iter().enumerate() {
                if i > 0 {
                    writeln!(writer)?;
                }
                writeln!(writer, "method={}", cell.method.name())?;
                writeln!(writer, "merges={}", cell.merges)?;
                writeln!(writer, "seeds={}", cell.fertility.n)?;
                writeln!(writer, "fertility_mean={}", fmt_full(cell.fertility.mean))?;
                writeln!(
                    writer,
                    "fertility_se={}",
                    fmt_full(cell.fertility.std_error)
                )?;
                writeln!(writer, "vocab_mean={}", fmt_full(cell.vocab_mean))?;
                writeln!(writer, "coverage_threshold={threshold}")?;
                writeln!(writer, "coverage_mean={}", fmt_full(cell.coverage_mean))?;
            }
        }
    }
    Ok(())
}
