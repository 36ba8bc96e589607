//! Corpus and segmentation diagnostics.
//!
//! Descriptive measurements for comparing segmentations: corpus size and
//! type–token ratio, fertility (subwords per original token), subword
//! vocabulary coverage, and mean/standard-error aggregation across
//! replication seeds.

use std::collections::BTreeMap;
use std::io::BufRead;

use crate::error::{Error, Result};

/// Sentence, token and word-type counts for a tokenized corpus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorpusStats {
    pub sentences: u64,
    pub tokens: u64,
    pub types: u64,
}

impl CorpusStats {
    /// Distinct tokens over total tokens; `None` when the corpus has no
    /// tokens (reported as an undefined marker, not a division failure).
    pub fn type_token_ratio(&self) -> Option<f64> {
        if self.tokens == 0 {
            None
        } else {
            Some(self.types as f64 / self.tokens as f64)
        }
    }
}

/// Counts sentences (lines), tokens and distinct word types.
pub fn corpus_stats<I, S>(lines: I) -> CorpusStats
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let mut sentences = 0;
    let mut tokens = 0;
    let mut types = std::collections::HashSet::new();
    for line in lines {
        sentences += 1;
        for token in line.as_ref().split_whitespace() {
            tokens += 1;
            if !types.contains(token) {
                types.insert(token.to_string());
            }
        }
    }
    CorpusStats {
        sentences,
        tokens,
        types: types.len() as u64,
    }
}

/// Streaming variant of [`corpus_stats`].
pub fn corpus_stats_from_reader<R: BufRead>(reader: R) -> Result<CorpusStats> {
    let mut sentences = 0;
    let mut tokens = 0;
    let mut types = std::collections::HashSet::new();
    for line in reader.lines() {
        let line = line?;
        sentences += 1;
        for token in line.split_whitespace() {
            tokens += 1;
            if !types.contains(token) {
                types.insert(token.to_string());
            }
        }
    }
    Ok(CorpusStats {
        sentences,
        tokens,
        types: types.len() as u64,
    })
}

/// Subword-level measurements of a segmentation against its original.
///
/// Joiner-suffixed subwords are distinct vocabulary entries from word-final
/// forms: a downstream model sees them as distinct units.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegmentationReport {
    pub subword_tokens: u64,
    pub original_tokens: u64,
    pub subword_vocab: BTreeMap<String, u64>,
}

impl SegmentationReport {
    /// Average subwords emitted per original token.
    pub fn fertility(&self) -> f64 {
        self.subword_tokens as f64 / self.original_tokens as f64
    }

    /// Number of distinct subwords observed.
    pub fn vocab_size(&self) -> usize {
        self.subword_vocab.len()
    }
}

/// Builds a [`SegmentationReport`] from line-aligned original and segmented
/// streams. A length mismatch is an alignment error carrying the 1-based
/// line number where the shorter stream ended.
pub fn segmentation_report<A, B>(original: A, segmented: B) -> Result<SegmentationReport>
where
    A: BufRead,
    B: BufRead,
{
    let mut original_lines = original.lines();
    let mut segmented_lines = segmented.lines();
    let mut original_tokens = 0u64;
    let mut subword_tokens = 0u64;
    let mut subword_vocab: BTreeMap<String, u64> = BTreeMap::new();
    let mut line_no = 0u64;

    loop {
        line_no += 1;
        match (original_lines.next(), segmented_lines.next()) {
            (Some(orig), Some(seg)) => {
                let orig = orig?;
                let seg = seg?;
                original_tokens += orig.split_whitespace().count() as u64;
                for subword in seg.split_whitespace() {
                    subword_tokens += 1;
                    *subword_vocab.entry(subword.to_string()).or_insert(0) += 1;
                }
            }
            (None, None) => break,
            (Some(_), None) => {
                return Err(Error::Alignment {
                    line: line_no,
                    message: "segmented stream ended before original".into(),
                });
            }
            (None, Some(_)) => {
                return Err(Error::Alignment {
                    line: line_no,
                    message: "original stream ended before segmented".into(),
                });
            }
        }
    }

    Ok(SegmentationReport {
        subword_tokens,
        original_tokens,
        subword_vocab,
    })
}

/// In-memory variant of [`segmentation_report`] over already-split lines.
pub fn segmentation_report_from_lines(
    original: &[String],
    segmented: &[String],
) -> Result<SegmentationReport> {
    if original.len() != segmented.len() {
        return Err(Error::Alignment {
            line: original.len().min(segmented.len()) as u64 + 1,
            message: "streams have different line counts".into(),
        });
    }
    let mut original_tokens = 0u64;
    let mut subword_tokens = 0u64;
    let mut subword_vocab: BTreeMap<String, u64> = BTreeMap::new();
    for (orig, seg) in original.iter().zip(segmented) {
        original_tokens += orig.split_whitespace().count() as u64;
        for subword in seg.split_whitespace() {
            subword_tokens += 1;
            *subword_vocab.entry(subword.to_string()).or_insert(0) += 1;
        }
    }
    Ok(SegmentationReport {
        subword_tokens,
        original_tokens,
        subword_vocab,
    })
}

/// What fraction of the subword vocabulary clears a frequency threshold,
/// with the 95% rule-of-thumb verdict precomputed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoverageReport {
    pub threshold: u64,
    pub fraction_at_or_above: f64,
}

impl CoverageReport {
    /// True when at least 95% of subwords clear the threshold.
    pub fn passes_95(&self) -> bool {
        self.fraction_at_or_above >= 0.95
    }
}

/// Fraction of distinct subwords occurring at least `threshold` times.
/// The boundary is inclusive.
pub fn coverage(report: &SegmentationReport, threshold: u64) -> Result<CoverageReport> {
    if report.subword_vocab.is_empty() {
        return Err(Error::Validation(
            "coverage is undefined for an empty subword vocabulary".into(),
        ));
    }
    let total = report.subword_vocab.len();
    let at_or_above = report
        .subword_vocab
        .values()
        .filter(|&&freq| freq >= threshold)
        .count();
    Ok(CoverageReport {
        threshold,
        fraction_at_or_above: at_or_above as f64 / total as f64,
    })
}

/// Mean and standard error over replication runs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReplicationSummary {
    pub mean: f64,
    pub std_error: f64,
    pub n: usize,
}

/// Mean and standard error (sample standard deviation with the n−1
/// denominator, divided by √n). Needs at least two values.
pub fn mean_std_error(values: &[f64]) -> Result<ReplicationSummary> {
    let n = values.len();
    if n < 2 {
        return Err(Error::Validation(format!(
            "standard error needs at least 2 values, got {n}"
        )));
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    let variance = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n as f64 - 1.0);
    Ok(ReplicationSummary {
        mean,
        std_error: variance.sqrt() / (n as f64).sqrt(),
        n,
    })
}

/// Subword-sequence length ratio of `b` over `a`. Both reports must cover
/// the same original stream.
pub fn compare_reports(a: &SegmentationReport, b: &SegmentationReport) -> Result<f64> {
    if a.original_tokens != b.original_tokens {
        return Err(Error::Incomparable {
            left: a.original_tokens,
            right: b.original_tokens,
        });
    }
    Ok(b.subword_tokens as f64 / a.subword_tokens as f64)
}
