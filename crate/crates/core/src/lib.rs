//! Byte pair encoding with pluggable merge-selection policies.
//!
//! The classic BPE trainer greedily merges the most frequent adjacent
//! symbol pair; this crate additionally supports drawing each merge from a
//! softmax, count-proportional or uniform distribution over the observed
//! pairs, with a fully deterministic seeded sampler. Around the trainer sit
//! a segmenter that applies learned tables to new text, an interchange
//! format for merge tables, and a statistics suite (fertility, coverage,
//! type–token ratio, replication summaries) for measuring what a selection
//! policy does to the resulting segmentations.
//!
//! # Quick tour
//!
//! ```
//! use bpekit_core::{
//!     segment_line, train_bpe, JoinerConvention, SamplingMethod, WordTypeCorpus,
//! };
//!
//! let corpus = WordTypeCorpus::from_tokenized_lines(["low low lower"]).unwrap();
//! let table = train_bpe(&corpus, 2, SamplingMethod::Standard, 0);
//! let conv = JoinerConvention::default();
//! let segmented = segment_line("lowest low", &table, &conv).unwrap();
//! assert_eq!(segmented, "low@@ e@@ s@@ t low");
//! ```
//!
//! # Parallelism
//!
//! With the default `parallel` feature, pair counting and batch
//! segmentation shard over rayon; results are bit-identical to the
//! sequential fallback (built with `--no-default-features`), which the test
//! suite asserts. Training itself is inherently sequential: every merge
//! conditions the next.

pub mod corpus;
pub mod error;
pub mod merge_file;
pub mod policy;
pub mod rng;
pub mod segmenter;
pub mod stats;
pub mod symbol;
pub mod textgen;
pub mod trainer;

pub use corpus::{PairCounts, SymbolPair, WordTypeCorpus};
pub use error::{Error, Result};
pub use merge_file::{
    read_merge_file, read_merges, write_merge_file, write_merges, MERGE_FILE_HEADER,
};
pub use policy::{
    choose_pair, sample_categorical, selection_probabilities, SamplingMethod, SelectionDistribution,
};
pub use rng::RandomSource;
pub use segmenter::{
    desegment_line, render_subwords, segment_line, segment_word, JoinerConvention, Segmenter,
};
pub use stats::{
    compare_reports, corpus_stats, corpus_stats_from_reader, coverage, mean_std_error,
    segmentation_report, segmentation_report_from_lines, CorpusStats, CoverageReport,
    ReplicationSummary, SegmentationReport,
};
pub use symbol::{MergeRule, Symbol, SymbolSequence, END_OF_WORD};
pub use trainer::{
    replay_table, train_bpe, train_bpe_full_recount, update_counts_incremental, MergeTable,
    TrainingProvenance,
};
