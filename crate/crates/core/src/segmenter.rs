//! Applying a learned merge table to new text.
//!
//! A token is split to characters plus the end-of-word marker, then every
//! rule is applied in rank order, exactly mirroring what training did to
//! the word types it saw. Output uses a joiner convention: non-final
//! subwords of a word carry a joiner suffix (`@@` by default) and the
//! marker is stripped, so segmentation is losslessly invertible.

use std::collections::{HashMap, HashSet};
use std::sync::RwLock;

use crate::error::{Error, Result};
use crate::symbol::{apply_pair, slice_contains_pair, Symbol, SymbolSequence, END_OF_WORD};
use crate::trainer::MergeTable;

/// How non-final subwords are marked in segmented output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JoinerConvention {
    joiner: String,
}

impl JoinerConvention {
    /// A custom joiner; must be non-empty, whitespace-free and distinct
    /// from the end-of-word marker.
    pub fn new(joiner: &str) -> Result<Self> {
        if joiner.is_empty() {
            return Err(Error::Validation("joiner must be non-empty".into()));
        }
        if joiner.chars().any(char::is_whitespace) {
            return Err(Error::Validation(format!(
                "joiner {joiner:?} contains whitespace"
            )));
        }
        if joiner == END_OF_WORD {
            return Err(Error::Validation(
                "joiner collides with the end-of-word marker".into(),
            ));
        }
        Ok(Self {
            joiner: joiner.to_string(),
        })
    }

    pub fn joiner(&self) -> &str {
        &self.joiner
    }
}

impl Default for JoinerConvention {
    fn default() -> Self {
        Self {
            joiner: "@@".to_string(),
        }
    }
}

/// Segments one token: characters plus marker, then each rule in rank order
/// (left-to-right non-overlapping within the word). Unknown characters pass
/// through as singleton symbols.
pub fn segment_word(token: &str, table: &MergeTable) -> Result<Vec<Symbol>> {
    let seq = SymbolSequence::from_token(token)?;
    let mut symbols = seq.symbols().to_vec();
    // Over-approximate set of symbols seen in the word; a rule whose side
    // never appeared cannot match, so it is skipped without a scan.
    let mut present: HashSet<Symbol> = symbols.iter().cloned().collect();
    for rule in table.rules() {
        if symbols.len() < 2 {
            break;
        }
        if !present.contains(rule.left()) || !present.contains(rule.right()) {
            continue;
        }
        if !slice_contains_pair(&symbols, rule.left(), rule.right()) {
            continue;
        }
        symbols = apply_pair(&symbols, rule.left(), rule.right(), rule.merged());
        present.insert(rule.merged().clone());
    }
    Ok(symbols)
}

/// Renders a segmented word with the joiner convention: the end-of-word
/// marker is stripped (a bare trailing marker attaches to the preceding
/// subword as word-final) and every non-final subword gets the joiner
/// suffix.
pub fn render_subwords(symbols: &[Symbol], conv: &JoinerConvention) -> String {
    if symbols.is_empty() {
        return String::new();
    }
    let mut parts: Vec<&str> = Vec::with_capacity(symbols.len());
    let last = symbols.len() - 1;
    for (i, sym) in symbols.iter().enumerate() {
        if i == last {
            if sym.is_end_of_word() {
                continue; // preceding subword is already word-final
            }
            match sym.as_str().strip_suffix(END_OF_WORD) {
                Some(stripped) => parts.push(stripped),
                None => parts.push(sym.as_str()),
            }
        } else {
            parts.push(sym.as_str());
        }
    }
    if parts.is_empty() {
        return String::new();
    }
    let mut out = String::new();
    let final_part = parts.len() - 1;
    for (i, part) in parts.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push_str(part);
        if i < final_part {
            out.push_str(conv.joiner());
        }
    }
    out
}

/// Segments one whitespace-tokenized line; subwords come out separated by
/// single spaces. Empty lines stay empty.
pub fn segment_line(line: &str, table: &MergeTable, conv: &JoinerConvention) -> Result<String> {
    let mut out = String::new();
    for (i, token) in line.split_whitespace().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        let symbols = segment_word(token, table)?;
        out.push_str(&render_subwords(&symbols, conv));
    }
    Ok(out)
}

/// Inverts the joiner convention by deleting every joiner-before-space
/// occurrence. Idempotent on joiner-free text.
pub fn desegment_line(line: &str, conv: &JoinerConvention) -> String {
    let pattern = format!("{} ", conv.joiner());
    line.replace(&pattern, "")
}

/// A merge table plus joiner convention bundled for stream segmentation,
/// with a word-type cache: word types repeat heavily, so each distinct
/// token is segmented once.
pub struct Segmenter {
    table: MergeTable,
    conv: JoinerConvention,
    cache: RwLock<HashMap<String, String>>,
}

impl Segmenter {
    pub fn new(table: MergeTable, conv: JoinerConvention) -> Self {
        Self {
            table,
            conv,
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn table(&self) -> &MergeTable {
        &self.table
    }

    pub fn convention(&self) -> &JoinerConvention {
        &self.conv
    }

    /// Cached per-token segmentation, already joiner-rendered.
    pub fn segment_token(&self, token: &str) -> Result<String> {
        if let Some(hit) = self.cache.read().expect("cache lock").get(token) {
            return Ok(hit.clone());
        }
        let symbols = segment_word(token, &self.table)?;
        let rendered = render_subwords(&symbols, &self.conv);
        self.cache
            .write()
            .expect("cache lock")
            .insert(token.to_string(), rendered.clone());
        Ok(rendered)
    }

    pub fn segment_line(&self, line: &str) -> Result<String> {
        let mut out = String::new();
        for (i, token) in line.split_whitespace().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push_str(&self.segment_token(token)?);
        }
        Ok(out)
    }

    /// Segments a batch of lines, output order equal to input order.
    /// Dispatches to the parallel implementation when the `parallel`
    /// feature is enabled.
    pub fn segment_lines(&self, lines: &[String]) -> Result<Vec<String>> {
        #[cfg(feature = "parallel")]
        {
            self.segment_lines_par(lines)
        }
        #[cfg(not(feature = "parallel"))]
        {
            self.segment_lines_seq(lines)
        }
    }

    /// Sequential batch segmentation.
    pub fn segment_lines_seq(&self, lines: &[String]) -> Result<Vec<String>> {
        lines.iter().map(|line| self.segment_line(line)).collect()
    }

    /// Parallel batch segmentation over lines; the indexed collect keeps
    /// output order identical to input order.
    #[cfg(feature = "parallel")]
    pub fn segment_lines_par(&self, lines: &[String]) -> Result<Vec<String>> {
        use rayon::prelude::*;

        lines
            .par_iter()
            .map(|line| self.segment_line(line))
            .collect()
    }
}
