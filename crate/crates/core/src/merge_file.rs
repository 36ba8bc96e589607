//! Merge-table interchange.
//!
//! The main file is plain UTF-8 text with LF line endings: a `#version: 0.2`
//! header, then one `left right` line per rule in rank order — the merge-list
//! layout widely consumed by subword toolchains. Provenance (method, seed,
//! requested budget, early-stop flag) travels in a `<file>.meta` sidecar of
//! `key=value` lines so the main file stays drop-in interoperable.

use std::fs::File;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::symbol::Symbol;
use crate::trainer::{MergeTable, TrainingProvenance};

/// Exact header line of a merge file.
pub const MERGE_FILE_HEADER: &str = "#version: 0.2";

/// Serializes the table: header, then one `left right` line per rule in
/// rank order. Bytes are identical for a given table on every platform.
pub fn write_merges<W: Write>(table: &MergeTable, mut writer: W) -> Result<()> {
    let mut buf = String::new();
    buf.push_str(MERGE_FILE_HEADER);
    buf.push('\n');
    for rule in table.rules() {
        buf.push_str(rule.left().as_str());
        buf.push(' ');
        buf.push_str(rule.right().as_str());
        buf.push('\n');
    }
    writer.write_all(buf.as_bytes())?;
    Ok(())
}

/// The serialized merge file as bytes.
pub fn merges_to_bytes(table: &MergeTable) -> Vec<u8> {
    let mut bytes = Vec::new();
    write_merges(table, &mut bytes).expect("writing to a Vec cannot fail");
    bytes
}

/// Parses a merge file. Ranks come from line order; the constructibility
/// invariant is validated and a missing sidecar means the returned table
/// has no provenance.
pub fn read_merges<R: BufRead>(reader: R) -> Result<MergeTable> {
    let mut lines = reader.lines();
    match lines.next() {
        Some(first) => {
            let first = first?;
            if first != MERGE_FILE_HEADER {
                return Err(Error::Parse {
                    line: 1,
                    message: format!("expected header {MERGE_FILE_HEADER:?}, found {first:?}"),
                });
            }
        }
        None => {
            return Err(Error::Parse {
                line: 1,
                message: format!("empty input; expected header {MERGE_FILE_HEADER:?}"),
            })
        }
    }

    let mut pairs = Vec::new();
    for (i, line) in lines.enumerate() {
        let line_no = i as u64 + 2;
        let line = line?;
        let mut fields = line.split(' ');
        let (left, right) = match (fields.next(), fields.next(), fields.next()) {
            (Some(l), Some(r), None) => (l, r),
            _ => {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected 2 space-separated fields, got {line:?}"),
                });
            }
        };
        let parse_symbol = |text: &str| {
            Symbol::new(text).map_err(|err| Error::Parse {
                line: line_no,
                message: err.to_string(),
            })
        };
        pairs.push((parse_symbol(left)?, parse_symbol(right)?));
    }
    MergeTable::from_pairs(pairs)
}

/// Renders the sidecar record for a trained table.
pub fn render_sidecar(provenance: &TrainingProvenance, learned: usize) -> String {
    format!(
        "method={}\nseed={}\nrequested={}\nlearned={}\nearlyStopped={}\n",
        provenance.method,
        provenance.seed,
        provenance.requested_merges,
        learned,
        provenance.early_stopped
    )
}

/// Parses a sidecar record.
pub fn parse_sidecar(text: &str) -> Result<TrainingProvenance> {
    let mut method = None;
    let mut seed = None;
    let mut requested = None;
    let mut early_stopped = None;

    for (i, line) in text.lines().enumerate() {
        let line_no = i as u64 + 1;
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected key=value, got {line:?}"),
            });
        };
        let bad_value = |what: &str| Error::Parse {
            line: line_no,
            message: format!("invalid {what} value {value:?}"),
        };
        match key {
            "method" => {
                method = Some(
                    crate::policy::SamplingMethod::from_str(value)
                        .map_err(|_| bad_value("method"))?,
                )
            }
            "seed" => seed = Some(value.parse::<u64>().map_err(|_| bad_value("seed"))?),
            "requested" => {
                requested = Some(value.parse::<usize>().map_err(|_| bad_value("requested"))?)
            }
            "learned" => {
                value.parse::<usize>().map_err(|_| bad_value("learned"))?;
            }
            "earlyStopped" => {
                early_stopped = Some(
                    value
                        .parse::<bool>()
                        .map_err(|_| bad_value("earlyStopped"))?,
                )
            }
            other => {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("unknown sidecar key {other:?}"),
                });
            }
        }
    }

    let missing = |what: &str| Error::Parse {
        line: 1,
        message: format!("sidecar is missing the {what} key"),
    };
    Ok(TrainingProvenance {
        method: method.ok_or_else(|| missing("method"))?,
        seed: seed.ok_or_else(|| missing("seed"))?,
        requested_merges: requested.ok_or_else(|| missing("requested"))?,
        early_stopped: early_stopped.ok_or_else(|| missing("earlyStopped"))?,
    })
}

/// Sidecar path for a merge file: the same name with `.meta` appended.
pub fn sidecar_path(merge_path: &Path) -> PathBuf {
    let mut name = merge_path.as_os_str().to_os_string();
    name.push(".meta");
    PathBuf::from(name)
}

/// Writes the merge file at `path` plus, when the table carries provenance,
/// the `.meta` sidecar next to it.
pub fn write_merge_file(path: &Path, table: &MergeTable) -> Result<()> {
    let file = File::create(path)?;
    write_merges(table, file)?;
    if let Some(provenance) = table.provenance() {
        let mut sidecar = File::create(sidecar_path(path))?;
        sidecar.write_all(render_sidecar(provenance, table.len()).as_bytes())?;
    }
    Ok(())
}

/// Reads a merge file and, when present, its sidecar.
pub fn read_merge_file(path: &Path) -> Result<MergeTable> {
    let file = File::open(path)?;
    let table = read_merges(BufReader::new(file))?;
    let sidecar = sidecar_path(path);
    if sidecar.exists() {
        let mut text = String::new();
        File::open(&sidecar)?.read_to_string(&mut text)?;
        Ok(table.with_provenance(parse_sidecar(&text)?))
    } else {
        Ok(table)
    }
}
