//! OEIS b-file reading and comparison against `zcl_3(P^n) + 1`.
//!
//! A b-file is plain ASCII: optional `#` comment lines and data lines
//! `<index><whitespace><value>` with strictly increasing indices.

use std::path::Path;

use num_bigint::BigUint;
use thiserror::Error;
use zcl_core::stability::z3_characterization;
use zcl_core::Nat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BFileEntry {
    pub index: i64,
    pub value: BigUint,
}

#[derive(Debug, Error)]
pub enum BFileError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("b-file has no data lines")]
    Empty,
}

pub fn parse(text: &str) -> Result<Vec<BFileEntry>, BFileError> {
    let mut entries: Vec<BFileEntry> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: String| BFileError::Parse { line: idx + 1, msg };
        let mut fields = line.split_whitespace();
        let (Some(index), Some(value), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(err(format!("expected '<index> <value>', got '{line}'")));
        };
        let index: i64 = index
            .parse()
            .map_err(|_| err(format!("bad index '{index}'")))?;
        let value: BigUint = value
            .parse()
            .map_err(|_| err(format!("bad value '{value}'")))?;
        if let Some(prev) = entries.last() {
            if index <= prev.index {
                return Err(err(format!(
                    "index {index} does not increase (previous {})",
                    prev.index
                )));
            }
        }
        entries.push(BFileEntry { index, value });
    }
    if entries.is_empty() {
        return Err(BFileError::Empty);
    }
    Ok(entries)
}

pub fn read(path: &Path) -> Result<Vec<BFileEntry>, BFileError> {
    let text = std::fs::read_to_string(path).map_err(|source| BFileError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse(&text)
}

/// The sequence value predicted at `n`: `zcl_3(P^n) + 1`.
pub fn predicted(n: u64) -> BigUint {
    z3_characterization(&Nat::from(n)) + 1u32
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlignError {
    #[error("offset {offset} maps index {index} to negative n")]
    NegativeN { offset: i64, index: i64 },
    #[error("no offset in {lo}..={hi} matches the first {probe} entries")]
    NoMatch { lo: i64, hi: i64, probe: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub index: i64,
    pub n: u64,
    pub expected: BigUint,
    pub found: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    /// Entry index `i` corresponds to `n = i - offset`.
    pub offset: i64,
    pub detected: bool,
    pub compared: usize,
    pub agreed: usize,
    pub first_mismatch: Option<Mismatch>,
}

/// Offsets tried when no hint is given, nearest to 0 first.
const SEARCH: i64 = 8;
const PROBE: usize = 3;

fn n_for(entry: &BFileEntry, offset: i64) -> Result<u64, AlignError> {
    u64::try_from(entry.index - offset).map_err(|_| AlignError::NegativeN {
        offset,
        index: entry.index,
    })
}

fn matches_prefix(entries: &[BFileEntry], offset: i64) -> bool {
    entries.iter().take(PROBE).all(|e| match n_for(e, offset) {
        Ok(n) => predicted(n) == e.value,
        Err(_) => false,
    })
}

/// Chooses the offset: the hint when given, else the offset nearest 0
/// whose predictions match the first three entries.
pub fn align(entries: &[BFileEntry], hint: Option<i64>) -> Result<(i64, bool), AlignError> {
    if let Some(offset) = hint {
        if let Some(e) = entries.iter().find(|e| e.index < offset) {
            return Err(AlignError::NegativeN {
                offset,
                index: e.index,
            });
        }
        return Ok((offset, false));
    }
    std::iter::once(0)
        .chain((1..=SEARCH).flat_map(|d| [d, -d]))
        .find(|&o| matches_prefix(entries, o))
        .map(|o| (o, true))
        .ok_or(AlignError::NoMatch {
            lo: -SEARCH,
            hi: SEARCH,
            probe: PROBE.min(entries.len()),
        })
}

pub fn compare(entries: &[BFileEntry], hint: Option<i64>) -> Result<Comparison, AlignError> {
    let (offset, detected) = align(entries, hint)?;
    let mut agreed = 0;
    let mut first_mismatch = None;
    for e in entries {
        let n = n_for(e, offset)?;
        let expected = predicted(n);
        if expected == e.value {
            agreed += 1;
        } else if first_mismatch.is_none() {
            first_mismatch = Some(Mismatch {
                index: e.index,
                n,
                expected,
                found: e.value.clone(),
            });
        }
    }
    Ok(Comparison {
        offset,
        detected,
        compared: entries.len(),
        agreed,
        first_mismatch,
    })
}
