//! Reference values with per-line provenance, embedded from `data/golden.txt`.
//!
//! Line format: `<kind> <n> <k|-> <expected> <source>`, `#` starts a comment.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub const GOLDEN_DATA: &str = include_str!("../data/golden.txt");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GoldenKind {
    /// `zcl_k(P^n)`.
    Zcl,
    /// Stabilization point `s(n)`.
    S,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Source {
    Table1,
    Table2,
    Text,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Source::Table1 => "table1",
            Source::Table2 => "table2",
            Source::Text => "text",
        })
    }
}

impl FromStr for Source {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "table1" => Ok(Source::Table1),
            "table2" => Ok(Source::Table2),
            "text" => Ok(Source::Text),
            other => Err(format!("unknown source tag '{other}'")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GoldenCell {
    pub kind: GoldenKind,
    pub n: u64,
    /// Absent for `s(n)` cells.
    pub k: Option<u64>,
    pub expected: u64,
    pub source: Source,
}

impl fmt::Display for GoldenCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            GoldenKind::Zcl => "zcl",
            GoldenKind::S => "s",
        };
        let k = self.k.map_or_else(|| "-".to_string(), |k| k.to_string());
        write!(f, "{kind} {} {k} {} {}", self.n, self.expected, self.source)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("golden data line {line}: {msg}")]
pub struct GoldenParseError {
    pub line: usize,
    pub msg: String,
}

pub fn parse(text: &str) -> Result<Vec<GoldenCell>, GoldenParseError> {
    let mut cells = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| GoldenParseError { line: idx + 1, msg };
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [kind, n, k, expected, source] = fields[..] else {
            return Err(err(format!("expected 5 fields, found {}", fields.len())));
        };
        let num = |s: &str| {
            s.parse::<u64>()
                .map_err(|e| err(format!("bad number '{s}': {e}")))
        };
        let kind = match kind {
            "zcl" => GoldenKind::Zcl,
            "s" => GoldenKind::S,
            other => return Err(err(format!("unknown kind '{other}'"))),
        };
        let k = match (kind, k) {
            (GoldenKind::S, "-") => None,
            (GoldenKind::Zcl, k) => Some(num(k)?),
            (GoldenKind::S, other) => {
                return Err(err(format!("s cells take '-' for k, got '{other}'")))
            }
        };
        cells.push(GoldenCell {
            kind,
            n: num(n)?,
            k,
            expected: num(expected)?,
            source: source.parse().map_err(err)?,
        });
    }
    Ok(cells)
}

pub fn render(cells: &[GoldenCell]) -> String {
    cells.iter().map(|c| format!("{c}\n")).collect()
}

/// The embedded reference data.
pub fn golden() -> Vec<GoldenCell> {
    parse(GOLDEN_DATA).expect("embedded golden data is well-formed")
}

pub fn table1() -> Vec<GoldenCell> {
    golden()
        .into_iter()
        .filter(|c| c.source == Source::Table1)
        .collect()
}

pub fn table2() -> Vec<GoldenCell> {
    golden()
        .into_iter()
        .filter(|c| c.source == Source::Table2)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_data_shape() {
        let t1 = table1();
        assert_eq!(t1.len(), 119);
        assert!(t1.iter().all(|c| c.kind == GoldenKind::Zcl));
        let t2 = table2();
        assert_eq!(t2.len(), 22);
        assert!(t2.iter().all(|c| c.kind == GoldenKind::S && c.k.is_none()));
        let spot = t1.iter().find(|c| c.k == Some(8) && c.n == 14).unwrap();
        assert_eq!(spot.expected, 105);
    }

    #[test]
    fn render_parse_roundtrip() {
        let cells = golden();
        assert_eq!(parse(&render(&cells)).unwrap(), cells);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let e = parse("# ok\nzcl 1 2 1 table1\nzcl 1 x 1 table1\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert_eq!(parse("s 5 3 3 table2").unwrap_err().line, 1);
        assert!(parse("zcl 1 2 1 nowhere").is_err());
        assert!(parse("zcl 1 2 1").is_err());
    }
}
