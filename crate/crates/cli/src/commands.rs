//! Subcommand bodies. Each returns its rendered output and exit status so
//! the binary only has to print and exit.

use std::fmt::Write as _;
use std::path::Path;

use clap::ValueEnum;
use serde::Serialize;
use zcl_core::stability::{lprop_bound, s_formula, sharp_threshold};
use zcl_core::{zcl, BoundReport, Nat};

use crate::bfile;
use crate::golden::{self, GoldenKind, Source};
use crate::verify::{self, Level};
use crate::{Outcome, Status};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Plain,
    Csv,
    Json,
}

#[derive(Serialize)]
struct ReportRow {
    n: serde_json::Number,
    k: u64,
    zcl: serde_json::Number,
    g: serde_json::Number,
    h: serde_json::Number,
    witness: String,
    sharp: bool,
}

fn number(digits: String) -> serde_json::Number {
    digits.parse().expect("decimal integer is a JSON number")
}

pub fn render_report(r: &BoundReport, format: Format) -> String {
    match format {
        Format::Plain => format!(
            "n={} k={} zcl={} g={} h={} witness={} sharp={}\n",
            r.n, r.k, r.zcl, r.g, r.h, r.witness, r.sharp
        ),
        Format::Csv => format!(
            "n,k,zcl,g,h,witness,sharp\n{},{},{},{},{},{},{}\n",
            r.n, r.k, r.zcl, r.g, r.h, r.witness, r.sharp
        ),
        Format::Json => {
            let row = ReportRow {
                n: number(r.n.to_string()),
                k: r.k,
                zcl: number(r.zcl.to_string()),
                g: number(r.g.to_string()),
                h: number(r.h.to_string()),
                witness: r.witness.to_string(),
                sharp: r.sharp,
            };
            let mut s = serde_json::to_string(&row).expect("plain struct serializes");
            s.push('\n');
            s
        }
    }
}

pub fn compute(k: u64, n: &Nat, format: Format) -> Outcome {
    match zcl(k, n) {
        Ok(r) => Outcome::ok(render_report(&r, format)),
        Err(e) => Outcome::usage(format!("error: {e}\n")),
    }
}

fn zcl_u64(k: u64, n: u64) -> Nat {
    zcl(k, &Nat::from(n)).expect("k >= 2").zcl
}

pub fn table1() -> Outcome {
    let cells = golden::table1();
    let (ks, ns) = (2..=8u64, 1..=17u64);
    let mut out = String::new();
    let _ = write!(out, "{:>6}", "k\\n");
    for n in ns.clone() {
        let _ = write!(out, "{n:>5}");
    }
    out.push('\n');
    for k in ks {
        let _ = write!(out, "{:>6}", format!("zcl_{k}"));
        for n in ns.clone() {
            let _ = write!(out, "{:>5}", zcl_u64(k, n));
        }
        out.push('\n');
    }
    let mut mismatches = Vec::new();
    for c in &cells {
        let k = c.k.expect("zcl cells carry k");
        let got = zcl_u64(k, c.n);
        if got != Nat::from(c.expected) {
            mismatches.push(format!(
                "mismatch k={k} n={} got={got} expected={}",
                c.n, c.expected
            ));
        }
    }
    let text_cells: Vec<_> = golden::golden()
        .into_iter()
        .filter(|c| c.source == Source::Text && c.kind == GoldenKind::Zcl)
        .collect();
    for c in &text_cells {
        let k = c.k.expect("zcl cells carry k");
        let got = zcl_u64(k, c.n);
        if got != Nat::from(c.expected) {
            mismatches.push(format!(
                "mismatch k={k} n={} got={got} expected={} (text)",
                c.n, c.expected
            ));
        }
    }
    let _ = writeln!(
        out,
        "{} cells + {} extra values, {} mismatches",
        cells.len(),
        text_cells.len(),
        mismatches.len()
    );
    finish(out, mismatches)
}

fn finish(mut out: String, mismatches: Vec<String>) -> Outcome {
    let status = if mismatches.is_empty() {
        Status::Success
    } else {
        Status::Mismatch
    };
    for m in mismatches {
        out.push_str(&m);
        out.push('\n');
    }
    Outcome {
        stdout: out,
        stderr: String::new(),
        status,
    }
}

pub fn table2() -> Outcome {
    let mut out = String::new();
    let mut mismatches = Vec::new();
    let mut check = |n: Nat, expected: u64, tag: &str, out: &mut String| {
        let got = s_formula(&n).s;
        let _ = writeln!(out, "s({n}) = {got}  [{tag}]");
        if got != Nat::from(expected) {
            mismatches.push(format!(
                "mismatch s({n}) got={got} expected={expected} [{tag}]"
            ));
        }
    };
    let cells: Vec<_> = golden::golden()
        .into_iter()
        .filter(|c| c.kind == GoldenKind::S)
        .collect();
    for c in &cells {
        check(Nat::from(c.n), c.expected, &c.source.to_string(), &mut out);
    }
    for v in 1..=10u64 {
        let p = Nat::from(1u64 << v);
        check(&p - 1u32, 2, "2^v - 1", &mut out);
        check(p, 3, "2^v", &mut out);
    }
    let _ = writeln!(
        out,
        "{} values checked, {} mismatches",
        cells.len() + 20,
        mismatches.len()
    );
    finish(out, mismatches)
}

/// The three-branch form of `zcl_k(P^102)`; each applicable branch is
/// returned so boundary values of `k` are checked against both.
pub fn example102_branches(k: u64) -> Vec<(&'static str, i64)> {
    let k = k as i64;
    let mut v = Vec::new();
    if (2..=5).contains(&k) {
        v.push(("102k - (127 - 25k)", 102 * k - (127 - 25 * k)));
    }
    if (5..=7).contains(&k) {
        v.push(("102k - (7 - k)", 102 * k - (7 - k)));
    }
    if k >= 7 {
        v.push(("102k", 102 * k));
    }
    v
}

pub fn example102() -> Outcome {
    let mut out = String::new();
    let mut mismatches = Vec::new();
    for k in 2..=10u64 {
        let r = zcl(k, &Nat::from(102u32)).expect("k >= 2");
        let branches = example102_branches(k);
        let forms: Vec<String> = branches.iter().map(|(f, v)| format!("{f} = {v}")).collect();
        let _ = writeln!(
            out,
            "k={k} zcl={} witness={} | {}",
            r.zcl,
            r.witness,
            forms.join(" | ")
        );
        for (form, v) in branches {
            if r.zcl != Nat::from(v as u64) {
                mismatches.push(format!("mismatch k={k}: zcl={} but {form} = {v}", r.zcl));
            }
        }
    }
    finish(out, mismatches)
}

pub fn verify(n_max: u64, k_max: u64, level: Level) -> Outcome {
    if k_max < 2 {
        return Outcome::usage("error: --k-max must be at least 2\n");
    }
    let report = verify::run(level, n_max, k_max);
    let status = if report.all_passed() {
        Status::Success
    } else {
        Status::Mismatch
    };
    Outcome {
        stdout: verify::render(&report),
        stderr: String::new(),
        status,
    }
}

pub fn oeis(path: &Path, offset: Option<i64>) -> Outcome {
    let entries = match bfile::read(path) {
        Ok(e) => e,
        Err(e) => return Outcome::usage(format!("error: {e}\n")),
    };
    let cmp = match bfile::compare(&entries, offset) {
        Ok(c) => c,
        Err(e) => {
            return Outcome {
                stdout: String::new(),
                stderr: format!("alignment error: {e}\n"),
                status: Status::Mismatch,
            }
        }
    };
    let mut out = format!(
        "offset={} ({})\ncompared={} agreed={}\n",
        cmp.offset,
        if cmp.detected { "detected" } else { "given" },
        cmp.compared,
        cmp.agreed
    );
    let status = match &cmp.first_mismatch {
        None => Status::Success,
        Some(m) => {
            let _ = writeln!(
                out,
                "first mismatch: index={} n={} expected={} found={}",
                m.index, m.n, m.expected, m.found
            );
            Status::Mismatch
        }
    };
    Outcome {
        stdout: out,
        stderr: String::new(),
        status,
    }
}

pub fn scan(n_max: u64) -> Outcome {
    let mut out = String::from("n,s,threshold,lprop_bound,interesting\n");
    for n in 0..=n_max {
        let nv = Nat::from(n);
        let s = s_formula(&nv).s;
        let threshold = sharp_threshold(&nv).threshold;
        let lprop = lprop_bound(&nv).ok();
        let interesting = matches!((&threshold, &lprop), (Some(t), Some(l)) if t < l);
        let opt = |v: &Option<Nat>| v.as_ref().map_or(String::new(), Nat::to_string);
        let _ = writeln!(
            out,
            "{n},{s},{},{},{interesting}",
            opt(&threshold),
            opt(&lprop)
        );
    }
    Outcome::ok(out)
}
