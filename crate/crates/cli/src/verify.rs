//! Batch cross-checks between the closed formula, the recursions and the
//! brute-force oracles.
//!
//! Cases run in parallel; results are gathered per check in case order so
//! the report is identical from run to run.

use std::fmt::{self, Write as _};

use clap::ValueEnum;
use num_bigint::BigInt;
use rayon::prelude::*;
use zcl_core::binexp::{lg, pow2};
use zcl_core::bounds::{g_closed, h_recursive, m_recursive, z_recursive};
use zcl_core::oracle::Oracle;
use zcl_core::{zcl, Nat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Level {
    /// Closed formula vs recursions and their identities.
    Formulas,
    /// Knapsack, Lucas-enumeration and subset-sum oracles.
    Oracles,
    /// Literal truncated polynomial ring multiplication.
    Tiny,
}

/// Outcome of one case: `Ok(None)` passed, `Ok(Some(msg))` failed,
/// `Err(msg)` could not be evaluated (range or domain error).
type CaseResult = Result<Option<String>, String>;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckSummary {
    pub name: String,
    pub passed: usize,
    pub failed: usize,
    pub errors: usize,
    pub first_failure: Option<String>,
    pub first_error: Option<String>,
}

impl CheckSummary {
    fn absorb(&mut self, r: CaseResult) {
        match r {
            Ok(None) => self.passed += 1,
            Ok(Some(msg)) => {
                self.failed += 1;
                self.first_failure.get_or_insert(msg);
            }
            Err(msg) => {
                self.errors += 1;
                self.first_error.get_or_insert(msg);
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub level: Level,
    pub checks: Vec<CheckSummary>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.failed == 0 && c.errors == 0)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let verdict = if c.failed == 0 && c.errors == 0 {
                "PASS"
            } else {
                "FAIL"
            };
            writeln!(
                f,
                "{verdict} {}: {} passed, {} failed, {} errors",
                c.name, c.passed, c.failed, c.errors
            )?;
            if let Some(m) = &c.first_failure {
                writeln!(f, "  first failure: {m}")?;
            }
            if let Some(m) = &c.first_error {
                writeln!(f, "  first error: {m}")?;
            }
        }
        Ok(())
    }
}

struct Check {
    name: &'static str,
    applies: fn(u64, u64) -> bool,
    run: fn(u64, u64) -> CaseResult,
}

fn always(_: u64, _: u64) -> bool {
    true
}

fn eq_case<T: PartialEq + fmt::Display>(
    lhs: T,
    rhs: T,
    what: impl FnOnce() -> String,
) -> CaseResult {
    if lhs == rhs {
        Ok(None)
    } else {
        Ok(Some(format!("{}: {lhs} != {rhs}", what())))
    }
}

fn lift<T>(r: zcl_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn z_equals_h(k: u64, n: u64) -> CaseResult {
    let nv = Nat::from(n);
    let z = lift(z_recursive(k, &nv))?;
    let h = lift(h_recursive(k, &nv))?;
    eq_case(z, Nat::from(k - 1) * &nv + h, || format!("k={k} n={n}"))
}

fn h_equals_m(k: u64, n: u64) -> CaseResult {
    let nv = Nat::from(n);
    let h = lift(h_recursive(k, &nv))?;
    let m = lift(m_recursive(k - 1, &nv))?;
    eq_case(h, m, || format!("k={k} n={n}"))
}

fn closed_equals_recursion(k: u64, n: u64) -> CaseResult {
    let nv = Nat::from(n);
    let z = lift(z_recursive(k, &nv))?;
    let (g, _) = lift(g_closed(k, &nv))?;
    eq_case(z, Nat::from(k) * &nv - g, || format!("k={k} n={n}"))
}

fn two_factor_closed_form(_k: u64, n: u64) -> CaseResult {
    let nv = Nat::from(n);
    let z = lift(z_recursive(2, &nv))?;
    eq_case(z, pow2((lg(&nv) + 1) as u64) - 1u32, || format!("n={n}"))
}

fn report_invariants(k: u64, n: u64) -> CaseResult {
    let nv = Nat::from(n);
    let r = lift(zcl(k, &nv))?;
    let kn = Nat::from(k) * &nv;
    let h = BigInt::from(r.zcl.clone()) - BigInt::from(Nat::from(k - 1) * &nv);
    let ok = &r.zcl + &r.g == kn && r.h == h && r.sharp == (r.g == Nat::from(0u32));
    Ok((!ok).then(|| format!("k={k} n={n}: {r:?}")))
}

fn knapsack_equals_recursion(k: u64, n: u64) -> CaseResult {
    let o = lift(Oracle::default().zcl_knapsack_oracle(k, n))?;
    let z = lift(z_recursive(k, &Nat::from(n)))?;
    eq_case(Nat::from(o), z, || format!("k={k} n={n}"))
}

fn lucas_equals_h(k: u64, n: u64) -> CaseResult {
    let o = lift(Oracle::default().hti_oracle(k, n))?;
    let h = lift(h_recursive(k, &Nat::from(n)))?;
    eq_case(Nat::from(o), h, || format!("k={k} n={n}"))
}

fn subset_sum_equals_m(k: u64, n: u64) -> CaseResult {
    let o = lift(Oracle::default().m_oracle(k - 1, n))?;
    let m = lift(m_recursive(k - 1, &Nat::from(n)))?;
    eq_case(Nat::from(o), m, || format!("j={} n={n}", k - 1))
}

fn poly_equals_recursion(k: u64, n: u64) -> CaseResult {
    let p = lift(Oracle::default().zcl_poly_oracle(k, n))?;
    let z = lift(z_recursive(k, &Nat::from(n)))?;
    eq_case(Nat::from(p), z, || format!("k={k} n={n}"))
}

fn poly_equals_knapsack(k: u64, n: u64) -> CaseResult {
    let o = Oracle::default();
    let p = lift(o.zcl_poly_oracle(k, n))?;
    let q = lift(o.zcl_knapsack_oracle(k, n))?;
    eq_case(p, q, || format!("k={k} n={n}"))
}

fn checks_for(level: Level) -> Vec<Check> {
    let check = |name, applies, run| Check { name, applies, run };
    match level {
        Level::Formulas => vec![
            check("z = (k-1)n + h", always, z_equals_h),
            check("h_k = m_(k-1)", always, h_equals_m),
            check(
                "closed = recursion (k >= 3)",
                |k, _| k >= 3,
                closed_equals_recursion,
            ),
            check(
                "z_2 = 2^(lg n + 1) - 1",
                |k, n| k == 2 && n >= 1,
                two_factor_closed_form,
            ),
            check("report invariants", always, report_invariants),
        ],
        Level::Oracles => vec![
            check(
                "knapsack oracle = z recursion",
                always,
                knapsack_equals_recursion,
            ),
            check("Lucas enumeration = h recursion", always, lucas_equals_h),
            check(
                "subset-sum oracle = m recursion",
                always,
                subset_sum_equals_m,
            ),
        ],
        Level::Tiny => vec![
            check(
                "polynomial ring = z recursion",
                always,
                poly_equals_recursion,
            ),
            check(
                "polynomial ring = knapsack oracle",
                always,
                poly_equals_knapsack,
            ),
        ],
    }
}

/// Runs every check of `level` over `0 ≤ n ≤ n_max`, `2 ≤ k ≤ k_max`.
pub fn run(level: Level, n_max: u64, k_max: u64) -> VerifyReport {
    let checks = checks_for(level);
    let cases: Vec<(u64, u64)> = (0..=n_max)
        .flat_map(|n| (2..=k_max).map(move |k| (k, n)))
        .collect();
    let summaries = checks
        .iter()
        .map(|check| {
            let results: Vec<Option<CaseResult>> = cases
                .par_iter()
                .map(|&(k, n)| (check.applies)(k, n).then(|| (check.run)(k, n)))
                .collect();
            let mut s = CheckSummary {
                name: check.name.to_string(),
                ..Default::default()
            };
            results.into_iter().flatten().for_each(|r| s.absorb(r));
            s
        })
        .collect();
    VerifyReport {
        level,
        checks: summaries,
    }
}

pub fn render(report: &VerifyReport) -> String {
    let mut out = format!("{report}");
    let total_failed: usize = report.checks.iter().map(|c| c.failed + c.errors).sum();
    let _ = writeln!(
        out,
        "{}: {} checks, {} failing cases",
        if report.all_passed() { "OK" } else { "FAILED" },
        report.checks.len(),
        total_failed
    );
    out
}
