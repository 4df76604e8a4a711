//! Stabilization point `s(n)`, the sharpness threshold for `zcl_k = kn`,
//! and special-case characterizations used as cross-checks.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::binexp::{
    longest_one_run, nu, odd_binom, pow2, s_prime_set, s_set, z_i, BitExpansion, Nat,
};
use crate::bounds::z_recursive;
use crate::error::{Error, Result};

/// Which case of the `s(n)` formula applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StabilityBranch {
    /// `n + 1` is a power of two.
    PowerCase,
    /// `n + 1` is not a power of two and `S'(n)` is empty.
    EmptySPrime,
    /// Maximum of ceilings over `S'(n)`.
    CeilingMax,
}

impl fmt::Display for StabilityBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StabilityBranch::PowerCase => "power-case",
            StabilityBranch::EmptySPrime => "empty-Sprime",
            StabilityBranch::CeilingMax => "ceiling-max",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityReport {
    pub n: Nat,
    /// Minimal `k ≥ 2` with `g_k(n) = 2^ν(n+1) - 1`.
    pub s: Nat,
    pub stable_value: Nat,
    pub branch: StabilityBranch,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SharpnessThreshold {
    pub n: Nat,
    /// Smallest `k` with `zcl_k(P^n) = kn`; `None` when there is none.
    pub threshold: Option<Nat>,
}

/// `2^ν(n+1) - 1`, the value `g_k(n)` settles at for large `k`.
pub fn stable_value(n: &Nat) -> Nat {
    let v = nu(&(n + 1u32)).expect("n + 1 >= 1");
    pow2(v) - 1u32
}

fn ceil_div(a: &Nat, b: &Nat) -> Nat {
    debug_assert!(!b.is_zero());
    (a + b - 1u32) / b
}

/// `s(n)` from its closed description. `s(0) = 2` falls in the power case.
pub fn s_formula(n: &Nat) -> StabilityReport {
    let stable = stable_value(n);
    let (s, branch) = if is_all_ones(n) {
        (Nat::from(2u32), StabilityBranch::PowerCase)
    } else {
        let sp = s_prime_set(n);
        if sp.is_empty() {
            (Nat::from(3u32), StabilityBranch::EmptySPrime)
        } else {
            let two_nu = &stable + 1u32;
            let s = sp
                .into_iter()
                .map(|i| {
                    // i ∈ S'(n) leaves a zero digit below the run, so Z_i(n) ≥ 1
                    let z = z_i(n, i);
                    assert!(!z.is_zero(), "Z_{i}(n) vanished for i in S'(n)");
                    ceil_div(&(pow2(i + 1) - &two_nu), &z)
                })
                .max()
                .expect("S'(n) is non-empty");
            (s, StabilityBranch::CeilingMax)
        }
    };
    StabilityReport {
        n: n.clone(),
        s,
        stable_value: stable,
        branch,
    }
}

/// `g_k(n)` from the `z_k` recursion, independent of the closed formula.
pub fn g_by_recursion(k: u64, n: &Nat) -> Result<Nat> {
    Ok(Nat::from(k) * n - z_recursive(k, n)?)
}

/// `s(n)` by scanning `k = 2, 3, …, k_max` until `g_k(n)` reaches its
/// stable value.
pub fn s_scan(n: &Nat, k_max: u64) -> Result<u64> {
    if k_max < 2 {
        return Err(Error::ParamTooSmall {
            what: "s_scan",
            param: "k_max",
            min: 2,
            got: k_max,
        });
    }
    let stable = stable_value(n);
    for k in 2..=k_max {
        if g_by_recursion(k, n)? == stable {
            return Ok(k);
        }
    }
    Err(Error::ScanExhausted {
        n: n.to_string(),
        k_max,
    })
}

/// Scan bound used when the caller has none: `max(64, 2·s_formula(n))`.
pub fn default_scan_limit(n: &Nat) -> u64 {
    let twice = s_formula(n).s * 2u32;
    u64::try_from(twice).unwrap_or(u64::MAX).max(64)
}

/// Smallest `k` with `zcl_k(P^n) = kn`.
///
/// Odd `n` never reaches `kn`. For even `n ≥ 2` the threshold is
/// `max{3, ⌈(2^(i+1) - 1) / Z_i(n)⌉ : i ∈ S(n)}`. `P^0` is a point, so
/// `n = 0` is sharp from `k = 2` on.
pub fn sharp_threshold(n: &Nat) -> SharpnessThreshold {
    let threshold = if n.is_odd() {
        None
    } else if n.is_zero() {
        Some(Nat::from(2u32))
    } else {
        let t = s_set(n)
            .into_iter()
            .map(|i| ceil_div(&(pow2(i + 1) - 1u32), &z_i(n, i)))
            .fold(Nat::from(3u32), Nat::max);
        Some(t)
    };
    SharpnessThreshold {
        n: n.clone(),
        threshold,
    }
}

/// `2^(ℓ+1) - 1` with `ℓ` the longest run of ones in `n`; every
/// `k ≥` this value gives `zcl_k(P^n) = kn` for even `n`.
pub fn lprop_bound(n: &Nat) -> Result<Nat> {
    if n.is_odd() {
        return Err(Error::OddArgument {
            what: "lprop_bound",
            n: n.to_string(),
        });
    }
    Ok(pow2(longest_one_run(n) + 1) - 1u32)
}

/// For `k ∈ {3, 4}`: `n` even with no two adjacent one-digits.
pub fn kprop_check(n: &Nat, k: u64) -> Result<bool> {
    if k != 3 && k != 4 {
        return Err(Error::UnsupportedK {
            what: "kprop_check",
            k,
        });
    }
    let digits = BitExpansion::of(n);
    let adjacent = digits.digits().windows(2).any(|w| w[0] && w[1]);
    Ok(n.is_even() && !adjacent)
}

/// `zcl_k(P^(3·2^e))` by its two-branch form.
pub fn zcl_three_pow(k: u64, e: u64) -> Result<Nat> {
    if k < 2 {
        return Err(Error::ParamTooSmall {
            what: "zcl_three_pow",
            param: "k",
            min: 2,
            got: k,
        });
    }
    if e < 1 {
        return Err(Error::ParamTooSmall {
            what: "zcl_three_pow",
            param: "e",
            min: 1,
            got: e,
        });
    }
    let short = (e == 1 && k <= 6) || (e >= 2 && k <= 4);
    Ok(if short {
        Nat::from(k - 1) * (pow2(e + 2) - 1u32)
    } else {
        Nat::from(k) * Nat::from(3u32) * pow2(e)
    })
}

/// Largest even `z ≤ 3n` with `C(z+1, n)` odd; equals `zcl_3(P^n)`.
///
/// Scans downward over even `z`. When `3n` fits in a `u64` the scan runs
/// on machine words.
pub fn z3_characterization(n: &Nat) -> Nat {
    if let Some(z) = u64::try_from(n).ok().and_then(z3_scan_u64) {
        return Nat::from(z);
    }
    let mut z = n * 3u32;
    if z.is_odd() {
        z -= 1u32;
    }
    loop {
        if odd_binom(&(&z + 1u32), n) {
            return z;
        }
        // z = 2^(lg n + 1) - 2 (or 0 when n ≤ 1) always qualifies
        assert!(!z.is_zero(), "no even z <= 3n with C(z+1, n) odd");
        z -= 2u32;
    }
}

fn z3_scan_u64(n: u64) -> Option<u64> {
    let top = n.checked_mul(3)?.checked_add(1)?;
    let mut z = top - 1;
    z &= !1;
    loop {
        let a = z + 1;
        if n <= a && a & n == n {
            return Some(z);
        }
        assert!(z != 0, "no even z <= 3n with C(z+1, n) odd");
        z -= 2;
    }
}

/// `true` when `n + 1` is a power of two (including `n = 0`).
pub fn is_all_ones(n: &Nat) -> bool {
    (n + Nat::one()).count_ones() == 1
}
