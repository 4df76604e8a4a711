//! Binary-expansion primitives on arbitrary-size naturals.
//!
//! Every digit-level quantity used by the bounds lives here: the 2-adic
//! valuation, `lg`, the partial zero-digit sums `Z_i(n)`, the run-start
//! sets `S(n)` and `S'(n)`, the 2-power masks `Z(m)` / `P(m)` and the
//! Lucas parity test for binomial coefficients.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Non-negative integer of arbitrary precision.
pub type Nat = BigUint;

/// `2^t` as a [`Nat`].
pub fn pow2(t: u64) -> Nat {
    let mut v = Nat::zero();
    v.set_bit(t, true);
    v
}

/// Binary digits `ε_0, ε_1, …, ε_lg(n)` of a natural number, least
/// significant first. Zero has the empty expansion; the top stored digit
/// of a positive number is always 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitExpansion {
    digits: Vec<bool>,
}

impl BitExpansion {
    pub fn of(n: &Nat) -> Self {
        let digits = (0..n.bits()).map(|j| n.bit(j)).collect();
        Self { digits }
    }

    /// Digit at position `j`; positions above `lg(n)` read as 0.
    pub fn digit(&self, j: u64) -> bool {
        usize::try_from(j)
            .ok()
            .and_then(|j| self.digits.get(j).copied())
            .unwrap_or(false)
    }

    /// Number of stored digits, `lg(n) + 1`.
    pub fn len(&self) -> u64 {
        self.digits.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn digits(&self) -> &[bool] {
        &self.digits
    }

    /// Reconstructs `Σ ε_j 2^j`.
    pub fn value(&self) -> Nat {
        let mut n = Nat::zero();
        for (j, &d) in self.digits.iter().enumerate() {
            if d {
                n.set_bit(j as u64, true);
            }
        }
        n
    }

    /// Maximal runs of one-digits as `(top, length)` pairs, ordered by
    /// ascending position. `top` is the highest position of the run.
    pub fn one_runs(&self) -> Vec<(u64, u64)> {
        let mut runs = Vec::new();
        let mut start = None;
        for (j, &d) in self.digits.iter().enumerate() {
            match (d, start) {
                (true, None) => start = Some(j as u64),
                (false, Some(s)) => {
                    runs.push((j as u64 - 1, j as u64 - s));
                    start = None;
                }
                _ => {}
            }
        }
        if let Some(s) = start {
            let top = self.len() - 1;
            runs.push((top, top - s + 1));
        }
        runs
    }
}

/// Multiset of powers of two, stored as exponent → multiplicity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TwoPowerMultiset {
    counts: BTreeMap<u64, u64>,
}

impl TwoPowerMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `count` copies of `2^t`.
    pub fn insert(&mut self, t: u64, count: u64) {
        if count > 0 {
            *self.counts.entry(t).or_insert(0) += count;
        }
    }

    /// Multiplicity of `2^t`.
    pub fn count(&self, t: u64) -> u64 {
        self.counts.get(&t).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// `(exponent, multiplicity)` pairs in ascending exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.counts.iter().map(|(&t, &c)| (t, c))
    }

    /// Total number of elements counted with multiplicity.
    pub fn len(&self) -> u64 {
        self.counts.values().sum()
    }

    /// `‖S‖`, the sum of all elements.
    pub fn norm(&self) -> Nat {
        self.iter().map(|(t, c)| pow2(t) * Nat::from(c)).sum()
    }

    /// Multiset sum `self ∪ other` (multiplicities add).
    pub fn union(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (t, c) in other.iter() {
            out.insert(t, c);
        }
        out
    }

    /// `j` copies of `self`.
    pub fn repeat(&self, j: u64) -> Self {
        let counts = self
            .iter()
            .filter(|_| j > 0)
            .map(|(t, c)| (t, c * j))
            .collect();
        Self { counts }
    }

    /// Sub-multiset test: every multiplicity of `self` is at most the one in `other`.
    pub fn is_subset(&self, other: &Self) -> bool {
        self.iter().all(|(t, c)| other.count(t) >= c)
    }
}

impl FromIterator<u64> for TwoPowerMultiset {
    /// Collects exponents, one element per item.
    fn from_iter<I: IntoIterator<Item = u64>>(iter: I) -> Self {
        let mut s = Self::new();
        for t in iter {
            s.insert(t, 1);
        }
        s
    }
}

impl fmt::Display for TwoPowerMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        let mut first = true;
        for (t, c) in self.counts.iter().rev() {
            for _ in 0..*c {
                if !first {
                    f.write_str(", ")?;
                }
                first = false;
                write!(f, "{}", pow2(*t))?;
            }
        }
        f.write_str("}")
    }
}

/// 2-adic valuation `ν(n)`.
pub fn nu(n: &Nat) -> Result<u64> {
    n.trailing_zeros().ok_or(Error::ZeroValuation)
}

/// `⌊log2 n⌋`, with `lg(0) = -1`.
pub fn lg(n: &Nat) -> i64 {
    n.bits() as i64 - 1
}

/// `Z_i(n) = Σ_{j≤i} (1-ε_j) 2^j`, summed digit by digit.
pub fn z_i(n: &Nat, i: u64) -> Nat {
    let mut z = Nat::zero();
    for j in 0..=i {
        if !n.bit(j) {
            z.set_bit(j, true);
        }
    }
    z
}

/// `Z_i(n)` through the modular identity `2^(i+1) - 1 - (n mod 2^(i+1))`.
pub fn z_i_modular(n: &Nat, i: u64) -> Nat {
    let m = pow2(i + 1);
    &m - Nat::one() - (n % &m)
}

/// `S(n)`: positions `i ≥ 1` with `ε_i = ε_(i-1) = 1` and `ε_(i+1) = 0`,
/// i.e. the tops of maximal runs of two or more ones.
pub fn s_set(n: &Nat) -> BTreeSet<u64> {
    BitExpansion::of(n)
        .one_runs()
        .into_iter()
        .filter(|&(_, len)| len >= 2)
        .map(|(top, _)| top)
        .collect()
}

/// `S'(n)`: the members of `S(n)` whose run stops before position 0.
pub fn s_prime_set(n: &Nat) -> BTreeSet<u64> {
    BitExpansion::of(n)
        .one_runs()
        .into_iter()
        .filter(|&(top, len)| len >= 2 && top + 1 > len)
        .map(|(top, _)| top)
        .collect()
}

/// Length of the longest run of consecutive ones (0 for `n = 0`).
pub fn longest_one_run(n: &Nat) -> u64 {
    BitExpansion::of(n)
        .one_runs()
        .into_iter()
        .map(|(_, len)| len)
        .max()
        .unwrap_or(0)
}

/// `Z(m)`: the 2-powers at zero digits strictly below the leading digit.
pub fn z_mask(m: &Nat) -> TwoPowerMultiset {
    (0..m.bits()).filter(|&t| !m.bit(t)).collect()
}

/// `P(m)`: the 2-powers at one digits.
pub fn p_mask(m: &Nat) -> TwoPowerMultiset {
    (0..m.bits()).filter(|&t| m.bit(t)).collect()
}

/// Parity of `C(a, b)` by Lucas: odd iff every binary digit of `b` is at
/// most the matching digit of `a`. `b > a` gives `false`.
pub fn odd_binom(a: &Nat, b: &Nat) -> bool {
    b <= a && (a & b) == *b
}
