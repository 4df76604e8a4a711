//! Closed formula and recursions for `zcl_k(P^n)`.
//!
//! Writing `n = 2^e + d` with `0 ≤ d < 2^e`, the three recursions
//!
//! ```text
//! z_k(n) = min(z_k(d) + k·2^e, (k-1)(2^(e+1) - 1))
//! h_k(n) = min(h_k(d) + 2^e,   (k-1)(2^(e+1) - 1 - n))
//! m_j(n) = min(m_j(d) + 2^e,   j(2^(e+1) - 1 - n))
//! ```
//!
//! all strip the leading bit of `n`. They are evaluated bottom-up over the
//! set bits of `n` in ascending order, which visits exactly the prefixes
//! the recursion would and needs no memo table.
//!
//! For `k ≥ 3` the deficit `g_k(n) = kn - zcl_k(P^n)` also has the closed form
//!
//! ```text
//! g_k(n) = max{ 2^ν(n+1) - 1,  2^(i+1) - 1 - k·Z_i(n) : i ∈ S(n) }.
//! ```

use std::cmp::min;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::binexp::{nu, pow2, s_set, z_i, Nat};
use crate::error::{Error, Result};

/// Which entry of the closed-form maximum produced `g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Witness {
    /// The `2^ν(n+1) - 1` entry.
    NuTerm,
    /// The `2^(i+1) - 1 - k·Z_i(n)` entry for this `i ∈ S(n)`.
    STerm(u64),
    /// `k = 2`, where the value comes from the recursion.
    Recursion,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::NuTerm => f.write_str("nu"),
            Witness::STerm(i) => write!(f, "S({i})"),
            Witness::Recursion => f.write_str("recursion"),
        }
    }
}

/// `zcl_k(P^n)` together with its deficit, excess and provenance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub n: Nat,
    pub k: u64,
    pub zcl: Nat,
    /// `k·n - zcl`.
    pub g: Nat,
    /// `zcl - (k-1)·n`. Signed so that a broken invariant shows up as a
    /// negative value instead of an underflow.
    pub h: BigInt,
    pub witness: Witness,
    /// `zcl = k·n`, which pins `TC_k(P^n) = k·n`.
    pub sharp: bool,
}

impl BoundReport {
    fn new(k: u64, n: &Nat, zcl: Nat, witness: Witness) -> Self {
        let kn = Nat::from(k) * n;
        let g = &kn - &zcl;
        let h = BigInt::from(zcl.clone()) - BigInt::from(Nat::from(k - 1) * n);
        let sharp = zcl == kn;
        BoundReport {
            n: n.clone(),
            k,
            zcl,
            g,
            h,
            witness,
            sharp,
        }
    }
}

fn require(what: &'static str, param: &'static str, got: u64, min: u64) -> Result<()> {
    if got < min {
        return Err(Error::ParamTooSmall {
            what,
            param,
            min,
            got,
        });
    }
    Ok(())
}

/// Closed-form deficit `g_k(n)` for `k ≥ 3`, with the winning entry.
///
/// Ties go to the ν-entry, then to the smallest `i`.
pub fn g_closed(k: u64, n: &Nat) -> Result<(Nat, Witness)> {
    require("g_closed", "k", k, 3)?;
    let nu_term = pow2(nu(&(n + 1u32))?) - 1u32;
    let mut best = BigInt::from(nu_term);
    let mut witness = Witness::NuTerm;
    let k_big = BigInt::from(k);
    for i in s_set(n) {
        let term = BigInt::from(pow2(i + 1)) - 1 - &k_big * BigInt::from(z_i(n, i));
        if term > best {
            best = term;
            witness = Witness::STerm(i);
        }
    }
    let g = best
        .to_biguint()
        .expect("nu term is non-negative, so the maximum is too");
    Ok((g, witness))
}

/// `zcl_k(P^n)` for any `k ≥ 2`: closed formula for `k ≥ 3`, recursion for `k = 2`.
pub fn zcl(k: u64, n: &Nat) -> Result<BoundReport> {
    require("zcl", "k", k, 2)?;
    if k == 2 {
        let z = z_recursive(2, n)?;
        return Ok(BoundReport::new(k, n, z, Witness::Recursion));
    }
    let (g, witness) = g_closed(k, n)?;
    let zcl = Nat::from(k) * n - g;
    Ok(BoundReport::new(k, n, zcl, witness))
}

/// Runs `step(value_of_d, d, e)` over the leading-bit decomposition of `n`,
/// from `d = 0` upwards.
fn fold_prefixes(n: &Nat, init: Nat, mut step: impl FnMut(Nat, &Nat, u64) -> Nat) -> Nat {
    let mut prefix = Nat::from(0u32);
    let mut acc = init;
    for e in (0..n.bits()).filter(|&e| n.bit(e)) {
        acc = step(acc, &prefix, e);
        prefix.set_bit(e, true);
    }
    acc
}

/// `z_k(n)` by the leading-bit recursion, `z_k(0) = 0`.
pub fn z_recursive(k: u64, n: &Nat) -> Result<Nat> {
    require("z_recursive", "k", k, 2)?;
    let k_big = Nat::from(k);
    let km1 = Nat::from(k - 1);
    Ok(fold_prefixes(n, Nat::from(0u32), |z_d, _d, e| {
        min(z_d + &k_big * pow2(e), &km1 * (pow2(e + 1) - 1u32))
    }))
}

/// `h_k(n) = zcl_k(P^n) - (k-1)n` by its own recursion, `h_k(0) = 0`.
pub fn h_recursive(k: u64, n: &Nat) -> Result<Nat> {
    require("h_recursive", "k", k, 2)?;
    let km1 = Nat::from(k - 1);
    Ok(fold_prefixes(n, Nat::from(0u32), |h_d, d, e| {
        let whole = d + pow2(e);
        min(h_d + pow2(e), &km1 * (pow2(e + 1) - 1u32 - whole))
    }))
}

/// `m_j(n) = φ(Z(n)^j, n)` by its recursion, `m_j(0) = 0`.
pub fn m_recursive(j: u64, n: &Nat) -> Result<Nat> {
    require("m_recursive", "j", j, 1)?;
    let j = Nat::from(j);
    Ok(fold_prefixes(n, Nat::from(0u32), |m_d, d, e| {
        let top = pow2(e);
        let zero_norm = pow2(e + 1) - Nat::one() - (d + &top);
        min(m_d + top, &j * zero_norm)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(v: u64) -> Nat {
        Nat::from(v)
    }

    /// Textbook recursion on `n = 2^e + d`, no iteration tricks.
    fn z_naive(k: u64, n: u64) -> u64 {
        if n == 0 {
            return 0;
        }
        let e = 63 - n.leading_zeros() as u64;
        let d = n - (1 << e);
        (z_naive(k, d) + k * (1 << e)).min((k - 1) * ((1 << (e + 1)) - 1))
    }

    #[test]
    fn closed_deficit() {
        assert_eq!(g_closed(3, &n(6)), Ok((n(4), Witness::STerm(2))));
        assert_eq!(g_closed(5, &n(102)), Ok((n(2), Witness::STerm(2))));
        for e in 1..20 {
            for k in 3..10 {
                assert_eq!(g_closed(k, &pow2(e)).unwrap().0, n(0));
            }
        }
        assert_eq!(g_closed(4, &n(7)), Ok((n(7), Witness::NuTerm)));
        assert!(matches!(
            g_closed(2, &n(6)),
            Err(Error::ParamTooSmall { .. })
        ));
    }

    #[test]
    fn zcl_reports() {
        assert_eq!(zcl(3, &n(5)).unwrap().zcl, n(14));
        assert_eq!(zcl(8, &n(7)).unwrap().zcl, n(49));
        let r = zcl(2, &n(16)).unwrap();
        assert_eq!(r.zcl, n(31));
        assert_eq!(r.witness, Witness::Recursion);
        for k in 2..12 {
            let r = zcl(k, &n(0)).unwrap();
            assert_eq!(r.zcl, n(0));
            assert!(r.sharp);
        }
        let r = zcl(7, &n(6)).unwrap();
        assert!(r.sharp);
        assert_eq!(r.h, BigInt::from(6));
        assert!(zcl(1, &n(3)).is_err());
    }

    #[test]
    fn recursions() {
        assert_eq!(z_recursive(6, &n(13)), Ok(n(75)));
        assert_eq!(z_recursive(2, &n(9)), Ok(n(15)));
        assert_eq!(z_recursive(4, &n(1)), Ok(n(3)));
        assert_eq!(h_recursive(3, &n(5)), Ok(n(4)));
        assert_eq!(h_recursive(7, &n(0)), Ok(n(0)));
        assert_eq!(h_recursive(2, &n(7)), Ok(n(0)));
        assert_eq!(m_recursive(2, &n(5)), Ok(n(4)));
        assert_eq!(m_recursive(4, &n(6)), Ok(n(4)));
        for v in 0..200u64 {
            let expect = pow2((crate::binexp::lg(&n(v)) + 1) as u64) - 1u32 - n(v);
            assert_eq!(m_recursive(1, &n(v)).unwrap(), expect);
        }
        assert!(z_recursive(1, &n(3)).is_err());
        assert!(h_recursive(0, &n(3)).is_err());
        assert!(m_recursive(0, &n(3)).is_err());
    }

    #[test]
    fn iterative_matches_naive_recursion() {
        // deterministic xorshift sample
        let mut x = 0x9E37_79B9_7F4A_7C15u64;
        for _ in 0..500 {
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            let v = x % (1 << 40);
            let k = 2 + (x >> 50) % 30;
            assert_eq!(
                z_recursive(k, &n(v)).unwrap(),
                n(z_naive(k, v)),
                "k={k} n={v}"
            );
        }
    }

    #[test]
    fn huge_n_does_not_overflow() {
        // 2^200 - 1 has g_k = 2^200 - 1 for every k
        let big = pow2(200) - 1u32;
        let r = zcl(1_000_000, &big).unwrap();
        assert_eq!(r.g, big);
        assert_eq!(z_recursive(1_000_000, &big).unwrap(), r.zcl);
    }
}
