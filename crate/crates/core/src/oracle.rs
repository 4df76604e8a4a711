//! Definition-level brute force, independent of the recursions in
//! [`crate::bounds`].
//!
//! Everything here works on machine words at desk scale. Each oracle has a
//! range cap in [`OracleLimits`]; inputs above a cap are rejected with
//! [`Error::OutOfRange`] instead of being truncated.

use crate::binexp::{z_mask, Nat, TwoPowerMultiset};
use crate::error::{Error, Result};

/// Range caps for the brute-force oracles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleLimits {
    pub phi_max_n: u64,
    pub hti_max_n: u64,
    pub hti_max_k: u64,
    pub knapsack_max_n: u64,
    pub knapsack_max_k: u64,
    pub poly_max_n: u64,
    pub poly_max_k: u64,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            phi_max_n: 1 << 20,
            hti_max_n: 1 << 16,
            hti_max_k: 8,
            knapsack_max_n: 64,
            knapsack_max_k: 8,
            poly_max_n: 8,
            poly_max_k: 4,
        }
    }
}

fn check(what: &'static str, param: &'static str, got: u64, limit: u64) -> Result<()> {
    if got > limit {
        return Err(Error::OutOfRange {
            what,
            param,
            got: got.to_string(),
            limit: limit.to_string(),
        });
    }
    Ok(())
}

fn check_min(what: &'static str, param: &'static str, got: u64, min: u64) -> Result<()> {
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

/// Fixed-length bit array.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitSet {
    len: usize,
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        BitSet {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        i < self.len && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, v: bool) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        let mask = 1u64 << (i % 64);
        if v {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Highest set position.
    pub fn max_set(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + 63 - w.leading_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            })
        })
    }

    /// `self |= other`.
    pub fn or_assign(&mut self, other: &BitSet) {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    /// `self ^= other`.
    pub fn xor_assign(&mut self, other: &BitSet) {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Copy shifted up by `shift` positions; bits pushed past `len` drop.
    pub fn shifted(&self, shift: usize) -> BitSet {
        let mut out = BitSet::new(self.len);
        let (ws, bs) = (shift / 64, shift % 64);
        for i in ws..self.words.len() {
            let mut v = self.words[i - ws] << bs;
            if bs > 0 && i > ws {
                v |= self.words[i - ws - 1] >> (64 - bs);
            }
            out.words[i] = v;
        }
        out.trim();
        out
    }

    /// `self |= self << shift`, truncated.
    pub fn or_shift(&mut self, shift: usize) {
        let (ws, bs) = (shift / 64, shift % 64);
        // high to low, so every source word is read before it is updated
        for i in (ws..self.words.len()).rev() {
            let mut v = self.words[i - ws] << bs;
            if bs > 0 && i > ws {
                v |= self.words[i - ws - 1] >> (64 - bs);
            }
            self.words[i] |= v;
        }
        self.trim();
    }

    fn trim(&mut self) {
        let extra = self.words.len() * 64 - self.len;
        if extra > 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= u64::MAX >> extra;
            }
        }
    }
}

/// Achievable subset sums of a 2-power multiset, capped at `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumReachability {
    pub cap: u64,
    pub reachable: BitSet,
}

impl SumReachability {
    pub fn is_reachable(&self, s: u64) -> bool {
        s <= self.cap && self.reachable.get(s as usize)
    }

    pub fn max_reachable(&self) -> u64 {
        self.reachable.max_set().expect("0 is always reachable") as u64
    }
}

/// Every `c` whose binary digits are a subset of those of `a`, descending.
fn submasks(a: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(a);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & a) };
        Some(cur)
    })
}

/// Brute-force oracles over definitions, with configurable range caps.
#[derive(Clone, Copy, Debug, Default)]
pub struct Oracle {
    pub limits: OracleLimits,
}

impl Oracle {
    pub fn new(limits: OracleLimits) -> Self {
        Oracle { limits }
    }

    /// All subset sums of `s` in `[0, n]`, by dynamic programming.
    pub fn reachability(&self, s: &TwoPowerMultiset, n: u64) -> Result<SumReachability> {
        check("phi", "n", n, self.limits.phi_max_n)?;
        let mut reach = BitSet::new(n as usize + 1);
        reach.set(0, true);
        for (t, count) in s.iter() {
            if t >= 64 || (1u64 << t) > n {
                continue;
            }
            let w = 1u64 << t;
            for _ in 0..count.min(n / w) {
                reach.or_shift(w as usize);
            }
        }
        Ok(SumReachability {
            cap: n,
            reachable: reach,
        })
    }

    /// `φ(S, n)`: the largest subset sum of `S` not exceeding `n`.
    pub fn phi(&self, s: &TwoPowerMultiset, n: u64) -> Result<u64> {
        Ok(self.reachability(s, n)?.max_reachable())
    }

    /// `m_j(n) = φ(Z(n)^j, n)`.
    pub fn m_oracle(&self, j: u64, n: u64) -> Result<u64> {
        check_min("m_oracle", "j", j, 1)?;
        self.phi(&z_mask(&Nat::from(n)).repeat(j), n)
    }

    /// Largest `Σ b_i` over `k-1` values with every `C(n + b_i, n)` odd
    /// and `Σ b_i ≤ n`.
    ///
    /// By Lucas each `b_i` ranges over the submasks of the zero-digit mask
    /// of `n`; the sums are built by a reachability sweep per factor.
    pub fn hti_oracle(&self, k: u64, n: u64) -> Result<u64> {
        check_min("hti_oracle", "k", k, 2)?;
        check("hti_oracle", "n", n, self.limits.hti_max_n)?;
        check("hti_oracle", "k", k, self.limits.hti_max_k)?;
        let width = 64 - n.leading_zeros();
        let zeros = if width == 0 {
            0
        } else {
            !n & ((1u64 << width) - 1)
        };
        let choices: Vec<usize> = submasks(zeros)
            .filter(|&b| b <= n)
            .map(|b| b as usize)
            .collect();
        let mut reach = BitSet::new(n as usize + 1);
        reach.set(0, true);
        for _ in 1..k {
            let mut next = BitSet::new(reach.len());
            for &b in &choices {
                next.or_assign(&reach.shifted(b));
            }
            reach = next;
        }
        Ok(reach.max_set().expect("0 is always reachable") as u64)
    }

    /// `min{a - c : c a submask of a, c ≤ n}`: the least `x_k`-degree a
    /// single factor `(x_i + x_k)^a` must contribute to a monomial that
    /// survives truncation at degree `n`.
    pub fn min_excess(&self, a: u64, n: u64) -> Result<u64> {
        if a > 2 * n {
            return Err(Error::OutOfRange {
                what: "min_excess",
                param: "a",
                got: a.to_string(),
                limit: (2 * n).to_string(),
            });
        }
        let best = submasks(a)
            .filter(|&c| c <= n)
            .map(|c| a - c)
            .min()
            .unwrap_or(a + 1);
        // c = 0 is always a submask, so only a > n could ever miss, and
        // then dropping top bits still lands at or below n
        assert!(best <= a, "no submask of {a} is <= {n}");
        Ok(best)
    }

    /// `zcl_k(P^n)` straight from its ring-theoretic definition.
    ///
    /// `Π (x_i + x_k)^(a_i)` expands to `Σ_c Π C(a_i, c_i) x_i^(c_i) x_k^(Σ(a_i - c_i))`
    /// and different `c` give different monomials, so nothing cancels. The
    /// product survives truncation iff some odd-coefficient choice keeps
    /// every `c_i ≤ n` and `Σ (a_i - c_i) ≤ n`. Minimizing the `x_k` degree
    /// separates per factor, which turns the search into a knapsack with
    /// weight [`Oracle::min_excess`] per item and capacity `n`. Each
    /// `a_i ≤ 2n` since `c_i ≤ n` and `a_i - c_i ≤ n`.
    pub fn zcl_knapsack_oracle(&self, k: u64, n: u64) -> Result<u64> {
        check_min("zcl_knapsack_oracle", "k", k, 2)?;
        check("zcl_knapsack_oracle", "n", n, self.limits.knapsack_max_n)?;
        check("zcl_knapsack_oracle", "k", k, self.limits.knapsack_max_k)?;
        let cap = n as usize;
        let items: Vec<(usize, u64)> = (0..=2 * n)
            .map(|a| Ok((self.min_excess(a, n)? as usize, a)))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter(|&(w, _)| w <= cap)
            .collect();
        // best[w] = largest Σ a_i over the factors placed so far with
        // total excess exactly w
        let mut best: Vec<Option<u64>> = vec![None; cap + 1];
        best[0] = Some(0);
        for _ in 1..k {
            let mut next = vec![None; cap + 1];
            for (w0, v0) in best.iter().enumerate() {
                let Some(v0) = v0 else { continue };
                for &(w, a) in &items {
                    if w0 + w <= cap {
                        let slot: &mut Option<u64> = &mut next[w0 + w];
                        *slot = Some(slot.map_or(v0 + a, |s| s.max(v0 + a)));
                    }
                }
            }
            best = next;
        }
        Ok(best
            .into_iter()
            .flatten()
            .max()
            .expect("all-zero exponents fit"))
    }

    /// `zcl_k(P^n)` by multiplying `(x_i + x_k)` factors in the truncated
    /// ring `GF(2)[x_1..x_k]/(x_i^(n+1))` and keeping the largest exponent
    /// sum whose product is nonzero.
    pub fn zcl_poly_oracle(&self, k: u64, n: u64) -> Result<u64> {
        check_min("zcl_poly_oracle", "k", k, 2)?;
        check("zcl_poly_oracle", "n", n, self.limits.poly_max_n)?;
        check("zcl_poly_oracle", "k", k, self.limits.poly_max_k)?;
        let k = k as usize;
        let mut best = 0;
        let one = TruncPoly::one(k, n as usize);
        search_exponents(&one, 0, 0, k, 2 * n, &mut best);
        Ok(best)
    }

    /// Whether `φ(Z(m-1) ∪ S, n) ≤ φ(Z(m) ∪ S, n) + 1`.
    pub fn phi_step_inequality_check(&self, m: u64, s: &TwoPowerMultiset, n: u64) -> Result<bool> {
        check_min("phi_step_inequality_check", "m", m, 1)?;
        let lower = self.phi(&z_mask(&Nat::from(m - 1)).union(s), n)?;
        let upper = self.phi(&z_mask(&Nat::from(m)).union(s), n)?;
        Ok(lower <= upper + 1)
    }
}

// Depth-first over a_1, a_2, ... with the running product; once a factor
// power vanishes every higher power does too.
fn search_exponents(poly: &TruncPoly, var: usize, sum: u64, k: usize, a_max: u64, best: &mut u64) {
    let last = k - 1;
    if var == last {
        *best = (*best).max(sum);
        return;
    }
    if sum + (last - var) as u64 * a_max <= *best {
        return;
    }
    search_exponents(poly, var + 1, sum, k, a_max, best);
    let mut p = poly.clone();
    for a in 1..=a_max {
        p = p.mul_linear(var, last);
        if p.is_zero() {
            break;
        }
        search_exponents(&p, var + 1, sum + a, k, a_max, best);
    }
}

/// Element of `GF(2)[x_0..x_(k-1)] / (x_0^(n+1), …, x_(k-1)^(n+1))`,
/// stored as a dense bit array indexed by exponent tuples.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncPoly {
    vars: usize,
    degree: usize,
    bits: BitSet,
}

impl TruncPoly {
    pub fn zero(vars: usize, degree: usize) -> Self {
        let size = (degree + 1).pow(vars as u32);
        TruncPoly {
            vars,
            degree,
            bits: BitSet::new(size),
        }
    }

    pub fn one(vars: usize, degree: usize) -> Self {
        Self::monomial(vars, degree, &vec![0; vars]).expect("constant term always fits")
    }

    /// `x^exps`, or `None` if some exponent exceeds the truncation degree.
    pub fn monomial(vars: usize, degree: usize, exps: &[usize]) -> Option<Self> {
        let mut p = Self::zero(vars, degree);
        let idx = p.index(exps)?;
        p.bits.set(idx, true);
        Some(p)
    }

    /// `x_i`, which is zero when the truncation degree is 0.
    pub fn var(vars: usize, degree: usize, i: usize) -> Self {
        let mut exps = vec![0; vars];
        exps[i] = 1;
        Self::monomial(vars, degree, &exps).unwrap_or_else(|| Self::zero(vars, degree))
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.bits.is_zero()
    }

    fn stride(&self, var: usize) -> usize {
        (self.degree + 1).pow(var as u32)
    }

    fn index(&self, exps: &[usize]) -> Option<usize> {
        assert_eq!(exps.len(), self.vars);
        let mut idx = 0;
        for (i, &e) in exps.iter().enumerate() {
            if e > self.degree {
                return None;
            }
            idx += e * self.stride(i);
        }
        Some(idx)
    }

    fn exponents(&self, mut idx: usize) -> Vec<usize> {
        (0..self.vars)
            .map(|_| {
                let e = idx % (self.degree + 1);
                idx /= self.degree + 1;
                e
            })
            .collect()
    }

    fn exponent_of(&self, idx: usize, var: usize) -> usize {
        idx / self.stride(var) % (self.degree + 1)
    }

    /// Coefficient of `x^exps`; exponents above the degree read as 0.
    pub fn coeff(&self, exps: &[usize]) -> bool {
        self.index(exps).is_some_and(|i| self.bits.get(i))
    }

    /// Exponent tuples with coefficient 1.
    pub fn terms(&self) -> Vec<Vec<usize>> {
        self.bits.ones().map(|i| self.exponents(i)).collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_ring(other);
        let mut out = self.clone();
        out.bits.xor_assign(&other.bits);
        out
    }

    /// Schoolbook product, dropping any term with an exponent above the degree.
    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_ring(other);
        let mut out = Self::zero(self.vars, self.degree);
        let rhs: Vec<Vec<usize>> = other.terms();
        for a in self.terms() {
            for b in &rhs {
                let exps: Vec<usize> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                if let Some(idx) = out.index(&exps) {
                    out.bits.flip(idx);
                }
            }
        }
        out
    }

    /// Product with `x_i + x_j` for `i ≠ j`.
    pub fn mul_linear(&self, i: usize, j: usize) -> Self {
        assert!(i != j && i < self.vars && j < self.vars);
        let mut out = Self::zero(self.vars, self.degree);
        for idx in self.bits.ones() {
            for var in [i, j] {
                if self.exponent_of(idx, var) < self.degree {
                    out.bits.flip(idx + self.stride(var));
                }
            }
        }
        out
    }

    fn assert_same_ring(&self, other: &Self) {
        assert_eq!(
            (self.vars, self.degree),
            (other.vars, other.degree),
            "polynomials live in different truncated rings"
        );
    }
}
