//! Mod-2 cohomology lower bounds for the higher topological complexity
//! `TC_k` of real projective space.
//!
//! The zero-divisor cup-length `zcl_k(P^n)` is computed three ways that
//! check each other:
//!
//! * [`bounds`] holds the closed formula and the digit-stripping
//!   recursions for `z_k`, `g_k`, `h_k` and `m_j`;
//! * [`stability`] derives the stabilization point `s(n)`, the sharpness
//!   threshold and several special-case characterizations;
//! * [`oracle`] recomputes everything from definitions (subset sums,
//!   Lucas parity enumeration, a knapsack over monomials, and literal
//!   multiplication in a truncated GF(2) polynomial ring).
//!
//! All integer quantities that can grow with `n` are [`Nat`]
//! (arbitrary precision), so no product `k·n` or power `2^(i+1)` can
//! overflow. The oracles work at desk scale on machine words and reject
//! inputs outside their configured [`oracle::OracleLimits`].

pub mod binexp;
pub mod bounds;
mod error;
pub mod oracle;
pub mod stability;

pub use binexp::{BitExpansion, Nat, TwoPowerMultiset};
pub use bounds::{zcl, BoundReport, Witness};
pub use error::{Error, Result};
