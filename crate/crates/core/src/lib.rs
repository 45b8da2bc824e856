//! q-series engine and congruence verification harness for partition-type
//! counting functions: the partition function `p(n)`, ℓ-regular partitions
//! `b_ℓ(n)`, broken k-diamond partitions `Δ_k(n)` and k dots bracelet
//! partitions `𝔅_k(n)`.
//!
//! - [`series`] / [`ring`]: truncated power series over exact integers or
//!   integers modulo `M`.
//! - [`qseries`]: Pochhammer products, theta functions, the generating
//!   functions above and the p-dissection of Euler's function.
//! - [`oracles`]: brute-force and recurrence oracles independent of the
//!   series engine.
//! - [`catalog`]: congruences and identities as checkable claim objects.
//! - [`harness`]: the verification engine, reports and progression search.

pub mod arith;
pub mod catalog;
pub mod error;
mod gf2;
pub mod harness;
pub mod oracles;
pub mod qseries;
pub mod ring;
pub mod series;

pub use error::{Error, Result};
pub use ring::{CoefficientRing, IntegerRing, ModRing, RingKind};
pub use series::TruncatedSeries;

/// The exact (arbitrary precision) integer ring.
pub type Exact = IntegerRing<num_bigint::BigInt>;
/// Series over the exact integers.
pub type ExactSeries = TruncatedSeries<Exact>;
/// Series over `Z/MZ`.
pub type ModSeries = TruncatedSeries<ModRing>;
/// Series over 128-bit integers; panics on overflow.
pub type I128Series = TruncatedSeries<IntegerRing<i128>>;
