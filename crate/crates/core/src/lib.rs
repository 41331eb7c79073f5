//! Character tables of symmetric groups and the partition combinatorics
//! behind them.
//!
//! The crate is organized around six concerns:
//!
//! - [`partitions`]: integer partitions — enumeration, counting (pentagonal
//!   recurrence), centralizer orders, base-p digits, partitions into prime
//!   powers, and an exactly-uniform random sampler.
//! - [`hooks`]: Young-diagram geometry — hook lengths, beta-sets, t-core
//!   tests, and border-strip removal.
//! - [`characters`]: Murnaghan–Nakayama evaluation of irreducible characters,
//!   exact (big integer) and mod-p, full table construction, orthogonality
//!   checking, and divisibility/zero density reports.
//! - [`reduction`]: the part-merging reduction that sends a cycle type μ to
//!   its fixpoint μ̃ with all part multiplicities below p, the congruence
//!   χ_μ ≡ χ_μ̃ (mod p) it induces, and restricted partition counts by
//!   brute force and by generating-function coefficient extraction.
//! - [`analytics`]: certified high-precision evaluation of the generating
//!   function F_p(x), saddle-point weights, and rigorous upper bounds on
//!   restricted partition counts via interval arithmetic ([`interval`]).
//! - [`cli`]: the batch front-end used by the `symchar` binary; the only
//!   module that performs I/O.
//!
//! Everything outside `cli` is a pure function of its inputs and safe to
//! call concurrently.

pub mod analytics;
pub mod arith;
pub mod characters;
pub mod cli;
pub mod hooks;
pub mod interval;
pub mod partitions;
pub mod reduction;

mod error;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
