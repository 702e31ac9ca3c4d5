//! Constructive machinery for cyclic extensions of Q(i) and Q(zeta3) with a
//! certified non-norm element (1+i, respectively sqrt(-3)), and for the
//! full-rate space-time block codes built on top of them.
//!
//! The pipeline is: [`verify`] certifies that the non-norm property holds for
//! a degree-n subextension of Q(zeta_m, base)/base, [`construct`] searches for
//! the smallest admissible conductor m per degree, [`periods`] realises the
//! subextension explicitly through Gaussian-period orbits, and [`stbc`] turns
//! an orbit plus a non-norm element into codewords, exact determinants, and
//! energy/diversity metrics.

pub mod arith;
pub mod construct;
pub mod periods;
pub mod quadring;
pub mod stbc;
pub mod verify;

use thiserror::Error;

/// Crate-wide error type. Verification that merely *fails* is not an error;
/// failed entries are reported through [`verify::EntryReport`].
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{0} is ramified in the base field; use the subgroup route instead")]
    RamifiedPrime(u64),
    #[error("modulus {m} overlaps the base field ({reason})")]
    BaseOverlap { m: u64, reason: String },
    #[error("({n}, {m}) is not certified: {reasons:?}")]
    NotCertified {
        n: u64,
        m: u64,
        reasons: Vec<String>,
    },
    #[error("search exhausted: no certified modulus <= {limit} for degree {n}")]
    SearchExhausted {
        n: u64,
        limit: u64,
        trace_len: usize,
    },
    #[error("enumeration budget exceeded: {combinations} symbol matrices requested, limit {limit}; reduce the radius or the degree")]
    BudgetExceeded { combinations: u128, limit: u128 },
    #[error("orbit values are not pairwise distinct; the period does not generate the field")]
    DegenerateOrbit,
    #[error("internal consistency violation: {0}")]
    InternalConsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
