use thiserror::Error;

use crate::types::{BundleType, KL};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank must be at least {min}, got {rank}")]
    InvalidRank { rank: i64, min: i64 },

    #[error("genus must be at least 2, got {0}")]
    InvalidGenus(i64),

    #[error("denominator must be nonzero")]
    ZeroDenominator,

    #[error("subbundle rank m={m} outside 1..={max}")]
    SubbundleRank { m: i64, max: i64 },

    #[error("profile for rank {rank} needs {expected} Segre entries, got {found}")]
    ProfileLength {
        rank: i64,
        expected: usize,
        found: usize,
    },

    #[error("s_{m} = {s} violates s_m = m*d (mod {n}) for d = {d}")]
    Congruence { m: i64, s: i64, n: i64, d: i64 },

    #[error("s_{m} = {s} exceeds the Hirschowitz bound {bound}")]
    HirschowitzBound { m: i64, s: i64, bound: i64 },

    #[error("s = {s} outside the stratum dimension range 0 < s <= {max}")]
    OutsideStratumHypotheses { s: i64, max: i64 },

    #[error("({}, {}) is not in R1 for n = {n}, g = {g}", kl.k, kl.l)]
    NotInR1 { kl: KL, n: i64, g: i64 },

    #[error("expected rank {expected}, got {found}")]
    RankMismatch { expected: i64, found: i64 },

    #[error("profile is not strictly semistable")]
    NotStrictlySemistable,

    #[error("degree {d} is not divisible by rank {n}")]
    DegreeNotDivisible { n: i64, d: i64 },

    #[error("profiles have different types {0:?} and {1:?}")]
    MismatchedBundles(BundleType, BundleType),

    #[error("sections r must be nonnegative, got {0}")]
    NegativeSections(i64),

    #[error("twisting line bundle must have h0 >= 1, got {0}")]
    InvalidTwist(i64),

    #[error("enumeration guard: rank {rank} exceeds {limit}")]
    RankGuard { rank: i64, limit: i64 },

    #[error("sweep of {points} lattice points exceeds the limit {limit}")]
    SweepTooLarge { points: u64, limit: u64 },

    #[error("empty range {lo}..={hi}")]
    EmptyRange { lo: i64, hi: i64 },
}
