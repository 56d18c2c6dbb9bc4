use num_bigint::BigInt;
use thiserror::Error;

/// Errors reported by fallible constructors and theorem-level operations.
///
/// Shape mismatches between elements of *different* rank are programming
/// errors and panic instead; see the individual operation docs.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank n must be at least 1")]
    ZeroRank,

    #[error("rank {n} requires {expected} exponents, got {got}")]
    VectorLength {
        n: usize,
        expected: usize,
        got: usize,
    },

    #[error("generator index {index} out of range for rank {n}")]
    GeneratorIndex { index: usize, n: usize },

    #[error("subgroup exponent vector must not be all zero")]
    ZeroSubgroupVector,

    #[error("exponent a[{index}] is zero; this operation needs all a_ij nonzero")]
    ZeroEntry { index: usize },

    #[error("need rank n >= 4 (got {n}); for n = 3 the three-generator construction applies unconditionally")]
    RankBelowFour { n: usize },

    #[error("gcd of an empty or all-zero list is undefined")]
    GcdAllZero,

    #[error("equation 0*X + 0*Y = {r} has no canonical solution")]
    ZeroCoefficients { r: BigInt },

    #[error(
        "witness construction failed: {0}; this falsifies the construction and indicates a bug"
    )]
    ConstructionFailure(String),

    #[error("search bound must be at least 1")]
    ZeroBound,

    #[error("search space too large to enumerate: {0}")]
    SearchSpaceTooLarge(String),

    #[error("need trials >= 1")]
    ZeroTrials,
}
