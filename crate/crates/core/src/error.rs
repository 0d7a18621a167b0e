use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus {0} is not a prime in [2, 65536)")]
    NonPrimeModulus(u32),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("span of dimension {dim} over GF({q}) exceeds the enumeration cap of {cap}")]
    SpanTooLarge { q: u16, dim: usize, cap: u64 },

    #[error("codebook of q^{dim} words over GF({q}) exceeds the enumeration cap of {cap}")]
    CodebookTooLarge { q: u16, dim: usize, cap: u64 },

    #[error("linear system is inconsistent")]
    Inconsistent,

    #[error("index out of range: {0}")]
    InvalidIndex(String),

    #[error("cannot parse input: {0}")]
    Parse(String),

    #[error("invalid specification: {0}")]
    InvalidSpec(String),

    #[error("invalid code-class parameters: {0}")]
    InvalidParams(String),

    #[error("node {j} has no intra-rack repair group avoiding the failed nodes")]
    NoLocalGroup { j: usize },

    #[error("node {j} of rack {rack} is unrepairable: {reason}")]
    Unrepairable { rack: usize, j: usize, reason: String },

    #[error("repair needs symbol X[{rack},{node}] but it is erased")]
    MissingHelperSymbol { rack: usize, node: usize },

    #[error(
        "MacWilliams transform produced a non-integer entry at (w={w:#b}, s={s:#b}); input is not a code enumerator"
    )]
    NonIntegerDual { w: u32, s: u32 },

    #[error("problem too large: {0}")]
    ProblemTooLarge(String),

    #[error("malformed linear program: {0}")]
    MalformedProblem(String),
}
