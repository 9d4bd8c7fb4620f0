use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty input")]
    EmptyInput,

    /// 1-based position of the offending character.
    #[error("non-binary character at position {0}")]
    NonBinaryCharacter(usize),

    #[error("non-binary symbol {0} in stream")]
    NonBinarySymbol(u8),

    /// 1-based position of the offending character.
    #[error("non-digit character at position {0}")]
    NonDigit(usize),

    #[error("numerals are defined for positive integers only")]
    ZeroOrNegative,

    #[error("numeral {0:?} is not a canonical base-2 numeral")]
    InvalidNumeral(String),

    #[error("position {position} out of range 1..={len}")]
    OutOfRange { position: usize, len: usize },

    /// A decimal run of ten or more equal digits has no single-digit count.
    #[error("run of {len} digits starting at position {position} is too long to describe")]
    RunTooLong { position: usize, len: usize },

    #[error("term {n} would exceed the cap of {max_bits} symbols")]
    CapExceeded { n: usize, max_bits: usize },

    #[error("iteration cap of {iterations} reached with {certified_bits} certified bits")]
    IterationCapExceeded {
        certified_bits: usize,
        iterations: usize,
    },

    #[error("memory cap of {max_bits} bits reached with {certified_bits} certified bits")]
    MemoryCapExceeded { certified_bits: usize, max_bits: usize },

    #[error("need at least {needed} data points, got {got}")]
    InsufficientData { needed: usize, got: usize },

    #[error("fixed-point certificates hold {available} bits, threshold needs {needed}")]
    InsufficientCertificate { needed: usize, available: usize },

    #[error("malformed cache line {line}: {reason}")]
    CacheParse { line: usize, reason: String },
}
