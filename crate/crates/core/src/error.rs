use alloc::string::String;

use crate::composition::Modulus;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("empty composition")]
    EmptyComposition,
    #[error("invalid part `{token}`: not a decimal integer")]
    NonNumericPart { token: String },
    #[error("invalid part `{token}`: nonpositive part")]
    NonPositivePart { token: String },
    #[error("modulus must be at least 1")]
    ZeroModulus,
    #[error("n must be at least {min}, got {n}")]
    NTooSmall { n: u64, min: u64 },
    #[error("oracle cap exceeded: n = {n} > cap {cap}")]
    OracleCapExceeded { n: u64, cap: u64 },
    #[error("no closed form for m = {0} (supported: 1, 2, 3, 4, inf)")]
    UnsupportedClosedForm(Modulus),
    #[error("no counting method selected")]
    NoMethods,
    #[error("series reciprocal needs constant term 1")]
    ReciprocalConstantTerm,
    #[error("triple sequence is already marked")]
    AlreadyMarked,
    #[error("invalid triple sequence: {0}")]
    InvalidTriples(&'static str),
    #[error("invalid symbol `{symbol}` at position {position}")]
    InvalidSymbol { position: usize, symbol: char },
    #[error("composition is not palindromic modulo {0}")]
    NotPalindromic(Modulus),
    #[error("composition sum {sum} has the wrong parity (expected {expected})")]
    WrongParity { sum: u64, expected: &'static str },
    #[error("word is not in A_n: {reason} (failing prefix: {prefix})")]
    NotInA { reason: &'static str, prefix: String },
    #[error("segment has exactly one leading one")]
    CorruptSegment,
    #[error("modulus {0} is odd; the central-part map is only a bijection for even m")]
    OddModulus(Modulus),
    #[error("pc({n}, {m}) is not exactly representable in binary64")]
    PrecisionLoss { n: u64, m: u64 },
}
