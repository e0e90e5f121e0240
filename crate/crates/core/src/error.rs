use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

/// Errors reported by the toolkit.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("alphabet size {q} is not supported (need 3 <= q <= 65536)")]
    UnsupportedAlphabet { q: u32 },
    #[error("symbol {symbol} is outside the alphabet {{0, ..., {}}}", .q - 1)]
    SymbolOutOfRange { symbol: u32, q: u32 },
    #[error("cannot parse word {text:?}: {reason}")]
    Parse { text: String, reason: &'static str },
    #[error("invalid duplication (j={j}, k={k}) for a word of length {len}")]
    InvalidDuplication { j: usize, k: usize, len: usize },
    #[error("no duplicate of length {k} follows position {j}")]
    InvalidSite { j: usize, k: usize },
    #[error("words are over different alphabets (q={left} vs q={right})")]
    AlphabetMismatch { left: u32, right: u32 },
    #[error("{what} exceeded the resource cap of {cap} words")]
    CapExceeded { what: &'static str, cap: usize },
    #[error("{what} contains {count} words, more than the supported {max}")]
    TooManyWords { what: &'static str, count: usize, max: usize },
    #[error("{method} did not converge; last iterate {last}")]
    DidNotConverge { method: &'static str, last: f64 },
    #[error("parameter {name} = {value} is out of range")]
    OutOfRange { name: &'static str, value: f64 },
    #[error("no common descendant of the two children within {depth} imitation steps")]
    NoImitationCertificate { depth: usize },
}
