//! Words over `A_q = {0, ..., q-1}` and the duplication algebra on them.
//!
//! Positions in [`DuplicationEvent`] and [`DeduplicationSite`] are 1-indexed:
//! `j` is the last position of the original segment and `k ∈ {1, 2, 3}` its
//! length. A duplication inserts the copy immediately after the original.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

pub type Symbol = u16;

/// Longest segment the channel duplicates.
pub const MAX_DUPLICATION_LENGTH: usize = 3;

/// Alphabet `A_q` with `3 ≤ q ≤ 2^16`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Alphabet(u32);

impl Alphabet {
    pub const MIN_SIZE: u32 = 3;
    pub const MAX_SIZE: u32 = 1 << 16;

    pub fn new(q: u32) -> Result<Self> {
        if (Self::MIN_SIZE..=Self::MAX_SIZE).contains(&q) {
            Ok(Self(q))
        } else {
            Err(Error::UnsupportedAlphabet { q })
        }
    }

    pub fn size(self) -> u32 {
        self.0
    }

    /// Digit strings are used for `q ≤ 10`, comma-separated integers otherwise.
    pub fn uses_digits(self) -> bool {
        self.0 <= 10
    }

    pub fn contains(self, symbol: u32) -> bool {
        symbol < self.0
    }

    pub fn symbols(self) -> impl Iterator<Item = Symbol> {
        (0..self.0).map(|s| s as Symbol)
    }
}

/// One tandem duplication: copy `word[j-k+1..=j]` and insert it after `j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DuplicationEvent {
    pub j: usize,
    pub k: usize,
}

impl DuplicationEvent {
    pub const fn new(j: usize, k: usize) -> Self {
        Self { j, k }
    }

    pub fn is_valid_for(self, len: usize) -> bool {
        (1..=MAX_DUPLICATION_LENGTH).contains(&self.k) && self.k <= self.j && self.j <= len
    }
}

/// A place where `word[j-k+1..=j]` is immediately repeated by `word[j+1..=j+k]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeduplicationSite {
    pub j: usize,
    pub k: usize,
}

impl DeduplicationSite {
    pub const fn new(j: usize, k: usize) -> Self {
        Self { j, k }
    }

    /// The duplication that recreates the removed copy.
    pub fn as_event(self) -> DuplicationEvent {
        DuplicationEvent::new(self.j, self.k)
    }
}

impl From<DuplicationEvent> for DeduplicationSite {
    fn from(e: DuplicationEvent) -> Self {
        Self::new(e.j, e.k)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    symbols: Vec<Symbol>,
    alphabet: Alphabet,
}

impl Word {
    pub fn new(symbols: Vec<Symbol>, alphabet: Alphabet) -> Result<Self> {
        if let Some(&s) = symbols.iter().find(|&&s| !alphabet.contains(s.into())) {
            return Err(Error::SymbolOutOfRange { symbol: s.into(), q: alphabet.size() });
        }
        Ok(Self { symbols, alphabet })
    }

    pub fn empty(alphabet: Alphabet) -> Self {
        Self { symbols: Vec::new(), alphabet }
    }

    /// Symbols must already be checked against the alphabet.
    pub(crate) fn from_trusted(symbols: Vec<Symbol>, alphabet: Alphabet) -> Self {
        debug_assert!(symbols.iter().all(|&s| alphabet.contains(s.into())));
        Self { symbols, alphabet }
    }

    /// Parses the shared textual format: digits for `q ≤ 10`
    /// (`"01120210"`), comma-separated decimals otherwise (`"0,1,11,2"`).
    pub fn parse(text: &str, alphabet: Alphabet) -> Result<Self> {
        let text = text.trim();
        let parse_err = |reason| Error::Parse { text: text.into(), reason };
        let mut symbols = Vec::with_capacity(text.len());
        if alphabet.uses_digits() {
            for c in text.chars() {
                let d = c.to_digit(10).ok_or_else(|| parse_err("expected decimal digits"))?;
                symbols.push(d as Symbol);
            }
        } else if !text.is_empty() {
            for part in text.split(',') {
                let v: u32 = part
                    .trim()
                    .parse()
                    .map_err(|_| parse_err("expected comma-separated integers"))?;
                if !alphabet.contains(v) {
                    return Err(Error::SymbolOutOfRange { symbol: v, q: alphabet.size() });
                }
                symbols.push(v as Symbol);
            }
        }
        Self::new(symbols, alphabet)
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn into_symbols(self) -> Vec<Symbol> {
        self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Every event applicable to this word, in increasing `(j, k)` order.
    pub fn duplication_events(&self) -> impl Iterator<Item = DuplicationEvent> {
        duplication_events(self.len())
    }

    pub fn duplicate(&self, e: DuplicationEvent) -> Result<Self> {
        if !e.is_valid_for(self.len()) {
            return Err(Error::InvalidDuplication { j: e.j, k: e.k, len: self.len() });
        }
        Ok(Self { symbols: duplicated(&self.symbols, e.j, e.k), alphabet: self.alphabet })
    }

    pub fn is_site(&self, s: DeduplicationSite) -> bool {
        is_site(&self.symbols, s.j, s.k)
    }

    /// All de-duplication sites in increasing `(j, k)` order.
    pub fn deduplication_sites(&self) -> Vec<DeduplicationSite> {
        let n = self.len();
        (1..=n)
            .flat_map(|j| (1..=MAX_DUPLICATION_LENGTH).map(move |k| (j, k)))
            .filter(|&(j, k)| is_site(&self.symbols, j, k))
            .map(|(j, k)| DeduplicationSite::new(j, k))
            .collect()
    }

    pub fn deduplicate(&self, s: DeduplicationSite) -> Result<Self> {
        if !self.is_site(s) {
            return Err(Error::InvalidSite { j: s.j, k: s.k });
        }
        let mut symbols = self.symbols.clone();
        symbols.drain(s.j..s.j + s.k);
        Ok(Self { symbols, alphabet: self.alphabet })
    }

    /// True iff the word avoids `aa`, `abab` and `abcabc`.
    pub fn is_irreducible(&self) -> bool {
        first_site_from(&self.symbols, 1).is_none()
    }

    /// The duplication root `R(w)`.
    pub fn root(&self) -> Self {
        self.root_with_trace().0
    }

    /// The root together with the sites removed, leftmost site first at
    /// every step. Each site refers to the word as it was at that step.
    pub fn root_with_trace(&self) -> (Self, Vec<DeduplicationSite>) {
        let mut symbols = self.symbols.clone();
        let mut trace = Vec::new();
        let mut start = 1;
        while let Some(site) = first_site_from(&symbols, start) {
            symbols.drain(site.j..site.j + site.k);
            trace.push(site);
            // A site created by the removal must end past position j.
            start = site.j.saturating_sub(2).max(1);
        }
        (Self { symbols, alphabet: self.alphabet }, trace)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.alphabet.uses_digits() {
            for &s in &self.symbols {
                write!(f, "{s}")?;
            }
        } else {
            for (i, &s) in self.symbols.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{s}")?;
            }
        }
        Ok(())
    }
}

impl Word {
    pub fn to_text(&self) -> String {
        alloc::format!("{self}")
    }
}

pub(crate) fn duplication_events(len: usize) -> impl Iterator<Item = DuplicationEvent> {
    (1..=len).flat_map(|j| (1..=j.min(MAX_DUPLICATION_LENGTH)).map(move |k| DuplicationEvent::new(j, k)))
}

pub(crate) fn duplicated(symbols: &[Symbol], j: usize, k: usize) -> Vec<Symbol> {
    let mut out = Vec::with_capacity(symbols.len() + k);
    out.extend_from_slice(&symbols[..j]);
    out.extend_from_slice(&symbols[j - k..j]);
    out.extend_from_slice(&symbols[j..]);
    out
}

pub(crate) fn is_site(symbols: &[Symbol], j: usize, k: usize) -> bool {
    (1..=MAX_DUPLICATION_LENGTH).contains(&k)
        && k <= j
        && j + k <= symbols.len()
        && symbols[j - k..j] == symbols[j..j + k]
}

fn first_site_from(symbols: &[Symbol], start: usize) -> Option<DeduplicationSite> {
    (start..symbols.len())
        .flat_map(|j| (1..=MAX_DUPLICATION_LENGTH).map(move |k| (j, k)))
        .find(|&(j, k)| is_site(symbols, j, k))
        .map(|(j, k)| DeduplicationSite::new(j, k))
}

/// True when appending the last symbol completed `aa`, `abab` or `abcabc`.
pub(crate) fn has_forbidden_suffix(symbols: &[Symbol]) -> bool {
    let n = symbols.len();
    (1..=MAX_DUPLICATION_LENGTH)
        .any(|k| n >= 2 * k && symbols[n - 2 * k..n - k] == symbols[n - k..])
}
