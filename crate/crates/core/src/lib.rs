//! Combinatorics of the (≤3)-tandem-duplication channel.
//!
//! A tandem duplication of length `k` inserts a copy of a length-`k` segment
//! right after the original. With `k ≤ 3` every word reduces to a unique
//! irreducible *duplication root*, so the set of irreducible words of a fixed
//! length is a zero-error code for the channel. This crate provides:
//!
//! - [`word`]: words, duplication and de-duplication, irreducibility, roots.
//! - [`enumeration`]: exact counts of irreducible words, lexicographic
//!   enumeration, the constraint automaton, ranking and growth rates.
//! - [`capacity`]: the capacity exponent `ι_q`, binary entropy, `β̄` and the
//!   entropy-rate bound with its closed-form rate expressions.
//! - [`descendants`]: descendant sets, bounded descendant cones, exact
//!   descendant tests, bounded confusability and sibling-pair classification.
//! - [`code`]: irreducible codes, zero-error verification, the seeded channel
//!   simulator and the root-extraction decoder.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod capacity;
pub mod code;
pub mod descendants;
pub mod enumeration;
mod error;
mod mis;
mod packed;
pub mod word;

pub use error::{Error, Result};
pub use word::{Alphabet, DeduplicationSite, DuplicationEvent, Symbol, Word};

/// Resource limits shared by the exhaustive search routines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest number of words any single search may hold at once.
    pub max_set_size: usize,
}

impl Limits {
    pub const DEFAULT_MAX_SET_SIZE: usize = 1_000_000;

    pub const fn new(max_set_size: usize) -> Self {
        Self { max_set_size }
    }
}

impl Default for Limits {
    fn default() -> Self {
        Self::new(Self::DEFAULT_MAX_SET_SIZE)
    }
}
