//! Compact word keys for the exhaustive cone searches.
//!
//! Words whose symbols fit in `width * max_len <= 128` bits are packed into a
//! `u128` (symbol `i` at bit offset `i * width`); everything else falls back
//! to owned symbol vectors.

use alloc::vec::Vec;

use crate::word::{self, Alphabet, Symbol};

pub(crate) trait ConeKey: Ord + Clone {
    fn key_len(&self) -> usize;
    fn duplicated(&self, j: usize, k: usize) -> Self;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct Packed {
    len: u8,
    width: u8,
    bits: u128,
}

fn low_mask(bits: u32) -> u128 {
    if bits >= 128 {
        u128::MAX
    } else {
        (1u128 << bits) - 1
    }
}

impl Packed {
    pub(crate) fn symbols(&self) -> Vec<Symbol> {
        let w = u32::from(self.width);
        let m = low_mask(w);
        (0..u32::from(self.len)).map(|i| ((self.bits >> (i * w)) & m) as Symbol).collect()
    }
}

impl ConeKey for Packed {
    fn key_len(&self) -> usize {
        self.len.into()
    }

    fn duplicated(&self, j: usize, k: usize) -> Self {
        let w = u32::from(self.width);
        let (j, k) = (j as u32, k as u32);
        let low = self.bits & low_mask(j * w);
        let segment = (self.bits >> ((j - k) * w)) & low_mask(k * w);
        let high = if j * w >= 128 { 0 } else { self.bits >> (j * w) };
        let shifted = |v: u128, by: u32| if by >= 128 { 0 } else { v << by };
        Self {
            len: self.len + k as u8,
            width: self.width,
            bits: low | shifted(segment, j * w) | shifted(high, (j + k) * w),
        }
    }
}

/// Owned-vector fallback key.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct Plain(pub(crate) Vec<Symbol>);

impl ConeKey for Plain {
    fn key_len(&self) -> usize {
        self.0.len()
    }

    fn duplicated(&self, j: usize, k: usize) -> Self {
        Plain(word::duplicated(&self.0, j, k))
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Packer {
    width: u8,
}

impl Packer {
    /// `None` when words of `max_len` symbols do not fit in 128 bits.
    pub(crate) fn new(alphabet: Alphabet, max_len: usize) -> Option<Self> {
        let width = (32 - (alphabet.size() - 1).leading_zeros()).max(1);
        (max_len <= u8::MAX as usize && width as usize * max_len <= 128)
            .then_some(Self { width: width as u8 })
    }

    pub(crate) fn pack(&self, symbols: &[Symbol]) -> Packed {
        let w = u32::from(self.width);
        let bits = symbols
            .iter()
            .enumerate()
            .fold(0u128, |acc, (i, &s)| acc | (u128::from(s) << (i as u32 * w)));
        Packed { len: symbols.len() as u8, width: self.width, bits }
    }
}
