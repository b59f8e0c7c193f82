//! Ordered alphabets and the reserved sentinel character.

use std::fmt;

use crate::error::{Error, Result};

pub const DEFAULT_SYMBOLS: &[u8] = b"ACGT";
pub const DEFAULT_SENTINEL: u8 = b'$';

/// An ordered set of symbols mapped to dense ranks `0..sigma`, plus a sentinel
/// that sorts below every symbol.
///
/// The sentinel is never accepted in user strings; only the FM-index injects it.
#[derive(Clone)]
pub struct Alphabet {
    symbols: Vec<u8>,
    sentinel: u8,
    lookup: [Option<u8>; 256],
}

impl Alphabet {
    /// Builds an alphabet with the default `$` sentinel.
    pub fn new(symbols: &[u8]) -> Result<Self> {
        Self::with_sentinel(symbols, DEFAULT_SENTINEL)
    }

    pub fn with_sentinel(symbols: &[u8], sentinel: u8) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::InvalidAlphabet("no symbols".into()));
        }
        if let Some(w) = symbols.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::InvalidAlphabet(format!(
                "symbols must be strictly increasing, found {:?} before {:?}",
                w[0] as char, w[1] as char
            )));
        }
        if symbols.contains(&sentinel) {
            return Err(Error::InvalidAlphabet(format!(
                "sentinel {:?} is also a symbol",
                sentinel as char
            )));
        }
        if sentinel > symbols[0] {
            return Err(Error::InvalidAlphabet(format!(
                "sentinel {:?} must sort below every symbol",
                sentinel as char
            )));
        }
        Ok(Self::build(symbols.to_vec(), sentinel))
    }

    /// The DNA alphabet `A < C < G < T` with sentinel `$`.
    pub fn dna() -> Self {
        Self::build(DEFAULT_SYMBOLS.to_vec(), DEFAULT_SENTINEL)
    }

    fn build(symbols: Vec<u8>, sentinel: u8) -> Self {
        let mut lookup = [None; 256];
        for (rank, &c) in symbols.iter().enumerate() {
            lookup[c as usize] = Some(rank as u8);
        }
        Alphabet {
            symbols,
            sentinel,
            lookup,
        }
    }

    /// The same alphabet with its sentinel promoted to an ordinary symbol of rank 0.
    ///
    /// Only used to push cyclic shifts through the collection machinery; the result
    /// does not satisfy the public sentinel invariant.
    pub(crate) fn admitting_sentinel(&self) -> Alphabet {
        let mut symbols = Vec::with_capacity(self.symbols.len() + 1);
        symbols.push(self.sentinel);
        symbols.extend_from_slice(&self.symbols);
        Self::build(symbols, self.sentinel)
    }

    pub fn sigma(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn sentinel(&self) -> u8 {
        self.sentinel
    }

    pub fn contains(&self, c: u8) -> bool {
        self.lookup[c as usize].is_some()
    }

    /// Position of `c` among the symbols.
    #[inline]
    pub fn rank(&self, c: u8) -> Result<u8> {
        self.lookup[c as usize].ok_or_else(|| Error::unknown(c))
    }

    #[inline]
    pub fn char_at(&self, rank: usize) -> Result<u8> {
        self.symbols
            .get(rank)
            .copied()
            .ok_or(Error::RankOutOfRange {
                rank,
                sigma: self.sigma(),
            })
    }

    /// Ranks every byte of `s`, failing on the first byte outside the alphabet.
    pub fn encode(&self, s: &[u8]) -> Result<Vec<u8>> {
        s.iter().map(|&c| self.rank(c)).collect()
    }
}

impl Default for Alphabet {
    fn default() -> Self {
        Self::dna()
    }
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        self.symbols == other.symbols && self.sentinel == other.sentinel
    }
}

impl Eq for Alphabet {}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Alphabet")
            .field("symbols", &String::from_utf8_lossy(&self.symbols))
            .field("sentinel", &(self.sentinel as char))
            .finish()
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&String::from_utf8_lossy(&self.symbols))
    }
}
