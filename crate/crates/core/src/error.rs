use std::io;

use thiserror::Error;

/// Everything that can go wrong while building, querying or (de)serializing an index.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown character {}{}", show_byte(*.byte), show_location(*.location))]
    UnknownCharacter {
        byte: u8,
        /// 1-based (line, column) when the character came from parsed input.
        location: Option<(usize, usize)>,
    },

    #[error("symbol rank {rank} out of range for alphabet of size {sigma}")]
    RankOutOfRange { rank: usize, sigma: usize },

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("ragged collection: line {line} has length {found}, expected {expected}")]
    RaggedCollection {
        line: usize,
        expected: usize,
        found: usize,
    },

    #[error("empty input")]
    EmptyInput,

    #[error("{what} {index} out of range (bound {bound})")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        bound: usize,
    },

    #[error("permutation for column {column} is not stored under the current policy")]
    PermutationNotStored { column: usize },

    #[error(
        "pattern of length {pattern_len} at position {position} overruns strings of length {len}"
    )]
    PatternOverrun {
        position: usize,
        pattern_len: usize,
        len: usize,
    },

    #[error("invalid stride {0}: must be at least 1")]
    InvalidStride(usize),

    #[error("index mode mismatch: expected {expected} index, found {found}")]
    ModeMismatch {
        expected: &'static str,
        found: &'static str,
    },

    #[error("inconsistent inputs: {0}")]
    Inconsistent(String),

    #[error("malformed index file: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

fn show_byte(b: u8) -> String {
    if b.is_ascii_graphic() {
        format!("'{}'", b as char)
    } else {
        format!("0x{b:02x}")
    }
}

fn show_location(loc: Option<(usize, usize)>) -> String {
    match loc {
        Some((line, col)) => format!(" at line {line}, column {col}"),
        None => String::new(),
    }
}

impl Error {
    pub(crate) fn unknown(byte: u8) -> Self {
        Error::UnknownCharacter {
            byte,
            location: None,
        }
    }

    /// True for failures caused by the environment rather than by the caller's input.
    pub fn is_io(&self) -> bool {
        matches!(self, Error::Io(_))
    }
}
