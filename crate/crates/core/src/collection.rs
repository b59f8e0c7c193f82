//! Rectangular string collections and their plain-text format (one string per line).

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};

/// `n` strings of a common length over one alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StringCollection {
    strings: Vec<Vec<u8>>,
    string_len: usize,
    alphabet: Alphabet,
}

impl StringCollection {
    /// Parses newline-delimited text. Empty lines are skipped; every other line
    /// becomes one string, in order.
    pub fn parse(text: &[u8], alphabet: &Alphabet) -> Result<Self> {
        let mut strings: Vec<Vec<u8>> = Vec::new();
        for (lineno, line) in text.split(|&b| b == b'\n').enumerate() {
            if line.is_empty() {
                continue;
            }
            if let Some(first) = strings.first() {
                if first.len() != line.len() {
                    return Err(Error::RaggedCollection {
                        line: lineno + 1,
                        expected: first.len(),
                        found: line.len(),
                    });
                }
            }
            if let Some(col) = line.iter().position(|&c| !alphabet.contains(c)) {
                return Err(Error::UnknownCharacter {
                    byte: line[col],
                    location: Some((lineno + 1, col + 1)),
                });
            }
            strings.push(line.to_vec());
        }
        Self::from_validated(strings, alphabet.clone())
    }

    pub fn from_strings<I, S>(strings: I, alphabet: &Alphabet) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u8]>,
    {
        let strings: Vec<Vec<u8>> = strings.into_iter().map(|s| s.as_ref().to_vec()).collect();
        for (i, s) in strings.iter().enumerate() {
            if s.len() != strings[0].len() {
                return Err(Error::RaggedCollection {
                    line: i + 1,
                    expected: strings[0].len(),
                    found: s.len(),
                });
            }
            if let Some(col) = s.iter().position(|&c| !alphabet.contains(c)) {
                return Err(Error::UnknownCharacter {
                    byte: s[col],
                    location: Some((i + 1, col + 1)),
                });
            }
        }
        Self::from_validated(strings, alphabet.clone())
    }

    fn from_validated(strings: Vec<Vec<u8>>, alphabet: Alphabet) -> Result<Self> {
        let string_len = match strings.first() {
            None => return Err(Error::EmptyInput),
            Some(s) if s.is_empty() => return Err(Error::EmptyInput),
            Some(s) => s.len(),
        };
        Ok(StringCollection {
            strings,
            string_len,
            alphabet,
        })
    }

    /// Number of strings, `n`.
    pub fn n_strings(&self) -> usize {
        self.strings.len()
    }

    /// Common length `L` of every string.
    pub fn string_len(&self) -> usize {
        self.string_len
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn strings(&self) -> &[Vec<u8>] {
        &self.strings
    }

    pub fn get(&self, i: usize) -> Result<&[u8]> {
        self.strings
            .get(i)
            .map(Vec::as_slice)
            .ok_or(Error::IndexOutOfRange {
                what: "string index",
                index: i,
                bound: self.n_strings(),
            })
    }

    /// `S_i[j..L-1]`; empty when `j == L`.
    pub fn suffix(&self, i: usize, j: usize) -> Result<&[u8]> {
        let s = self.get(i)?;
        if j > self.string_len {
            return Err(Error::IndexOutOfRange {
                what: "column",
                index: j,
                bound: self.string_len,
            });
        }
        Ok(&s[j..])
    }

    /// Symbol rank of `S_i[j]`; the collection only holds validated characters.
    #[inline]
    pub(crate) fn rank_at(&self, i: usize, j: usize) -> u8 {
        self.alphabet
            .rank(self.strings[i][j])
            .expect("collection characters are validated at construction")
    }

    /// Serializes back to the line format, one trailing newline included.
    pub fn to_text(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.n_strings() * (self.string_len + 1));
        for s in &self.strings {
            out.extend_from_slice(s);
            out.push(b'\n');
        }
        out
    }
}
