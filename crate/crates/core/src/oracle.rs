//! Brute-force reference answers, by direct scanning.
//!
//! Nothing here touches the permutation, PBWT or FM code; the CLI's `--verify`
//! flag and the test suites compare the indexes against these.

use crate::collection::StringCollection;
use crate::error::{Error, Result};

/// Indexes `i` with `S_i[k..k+m] == pattern`, ascending.
pub fn naive_positional(
    collection: &StringCollection,
    pattern: &[u8],
    k: usize,
) -> Result<Vec<usize>> {
    let len = collection.string_len();
    if k > len || pattern.len() > len - k {
        return Err(Error::PatternOverrun {
            position: k,
            pattern_len: pattern.len(),
            len,
        });
    }
    Ok(collection
        .strings()
        .iter()
        .enumerate()
        .filter(|(_, s)| &s[k..k + pattern.len()] == pattern)
        .map(|(i, _)| i)
        .collect())
}

/// Every start position of `pattern` in `text`, ascending. The empty pattern
/// matches at all `|text| + 1` positions.
pub fn naive_substring(text: &[u8], pattern: &[u8]) -> Vec<usize> {
    if pattern.len() > text.len() {
        return Vec::new();
    }
    (0..=text.len() - pattern.len())
        .filter(|&p| &text[p..p + pattern.len()] == pattern)
        .collect()
}
