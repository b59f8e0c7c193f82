//! Per-column sorted-suffix permutations, computed by a right-to-left radix sort.
//!
//! Column `j` of a [`PermutationTable`] lists the string indexes ordered by
//! their suffixes starting at `j`. Column `L` (the empty suffixes) is the
//! identity, and each column is derived from the one to its right with a
//! stable counting sort on the characters at `j`. Equal suffixes therefore
//! keep ascending string-index order.

use crate::collection::StringCollection;
use crate::error::{Error, Result};

/// Symbol frequencies of one column and their exclusive prefix sums (`C`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnCounts {
    freq: Vec<usize>,
    c_array: Vec<usize>,
}

impl ColumnCounts {
    pub fn from_ranks<I: IntoIterator<Item = u8>>(ranks: I, sigma: usize) -> Self {
        let mut freq = vec![0; sigma];
        for a in ranks {
            freq[a as usize] += 1;
        }
        Self::from_freq(freq)
    }

    pub fn from_freq(freq: Vec<usize>) -> Self {
        let mut c_array = Vec::with_capacity(freq.len());
        let mut acc = 0;
        for &f in &freq {
            c_array.push(acc);
            acc += f;
        }
        ColumnCounts { freq, c_array }
    }

    pub fn freq(&self) -> &[usize] {
        &self.freq
    }

    pub fn c_array(&self) -> &[usize] {
        &self.c_array
    }

    /// Number of characters in the column strictly smaller than symbol `a`.
    #[inline]
    pub fn c(&self, a: u8) -> usize {
        self.c_array[a as usize]
    }

    pub fn total(&self) -> usize {
        self.freq.iter().sum()
    }
}

/// Counts over `{S_0[j], ..., S_{n-1}[j]}`.
pub fn column_counts(collection: &StringCollection, j: usize) -> Result<ColumnCounts> {
    if j >= collection.string_len() {
        return Err(Error::IndexOutOfRange {
            what: "column",
            index: j,
            bound: collection.string_len(),
        });
    }
    Ok(ColumnCounts::from_ranks(
        (0..collection.n_strings()).map(|i| collection.rank_at(i, j)),
        collection.alphabet().sigma(),
    ))
}

/// One stable counting-sort pass: given `next` (the order for column `j + 1`) and
/// the symbols `S_{next[i]}[j]` in that same order, produces the order for column `j`.
pub(crate) fn radix_step<I>(
    next: &[usize],
    ranks_in_next_order: I,
    counts: &ColumnCounts,
) -> Vec<usize>
where
    I: IntoIterator<Item = u8>,
{
    let mut slot = counts.c_array().to_vec();
    let mut out = vec![0; next.len()];
    for (&string, a) in next.iter().zip(ranks_in_next_order) {
        let a = a as usize;
        out[slot[a]] = string;
        slot[a] += 1;
    }
    out
}

/// The permutations `pi_0 .. pi_L` of a collection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationTable {
    columns: Vec<Vec<usize>>,
}

impl PermutationTable {
    pub fn build(collection: &StringCollection) -> Self {
        let n = collection.n_strings();
        let len = collection.string_len();
        let mut columns = vec![Vec::new(); len + 1];
        columns[len] = (0..n).collect();
        for j in (0..len).rev() {
            let counts = column_counts(collection, j).expect("column in range");
            let next = &columns[j + 1];
            let ranks = next.iter().map(|&i| collection.rank_at(i, j));
            columns[j] = radix_step(next, ranks, &counts);
        }
        PermutationTable { columns }
    }

    /// Number of columns, `L + 1`.
    pub fn n_columns(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> Result<&[usize]> {
        self.columns
            .get(j)
            .map(Vec::as_slice)
            .ok_or(Error::IndexOutOfRange {
                what: "permutation column",
                index: j,
                bound: self.columns.len(),
            })
    }

    pub fn columns(&self) -> &[Vec<usize>] {
        &self.columns
    }

    pub fn into_columns(self) -> Vec<Vec<usize>> {
        self.columns
    }
}

pub fn build_permutations(collection: &StringCollection) -> PermutationTable {
    PermutationTable::build(collection)
}
