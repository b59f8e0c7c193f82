//! The positional BWT matrix of a string collection.
//!
//! Column `j` holds the characters `S_x[j]` listed in the order `pi_{j+1}`, i.e.
//! sorted by the suffix that follows them. With the column's `C` array and a rank
//! table, two rank queries turn the match interval for column `j + 1` into the
//! match interval for column `j`.

use std::fmt;
use std::ops::Range;

use crate::alphabet::Alphabet;
use crate::collection::StringCollection;
use crate::error::{Error, Result};
use crate::permutations::{ColumnCounts, PermutationTable};
use crate::rank::{RankLayout, RankTable};

/// An inclusive range `[first, last]` of lexicographic ranks, or no match at all.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Interval {
    Empty,
    Range { first: usize, last: usize },
}

impl Interval {
    /// `[first, last]`, or `Empty` when `first > last`.
    pub fn new(first: usize, last: usize) -> Self {
        if first > last {
            Interval::Empty
        } else {
            Interval::Range { first, last }
        }
    }

    /// All `n` rows.
    pub fn full(n: usize) -> Self {
        Self::from_half_open(0, n)
    }

    #[inline]
    pub(crate) fn from_half_open(start: usize, end: usize) -> Self {
        if start >= end {
            Interval::Empty
        } else {
            Interval::Range {
                first: start,
                last: end - 1,
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Interval::Empty)
    }

    /// Number of rows covered, `last - first + 1`.
    pub fn width(&self) -> usize {
        self.rows().len()
    }

    pub fn bounds(&self) -> Option<(usize, usize)> {
        match *self {
            Interval::Empty => None,
            Interval::Range { first, last } => Some((first, last)),
        }
    }

    pub fn rows(&self) -> Range<usize> {
        match *self {
            Interval::Empty => 0..0,
            Interval::Range { first, last } => first..last + 1,
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Interval::Empty => f.write_str("empty"),
            Interval::Range { first, last } => write!(f, "{first} {last}"),
        }
    }
}

/// `f' = C[a] + occ(a, f)`, `l' = C[a] + occ(a, l + 1) - 1`; `Empty` absorbs.
#[inline]
pub(crate) fn step_interval(c: usize, ranks: &RankTable, a: u8, interval: Interval) -> Interval {
    match interval {
        Interval::Empty => Interval::Empty,
        Interval::Range { first, last } => {
            Interval::from_half_open(c + ranks.occ(a, first), c + ranks.occ(a, last + 1))
        }
    }
}

/// PBWT columns with their count arrays and rank tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PbwtMatrix {
    alphabet: Alphabet,
    n: usize,
    cols: Vec<Vec<u8>>,
    counts: Vec<ColumnCounts>,
    ranks: Vec<RankTable>,
}

impl PbwtMatrix {
    pub fn build(collection: &StringCollection, perms: &PermutationTable) -> Result<Self> {
        Self::build_with_layout(collection, perms, RankLayout::Exact)
    }

    pub fn build_with_layout(
        collection: &StringCollection,
        perms: &PermutationTable,
        layout: RankLayout,
    ) -> Result<Self> {
        let n = collection.n_strings();
        let len = collection.string_len();
        if perms.n_columns() != len + 1 || perms.columns().iter().any(|c| c.len() != n) {
            return Err(Error::Inconsistent(format!(
                "permutation table is not {} columns of {} entries",
                len + 1,
                n
            )));
        }
        let cols: Vec<Vec<u8>> = (0..len)
            .map(|j| {
                let next = &perms.columns()[j + 1];
                next.iter().map(|&x| collection.strings()[x][j]).collect()
            })
            .collect();
        Self::from_columns(collection.alphabet().clone(), n, cols, layout)
    }

    /// Builds counts and rank tables over already-permuted columns.
    pub(crate) fn from_columns(
        alphabet: Alphabet,
        n: usize,
        cols: Vec<Vec<u8>>,
        layout: RankLayout,
    ) -> Result<Self> {
        let sigma = alphabet.sigma();
        let mut counts = Vec::with_capacity(cols.len());
        let mut ranks = Vec::with_capacity(cols.len());
        for col in &cols {
            if col.len() != n {
                return Err(Error::Inconsistent(format!(
                    "PBWT column of length {} in a collection of {n} strings",
                    col.len()
                )));
            }
            let encoded = alphabet.encode(col)?;
            counts.push(ColumnCounts::from_ranks(encoded.iter().copied(), sigma));
            ranks.push(RankTable::new(&encoded, sigma, layout)?);
        }
        Ok(PbwtMatrix {
            alphabet,
            n,
            cols,
            counts,
            ranks,
        })
    }

    pub(crate) fn from_parts(
        alphabet: Alphabet,
        n: usize,
        cols: Vec<Vec<u8>>,
        counts: Vec<ColumnCounts>,
        ranks: Vec<RankTable>,
    ) -> Self {
        PbwtMatrix {
            alphabet,
            n,
            cols,
            counts,
            ranks,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Number of rows, `n`.
    pub fn n_rows(&self) -> usize {
        self.n
    }

    /// Number of columns, `L`.
    pub fn n_columns(&self) -> usize {
        self.cols.len()
    }

    fn check_column(&self, j: usize) -> Result<()> {
        if j >= self.cols.len() {
            return Err(Error::IndexOutOfRange {
                what: "PBWT column",
                index: j,
                bound: self.cols.len(),
            });
        }
        Ok(())
    }

    pub fn column(&self, j: usize) -> Result<&[u8]> {
        self.check_column(j)?;
        Ok(&self.cols[j])
    }

    pub fn columns(&self) -> &[Vec<u8>] {
        &self.cols
    }

    pub fn counts(&self, j: usize) -> Result<&ColumnCounts> {
        self.check_column(j)?;
        Ok(&self.counts[j])
    }

    pub fn rank_table(&self, j: usize) -> Result<&RankTable> {
        self.check_column(j)?;
        Ok(&self.ranks[j])
    }

    pub(crate) fn all_counts(&self) -> &[ColumnCounts] {
        &self.counts
    }

    pub(crate) fn all_rank_tables(&self) -> &[RankTable] {
        &self.ranks
    }

    /// Row `i` of the matrix, one character per column.
    pub fn row(&self, i: usize) -> Vec<u8> {
        self.cols.iter().map(|c| c[i]).collect()
    }

    /// Extends a match one character to the left: maps the interval for column
    /// `j + 1` (rows in `pi_{j+1}` order) to the interval for column `j`.
    pub fn backward_step(&self, j: usize, interval: Interval, c: u8) -> Result<Interval> {
        self.check_column(j)?;
        let a = self.alphabet.rank(c)?;
        if let Some((_, last)) = interval.bounds() {
            if last >= self.n {
                return Err(Error::IndexOutOfRange {
                    what: "interval row",
                    index: last,
                    bound: self.n,
                });
            }
        }
        Ok(step_interval(
            self.counts[j].c(a),
            &self.ranks[j],
            a,
            interval,
        ))
    }

    /// Single-row backward step through column `j`: the row in `pi_j` order of
    /// the string sitting at `row` in `pi_{j+1}` order.
    pub fn lf(&self, j: usize, row: usize) -> Result<usize> {
        self.check_column(j)?;
        if row >= self.n {
            return Err(Error::IndexOutOfRange {
                what: "PBWT row",
                index: row,
                bound: self.n,
            });
        }
        Ok(self.lf_unchecked(j, row))
    }

    #[inline]
    pub(crate) fn lf_unchecked(&self, j: usize, row: usize) -> usize {
        let a = self.symbol_rank(j, row);
        self.counts[j].c(a) + self.ranks[j].occ(a, row)
    }

    #[inline]
    pub(crate) fn symbol_rank(&self, j: usize, row: usize) -> u8 {
        self.alphabet
            .rank(self.cols[j][row])
            .expect("PBWT columns hold validated characters")
    }
}

pub fn build_pbwt(collection: &StringCollection, perms: &PermutationTable) -> Result<PbwtMatrix> {
    PbwtMatrix::build(collection, perms)
}
