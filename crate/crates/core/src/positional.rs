//! Positional search: which strings contain a pattern starting at a given column?
//!
//! Three strategies answer the same question:
//!
//! * [`Strategy::Binary`] binary-searches the suffixes at column `k` through a
//!   stored `pi_k`. When `pi_k` is not kept it binary-searches at the next stored
//!   column instead and finishes with backward steps.
//! * [`Strategy::Rebuild`] regenerates `pi_k` with radix-sort passes from the
//!   nearest stored column to its right, then binary-searches.
//! * [`Strategy::Backward`] starts with every row at column `k + m` and applies
//!   one PBWT backward step per pattern character. It needs no permutation.
//!
//! The result is an [`Interval`] of rows at column `k`; [`PositionalIndex::locate`]
//! turns those rows into string indexes by walking left to a stored column.

use std::borrow::Cow;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::collection::StringCollection;
use crate::error::{Error, Result};
use crate::pbwt::{Interval, PbwtMatrix};
use crate::permutations::{radix_step, PermutationTable};
use crate::rank::RankLayout;

/// Which permutation columns an index keeps after construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StoragePolicy {
    Full,
    /// Columns `0, t, 2t, ...` plus the last (identity) column.
    SampledColumns(usize),
    /// Only the identity column.
    NoPerms,
}

impl StoragePolicy {
    pub fn sampled(stride: usize) -> Result<Self> {
        if stride == 0 {
            return Err(Error::InvalidStride(stride));
        }
        Ok(StoragePolicy::SampledColumns(stride))
    }

    /// `ceil(lg n)`, at least 1.
    pub fn default_stride(n: usize) -> usize {
        let lg = if n <= 1 {
            0
        } else {
            (usize::BITS - (n - 1).leading_zeros()) as usize
        };
        lg.max(1)
    }

    /// Sampled policy with the default stride for `n` strings.
    pub fn default_for(n: usize) -> Self {
        StoragePolicy::SampledColumns(Self::default_stride(n))
    }

    pub fn retains(&self, column: usize, string_len: usize) -> bool {
        match *self {
            StoragePolicy::Full => column <= string_len,
            StoragePolicy::SampledColumns(t) => {
                column == string_len || (column < string_len && column.is_multiple_of(t))
            }
            StoragePolicy::NoPerms => column == string_len,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            StoragePolicy::Full => "full",
            StoragePolicy::SampledColumns(_) => "sampled",
            StoragePolicy::NoPerms => "none",
        }
    }
}

impl fmt::Display for StoragePolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StoragePolicy::SampledColumns(t) => write!(f, "sampled(stride={t})"),
            other => f.write_str(other.name()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    Binary,
    #[default]
    Backward,
    Rebuild,
}

impl Strategy {
    pub const ALL: [Strategy; 3] = [Strategy::Binary, Strategy::Backward, Strategy::Rebuild];
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "binary" => Ok(Strategy::Binary),
            "backward" => Ok(Strategy::Backward),
            "rebuild" => Ok(Strategy::Rebuild),
            other => Err(format!("unknown strategy {other:?}")),
        }
    }
}

/// The match interval after processing the pattern suffix that starts at `column`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceStep {
    pub column: usize,
    pub interval: Interval,
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.column, self.interval)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositionalIndex {
    collection: StringCollection,
    matrix: PbwtMatrix,
    policy: StoragePolicy,
    stored: BTreeMap<usize, Vec<usize>>,
}

impl PositionalIndex {
    pub fn build(collection: StringCollection, policy: StoragePolicy) -> Result<Self> {
        Self::build_with_layout(collection, policy, RankLayout::Exact)
    }

    pub fn build_with_layout(
        collection: StringCollection,
        policy: StoragePolicy,
        layout: RankLayout,
    ) -> Result<Self> {
        if let StoragePolicy::SampledColumns(0) = policy {
            return Err(Error::InvalidStride(0));
        }
        let perms = PermutationTable::build(&collection);
        let matrix = PbwtMatrix::build_with_layout(&collection, &perms, layout)?;
        let len = collection.string_len();
        let stored = perms
            .into_columns()
            .into_iter()
            .enumerate()
            .filter(|&(j, _)| policy.retains(j, len))
            .collect();
        Ok(PositionalIndex {
            collection,
            matrix,
            policy,
            stored,
        })
    }

    pub(crate) fn from_parts(
        collection: StringCollection,
        matrix: PbwtMatrix,
        policy: StoragePolicy,
        stored: BTreeMap<usize, Vec<usize>>,
    ) -> Result<Self> {
        let n = collection.n_strings();
        let len = collection.string_len();
        let expected: Vec<usize> = (0..=len).filter(|&j| policy.retains(j, len)).collect();
        if !stored.keys().copied().eq(expected.iter().copied()) {
            return Err(Error::Format(format!(
                "stored permutation columns do not match policy {policy}"
            )));
        }
        for perm in stored.values() {
            let mut seen = vec![false; n];
            for &x in perm {
                if x >= n || std::mem::replace(&mut seen[x], true) {
                    return Err(Error::Format("stored column is not a permutation".into()));
                }
            }
            if perm.len() != n {
                return Err(Error::Format("stored column is not a permutation".into()));
            }
        }
        if matrix.n_rows() != n || matrix.n_columns() != len {
            return Err(Error::Format(
                "PBWT dimensions do not match the collection".into(),
            ));
        }
        Ok(PositionalIndex {
            collection,
            matrix,
            policy,
            stored,
        })
    }

    pub fn collection(&self) -> &StringCollection {
        &self.collection
    }

    pub fn matrix(&self) -> &PbwtMatrix {
        &self.matrix
    }

    pub fn policy(&self) -> StoragePolicy {
        self.policy
    }

    pub fn n_strings(&self) -> usize {
        self.collection.n_strings()
    }

    pub fn string_len(&self) -> usize {
        self.collection.string_len()
    }

    pub fn stored_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.stored.keys().copied()
    }

    pub(crate) fn stored_map(&self) -> &BTreeMap<usize, Vec<usize>> {
        &self.stored
    }

    pub fn stored_permutation(&self, column: usize) -> Result<&[usize]> {
        self.stored
            .get(&column)
            .map(Vec::as_slice)
            .ok_or(Error::PermutationNotStored { column })
    }

    fn check_pattern(&self, pattern: &[u8], k: usize) -> Result<()> {
        let alphabet = self.collection.alphabet();
        if let Some(&c) = pattern.iter().find(|&&c| !alphabet.contains(c)) {
            return Err(Error::unknown(c));
        }
        let len = self.string_len();
        if k > len || pattern.len() > len - k {
            return Err(Error::PatternOverrun {
                position: k,
                pattern_len: pattern.len(),
                len,
            });
        }
        Ok(())
    }

    pub fn search(&self, pattern: &[u8], k: usize, strategy: Strategy) -> Result<Interval> {
        match strategy {
            Strategy::Binary => self.search_binary_from_sample(pattern, k),
            Strategy::Backward => self.search_backward(pattern, k),
            Strategy::Rebuild => self.search_rebuild(pattern, k),
        }
    }

    /// Two binary searches over the suffixes at `k`, through the stored `pi_k`.
    pub fn search_binary(&self, pattern: &[u8], k: usize) -> Result<Interval> {
        self.check_pattern(pattern, k)?;
        let perm = self.stored_permutation(k)?;
        Ok(self.binary_search(perm, pattern, k))
    }

    /// Binary search at the nearest stored column `j >= k` for the part of the
    /// pattern that lies at or right of `j`, then backward steps for the rest.
    /// Identical to [`search_binary`](Self::search_binary) when `pi_k` is stored,
    /// and legal under every policy.
    pub fn search_binary_from_sample(&self, pattern: &[u8], k: usize) -> Result<Interval> {
        self.check_pattern(pattern, k)?;
        let end = k + pattern.len();
        let (j, mut interval) = match self.stored.range(k..=end).next() {
            Some((&j, perm)) => (j, self.binary_search(perm, &pattern[j - k..], j)),
            None => (end, Interval::full(self.n_strings())),
        };
        for column in (k..j).rev() {
            interval = self
                .matrix
                .backward_step(column, interval, pattern[column - k])?;
        }
        Ok(interval)
    }

    fn binary_search(&self, perm: &[usize], pattern: &[u8], k: usize) -> Interval {
        let strings = self.collection.strings();
        let window = |x: usize| &strings[x][k..k + pattern.len()];
        let start = perm.partition_point(|&x| window(x) < pattern);
        let end = start + perm[start..].partition_point(|&x| window(x) <= pattern);
        Interval::from_half_open(start, end)
    }

    pub fn search_backward(&self, pattern: &[u8], k: usize) -> Result<Interval> {
        self.search_backward_traced(pattern, k).map(|(iv, _)| iv)
    }

    /// Backward search that also reports the interval at every column from
    /// `k + m` down to `k`.
    pub fn search_backward_traced(
        &self,
        pattern: &[u8],
        k: usize,
    ) -> Result<(Interval, Vec<TraceStep>)> {
        self.check_pattern(pattern, k)?;
        let mut interval = Interval::full(self.n_strings());
        let mut trace = Vec::with_capacity(pattern.len() + 1);
        trace.push(TraceStep {
            column: k + pattern.len(),
            interval,
        });
        for (offset, &c) in pattern.iter().enumerate().rev() {
            let column = k + offset;
            interval = self.matrix.backward_step(column, interval, c)?;
            trace.push(TraceStep { column, interval });
        }
        Ok((interval, trace))
    }

    /// Rebuilds `pi_k` from the nearest stored column at or right of `k`, then
    /// binary-searches with it.
    pub fn search_rebuild(&self, pattern: &[u8], k: usize) -> Result<Interval> {
        self.check_pattern(pattern, k)?;
        let perm = self.permutation_at(k)?;
        Ok(self.binary_search(&perm, pattern, k))
    }

    /// `pi_k`, borrowed if stored and otherwise regenerated column by column
    /// from the nearest stored column to the right.
    pub fn permutation_at(&self, k: usize) -> Result<Cow<'_, [usize]>> {
        let (&h, stored) = self
            .stored
            .range(k..)
            .next()
            .ok_or(Error::IndexOutOfRange {
                what: "column",
                index: k,
                bound: self.string_len(),
            })?;
        if h == k {
            return Ok(Cow::Borrowed(stored));
        }
        let mut perm = stored.clone();
        for j in (k..h).rev() {
            let ranks = (0..self.n_strings()).map(|row| self.matrix.symbol_rank(j, row));
            perm = radix_step(&perm, ranks, &self.matrix.all_counts()[j]);
        }
        Ok(Cow::Owned(perm))
    }

    /// String indexes for the rows of `interval` at column `k`, in row order.
    ///
    /// Each row walks left through single-row backward steps until the nearest
    /// stored column `h <= k`, where `pi_h` names the string. Without such a
    /// column `pi_k` is regenerated instead.
    pub fn locate(&self, interval: Interval, k: usize) -> Result<Vec<usize>> {
        if k > self.string_len() {
            return Err(Error::IndexOutOfRange {
                what: "column",
                index: k,
                bound: self.string_len(),
            });
        }
        if let Some((_, last)) = interval.bounds() {
            if last >= self.n_strings() {
                return Err(Error::IndexOutOfRange {
                    what: "interval row",
                    index: last,
                    bound: self.n_strings(),
                });
            }
        }
        match self.stored.range(..=k).next_back() {
            Some((&h, perm)) => Ok(interval
                .rows()
                .map(|mut row| {
                    for j in (h..k).rev() {
                        row = self.matrix.lf_unchecked(j, row);
                    }
                    perm[row]
                })
                .collect()),
            None => {
                let perm = self.permutation_at(k)?;
                Ok(interval.rows().map(|row| perm[row]).collect())
            }
        }
    }

    /// Search followed by locate.
    pub fn query(&self, pattern: &[u8], k: usize, strategy: Strategy) -> Result<Vec<usize>> {
        let interval = self.search(pattern, k, strategy)?;
        self.locate(interval, k)
    }
}

pub fn build_index(collection: StringCollection, policy: StoragePolicy) -> Result<PositionalIndex> {
    PositionalIndex::build(collection, policy)
}
