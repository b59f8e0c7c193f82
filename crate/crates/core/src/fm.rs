//! Substring search over one string through its BWT.
//!
//! Sorting the cyclic shifts of `S$` and reading the character before each shift
//! gives the BWT. It is also what every column of the PBWT of those shifts
//! collapses to, so a single column, one `C` array and one rank table serve all
//! positions. Counting is the PBWT backward step on that column; locating walks
//! LF until it meets a row whose text position is a multiple of the sample stride.

use crate::alphabet::Alphabet;
use crate::collection::StringCollection;
use crate::error::{Error, Result};
use crate::pbwt::{step_interval, Interval, PbwtMatrix};
use crate::permutations::{ColumnCounts, PermutationTable};
use crate::positional::TraceStep;
use crate::rank::{RankLayout, RankTable};

/// A text over an alphabet, to be terminated by the alphabet's sentinel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SentinelText {
    text: Vec<u8>,
    alphabet: Alphabet,
}

impl SentinelText {
    pub fn new(text: &[u8], alphabet: &Alphabet) -> Result<Self> {
        if text.is_empty() {
            return Err(Error::EmptyInput);
        }
        if let Some(&c) = text.iter().find(|&&c| !alphabet.contains(c)) {
            return Err(Error::unknown(c));
        }
        Ok(SentinelText {
            text: text.to_vec(),
            alphabet: alphabet.clone(),
        })
    }

    pub fn text(&self) -> &[u8] {
        &self.text
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Length of the text without the sentinel.
    pub fn len(&self) -> usize {
        self.text.len()
    }

    pub fn is_empty(&self) -> bool {
        self.text.is_empty()
    }

    /// `S$`.
    pub fn terminated(&self) -> Vec<u8> {
        let mut t = Vec::with_capacity(self.text.len() + 1);
        t.extend_from_slice(&self.text);
        t.push(self.alphabet.sentinel());
        t
    }

    /// Ranks of `S$` with the sentinel at 0 and every symbol shifted up by one.
    fn terminated_ranks(&self) -> Vec<u8> {
        let mut r: Vec<u8> = self
            .text
            .iter()
            .map(|&c| fm_rank(&self.alphabet, c).expect("validated text"))
            .collect();
        r.push(0);
        r
    }
}

/// Rank in the FM alphabet: sentinel 0, symbol `a` at `a + 1`.
#[inline]
fn fm_rank(alphabet: &Alphabet, c: u8) -> Result<u8> {
    if c == alphabet.sentinel() {
        Ok(0)
    } else {
        alphabet.rank(c).map(|a| a + 1)
    }
}

/// Start positions of the cyclic shifts of `ranks`, in sorted order.
fn sorted_rotations(ranks: &[u8]) -> Vec<usize> {
    let n = ranks.len();
    let rotation = |start: usize| ranks[start..].iter().chain(&ranks[..start]);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| rotation(x).cmp(rotation(y)));
    order
}

fn bwt_from_rotations(terminated: &[u8], order: &[usize]) -> Vec<u8> {
    let n = terminated.len();
    order.iter().map(|&p| terminated[(p + n - 1) % n]).collect()
}

/// The BWT of `S$`: the character cyclically preceding each sorted shift.
pub fn bwt_build(text: &SentinelText) -> Vec<u8> {
    let order = sorted_rotations(&text.terminated_ranks());
    bwt_from_rotations(&text.terminated(), &order)
}

/// Builds the PBWT of the cyclic shifts of `S$` with the collection machinery and
/// checks that its first `n + 1` columns all equal [`bwt_build`].
///
/// Each shift is unrolled to two periods so that the right context of every one of
/// those columns is a complete rotation; the radix sort then orders rows exactly as
/// the sorted cyclic shifts.
pub fn verify_column_collapse(text: &SentinelText) -> bool {
    let terminated = text.terminated();
    let width = terminated.len();
    let shifts = (0..width).map(|x| {
        (0..2 * width)
            .map(|j| terminated[(x + j) % width])
            .collect::<Vec<u8>>()
    });
    let Ok(collection) =
        StringCollection::from_strings(shifts, &text.alphabet().admitting_sentinel())
    else {
        return false;
    };
    let perms = PermutationTable::build(&collection);
    let Ok(matrix) = PbwtMatrix::build(&collection, &perms) else {
        return false;
    };
    let bwt = bwt_build(text);
    matrix.columns()[..width].iter().all(|col| *col == bwt)
}

/// BWT, global counts, rank table and regularly spaced suffix-array samples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FmIndex {
    text: SentinelText,
    bwt: Vec<u8>,
    c_array: Vec<usize>,
    ranks: RankTable,
    /// `(row, text position)` for every sampled row, sorted by row.
    samples: Vec<(usize, usize)>,
    stride: usize,
}

impl FmIndex {
    pub fn build(text: SentinelText, stride: usize) -> Result<Self> {
        Self::build_with_layout(text, stride, RankLayout::Exact)
    }

    pub fn build_with_layout(
        text: SentinelText,
        stride: usize,
        layout: RankLayout,
    ) -> Result<Self> {
        if stride == 0 {
            return Err(Error::InvalidStride(stride));
        }
        let terminated = text.terminated();
        let term_ranks = text.terminated_ranks();
        let order = sorted_rotations(&term_ranks);
        let bwt = bwt_from_rotations(&terminated, &order);
        let sigma = text.alphabet().sigma() + 1;
        let bwt_ranks: Vec<u8> = order
            .iter()
            .map(|&p| term_ranks[(p + term_ranks.len() - 1) % term_ranks.len()])
            .collect();
        let c_array = c_array_of(&bwt_ranks, sigma);
        let ranks = RankTable::new(&bwt_ranks, sigma, layout)?;
        let samples = order
            .iter()
            .enumerate()
            .filter(|&(_, &p)| p % stride == 0)
            .map(|(row, &p)| (row, p))
            .collect();
        Ok(FmIndex {
            text,
            bwt,
            c_array,
            ranks,
            samples,
            stride,
        })
    }

    pub(crate) fn from_parts(
        text: SentinelText,
        bwt: Vec<u8>,
        ranks: RankTable,
        samples: Vec<(usize, usize)>,
        stride: usize,
    ) -> Result<Self> {
        let rows = text.len() + 1;
        if stride == 0 {
            return Err(Error::Format("sample stride is zero".into()));
        }
        if bwt.len() != rows || ranks.len() != rows {
            return Err(Error::Format("BWT length does not match the text".into()));
        }
        let bwt_ranks = bwt
            .iter()
            .map(|&c| fm_rank(text.alphabet(), c))
            .collect::<Result<Vec<u8>>>()
            .map_err(|_| Error::Format("BWT holds a character outside the alphabet".into()))?;
        if bwt_ranks.iter().filter(|&&a| a == 0).count() != 1 {
            return Err(Error::Format("BWT must hold exactly one sentinel".into()));
        }
        let mut positions: Vec<usize> = samples.iter().map(|&(_, p)| p).collect();
        positions.sort_unstable();
        let expected: Vec<usize> = (0..rows).step_by(stride).collect();
        if positions != expected
            || samples.windows(2).any(|w| w[0].0 >= w[1].0)
            || samples.iter().any(|&(r, _)| r >= rows)
        {
            return Err(Error::Format(
                "suffix-array samples do not match the stride".into(),
            ));
        }
        let c_array = c_array_of(&bwt_ranks, text.alphabet().sigma() + 1);
        Ok(FmIndex {
            text,
            bwt,
            c_array,
            ranks,
            samples,
            stride,
        })
    }

    pub fn text(&self) -> &SentinelText {
        &self.text
    }

    pub fn bwt(&self) -> &[u8] {
        &self.bwt
    }

    /// Counts of characters smaller than each FM rank (sentinel first).
    pub fn c_array(&self) -> &[usize] {
        &self.c_array
    }

    pub fn rank_table(&self) -> &RankTable {
        &self.ranks
    }

    pub fn stride(&self) -> usize {
        self.stride
    }

    /// Number of BWT rows, `n + 1`.
    pub fn n_rows(&self) -> usize {
        self.bwt.len()
    }

    pub fn samples(&self) -> &[(usize, usize)] {
        &self.samples
    }

    /// Sampled text positions, ascending.
    pub fn sampled_positions(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.samples.iter().map(|&(_, p)| p).collect();
        p.sort_unstable();
        p
    }

    /// The text position recorded for `row`, if it is sampled.
    pub fn sample_at(&self, row: usize) -> Option<usize> {
        self.samples
            .binary_search_by_key(&row, |&(r, _)| r)
            .ok()
            .map(|i| self.samples[i].1)
    }

    /// Row of the shift starting one text position earlier than the shift at `row`.
    pub fn lf_step(&self, row: usize) -> Result<usize> {
        if row >= self.n_rows() {
            return Err(Error::IndexOutOfRange {
                what: "BWT row",
                index: row,
                bound: self.n_rows(),
            });
        }
        Ok(self.lf(row))
    }

    #[inline]
    fn lf(&self, row: usize) -> usize {
        let a = fm_rank(self.text.alphabet(), self.bwt[row]).expect("validated BWT");
        self.c_array[a as usize] + self.ranks.occ(a, row)
    }

    /// Rows of the sorted shifts prefixed by `pattern`; the empty pattern matches all `n + 1`.
    pub fn count(&self, pattern: &[u8]) -> Result<Interval> {
        self.count_traced(pattern).map(|(iv, _)| iv)
    }

    /// Backward search reporting the interval after each character; `column` in the
    /// trace is the offset into the pattern where the matched suffix starts.
    pub fn count_traced(&self, pattern: &[u8]) -> Result<(Interval, Vec<TraceStep>)> {
        let alphabet = self.text.alphabet();
        let mut interval = Interval::full(self.n_rows());
        let mut trace = Vec::with_capacity(pattern.len() + 1);
        trace.push(TraceStep {
            column: pattern.len(),
            interval,
        });
        for (offset, &c) in pattern.iter().enumerate().rev() {
            // the sentinel is never part of a pattern
            let a = alphabet.rank(c)? + 1;
            interval = step_interval(self.c_array[a as usize], &self.ranks, a, interval);
            trace.push(TraceStep {
                column: offset,
                interval,
            });
        }
        Ok((interval, trace))
    }

    /// Text positions of the rows in `interval`, in row order.
    pub fn locate(&self, interval: Interval) -> Vec<usize> {
        self.locate_with_steps(interval)
            .into_iter()
            .map(|(p, _)| p)
            .collect()
    }

    /// Like [`locate`](Self::locate), also returning how many LF steps each row took.
    pub fn locate_with_steps(&self, interval: Interval) -> Vec<(usize, usize)> {
        interval
            .rows()
            .filter(|&row| row < self.n_rows())
            .map(|mut row| {
                let mut steps = 0;
                loop {
                    if let Some(p) = self.sample_at(row) {
                        break (p + steps, steps);
                    }
                    row = self.lf(row);
                    steps += 1;
                }
            })
            .collect()
    }
}

fn c_array_of(ranks: &[u8], sigma: usize) -> Vec<usize> {
    ColumnCounts::from_ranks(ranks.iter().copied(), sigma)
        .c_array()
        .to_vec()
}

pub fn fm_build(text: SentinelText, stride: usize) -> Result<FmIndex> {
    FmIndex::build(text, stride)
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &[u8] = b"GATTAGATACAT";

    fn text(s: &[u8]) -> SentinelText {
        SentinelText::new(s, &Alphabet::dna()).unwrap()
    }

    fn brute_force_rotations(t: &[u8]) -> Vec<Vec<u8>> {
        let mut rots: Vec<Vec<u8>> = (0..t.len())
            .map(|i| t[i..].iter().chain(&t[..i]).copied().collect())
            .collect();
        rots.sort();
        rots
    }

    #[test]
    fn example_bwt() {
        assert_eq!(bwt_build(&text(EXAMPLE)), b"TTTCGGAA$AATA");
        assert_eq!(bwt_build(&text(b"A")), b"A$");
    }

    #[test]
    fn periodic_bwt_matches_brute_force() {
        let rots = brute_force_rotations(b"GATAGATA$");
        let expected: Vec<u8> = rots.iter().map(|r| *r.last().unwrap()).collect();
        let bwt = bwt_build(&text(b"GATAGATA"));
        assert_eq!(bwt, expected);
        assert_eq!(bwt.len(), 9);
        assert_eq!(bwt.iter().filter(|&&c| c == b'$').count(), 1);
    }

    #[test]
    fn sentinel_text_validation() {
        assert!(matches!(
            SentinelText::new(b"", &Alphabet::dna()),
            Err(Error::EmptyInput)
        ));
        assert!(SentinelText::new(b"GA$T", &Alphabet::dna()).is_err());
        assert_eq!(text(b"GAT").terminated(), b"GAT$");
    }

    #[test]
    fn column_collapse_on_examples() {
        assert!(verify_column_collapse(&text(EXAMPLE)));
        assert!(verify_column_collapse(&text(b"A")));
        assert!(verify_column_collapse(&text(b"GATAGATA")));
        assert!(verify_column_collapse(&text(b"AAAAAAA")));
    }

    #[test]
    fn example_sampling() {
        let idx = FmIndex::build(text(EXAMPLE), 5).unwrap();
        assert_eq!(idx.sampled_positions(), [0, 5, 10]);
        assert_eq!(idx.samples().len(), 3);
        let all = FmIndex::build(text(EXAMPLE), 1).unwrap();
        assert_eq!(all.samples().len(), 13);
        for (_, steps) in all.locate_with_steps(Interval::full(13)) {
            assert_eq!(steps, 0);
        }
        assert!(FmIndex::build(text(EXAMPLE), 0).is_err());
    }

    #[test]
    fn tiny_lf() {
        let idx = FmIndex::build(text(b"A"), 1).unwrap();
        assert_eq!(idx.lf_step(0).unwrap(), 1);
        assert_eq!(idx.lf_step(1).unwrap(), 0);
        assert!(idx.lf_step(2).is_err());
    }

    #[test]
    fn lf_cycle_spells_text_backwards() {
        let idx = FmIndex::build(text(EXAMPLE), 5).unwrap();
        let rots = brute_force_rotations(b"GATTAGATACAT$");
        // the row whose shift is the whole terminated text
        let mut row = rots.iter().position(|r| r == b"GATTAGATACAT$").unwrap();
        let mut seen = [false; 13];
        let mut spelled = Vec::new();
        for _ in 0..13 {
            assert!(!seen[row]);
            seen[row] = true;
            spelled.push(idx.bwt()[row]);
            row = idx.lf_step(row).unwrap();
        }
        assert!(seen.iter().all(|&s| s));
        spelled.reverse();
        assert_eq!(spelled, b"GATTAGATACAT$");
    }

    #[test]
    fn example_count_and_locate() {
        let idx = FmIndex::build(text(EXAMPLE), 5).unwrap();
        let ta = idx.count(b"TA").unwrap();
        assert_eq!(ta.width(), 2);
        let mut p = idx.locate(ta);
        p.sort_unstable();
        assert_eq!(p, [3, 7]);
        let ata = idx.count(b"ATA").unwrap();
        assert_eq!(ata.width(), 1);
        assert_eq!(idx.locate(ata), [6]);
        assert_eq!(idx.count(b"").unwrap(), Interval::new(0, 12));
        assert_eq!(idx.count(b"GGG").unwrap(), Interval::Empty);
        assert!(idx.locate(Interval::Empty).is_empty());
        assert!(idx.count(b"T$").is_err());
        assert!(idx.count(b"TN").is_err());
        for (_, steps) in idx.locate_with_steps(Interval::full(13)) {
            assert!(steps < 5);
        }
    }
}
