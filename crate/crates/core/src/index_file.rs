//! On-disk index format.
//!
//! ```text
//! magic      8 bytes  "PBWTIDX1"
//! mode       u8       0 = positional, 1 = substring
//! sentinel   u8
//! sigma      u64, then sigma symbol bytes
//! rank       u8 layout (0 exact, 1 blocked), u64 block size (0 when exact)
//!
//! positional:
//!   n u64, len u64, policy u8 (0 full, 1 sampled, 2 none), stride u64
//!   strings        n * len bytes, row-major
//!   permutations   u64 count, then per column: u64 column, n * u64
//!   PBWT columns   len * n bytes, column-major
//!   frequencies    len * sigma u64
//!   rank tables    len tables
//!
//! substring:
//!   text_len u64, sa_stride u64
//!   text           text_len bytes
//!   BWT            text_len + 1 bytes
//!   C array        (sigma + 1) * u64
//!   rank table     one table over sigma + 1 ranks
//!   samples        u64 count, then (row u64, position u64) pairs
//!
//! rank table, exact:    (len + 1) * sigma u64
//! rank table, blocked:  len symbol-rank bytes, (len / block + 1) * sigma u64
//! ```
//!
//! Integers are little-endian.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use crate::alphabet::Alphabet;
use crate::collection::StringCollection;
use crate::error::{Error, Result};
use crate::fm::{FmIndex, SentinelText};
use crate::pbwt::PbwtMatrix;
use crate::permutations::ColumnCounts;
use crate::positional::{PositionalIndex, StoragePolicy};
use crate::rank::{RankLayout, RankTable, Repr};

pub const MAGIC: &[u8; 8] = b"PBWTIDX1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Positional,
    Substring,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Positional => "positional",
            Mode::Substring => "substring",
        }
    }
}

/// Either kind of index, as stored in one file.
#[derive(Debug, Clone, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum Index {
    Positional(PositionalIndex),
    Substring(FmIndex),
}

impl Index {
    pub fn mode(&self) -> Mode {
        match self {
            Index::Positional(_) => Mode::Positional,
            Index::Substring(_) => Mode::Substring,
        }
    }

    pub fn into_positional(self) -> Result<PositionalIndex> {
        match self {
            Index::Positional(p) => Ok(p),
            Index::Substring(_) => Err(Error::ModeMismatch {
                expected: Mode::Positional.name(),
                found: Mode::Substring.name(),
            }),
        }
    }

    pub fn into_substring(self) -> Result<FmIndex> {
        match self {
            Index::Substring(f) => Ok(f),
            Index::Positional(_) => Err(Error::ModeMismatch {
                expected: Mode::Substring.name(),
                found: Mode::Positional.name(),
            }),
        }
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut w = Writer::default();
        w.bytes(MAGIC);
        match self {
            Index::Positional(idx) => {
                w.u8(0);
                write_alphabet(&mut w, idx.collection().alphabet());
                let layout = idx
                    .matrix()
                    .all_rank_tables()
                    .first()
                    .map_or(RankLayout::Exact, RankTable::layout);
                write_layout(&mut w, layout);
                write_positional(&mut w, idx);
            }
            Index::Substring(idx) => {
                w.u8(1);
                write_alphabet(&mut w, idx.text().alphabet());
                write_layout(&mut w, idx.rank_table().layout());
                write_substring(&mut w, idx);
            }
        }
        w.buf
    }

    pub fn from_bytes(data: &[u8]) -> Result<Self> {
        let mut r = Reader { data, pos: 0 };
        if r.bytes(MAGIC.len())? != MAGIC {
            return Err(Error::Format("bad magic bytes".into()));
        }
        let mode = r.u8()?;
        let alphabet = read_alphabet(&mut r)?;
        let layout = read_layout(&mut r)?;
        let index = match mode {
            0 => Index::Positional(read_positional(&mut r, alphabet, layout)?),
            1 => Index::Substring(read_substring(&mut r, alphabet, layout)?),
            other => return Err(Error::Format(format!("unknown mode tag {other}"))),
        };
        if r.pos != data.len() {
            return Err(Error::Format(format!(
                "{} trailing bytes",
                data.len() - r.pos
            )));
        }
        Ok(index)
    }

    /// Writes the index and returns the number of bytes written.
    pub fn save(&self, path: impl AsRef<Path>) -> Result<usize> {
        let bytes = self.to_bytes();
        fs::write(path, &bytes)?;
        Ok(bytes.len())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_bytes(&fs::read(path)?)
    }
}

fn write_alphabet(w: &mut Writer, a: &Alphabet) {
    w.u8(a.sentinel());
    w.usize(a.sigma());
    w.bytes(a.symbols());
}

fn read_alphabet(r: &mut Reader) -> Result<Alphabet> {
    let sentinel = r.u8()?;
    let sigma = r.usize()?;
    let symbols = r.bytes(sigma)?;
    Alphabet::with_sentinel(symbols, sentinel).map_err(|e| Error::Format(e.to_string()))
}

fn write_layout(w: &mut Writer, layout: RankLayout) {
    match layout {
        RankLayout::Exact => {
            w.u8(0);
            w.usize(0);
        }
        RankLayout::Blocked { block } => {
            w.u8(1);
            w.usize(block);
        }
    }
}

fn read_layout(r: &mut Reader) -> Result<RankLayout> {
    let tag = r.u8()?;
    let block = r.usize()?;
    match tag {
        0 => Ok(RankLayout::Exact),
        1 if block > 0 => Ok(RankLayout::Blocked { block }),
        _ => Err(Error::Format("bad rank layout".into())),
    }
}

fn write_rank_table(w: &mut Writer, t: &RankTable) {
    match t.repr() {
        Repr::Exact { occ } => w.usizes(occ),
        Repr::Blocked {
            symbols,
            checkpoints,
            ..
        } => {
            w.bytes(symbols);
            w.usizes(checkpoints);
        }
    }
}

fn read_rank_table(
    r: &mut Reader,
    layout: RankLayout,
    sigma: usize,
    len: usize,
) -> Result<RankTable> {
    let repr = match layout {
        RankLayout::Exact => Repr::Exact {
            occ: r.usizes(checked_mul(len + 1, sigma)?)?,
        },
        RankLayout::Blocked { block } => Repr::Blocked {
            block,
            symbols: r.bytes(len)?.to_vec(),
            checkpoints: r.usizes(checked_mul(len / block + 1, sigma)?)?,
        },
    };
    RankTable::from_parts(sigma, len, repr)
}

fn write_positional(w: &mut Writer, idx: &PositionalIndex) {
    let c = idx.collection();
    w.usize(c.n_strings());
    w.usize(c.string_len());
    match idx.policy() {
        StoragePolicy::Full => {
            w.u8(0);
            w.usize(0);
        }
        StoragePolicy::SampledColumns(t) => {
            w.u8(1);
            w.usize(t);
        }
        StoragePolicy::NoPerms => {
            w.u8(2);
            w.usize(0);
        }
    }
    for s in c.strings() {
        w.bytes(s);
    }
    let stored = idx.stored_map();
    w.usize(stored.len());
    for (&j, perm) in stored {
        w.usize(j);
        w.usizes(perm);
    }
    let m = idx.matrix();
    for col in m.columns() {
        w.bytes(col);
    }
    for counts in m.all_counts() {
        w.usizes(counts.freq());
    }
    for t in m.all_rank_tables() {
        write_rank_table(w, t);
    }
}

fn read_positional(
    r: &mut Reader,
    alphabet: Alphabet,
    layout: RankLayout,
) -> Result<PositionalIndex> {
    let n = r.usize()?;
    let len = r.usize()?;
    let policy = match (r.u8()?, r.usize()?) {
        (0, _) => StoragePolicy::Full,
        (1, t) if t > 0 => StoragePolicy::SampledColumns(t),
        (2, _) => StoragePolicy::NoPerms,
        _ => return Err(Error::Format("bad storage policy".into())),
    };
    let mut strings = Vec::with_capacity(n.min(r.remaining()));
    for _ in 0..n {
        strings.push(r.bytes(len)?);
    }
    let collection = StringCollection::from_strings(strings, &alphabet)
        .map_err(|e| Error::Format(e.to_string()))?;
    if collection.n_strings() != n || collection.string_len() != len {
        return Err(Error::Format(
            "collection dimensions disagree with header".into(),
        ));
    }
    let n_stored = r.usize()?;
    let mut stored = BTreeMap::new();
    for _ in 0..n_stored {
        let j = r.usize()?;
        let perm = r.usizes(n)?;
        if stored.insert(j, perm).is_some() {
            return Err(Error::Format(format!("column {j} stored twice")));
        }
    }
    let cols: Vec<Vec<u8>> = (0..len)
        .map(|_| r.bytes(n).map(<[u8]>::to_vec))
        .collect::<Result<_>>()?;
    let sigma = alphabet.sigma();
    let mut counts = Vec::with_capacity(len);
    for col in &cols {
        let stored_counts = ColumnCounts::from_freq(r.usizes(sigma)?);
        let encoded = alphabet
            .encode(col)
            .map_err(|e| Error::Format(e.to_string()))?;
        if stored_counts != ColumnCounts::from_ranks(encoded, sigma) {
            return Err(Error::Format(
                "column counts disagree with PBWT column".into(),
            ));
        }
        counts.push(stored_counts);
    }
    let ranks = (0..len)
        .map(|_| read_rank_table(r, layout, sigma, n))
        .collect::<Result<Vec<_>>>()?;
    let matrix = PbwtMatrix::from_parts(alphabet, n, cols, counts, ranks);
    PositionalIndex::from_parts(collection, matrix, policy, stored)
}

fn write_substring(w: &mut Writer, idx: &FmIndex) {
    w.usize(idx.text().len());
    w.usize(idx.stride());
    w.bytes(idx.text().text());
    w.bytes(idx.bwt());
    w.usizes(idx.c_array());
    write_rank_table(w, idx.rank_table());
    w.usize(idx.samples().len());
    for &(row, pos) in idx.samples() {
        w.usize(row);
        w.usize(pos);
    }
}

fn read_substring(r: &mut Reader, alphabet: Alphabet, layout: RankLayout) -> Result<FmIndex> {
    let text_len = r.usize()?;
    let stride = r.usize()?;
    let text = SentinelText::new(r.bytes(text_len)?, &alphabet)
        .map_err(|e| Error::Format(e.to_string()))?;
    let bwt = r
        .bytes(text_len.checked_add(1).ok_or_else(overflow)?)?
        .to_vec();
    let c_array = r.usizes(alphabet.sigma() + 1)?;
    let ranks = read_rank_table(r, layout, alphabet.sigma() + 1, text_len + 1)?;
    let n_samples = r.usize()?;
    let mut samples = Vec::with_capacity(n_samples.min(r.remaining()));
    for _ in 0..n_samples {
        samples.push((r.usize()?, r.usize()?));
    }
    let idx = FmIndex::from_parts(text, bwt, ranks, samples, stride)?;
    if idx.c_array() != c_array.as_slice() {
        return Err(Error::Format("C array disagrees with BWT".into()));
    }
    Ok(idx)
}

fn overflow() -> Error {
    Error::Format("size overflow".into())
}

fn checked_mul(a: usize, b: usize) -> Result<usize> {
    a.checked_mul(b).ok_or_else(overflow)
}

#[derive(Default)]
struct Writer {
    buf: Vec<u8>,
}

impl Writer {
    fn u8(&mut self, v: u8) {
        self.buf.push(v);
    }

    fn usize(&mut self, v: usize) {
        self.buf.extend_from_slice(&(v as u64).to_le_bytes());
    }

    fn usizes(&mut self, vs: &[usize]) {
        for &v in vs {
            self.usize(v);
        }
    }

    fn bytes(&mut self, b: &[u8]) {
        self.buf.extend_from_slice(b);
    }
}

struct Reader<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn remaining(&self) -> usize {
        self.data.len() - self.pos
    }

    fn bytes(&mut self, n: usize) -> Result<&'a [u8]> {
        if n > self.remaining() {
            return Err(Error::Format(format!(
                "truncated: wanted {n} bytes at offset {}, {} left",
                self.pos,
                self.remaining()
            )));
        }
        let out = &self.data[self.pos..self.pos + n];
        self.pos += n;
        Ok(out)
    }

    fn u8(&mut self) -> Result<u8> {
        Ok(self.bytes(1)?[0])
    }

    fn usize(&mut self) -> Result<usize> {
        let raw: [u8; 8] = self.bytes(8)?.try_into().expect("eight bytes");
        usize::try_from(u64::from_le_bytes(raw)).map_err(|_| overflow())
    }

    fn usizes(&mut self, n: usize) -> Result<Vec<usize>> {
        if checked_mul(n, 8)? > self.remaining() {
            return Err(Error::Format(format!("truncated: wanted {n} integers")));
        }
        (0..n).map(|_| self.usize()).collect()
    }
}
