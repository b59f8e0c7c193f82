//! Positional search over equal-length string collections with the positional
//! Burrows-Wheeler transform (PBWT), and substring search over a single string
//! with an FM-index whose BWT is the one column shared by the PBWT of its cyclic
//! shifts.
//!
//! ```
//! use pbwtidx::{Alphabet, PositionalIndex, StoragePolicy, StringCollection, Strategy};
//!
//! let strings = StringCollection::parse(b"GATTACAT\nTAGAGATA\nGATAGATA\n", &Alphabet::dna())?;
//! let index = PositionalIndex::build(strings, StoragePolicy::Full)?;
//! let mut hits = index.query(b"AGA", 3, Strategy::Backward)?;
//! hits.sort();
//! assert_eq!(hits, [1, 2]);
//! # Ok::<(), pbwtidx::Error>(())
//! ```

pub mod alphabet;
pub mod collection;
pub mod error;
pub mod fm;
pub mod index_file;
pub mod oracle;
pub mod pbwt;
pub mod permutations;
pub mod positional;
pub mod rank;

#[cfg(test)]
mod testdata;

pub use alphabet::Alphabet;
pub use collection::StringCollection;
pub use error::{Error, Result};
pub use fm::{bwt_build, fm_build, verify_column_collapse, FmIndex, SentinelText};
pub use index_file::{Index, Mode};
pub use pbwt::{build_pbwt, Interval, PbwtMatrix};
pub use permutations::{build_permutations, column_counts, ColumnCounts, PermutationTable};
pub use positional::{build_index, PositionalIndex, StoragePolicy, Strategy, TraceStep};
pub use rank::{RankLayout, RankTable};
