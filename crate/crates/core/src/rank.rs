//! Occurrence counting over a single column of symbol ranks.

use crate::error::{Error, Result};

/// How a [`RankTable`] stores its counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RankLayout {
    /// Full prefix-count table: O(1) queries, `sigma * (n + 1)` counters.
    #[default]
    Exact,
    /// Counts sampled every `block` positions, scanning inside the block.
    Blocked { block: usize },
}

impl RankLayout {
    pub const DEFAULT_BLOCK: usize = 64;

    pub fn blocked() -> Self {
        RankLayout::Blocked {
            block: Self::DEFAULT_BLOCK,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Repr {
    Exact {
        occ: Vec<usize>,
    },
    Blocked {
        block: usize,
        symbols: Vec<u8>,
        checkpoints: Vec<usize>,
    },
}

/// `occ(a, i)`: occurrences of symbol `a` among the first `i` entries of a column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankTable {
    sigma: usize,
    len: usize,
    repr: Repr,
}

impl RankTable {
    pub fn new(symbols: &[u8], sigma: usize, layout: RankLayout) -> Result<Self> {
        if let Some(&a) = symbols.iter().find(|&&a| a as usize >= sigma) {
            return Err(Error::RankOutOfRange {
                rank: a as usize,
                sigma,
            });
        }
        let repr = match layout {
            RankLayout::Exact => {
                let mut occ = vec![0; (symbols.len() + 1) * sigma];
                for (i, &a) in symbols.iter().enumerate() {
                    let (prev, cur) = occ.split_at_mut((i + 1) * sigma);
                    cur[..sigma].copy_from_slice(&prev[i * sigma..]);
                    cur[a as usize] += 1;
                }
                Repr::Exact { occ }
            }
            RankLayout::Blocked { block } => {
                if block == 0 {
                    return Err(Error::InvalidStride(0));
                }
                let n_blocks = symbols.len() / block + 1;
                let mut checkpoints = vec![0; n_blocks * sigma];
                let mut running = vec![0; sigma];
                for b in 0..n_blocks {
                    checkpoints[b * sigma..(b + 1) * sigma].copy_from_slice(&running);
                    for &a in symbols.iter().skip(b * block).take(block) {
                        running[a as usize] += 1;
                    }
                }
                Repr::Blocked {
                    block,
                    symbols: symbols.to_vec(),
                    checkpoints,
                }
            }
        };
        Ok(RankTable {
            sigma,
            len: symbols.len(),
            repr,
        })
    }

    pub fn exact(symbols: &[u8], sigma: usize) -> Result<Self> {
        Self::new(symbols, sigma, RankLayout::Exact)
    }

    pub fn sigma(&self) -> usize {
        self.sigma
    }

    /// Length of the underlying column.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn layout(&self) -> RankLayout {
        match self.repr {
            Repr::Exact { .. } => RankLayout::Exact,
            Repr::Blocked { block, .. } => RankLayout::Blocked { block },
        }
    }

    /// Checked `occ(a, i)`.
    pub fn rank(&self, a: u8, i: usize) -> Result<usize> {
        if a as usize >= self.sigma {
            return Err(Error::RankOutOfRange {
                rank: a as usize,
                sigma: self.sigma,
            });
        }
        if i > self.len {
            return Err(Error::IndexOutOfRange {
                what: "rank prefix length",
                index: i,
                bound: self.len,
            });
        }
        Ok(self.occ(a, i))
    }

    #[inline]
    pub(crate) fn occ(&self, a: u8, i: usize) -> usize {
        let a = a as usize;
        match &self.repr {
            Repr::Exact { occ } => occ[i * self.sigma + a],
            Repr::Blocked {
                block,
                symbols,
                checkpoints,
            } => {
                let b = i / block;
                let start = b * block;
                checkpoints[b * self.sigma + a]
                    + symbols[start..i]
                        .iter()
                        .filter(|&&s| s as usize == a)
                        .count()
            }
        }
    }

    pub(crate) fn repr(&self) -> &Repr {
        &self.repr
    }

    /// Reassembles a table from serialized parts, checking only the shape.
    pub(crate) fn from_parts(sigma: usize, len: usize, repr: Repr) -> Result<Self> {
        let ok = match &repr {
            Repr::Exact { occ } => occ.len() == (len + 1) * sigma,
            Repr::Blocked {
                block,
                symbols,
                checkpoints,
            } => {
                *block > 0
                    && symbols.len() == len
                    && checkpoints.len() == (len / block + 1) * sigma
                    && symbols.iter().all(|&a| (a as usize) < sigma)
            }
        };
        if !ok {
            return Err(Error::Format("rank table has the wrong shape".into()));
        }
        Ok(RankTable { sigma, len, repr })
    }
}
