//! Subsets of the simple-root index set.
//!
//! Stored as a bitmask over 0-based indices; labels shown to users are
//! 1-based.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Largest supported rank.
pub const MAX_RANK: usize = 64;

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset(u64);

impl Subset {
    pub const fn empty() -> Self {
        Subset(0)
    }

    pub fn full(rank: usize) -> Self {
        debug_assert!(rank <= MAX_RANK);
        if rank == MAX_RANK {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << rank) - 1)
        }
    }

    pub const fn from_bits(bits: u64) -> Self {
        Subset(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(index: usize) -> Self {
        Subset(1u64 << index)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        indices.into_iter().fold(Subset::empty(), |s, i| s.with(i))
    }

    /// Builds a subset from 1-based labels, rejecting labels outside `1..=rank`.
    pub fn from_labels(labels: &[usize], rank: usize) -> Result<Self> {
        let mut s = Subset::empty();
        for &l in labels {
            if l == 0 || l > rank {
                return Err(Error::InvalidGenerator(l));
            }
            s = s.with(l - 1);
        }
        Ok(s)
    }

    pub fn contains(self, index: usize) -> bool {
        index < MAX_RANK && self.0 & (1u64 << index) != 0
    }

    pub fn with(self, index: usize) -> Self {
        Subset(self.0 | (1u64 << index))
    }

    pub fn without(self, index: usize) -> Self {
        Subset(self.0 & !(1u64 << index))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Subset) -> Self {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Self {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Subset) -> Self {
        Subset(self.0 & !other.0)
    }

    /// 0-based member indices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..MAX_RANK).filter(move |i| bits & (1u64 << i) != 0)
    }

    /// 1-based labels in increasing order.
    pub fn labels(self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }

    /// Every subset of `self`, in increasing bitmask order.
    pub fn subsets(self) -> impl Iterator<Item = Subset> {
        let full = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                Some((cur.wrapping_sub(full)) & full)
            };
            Some(Subset(cur))
        })
    }

    /// Canonical ordering used for listings: larger subsets first, then
    /// lexicographic on sorted labels.
    pub fn canonical_cmp(self, other: Subset) -> Ordering {
        other
            .len()
            .cmp(&self.len())
            .then_with(|| self.labels().cmp(&other.labels()))
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, l) in self.labels().into_iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "}}")
    }
}
