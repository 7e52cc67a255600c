//! Canonical point sets and set partitions of `X`.

use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A subset of `X = {0..n}`, kept sorted and duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ImageSet {
    n: usize,
    members: Vec<usize>,
}

impl ImageSet {
    pub fn new<I: IntoIterator<Item = usize>>(n: usize, points: I) -> Result<Self> {
        let mut mask = vec![false; n];
        for p in points {
            if p >= n {
                return Err(Error::PointOutOfRange { point: p, n });
            }
            mask[p] = true;
        }
        Ok(Self::from_mask(&mask))
    }

    pub(crate) fn from_mask(mask: &[bool]) -> Self {
        ImageSet {
            n: mask.len(),
            members: mask
                .iter()
                .enumerate()
                .filter_map(|(i, &b)| b.then_some(i))
                .collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_subset_of(&self, other: &ImageSet) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    /// Restriction to a contiguous region such as `Y` or `X ∖ Y`.
    pub fn intersect(&self, region: Range<usize>) -> ImageSet {
        ImageSet {
            n: self.n,
            members: self
                .members
                .iter()
                .copied()
                .filter(|x| region.contains(x))
                .collect(),
        }
    }

    /// True iff some member lies in `region`.
    pub fn meets(&self, region: Range<usize>) -> bool {
        self.members.iter().any(|x| region.contains(x))
    }
}

impl fmt::Display for ImageSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.members.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

/// A partition of `X` into nonempty blocks.
///
/// Canonical form: each block ascending, blocks ordered by their least
/// element. Two partitions are equal iff they have the same blocks.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct KernelPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl KernelPartition {
    /// Validates and canonicalizes an arbitrary block list.
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut owner = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::NotAPartition(format!("block {b} is empty")));
            }
            for &x in block {
                if x >= n {
                    return Err(Error::PointOutOfRange { point: x, n });
                }
                if owner[x] != usize::MAX {
                    return Err(Error::NotAPartition(format!(
                        "point {x} appears in more than one block"
                    )));
                }
                owner[x] = b;
            }
        }
        if let Some(x) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(Error::NotAPartition(format!("point {x} is not covered")));
        }
        Ok(Self::from_labels(&owner))
    }

    /// Groups points by equal label; `labels[x]` is the label of point `x`.
    pub(crate) fn from_labels(labels: &[usize]) -> Self {
        let n = labels.len();
        // label -> block index, assigned in order of first occurrence
        let mut slot = vec![usize::MAX; labels.iter().copied().max().map_or(0, |m| m + 1)];
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (x, &l) in labels.iter().enumerate() {
            if slot[l] == usize::MAX {
                slot[l] = blocks.len();
                blocks.push(Vec::new());
            }
            blocks[slot[l]].push(x);
        }
        KernelPartition { n, blocks }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

impl fmt::Display for KernelPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, block) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            let inner = ImageSet {
                n: self.n,
                members: block.clone(),
            };
            write!(f, "{inner}")?;
        }
        f.write_str("}")
    }
}
