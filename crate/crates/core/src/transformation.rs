//! Total self-maps of `X = {0..n}` written on the right.
//!
//! A transformation is stored as its image list: `images[x]` is `x·α`.
//! Composition follows the right-action convention, so in `a.compose(&b)`
//! the map `a` is applied first.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::sets::{ImageSet, KernelPartition};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Transformation {
    images: Vec<usize>,
}

impl Transformation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        if let Some(&point) = images.iter().find(|&&p| p >= n) {
            return Err(Error::PointOutOfRange { point, n });
        }
        Ok(Transformation { images })
    }

    /// Builds a transformation whose images are already known to lie in `[0, n)`.
    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(!images.is_empty() && images.iter().all(|&p| p < images.len()));
        Transformation { images }
    }

    pub fn identity(n: usize) -> Self {
        assert!(n > 0, "X must be nonempty");
        Transformation {
            images: (0..n).collect(),
        }
    }

    pub fn constant(n: usize, value: usize) -> Result<Self> {
        Self::new(vec![value; n])
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `x·α`
    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    fn check_same_n(&self, other: &Transformation) -> Result<()> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: other.n(),
            });
        }
        Ok(())
    }

    /// The product `self · other`: apply `self`, then `other`.
    pub fn compose(&self, other: &Transformation) -> Result<Transformation> {
        self.check_same_n(other)?;
        Ok(self.then(other))
    }

    /// Infallible composition for callers that have already matched dimensions.
    #[inline]
    pub(crate) fn then(&self, other: &Transformation) -> Transformation {
        Transformation {
            images: self.images.iter().map(|&y| other.images[y]).collect(),
        }
    }

    /// The image of `region` under the map, in canonical (sorted, deduplicated) form.
    pub fn image_of<I>(&self, region: I) -> Result<ImageSet>
    where
        I: IntoIterator<Item = usize>,
    {
        let n = self.n();
        let mut seen = vec![false; n];
        for x in region {
            if x >= n {
                return Err(Error::PointOutOfRange { point: x, n });
            }
            seen[self.images[x]] = true;
        }
        Ok(ImageSet::from_mask(&seen))
    }

    /// The range `Xα`.
    pub fn image(&self) -> ImageSet {
        let mut seen = vec![false; self.n()];
        for &y in &self.images {
            seen[y] = true;
        }
        ImageSet::from_mask(&seen)
    }

    /// The partition `π_α` of `X` into nonempty preimage blocks.
    pub fn kernel(&self) -> KernelPartition {
        KernelPartition::from_labels(&self.images)
    }

    /// True iff the two maps coincide on every point of `region`.
    pub fn agree_on<I>(&self, other: &Transformation, region: I) -> Result<bool>
    where
        I: IntoIterator<Item = usize>,
    {
        self.check_same_n(other)?;
        let n = self.n();
        let mut agree = true;
        for x in region {
            if x >= n {
                return Err(Error::PointOutOfRange { point: x, n });
            }
            agree &= self.images[x] == other.images[x];
        }
        Ok(agree)
    }

    pub fn is_idempotent_map(&self) -> bool {
        self.images.iter().all(|&y| self.images[y] == y)
    }
}

impl fmt::Display for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, y) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{y}")?;
        }
        Ok(())
    }
}

impl FromStr for Transformation {
    type Err = Error;

    /// Parses the comma-separated image list literal, e.g. `"0,0,2"`.
    fn from_str(s: &str) -> Result<Self> {
        let parse_err = |reason: String| Error::Parse {
            literal: s.to_string(),
            reason,
        };
        if s.trim().is_empty() {
            return Err(parse_err("empty literal".into()));
        }
        let images = s
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<usize>()
                    .map_err(|e| parse_err(format!("bad entry {tok:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Transformation::new(images)
    }
}

impl Serialize for Transformation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Transformation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
