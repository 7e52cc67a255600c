//! Canonical universes `Z ⊆ Y ⊆ X` laid out as nested initial segments.
//!
//! A universe `(n, m, k)` stands for `X = {0..n}`, `Y = {0..m}` and
//! `Z = {0..k}`. Any triple of finite sets `Z ⊆ Y ⊆ X` is isomorphic to
//! exactly one canonical universe by relabelling points, so nothing is lost
//! by fixing the layout.

use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which of the four structural regimes a universe falls into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CaseTag {
    /// `Z = Y = X`: the full transformation semigroup.
    Full,
    /// `Z ⊊ Y = X`.
    RestrictedRange,
    /// `Z = Y ⊊ X`.
    InvariantSet,
    /// `Z ⊊ Y ⊊ X`.
    Proper,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CaseTag::Full => "FULL",
            CaseTag::RestrictedRange => "RESTRICTED_RANGE",
            CaseTag::InvariantSet => "INVARIANT_SET",
            CaseTag::Proper => "PROPER",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Universe {
    n: usize,
    m: usize,
    k: usize,
}

impl Universe {
    pub fn new(n: usize, m: usize, k: usize) -> Result<Self> {
        if k == 0 || k > m || m > n {
            return Err(Error::InvalidUniverse { n, m, k });
        }
        Ok(Universe { n, m, k })
    }

    /// `|X|`
    pub fn n(&self) -> usize {
        self.n
    }

    /// `|Y|`
    pub fn m(&self) -> usize {
        self.m
    }

    /// `|Z|`
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn x(&self) -> Range<usize> {
        0..self.n
    }

    pub fn y(&self) -> Range<usize> {
        0..self.m
    }

    pub fn z(&self) -> Range<usize> {
        0..self.k
    }

    /// `Y ∖ Z`
    pub fn y_minus_z(&self) -> Range<usize> {
        self.k..self.m
    }

    /// `X ∖ Y`
    pub fn x_minus_y(&self) -> Range<usize> {
        self.m..self.n
    }

    pub fn in_y(&self, x: usize) -> bool {
        x < self.m
    }

    pub fn in_z(&self, x: usize) -> bool {
        x < self.k
    }

    pub fn case_tag(&self) -> CaseTag {
        match (self.k == self.m, self.m == self.n) {
            (true, true) => CaseTag::Full,
            (false, true) => CaseTag::RestrictedRange,
            (true, false) => CaseTag::InvariantSet,
            (false, false) => CaseTag::Proper,
        }
    }

    /// All valid universes with `n <= max_n`, ordered lexicographically by `(n, m, k)`.
    pub fn all_up_to(max_n: usize) -> Vec<Universe> {
        let mut out = Vec::new();
        for n in 1..=max_n {
            for m in 1..=n {
                for k in 1..=m {
                    out.push(Universe { n, m, k });
                }
            }
        }
        out
    }
}

impl fmt::Display for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.n, self.m, self.k)
    }
}
