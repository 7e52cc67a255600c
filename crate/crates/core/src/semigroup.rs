//! Membership and direct enumeration of `T(X,Y,Z) = {α ∈ T(X) : Yα ⊆ Z}`.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::counting;
use crate::error::{Error, Result};
use crate::structure;
use crate::transformation::Transformation;
use crate::universe::Universe;

/// Largest semigroup any operation will hold in memory at once.
pub const DEFAULT_MATERIALIZATION_BOUND: usize = 100_000;

pub(crate) fn check_dim(u: &Universe, a: &Transformation) -> Result<()> {
    if a.n() != u.n() {
        return Err(Error::DimensionMismatch {
            expected: u.n(),
            found: a.n(),
        });
    }
    Ok(())
}

/// Membership test: `Yα ⊆ Z`.
pub fn is_member(u: &Universe, a: &Transformation) -> Result<bool> {
    check_dim(u, a)?;
    Ok(u.y().all(|y| u.in_z(a.apply(y))))
}

pub(crate) fn require_member(u: &Universe, a: &Transformation) -> Result<()> {
    if is_member(u, a)? {
        Ok(())
    } else {
        Err(Error::NotMember(a.to_string()))
    }
}

/// Restricts an element stream to a subset of the semigroup.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Filter {
    #[default]
    All,
    Regular,
    Idempotent,
}

/// Lazy stream over members of `T(X,Y,Z)` in lexicographic order of image lists.
///
/// The `Y` positions run over `Z` (a base-`k` counter) and the `X ∖ Y`
/// positions over `X` (base `n`); the last position varies fastest.
#[derive(Debug, Clone)]
pub struct ElementStream {
    universe: Universe,
    current: Option<Vec<usize>>,
    filter: Filter,
    stratum: Option<usize>,
}

impl ElementStream {
    fn new(universe: Universe, filter: Filter, stratum: Option<usize>) -> Self {
        ElementStream {
            universe,
            current: Some(vec![0; universe.n()]),
            filter,
            stratum,
        }
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn filter(&self) -> Filter {
        self.filter
    }

    pub fn stratum(&self) -> Option<usize> {
        self.stratum
    }

    /// Narrows the stream to one subset of the semigroup.
    pub fn with_filter(mut self, filter: Filter) -> Self {
        self.filter = filter;
        self
    }

    fn advance(&mut self) {
        let u = self.universe;
        let Some(digits) = self.current.as_mut() else {
            return;
        };
        for pos in (0..digits.len()).rev() {
            let base = if u.in_y(pos) { u.k() } else { u.n() };
            if digits[pos] + 1 < base {
                digits[pos] += 1;
                return;
            }
            digits[pos] = 0;
        }
        self.current = None;
    }

    fn accepts(&self, a: &Transformation) -> bool {
        if let Some(r) = self.stratum {
            if y_image_size(&self.universe, a) != r {
                return false;
            }
        }
        match self.filter {
            Filter::All => true,
            Filter::Regular => structure::regular_unchecked(&self.universe, a),
            Filter::Idempotent => a.is_idempotent_map(),
        }
    }
}

impl Iterator for ElementStream {
    type Item = Transformation;

    fn next(&mut self) -> Option<Transformation> {
        loop {
            let digits = self.current.clone()?;
            self.advance();
            let a = Transformation::from_images_unchecked(digits);
            if self.accepts(&a) {
                return Some(a);
            }
        }
    }
}

fn y_image_size(u: &Universe, a: &Transformation) -> usize {
    let mut seen = vec![false; u.k()];
    let mut count = 0;
    for y in u.y() {
        let img = a.apply(y);
        if !seen[img] {
            seen[img] = true;
            count += 1;
        }
    }
    count
}

/// Every member of `T(X,Y,Z)`, each exactly once.
pub fn enumerate(u: &Universe) -> ElementStream {
    ElementStream::new(*u, Filter::All, None)
}

/// Members with `|Yα| = r`.
pub fn enumerate_stratum(u: &Universe, r: usize) -> Result<ElementStream> {
    if r == 0 || r > u.k() {
        return Err(Error::StratumOutOfRange { r, k: u.k() });
    }
    Ok(ElementStream::new(*u, Filter::All, Some(r)))
}

pub fn enumerate_filtered(u: &Universe, filter: Filter) -> ElementStream {
    ElementStream::new(*u, filter, None)
}

/// A uniformly random member, deterministic in `seed`.
pub fn random_member(u: &Universe, seed: u64) -> Transformation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let images = u
        .x()
        .map(|x| {
            if u.in_y(x) {
                rng.gen_range(0..u.k())
            } else {
                rng.gen_range(0..u.n())
            }
        })
        .collect();
    Transformation::from_images_unchecked(images)
}

/// Collects the whole semigroup, refusing when `|T(X,Y,Z)|` exceeds `bound`.
pub fn materialize(u: &Universe, bound: usize) -> Result<Vec<Transformation>> {
    let size: BigUint = counting::order(u);
    match size.to_usize() {
        Some(s) if s <= bound => Ok(enumerate(u).collect()),
        _ => Err(Error::TooLarge {
            size: size.to_string(),
            bound,
        }),
    }
}
