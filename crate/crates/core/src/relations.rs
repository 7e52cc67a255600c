//! The auxiliary relation Λ, the starred Green's relations `L*` and `R*`,
//! their class partitions, and abundance verdicts.
//!
//! Two independent routes decide `L*` and `R*`:
//!
//! * **characterization**: closed-form tests on images and kernels, valid for
//!   `Z ⊊ Y ⊊ X` and for `T(X)`;
//! * **oracle**: the cancellation conditions read directly off the monoid
//!   `S¹`. `(a, b) ∈ L*` iff for all `x, y ∈ S¹`, `ax = ay ⟺ bx = by`, so `a`
//!   and `b` are related exactly when the maps `x ↦ ax` and `x ↦ bx` induce
//!   the same partition of `S¹`. `R*` is the mirror image with `x ↦ xa`.
//!
//! For `Z = Y ⊊ X` and `Z ⊊ Y = X` the public predicates always use the
//! oracle.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::semigroup::{is_member, materialize, require_member, DEFAULT_MATERIALIZATION_BOUND};
use crate::sets::{ImageSet, KernelPartition};
use crate::transformation::Transformation;
use crate::universe::{CaseTag, Universe};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RelationKind {
    Lambda,
    #[serde(rename = "lstar")]
    LStar,
    #[serde(rename = "rstar")]
    RStar,
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RelationKind::Lambda => "lambda",
            RelationKind::LStar => "lstar",
            RelationKind::RStar => "rstar",
        })
    }
}

/// How a starred relation is decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Closed-form tests where available, the oracle elsewhere.
    Characterization,
    /// Always the cancellation oracle over `S¹`.
    Oracle,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Characterization => "characterization",
            Method::Oracle => "oracle",
        })
    }
}

/// The partition of `T(X,Y,Z)` under one relation.
///
/// Classes are listed by their least member; members inside a class are in
/// enumeration order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationClasses {
    pub universe: Universe,
    pub kind: RelationKind,
    pub method: Method,
    pub classes: Vec<Vec<Transformation>>,
}

impl RelationClasses {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Index of the class holding `a`, if any.
    pub fn class_of(&self, a: &Transformation) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(a))
    }
}

/// Left/right abundance, with an idempotent-free class for each failing side
/// when the verdict was computed empirically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbundanceVerdict {
    pub left: bool,
    pub right: bool,
    pub left_witness: Option<Vec<Transformation>>,
    pub right_witness: Option<Vec<Transformation>>,
}

impl AbundanceVerdict {
    pub fn is_abundant(&self) -> bool {
        self.left && self.right
    }
}

impl fmt::Display for AbundanceVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "left: {}, right: {}", self.left, self.right)
    }
}

fn require_proper(u: &Universe) -> Result<()> {
    if u.case_tag() != CaseTag::Proper {
        return Err(Error::WrongCase {
            n: u.n(),
            m: u.m(),
            k: u.k(),
        });
    }
    Ok(())
}

/// `(X ∖ Y)α ∩ (Y ∖ Z) ≠ ∅`
fn lambda_flag(u: &Universe, a: &Transformation) -> bool {
    u.x_minus_y().any(|x| u.y_minus_z().contains(&a.apply(x)))
}

pub fn lambda_related(u: &Universe, a: &Transformation, b: &Transformation) -> Result<bool> {
    require_member(u, a)?;
    require_member(u, b)?;
    require_proper(u)?;
    Ok(lambda_flag(u, a) == lambda_flag(u, b))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum CharKey {
    Image(ImageSet),
    LambdaAndOutside(bool, ImageSet),
    Kernel(KernelPartition),
}

/// The closed-form class key, or `None` where only the oracle applies.
fn characterization_key(u: &Universe, kind: RelationKind, a: &Transformation) -> Option<CharKey> {
    match (kind, u.case_tag()) {
        (RelationKind::LStar, CaseTag::Proper) if u.k() == 1 => Some(CharKey::LambdaAndOutside(
            lambda_flag(u, a),
            a.image().intersect(u.x_minus_y()),
        )),
        (RelationKind::LStar, CaseTag::Proper | CaseTag::Full) => Some(CharKey::Image(a.image())),
        (RelationKind::RStar, CaseTag::Proper | CaseTag::Full) => Some(CharKey::Kernel(a.kernel())),
        _ => None,
    }
}

/// `L*` via its characterization, falling back to the oracle off the characterized cases.
///
/// For `Z ⊊ Y ⊊ X` with `|Z| = 1`: Λ-related and `Xα ∩ (X ∖ Y) = Xβ ∩ (X ∖ Y)`.
/// For `Z ⊊ Y ⊊ X` with `|Z| ≥ 2`, and in `T(X)`: `Xα = Xβ`.
pub fn lstar_related(u: &Universe, a: &Transformation, b: &Transformation) -> Result<bool> {
    require_member(u, a)?;
    require_member(u, b)?;
    match (
        characterization_key(u, RelationKind::LStar, a),
        characterization_key(u, RelationKind::LStar, b),
    ) {
        (Some(ka), Some(kb)) => Ok(ka == kb),
        _ => lstar_oracle(u, a, b),
    }
}

/// `R*` via kernel equality (`Z ⊊ Y ⊊ X` and `T(X)`), the oracle elsewhere.
pub fn rstar_related(u: &Universe, a: &Transformation, b: &Transformation) -> Result<bool> {
    require_member(u, a)?;
    require_member(u, b)?;
    match (
        characterization_key(u, RelationKind::RStar, a),
        characterization_key(u, RelationKind::RStar, b),
    ) {
        (Some(ka), Some(kb)) => Ok(ka == kb),
        _ => rstar_oracle(u, a, b),
    }
}

/// The monoid `S¹` of a universe, used to evaluate cancellation conditions.
///
/// The identity map belongs to `T(X,Y,Z)` iff `Z = Y`; otherwise it is
/// appended and plays the adjoined identity.
#[derive(Debug, Clone)]
pub struct Oracle {
    universe: Universe,
    monoid: Vec<Transformation>,
}

impl Oracle {
    pub fn new(u: &Universe) -> Result<Self> {
        Self::with_bound(u, DEFAULT_MATERIALIZATION_BOUND)
    }

    pub fn with_bound(u: &Universe, bound: usize) -> Result<Self> {
        Ok(Self::from_members(u, materialize(u, bound)?))
    }

    /// Builds `S¹` from an already materialized semigroup.
    pub fn from_members(u: &Universe, mut monoid: Vec<Transformation>) -> Self {
        let id = Transformation::identity(u.n());
        if !is_member(u, &id).expect("identity has the right dimension") {
            monoid.push(id);
        }
        Oracle {
            universe: *u,
            monoid,
        }
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    /// `|S¹|`
    pub fn monoid_len(&self) -> usize {
        self.monoid.len()
    }

    fn labels<F>(&self, product: F) -> Vec<u32>
    where
        F: Fn(&Transformation) -> Transformation,
    {
        let mut seen: HashMap<Transformation, u32> = HashMap::with_capacity(self.monoid.len());
        self.monoid
            .iter()
            .map(|x| {
                let next = seen.len() as u32;
                *seen.entry(product(x)).or_insert(next)
            })
            .collect()
    }

    /// Partition of `S¹` by `x ↦ a·x`, labelled in first-occurrence order.
    pub fn left_signature(&self, a: &Transformation) -> Vec<u32> {
        self.labels(|x| a.then(x))
    }

    /// Partition of `S¹` by `x ↦ x·a`, labelled in first-occurrence order.
    pub fn right_signature(&self, a: &Transformation) -> Vec<u32> {
        self.labels(|x| x.then(a))
    }

    pub fn signature(&self, kind: RelationKind, a: &Transformation) -> Vec<u32> {
        match kind {
            RelationKind::RStar => self.right_signature(a),
            _ => self.left_signature(a),
        }
    }
}

pub fn lstar_oracle(u: &Universe, a: &Transformation, b: &Transformation) -> Result<bool> {
    require_member(u, a)?;
    require_member(u, b)?;
    let oracle = Oracle::new(u)?;
    Ok(oracle.left_signature(a) == oracle.left_signature(b))
}

pub fn rstar_oracle(u: &Universe, a: &Transformation, b: &Transformation) -> Result<bool> {
    require_member(u, a)?;
    require_member(u, b)?;
    let oracle = Oracle::new(u)?;
    Ok(oracle.right_signature(a) == oracle.right_signature(b))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum ClassKey {
    Char(CharKey),
    Lambda(bool),
    Signature(Vec<u32>),
}

fn group_by_key(members: Vec<Transformation>, keys: Vec<ClassKey>) -> Vec<Vec<Transformation>> {
    let mut slot: HashMap<ClassKey, usize> = HashMap::new();
    let mut classes: Vec<Vec<Transformation>> = Vec::new();
    for (a, key) in members.into_iter().zip(keys) {
        let idx = *slot.entry(key).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[idx].push(a);
    }
    classes
}

/// Partition of `T(X,Y,Z)` under `kind`, holding at most `bound` elements in memory.
pub fn relation_classes_bounded(
    u: &Universe,
    kind: RelationKind,
    method: Method,
    bound: usize,
) -> Result<RelationClasses> {
    if kind == RelationKind::Lambda {
        require_proper(u)?;
    }
    let members = materialize(u, bound)?;
    let keys: Vec<ClassKey> = match kind {
        RelationKind::Lambda => members
            .iter()
            .map(|a| ClassKey::Lambda(lambda_flag(u, a)))
            .collect(),
        _ => {
            let characterized = method == Method::Characterization
                && characterization_key(u, kind, &members[0]).is_some();
            if characterized {
                members
                    .par_iter()
                    .map(|a| ClassKey::Char(characterization_key(u, kind, a).expect("same case")))
                    .collect()
            } else {
                let oracle = Oracle::from_members(u, members.clone());
                members
                    .par_iter()
                    .map(|a| ClassKey::Signature(oracle.signature(kind, a)))
                    .collect()
            }
        }
    };
    Ok(RelationClasses {
        universe: *u,
        kind,
        method,
        classes: group_by_key(members, keys),
    })
}

pub fn relation_classes(
    u: &Universe,
    kind: RelationKind,
    method: Method,
) -> Result<RelationClasses> {
    relation_classes_bounded(u, kind, method, DEFAULT_MATERIALIZATION_BOUND)
}

/// The known verdict for each regime.
pub fn abundance_table(u: &Universe) -> AbundanceVerdict {
    let (left, right) = match u.case_tag() {
        CaseTag::Full => (true, true),
        CaseTag::RestrictedRange => (true, u.k() == 1),
        CaseTag::InvariantSet => (true, true),
        CaseTag::Proper => (false, u.k() == 1),
    };
    AbundanceVerdict {
        left,
        right,
        left_witness: None,
        right_witness: None,
    }
}

fn first_idempotent_free(classes: Vec<Vec<Transformation>>) -> Option<Vec<Transformation>> {
    classes
        .into_iter()
        .find(|class| !class.iter().any(Transformation::is_idempotent_map))
}

/// Abundance by direct inspection of every `L*`- and `R*`-class.
pub fn abundance_empirical(u: &Universe, bound: usize) -> Result<AbundanceVerdict> {
    let l = relation_classes_bounded(u, RelationKind::LStar, Method::Characterization, bound)?;
    let r = relation_classes_bounded(u, RelationKind::RStar, Method::Characterization, bound)?;
    let left_witness = first_idempotent_free(l.classes);
    let right_witness = first_idempotent_free(r.classes);
    Ok(AbundanceVerdict {
        left: left_witness.is_none(),
        right: right_witness.is_none(),
        left_witness,
        right_witness,
    })
}

/// The verdict table, or (with `empirical`) a class-by-class computation.
pub fn abundance(u: &Universe, empirical: bool) -> Result<AbundanceVerdict> {
    if empirical {
        abundance_empirical(u, DEFAULT_MATERIALIZATION_BOUND)
    } else {
        Ok(abundance_table(u))
    }
}

/// A member whose `L*`-class has no idempotent: `Y ↦ 0`, `X ∖ Y ↦ k`.
///
/// It sends a point of `X ∖ Y` into `Y ∖ Z`. Requires `Z ⊊ Y ⊊ X`.
pub fn idempotent_free_lstar_element(u: &Universe) -> Result<Transformation> {
    require_proper(u)?;
    let images = u.x().map(|x| if u.in_y(x) { 0 } else { u.k() }).collect();
    Ok(Transformation::from_images_unchecked(images))
}

/// A member whose `R*`-class has no idempotent: `Z ↦ 0`, `Y ∖ Z ↦ 1`, `X ∖ Y ↦ 0`.
///
/// Requires `Z ⊊ Y ⊊ X` and `|Z| ≥ 2`.
pub fn idempotent_free_rstar_element(u: &Universe) -> Result<Transformation> {
    require_proper(u)?;
    if u.k() < 2 {
        return Err(Error::WrongCase {
            n: u.n(),
            m: u.m(),
            k: u.k(),
        });
    }
    let images = u
        .x()
        .map(|x| if u.y_minus_z().contains(&x) { 1 } else { 0 })
        .collect();
    Ok(Transformation::from_images_unchecked(images))
}
