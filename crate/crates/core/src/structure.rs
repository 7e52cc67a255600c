//! Regular elements, quasi-inverses and idempotents of `T(X,Y,Z)`.
//!
//! An element `α` is regular iff `Xα ∩ Y ⊆ Zα` (and then in fact
//! `Xα ∩ Y = Zα`). It is idempotent iff `Xα ⊆ Z ∪ (X ∖ Y)` and `α` fixes
//! every point of its range.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::semigroup::{is_member, require_member};
use crate::sets::KernelPartition;
use crate::transformation::Transformation;
use crate::universe::{CaseTag, Universe};

/// An element together with a quasi-inverse `β` satisfying `αβα = α`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularityWitness {
    pub element: Transformation,
    pub quasi_inverse: Transformation,
}

impl RegularityWitness {
    /// Checks both witness invariants against `u`.
    pub fn is_valid(&self, u: &Universe) -> bool {
        let a = &self.element;
        let b = &self.quasi_inverse;
        a.n() == u.n()
            && b.n() == u.n()
            && is_member(u, b).unwrap_or(false)
            && a.then(b).then(a) == *a
    }
}

/// `Xα ∩ Y ⊆ Zα`, without the membership check.
pub(crate) fn regular_unchecked(u: &Universe, a: &Transformation) -> bool {
    let z_image = a.image_of(u.z()).expect("Z lies in X");
    a.image().intersect(u.y()).is_subset_of(&z_image)
}

pub fn is_regular_element(u: &Universe, a: &Transformation) -> Result<bool> {
    require_member(u, a)?;
    Ok(regular_unchecked(u, a))
}

/// Builds a quasi-inverse `β ∈ T(X,Y,Z)` with `αβα = α`.
///
/// Writing `Xα ∩ Y = {ȳ₁ < … < ȳ_s}`, each `ȳᵢ` is sent to the least
/// `zᵢ ∈ Z` with `zᵢα = ȳᵢ`; each `x ∈ Xα ∖ Y` to its least preimage; every
/// other point to `z₁`.
pub fn quasi_inverse(u: &Universe, a: &Transformation) -> Result<Transformation> {
    require_member(u, a)?;
    if !regular_unchecked(u, a) {
        return Err(Error::NotRegular(a.to_string()));
    }
    let n = u.n();

    // least preimage in Z, and least preimage overall
    let mut z_pre = vec![None; n];
    let mut any_pre = vec![None; n];
    for x in u.x() {
        let y = a.apply(x);
        if u.in_z(x) && z_pre[y].is_none() {
            z_pre[y] = Some(x);
        }
        if any_pre[y].is_none() {
            any_pre[y] = Some(x);
        }
    }

    let range = a.image();
    let hits_y = range.intersect(u.y());
    let first = hits_y.members()[0];
    let z1 = z_pre[first].expect("regular: Xα ∩ Y ⊆ Zα");

    let mut images = vec![z1; n];
    for &y in hits_y.members() {
        images[y] = z_pre[y].expect("regular: Xα ∩ Y ⊆ Zα");
    }
    for &x in range.intersect(u.x_minus_y()).members() {
        images[x] = any_pre[x].expect("x is in the range");
    }
    let beta = Transformation::from_images_unchecked(images);

    assert!(is_member(u, &beta)?, "quasi-inverse left the semigroup");
    assert_eq!(a.then(&beta).then(a), *a, "αβα ≠ α");
    Ok(beta)
}

pub fn regularity_witness(u: &Universe, a: &Transformation) -> Result<RegularityWitness> {
    Ok(RegularityWitness {
        element: a.clone(),
        quasi_inverse: quasi_inverse(u, a)?,
    })
}

/// True iff every element is regular: `|Y| = 1`, or `Y = X` with `|Z| = 1`, or `Z = Y = X`.
pub fn is_regular_semigroup(u: &Universe) -> bool {
    u.m() == 1 || (u.n() == u.m() && u.k() == 1) || (u.n() == u.m() && u.m() == u.k())
}

/// A member that is not regular, for each non-regular universe.
///
/// * `Z ⊊ Y ⊊ X`: `Y ↦ 0`, `X ∖ Y ↦ k` (the least point of `Y ∖ Z`).
/// * `Z = Y ⊊ X`, `|Y| ≥ 2`: `Y ↦ 0`, `X ∖ Y ↦ 1`.
/// * `Z ⊊ Y = X`, `|Z| ≥ 2`: `Z ↦ 0`, `X ∖ Z ↦ 1`.
pub fn nonregular_witness(u: &Universe) -> Result<Transformation> {
    if is_regular_semigroup(u) {
        return Err(Error::RegularSemigroup);
    }
    let images: Vec<usize> = match u.case_tag() {
        CaseTag::Proper => u.x().map(|x| if u.in_y(x) { 0 } else { u.k() }).collect(),
        CaseTag::InvariantSet => u.x().map(|x| if u.in_y(x) { 0 } else { 1 }).collect(),
        CaseTag::RestrictedRange => u.x().map(|x| if u.in_z(x) { 0 } else { 1 }).collect(),
        CaseTag::Full => unreachable!("T(X) is regular"),
    };
    let w = Transformation::from_images_unchecked(images);
    debug_assert!(is_member(u, &w).unwrap() && !regular_unchecked(u, &w));
    Ok(w)
}

pub fn is_idempotent(u: &Universe, a: &Transformation) -> Result<bool> {
    require_member(u, a)?;
    let range = a.image();
    let avoids_y_minus_z = !range.meets(u.y_minus_z());
    let fixes_range = range.members().iter().all(|&t| a.apply(t) == t);
    let verdict = avoids_y_minus_z && fixes_range;
    debug_assert_eq!(verdict, a.then(a) == *a);
    Ok(verdict)
}

/// The idempotent with kernel `p` whose block representatives are least in
/// `block ∩ Z` (blocks meeting `Y`) or least in the block (otherwise).
///
/// Returns `None` when some block meets `Y` but misses `Z`; no idempotent of
/// `T(X,Y,Z)` has such a kernel.
pub fn idempotent_with_kernel(u: &Universe, p: &KernelPartition) -> Result<Option<Transformation>> {
    if p.n() != u.n() {
        return Err(Error::DimensionMismatch {
            expected: u.n(),
            found: p.n(),
        });
    }
    let mut images = vec![0; u.n()];
    for block in p.blocks() {
        let rep = if block.iter().any(|&x| u.in_y(x)) {
            match block.iter().copied().find(|&x| u.in_z(x)) {
                Some(z) => z,
                None => return Ok(None),
            }
        } else {
            block[0]
        };
        for &x in block {
            images[x] = rep;
        }
    }
    let e = Transformation::from_images_unchecked(images);
    assert!(is_idempotent(u, &e)?, "constructed map is not idempotent");
    assert_eq!(e.kernel(), *p, "constructed map has the wrong kernel");
    Ok(Some(e))
}
