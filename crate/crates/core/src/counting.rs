//! Exact cardinalities: binomials, Stirling numbers of the second kind, and
//! the orders of `T(X,Y,Z)`, its strata, its regular elements and its
//! idempotents.
//!
//! Everything here is arbitrary precision. No floating point is involved.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::universe::Universe;

/// The cardinality type.
pub type Count = BigUint;

fn pow(base: usize, exp: usize) -> BigUint {
    num_traits::pow(BigUint::from(base), exp)
}

/// `C(n, r)`, zero outside `0 <= r <= n`.
pub fn binomial(n: usize, r: i64) -> Count {
    if r < 0 || r as u64 > n as u64 {
        return BigUint::zero();
    }
    let r = (r as usize).min(n - r as usize);
    let mut acc = BigUint::one();
    for i in 0..r {
        // acc = C(n, i) here, and C(n, i+1) = C(n, i) * (n - i) / (i + 1) exactly
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// `S(n, 0..=n)` by the recurrence `S(n,r) = r·S(n−1,r) + S(n−1,r−1)`.
pub fn stirling2_row(n: usize) -> Vec<Count> {
    let mut row = vec![BigUint::one()];
    for i in 1..=n {
        let mut next = vec![BigUint::zero(); i + 1];
        for r in 1..=i {
            let mut v = row[r - 1].clone();
            if r < i {
                v += &row[r] * r;
            }
            next[r] = v;
        }
        row = next;
    }
    row
}

/// Stirling number of the second kind `S(n, r)`.
pub fn stirling2(n: usize, r: usize) -> Count {
    if r > n {
        return BigUint::zero();
    }
    stirling2_row(n).swap_remove(r)
}

/// `S(n, r) = (1/r!) Σ_{i=0}^{r} (−1)^i C(r,i) (r−i)^n`, evaluated directly.
///
/// Kept as an independent route for cross-checking [`stirling2`].
pub fn stirling2_alternating_sum(n: usize, r: usize) -> Count {
    if r > n {
        return BigUint::zero();
    }
    let mut sum = BigInt::zero();
    for i in 0..=r {
        let term = BigInt::from_biguint(Sign::Plus, binomial(r, i as i64) * pow(r - i, n));
        if i % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let (sign, magnitude) = sum.into_parts();
    debug_assert!(sign != Sign::Minus);
    let fact = factorial(r);
    debug_assert!((&magnitude % &fact).is_zero());
    magnitude / fact
}

/// `|T(X,Y,Z)| = k^m · n^(n−m)`.
pub fn order(u: &Universe) -> Count {
    pow(u.k(), u.m()) * pow(u.n(), u.n() - u.m())
}

/// `Σ_{r=1}^{k} C(k,r)·r!·S(m,r)·n^(n−m)`, the stratified form of [`order`].
pub fn order_sum_form(u: &Universe) -> Count {
    let s = stirling2_row(u.m());
    let tail = pow(u.n(), u.n() - u.m());
    (1..=u.k())
        .map(|r| binomial(u.k(), r as i64) * factorial(r) * &s[r] * &tail)
        .sum()
}

/// `|{α : |Yα| = r}| = C(k,r)·r!·S(m,r)·n^(n−m)` for `1 <= r <= k`.
pub fn order_stratum(u: &Universe, r: usize) -> Result<Count> {
    if r == 0 || r > u.k() {
        return Err(Error::StratumOutOfRange { r, k: u.k() });
    }
    Ok(binomial(u.k(), r as i64) * factorial(r) * stirling2(u.m(), r) * pow(u.n(), u.n() - u.m()))
}

/// `|Reg| = Σ_{r=1}^{k} C(k,r)·r!·S(k,r)·r^(m−k)·(n−m+r)^(n−m)`.
pub fn regular_count(u: &Universe) -> Count {
    let (n, m, k) = (u.n(), u.m(), u.k());
    let s = stirling2_row(k);
    (1..=k)
        .map(|r| {
            binomial(k, r as i64) * factorial(r) * &s[r] * pow(r, m - k) * pow(n - m + r, n - m)
        })
        .sum()
}

/// `|E| = Σ_{r=1}^{n−m+k} Σ_{i=max(1,m−n+r)}^{min(k,r)} C(k,i)·C(n−m,r−i)·i^(m−i)·r^(n−m−r+i)`.
///
/// `r` is the rank `|Xα|` and `i = |Xα ∩ Z|`. An empty inner range adds zero.
pub fn idempotent_count(u: &Universe) -> Count {
    let (n, m, k) = (u.n(), u.m(), u.k());
    let mut total = BigUint::zero();
    for r in 1..=(n - m + k) {
        // m − n + r may be negative
        let lo = (m + r).saturating_sub(n).max(1);
        let hi = k.min(r);
        for i in lo..=hi {
            total += binomial(k, i as i64)
                * binomial(n - m, (r - i) as i64)
                * pow(i, m - i)
                * pow(r, n - m + i - r);
        }
    }
    total
}
