//! Exact binomial arithmetic, i-binomial expansions and the Macaulay
//! growth operator `n^<i>`.
//!
//! Expansions are computed in machine integers (every top is bounded by
//! `n`), while the growth bound itself is returned as a [`BigUint`] since
//! `C(top + 1, bottom + 1)` can exceed any fixed width.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// `C(n, k)`, exact. Zero when `k > n`.
pub fn binom(n: u64, k: u64) -> BigUint {
    binom_wide(u128::from(n), u128::from(k))
}

fn binom_wide(n: u128, k: u128) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for m in 0..k {
        acc *= n - k + m + 1;
        acc /= m + 1;
    }
    acc
}

/// `C(n, k)` if it fits in a `u64`, `None` otherwise.
///
/// Every intermediate value `C(n - k + m, m)` is bounded by the result, so
/// a `u128` accumulator never overflows while the result still fits.
pub(crate) fn binom_u64(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for m in 0..k {
        acc = acc.checked_mul(u128::from(n - k + m + 1))? / u128::from(m + 1);
        if acc > u128::from(u64::MAX) {
            return None;
        }
    }
    Some(acc as u64)
}

/// Largest `t >= k` with `C(t, k) <= n`. Requires `n >= 1`, `k >= 1`.
fn largest_top(n: u64, k: u64) -> u64 {
    let fits = |t: u64| matches!(binom_u64(t, k), Some(c) if c <= n);
    // C(k, k) = 1 <= n always holds; gallop then bisect.
    let mut lo = k;
    let mut step = 1u64;
    let mut hi = loop {
        let probe = lo.saturating_add(step);
        if probe == lo || !fits(probe) {
            break probe;
        }
        lo = probe;
        step = step.saturating_mul(2);
    };
    // invariant: fits(lo), !fits(hi) (or hi saturated)
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if fits(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// One term `C(top, bottom)` of an i-binomial expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BinomialTerm {
    pub top: u64,
    pub bottom: u64,
}

/// The unique i-binomial expansion
/// `n = C(n_i, i) + C(n_{i-1}, i-1) + ... + C(n_j, j)` with
/// `n_i > n_{i-1} > ... > n_j >= j >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinomialExpansion {
    terms: Vec<BinomialTerm>,
    value: u64,
    index: u64,
}

impl BinomialExpansion {
    pub fn terms(&self) -> &[BinomialTerm] {
        &self.terms
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    /// Re-evaluates the sum of the terms.
    pub fn evaluate(&self) -> BigUint {
        self.terms.iter().map(|t| binom(t.top, t.bottom)).sum()
    }

    /// `n^<i>`: every top and bottom shifted up by one.
    pub fn macaulay_bound(&self) -> BigUint {
        self.terms
            .iter()
            .map(|t| binom_wide(u128::from(t.top) + 1, u128::from(t.bottom) + 1))
            .sum()
    }

    fn macaulay_bound_u64(&self) -> Option<u64> {
        self.terms.iter().try_fold(0u64, |acc, t| {
            acc.checked_add(binom_u64(t.top.checked_add(1)?, t.bottom + 1)?)
        })
    }
}

impl fmt::Display for BinomialExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, t) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "C({},{})", t.top, t.bottom)?;
        }
        Ok(())
    }
}

/// Greedy i-binomial expansion of `n`: take the largest `n_i` with
/// `C(n_i, i) <= n` and recurse on the remainder with `i - 1`.
///
/// Returns `None` when `n == 0` or `i == 0`, for which no expansion exists.
pub fn expand(n: u64, i: u64) -> Option<BinomialExpansion> {
    if n == 0 || i == 0 {
        return None;
    }
    let mut terms = Vec::new();
    let mut rest = n;
    let mut bottom = i;
    while rest > 0 && bottom > 0 {
        let top = largest_top(rest, bottom);
        // C(top, bottom) <= rest, so this fits
        rest -= binom_u64(top, bottom).expect("term bounded by n");
        terms.push(BinomialTerm { top, bottom });
        bottom -= 1;
    }
    debug_assert_eq!(rest, 0);
    Some(BinomialExpansion {
        terms,
        value: n,
        index: i,
    })
}

/// The Macaulay bound `n^<i>`, the largest legal `h_{i+1}` given `h_i = n`.
/// Defined as 0 for `n = 0`.
pub fn macaulay_bound(n: u64, i: u64) -> BigUint {
    assert!(i >= 1, "macaulay_bound needs a positive degree");
    match expand(n, i) {
        Some(e) => e.macaulay_bound(),
        None => BigUint::zero(),
    }
}

/// `n^<i>` when it fits in a `u64`.
pub(crate) fn macaulay_bound_u64(n: u64, i: u64) -> Option<u64> {
    match expand(n, i) {
        Some(e) => e.macaulay_bound_u64(),
        None => Some(0),
    }
}

/// Whether `next <= current^<degree>`, exactly.
pub fn growth_allowed(current: u64, degree: u64, next: u64) -> bool {
    match macaulay_bound_u64(current, degree) {
        Some(b) => next <= b,
        None => BigUint::from(next) <= macaulay_bound(current, degree),
    }
}
