//! Test-only oracles shared by the integration suites.
#![allow(dead_code)]

use hilbert_core::sequences::{is_si_slice, o_sequence_violation, symmetry_violation};
use hilbert_core::{Filter, HVector};

/// Calls `f` on every vector `(1, r, h_2, ..., h_e)` with `1 <= h_k <= cap`,
/// in lexicographic order.
pub fn for_each_vector(e: usize, r: u64, cap: u64, mut f: impl FnMut(&[u64])) {
    if e == 0 {
        return;
    }
    let mut v = vec![1u64; e + 1];
    v[1] = r;
    loop {
        f(&v);
        let mut k = e;
        while k >= 2 && v[k] == cap {
            v[k] = 1;
            k -= 1;
        }
        if k < 2 {
            return;
        }
        v[k] += 1;
    }
}

pub fn passes(filter: Filter, v: &[u64]) -> bool {
    match filter {
        Filter::AllOSequences => o_sequence_violation(v).is_none(),
        Filter::Symmetric => symmetry_violation(v).is_none(),
        Filter::Si => is_si_slice(v),
        Filter::SymmetricNotSi => symmetry_violation(v).is_none() && !is_si_slice(v),
    }
}

/// Every vector under the cap, filtered. No pruning of any kind.
pub fn naive_enumerate(e: usize, r: u64, cap: u64, filter: Filter) -> Vec<HVector> {
    let mut out = Vec::new();
    for_each_vector(e, r, cap, |v| {
        if passes(filter, v) {
            out.push(HVector::new(v.to_vec()).unwrap());
        }
    });
    out
}
