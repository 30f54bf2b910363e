//! Deterministic generators of h-vectors with fixed codimension and socle
//! degree. With the SI filter in codimension 3 these are exactly the
//! Gorenstein h-vectors of that socle degree.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::binomial::macaulay_bound_u64;
use crate::par::{self, Execution};
use crate::sequences::{is_si_slice, HVector};

pub const DEFAULT_ENTRY_CAP: u64 = 25;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Filter {
    AllOSequences,
    Symmetric,
    Si,
    SymmetricNotSi,
}

impl Filter {
    pub const ALL: [Filter; 4] = [
        Filter::AllOSequences,
        Filter::Symmetric,
        Filter::Si,
        Filter::SymmetricNotSi,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Filter::AllOSequences => "o-sequence",
            Filter::Symmetric => "symmetric",
            Filter::Si => "si",
            Filter::SymmetricNotSi => "symmetric-not-si",
        }
    }
}

impl fmt::Display for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Filter {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Filter::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown filter {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("codimension must be at least 1")]
    ZeroCodimension,
    #[error("entry cap {cap} is below the codimension {codimension}")]
    CapBelowCodimension { cap: u64, codimension: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationSpec {
    pub socle_degree: usize,
    pub codimension: u64,
    pub entry_cap: u64,
    pub filter: Filter,
}

impl EnumerationSpec {
    pub fn new(
        socle_degree: usize,
        codimension: u64,
        entry_cap: u64,
        filter: Filter,
    ) -> Result<Self, EnumerationError> {
        if codimension == 0 {
            return Err(EnumerationError::ZeroCodimension);
        }
        if entry_cap < codimension {
            return Err(EnumerationError::CapBelowCodimension {
                cap: entry_cap,
                codimension,
            });
        }
        Ok(EnumerationSpec {
            socle_degree,
            codimension,
            entry_cap,
            filter,
        })
    }
}

/// Allowed values at position `k` of the vector under construction.
fn next_range(filter: Filter, prefix: &[u64], cap: u64) -> (u64, u64) {
    let k = prefix.len();
    let prev = prefix[k - 1];
    match filter {
        Filter::AllOSequences => {
            let bound = macaulay_bound_u64(prev, (k - 1) as u64).unwrap_or(u64::MAX);
            (1, bound.min(cap))
        }
        Filter::Symmetric | Filter::SymmetricNotSi => (1, cap),
        Filter::Si => {
            // first half must be differentiable
            let prev_delta = match prev.checked_sub(prefix[k - 2]) {
                Some(d) => d,
                None => return (1, 0),
            };
            let bound = macaulay_bound_u64(prev_delta, (k - 1) as u64).unwrap_or(u64::MAX);
            (prev, prev.saturating_add(bound).min(cap))
        }
    }
}

fn mirror(half: &[u64], socle_degree: usize) -> Vec<u64> {
    let mut full = half.to_vec();
    full.extend(half[..socle_degree.div_ceil(2)].iter().rev());
    full
}

fn dfs(spec: &EnumerationSpec, prefix: &mut Vec<u64>, target: usize, out: &mut Vec<HVector>) {
    if prefix.len() == target {
        let full = match spec.filter {
            Filter::AllOSequences => prefix.clone(),
            _ => mirror(prefix, spec.socle_degree),
        };
        let keep = match spec.filter {
            Filter::SymmetricNotSi => !is_si_slice(&full),
            _ => true,
        };
        if keep && full.get(1) == Some(&spec.codimension) {
            out.push(HVector::new(full).expect("generated entries are positive"));
        }
        return;
    }
    let (lo, hi) = next_range(spec.filter, prefix, spec.entry_cap);
    for v in lo..=hi {
        prefix.push(v);
        dfs(spec, prefix, target, out);
        prefix.pop();
    }
}

/// Every h-vector matching `spec`, in lexicographic order.
pub fn enumerate(spec: &EnumerationSpec) -> Vec<HVector> {
    enumerate_with(spec, Execution::default())
}

/// As [`enumerate`], splitting the work on the value of `h_2`. Output order
/// does not depend on `exec`.
pub fn enumerate_with(spec: &EnumerationSpec, exec: Execution) -> Vec<HVector> {
    let e = spec.socle_degree;
    if e == 0 {
        return Vec::new();
    }
    let target = match spec.filter {
        Filter::AllOSequences => e + 1,
        _ => e / 2 + 1,
    };
    if target < 3 {
        let mut out = Vec::new();
        let mut prefix = vec![1];
        if target == 2 {
            prefix.push(spec.codimension);
        }
        dfs(spec, &mut prefix, target, &mut out);
        return out;
    }
    let (lo, hi) = next_range(spec.filter, &[1, spec.codimension], spec.entry_cap);
    let seconds: Vec<u64> = (lo..=hi).collect();
    par::flat_map(exec, seconds, |h2| {
        let mut out = Vec::new();
        dfs(spec, &mut vec![1, spec.codimension, h2], target, &mut out);
        out
    })
}

/// Number of matching h-vectors for each socle degree `0..=max_degree`.
pub fn count_by_degree(
    codimension: u64,
    max_degree: usize,
    entry_cap: u64,
    filter: Filter,
) -> Result<BTreeMap<usize, usize>, EnumerationError> {
    (0..=max_degree)
        .map(|e| {
            let spec = EnumerationSpec::new(e, codimension, entry_cap, filter)?;
            Ok((e, enumerate(&spec).len()))
        })
        .collect()
}
