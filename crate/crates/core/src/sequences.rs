//! h-vectors and the sequence predicates built on Macaulay's growth
//! condition: O-sequences, differentiability, symmetry, unimodality and
//! SI-sequences, plus the Gorenstein classifier for small codimension.
//!
//! Predicates come in two layers. The slice-level functions
//! (`*_violation`) work on raw `&[u64]` without allocating and are what
//! the exhaustive searches call; the [`HVector`]-level functions wrap them
//! into [`Verdict`]s and reports.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::binomial::growth_allowed;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HVectorError {
    #[error("h-vector is empty or all zero")]
    Empty,
    #[error("h_0 must be 1, got {0}")]
    LeadingEntry(u64),
    #[error("internal zero at degree {degree}")]
    InternalZero { degree: usize },
    #[error("invalid token {token:?} at position {position}")]
    Parse { token: String, position: usize },
}

/// The h-vector `(h_0, ..., h_e)` of a standard graded artinian algebra.
///
/// Construction strips trailing zeros, so `e` is always the last degree
/// with a positive entry. `h_0 = 1` and there are no internal zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct HVector(Vec<u64>);

impl HVector {
    pub fn new(mut entries: Vec<u64>) -> Result<Self, HVectorError> {
        while entries.last() == Some(&0) {
            entries.pop();
        }
        match entries.first() {
            None => return Err(HVectorError::Empty),
            Some(&1) => {}
            Some(&other) => return Err(HVectorError::LeadingEntry(other)),
        }
        if let Some(degree) = entries.iter().position(|&x| x == 0) {
            return Err(HVectorError::InternalZero { degree });
        }
        Ok(HVector(entries))
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<u64> {
        self.0
    }

    pub fn socle_degree(&self) -> usize {
        self.0.len() - 1
    }

    /// `h_1`, or 0 for the field `(1)`.
    pub fn codimension(&self) -> u64 {
        self.0.get(1).copied().unwrap_or(0)
    }

    pub fn get(&self, degree: usize) -> u64 {
        self.0.get(degree).copied().unwrap_or(0)
    }

    pub fn reversed(&self) -> Vec<u64> {
        self.0.iter().rev().copied().collect()
    }
}

impl<'de> Deserialize<'de> for HVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let entries = Vec::<u64>::deserialize(d)?;
        HVector::new(entries).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for HVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join(&self.0))
    }
}

impl FromStr for HVector {
    type Err = HVectorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let entries = s
            .split(',')
            .enumerate()
            .map(|(position, tok)| {
                let trimmed = tok.trim();
                trimmed.parse::<u64>().map_err(|_| HVectorError::Parse {
                    token: trimmed.to_string(),
                    position,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        HVector::new(entries)
    }
}

impl TryFrom<Vec<u64>> for HVector {
    type Error = HVectorError;

    fn try_from(v: Vec<u64>) -> Result<Self, Self::Error> {
        HVector::new(v)
    }
}

/// Comma-joined rendering used across the CLI.
pub fn join<T: fmt::Display>(xs: &[T]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Outcome of a single predicate: whether it holds and, if not, the first
/// degree at which it fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub holds: bool,
    pub first_violation: Option<usize>,
}

impl Verdict {
    fn from_violation(v: Option<usize>) -> Self {
        Verdict {
            holds: v.is_none(),
            first_violation: v,
        }
    }
}

/// `h_{degree} > h_{degree-1}^<degree-1>`: the entry at `degree` grows too fast.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GrowthViolation {
    /// Degree of the offending entry.
    pub degree: usize,
}

impl GrowthViolation {
    /// The `d` of the failing inequality `h_{d+1} <= h_d^<d>`.
    pub fn from_degree(&self) -> usize {
        self.degree - 1
    }
}

/// Smallest degree at which `seq` breaks Macaulay's growth condition.
/// `seq[0] != 1` is reported at degree 0. Zeros are allowed anywhere; a
/// positive entry after a zero is a violation.
pub fn o_sequence_violation(seq: &[u64]) -> Option<GrowthViolation> {
    match seq.first() {
        Some(1) => {}
        _ => return Some(GrowthViolation { degree: 0 }),
    }
    (1..seq.len().saturating_sub(1))
        .find(|&d| !growth_allowed(seq[d], d as u64, seq[d + 1]))
        .map(|d| GrowthViolation { degree: d + 1 })
}

/// First degree where `v` fails to be differentiable: either its first
/// difference goes negative or the difference breaks Macaulay growth.
/// Trailing zeros of the difference never cause a violation.
pub fn differentiable_violation(v: &[u64]) -> Option<usize> {
    if v.first() != Some(&1) {
        return Some(0);
    }
    let mut prev_delta: u64 = 1;
    for k in 1..v.len() {
        let Some(delta) = v[k].checked_sub(v[k - 1]) else {
            return Some(k);
        };
        if k >= 2 && !growth_allowed(prev_delta, (k - 1) as u64, delta) {
            return Some(k);
        }
        prev_delta = delta;
    }
    None
}

/// Smallest `i` with `h_i != h_{e-i}`.
pub fn symmetry_violation(h: &[u64]) -> Option<usize> {
    let e = h.len().checked_sub(1)?;
    (0..=e / 2).find(|&i| h[i] != h[e - i])
}

/// Degree of the first strict ascent that follows a strict descent.
pub fn unimodality_violation(h: &[u64]) -> Option<usize> {
    let mut descended = false;
    for k in 1..h.len() {
        if h[k] < h[k - 1] {
            descended = true;
        } else if h[k] > h[k - 1] && descended {
            return Some(k);
        }
    }
    None
}

/// `(h_0, ..., h_{floor(e/2)})`.
pub fn first_half(h: &[u64]) -> &[u64] {
    match h.len() {
        0 => h,
        n => &h[..(n - 1) / 2 + 1],
    }
}

/// Allocation-free SI test on a raw slice.
pub fn is_si_slice(h: &[u64]) -> bool {
    symmetry_violation(h).is_none() && differentiable_violation(first_half(h)).is_none()
}

/// `((Δv)_0 = 1, v_1 - v_0, ..., v_d - v_{d-1})`. Entries may be negative.
pub fn first_difference(v: &[u64]) -> Vec<i128> {
    let mut out = Vec::with_capacity(v.len());
    if let Some(&first) = v.first() {
        out.push(i128::from(first));
    }
    out.extend(v.windows(2).map(|w| i128::from(w[1]) - i128::from(w[0])));
    out
}

pub fn is_o_sequence(h: &HVector) -> Verdict {
    Verdict::from_violation(o_sequence_violation(h.entries()).map(|v| v.degree))
}

pub fn is_differentiable(v: &[u64]) -> Verdict {
    Verdict::from_violation(differentiable_violation(v))
}

pub fn is_symmetric(h: &HVector) -> Verdict {
    Verdict::from_violation(symmetry_violation(h.entries()))
}

pub fn is_unimodal(h: &HVector) -> Verdict {
    Verdict::from_violation(unimodality_violation(h.entries()))
}

/// A machine-checkable fact supporting a classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Reason {
    NotSymmetric { degree: usize },
    NotOSequence { degree: usize },
    FirstHalfNotDifferentiable { degree: usize },
    SiWitness,
    OutOfScopeCodimension,
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reason::NotSymmetric { degree } => write!(f, "NotSymmetric(degree {degree})"),
            Reason::NotOSequence { degree } => write!(f, "NotOSequence(degree {degree})"),
            Reason::FirstHalfNotDifferentiable { degree } => {
                write!(f, "FirstHalfNotDifferentiable(degree {degree})")
            }
            Reason::SiWitness => f.write_str("SIWitness"),
            Reason::OutOfScopeCodimension => f.write_str("OutOfScopeCodimension"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SiReport {
    pub holds: bool,
    pub reasons: Vec<Reason>,
}

pub fn is_si_sequence(h: &HVector) -> SiReport {
    let mut reasons = Vec::new();
    if let Some(degree) = symmetry_violation(h.entries()) {
        reasons.push(Reason::NotSymmetric { degree });
    }
    if let Some(degree) = differentiable_violation(first_half(h.entries())) {
        reasons.push(Reason::FirstHalfNotDifferentiable { degree });
    }
    SiReport {
        holds: reasons.is_empty(),
        reasons,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GorensteinVerdict {
    Gorenstein,
    NotGorenstein,
    Undecided,
}

impl fmt::Display for GorensteinVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub verdict: GorensteinVerdict,
    pub codimension: u64,
    pub reasons: Vec<Reason>,
}

/// Decides whether `h` is a Gorenstein h-vector, as far as the SI
/// characterization allows.
///
/// SI-sequences are Gorenstein in every codimension. In codimension at
/// most 3 the converse holds, so any failure is a certificate. In higher
/// codimension a symmetric O-sequence that is not SI is left undecided,
/// while asymmetry or a growth violation still rules Gorenstein out.
pub fn classify_gorenstein(h: &HVector) -> ClassificationReport {
    let codimension = h.codimension();
    let si = is_si_sequence(h);
    if si.holds {
        return ClassificationReport {
            verdict: GorensteinVerdict::Gorenstein,
            codimension,
            reasons: vec![Reason::SiWitness],
        };
    }
    let symmetric = symmetry_violation(h.entries());
    let growth = o_sequence_violation(h.entries());
    let mut reasons = Vec::new();
    if let Some(degree) = symmetric {
        reasons.push(Reason::NotSymmetric { degree });
    }
    if let Some(v) = growth {
        reasons.push(Reason::NotOSequence { degree: v.degree });
    }
    let differentiable = si
        .reasons
        .iter()
        .copied()
        .find(|r| matches!(r, Reason::FirstHalfNotDifferentiable { .. }));

    if codimension <= 3 {
        reasons.extend(differentiable);
        ClassificationReport {
            verdict: GorensteinVerdict::NotGorenstein,
            codimension,
            reasons,
        }
    } else if reasons.is_empty() {
        reasons.extend(differentiable);
        reasons.push(Reason::OutOfScopeCodimension);
        ClassificationReport {
            verdict: GorensteinVerdict::Undecided,
            codimension,
            reasons,
        }
    } else {
        ClassificationReport {
            verdict: GorensteinVerdict::NotGorenstein,
            codimension,
            reasons,
        }
    }
}
