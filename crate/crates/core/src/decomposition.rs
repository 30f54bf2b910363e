//! Subtrahend decompositions of Gorenstein h-vectors and the machinery that
//! replays the codimension-3 SI argument on concrete vectors.
//!
//! A decomposition of `h` at pivot `j` is a Gorenstein vector
//! `a = (a_j = 1, a_{j+1}, ..., a_e)` such that
//! `(1, h_1, ..., h_{j-1}, h_j - a_j, ..., h_e - a_e)` is an O-sequence.
//! Candidate subtrahends are SI-sequences; in codimension at most 3 these are
//! exactly the Gorenstein vectors, which is why searches refuse `h_1 >= 4`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::binomial::{binom_u64, growth_allowed};
use crate::par::{self, Execution};
use crate::sequences::{is_si_slice, o_sequence_violation, symmetry_violation, HVector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompositionError {
    #[error("UnsupportedCodimension: h_1 = {0} (searches need h_1 <= 3)")]
    UnsupportedCodimension(u64),
    #[error("pivot {pivot} outside 1..={socle_degree}")]
    InvalidPivot { pivot: usize, socle_degree: usize },
    #[error("PreconditionViolated: {0}")]
    PreconditionViolated(String),
    #[error("TraceViolation at degree {degree}: {label} fails")]
    TraceViolation { degree: usize, label: CheckLabel },
}

/// A subtrahend `a` at pivot `j` together with the residual `h - a`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StanleyDecomposition {
    pub pivot: usize,
    /// `(a_j, ..., a_e)`.
    pub subtrahend: Vec<u64>,
    /// `(1, h_1, ..., h_{j-1}, h_j - a_j, ..., h_e - a_e)`, trailing zeros kept.
    pub residual: Vec<u64>,
}

impl StanleyDecomposition {
    /// `a_k`, zero below the pivot.
    pub fn a(&self, degree: usize) -> u64 {
        degree
            .checked_sub(self.pivot)
            .and_then(|k| self.subtrahend.get(k))
            .copied()
            .unwrap_or(0)
    }

    /// The residual with trailing zeros removed.
    pub fn residual_trimmed(&self) -> &[u64] {
        let end = self
            .residual
            .iter()
            .rposition(|&x| x != 0)
            .map_or(0, |p| p + 1);
        &self.residual[..end]
    }

    /// Builds the decomposition of `h` with the given subtrahend, checking
    /// only shape and non-negativity.
    pub fn from_subtrahend(
        h: &HVector,
        pivot: usize,
        subtrahend: Vec<u64>,
    ) -> Result<Self, DecompositionError> {
        let e = h.socle_degree();
        if pivot == 0 || pivot > e {
            return Err(DecompositionError::InvalidPivot {
                pivot,
                socle_degree: e,
            });
        }
        if subtrahend.len() != e - pivot + 1 {
            return Err(DecompositionError::PreconditionViolated(format!(
                "subtrahend must cover degrees {pivot}..={e}"
            )));
        }
        let residual = (0..=e)
            .map(|d| {
                let a = if d >= pivot { subtrahend[d - pivot] } else { 0 };
                h.get(d).checked_sub(a).ok_or_else(|| {
                    DecompositionError::PreconditionViolated(format!(
                        "a_{d} = {a} exceeds h_{d} = {}",
                        h.get(d)
                    ))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(StanleyDecomposition {
            pivot,
            subtrahend,
            residual,
        })
    }

    /// Subtrahend is SI with leading 1 and the residual is an O-sequence.
    pub fn is_valid(&self) -> bool {
        self.subtrahend.first() == Some(&1)
            && !self.subtrahend.contains(&0)
            && is_si_slice(&self.subtrahend)
            && o_sequence_violation(&self.residual).is_none()
    }
}

/// Enumerates SI vectors `(1, b_1, ..., b_n)` of socle degree `n` with
/// `b_k <= caps[k]`, in lex order. `caps` must be symmetric.
///
/// `prefix_ok` sees the first half built so far (with the newest entry
/// last) and may cut the branch; `visit` receives each full vector and
/// returns `false` to stop the walk.
fn walk_si_vectors(
    caps: &[u64],
    first: Option<u64>,
    prefix_ok: &dyn Fn(&[u64]) -> bool,
    visit: &mut dyn FnMut(&[u64]) -> bool,
) {
    fn go(
        half: &mut Vec<u64>,
        caps: &[u64],
        first: Option<u64>,
        prefix_ok: &dyn Fn(&[u64]) -> bool,
        visit: &mut dyn FnMut(&[u64]) -> bool,
    ) -> bool {
        let n = caps.len() - 1;
        let k = half.len();
        if k == n / 2 + 1 {
            let mut full = half.clone();
            full.extend(half[..n.div_ceil(2)].iter().rev());
            return visit(&full);
        }
        let prev = half[k - 1];
        let (lo, hi) = if k == 1 {
            match first {
                Some(v) => (v, v),
                None => (1, caps[1]),
            }
        } else {
            let prev_delta = prev - half[k - 2];
            // the largest delta allowed after prev_delta
            let max_delta =
                crate::binomial::macaulay_bound_u64(prev_delta, (k - 1) as u64).unwrap_or(u64::MAX);
            (prev, prev.saturating_add(max_delta).min(caps[k]))
        };
        let lo = lo.max(prev).max(1);
        for v in lo..=hi.min(caps[k]) {
            half.push(v);
            let keep_going = if prefix_ok(half) {
                go(half, caps, first, prefix_ok, visit)
            } else {
                true
            };
            half.pop();
            if !keep_going {
                return false;
            }
        }
        true
    }
    if caps.is_empty() || caps[0] < 1 {
        return;
    }
    let n = caps.len() - 1;
    if n == 0 {
        visit(&[1]);
        return;
    }
    if caps[n] < 1 {
        return;
    }
    go(&mut vec![1], caps, first, prefix_ok, visit);
}

/// Per-position caps for subtrahends of `h` at `pivot`: entrywise `a_d <= h_d`,
/// folded over the mirror so that the caps are symmetric.
fn subtrahend_caps(h: &HVector, pivot: usize) -> Vec<u64> {
    let e = h.socle_degree();
    let n = e - pivot;
    (0..=n)
        .map(|k| h.get(pivot + k).min(h.get(pivot + n - k)))
        .collect()
}

fn check_pivot(h: &HVector, pivot: usize) -> Result<(), DecompositionError> {
    if h.codimension() >= 4 {
        return Err(DecompositionError::UnsupportedCodimension(h.codimension()));
    }
    let e = h.socle_degree();
    if pivot == 0 || pivot > e {
        return Err(DecompositionError::InvalidPivot {
            pivot,
            socle_degree: e,
        });
    }
    Ok(())
}

/// The lexicographically smallest SI subtrahend at `pivot` leaving an
/// O-sequence residual, if any.
pub fn find_stanley_decomposition(
    h: &HVector,
    pivot: usize,
) -> Result<Option<StanleyDecomposition>, DecompositionError> {
    find_stanley_decomposition_with(h, pivot, Execution::default())
}

pub fn find_stanley_decomposition_with(
    h: &HVector,
    pivot: usize,
    exec: Execution,
) -> Result<Option<StanleyDecomposition>, DecompositionError> {
    check_pivot(h, pivot)?;
    let caps = subtrahend_caps(h, pivot);
    let n = caps.len() - 1;
    let hs = h.entries();

    // residual prefix through degree pivot + k, given the first k+1 entries
    // of the subtrahend; growth is checked only at the newest degree since
    // shorter prefixes were accepted already
    let prefix_ok = |half: &[u64]| -> bool {
        let k = half.len() - 1;
        let d = pivot + k;
        let cur = hs[d] - half[k];
        if d < 2 {
            return true;
        }
        let prev = if d > pivot {
            hs[d - 1] - half[k - 1]
        } else {
            hs[d - 1]
        };
        growth_allowed(prev, (d - 1) as u64, cur)
    };
    let complete = |a: &[u64]| -> Option<StanleyDecomposition> {
        let d = StanleyDecomposition::from_subtrahend(h, pivot, a.to_vec()).ok()?;
        o_sequence_violation(&d.residual).is_none().then_some(d)
    };
    // the residual below the pivot is h itself
    if o_sequence_violation(&hs[..pivot.min(hs.len())]).is_some() {
        return Ok(None);
    }

    let search = |first: Option<u64>| -> Option<StanleyDecomposition> {
        let mut found = None;
        walk_si_vectors(&caps, first, &prefix_ok, &mut |a| {
            found = complete(a);
            found.is_none()
        });
        found
    };
    if n == 0 {
        return Ok(search(None));
    }
    if !prefix_ok(&[1]) {
        return Ok(None);
    }
    let firsts: Vec<u64> = (1..=caps[1]).collect();
    Ok(par::map(exec, firsts, |v| search(Some(v)))
        .into_iter()
        .flatten()
        .next())
}

/// Why a candidate subtrahend fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ResidualFailure {
    Negative { degree: usize },
    Growth { degree: usize },
}

impl ResidualFailure {
    pub fn degree(&self) -> usize {
        match *self {
            ResidualFailure::Negative { degree } | ResidualFailure::Growth { degree } => degree,
        }
    }
}

impl fmt::Display for ResidualFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResidualFailure::Negative { degree } => {
                write!(f, "negative residual at degree {degree}")
            }
            ResidualFailure::Growth { degree } => write!(f, "growth violation at degree {degree}"),
        }
    }
}

/// First failure of `h - a` (pivot `pivot`) to be a non-negative O-sequence.
fn residual_failure(h: &[u64], pivot: usize, a: &[u64]) -> Option<ResidualFailure> {
    let mut prev = 0u64;
    for (d, &hd) in h.iter().enumerate() {
        let ad = if d >= pivot { a[d - pivot] } else { 0 };
        let Some(cur) = hd.checked_sub(ad) else {
            return Some(ResidualFailure::Negative { degree: d });
        };
        let ok = match d {
            0 => cur == 1,
            1 => true,
            _ => growth_allowed(prev, (d - 1) as u64, cur),
        };
        if !ok {
            return Some(ResidualFailure::Growth { degree: d });
        }
        prev = cur;
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Refutation {
    pub subtrahend: Vec<u64>,
    pub failure: ResidualFailure,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefutationReport {
    pub candidates: usize,
    pub refuted: Vec<Refutation>,
    /// Candidates leaving an O-sequence residual. Always empty unless
    /// something is broken.
    pub survivors: Vec<Vec<u64>>,
}

impl RefutationReport {
    pub fn is_clean(&self) -> bool {
        self.survivors.is_empty()
    }
}

/// Tries every pivot-1 subtrahend of a symmetric, non-SI `h` with
/// `h_1 = 3` and records why each one fails.
///
/// Candidates are SI vectors `(1, a_2, ..., a_e)` with `a_2 <= 3` and
/// `a_i <= h_{min(i, e+1-i)}`.
pub fn refute_non_si(h: &HVector) -> Result<RefutationReport, DecompositionError> {
    refute_non_si_with(h, Execution::default())
}

pub fn refute_non_si_with(
    h: &HVector,
    exec: Execution,
) -> Result<RefutationReport, DecompositionError> {
    if h.codimension() != 3 {
        return Err(DecompositionError::PreconditionViolated(format!(
            "h_1 = {} but refutation needs h_1 = 3",
            h.codimension()
        )));
    }
    if symmetry_violation(h.entries()).is_some() {
        return Err(DecompositionError::PreconditionViolated(
            "h is not symmetric".into(),
        ));
    }
    if is_si_slice(h.entries()) {
        return Err(DecompositionError::PreconditionViolated(
            "h is an SI-sequence".into(),
        ));
    }
    let e = h.socle_degree();
    let caps: Vec<u64> = (1..=e)
        .map(|i| {
            let cap = h.get(i.min(e + 1 - i));
            if i == 2 {
                cap.min(3)
            } else {
                cap
            }
        })
        .collect();
    let mut candidates = Vec::new();
    walk_si_vectors(&caps, None, &|_| true, &mut |a| {
        candidates.push(a.to_vec());
        true
    });
    let total = candidates.len();
    let hs = h.entries();
    let outcomes = par::map(exec, candidates, |a| {
        let failure = residual_failure(hs, 1, &a);
        (a, failure)
    });
    let mut refuted = Vec::new();
    let mut survivors = Vec::new();
    for (a, failure) in outcomes {
        match failure {
            Some(failure) => refuted.push(Refutation {
                subtrahend: a,
                failure,
            }),
            None => survivors.push(a),
        }
    }
    Ok(RefutationReport {
        candidates: total,
        refuted,
        survivors,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProofCase {
    /// `a_i = C(i+1, 2)`.
    #[serde(rename = "A_I_GENERIC")]
    AiGeneric,
    /// `Δ_{i-1} = i`.
    #[serde(rename = "DELTA_GENERIC")]
    DeltaGeneric,
    /// `Δ_{i-1} <= i - 1`.
    #[serde(rename = "DELTA_SMALL")]
    DeltaSmall,
}

impl fmt::Display for ProofCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProofCase::AiGeneric => "A_I_GENERIC",
            ProofCase::DeltaGeneric => "DELTA_GENERIC",
            ProofCase::DeltaSmall => "DELTA_SMALL",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CheckLabel {
    /// `h_i - h_{i-1} <= h_{i-1} - h_{i-2}`
    #[serde(rename = "(1)")]
    One,
    /// `a_i - a_{i-1} <= h_{i-1} - h_{i-2}`
    #[serde(rename = "(2)")]
    Two,
    /// `h_i - h_{i-1} <= a_i - a_{i-1}`
    #[serde(rename = "(3)")]
    Three,
    /// In the A_I_GENERIC case `h_{i-1}` must itself be generic.
    #[serde(rename = "previous-generic")]
    PreviousGeneric,
    /// `Δ_{i-1}` above `i`, so no case applies.
    #[serde(rename = "case")]
    Case,
    /// The residual rises again after a non-generic entry.
    #[serde(rename = "residual-non-increasing")]
    ResidualNonIncreasing,
    /// `h` decreases inside its first half.
    #[serde(rename = "unimodal")]
    Unimodal,
}

impl fmt::Display for CheckLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckLabel::One => "(1)",
            CheckLabel::Two => "(2)",
            CheckLabel::Three => "(3)",
            CheckLabel::PreviousGeneric => "previous-generic",
            CheckLabel::Case => "case",
            CheckLabel::ResidualNonIncreasing => "residual-non-increasing",
            CheckLabel::Unimodal => "unimodal",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckedInequality {
    pub label: CheckLabel,
    pub lhs: i128,
    pub rhs: i128,
    pub holds: bool,
}

impl CheckedInequality {
    fn new(label: CheckLabel, lhs: i128, rhs: i128) -> Self {
        CheckedInequality {
            label,
            lhs,
            rhs,
            holds: lhs <= rhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofTrace {
    pub degree: usize,
    pub case: ProofCase,
    pub checked: Vec<CheckedInequality>,
}

fn generic(degree: usize, vars_minus_one: u64) -> i128 {
    // C(degree + vars - 1, vars - 1)
    i128::from(binom_u64(degree as u64 + vars_minus_one, vars_minus_one).unwrap_or(u64::MAX))
}

/// Replays the codimension-3 argument on `h` with the pivot-1
/// decomposition `d`.
///
/// For every non-generic degree `i <= floor(e/2)` this identifies which
/// case applies and checks the inequalities that case relies on. It also
/// checks that the residual never rises after its first non-generic entry
/// and that `h` does not drop within its first half. Any failure is an
/// error: for a valid decomposition none can occur.
pub fn verify_proof_inequalities(
    h: &HVector,
    d: &StanleyDecomposition,
) -> Result<Vec<ProofTrace>, DecompositionError> {
    if d.pivot != 1 {
        return Err(DecompositionError::PreconditionViolated(
            "pivot must be 1".into(),
        ));
    }
    if h.codimension() != 3 || symmetry_violation(h.entries()).is_some() {
        return Err(DecompositionError::PreconditionViolated(
            "h must be symmetric with h_1 = 3".into(),
        ));
    }
    let rebuilt = StanleyDecomposition::from_subtrahend(h, 1, d.subtrahend.clone())?;
    if &rebuilt != d || !d.is_valid() {
        return Err(DecompositionError::PreconditionViolated(
            "not a valid decomposition of h".into(),
        ));
    }

    let e = h.socle_degree();
    let hi = |k: usize| i128::from(h.get(k));
    let ai = |k: usize| i128::from(d.a(k));
    let delta = |k: usize| i128::from(d.residual[k]);

    // residual starts (1, 2, ...): once below generic it never rises
    if let Some(start) = (1..=e).find(|&k| delta(k) < k as i128 + 1) {
        if let Some(k) = (start..e).find(|&k| delta(k + 1) > delta(k)) {
            return Err(DecompositionError::TraceViolation {
                degree: k + 1,
                label: CheckLabel::ResidualNonIncreasing,
            });
        }
    }
    if let Some(i) = (1..=e / 2).find(|&i| hi(i) < hi(i - 1)) {
        return Err(DecompositionError::TraceViolation {
            degree: i,
            label: CheckLabel::Unimodal,
        });
    }

    let mut traces = Vec::new();
    for i in 2..=e / 2 {
        if hi(i) >= generic(i, 2) {
            continue;
        }
        let ineq1 =
            CheckedInequality::new(CheckLabel::One, hi(i) - hi(i - 1), hi(i - 1) - hi(i - 2));
        let (case, checked) = if ai(i) == generic(i - 1, 2) {
            if hi(i - 1) != generic(i - 1, 2) {
                return Err(DecompositionError::TraceViolation {
                    degree: i,
                    label: CheckLabel::PreviousGeneric,
                });
            }
            (ProofCase::AiGeneric, vec![ineq1])
        } else if delta(i - 1) == i as i128 {
            (ProofCase::DeltaGeneric, vec![ineq1])
        } else if delta(i - 1) < i as i128 {
            let ineq2 =
                CheckedInequality::new(CheckLabel::Two, ai(i) - ai(i - 1), hi(i - 1) - hi(i - 2));
            let ineq3 =
                CheckedInequality::new(CheckLabel::Three, hi(i) - hi(i - 1), ai(i) - ai(i - 1));
            (ProofCase::DeltaSmall, vec![ineq2, ineq3, ineq1])
        } else {
            return Err(DecompositionError::TraceViolation {
                degree: i,
                label: CheckLabel::Case,
            });
        };
        if let Some(bad) = checked.iter().find(|c| !c.holds) {
            return Err(DecompositionError::TraceViolation {
                degree: i,
                label: bad.label,
            });
        }
        traces.push(ProofTrace {
            degree: i,
            case,
            checked,
        });
    }
    Ok(traces)
}

/// Every SI vector of socle degree `caps.len() - 1` under the caps, in lex order.
#[cfg(test)]
fn si_vectors_with_caps(caps: &[u64], first: Option<u64>) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    walk_si_vectors(caps, first, &|_| true, &mut |a| {
        out.push(a.to_vec());
        true
    });
    out
}
