//! Monomial-side oracles, independent of the binomial arithmetic: lex-segment
//! realizations of O-sequences, Hilbert functions and socles of artinian
//! monomial quotients, brute-force maximal growth and complete-intersection
//! h-vectors.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::binomial::binom_u64;
use crate::par::{self, Execution};
use crate::sequences::{HVector, HVectorError};

/// Default cap on the number of subsets [`max_growth_bruteforce`] visits.
pub const DEFAULT_SUBSET_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("NotAnOSequence({degree}): only {available} candidate monomials in degree {degree}, need {needed}")]
    NotAnOSequence {
        degree: usize,
        available: usize,
        needed: u64,
    },
    #[error("survivor table is not an order ideal: {0}")]
    NotAnOrderIdeal(String),
    #[error("search over {subsets} subsets exceeds the budget of {budget}")]
    InfeasibleSearch { subsets: String, budget: u64 },
    #[error("only {available} monomials of degree {degree} in {vars} variables, cannot pick {n}")]
    TooFewMonomials {
        n: u64,
        degree: u64,
        vars: usize,
        available: u64,
    },
    #[error("exponent {0} is below 2")]
    ExponentTooSmall(u64),
    #[error(transparent)]
    HVector(#[from] HVectorError),
}

/// A monomial `x1^e1 * ... * xr^er`, stored as its exponent vector.
///
/// The derived ordering is lex with `x1 > x2 > ... > xr`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial { exponents }
    }

    pub fn one(vars: usize) -> Self {
        Monomial {
            exponents: vec![0; vars],
        }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn degree(&self) -> u64 {
        self.exponents.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn num_variables(&self) -> usize {
        self.exponents.len()
    }

    pub fn times(&self, var: usize) -> Monomial {
        let mut exponents = self.exponents.clone();
        exponents[var] += 1;
        Monomial { exponents }
    }

    /// The distinct divisors of one degree lower.
    pub fn lower_divisors(&self) -> impl Iterator<Item = Monomial> + '_ {
        (0..self.exponents.len())
            .filter(|&v| self.exponents[v] > 0)
            .map(|v| {
                let mut exponents = self.exponents.clone();
                exponents[v] -= 1;
                Monomial { exponents }
            })
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, &e) in self.exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "x{}", v + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// All monomials of `degree` in `vars` variables, lex-descending.
pub fn monomials_of_degree(vars: usize, degree: u32) -> Vec<Monomial> {
    fn go(vars: usize, left: u32, acc: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if acc.len() + 1 == vars {
            acc.push(left);
            out.push(Monomial::new(acc.clone()));
            acc.pop();
            return;
        }
        for e in (0..=left).rev() {
            acc.push(e);
            go(vars, left - e, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    if vars == 0 {
        if degree == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    go(vars, degree, &mut Vec::with_capacity(vars), &mut out);
    out
}

/// Standard monomials of an artinian monomial quotient, grouped by degree.
///
/// Each degree is kept lex-descending. The complement (the monomial ideal)
/// is closed under multiplication by variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurvivorTable {
    num_variables: usize,
    per_degree: Vec<Vec<Monomial>>,
}

impl SurvivorTable {
    /// Validates and canonicalizes a table.
    pub fn new(num_variables: usize, per_degree: Vec<Vec<Monomial>>) -> Result<Self, OracleError> {
        let mut per_degree = per_degree;
        while per_degree.len() > 1 && per_degree.last().is_some_and(|d| d.is_empty()) {
            per_degree.pop();
        }
        for layer in per_degree.iter_mut() {
            layer.sort_by(|a, b| b.cmp(a));
            layer.dedup();
        }
        if per_degree.first().map(|d| d.as_slice()) != Some(&[Monomial::one(num_variables)][..]) {
            return Err(OracleError::NotAnOrderIdeal(
                "degree 0 must hold exactly the unit".into(),
            ));
        }
        let table = SurvivorTable {
            num_variables,
            per_degree,
        };
        for (d, layer) in table.per_degree.iter().enumerate() {
            for m in layer {
                if m.num_variables() != num_variables || m.degree() != d as u64 {
                    return Err(OracleError::NotAnOrderIdeal(format!(
                        "{m} misplaced in degree {d}"
                    )));
                }
                if let Some(div) = m.lower_divisors().find(|div| !table.contains(div)) {
                    return Err(OracleError::NotAnOrderIdeal(format!(
                        "{m} survives but its divisor {div} does not"
                    )));
                }
            }
        }
        Ok(table)
    }

    /// Every monomial of degree at most `top` survives.
    pub fn full(vars: usize, top: usize) -> Self {
        let per_degree = (0..=top)
            .map(|d| monomials_of_degree(vars, d as u32))
            .collect();
        SurvivorTable {
            num_variables: vars,
            per_degree,
        }
    }

    /// Survivors of the monomial complete intersection `(x1^c1, ..., xr^cr)`:
    /// monomials with every exponent below its cap.
    pub fn from_exponent_caps(caps: &[u32]) -> Self {
        let vars = caps.len();
        let top: u32 = caps.iter().map(|&c| c.saturating_sub(1)).sum();
        let per_degree = (0..=top)
            .map(|d| {
                monomials_of_degree(vars, d)
                    .into_iter()
                    .filter(|m| m.exponents().iter().zip(caps).all(|(e, c)| e < c))
                    .collect()
            })
            .collect();
        SurvivorTable {
            num_variables: vars,
            per_degree,
        }
    }

    pub fn num_variables(&self) -> usize {
        self.num_variables
    }

    pub fn per_degree(&self) -> &[Vec<Monomial>] {
        &self.per_degree
    }

    pub fn top_degree(&self) -> usize {
        self.per_degree.len() - 1
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        let d = m.degree() as usize;
        self.per_degree
            .get(d)
            .is_some_and(|layer| layer.binary_search_by(|x| m.cmp(x)).is_ok())
    }

    /// Dimension of each graded piece.
    pub fn hilbert_function(&self) -> HVector {
        let counts = self.per_degree.iter().map(|l| l.len() as u64).collect();
        HVector::new(counts).expect("an order ideal containing 1 has a valid h-vector")
    }

    /// Survivors killed by every variable, counted by degree.
    pub fn socle_vector(&self) -> SocleVector {
        let entries = self
            .per_degree
            .iter()
            .map(|layer| {
                layer
                    .iter()
                    .filter(|m| (0..self.num_variables).all(|v| !self.contains(&m.times(v))))
                    .count() as u64
            })
            .collect();
        SocleVector { entries }
    }
}

/// Socle dimensions `(s_0, ..., s_e)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SocleVector {
    pub entries: Vec<u64>,
}

impl SocleVector {
    /// One-dimensional socle sitting in the top degree.
    pub fn is_gorenstein(&self) -> bool {
        match self.entries.split_last() {
            Some((&1, rest)) => rest.iter().all(|&s| s == 0),
            _ => false,
        }
    }
}

/// Realizes `h` as the Hilbert function of a lex-segment quotient in
/// `h_1` variables: in each degree keep the `h_d` lex-smallest monomials
/// whose lower divisors all survived.
///
/// Fails exactly when `h` is not an O-sequence, at the same degree
/// [`crate::sequences::o_sequence_violation`] reports.
pub fn lex_segment_realization(h: &HVector) -> Result<SurvivorTable, OracleError> {
    let vars = h.codimension() as usize;
    let mut per_degree = vec![vec![Monomial::one(vars)]];
    for d in 1..=h.socle_degree() {
        let prev: BTreeSet<&Monomial> = per_degree[d - 1].iter().collect();
        let candidates: BTreeSet<Monomial> = per_degree[d - 1]
            .iter()
            .flat_map(|m| (0..vars).map(move |v| m.times(v)))
            .filter(|m| m.lower_divisors().all(|div| prev.contains(&div)))
            .collect();
        let needed = h.get(d);
        if (candidates.len() as u64) < needed {
            return Err(OracleError::NotAnOSequence {
                degree: d,
                available: candidates.len(),
                needed,
            });
        }
        // ascending iteration yields the lex-smallest first
        let mut layer: Vec<Monomial> = candidates.into_iter().take(needed as usize).collect();
        layer.reverse();
        per_degree.push(layer);
    }
    Ok(SurvivorTable {
        num_variables: vars,
        per_degree,
    })
}

/// Largest number of degree-`(i+1)` monomials all of whose degree-`i`
/// divisors lie in an `n`-element set of degree-`i` monomials in `r`
/// variables, found by trying every such set.
pub fn max_growth_bruteforce(n: u64, i: u64, r: usize) -> Result<u64, OracleError> {
    max_growth_bruteforce_with(n, i, r, DEFAULT_SUBSET_BUDGET, Execution::default())
}

pub fn max_growth_bruteforce_with(
    n: u64,
    i: u64,
    r: usize,
    budget: u64,
    exec: Execution,
) -> Result<u64, OracleError> {
    assert!(
        n >= 1 && i >= 1 && r >= 1,
        "max_growth_bruteforce needs positive arguments"
    );
    let lower = monomials_of_degree(r, i as u32);
    let available = lower.len() as u64;
    if available < n {
        return Err(OracleError::TooFewMonomials {
            n,
            degree: i,
            vars: r,
            available,
        });
    }
    match binom_u64(available, n) {
        Some(s) if s <= budget => {}
        s => {
            return Err(OracleError::InfeasibleSearch {
                subsets: s.map_or_else(
                    || crate::binomial::binom(available, n).to_string(),
                    |s| s.to_string(),
                ),
                budget,
            })
        }
    }

    let upper = monomials_of_degree(r, i as u32 + 1);
    let upper_index = |m: &Monomial| {
        upper
            .iter()
            .position(|x| x == m)
            .expect("multiple is a monomial")
    };
    let need: Vec<u8> = upper
        .iter()
        .map(|u| u.lower_divisors().count() as u8)
        .collect();
    let covers: Vec<Vec<usize>> = lower
        .iter()
        .map(|m| (0..r).map(|v| upper_index(&m.times(v))).collect())
        .collect();

    struct Search<'a> {
        covers: &'a [Vec<usize>],
        missing: Vec<u8>,
        covered: u64,
        best: u64,
    }
    impl Search<'_> {
        fn add(&mut self, m: usize) {
            for &u in &self.covers[m] {
                self.missing[u] -= 1;
                if self.missing[u] == 0 {
                    self.covered += 1;
                }
            }
        }
        fn remove(&mut self, m: usize) {
            for &u in &self.covers[m] {
                if self.missing[u] == 0 {
                    self.covered -= 1;
                }
                self.missing[u] += 1;
            }
        }
        fn run(&mut self, next: usize, left: usize) {
            if left == 0 {
                self.best = self.best.max(self.covered);
                return;
            }
            let total = self.covers.len();
            for m in next..=total - left {
                self.add(m);
                self.run(m + 1, left - 1);
                self.remove(m);
            }
        }
    }

    let n = n as usize;
    let firsts: Vec<usize> = (0..=lower.len() - n).collect();
    let best = par::map(exec, firsts, |first| {
        let mut s = Search {
            covers: &covers,
            missing: need.clone(),
            covered: 0,
            best: 0,
        };
        s.add(first);
        s.run(first + 1, n - 1);
        s.best
    })
    .into_iter()
    .max()
    .unwrap_or(0);
    Ok(best)
}

/// h-vector of `k[x,y,z]/(x^a, y^b, z^c)`: the coefficients of
/// `(1 + ... + t^{a-1})(1 + ... + t^{b-1})(1 + ... + t^{c-1})`.
pub fn complete_intersection_hvector(a: u64, b: u64, c: u64) -> Result<HVector, OracleError> {
    let mut coeffs = vec![1u64];
    for len in [a, b, c] {
        if len < 2 {
            return Err(OracleError::ExponentTooSmall(len));
        }
        let len = len as usize;
        let mut next = vec![0u64; coeffs.len() + len - 1];
        for (k, &x) in coeffs.iter().enumerate() {
            for slot in &mut next[k..k + len] {
                *slot += x;
            }
        }
        coeffs = next;
    }
    Ok(HVector::new(coeffs)?)
}
