//! Combinatorics of Hilbert functions of standard graded artinian algebras.
//!
//! * [`binomial`]: i-binomial expansions and the Macaulay growth bound.
//! * [`sequences`]: h-vectors, O-/SI-sequence predicates and the Gorenstein
//!   classifier.
//! * [`oracle`]: monomial-ideal oracles (lex-segment realizations, socles,
//!   brute-force growth, complete intersections).
//! * [`decomposition`]: subtrahend decompositions and the codimension-3
//!   inequality checks.
//! * [`enumeration`]: exhaustive generators of h-vectors.
//! * [`cli`]: the `hilbert` command-line front end.

pub mod binomial;
pub mod cli;
pub mod decomposition;
pub mod enumeration;
pub mod oracle;
pub mod par;
pub mod sequences;

pub use binomial::{binom, expand, macaulay_bound, BinomialExpansion, BinomialTerm};
pub use decomposition::{
    find_stanley_decomposition, refute_non_si, verify_proof_inequalities, ProofTrace,
    RefutationReport, StanleyDecomposition,
};
pub use enumeration::{count_by_degree, enumerate, EnumerationSpec, Filter};
pub use oracle::{
    complete_intersection_hvector, lex_segment_realization, max_growth_bruteforce, Monomial,
    SocleVector, SurvivorTable,
};
pub use par::Execution;
pub use sequences::{
    classify_gorenstein, first_difference, first_half, is_differentiable, is_o_sequence,
    is_si_sequence, is_symmetric, is_unimodal, ClassificationReport, GorensteinVerdict, HVector,
    Reason, Verdict,
};
