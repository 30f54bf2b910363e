//! Acceptance suite. Runs as a plain binary (`harness = false`) so every
//! criterion prints exactly one PASS/FAIL line:
//!
//!     cargo test -p hilbert-core --test acceptance

mod common;

use std::collections::BTreeMap;
use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use hilbert_core::cli;
use hilbert_core::decomposition::{find_stanley_decomposition, refute_non_si};
use hilbert_core::oracle::max_growth_bruteforce_with;
use hilbert_core::sequences::{
    differentiable_violation, is_si_slice, o_sequence_violation, symmetry_violation,
    unimodality_violation,
};
use hilbert_core::{
    classify_gorenstein, complete_intersection_hvector, enumerate, is_o_sequence, is_si_sequence,
    is_symmetric, lex_segment_realization, macaulay_bound, verify_proof_inequalities,
    EnumerationSpec, Execution, Filter, GorensteinVerdict, HVector, SurvivorTable,
};
use num_bigint::BigUint;

type Check = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn hv(xs: &[u64]) -> HVector {
    HVector::new(xs.to_vec()).unwrap()
}

/// Brute force over every n-subset agrees with the closed-form bound.
fn macaulay_oracle() -> Check {
    let mut cases = 0;
    for i in 1..=3u64 {
        ensure(macaulay_bound(0, i) == BigUint::from(0u32), || {
            format!("0^<{i}> != 0")
        })?;
        for n in 1..=6u64 {
            let brute =
                max_growth_bruteforce_with(n, i, n as usize, 100_000_000, Execution::default())
                    .map_err(|e| format!("n={n} i={i}: {e}"))?;
            let bound = macaulay_bound(n, i);
            ensure(BigUint::from(brute) == bound, || {
                format!("n={n} i={i}: brute force {brute}, bound {bound}")
            })?;
            cases += 1;
        }
    }
    Ok(format!("{cases} (n, i) pairs agree"))
}

/// Vectors `(1, h_1, ..., h_e)` with `h_1 <= 3`, `1 <= h_d <= C(d+2, 2)`.
fn for_each_in_realization_box(
    mut f: impl FnMut(&[u64]) -> Result<(), String>,
) -> Result<usize, String> {
    f(&[1])?;
    let mut seen = 1;
    for e in 1..=6usize {
        let caps: Vec<u64> = (0..=e).map(|d| [1, 3, 6, 10, 15, 21, 28][d]).collect();
        let mut v = vec![1u64; e + 1];
        loop {
            f(&v)?;
            seen += 1;
            let mut k = e;
            while k >= 1 && v[k] == caps[k] {
                v[k] = 1;
                k -= 1;
            }
            if k == 0 {
                break;
            }
            v[k] += 1;
        }
    }
    Ok(seen)
}

fn realization_round_trip() -> Check {
    let mut realized = 0usize;
    let total = for_each_in_realization_box(|v| {
        let h = hv(v);
        let verdict = is_o_sequence(&h);
        match lex_segment_realization(&h) {
            Ok(table) => {
                ensure(verdict.holds, || {
                    format!("{h}: realized but not an O-sequence")
                })?;
                ensure(table.hilbert_function() == h, || {
                    format!(
                        "{h}: realization has Hilbert function {}",
                        table.hilbert_function()
                    )
                })?;
                realized += 1;
            }
            Err(err) => {
                let degree = match err {
                    hilbert_core::oracle::OracleError::NotAnOSequence { degree, .. } => degree,
                    other => return Err(format!("{h}: unexpected error {other}")),
                };
                ensure(verdict.first_violation == Some(degree), || {
                    format!(
                        "{h}: oracle fails at {degree}, predicate says {:?}",
                        verdict.first_violation
                    )
                })?;
            }
        }
        Ok(())
    })?;
    // an independent look at the tables themselves on a slice of the box
    for v in [
        &[1, 3, 5, 7, 9][..],
        &[1, 2, 3, 4, 5, 6, 7],
        &[1, 3, 6, 10, 15, 21, 28],
    ] {
        let table = lex_segment_realization(&hv(v)).map_err(|e| e.to_string())?;
        let rebuilt = SurvivorTable::new(table.num_variables(), table.per_degree().to_vec())
            .map_err(|e| format!("{v:?}: {e}"))?;
        ensure(rebuilt == table, || format!("{v:?}: table not canonical"))?;
    }
    Ok(format!("{total} vectors, {realized} O-sequences realized"))
}

fn complete_intersections() -> Check {
    let mut triples = 0;
    for a in 2..=7u64 {
        for b in a..=7 {
            for c in b..=7 {
                let h = complete_intersection_hvector(a, b, c).map_err(|e| e.to_string())?;
                let tag = format!("({a},{b},{c}) -> {h}");
                ensure(is_symmetric(&h).holds, || format!("{tag}: not symmetric"))?;
                ensure(is_si_sequence(&h).holds, || format!("{tag}: not SI"))?;
                let verdict = classify_gorenstein(&h).verdict;
                ensure(verdict == GorensteinVerdict::Gorenstein, || {
                    format!("{tag}: {verdict:?}")
                })?;
                let table = SurvivorTable::from_exponent_caps(&[a as u32, b as u32, c as u32]);
                ensure(table.hilbert_function() == h, || {
                    format!("{tag}: survivor count differs")
                })?;
                ensure(table.socle_vector().is_gorenstein(), || {
                    format!("{tag}: socle not (0,..,0,1)")
                })?;
                triples += 1;
            }
        }
    }
    ensure(triples == 56, || format!("{triples} triples"))?;
    Ok("56 triples symmetric, SI, Gorenstein, socle (0,...,0,1)".into())
}

fn si_catalog(max_degree: usize) -> Vec<HVector> {
    (0..=max_degree)
        .flat_map(|e| enumerate(&EnumerationSpec::new(e, 3, 25, Filter::Si).unwrap()))
        .collect()
}

fn decompositions_exist() -> Check {
    let mut cases: BTreeMap<String, usize> = BTreeMap::new();
    let catalog = si_catalog(8);
    for h in &catalog {
        let d = find_stanley_decomposition(h, 1)
            .map_err(|e| format!("{h}: {e}"))?
            .ok_or_else(|| format!("{h}: no decomposition"))?;
        ensure(d.is_valid(), || format!("{h}: invalid decomposition {d:?}"))?;
        ensure(d.residual[1] == 2, || {
            format!("{h}: residual starts {:?}", &d.residual[..2])
        })?;
        let rev: Vec<u64> = d.subtrahend.iter().rev().copied().collect();
        ensure(rev == d.subtrahend, || {
            format!("{h}: subtrahend {:?} not symmetric", d.subtrahend)
        })?;
        let traces = verify_proof_inequalities(h, &d).map_err(|e| format!("{h}: {e}"))?;
        for t in traces {
            ensure(t.checked.iter().all(|c| c.holds), || {
                format!("{h}: failing trace {t:?}")
            })?;
            *cases.entry(t.case.to_string()).or_default() += 1;
        }
    }
    Ok(format!(
        "{} SI vectors decomposed; traces {cases:?}",
        catalog.len()
    ))
}

fn refutations_clean() -> Check {
    let mut vectors = 0;
    let mut candidates = 0;
    for e in 0..=8 {
        for h in enumerate(&EnumerationSpec::new(e, 3, 25, Filter::SymmetricNotSi).unwrap()) {
            let report = refute_non_si(&h).map_err(|err| format!("{h}: {err}"))?;
            ensure(report.is_clean(), || {
                format!("{h}: survivors {:?}", report.survivors)
            })?;
            ensure(report.refuted.len() == report.candidates, || {
                format!("{h}: refutations missing")
            })?;
            let verdict = classify_gorenstein(&h).verdict;
            ensure(verdict == GorensteinVerdict::NotGorenstein, || {
                format!("{h}: {verdict:?}")
            })?;
            let (mut out, mut err) = (Vec::new(), Vec::new());
            let code = cli::run(["hilbert", "refute", &h.to_string()], &mut out, &mut err);
            ensure(code == cli::EXIT_OK, || {
                format!("hilbert refute {h} exited {code}")
            })?;
            vectors += 1;
            candidates += report.candidates;
        }
    }
    Ok(format!(
        "{vectors} symmetric non-SI vectors, {candidates} candidates, 0 survivors"
    ))
}

/// SI counts per socle degree 0..=8 at entry cap 25, codimensions 1, 2, 3.
const SI_COUNTS: [(u64, [usize; 9]); 3] = [
    (1, [0, 1, 1, 1, 1, 1, 1, 1, 1]),
    (2, [0, 0, 1, 1, 2, 2, 3, 3, 4]),
    (3, [0, 0, 1, 1, 4, 4, 11, 11, 26]),
];

fn dual_generators() -> Check {
    let mut observed = Vec::new();
    for (r, golden) in SI_COUNTS {
        let mut counts = [0usize; 9];
        for (e, slot) in counts.iter_mut().enumerate() {
            let spec = EnumerationSpec::new(e, r, 25, Filter::Si).unwrap();
            let fast = enumerate(&spec);
            let naive = common::naive_enumerate(e, r, 25, Filter::Si);
            ensure(fast == naive, || {
                format!("r={r} e={e}: {} vs {} vectors", fast.len(), naive.len())
            })?;
            *slot = fast.len();
        }
        observed.push((r, counts));
        ensure(counts == golden, || {
            format!("r={r}: counts {counts:?}, golden {golden:?}")
        })?;
    }
    Ok(format!("counts {observed:?}"))
}

fn definition_implications() -> Check {
    let mut v = [0u64; 8];
    let mut checked = 0u64;
    let mut differentiable = 0u64;
    let mut si = 0u64;
    for len in 1..=8usize {
        let cap = |k: usize| if k == 1 { 4 } else { 15 };
        v[0] = 1;
        v[1..len].fill(0);
        loop {
            let s = &v[..len];
            checked += 1;
            if differentiable_violation(s).is_none() {
                differentiable += 1;
                if let Some(g) = o_sequence_violation(s) {
                    return Err(format!(
                        "{s:?} differentiable, growth fails at {}",
                        g.degree
                    ));
                }
            }
            if is_si_slice(s) {
                si += 1;
                ensure(unimodality_violation(s).is_none(), || {
                    format!("{s:?} SI, not unimodal")
                })?;
                ensure(o_sequence_violation(s).is_none(), || {
                    format!("{s:?} SI, not an O-sequence")
                })?;
                ensure(symmetry_violation(s).is_none(), || {
                    format!("{s:?} SI, not symmetric")
                })?;
            }
            let mut k = len - 1;
            while k >= 1 && v[k] == cap(k) {
                v[k] = 0;
                k -= 1;
            }
            if k == 0 {
                break;
            }
            v[k] += 1;
        }
    }
    Ok(format!(
        "{checked} vectors, {differentiable} differentiable, {si} SI, 0 counterexamples"
    ))
}

const GOLDENS: [(&str, &[&str]); 5] = [
    ("expand_4_2", &["expand", "4", "2"]),
    ("check_1_3_4_3_1", &["check", "1,3,4,3,1"]),
    ("classify_1_13_12_13_1", &["classify", "1,13,12,13,1"]),
    ("decompose_1_3_4_3_1", &["decompose", "1,3,4,3,1"]),
    ("realize_1_2_2", &["realize", "1,2,2"]),
];

fn cli_goldens() -> Check {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    for (name, args) in GOLDENS {
        let want =
            std::fs::read(dir.join(format!("{name}.txt"))).map_err(|e| format!("{name}: {e}"))?;
        let got = Command::new(env!("CARGO_BIN_EXE_hilbert"))
            .args(args)
            .output()
            .map_err(|e| format!("{name}: {e}"))?;
        ensure(got.stdout == want, || {
            format!(
                "{name}: got {:?}, want {:?}",
                String::from_utf8_lossy(&got.stdout),
                String::from_utf8_lossy(&want)
            )
        })?;
    }
    Ok(format!("{} goldens byte-identical", GOLDENS.len()))
}

fn run(number: usize, name: &str, limit: Duration, f: fn() -> Check) -> bool {
    let start = Instant::now();
    let outcome = panic::catch_unwind(AssertUnwindSafe(f))
        .unwrap_or_else(|p| Err(format!("panicked: {:?}", p.downcast_ref::<String>())));
    let elapsed = start.elapsed();
    let outcome = outcome.and_then(|detail| {
        if elapsed <= limit {
            Ok(detail)
        } else {
            Err(format!("{detail}; over the {limit:?} limit"))
        }
    });
    let (tag, detail) = match &outcome {
        Ok(d) => ("PASS", d),
        Err(d) => ("FAIL", d),
    };
    println!(
        "[{tag}] {number}. {name} ({:.1}s): {detail}",
        elapsed.as_secs_f64()
    );
    outcome.is_ok()
}

fn main() -> ExitCode {
    let min = |m: u64| Duration::from_secs(60 * m);
    let criteria: [Criterion; 8] = [
        ("growth bound equals brute force", min(1), macaulay_oracle),
        ("lex-segment round trip", min(2), realization_round_trip),
        (
            "complete intersections are Gorenstein",
            Duration::from_secs(5),
            complete_intersections,
        ),
        (
            "SI vectors decompose, traces hold",
            min(10),
            decompositions_exist,
        ),
        (
            "symmetric non-SI vectors refuted",
            min(10),
            refutations_clean,
        ),
        (
            "optimized and naive SI enumeration agree",
            min(5),
            dual_generators,
        ),
        (
            "differentiable, SI, unimodal implications",
            min(2),
            definition_implications,
        ),
        ("CLI goldens", Duration::from_secs(10), cli_goldens),
    ];
    let mut failed = 0;
    for (k, (name, limit, f)) in criteria.into_iter().enumerate() {
        if !run(k + 1, name, limit, f) {
            failed += 1;
        }
    }
    println!("acceptance: {} passed, {failed} failed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
