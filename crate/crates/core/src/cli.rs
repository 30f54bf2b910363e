//! The `hilbert` command line.
//!
//! Exit codes: 0 success, 1 negative result, 2 usage or precondition
//! error, 3 undecided classification, 4 an outcome the mathematics rules
//! out (refutation survivor or failing proof trace).

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::binomial::expand;
use crate::decomposition::{
    find_stanley_decomposition, refute_non_si, verify_proof_inequalities, DecompositionError,
};
use crate::enumeration::{count_by_degree, enumerate, EnumerationSpec, Filter, DEFAULT_ENTRY_CAP};
use crate::oracle::{lex_segment_realization, OracleError};
use crate::sequences::{
    classify_gorenstein, first_half, is_differentiable, is_o_sequence, is_si_sequence,
    is_symmetric, is_unimodal, join, GorensteinVerdict, HVector, Verdict,
};

pub const SCHEMA_VERSION: &str = "1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNDECIDED: i32 = 3;
pub const EXIT_IMPOSSIBLE: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "hilbert", version, about = "Hilbert function combinatorics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// i-binomial expansion of n and the growth bound n^<i>
    Expand {
        n: u64,
        i: u64,
        #[arg(long)]
        json: bool,
    },
    /// Run every sequence predicate
    Check {
        #[arg(value_parser = parse_hvector)]
        hvector: HVector,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether the vector is a Gorenstein h-vector
    Classify {
        #[arg(value_parser = parse_hvector)]
        hvector: HVector,
        #[arg(long)]
        json: bool,
    },
    /// Lex-segment monomial quotient with this Hilbert function
    Realize {
        #[arg(value_parser = parse_hvector)]
        hvector: HVector,
        #[arg(long)]
        json: bool,
    },
    /// Socle vector of the lex-segment realization
    Socle {
        #[arg(value_parser = parse_hvector)]
        hvector: HVector,
        #[arg(long)]
        json: bool,
    },
    /// Smallest SI subtrahend leaving an O-sequence residual
    Decompose {
        #[arg(value_parser = parse_hvector)]
        hvector: HVector,
        #[arg(long, default_value_t = 1)]
        pivot: usize,
        #[arg(long)]
        json: bool,
    },
    /// Show that no subtrahend works for a symmetric non-SI vector
    Refute {
        #[arg(value_parser = parse_hvector)]
        hvector: HVector,
        #[arg(long)]
        json: bool,
    },
    /// Stream h-vectors as JSON lines
    Enumerate {
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        codim: u64,
        #[arg(long, default_value_t = DEFAULT_ENTRY_CAP)]
        cap: u64,
        #[arg(long, default_value = "si", value_parser = parse_filter)]
        filter: Filter,
        #[arg(long)]
        count_only: bool,
    },
}

fn parse_hvector(s: &str) -> Result<HVector, String> {
    s.parse::<HVector>().map_err(|e| e.to_string())
}

fn parse_filter(s: &str) -> Result<Filter, String> {
    s.parse()
}

/// Envelope shared by every `--json` output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub command: String,
    pub input: Value,
    pub verdicts: BTreeMap<String, Verdict>,
    pub certificate: Option<Value>,
}

impl Report {
    fn new(command: &str, input: Value) -> Self {
        Report {
            version: SCHEMA_VERSION.to_string(),
            command: command.to_string(),
            input,
            verdicts: BTreeMap::new(),
            certificate: None,
        }
    }

    fn verdict(mut self, name: &str, v: Verdict) -> Self {
        self.verdicts.insert(name.to_string(), v);
        self
    }

    fn certificate(mut self, c: Value) -> Self {
        self.certificate = Some(c);
        self
    }
}

fn flag(holds: bool) -> Verdict {
    Verdict {
        holds,
        first_violation: None,
    }
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Io<'_> {
    fn line(&mut self, s: impl AsRef<str>) {
        let _ = writeln!(self.out, "{}", s.as_ref());
    }

    fn diag(&mut self, s: impl AsRef<str>) {
        let _ = writeln!(self.err, "{}", s.as_ref());
    }

    fn json(&mut self, v: &impl Serialize) {
        let s = serde_json::to_string(v).expect("reports serialize");
        self.line(s);
    }
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let mut io = Io { out, err };
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(io.out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(io.err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match cli.command {
        Command::Expand { n, i, json } => cmd_expand(&mut io, n, i, json),
        Command::Check { hvector, json } => cmd_check(&mut io, &hvector, json),
        Command::Classify { hvector, json } => cmd_classify(&mut io, &hvector, json),
        Command::Realize { hvector, json } => cmd_realize(&mut io, &hvector, json, false),
        Command::Socle { hvector, json } => cmd_realize(&mut io, &hvector, json, true),
        Command::Decompose {
            hvector,
            pivot,
            json,
        } => cmd_decompose(&mut io, &hvector, pivot, json),
        Command::Refute { hvector, json } => cmd_refute(&mut io, &hvector, json),
        Command::Enumerate {
            degree,
            codim,
            cap,
            filter,
            count_only,
        } => cmd_enumerate(&mut io, degree, codim, cap, filter, count_only),
    }
}

fn cmd_expand(io: &mut Io, n: u64, i: u64, json: bool) -> i32 {
    if n == 0 {
        io.diag("error: n must be positive");
        return EXIT_USAGE;
    }
    if i == 0 {
        io.diag("error: i must be positive");
        return EXIT_USAGE;
    }
    let e = expand(n, i).expect("positive arguments expand");
    let bound = e.macaulay_bound();
    if json {
        let terms: Vec<_> = e.terms().iter().map(|t| [t.top, t.bottom]).collect();
        io.json(
            &Report::new("expand", json!({ "n": n, "i": i }))
                .certificate(json!({ "terms": terms, "bound": bound.to_string() })),
        );
    } else {
        io.line(format!("{n} = {e}; bound = {bound}"));
    }
    EXIT_OK
}

fn predicate_verdicts(h: &HVector) -> Vec<(&'static str, Verdict)> {
    let si = is_si_sequence(h);
    let si_verdict = Verdict {
        holds: si.holds,
        first_violation: si.reasons.iter().find_map(|r| match r {
            crate::sequences::Reason::NotSymmetric { degree }
            | crate::sequences::Reason::FirstHalfNotDifferentiable { degree } => Some(*degree),
            _ => None,
        }),
    };
    vec![
        ("o_sequence", is_o_sequence(h)),
        ("symmetric", is_symmetric(h)),
        ("unimodal", is_unimodal(h)),
        (
            "differentiable_first_half",
            is_differentiable(first_half(h.entries())),
        ),
        ("si_sequence", si_verdict),
    ]
}

fn render_verdict(v: &Verdict) -> String {
    match v.first_violation {
        None => v.holds.to_string(),
        Some(d) => format!("{} (degree {d})", v.holds),
    }
}

fn cmd_check(io: &mut Io, h: &HVector, json: bool) -> i32 {
    let verdicts = predicate_verdicts(h);
    if json {
        let report = verdicts
            .iter()
            .fold(Report::new("check", json!(h)), |r, (name, v)| {
                r.verdict(name, *v)
            });
        io.json(&report);
    } else {
        for (name, v) in &verdicts {
            io.line(format!("{name}: {}", render_verdict(v)));
        }
    }
    if verdicts.iter().all(|(_, v)| v.holds) {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    }
}

fn cmd_classify(io: &mut Io, h: &HVector, json: bool) -> i32 {
    let report = classify_gorenstein(h);
    if json {
        let mut out = Report::new("classify", json!(h));
        for (name, v) in predicate_verdicts(h) {
            out = out.verdict(name, v);
        }
        io.json(&out.certificate(serde_json::to_value(&report).expect("serializable")));
    } else {
        io.line(format!("verdict: {}", report.verdict));
        io.line(format!("codimension: {}", report.codimension));
        let reasons: Vec<String> = report.reasons.iter().map(|r| r.to_string()).collect();
        io.line(format!("reasons: {}", reasons.join(", ")));
    }
    match report.verdict {
        GorensteinVerdict::Gorenstein => EXIT_OK,
        GorensteinVerdict::NotGorenstein => EXIT_NEGATIVE,
        GorensteinVerdict::Undecided => EXIT_UNDECIDED,
    }
}

fn cmd_realize(io: &mut Io, h: &HVector, json: bool, socle: bool) -> i32 {
    let command = if socle { "socle" } else { "realize" };
    let table = match lex_segment_realization(h) {
        Ok(t) => t,
        Err(e) => {
            io.diag(format!("error: {e}"));
            let code = match e {
                OracleError::NotAnOSequence { .. } => EXIT_NEGATIVE,
                _ => EXIT_USAGE,
            };
            if json {
                io.json(&Report::new(command, json!(h)).verdict("o_sequence", is_o_sequence(h)));
            }
            return code;
        }
    };
    if socle {
        let s = table.socle_vector();
        if json {
            io.json(
                &Report::new(command, json!(h))
                    .verdict("o_sequence", is_o_sequence(h))
                    .verdict("gorenstein_monomial", flag(s.is_gorenstein()))
                    .certificate(json!({ "socle": s.entries })),
            );
        } else {
            io.line(join(&s.entries));
        }
    } else {
        let degrees: Vec<Vec<String>> = table
            .per_degree()
            .iter()
            .map(|layer| layer.iter().map(|m| m.to_string()).collect())
            .collect();
        if json {
            io.json(
                &Report::new(command, json!(h))
                    .verdict("o_sequence", is_o_sequence(h))
                    .certificate(json!({
                        "num_variables": table.num_variables(),
                        "degrees": degrees,
                    })),
            );
        } else {
            for (d, layer) in degrees.iter().enumerate() {
                io.line(format!("degree {d}: {}", layer.join(", ")));
            }
        }
    }
    EXIT_OK
}

fn decomposition_error(io: &mut Io, e: &DecompositionError) -> i32 {
    io.diag(format!("error: {e}"));
    match e {
        DecompositionError::TraceViolation { .. } => EXIT_IMPOSSIBLE,
        _ => EXIT_USAGE,
    }
}

fn cmd_decompose(io: &mut Io, h: &HVector, pivot: usize, json: bool) -> i32 {
    let found = match find_stanley_decomposition(h, pivot) {
        Ok(found) => found,
        Err(e) => return decomposition_error(io, &e),
    };
    let Some(d) = found else {
        if json {
            io.json(
                &Report::new("decompose", json!(h)).verdict("decomposition_found", flag(false)),
            );
        } else {
            io.line("no decomposition");
        }
        return EXIT_NEGATIVE;
    };
    // the inequality replay applies to pivot 1 of symmetric codimension-3 vectors
    let replay = pivot == 1 && h.codimension() == 3 && is_symmetric(h).holds;
    let traces = if replay {
        match verify_proof_inequalities(h, &d) {
            Ok(t) => t,
            Err(e) => return decomposition_error(io, &e),
        }
    } else {
        Vec::new()
    };
    if json {
        io.json(
            &Report::new("decompose", json!(h))
                .verdict("decomposition_found", flag(true))
                .certificate(json!({ "decomposition": d, "traces": traces })),
        );
    } else {
        io.line(format!(
            "a = {}; residual = {}",
            join(&d.subtrahend),
            join(d.residual_trimmed())
        ));
        for t in &traces {
            let checks: Vec<String> = t
                .checked
                .iter()
                .map(|c| format!("{} {} <= {}", c.label, c.lhs, c.rhs))
                .collect();
            io.line(format!(
                "trace degree {}: {}; {}",
                t.degree,
                t.case,
                checks.join("; ")
            ));
        }
    }
    EXIT_OK
}

fn cmd_refute(io: &mut Io, h: &HVector, json: bool) -> i32 {
    let report = match refute_non_si(h) {
        Ok(r) => r,
        Err(e) => return decomposition_error(io, &e),
    };
    if json {
        io.json(
            &Report::new("refute", json!(h))
                .verdict("refuted", flag(report.is_clean()))
                .certificate(serde_json::to_value(&report).expect("serializable")),
        );
    } else {
        io.line(format!(
            "candidates: {}, survivors: {}",
            report.candidates,
            report.survivors.len()
        ));
        for r in &report.refuted {
            io.line(format!("a = {}: {}", join(&r.subtrahend), r.failure));
        }
        for s in &report.survivors {
            io.line(format!("a = {}: SURVIVES", join(s)));
        }
    }
    if report.is_clean() {
        EXIT_OK
    } else {
        io.diag("error: a candidate subtrahend survived; this indicates a bug");
        EXIT_IMPOSSIBLE
    }
}

#[derive(Serialize)]
struct EnumeratedLine<'a> {
    h: &'a HVector,
}

fn cmd_enumerate(
    io: &mut Io,
    degree: usize,
    codim: u64,
    cap: u64,
    filter: Filter,
    count_only: bool,
) -> i32 {
    if count_only {
        return match count_by_degree(codim, degree, cap, filter) {
            Ok(counts) => {
                let counts: BTreeMap<String, usize> = counts
                    .into_iter()
                    .map(|(e, c)| (e.to_string(), c))
                    .collect();
                io.json(&json!({
                    "version": SCHEMA_VERSION,
                    "codim": codim,
                    "cap": cap,
                    "filter": filter.name(),
                    "counts": counts,
                }));
                EXIT_OK
            }
            Err(e) => {
                io.diag(format!("error: {e}"));
                EXIT_USAGE
            }
        };
    }
    let spec = match EnumerationSpec::new(degree, codim, cap, filter) {
        Ok(s) => s,
        Err(e) => {
            io.diag(format!("error: {e}"));
            return EXIT_USAGE;
        }
    };
    for h in enumerate(&spec) {
        io.json(&EnumeratedLine { h: &h });
    }
    EXIT_OK
}
