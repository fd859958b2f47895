//! JSON-in / JSON-out command-line front end.
//!
//! The binary reads one JSON request (from `--input FILE` or standard
//! input), runs one command against the library, and prints one JSON
//! document to standard output:
//!
//! * on success, a job report `{version, command, request, options,
//!   result, timing_ms}` where `request` echoes the parsed input and
//!   `options` records the effective tolerances / seed / sample count
//!   (exit code 0);
//! * on failure, `{"error": {"code", "message", "path"?}}` where `path`
//!   points at the offending request field when the request itself was
//!   malformed (exit code 1 for input errors, 2 for mathematical or
//!   numerical failures).
//!
//! Reports are deterministic: identical requests (and seeds) produce
//! byte-identical output except for the `timing_ms` field. Complex
//! scalars are printed as `[re, im]` pairs and accepted on input either
//! in that form or as bare real numbers.

use std::io::Read;
use std::path::PathBuf;
use std::time::Instant;

use clap::Parser;
use serde_json::{json, Map, Value};

use crate::coords::{TraceVector, VnTraceVector};
use crate::error::{Error, Result};
use crate::invariants;
use crate::magnus::{self, Fiber, FiberStatus, OrbitRep};
use crate::mat2::{Mat2, C64};
use crate::structure::{self, Move, Witness};
use crate::tuple::{self, NTuple, SL2_DET_TOL};
use crate::word::Word;
use crate::Tolerances;

/// Every command the binary understands, with a one-line summary
/// (shown by `--help` and by the unknown-command error).
pub const COMMANDS: &[(&str, &str)] = &[
    (
        "invariants",
        "conjugation invariants nu, sigma, delta and the trace fingerprint",
    ),
    (
        "stability",
        "decide stability (= irreducibility) of an SL(2,C) tuple",
    ),
    (
        "irreducible",
        "alias of stability reporting the flag as `irreducible`",
    ),
    (
        "triangularize",
        "decide simultaneous triangularizability and return a conjugator",
    ),
    (
        "normal-form",
        "conjugate a nondegenerate pair tuple into transposition-symmetric form",
    ),
    (
        "fix-generators",
        "replace generators so that sigma_12 and nu_1 are nonzero",
    ),
    (
        "conjugator",
        "find g with g a g^-1 = b for irreducible tuples, if one exists",
    ),
    (
        "magnus-forward",
        "evaluate the trace coordinates z of an SL(2,C) tuple",
    ),
    (
        "magnus-invert",
        "enumerate the fiber of the trace map over a coordinate vector",
    ),
    (
        "magnus-fiber-check",
        "round-trip a tuple through forward + invert and compare",
    ),
    (
        "vn-forward",
        "evaluate the extended trace coordinates of a general 2x2 tuple",
    ),
    ("vn-invert", "enumerate the fiber of the extended trace map"),
    (
        "cs-sample",
        "sample commutator-style word traces to certify irreducibility",
    ),
    (
        "sample",
        "generate seeded random tuples for experimentation",
    ),
];

/// Command-line arguments. Flags override the request's `options` object.
#[derive(Parser, Debug)]
#[command(
    name = "sl2orbit",
    version,
    about = "Trace invariants, stability, and trace-map fibers for tuples of 2x2 complex matrices",
    after_help = command_help()
)]
pub struct Args {
    /// Command to run (see the list below).
    pub command: String,
    /// Read the JSON request from FILE instead of standard input.
    #[arg(long, value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Base tolerance for zero tests and residuals (default 1e-9).
    #[arg(long, value_name = "X")]
    pub tol: Option<f64>,
    /// Branch-decision tolerance for near-degenerate data (default 1e-8).
    #[arg(long = "tol-branch", value_name = "X")]
    pub tol_branch: Option<f64>,
    /// Seed for the commands that draw random data (default 7).
    #[arg(long, value_name = "N")]
    pub seed: Option<u64>,
    /// Sample count for `cs-sample` (default 200) and `sample` (default 1).
    #[arg(long, value_name = "N")]
    pub samples: Option<usize>,
}

fn command_help() -> String {
    let mut out = String::from("Commands:\n");
    for (name, summary) in COMMANDS {
        out.push_str(&format!("  {name:<20} {summary}\n"));
    }
    out.push_str("\nThe request is a JSON object; see schemas/jobrequest.schema.json.");
    out
}

/// Effective options after merging defaults, the request's `options`
/// object, and command-line flags (highest precedence last).
#[derive(Clone, Debug)]
pub struct Options {
    pub tols: Tolerances,
    pub seed: u64,
    /// Requested sample count; `None` means the per-command default.
    pub samples: Option<usize>,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            tols: Tolerances::default(),
            seed: 7,
            samples: None,
        }
    }
}

/// Run one command end to end and return the process exit code, printing
/// the report (or the error object) to standard output.
pub fn run(args: &Args) -> i32 {
    let outcome = read_request_text(args).and_then(|text| evaluate(args, &text));
    match outcome {
        Ok(report) => {
            println!("{}", pretty(&report));
            0
        }
        Err(err) => {
            println!("{}", pretty(&error_value(&err)));
            err.exit_code()
        }
    }
}

/// Parse the request text, dispatch the command, and assemble the report.
/// Split from [`run`] so that tests can drive it without process I/O.
pub fn evaluate(args: &Args, request_text: &str) -> Result<Value> {
    let command = canonical_command(&args.command)?;
    let request: Value =
        serde_json::from_str(request_text).map_err(|err| Error::InvalidRequest {
            path: "$".into(),
            message: format!("request is not valid JSON: {err}"),
        })?;
    if !request.is_object() {
        return Err(invalid("$", "the request must be a JSON object"));
    }
    check_embedded_command(&request, command)?;
    let opts = resolve_options(&request, args)?;
    let started = Instant::now();
    let result = dispatch(command, &request, &opts)?;
    let timing_ms = started.elapsed().as_secs_f64() * 1e3;
    Ok(json!({
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "request": request,
        "options": options_value(&opts),
        "result": result,
        "timing_ms": timing_ms,
    }))
}

fn pretty(value: &Value) -> String {
    serde_json::to_string_pretty(value).expect("report serialization cannot fail")
}

fn error_value(err: &Error) -> Value {
    let mut body = Map::new();
    body.insert("code".into(), json!(err.code()));
    body.insert("message".into(), json!(err.to_string()));
    if let Error::InvalidRequest { path, .. } = err {
        body.insert("path".into(), json!(path));
    }
    json!({ "error": body })
}

fn invalid(path: impl Into<String>, message: impl Into<String>) -> Error {
    Error::InvalidRequest {
        path: path.into(),
        message: message.into(),
    }
}

fn read_request_text(args: &Args) -> Result<String> {
    match &args.input {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|err| invalid("$", format!("cannot read {}: {err}", path.display()))),
        None => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|err| invalid("$", format!("cannot read standard input: {err}")))?;
            Ok(text)
        }
    }
}

fn canonical_command(name: &str) -> Result<&'static str> {
    COMMANDS
        .iter()
        .map(|(cmd, _)| *cmd)
        .find(|cmd| *cmd == name)
        .ok_or_else(|| {
            let known: Vec<&str> = COMMANDS.iter().map(|(cmd, _)| *cmd).collect();
            invalid(
                "command",
                format!(
                    "unknown command '{name}'; expected one of: {}",
                    known.join(", ")
                ),
            )
        })
}

/// A request may carry its own `command` field (handy for self-contained
/// fixture files); when present it must agree with the command-line one.
fn check_embedded_command(request: &Value, command: &str) -> Result<()> {
    match request.get("command") {
        None => Ok(()),
        Some(Value::String(embedded)) if embedded == command => Ok(()),
        Some(Value::String(embedded)) => Err(invalid(
            "command",
            format!("request says '{embedded}' but the command line says '{command}'"),
        )),
        Some(_) => Err(invalid("command", "must be a string")),
    }
}

fn resolve_options(request: &Value, args: &Args) -> Result<Options> {
    let mut opts = Options::default();
    if let Some(section) = request.get("options") {
        let object = section
            .as_object()
            .ok_or_else(|| invalid("options", "must be an object"))?;
        for (key, value) in object {
            match key.as_str() {
                "tol" => opts.tols.tol = positive_f64(value, "options.tol")?,
                "tol_branch" => opts.tols.branch = positive_f64(value, "options.tol_branch")?,
                "seed" => opts.seed = unsigned(value, "options.seed")?,
                "samples" => {
                    opts.samples = Some(unsigned(value, "options.samples")? as usize);
                }
                other => {
                    return Err(invalid(
                        format!("options.{other}"),
                        "unknown option; expected tol, tol_branch, seed, or samples",
                    ));
                }
            }
        }
    }
    if let Some(tol) = args.tol {
        ensure_positive(tol, "--tol")?;
        opts.tols.tol = tol;
    }
    if let Some(branch) = args.tol_branch {
        ensure_positive(branch, "--tol-branch")?;
        opts.tols.branch = branch;
    }
    if let Some(seed) = args.seed {
        opts.seed = seed;
    }
    if let Some(samples) = args.samples {
        opts.samples = Some(samples);
    }
    Ok(opts)
}

fn options_value(opts: &Options) -> Value {
    json!({
        "tol": opts.tols.tol,
        "tol_branch": opts.tols.branch,
        "seed": opts.seed,
        "samples": opts.samples,
    })
}

fn ensure_positive(value: f64, path: &str) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(invalid(path, "must be a positive finite number"))
    }
}

// ---------------------------------------------------------------------------
// Request parsing
// ---------------------------------------------------------------------------

fn finite_f64(value: &Value, path: &str) -> Result<f64> {
    let x = value
        .as_f64()
        .ok_or_else(|| invalid(path, "expected a number"))?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(invalid(path, "must be finite"))
    }
}

fn positive_f64(value: &Value, path: &str) -> Result<f64> {
    let x = finite_f64(value, path)?;
    ensure_positive(x, path)?;
    Ok(x)
}

fn unsigned(value: &Value, path: &str) -> Result<u64> {
    value
        .as_u64()
        .ok_or_else(|| invalid(path, "expected a nonnegative integer"))
}

/// A complex scalar: either a bare real number or a two-element
/// `[re, im]` array.
fn parse_complex(value: &Value, path: &str) -> Result<C64> {
    match value {
        Value::Number(_) => Ok(C64::new(finite_f64(value, path)?, 0.0)),
        Value::Array(items) if items.len() == 2 => {
            let re = finite_f64(&items[0], &format!("{path}[0]"))?;
            let im = finite_f64(&items[1], &format!("{path}[1]"))?;
            Ok(C64::new(re, im))
        }
        _ => Err(invalid(
            path,
            "expected a number or a two-element [re, im] array",
        )),
    }
}

fn parse_matrix(value: &Value, path: &str) -> Result<Mat2> {
    let rows = value
        .as_array()
        .filter(|rows| rows.len() == 2)
        .ok_or_else(|| invalid(path, "expected a 2x2 array of complex entries"))?;
    let mut entries = [C64::new(0.0, 0.0); 4];
    for (r, row_value) in rows.iter().enumerate() {
        let row = row_value
            .as_array()
            .filter(|row| row.len() == 2)
            .ok_or_else(|| {
                invalid(
                    format!("{path}[{r}]"),
                    "expected a row of two complex entries",
                )
            })?;
        for (c, entry) in row.iter().enumerate() {
            entries[2 * r + c] = parse_complex(entry, &format!("{path}[{r}][{c}]"))?;
        }
    }
    Ok(Mat2::new(entries[0], entries[1], entries[2], entries[3]))
}

/// A tuple object `{"n"?: N, "matrices": [...], "sl2"?: bool}`. The
/// unimodularity flag is rederived from the determinants; a request
/// claiming `"sl2": true` for matrices that are not unimodular within
/// the determinant tolerance is rejected.
fn parse_tuple(value: &Value, path: &str, opts: &Options) -> Result<NTuple> {
    let object = value
        .as_object()
        .ok_or_else(|| invalid(path, "expected a tuple object with a `matrices` field"))?;
    for key in object.keys() {
        if !matches!(key.as_str(), "n" | "matrices" | "sl2") {
            return Err(invalid(
                format!("{path}.{key}"),
                "unknown field; expected n, matrices, or sl2",
            ));
        }
    }
    let matrices = object
        .get("matrices")
        .ok_or_else(|| invalid(format!("{path}.matrices"), "missing required field"))?
        .as_array()
        .ok_or_else(|| {
            invalid(
                format!("{path}.matrices"),
                "expected an array of 2x2 matrices",
            )
        })?;
    if matrices.is_empty() {
        return Err(invalid(
            format!("{path}.matrices"),
            "must contain at least one matrix",
        ));
    }
    let mut entries = Vec::with_capacity(matrices.len());
    for (index, matrix) in matrices.iter().enumerate() {
        entries.push(parse_matrix(matrix, &format!("{path}.matrices[{index}]"))?);
    }
    if let Some(declared) = object.get("n") {
        let n = unsigned(declared, &format!("{path}.n"))? as usize;
        if n != entries.len() {
            return Err(invalid(
                format!("{path}.n"),
                format!("declared n = {n} but matrices has length {}", entries.len()),
            ));
        }
    }
    let tuple = NTuple::with_tol(entries, opts.tols.tol.max(SL2_DET_TOL))
        .map_err(|err| invalid(format!("{path}.matrices"), err.to_string()))?;
    if let Some(flag) = object.get("sl2") {
        let claimed = flag
            .as_bool()
            .ok_or_else(|| invalid(format!("{path}.sl2"), "expected a boolean"))?;
        if claimed && !tuple.is_sl2() {
            return Err(invalid(
                format!("{path}.sl2"),
                "the matrices are not unimodular within the determinant tolerance",
            ));
        }
    }
    Ok(tuple)
}

/// Reject request fields outside `allowed` (plus the always-legal
/// `command` and `options`), so typos fail loudly with a path.
fn reject_unknown_fields(request: &Value, allowed: &[&str]) -> Result<()> {
    let object = request.as_object().expect("checked by evaluate");
    for key in object.keys() {
        let legal = key == "command" || key == "options" || allowed.contains(&key.as_str());
        if !legal {
            let mut expected: Vec<&str> = vec!["command", "options"];
            expected.extend_from_slice(allowed);
            return Err(invalid(
                key.clone(),
                format!("unknown field; expected one of: {}", expected.join(", ")),
            ));
        }
    }
    Ok(())
}

fn required<'v>(request: &'v Value, key: &str) -> Result<&'v Value> {
    request
        .get(key)
        .ok_or_else(|| invalid(key, "missing required field"))
}

fn tuple_request(request: &Value, opts: &Options) -> Result<NTuple> {
    reject_unknown_fields(request, &["tuple"])?;
    parse_tuple(required(request, "tuple")?, "tuple", opts)
}

/// Coordinate list plus the (optional, derivable) `n`: the trace map has
/// 3n-3 coordinates, the extended map 4n-3.
fn parse_coords(request: &Value) -> Result<(Option<usize>, Vec<C64>)> {
    let raw = required(request, "z")?
        .as_array()
        .ok_or_else(|| invalid("z", "expected an array of complex coordinates"))?;
    let mut coords = Vec::with_capacity(raw.len());
    for (index, value) in raw.iter().enumerate() {
        coords.push(parse_complex(value, &format!("z[{index}]"))?);
    }
    let n = match request.get("n") {
        Some(value) => Some(unsigned(value, "n")? as usize),
        None => None,
    };
    Ok((n, coords))
}

fn trace_vector_request(request: &Value) -> Result<TraceVector> {
    reject_unknown_fields(request, &["n", "z"])?;
    let (declared, coords) = parse_coords(request)?;
    let n = match declared {
        Some(n) => n,
        None if coords.len() % 3 == 0 && !coords.is_empty() => coords.len() / 3 + 1,
        None => {
            return Err(invalid(
                "z",
                format!(
                    "length {} is not 3n-3 for any n; declare n explicitly",
                    coords.len()
                ),
            ));
        }
    };
    if coords.len() != 3 * n.max(1) - 3 {
        return Err(invalid(
            "z",
            format!(
                "expected 3n-3 = {} coordinates for n = {n}, got {}",
                3 * n.max(1) - 3,
                coords.len()
            ),
        ));
    }
    TraceVector::new(n, coords).map_err(|err| invalid("z", err.to_string()))
}

fn vn_vector_request(request: &Value) -> Result<VnTraceVector> {
    reject_unknown_fields(request, &["n", "z"])?;
    let (declared, coords) = parse_coords(request)?;
    let n = match declared {
        Some(n) => n,
        None if (coords.len() + 3) % 4 == 0 && coords.len() >= 5 => coords.len().div_ceil(4),
        None => {
            return Err(invalid(
                "z",
                format!(
                    "length {} is not 4n-3 for any n >= 2; declare n explicitly",
                    coords.len()
                ),
            ));
        }
    };
    if n < 2 || coords.len() != 4 * n - 3 {
        return Err(invalid(
            "z",
            format!(
                "expected 4n-3 coordinates for n = {n}, got {}",
                coords.len()
            ),
        ));
    }
    VnTraceVector::new(n, coords).map_err(|err| invalid("z", err.to_string()))
}

// ---------------------------------------------------------------------------
// Response serialization
// ---------------------------------------------------------------------------

fn complex_value(z: C64) -> Value {
    json!([z.re, z.im])
}

fn matrix_value(m: &Mat2) -> Value {
    json!([
        [complex_value(m.a), complex_value(m.b)],
        [complex_value(m.c), complex_value(m.d)],
    ])
}

fn tuple_value(a: &NTuple) -> Value {
    json!({
        "n": a.n(),
        "matrices": a.entries().iter().map(matrix_value).collect::<Vec<_>>(),
        "sl2": a.is_sl2(),
    })
}

fn word_value(word: &Word) -> Value {
    json!(word.letters())
}

fn witness_value(witness: &Witness) -> Value {
    match witness {
        Witness::Sigma { j, k, value } => json!({
            "kind": "sigma", "j": j, "k": k, "value": complex_value(*value),
        }),
        Witness::Delta { j, k, l, value } => json!({
            "kind": "delta", "j": j, "k": k, "l": l, "value": complex_value(*value),
        }),
    }
}

fn optional<T>(item: Option<T>, render: impl Fn(T) -> Value) -> Value {
    item.map(render).unwrap_or(Value::Null)
}

fn move_value(step: &Move) -> Value {
    match step {
        Move::Transpose { i, j } => json!({ "kind": "transpose", "i": i, "j": j }),
        Move::Shift {
            target,
            source,
            exponent,
        } => json!({
            "kind": "shift", "target": target, "source": source, "exponent": exponent,
        }),
    }
}

fn orbit_value(orbit: &OrbitRep) -> Value {
    json!({
        "pattern": orbit.pattern,
        "residual": orbit.residual,
        "tuple": tuple_value(&orbit.tuple),
    })
}

fn fiber_value(fiber: &Fiber) -> Value {
    let status = match fiber.status {
        FiberStatus::NonemptyFinite => "nonempty-finite",
        FiberStatus::Empty => "empty",
        FiberStatus::Undetermined => "undetermined",
    };
    json!({
        "status": status,
        "orbits": fiber.orbits.iter().map(orbit_value).collect::<Vec<_>>(),
        "witness": optional(fiber.witness.as_ref(), orbit_value),
        "witness_indices": optional(fiber.witness_indices, |(j, l)| json!([j, l])),
        "notes": fiber.notes,
    })
}

fn trace_vector_value(z: &TraceVector) -> Value {
    json!({
        "n": z.n(),
        "z": z.coords().iter().copied().map(complex_value).collect::<Vec<_>>(),
    })
}

fn vn_vector_value(z: &VnTraceVector) -> Value {
    json!({
        "n": z.n(),
        "z": z.coords().iter().copied().map(complex_value).collect::<Vec<_>>(),
    })
}

// ---------------------------------------------------------------------------
// Command dispatch
// ---------------------------------------------------------------------------

fn dispatch(command: &'static str, request: &Value, opts: &Options) -> Result<Value> {
    match command {
        "invariants" => cmd_invariants(request, opts),
        "stability" => cmd_stability(request, opts),
        "irreducible" => cmd_irreducible(request, opts),
        "triangularize" => cmd_triangularize(request, opts),
        "normal-form" => cmd_normal_form(request, opts),
        "fix-generators" => cmd_fix_generators(request, opts),
        "conjugator" => cmd_conjugator(request, opts),
        "magnus-forward" => cmd_magnus_forward(request, opts),
        "magnus-invert" => cmd_magnus_invert(request, opts),
        "magnus-fiber-check" => cmd_fiber_check(request, opts),
        "vn-forward" => cmd_vn_forward(request, opts),
        "vn-invert" => cmd_vn_invert(request, opts),
        "cs-sample" => cmd_cs_sample(request, opts),
        "sample" => cmd_sample(request, opts),
        _ => unreachable!("canonical_command admits only known names"),
    }
}

fn cmd_invariants(request: &Value, opts: &Options) -> Result<Value> {
    let a = tuple_request(request, opts)?;
    let n = a.n();
    let mut nu = Vec::new();
    for j in 1..=n {
        nu.push(json!({ "j": j, "value": complex_value(invariants::nu(&a, j)?) }));
    }
    let mut sigma = Vec::new();
    let mut delta = Vec::new();
    for j in 1..=n {
        for k in j + 1..=n {
            sigma.push(json!({
                "j": j, "k": k, "value": complex_value(invariants::sigma(&a, j, k)?),
            }));
            for l in k + 1..=n {
                delta.push(json!({
                    "j": j, "k": k, "l": l,
                    "value": complex_value(invariants::delta(&a, j, k, l)?),
                }));
            }
        }
    }
    let fingerprint = if a.is_sl2() {
        let words = invariants::fingerprint_words(n);
        let values = invariants::fingerprint(&a)?;
        json!({
            "words": words.iter().map(word_value).collect::<Vec<_>>(),
            "values": values.into_iter().map(complex_value).collect::<Vec<_>>(),
        })
    } else {
        Value::Null
    };
    Ok(json!({
        "n": n,
        "sl2": a.is_sl2(),
        "nu": nu,
        "sigma": sigma,
        "delta": delta,
        "fingerprint": fingerprint,
    }))
}

fn cmd_stability(request: &Value, opts: &Options) -> Result<Value> {
    let a = tuple_request(request, opts)?;
    let report = structure::is_stable(&a, &opts.tols)?;
    Ok(json!({
        "stable": report.stable,
        "witness": optional(report.witness.as_ref(), witness_value),
    }))
}

fn cmd_irreducible(request: &Value, opts: &Options) -> Result<Value> {
    let a = tuple_request(request, opts)?;
    let report = structure::is_irreducible(&a, &opts.tols)?;
    Ok(json!({
        "irreducible": report.stable,
        "witness": optional(report.witness.as_ref(), witness_value),
    }))
}

fn cmd_triangularize(request: &Value, opts: &Options) -> Result<Value> {
    let a = tuple_request(request, opts)?;
    let report = structure::triangularize(&a, &opts.tols)?;
    Ok(json!({
        "triangularizable": report.triangularizable,
        "conjugator": optional(report.conjugator.as_ref(), matrix_value),
        "witness": optional(report.witness.as_ref(), witness_value),
        "max_subdiagonal": report.max_subdiagonal,
    }))
}

fn cmd_normal_form(request: &Value, opts: &Options) -> Result<Value> {
    let a = tuple_request(request, opts)?;
    let (normalized, conjugator) = structure::transposition_normal_form(&a, &opts.tols)?;
    Ok(json!({
        "tuple": tuple_value(&normalized),
        "conjugator": matrix_value(&conjugator),
    }))
}

fn cmd_fix_generators(request: &Value, opts: &Options) -> Result<Value> {
    let a = tuple_request(request, opts)?;
    let (fixed, change) = structure::fix_generators(&a, &opts.tols)?;
    Ok(json!({
        "tuple": tuple_value(&fixed),
        "moves": change.moves.iter().map(move_value).collect::<Vec<_>>(),
    }))
}

fn cmd_conjugator(request: &Value, opts: &Options) -> Result<Value> {
    reject_unknown_fields(request, &["a", "b"])?;
    let a = parse_tuple(required(request, "a")?, "a", opts)?;
    let b = parse_tuple(required(request, "b")?, "b", opts)?;
    let g = structure::conjugator(&a, &b, &opts.tols)?;
    Ok(json!({
        "conjugate": g.is_some(),
        "g": optional(g.as_ref(), matrix_value),
    }))
}

fn cmd_magnus_forward(request: &Value, opts: &Options) -> Result<Value> {
    let a = tuple_request(request, opts)?;
    let z = magnus::forward_tn(&a)?;
    Ok(trace_vector_value(&z))
}

fn cmd_magnus_invert(request: &Value, opts: &Options) -> Result<Value> {
    let z = trace_vector_request(request)?;
    let fiber = magnus::invert_tn(&z, &opts.tols)?;
    Ok(fiber_value(&fiber))
}

fn cmd_fiber_check(request: &Value, opts: &Options) -> Result<Value> {
    let a = tuple_request(request, opts)?;
    let report = magnus::fiber_cross_check(&a, &opts.tols)?;
    Ok(json!({
        "pass": report.pass,
        "orbit_count": report.orbit_count,
        "matched_pattern": report.matched_pattern,
        "matched_distance": report.matched_distance,
        "max_residual": report.max_residual,
        "failures": report.failures,
    }))
}

fn cmd_vn_forward(request: &Value, opts: &Options) -> Result<Value> {
    let a = tuple_request(request, opts)?;
    let z = magnus::forward_that_n(&a)?;
    Ok(vn_vector_value(&z))
}

fn cmd_vn_invert(request: &Value, opts: &Options) -> Result<Value> {
    let z = vn_vector_request(request)?;
    let fiber = magnus::invert_that_n(&z, &opts.tols)?;
    Ok(fiber_value(&fiber))
}

fn cmd_cs_sample(request: &Value, opts: &Options) -> Result<Value> {
    let a = tuple_request(request, opts)?;
    let samples = opts.samples.unwrap_or(200);
    let evidence = structure::culler_shalen_sample(&a, samples, opts.seed)?;
    Ok(json!({
        "samples": evidence.samples,
        "max_deviation": evidence.max_deviation,
        "witness": optional(evidence.witness.as_ref(), |(word, trace)| json!({
            "word": word_value(word),
            "trace": complex_value(*trace),
        })),
        "certified": evidence.certified,
    }))
}

fn cmd_sample(request: &Value, opts: &Options) -> Result<Value> {
    reject_unknown_fields(request, &["n", "kind"])?;
    let n = unsigned(required(request, "n")?, "n")? as usize;
    if n == 0 {
        return Err(invalid("n", "must be at least 1"));
    }
    let kind = match request.get("kind") {
        None => "sl2",
        Some(Value::String(kind)) if kind == "sl2" || kind == "general" => kind.as_str(),
        Some(_) => return Err(invalid("kind", "expected \"sl2\" or \"general\"")),
    };
    let count = opts.samples.unwrap_or(1);
    let mut tuples = Vec::with_capacity(count);
    for index in 0..count {
        let seed = opts.seed.wrapping_add(index as u64);
        let draw = if kind == "sl2" {
            tuple::random_sl2_tuple(seed, n)
        } else {
            tuple::random_tuple(seed, n)
        };
        tuples.push(tuple_value(&draw));
    }
    Ok(json!({ "kind": kind, "n": n, "tuples": tuples }))
}
