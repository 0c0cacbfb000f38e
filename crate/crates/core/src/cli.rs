//! The `sfi` command line: `sfi <area> <verb> [flags]`.
//!
//! Every command produces a [`Report`]; `--format json` prints it as JSON,
//! the default prints a short text rendering of the same values. Exit codes
//! are 0 for success, 1 when a mathematical check fails and 2 for input
//! errors.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::gjs::{GradedAlgebra, GradedElement};
use crate::graph::{read_graph, FairGraph};
use crate::group::{read_cocycle, validate_cocycle, TwistedGroupAlgebra};
use crate::loops::{branching_multiplicity, LoopAlgebra};
use crate::modular::{classify_type, is_tracial, qg_spectrum, spectrum_bruteforce, spectrum_exact, trace_bounds};
use crate::scalar::{parse_list, quantum_int_from_delta, BaseParam, QScalar};
use crate::tl::TemperleyLieb;

pub const LOOP_DEGREE_CAP: usize = 6;
pub const HORIZON_CAP: usize = 12;
pub const GRAM_DEGREE_CAP: usize = 4;
pub const TL_DEGREE_CAP: usize = 8;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "sfi", version, about = "Exact invariants of Temperley-Lieb, loop and twisted group algebras")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Lift the desk-scale caps on degrees and horizons.
    #[arg(long, global = true)]
    pub unsafe_large: bool,
    #[command(subcommand)]
    pub area: Area,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Area {
    /// Fair and balanced graphs.
    Graph {
        #[command(subcommand)]
        verb: GraphVerb,
    },
    /// Loop algebras at a basepoint.
    Loop {
        #[command(subcommand)]
        verb: LoopVerb,
    },
    /// Temperley-Lieb relations and Jones-Wenzl projectors.
    Tl {
        #[command(subcommand)]
        verb: TlVerb,
    },
    /// The graded algebra with the Bacher-Walker product.
    Gjs {
        #[command(subcommand)]
        verb: GjsVerb,
    },
    /// Twisted group algebras.
    Group {
        #[command(subcommand)]
        verb: GroupVerb,
    },
    /// Quantum-group eigenvalue spectra.
    Qg {
        #[command(subcommand)]
        verb: QgVerb,
    },
}

#[derive(Subcommand, Debug)]
pub enum GraphVerb {
    /// Check fairness and balance.
    Validate { path: PathBuf },
    /// Modular spectrum and factor type at a basepoint.
    Spectrum {
        path: PathBuf,
        #[arg(long)]
        basepoint: Option<String>,
        /// Also run the brute-force oracle up to this loop length.
        #[arg(long)]
        max_len: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
pub enum LoopVerb {
    /// Loop counts, trace bounds and isotypic dimensions.
    Tables {
        path: PathBuf,
        #[arg(long)]
        basepoint: Option<String>,
        #[arg(long, default_value_t = 4)]
        n: usize,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct ParamArgs {
    /// Base parameter r > 0; q = r², δ = r² + r⁻².
    #[arg(long)]
    pub r: Option<String>,
    /// Loop value δ directly.
    #[arg(long)]
    pub delta: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum TlVerb {
    /// Verify the TL relations and Jones-Wenzl properties up to `n` strands.
    Check {
        #[command(flatten)]
        param: ParamArgs,
        #[arg(long, default_value_t = 6)]
        n: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum GjsVerb {
    /// Gram matrix of the trace form and its positivity.
    Gram {
        #[command(flatten)]
        param: ParamArgs,
        #[arg(long, alias = "n", default_value_t = 4)]
        max_degree: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum GroupVerb {
    /// Validate a cocycle file and check the star structure and positivity.
    Check { path: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum QgVerb {
    /// Spectrum generated by the eigenvalues of F*F.
    Spectrum {
        /// Comma-separated rationals.
        #[arg(long)]
        eigs: String,
    },
}

/// A machine-readable command result.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub pass: bool,
    #[serde(skip)]
    text: Vec<String>,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = self.text.join("\n");
        s.push('\n');
        s
    }
}

/// What a command wrote and how it exited.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses arguments (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_INPUT,
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: rendered,
                    stderr: String::new(),
                }
            };
        }
    };
    match execute(&cli) {
        Ok(report) => Outcome {
            code: if report.pass { EXIT_OK } else { EXIT_VIOLATION },
            stdout: match cli.format {
                Format::Json => report.to_json(),
                Format::Text => report.to_text(),
            },
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: EXIT_INPUT,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

pub fn execute(cli: &Cli) -> Result<Report> {
    let caps = Caps {
        unsafe_large: cli.unsafe_large,
    };
    match &cli.area {
        Area::Graph {
            verb: GraphVerb::Validate { path },
        } => graph_validate(path),
        Area::Graph {
            verb: GraphVerb::Spectrum {
                path,
                basepoint,
                max_len,
            },
        } => graph_spectrum(path, basepoint.as_deref(), *max_len, caps),
        Area::Loop {
            verb: LoopVerb::Tables { path, basepoint, n },
        } => loop_tables(path, basepoint.as_deref(), *n, caps),
        Area::Tl {
            verb: TlVerb::Check { param, n },
        } => tl_check(param, *n, caps),
        Area::Gjs {
            verb: GjsVerb::Gram { param, max_degree },
        } => gjs_gram(param, *max_degree, caps),
        Area::Group {
            verb: GroupVerb::Check { path },
        } => group_check(path),
        Area::Qg {
            verb: QgVerb::Spectrum { eigs },
        } => qg(eigs),
    }
}

#[derive(Clone, Copy)]
struct Caps {
    unsafe_large: bool,
}

impl Caps {
    fn check(self, what: &'static str, requested: usize, cap: usize) -> Result<()> {
        if requested > cap && !self.unsafe_large {
            return Err(Error::CapExceeded { what, requested, cap });
        }
        Ok(())
    }
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn read_file(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))
}

fn file_inputs(path: &Path, bytes: &[u8], extra: Value) -> Value {
    let mut v = json!({ "path": path.display().to_string(), "sha256": sha256_hex(bytes) });
    if let (Value::Object(m), Value::Object(e)) = (&mut v, extra) {
        m.extend(e);
    }
    v
}

/// Inputs without a file are digested through their canonical JSON.
fn param_inputs(extra: Value) -> Value {
    let digest = sha256_hex(extra.to_string().as_bytes());
    let mut v = extra;
    if let Value::Object(m) = &mut v {
        m.insert("sha256".into(), Value::String(digest));
    }
    v
}

fn s<T: ToString>(x: T) -> Value {
    Value::String(x.to_string())
}

fn load_graph(path: &Path) -> Result<(FairGraph, Vec<u8>)> {
    let bytes = read_file(path)?;
    Ok((read_graph(&bytes)?, bytes))
}

fn require_valid(g: &FairGraph) -> Result<()> {
    let bad = g.validate();
    if !bad.is_empty() {
        return Err(Error::Precondition(format!(
            "graph is not fair and balanced ({} violations); run `sfi graph validate` for details",
            bad.len()
        )));
    }
    Ok(())
}

fn resolve_basepoint(g: &FairGraph, basepoint: Option<&str>) -> Result<usize> {
    match basepoint {
        Some(v) => g.vertex(v),
        None => {
            if g.vertices().is_empty() {
                Err(Error::Graph("graph has no vertices".into()))
            } else {
                Ok(0)
            }
        }
    }
}

fn graph_validate(path: &Path) -> Result<Report> {
    let (g, bytes) = load_graph(path)?;
    let violations = g.validate();
    let pass = violations.is_empty();
    let mut text = vec![format!(
        "{} vertices, {} edges, δ = {}",
        g.vertices().len(),
        g.edges().len(),
        g.delta()
    )];
    if pass {
        text.push("valid: fair and balanced".into());
    } else {
        text.push(format!("invalid: {} violations", violations.len()));
        for v in &violations {
            text.push(format!("  {}", serde_json::to_string(v).expect("violation serializes")));
        }
    }
    Ok(Report {
        command: "graph validate".into(),
        inputs: file_inputs(path, &bytes, json!({})),
        results: json!({
            "vertices": g.vertices().len(),
            "edges": g.edges().len(),
            "delta": s(g.delta()),
            "violations": violations,
        }),
        pass,
        text,
    })
}

fn graph_spectrum(path: &Path, basepoint: Option<&str>, max_len: Option<usize>, caps: Caps) -> Result<Report> {
    if let Some(l) = max_len {
        caps.check("brute-force horizon", l, HORIZON_CAP)?;
    }
    let (g, bytes) = load_graph(path)?;
    require_valid(&g)?;
    let v = resolve_basepoint(&g, basepoint)?;
    let a = LoopAlgebra::at(&g, v);
    let spec = spectrum_exact(&a)?;
    let ftype = classify_type(&spec);
    let tracial = is_tracial(&a)?;
    let mut summary = format!("{spec}, type {ftype}");
    if tracial {
        summary.push_str(", tracial");
    }
    let mut results = json!({
        "basepoint": g.vertex_id(v),
        "spectrum": spec,
        "factor_type": ftype,
        "tracial": tracial,
        "note": "positive part of the modular spectrum; the point 0 is omitted",
    });
    let mut pass = true;
    if let Some(l) = max_len {
        let brute = spectrum_bruteforce(&a, l)?;
        let contained = brute.is_contained_in(&spec)?;
        let agrees = brute.agrees_with(&spec)?;
        pass = contained && agrees;
        summary.push_str(if agrees {
            ", oracle agrees"
        } else {
            ", oracle disagrees"
        });
        results["bruteforce"] = json!({
            "horizon": l,
            "spectrum": brute,
            "contained": contained,
            "agrees": agrees,
        });
    }
    let mut text = vec![summary];
    for w in &spec.witness {
        text.push(format!("  cycle [{}]: weight {}", w.source, w.weight));
    }
    Ok(Report {
        command: "graph spectrum".into(),
        inputs: file_inputs(
            path,
            &bytes,
            json!({ "basepoint": g.vertex_id(v), "max_len": max_len }),
        ),
        results,
        pass,
        text,
    })
}

#[derive(Serialize)]
struct DegreeRow {
    n: usize,
    loop_count: usize,
    delta_2n: QScalar,
    count_pass: bool,
    trace: QScalar,
    inverse_trace: QScalar,
    delta_n: QScalar,
    trace_pass: bool,
    decomposition: usize,
    decomposition_pass: bool,
}

#[derive(Serialize)]
struct IsotypicRow {
    k: usize,
    dim: usize,
    bound: QScalar,
    pass: bool,
}

fn loop_tables(path: &Path, basepoint: Option<&str>, n_max: usize, caps: Caps) -> Result<Report> {
    caps.check("loop degree", n_max, LOOP_DEGREE_CAP)?;
    let (g, bytes) = load_graph(path)?;
    require_valid(&g)?;
    let v = resolve_basepoint(&g, basepoint)?;
    let a = LoopAlgebra::at(&g, v);
    let delta = g.delta();
    let iso = (0..=n_max)
        .into_par_iter()
        .map(|k| {
            let dim = a.isotypic_dim(k)?;
            let qk = quantum_int_from_delta(k as u32 + 1, &delta);
            let bound = &qk * &qk;
            let pass = QScalar::from_int(dim as i64) <= bound;
            Ok(IsotypicRow { k, dim, bound, pass })
        })
        .collect::<Result<Vec<_>>>()?;
    let rows: Vec<DegreeRow> = (0..=n_max)
        .into_par_iter()
        .map(|n| {
            let count = a.loop_count(n);
            let delta_2n = delta.pow(2 * n as i32);
            let t = trace_bounds(&a, n);
            let decomposition: usize = (0..=n)
                .map(|k| branching_multiplicity(n, k) as usize * iso[k].dim)
                .sum();
            DegreeRow {
                n,
                loop_count: count,
                count_pass: QScalar::from_int(count as i64) <= delta_2n,
                delta_2n,
                trace: t.trace,
                inverse_trace: t.inverse_trace,
                delta_n: t.bound,
                trace_pass: t.pass,
                decomposition,
                decomposition_pass: decomposition == count,
            }
        })
        .collect();
    let pass = rows.iter().all(|r| r.count_pass && r.trace_pass && r.decomposition_pass)
        && iso.iter().all(|r| r.pass);
    let mut text = vec![format!("basepoint {}, δ = {delta}", g.vertex_id(v))];
    text.push("n  loops  Tr Δ  Tr Δ⁻¹  δⁿ  pass".into());
    for r in &rows {
        text.push(format!(
            "{}  {}  {}  {}  {}  {}",
            r.n,
            r.loop_count,
            r.trace,
            r.inverse_trace,
            r.delta_n,
            r.count_pass && r.trace_pass && r.decomposition_pass
        ));
    }
    text.push("k  dim  [k+1]²  pass".into());
    for r in &iso {
        text.push(format!("{}  {}  {}  {}", r.k, r.dim, r.bound, r.pass));
    }
    Ok(Report {
        command: "loop tables".into(),
        inputs: file_inputs(path, &bytes, json!({ "basepoint": g.vertex_id(v), "n": n_max })),
        results: json!({ "degrees": rows, "isotypic": iso }),
        pass,
        text,
    })
}

fn parse_param(p: &ParamArgs) -> Result<(QScalar, Value)> {
    match (&p.r, &p.delta) {
        (Some(r), None) => {
            let bp = BaseParam::new(r.parse()?)?;
            let v = json!({ "r": s(bp.r()) });
            Ok((bp.delta(), v))
        }
        (None, Some(d)) => {
            let d: QScalar = d.parse()?;
            if !d.is_positive() {
                return Err(Error::InvalidParam(format!("δ must be positive, got {d}")));
            }
            let v = json!({ "delta": s(&d) });
            Ok((d, v))
        }
        _ => Err(Error::InvalidParam("exactly one of --r or --delta is required".into())),
    }
}

#[derive(Serialize)]
struct Check {
    name: String,
    n: usize,
    pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<QScalar>,
}

fn tl_checks(tl: &TemperleyLieb, n: usize) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let e = |i| tl.generator(i, n);
    let mut push = |name: &str, pass: bool, value: Option<QScalar>| {
        out.push(Check {
            name: name.into(),
            n,
            pass,
            value,
        })
    };
    let mut square = true;
    let mut braid = true;
    let mut far = true;
    for i in 1..n {
        let ei = e(i)?;
        square &= tl.compose(&ei, &ei)? == ei.scale(tl.delta());
        for j in 1..n {
            let ej = e(j)?;
            if i.abs_diff(j) == 1 {
                braid &= tl.compose_all(&[&ei, &ej, &ei])? == ei;
            } else if i.abs_diff(j) >= 2 {
                far &= tl.compose(&ei, &ej)? == tl.compose(&ej, &ei)?;
            }
        }
    }
    push("e_i^2 = δ e_i", square, None);
    push("e_i e_{i±1} e_i = e_i", braid, None);
    push("e_i e_j = e_j e_i for |i-j| ≥ 2", far, None);

    let jw = tl.jones_wenzl(n)?;
    push("jw idempotent", tl.compose(&jw, &jw)? == *jw, None);
    let mut killed = true;
    for i in 1..n {
        let ei = e(i)?;
        killed &= tl.compose(&ei, &jw)?.is_zero() && tl.compose(&jw, &ei)?.is_zero();
    }
    push("e_i jw = jw e_i = 0", killed, None);
    let tr = tl.markov_trace(&jw)?;
    let expected = tl.quantum_int(n as u32 + 1);
    push("tr(jw) = [n+1]", tr == expected, Some(tr.clone()));
    let spherical = tl.left_trace(&jw)? == tr && tl.right_trace(&jw)? == tr;
    push("left trace = right trace = markov trace", spherical, None);
    push("jw* = jw", jw.star() == *jw, None);
    Ok(out)
}

fn tl_check(param: &ParamArgs, n_max: usize, caps: Caps) -> Result<Report> {
    caps.check("Temperley-Lieb degree", n_max, TL_DEGREE_CAP)?;
    let (delta, pv) = parse_param(param)?;
    let tl = TemperleyLieb::new(delta.clone());
    for k in 1..=n_max as u32 + 1 {
        if tl.quantum_int(k).is_zero() {
            return Err(Error::VanishingQuantumInt(k));
        }
    }
    let checks: Vec<Check> = (1..=n_max)
        .into_par_iter()
        .map(|n| tl_checks(&tl, n))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let qints: Vec<Value> = (1..=n_max as u32 + 1).map(|k| s(tl.quantum_int(k))).collect();
    let pass = checks.iter().all(|c| c.pass);
    let failed: Vec<&Check> = checks.iter().filter(|c| !c.pass).collect();
    let mut text = vec![format!("δ = {delta}, n ≤ {n_max}: {} checks", checks.len())];
    text.push(format!(
        "quantum integers [1..{}]: {}",
        n_max + 1,
        qints.iter().map(|v| v.as_str().unwrap_or_default()).collect::<Vec<_>>().join(", ")
    ));
    if pass {
        text.push("all TL and JW relations pass".into());
    } else {
        for c in failed {
            text.push(format!("FAIL n={}: {}", c.n, c.name));
        }
    }
    let mut inputs = pv;
    inputs["n"] = json!(n_max);
    Ok(Report {
        command: "tl check".into(),
        inputs: param_inputs(inputs),
        results: json!({ "delta": s(&delta), "quantum_ints": qints, "checks": checks }),
        pass,
        text,
    })
}

fn gjs_gram(param: &ParamArgs, max_degree: usize, caps: Caps) -> Result<Report> {
    caps.check("Gram degree", max_degree, GRAM_DEGREE_CAP)?;
    let (delta, pv) = parse_param(param)?;
    let alg = GradedAlgebra::new(delta.clone());
    let gram = alg.gram_matrix_capped(max_degree, if caps.unsafe_large { usize::MAX } else { GRAM_DEGREE_CAP })?;
    let psd = gram.psd();
    let minors = gram.leading_minors();
    let cup = GradedElement::cup2();
    let cup_trace = alg.gr_trace(&alg.bw_product(&cup, &cup)?);
    let symmetric = gram.matrix.is_symmetric();
    let pass = psd.psd && symmetric && cup_trace == delta;
    let basis: Vec<String> = gram.basis.iter().map(|p| p.to_paren_string()).collect();
    let rows: Vec<Vec<Value>> = gram
        .matrix
        .to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(s).collect())
        .collect();
    let mut text = vec![format!(
        "δ = {delta}, degrees ≤ {max_degree}: {}×{} Gram matrix",
        basis.len(),
        basis.len()
    )];
    for (b, r) in basis.iter().zip(&rows) {
        let cells: Vec<&str> = r.iter().map(|v| v.as_str().unwrap_or_default()).collect();
        text.push(format!("  {b:>8}  {}", cells.join(" ")));
    }
    text.push(format!(
        "leading minors: {}",
        minors.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(", ")
    ));
    text.push(format!("tr(cup ⋆ cup) = {cup_trace}"));
    text.push(if psd.psd {
        format!("PSD confirmed (rank {})", psd.rank)
    } else {
        "not positive semidefinite".into()
    });
    let mut inputs = pv;
    inputs["max_degree"] = json!(max_degree);
    Ok(Report {
        command: "gjs gram".into(),
        inputs: param_inputs(inputs),
        results: json!({
            "delta": s(&delta),
            "basis": basis,
            "matrix": rows,
            "symmetric": symmetric,
            "leading_minors": minors.iter().map(s).collect::<Vec<_>>(),
            "psd": psd.psd,
            "rank": psd.rank,
            "pivots": psd.pivots.iter().map(s).collect::<Vec<_>>(),
            "cup_cup_trace": s(&cup_trace),
        }),
        pass,
        text,
    })
}

fn group_check(path: &Path) -> Result<Report> {
    let bytes = read_file(path)?;
    let (g, mu) = read_cocycle(&bytes)?;
    let report = validate_cocycle(&g, &mu);
    let mut text = vec![format!("group of order {}", g.order())];
    let mut results = json!({
        "order": g.order(),
        "identity": g.identity(),
        "cocycle": report,
        "cocycle_valid": report.is_valid(),
    });
    let pass = if report.is_valid() {
        let alg = TwistedGroupAlgebra::new(g, mu)?;
        let mu_j = alg.mu_j_failures();
        let assoc = alg.associativity_failures();
        let pos = alg.positivity_check();
        let center = alg.center_dimension();
        let commutative = alg.is_commutative();
        let j: Vec<String> = alg.j().iter().map(|x| x.to_string()).collect();
        text.push("cocycle valid".into());
        text.push(format!("j = [{}]", j.join(", ")));
        text.push(format!(
            "star compatibility: {}",
            if mu_j.is_empty() { "holds for all pairs" } else { "FAILS" }
        ));
        text.push(format!(
            "associativity: {}",
            if assoc.is_empty() { "holds" } else { "FAILS" }
        ));
        text.push(format!(
            "positivity: {}",
            if pos.positive_definite { "positive definite" } else { "FAILS" }
        ));
        text.push(format!("center dimension: {center}"));
        text.push(format!("commutative: {commutative}"));
        let ok = mu_j.is_empty() && assoc.is_empty() && pos.positive_definite && pos.hermitian;
        let r = results.as_object_mut().expect("object");
        r.insert("j".into(), json!(j));
        r.insert("mu_j_failures".into(), json!(mu_j));
        r.insert("associativity_failures".into(), json!(assoc));
        r.insert("positivity".into(), json!(pos));
        r.insert("center_dimension".into(), json!(center));
        r.insert("commutative".into(), json!(commutative));
        ok
    } else {
        text.push(format!(
            "cocycle invalid: {} normalization failures, {} cocycle failures",
            report.normalization_failures.len(),
            report.cocycle_failures.len()
        ));
        false
    };
    Ok(Report {
        command: "group check".into(),
        inputs: file_inputs(path, &bytes, json!({})),
        results,
        pass,
        text,
    })
}

fn qg(eigs: &str) -> Result<Report> {
    let values = parse_list(eigs)?;
    let (spec, kac) = qg_spectrum(&values)?;
    let text = vec![format!("{spec}, {}", if kac { "Kac" } else { "non-Kac" })];
    Ok(Report {
        command: "qg spectrum".into(),
        inputs: param_inputs(json!({ "eigs": values.iter().map(s).collect::<Vec<_>>() })),
        results: json!({ "spectrum": spec, "kac": kac, "factor_type": classify_type(&spec) }),
        pass: true,
        text,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        run(std::iter::once("sfi").chain(args.iter().copied()))
    }

    #[test]
    fn qg_examples() {
        let out = run_args(&["qg", "spectrum", "--eigs", "2,1/2"]);
        assert_eq!(out.code, 0);
        assert_eq!(out.stdout, "cyclic λ=1/2, non-Kac\n");
        let out = run_args(&["qg", "spectrum", "--eigs", "2,3"]);
        assert_eq!(out.code, 2);
        assert!(out.stderr.contains("trace balance"));
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_args(&["tl", "check"]).code, 2);
        assert_eq!(run_args(&["tl", "check", "--r", "2", "--delta", "3"]).code, 2);
        assert_eq!(run_args(&["nope"]).code, 2);
        assert_eq!(run_args(&["--help"]).code, 0);
    }

    #[test]
    fn caps_enforced() {
        let out = run_args(&["gjs", "gram", "--r", "2", "--max-degree", "6"]);
        assert_eq!(out.code, 2);
        assert!(out.stderr.contains("cap"));
    }

    #[test]
    fn tl_and_gjs_pass() {
        let out = run_args(&["tl", "check", "--r", "2", "--n", "4"]);
        assert_eq!(out.code, 0, "{}", out.stdout);
        assert!(out.stdout.contains("all TL and JW relations pass"));
        let out = run_args(&["gjs", "gram", "--r", "1", "--max-degree", "4"]);
        assert_eq!(out.code, 0);
        assert!(out.stdout.contains("PSD confirmed"));
        let out = run_args(&["gjs", "gram", "--delta", "6/5", "--max-degree", "6", "--unsafe-large"]);
        assert_eq!(out.code, 1);
    }
}
