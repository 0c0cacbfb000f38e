//! C ABI for `sfi-core`.
//!
//! Conventions:
//!
//! * Every fallible function returns an [`SfiStatus`]; results come back
//!   through out-pointers. On failure [`sfi_last_error`] describes the
//!   problem for the calling thread.
//! * Graphs are opaque [`SfiGraph`] handles released with [`sfi_graph_free`].
//! * Exact numbers cross the boundary as NUL-terminated strings (`"p/q"`).
//!   Strings returned by this library are owned by the caller and must be
//!   released with [`sfi_string_free`].
//! * Panics never unwind into C; they surface as `SFI_STATUS_INTERNAL`.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use sfi_core::graph::{read_graph, FairGraph};
use sfi_core::loops::LoopAlgebra;
use sfi_core::modular::{classify_type, qg_spectrum, spectrum_exact};
use sfi_core::scalar::{parse_list, quantum_int_from_delta};
use sfi_core::tl::TemperleyLieb;
use sfi_core::{Error, QScalar};

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SfiStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidParam = 4,
    Graph = 5,
    Precondition = 6,
    CapExceeded = 7,
    Internal = 8,
}

/// Opaque handle to a validated-on-demand graph.
pub struct SfiGraph {
    graph: FairGraph,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', "\\0")).expect("interior NULs replaced");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> SfiStatus {
    match e {
        Error::Parse(_) => SfiStatus::Parse,
        Error::InvalidParam(_) | Error::VanishingQuantumInt(_) => SfiStatus::InvalidParam,
        Error::Graph(_) | Error::UnknownVertex(_) => SfiStatus::Graph,
        Error::CapExceeded { .. } => SfiStatus::CapExceeded,
        Error::Precondition(_) | Error::Group(_) => SfiStatus::Precondition,
        _ => SfiStatus::Internal,
    }
}

struct Failure(SfiStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SfiStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            SfiStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            SfiStatus::Internal
        }
    }
}

/// # Safety
/// `p` must be null or point to a NUL-terminated string.
unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(SfiStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(SfiStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

fn check_out<T>(p: *mut T, what: &str) -> Result<(), Failure> {
    if p.is_null() {
        return Err(Failure(SfiStatus::NullPointer, format!("{what} is null")));
    }
    Ok(())
}

fn to_c(s: String) -> *mut c_char {
    CString::new(s).expect("library strings contain no NUL").into_raw()
}

/// # Safety
/// `g` must be null or a handle from [`sfi_graph_from_json`].
unsafe fn graph_ref<'a>(g: *const SfiGraph) -> Result<&'a FairGraph, Failure> {
    if g.is_null() {
        return Err(Failure(SfiStatus::NullPointer, "graph handle is null".into()));
    }
    Ok(&(*g).graph)
}

/// Message for the last failing call on this thread; empty after success.
/// The pointer stays valid until the next call into this library on the
/// same thread.
#[no_mangle]
pub extern "C" fn sfi_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn sfi_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sfi_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a graph from its JSON text.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sfi_graph_from_json(json: *const c_char, out: *mut *mut SfiGraph) -> SfiStatus {
    guard(|| {
        check_out(out, "out")?;
        let text = read_str(json, "json")?;
        let graph = read_graph(text.as_bytes())?;
        *out = Box::into_raw(Box::new(SfiGraph { graph }));
        Ok(())
    })
}

/// Releases a graph handle. Null is ignored.
///
/// # Safety
/// `g` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sfi_graph_free(g: *mut SfiGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Writes 1 to `out` when the graph is fair and balanced, else 0.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sfi_graph_is_valid(g: *const SfiGraph, out: *mut c_int) -> SfiStatus {
    guard(|| {
        check_out(out, "out")?;
        *out = c_int::from(graph_ref(g)?.is_valid());
        Ok(())
    })
}

/// Violations of fairness and balance as a JSON array.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sfi_graph_violations_json(g: *const SfiGraph, out: *mut *mut c_char) -> SfiStatus {
    guard(|| {
        check_out(out, "out")?;
        let v = graph_ref(g)?.validate();
        *out = to_c(serde_json::to_string(&v).expect("violations serialize"));
        Ok(())
    })
}

/// Number of loops of length `n` at `basepoint`.
///
/// # Safety
/// `g` must be a live handle, `basepoint` a NUL-terminated string and
/// `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sfi_graph_loop_count(
    g: *const SfiGraph,
    basepoint: *const c_char,
    n: usize,
    out: *mut usize,
) -> SfiStatus {
    guard(|| {
        check_out(out, "out")?;
        let graph = graph_ref(g)?;
        let a = LoopAlgebra::new(graph, read_str(basepoint, "basepoint")?)?;
        *out = a.loop_count(n);
        Ok(())
    })
}

/// Exact modular spectrum and factor type at `basepoint`, as JSON
/// `{"spectrum": …, "factor_type": …}`. The graph must be valid.
///
/// # Safety
/// `g` must be a live handle, `basepoint` a NUL-terminated string and
/// `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sfi_graph_spectrum_json(
    g: *const SfiGraph,
    basepoint: *const c_char,
    out: *mut *mut c_char,
) -> SfiStatus {
    guard(|| {
        check_out(out, "out")?;
        let graph = graph_ref(g)?;
        if !graph.is_valid() {
            return Err(Failure(SfiStatus::Precondition, "graph is not fair and balanced".into()));
        }
        let a = LoopAlgebra::new(graph, read_str(basepoint, "basepoint")?)?;
        let s = spectrum_exact(&a)?;
        let v = serde_json::json!({ "spectrum": s, "factor_type": classify_type(&s) });
        *out = to_c(v.to_string());
        Ok(())
    })
}

/// The quantum integer `[n]` at loop value `delta`, as a rational string.
///
/// # Safety
/// `delta` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sfi_quantum_int(delta: *const c_char, n: u32, out: *mut *mut c_char) -> SfiStatus {
    guard(|| {
        check_out(out, "out")?;
        let d: QScalar = read_str(delta, "delta")?.parse()?;
        *out = to_c(quantum_int_from_delta(n, &d).to_string());
        Ok(())
    })
}

/// Markov trace of the Jones-Wenzl projector on `n` strands at `delta`.
///
/// # Safety
/// `delta` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sfi_jones_wenzl_trace(delta: *const c_char, n: usize, out: *mut *mut c_char) -> SfiStatus {
    guard(|| {
        check_out(out, "out")?;
        let d: QScalar = read_str(delta, "delta")?.parse()?;
        let tl = TemperleyLieb::new(d);
        let jw = tl.jones_wenzl(n)?;
        *out = to_c(tl.markov_trace(&jw)?.to_string());
        Ok(())
    })
}

/// Quantum-group spectrum from comma-separated eigenvalues, as JSON
/// `{"spectrum": …, "kac": bool}`.
///
/// # Safety
/// `eigs` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sfi_qg_spectrum_json(eigs: *const c_char, out: *mut *mut c_char) -> SfiStatus {
    guard(|| {
        check_out(out, "out")?;
        let values = parse_list(read_str(eigs, "eigs")?)?;
        let (s, kac) = qg_spectrum(&values)?;
        *out = to_c(serde_json::json!({ "spectrum": s, "kac": kac }).to_string());
        Ok(())
    })
}

/// Runs an `sfi` command line (`argv[0]` is the program name) and returns
/// its exit code and captured output.
///
/// # Safety
/// `argv` must hold `argc` NUL-terminated strings; the out-pointers must be
/// valid.
#[no_mangle]
pub unsafe extern "C" fn sfi_run(
    argc: c_int,
    argv: *const *const c_char,
    exit_code: *mut c_int,
    out_stdout: *mut *mut c_char,
    out_stderr: *mut *mut c_char,
) -> SfiStatus {
    guard(|| {
        check_out(exit_code, "exit_code")?;
        check_out(out_stdout, "out_stdout")?;
        check_out(out_stderr, "out_stderr")?;
        if argc < 0 || (argc > 0 && argv.is_null()) {
            return Err(Failure(SfiStatus::NullPointer, "argv is null".into()));
        }
        let mut args = Vec::with_capacity(argc as usize);
        for i in 0..argc as usize {
            args.push(read_str(*argv.add(i), "argv entry")?.to_string());
        }
        let outcome = sfi_core::cli::run(args);
        *exit_code = outcome.code;
        *out_stdout = to_c(outcome.stdout);
        *out_stderr = to_c(outcome.stderr);
        Ok(())
    })
}

