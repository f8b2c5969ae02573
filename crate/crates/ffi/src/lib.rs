//! C ABI over `mckay-e8`.
//!
//! Handles are opaque pointers created by `*_new`/`mckay_node_report` and
//! released by the matching `*_free`. Every fallible call returns a
//! `MckayStatus`; on failure `mckay_last_error` describes the cause for the
//! calling thread. Strings handed out by the library are released with
//! `mckay_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::ptr;

use mckay_e8::cli::{run, Command, Format, RunConfig};
use mckay_e8::mckay::{counting_formula, node_report, NodeReport, Workspace};
use mckay_e8::scalar::Rational;
use mckay_e8::Error;

/// Result codes of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MckayStatus {
    Ok = 0,
    /// The computation ran but at least one check failed.
    CheckFailed = 1,
    InvalidArgument = 2,
    NullPointer = 3,
    TableMismatch = 4,
    /// Input data (codes, files) could not be read or is malformed.
    DataError = 5,
    /// A value does not fit the C representation, e.g. a rational with
    /// components beyond 64 bits.
    Overflow = 6,
    Internal = 7,
    Panic = 8,
}

/// Workspace holding the `√2E8` algebra, the dual-coset module and the
/// Leech lattice; shared by all node reports.
pub struct MckayWorkspace(Workspace);

/// Report for one node of the extended E8 diagram.
pub struct MckayNodeReport(NodeReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(s).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> MckayStatus {
    match e {
        Error::InvalidArgument(_) | Error::UnsupportedType { .. } => MckayStatus::InvalidArgument,
        Error::TableMismatch { .. } => MckayStatus::TableMismatch,
        Error::Parse(_) | Error::Io(_) | Error::CodeCheckFailed(_) => MckayStatus::DataError,
        _ => MckayStatus::Internal,
    }
}

/// Runs `f` with panics contained and errors recorded.
fn guard(f: impl FnOnce() -> Result<MckayStatus, (MckayStatus, String)>) -> MckayStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err((s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("panic inside mckay-e8");
            MckayStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (MckayStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (MckayStatus, String) {
    (MckayStatus::NullPointer, format!("{what} is null"))
}

fn split_rational(r: &Rational) -> Result<(i64, i64), (MckayStatus, String)> {
    r.to_i64_pair().ok_or_else(|| (MckayStatus::Overflow, format!("{r} does not fit in 64 bits")))
}

unsafe fn opt_str(p: *const c_char, what: &str) -> Result<Option<String>, (MckayStatus, String)> {
    if p.is_null() {
        return Ok(None);
    }
    CStr::from_ptr(p)
        .to_str()
        .map(|s| Some(s.to_owned()))
        .map_err(|_| (MckayStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

fn into_c_string(s: String) -> Result<*mut c_char, (MckayStatus, String)> {
    CString::new(s).map(CString::into_raw).map_err(|_| (MckayStatus::Internal, "output contains NUL".into()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn mckay_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread, or NULL. Valid until the
/// next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn mckay_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by the library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn mckay_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a workspace over the built-in Z4 code. Takes a few seconds.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mckay_workspace_new(out: *mut *mut MckayWorkspace) -> MckayStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let ws = Workspace::new().map_err(lib_err)?;
        *out = Box::into_raw(Box::new(MckayWorkspace(ws)));
        Ok(MckayStatus::Ok)
    })
}

/// # Safety
/// `ws` must come from `mckay_workspace_new` and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn mckay_workspace_free(ws: *mut MckayWorkspace) {
    if !ws.is_null() {
        drop(Box::from_raw(ws));
    }
}

/// Computes the report for node `i` (0..=8). Failed checks do not make this
/// call fail; inspect `mckay_node_report_pass`.
///
/// # Safety
/// `ws` must be a live workspace and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mckay_node_report(ws: *const MckayWorkspace, i: usize, out: *mut *mut MckayNodeReport) -> MckayStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let ws = ws.as_ref().ok_or_else(|| null("workspace"))?;
        if i > 8 {
            return Err((MckayStatus::InvalidArgument, format!("node {i} is not in 0..=8")));
        }
        let r = node_report(&ws.0, i).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(MckayNodeReport(r)));
        Ok(MckayStatus::Ok)
    })
}

/// # Safety
/// `r` must come from `mckay_node_report` and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn mckay_node_report_free(r: *mut MckayNodeReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

unsafe fn report<'a>(r: *const MckayNodeReport) -> Result<&'a NodeReport, (MckayStatus, String)> {
    r.as_ref().map(|r| &r.0).ok_or_else(|| null("report"))
}

/// ⟨ê,f̂⟩ as `num/den` with `den > 0`.
///
/// # Safety
/// `r` must be a live report; `num` and `den` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn mckay_node_report_inner(r: *const MckayNodeReport, num: *mut i64, den: *mut i64) -> MckayStatus {
    guard(|| {
        let r = report(r)?;
        if num.is_null() || den.is_null() {
            return Err(null("num/den"));
        }
        let (a, b) = split_rational(&r.inner_ef)?;
        *num = a;
        *den = b;
        Ok(MckayStatus::Ok)
    })
}

/// Order n_i of the diagram automorphism and dim U₂.
///
/// # Safety
/// `r` must be a live report; `n` and `u2_dim` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn mckay_node_report_dims(r: *const MckayNodeReport, n: *mut usize, u2_dim: *mut usize) -> MckayStatus {
    guard(|| {
        let r = report(r)?;
        if n.is_null() || u2_dim.is_null() {
            return Err(null("n/u2_dim"));
        }
        *n = r.n;
        *u2_dim = r.u2_dim;
        Ok(MckayStatus::Ok)
    })
}

/// Orders of τ_ê τ_f̂ on weight 2 of V_√2E8, on the dual-coset module and
/// through the Leech phase map.
///
/// # Safety
/// `r` must be a live report; the three outputs valid pointers.
#[no_mangle]
pub unsafe extern "C" fn mckay_node_report_tau_orders(
    r: *const MckayNodeReport,
    e8: *mut usize,
    dual: *mut usize,
    leech: *mut u64,
) -> MckayStatus {
    guard(|| {
        let r = report(r)?;
        if e8.is_null() || dual.is_null() || leech.is_null() {
            return Err(null("order output"));
        }
        *e8 = r.tau_order_e8;
        *dual = r.tau_order_dual;
        *leech = r.tau_order_leech;
        Ok(MckayStatus::Ok)
    })
}

/// `MCKAY_STATUS_OK` when every check of the node passed, else
/// `MCKAY_STATUS_CHECK_FAILED`.
///
/// # Safety
/// `r` must be a live report.
#[no_mangle]
pub unsafe extern "C" fn mckay_node_report_pass(r: *const MckayNodeReport) -> MckayStatus {
    guard(|| Ok(if report(r)?.pass { MckayStatus::Ok } else { MckayStatus::CheckFailed }))
}

/// The report as pretty-printed JSON. Free with `mckay_string_free`.
///
/// # Safety
/// `r` must be a live report and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mckay_node_report_json(r: *const MckayNodeReport, out: *mut *mut c_char) -> MckayStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let r = report(r)?;
        let s = serde_json::to_string_pretty(r).map_err(|e| (MckayStatus::Internal, e.to_string()))?;
        *out = into_c_string(s)?;
        Ok(MckayStatus::Ok)
    })
}

/// `1/2⁶ + (1/2¹⁰)(|Φ| + Σ_j ξ^j |H_j|)` with ξ a primitive n-th root of
/// unity and `h` of length `n - 1`, as `num/den`.
///
/// # Safety
/// `h` must point to `h_len` values (or be NULL with `h_len == 0`); `num`
/// and `den` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn mckay_counting_formula(
    n: usize,
    phi: usize,
    h: *const usize,
    h_len: usize,
    num: *mut i64,
    den: *mut i64,
) -> MckayStatus {
    guard(|| {
        if num.is_null() || den.is_null() || (h.is_null() && h_len > 0) {
            return Err(null("argument"));
        }
        if n == 0 || h_len + 1 != n {
            return Err((MckayStatus::InvalidArgument, format!("{h_len} counts for n = {n}")));
        }
        let h = if h_len == 0 { &[][..] } else { std::slice::from_raw_parts(h, h_len) };
        let v = counting_formula(n, phi, h).map_err(lib_err)?;
        let (a, b) = split_rational(&v)?;
        *num = a;
        *den = b;
        Ok(MckayStatus::Ok)
    })
}

/// Runs a CLI command (`"verify-mckay"`, `"verify-griess"`, `"verify-leech"`,
/// `"verify-codes"`, `"verify-all"`) with JSON output written to `*out`.
/// `nodes` may be NULL to select all nodes; `data_dir` may be NULL to use
/// the built-in codes. Returns `MCKAY_STATUS_CHECK_FAILED` with the full
/// report in `*out` when a check fails.
///
/// # Safety
/// `command` must be a NUL-terminated string, `nodes` must point to
/// `nodes_len` values when non-NULL, `data_dir` NULL or NUL-terminated, and
/// `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mckay_run_json(
    command: *const c_char,
    nodes: *const usize,
    nodes_len: usize,
    data_dir: *const c_char,
    out: *mut *mut c_char,
) -> MckayStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let name = opt_str(command, "command")?.ok_or_else(|| null("command"))?;
        let command = [Command::VerifyMckay, Command::VerifyGriess, Command::VerifyLeech, Command::VerifyCodes, Command::VerifyAll]
            .into_iter()
            .find(|c| c.name() == name)
            .ok_or_else(|| (MckayStatus::InvalidArgument, format!("unknown command {name:?}")))?;
        let mut config = RunConfig::new(command);
        config.format = Format::Json;
        if !nodes.is_null() {
            config.nodes = std::slice::from_raw_parts(nodes, nodes_len).to_vec();
        }
        config.data_dir = opt_str(data_dir, "data_dir")?.map(PathBuf::from);
        let res = run(&config).map_err(lib_err)?;
        *out = into_c_string(res.text)?;
        Ok(if res.pass { MckayStatus::Ok } else { MckayStatus::CheckFailed })
    })
}
