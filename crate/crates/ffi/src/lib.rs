//! C ABI over `lexmatch`.
//!
//! Every fallible call returns an [`LmStatus`]; on failure the message is
//! kept per thread and can be copied out with [`lm_last_error`]. Handles are
//! opaque and must be released with the matching `*_free` function. Strings
//! returned through out-pointers are owned by the caller and released with
//! [`lm_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use lexmatch::verify::{verify_general, SweepOptions};
use lexmatch::{
    colex_graph, lex_graph, matching_vector, minimize_to_lex, rook_vector, Error, Graph,
    MatchingVector, YoungDiagram,
};

#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum LmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Overflow = 3,
    BudgetExceeded = 4,
    Counterexample = 5,
    BufferTooSmall = 6,
    Panic = 7,
}

pub struct LmGraph(Graph);
pub struct LmMatchingVector(MatchingVector);
pub struct LmDiagram(YoungDiagram);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: LmStatus, msg: impl Into<String>) -> LmStatus {
    set_error(msg.into());
    status
}

fn from_error(e: Error) -> LmStatus {
    let status = match e {
        Error::BudgetExceeded { .. } => LmStatus::BudgetExceeded,
        Error::Overflow => LmStatus::Overflow,
        _ => LmStatus::InvalidArgument,
    };
    fail(status, e.to_string())
}

/// Runs `f`, converting errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), LmStatus>) -> LmStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => LmStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(LmStatus::Panic, "internal panic"),
    }
}

fn non_null<T>(p: *const T) -> Result<(), LmStatus> {
    if p.is_null() {
        Err(fail(LmStatus::NullPointer, "null pointer argument"))
    } else {
        Ok(())
    }
}

unsafe fn emit<T>(out: *mut *mut T, value: T) {
    *out = Box::into_raw(Box::new(value));
}

/// Copies `s` plus a terminating NUL into `buf`; `needed` gets the full size.
unsafe fn copy_out(
    s: &str,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> Result<(), LmStatus> {
    if !needed.is_null() {
        *needed = s.len() + 1;
    }
    if buf.is_null() || len < s.len() + 1 {
        return Err(LmStatus::BufferTooSmall);
    }
    ptr::copy_nonoverlapping(s.as_ptr() as *const c_char, buf, s.len());
    *buf.add(s.len()) = 0;
    Ok(())
}

unsafe fn emit_string(out: *mut *mut c_char, s: String) -> Result<(), LmStatus> {
    let c = CString::new(s).map_err(|_| fail(LmStatus::Panic, "string contains NUL"))?;
    *out = c.into_raw();
    Ok(())
}

/// Copies the calling thread's last error message into `buf`.
///
/// Returns `LM_STATUS_BUFFER_TOO_SMALL` (with `*needed` set) when `buf` is
/// too short, and writes an empty string when there is no error.
///
/// # Safety
/// `buf` must be writable for `len` bytes; `needed` may be null.
#[no_mangle]
pub unsafe extern "C" fn lm_last_error(
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> LmStatus {
    let msg = LAST_ERROR.with(|e| {
        e.borrow()
            .as_ref()
            .map(|c| c.to_string_lossy().into_owned())
            .unwrap_or_default()
    });
    match copy_out(&msg, buf, len, needed) {
        Ok(()) => LmStatus::Ok,
        Err(s) => s,
    }
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn lm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Lex graph on `n` vertices with the first `e` pairs.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lm_graph_lex(n: usize, e: usize, out: *mut *mut LmGraph) -> LmStatus {
    guard(|| {
        non_null(out)?;
        emit(out, LmGraph(lex_graph(n, e).map_err(from_error)?));
        Ok(())
    })
}

/// Colex graph on `n` vertices with the first `e` pairs.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lm_graph_colex(n: usize, e: usize, out: *mut *mut LmGraph) -> LmStatus {
    guard(|| {
        non_null(out)?;
        emit(out, LmGraph(colex_graph(n, e).map_err(from_error)?));
        Ok(())
    })
}

/// Graph on `[n]` from `count` edges stored as `endpoints[2i], endpoints[2i+1]`.
///
/// # Safety
/// `endpoints` must hold `2 * count` values (may be null when `count` is 0);
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lm_graph_from_edges(
    n: usize,
    endpoints: *const usize,
    count: usize,
    out: *mut *mut LmGraph,
) -> LmStatus {
    guard(|| {
        non_null(out)?;
        let flat: &[usize] = if count == 0 {
            &[]
        } else {
            non_null(endpoints)?;
            std::slice::from_raw_parts(endpoints, 2 * count)
        };
        let edges: Vec<(usize, usize)> = flat.chunks_exact(2).map(|p| (p[0], p[1])).collect();
        emit(
            out,
            LmGraph(Graph::from_edges(n, &edges).map_err(from_error)?),
        );
        Ok(())
    })
}

/// # Safety
/// `g` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lm_graph_free(g: *mut LmGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn lm_graph_vertex_count(g: *const LmGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.n())
}

/// # Safety
/// `g` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn lm_graph_edge_count(g: *const LmGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.edge_count())
}

/// Writes the degree of vertex `v` (1-based) to `out`.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lm_graph_degree(g: *const LmGraph, v: usize, out: *mut usize) -> LmStatus {
    guard(|| {
        non_null(g)?;
        non_null(out)?;
        let g = &(*g).0;
        if v == 0 || v > g.n() {
            return Err(from_error(Error::VertexOutOfRange {
                vertex: v,
                n: g.n(),
            }));
        }
        *out = g.degree(v);
        Ok(())
    })
}

/// Matching vector `(m_0, m_1, ...)` of `g`.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lm_matching_vector(
    g: *const LmGraph,
    out: *mut *mut LmMatchingVector,
) -> LmStatus {
    guard(|| {
        non_null(g)?;
        non_null(out)?;
        emit(
            out,
            LmMatchingVector(matching_vector(&(*g).0).map_err(from_error)?),
        );
        Ok(())
    })
}

/// # Safety
/// `mv` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lm_matching_vector_free(mv: *mut LmMatchingVector) {
    if !mv.is_null() {
        drop(Box::from_raw(mv));
    }
}

/// Number of coefficients.
///
/// # Safety
/// `mv` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn lm_matching_vector_len(mv: *const LmMatchingVector) -> usize {
    mv.as_ref().map_or(0, |m| m.0.len())
}

/// `m_k` as a `uint64_t`; `LM_STATUS_OVERFLOW` if it does not fit.
///
/// # Safety
/// `mv` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lm_matching_vector_get_u64(
    mv: *const LmMatchingVector,
    k: usize,
    out: *mut u64,
) -> LmStatus {
    guard(|| {
        non_null(mv)?;
        non_null(out)?;
        let v = (*mv).0.get(k);
        *out = u64::try_from(&v)
            .map_err(|_| fail(LmStatus::Overflow, format!("m_{k} = {v} exceeds 64 bits")))?;
        Ok(())
    })
}

/// `m_k` as a decimal string copied into `buf`.
///
/// # Safety
/// `mv` must be a live handle; `buf` writable for `len` bytes; `needed` may be null.
#[no_mangle]
pub unsafe extern "C" fn lm_matching_vector_get_decimal(
    mv: *const LmMatchingVector,
    k: usize,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> LmStatus {
    guard(|| {
        non_null(mv)?;
        copy_out(&(*mv).0.get(k).to_string(), buf, len, needed)
    })
}

/// Total number of matchings as a decimal string copied into `buf`.
///
/// # Safety
/// As for [`lm_matching_vector_get_decimal`].
#[no_mangle]
pub unsafe extern "C" fn lm_matching_vector_total_decimal(
    mv: *const LmMatchingVector,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> LmStatus {
    guard(|| {
        non_null(mv)?;
        copy_out(&(*mv).0.total().to_string(), buf, len, needed)
    })
}

/// Parses `"l r : a,b,c"`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lm_diagram_parse(
    text: *const c_char,
    out: *mut *mut LmDiagram,
) -> LmStatus {
    guard(|| {
        non_null(text)?;
        non_null(out)?;
        let s = CStr::from_ptr(text)
            .to_str()
            .map_err(|_| fail(LmStatus::InvalidArgument, "diagram text is not UTF-8"))?;
        emit(out, LmDiagram(s.parse().map_err(from_error)?));
        Ok(())
    })
}

/// # Safety
/// `d` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lm_diagram_free(d: *mut LmDiagram) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Text form of `d`, released with [`lm_string_free`].
///
/// # Safety
/// `d` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lm_diagram_to_string(
    d: *const LmDiagram,
    out: *mut *mut c_char,
) -> LmStatus {
    guard(|| {
        non_null(d)?;
        non_null(out)?;
        emit_string(out, (*d).0.to_string())
    })
}

/// Rook numbers of `d`.
///
/// # Safety
/// `d` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lm_rook_vector(
    d: *const LmDiagram,
    out: *mut *mut LmMatchingVector,
) -> LmStatus {
    guard(|| {
        non_null(d)?;
        non_null(out)?;
        emit(out, LmMatchingVector(rook_vector(&(*d).0)));
        Ok(())
    })
}

/// Drives `d` to the lex diagram. `end` receives the final diagram and
/// `trace_json` (if non-null) the move list as JSON.
///
/// # Safety
/// `d` must be a live handle, `end` a valid pointer, `trace_json` null or valid.
#[no_mangle]
pub unsafe extern "C" fn lm_diagram_minimize(
    d: *const LmDiagram,
    end: *mut *mut LmDiagram,
    trace_json: *mut *mut c_char,
) -> LmStatus {
    guard(|| {
        non_null(d)?;
        non_null(end)?;
        let (last, trace) = minimize_to_lex(&(*d).0).map_err(from_error)?;
        if !trace_json.is_null() {
            emit_string(
                trace_json,
                serde_json::to_string(&trace).expect("trace serializes"),
            )?;
        }
        emit(end, LmDiagram(last));
        Ok(())
    })
}

/// Exhaustive sweep of all graphs on `[n]` with `e` edges. The JSON report
/// goes to `report_json`; the status is `LM_STATUS_COUNTEREXAMPLE` if some
/// graph beats both lex and colex. `max_instances == 0` uses the default cap,
/// `jobs == 0` all cores.
///
/// # Safety
/// `report_json` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lm_verify_general(
    n: usize,
    e: usize,
    max_instances: u64,
    jobs: usize,
    report_json: *mut *mut c_char,
) -> LmStatus {
    guard(|| {
        non_null(report_json)?;
        let mut opts = SweepOptions {
            jobs,
            ..SweepOptions::default()
        };
        if max_instances > 0 {
            opts.max_instances = max_instances;
        }
        let report = verify_general(n, e, &opts).map_err(from_error)?;
        emit_string(
            report_json,
            serde_json::to_string(&report).expect("report serializes"),
        )?;
        if report.verified() {
            Ok(())
        } else {
            Err(fail(
                LmStatus::Counterexample,
                format!("counterexample in {}", report.universe),
            ))
        }
    })
}
