//! C ABI for the dsr library: opaque graph handles, integer status codes,
//! and caller-provided buffers. Every function is panic-safe at the
//! boundary.
//!
//! The companion header `include/dsr.h` is generated by cbindgen at build
//! time.

use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use dsr::connectivity::{self, ConnectivityError};
use dsr::enumeration::{self, EnumerationError};
use dsr::families::{self, FamilyError, FamilyParams, TheoremCase};
use dsr::graph::GraphError;
use dsr::graph6::Graph6Error;
use dsr::spectral::{self, SpectralError};
use dsr::Graph;

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DsrStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// The input was not a valid graph6 line.
    BadGraph6 = 3,
    /// The operation requires a connected graph.
    Disconnected = 4,
    /// A numeric parameter is outside its domain.
    InvalidParameter = 5,
    /// The graph order exceeds the cap of the requested operation.
    CapExceeded = 6,
    /// The eigensolver did not converge.
    NoConvergence = 7,
    /// The output buffer is too small.
    BufferTooSmall = 8,
    /// An internal invariant failed.
    InternalError = 99,
}

/// Opaque handle to an immutable graph.
pub struct DsrGraph {
    inner: Graph,
}

fn graph6_status(err: &Graph6Error) -> DsrStatus {
    match err {
        Graph6Error::OrderTooLarge(_) => DsrStatus::CapExceeded,
        _ => DsrStatus::BadGraph6,
    }
}

fn graph_status(err: &GraphError) -> DsrStatus {
    match err {
        GraphError::TooManyVertices(_) => DsrStatus::CapExceeded,
        _ => DsrStatus::InvalidParameter,
    }
}

fn spectral_status(err: &SpectralError) -> DsrStatus {
    match err {
        SpectralError::Disconnected(_) => DsrStatus::Disconnected,
        SpectralError::NoConvergence { .. } | SpectralError::JacobiStalled => {
            DsrStatus::NoConvergence
        }
        _ => DsrStatus::InvalidParameter,
    }
}

fn connectivity_status(err: &ConnectivityError) -> DsrStatus {
    match err {
        ConnectivityError::Disconnected => DsrStatus::Disconnected,
        ConnectivityError::OverCap(_) => DsrStatus::CapExceeded,
        _ => DsrStatus::InvalidParameter,
    }
}

fn family_status(err: &FamilyError) -> DsrStatus {
    match err {
        FamilyError::Graph(e) => graph_status(e),
        FamilyError::Connectivity(e) => connectivity_status(e),
        _ => DsrStatus::InvalidParameter,
    }
}

fn enumeration_status(err: &EnumerationError) -> DsrStatus {
    match err {
        EnumerationError::CanonicalOverCap(_) | EnumerationError::EnumerationOverCap(_) => {
            DsrStatus::CapExceeded
        }
    }
}

fn guarded(f: impl FnOnce() -> DsrStatus) -> DsrStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(DsrStatus::InternalError)
}

/// Writes `text` NUL-terminated into the caller buffer; `written` receives
/// the full length including the terminator.
unsafe fn write_c_string(
    text: &str,
    buffer: *mut c_char,
    capacity: usize,
    written: *mut usize,
) -> DsrStatus {
    let needed = text.len() + 1;
    if !written.is_null() {
        unsafe { *written = needed };
    }
    if buffer.is_null() {
        return DsrStatus::NullArgument;
    }
    if capacity < needed {
        return DsrStatus::BufferTooSmall;
    }
    unsafe {
        ptr::copy_nonoverlapping(text.as_ptr(), buffer as *mut u8, text.len());
        *buffer.add(text.len()) = 0;
    }
    DsrStatus::Ok
}

/// Parse one graph6 line into a fresh handle. The caller owns the handle
/// and must release it with `dsr_graph_free`.
///
/// # Safety
/// `line` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dsr_graph_parse_graph6(
    line: *const c_char,
    out: *mut *mut DsrGraph,
) -> DsrStatus {
    guarded(|| {
        if line.is_null() || out.is_null() {
            return DsrStatus::NullArgument;
        }
        let text = match unsafe { CStr::from_ptr(line) }.to_str() {
            Ok(t) => t,
            Err(_) => return DsrStatus::InvalidUtf8,
        };
        match dsr::parse_graph6(text) {
            Ok(g) => {
                unsafe { *out = Box::into_raw(Box::new(DsrGraph { inner: g })) };
                DsrStatus::Ok
            }
            Err(e) => graph6_status(&e),
        }
    })
}

/// Build the complete graph on `k` vertices.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dsr_graph_clique(k: u32, out: *mut *mut DsrGraph) -> DsrStatus {
    guarded(|| {
        if out.is_null() {
            return DsrStatus::NullArgument;
        }
        match Graph::clique(k as usize) {
            Ok(g) => {
                unsafe { *out = Box::into_raw(Box::new(DsrGraph { inner: g })) };
                DsrStatus::Ok
            }
            Err(e) => graph_status(&e),
        }
    })
}

/// Release a handle returned by this library. Null is a no-op.
///
/// # Safety
/// `graph` must be null or a pointer obtained from this library that has
/// not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn dsr_graph_free(graph: *mut DsrGraph) {
    if !graph.is_null() {
        drop(unsafe { Box::from_raw(graph) });
    }
}

/// # Safety
/// `graph` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn dsr_graph_order(graph: *const DsrGraph, out: *mut u32) -> DsrStatus {
    guarded(|| {
        if graph.is_null() || out.is_null() {
            return DsrStatus::NullArgument;
        }
        unsafe { *out = (*graph).inner.order() as u32 };
        DsrStatus::Ok
    })
}

/// # Safety
/// `graph` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn dsr_graph_edge_count(graph: *const DsrGraph, out: *mut u32) -> DsrStatus {
    guarded(|| {
        if graph.is_null() || out.is_null() {
            return DsrStatus::NullArgument;
        }
        unsafe { *out = (*graph).inner.edge_count() as u32 };
        DsrStatus::Ok
    })
}

/// # Safety
/// `graph` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn dsr_graph_min_degree(graph: *const DsrGraph, out: *mut u32) -> DsrStatus {
    guarded(|| {
        if graph.is_null() || out.is_null() {
            return DsrStatus::NullArgument;
        }
        unsafe { *out = (*graph).inner.min_degree() as u32 };
        DsrStatus::Ok
    })
}

/// graph6 encoding of the handle's labeling. `written` receives the length
/// including the NUL terminator, also on `BufferTooSmall`.
///
/// # Safety
/// Pointer arguments must be valid; `buffer` must have `capacity` bytes.
#[no_mangle]
pub unsafe extern "C" fn dsr_graph_graph6(
    graph: *const DsrGraph,
    buffer: *mut c_char,
    capacity: usize,
    written: *mut usize,
) -> DsrStatus {
    guarded(|| {
        if graph.is_null() {
            return DsrStatus::NullArgument;
        }
        let text = unsafe { &(*graph).inner }.to_graph6();
        unsafe { write_c_string(&text, buffer, capacity, written) }
    })
}

/// Distance spectral radius via power iteration at residual tolerance
/// `tol` (pass 0 for the default 1e-12).
///
/// # Safety
/// `graph` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn dsr_lambda1(
    graph: *const DsrGraph,
    tol: f64,
    out: *mut f64,
) -> DsrStatus {
    guarded(|| {
        if graph.is_null() || out.is_null() {
            return DsrStatus::NullArgument;
        }
        let tol = if tol == 0.0 { spectral::DEFAULT_TOL } else { tol };
        match spectral::distance_spectral_radius(unsafe { &(*graph).inner }, tol) {
            Ok(result) => {
                unsafe { *out = result.lambda1 };
                DsrStatus::Ok
            }
            Err(e) => spectral_status(&e),
        }
    })
}

/// All distance eigenvalues, descending, written into `out`; `written`
/// receives the eigenvalue count (the graph order).
///
/// # Safety
/// Pointer arguments must be valid; `out` must have room for `capacity`
/// doubles.
#[no_mangle]
pub unsafe extern "C" fn dsr_full_spectrum(
    graph: *const DsrGraph,
    out: *mut f64,
    capacity: usize,
    written: *mut usize,
) -> DsrStatus {
    guarded(|| {
        if graph.is_null() {
            return DsrStatus::NullArgument;
        }
        let g = unsafe { &(*graph).inner };
        if !written.is_null() {
            unsafe { *written = g.order() };
        }
        let matrix = match spectral::DistanceMatrix::from_graph(g) {
            Ok(m) => m,
            Err(e) => return spectral_status(&e),
        };
        if out.is_null() {
            return DsrStatus::NullArgument;
        }
        if capacity < g.order() {
            return DsrStatus::BufferTooSmall;
        }
        match spectral::full_spectrum(&matrix) {
            Ok(spectrum) => {
                unsafe { ptr::copy_nonoverlapping(spectrum.as_ptr(), out, spectrum.len()) };
                DsrStatus::Ok
            }
            Err(e) => spectral_status(&e),
        }
    })
}

/// h-extra r-component connectivity. `out_value` receives the minimum cut
/// size, or -1 when no valid cut exists; `out_witness` (optional) receives
/// the witness cut as a vertex bitmask, 0 when undefined.
///
/// # Safety
/// `graph` and `out_value` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn dsr_ckappa(
    graph: *const DsrGraph,
    r: u32,
    h: u32,
    out_value: *mut i64,
    out_witness: *mut u64,
) -> DsrStatus {
    guarded(|| {
        if graph.is_null() || out_value.is_null() {
            return DsrStatus::NullArgument;
        }
        match connectivity::ckappa(unsafe { &(*graph).inner }, r as usize, h as usize) {
            Ok(result) => {
                unsafe {
                    *out_value = result.value.map_or(-1, |v| v as i64);
                    if !out_witness.is_null() {
                        *out_witness = result.witness.map_or(0, |w| w.s.bits());
                    }
                }
                DsrStatus::Ok
            }
            Err(e) => connectivity_status(&e),
        }
    })
}

/// Classic vertex connectivity (complete graphs use the n-1 convention).
///
/// # Safety
/// `graph` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn dsr_kappa(graph: *const DsrGraph, out: *mut u32) -> DsrStatus {
    guarded(|| {
        if graph.is_null() || out.is_null() {
            return DsrStatus::NullArgument;
        }
        match connectivity::kappa(unsafe { &(*graph).inner }) {
            Ok(v) => {
                unsafe { *out = v as u32 };
                DsrStatus::Ok
            }
            Err(e) => connectivity_status(&e),
        }
    })
}

/// Build the extremal family graph for the given parameters; the case
/// branch (1, 2 or 3) is derived from them and written to `out_case` when
/// non-null.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dsr_family_graph(
    n: u32,
    r: u32,
    h: u32,
    delta: u32,
    ckappa: u32,
    out_case: *mut u32,
    out: *mut *mut DsrGraph,
) -> DsrStatus {
    guarded(|| {
        if out.is_null() {
            return DsrStatus::NullArgument;
        }
        let params = FamilyParams {
            n: n as usize,
            r: r as usize,
            h: h as usize,
            delta: delta as usize,
            ckappa: ckappa as usize,
        };
        match families::family_graph(&params) {
            Ok((case, g)) => {
                if !out_case.is_null() {
                    let id = match case {
                        TheoremCase::I => 1,
                        TheoremCase::II => 2,
                        TheoremCase::III => 3,
                    };
                    unsafe { *out_case = id };
                }
                unsafe { *out = Box::into_raw(Box::new(DsrGraph { inner: g })) };
                DsrStatus::Ok
            }
            Err(e) => family_status(&e),
        }
    })
}

/// Canonical-form isomorphism test (orders up to 10).
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn dsr_is_isomorphic(
    a: *const DsrGraph,
    b: *const DsrGraph,
    out: *mut bool,
) -> DsrStatus {
    guarded(|| {
        if a.is_null() || b.is_null() || out.is_null() {
            return DsrStatus::NullArgument;
        }
        match enumeration::is_isomorphic(unsafe { &(*a).inner }, unsafe { &(*b).inner }) {
            Ok(iso) => {
                unsafe { *out = iso };
                DsrStatus::Ok
            }
            Err(e) => enumeration_status(&e),
        }
    })
}

/// graph6 line of the canonical representative of the handle's isomorphism
/// class (orders up to 10).
///
/// # Safety
/// Pointer arguments must be valid; `buffer` must have `capacity` bytes.
#[no_mangle]
pub unsafe extern "C" fn dsr_canonical_graph6(
    graph: *const DsrGraph,
    buffer: *mut c_char,
    capacity: usize,
    written: *mut usize,
) -> DsrStatus {
    guarded(|| {
        if graph.is_null() {
            return DsrStatus::NullArgument;
        }
        match enumeration::canonical_form(unsafe { &(*graph).inner }) {
            Ok(form) => unsafe { write_c_string(&form.to_graph6(), buffer, capacity, written) },
            Err(e) => enumeration_status(&e),
        }
    })
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn dsr_status_message(status: DsrStatus) -> *const c_char {
    let text: &'static CStr = match status {
        DsrStatus::Ok => c"ok",
        DsrStatus::NullArgument => c"a required pointer argument was null",
        DsrStatus::InvalidUtf8 => c"string argument was not valid UTF-8",
        DsrStatus::BadGraph6 => c"input was not a valid graph6 line",
        DsrStatus::Disconnected => c"operation requires a connected graph",
        DsrStatus::InvalidParameter => c"a parameter is outside its domain",
        DsrStatus::CapExceeded => c"graph order exceeds the operation's cap",
        DsrStatus::NoConvergence => c"eigensolver did not converge",
        DsrStatus::BufferTooSmall => c"output buffer is too small",
        DsrStatus::InternalError => c"internal invariant failed",
    };
    text.as_ptr()
}
