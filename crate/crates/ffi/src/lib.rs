//! C interface. Objects are opaque heap handles released with their `_free`
//! function; every fallible call returns a [`BoxlabStatus`] and leaves a
//! message for [`boxlab_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use boxlab::builders::pair_elimination_rep;
use boxlab::certificate::{Certificate, Params, Target};
use boxlab::graph::Graph;
use boxlab::options::Options;
use boxlab::oracle::exact_boxicity;
use boxlab::pipelines::bounded_degree_rep;
use boxlab::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoxlabStatus {
    Ok = 0,
    Parse = 2,
    Parameter = 3,
    Verification = 4,
    Randomized = 5,
    NullPointer = 6,
    Panic = 7,
}

pub struct BoxlabGraph {
    inner: Graph,
}

pub struct BoxlabCertificate {
    inner: Certificate,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> BoxlabStatus {
    match e.exit_code() {
        2 => BoxlabStatus::Parse,
        4 => BoxlabStatus::Verification,
        5 => BoxlabStatus::Randomized,
        _ => BoxlabStatus::Parameter,
    }
}

fn guard(f: impl FnOnce() -> Result<(), BoxlabStatus>) -> BoxlabStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => BoxlabStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("panic inside boxlab".into());
            BoxlabStatus::Panic
        }
    }
}

fn fail(e: Error) -> BoxlabStatus {
    let s = status_of(&e);
    set_error(e.to_string());
    s
}

fn null() -> BoxlabStatus {
    set_error("null pointer argument".into());
    BoxlabStatus::NullPointer
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, BoxlabStatus> {
    if s.is_null() {
        return Err(null());
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("string is not UTF-8".into());
        BoxlabStatus::Parse
    })
}

/// Message of the last failed call on this thread, or NULL. Valid until the
/// next failing call.
#[no_mangle]
pub extern "C" fn boxlab_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `edges` points to `2 * m` vertex ids (pairs `u, v`); `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn boxlab_graph_new(
    n: usize,
    edges: *const usize,
    m: usize,
    out: *mut *mut BoxlabGraph,
) -> BoxlabStatus {
    guard(|| {
        if out.is_null() || (edges.is_null() && m > 0) {
            return Err(null());
        }
        let flat = if m == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(edges, 2 * m)
        };
        let pairs: Vec<(usize, usize)> = flat.chunks_exact(2).map(|c| (c[0], c[1])).collect();
        let g = Graph::from_edges(n, &pairs).map_err(fail)?;
        *out = Box::into_raw(Box::new(BoxlabGraph { inner: g }));
        Ok(())
    })
}

/// Parses the `graph <n> <m>` text format.
///
/// # Safety
/// `src` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn boxlab_graph_parse(
    src: *const c_char,
    out: *mut *mut BoxlabGraph,
) -> BoxlabStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let g = boxlab::io::parse_graph(text(src)?).map_err(fail)?;
        *out = Box::into_raw(Box::new(BoxlabGraph { inner: g }));
        Ok(())
    })
}

/// # Safety
/// `g` is NULL or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn boxlab_graph_vertex_count(g: *const BoxlabGraph) -> usize {
    g.as_ref().map_or(0, |g| g.inner.n())
}

/// # Safety
/// `g` is NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn boxlab_graph_free(g: *mut BoxlabGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Bounded-degree construction.
///
/// # Safety
/// `g` is a live graph handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn boxlab_degree_rep(
    g: *const BoxlabGraph,
    seed: u64,
    out: *mut *mut BoxlabCertificate,
) -> BoxlabStatus {
    guard(|| {
        let (Some(g), false) = (g.as_ref(), out.is_null()) else {
            return Err(null());
        };
        let c = bounded_degree_rep(&g.inner, seed, &Options::from_env()).map_err(fail)?;
        *out = Box::into_raw(Box::new(BoxlabCertificate { inner: c }));
        Ok(())
    })
}

/// Pair-elimination construction, at most `max(1, n/2)` dimensions.
///
/// # Safety
/// `g` is a live graph handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn boxlab_pair_elimination(
    g: *const BoxlabGraph,
    out: *mut *mut BoxlabCertificate,
) -> BoxlabStatus {
    guard(|| {
        let (Some(g), false) = (g.as_ref(), out.is_null()) else {
            return Err(null());
        };
        let rep = pair_elimination_rep(&g.inner);
        let params = Params::PairElimination {
            vertices: g.inner.n(),
        };
        let c = Certificate::new(
            "pairs",
            0,
            Target::Whole,
            params,
            serde_json::Value::Null,
            rep,
            false,
        )
        .map_err(fail)?;
        *out = Box::into_raw(Box::new(BoxlabCertificate { inner: c }));
        Ok(())
    })
}

/// Exact boxicity for graphs with at most 8 vertices.
///
/// # Safety
/// `g` is a live graph handle; `value` is writable.
#[no_mangle]
pub unsafe extern "C" fn boxlab_exact_boxicity(
    g: *const BoxlabGraph,
    value: *mut usize,
) -> BoxlabStatus {
    guard(|| {
        let (Some(g), false) = (g.as_ref(), value.is_null()) else {
            return Err(null());
        };
        *value = exact_boxicity(&g.inner).map_err(fail)?.0;
        Ok(())
    })
}

/// # Safety
/// `src` is a NUL-terminated JSON string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn boxlab_certificate_from_json(
    src: *const c_char,
    out: *mut *mut BoxlabCertificate,
) -> BoxlabStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let c = Certificate::from_json(text(src)?).map_err(fail)?;
        *out = Box::into_raw(Box::new(BoxlabCertificate { inner: c }));
        Ok(())
    })
}

/// JSON text of the certificate; release with [`boxlab_string_free`].
///
/// # Safety
/// `c` is NULL or a live certificate handle.
#[no_mangle]
pub unsafe extern "C" fn boxlab_certificate_to_json(c: *const BoxlabCertificate) -> *mut c_char {
    let Some(c) = c.as_ref() else {
        null();
        return ptr::null_mut();
    };
    CString::new(c.inner.to_json()).map_or(ptr::null_mut(), CString::into_raw)
}

/// # Safety
/// `c` is NULL or a live certificate handle.
#[no_mangle]
pub unsafe extern "C" fn boxlab_certificate_dimension(c: *const BoxlabCertificate) -> usize {
    c.as_ref().map_or(0, |c| c.inner.d)
}

/// # Safety
/// `c` is NULL or a live certificate handle.
#[no_mangle]
pub unsafe extern "C" fn boxlab_certificate_target_dimension(c: *const BoxlabCertificate) -> usize {
    c.as_ref().map_or(0, |c| c.inner.target_d)
}

/// Checks the certificate's boxes against `g`. `violations` (may be NULL)
/// receives the number of offending pairs.
///
/// # Safety
/// `c` and `g` are live handles; `violations` is NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn boxlab_certificate_verify(
    c: *const BoxlabCertificate,
    g: *const BoxlabGraph,
    violations: *mut usize,
) -> BoxlabStatus {
    guard(|| {
        let (Some(c), Some(g)) = (c.as_ref(), g.as_ref()) else {
            return Err(null());
        };
        let report = c.inner.verify(&g.inner).map_err(fail)?;
        if !violations.is_null() {
            *violations = report.total;
        }
        report.into_result().map_err(fail)?;
        c.inner.replay_params().map_err(fail)
    })
}

/// # Safety
/// `c` is NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn boxlab_certificate_free(c: *mut BoxlabCertificate) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// # Safety
/// `s` is NULL or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn boxlab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
