//! C ABI over `propb`.
//!
//! Conventions:
//!
//! * Every fallible function returns a [`PropbStatus`]; results go through
//!   out-pointers, which are only written on `PROPB_STATUS_OK`.
//! * Hypergraphs are opaque `PropbHypergraph*` handles, released with
//!   [`propb_hypergraph_free`].
//! * Strings returned through `char**` are NUL-terminated, owned by the
//!   caller, and released with [`propb_string_free`].
//! * After a non-OK status, [`propb_last_error`] describes the failure. The
//!   pointer stays valid until the next call on the same thread.
//! * Panics never cross the boundary; they surface as `PROPB_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{self, AssertUnwindSafe};
use std::ptr;

use propb::alteration::{run_alteration, AlterationParams};
use propb::analysis::verify_paper_example;
use propb::colouring::{enumerate_proper, is_two_colourable};
use propb::constructions::{self, derive_h8};
use propb::{io, Error, Hypergraph};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PropbStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ParseError = 3,
    LimitExceeded = 4,
    CheckFailed = 5,
    Panic = 6,
}

/// Opaque hypergraph handle.
pub struct PropbHypergraph(Hypergraph);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: impl Into<String>) {
    let message = CString::new(message.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(message));
}

struct Failure(PropbStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse { .. } => PropbStatus::ParseError,
            Error::EnumerationLimit { .. } => PropbStatus::LimitExceeded,
            Error::RetriesExhausted { .. } => PropbStatus::CheckFailed,
            _ => PropbStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(PropbStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> PropbStatus {
    match panic::catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            PropbStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_last_error(message);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            PropbStatus::Panic
        }
    }
}

unsafe fn handle<'a>(h: *const PropbHypergraph, what: &str) -> Result<&'a Hypergraph, Failure> {
    // SAFETY: the caller passes a live handle from this library or null.
    unsafe { h.as_ref() }
        .map(|h| &h.0)
        .ok_or_else(|| null(what))
}

unsafe fn c_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null(what));
    }
    // SAFETY: non-null and NUL-terminated per the caller contract.
    unsafe { CStr::from_ptr(s) }.to_str().map_err(|_| {
        Failure(
            PropbStatus::InvalidArgument,
            format!("{what} is not valid UTF-8"),
        )
    })
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s)
        .map(CString::into_raw)
        .unwrap_or(ptr::null_mut())
}

unsafe fn put_hypergraph(out: *mut *mut PropbHypergraph, h: Hypergraph) {
    // SAFETY: `out` was checked non-null by the caller of this helper.
    unsafe { *out = Box::into_raw(Box::new(PropbHypergraph(h))) };
}

/// Message for the most recent failure on this thread, or null.
#[no_mangle]
pub extern "C" fn propb_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn propb_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: allocated by `CString::into_raw` in this library.
        drop(unsafe { CString::from_raw(s) });
    }
}

/// # Safety
/// `h` must be null or a handle returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn propb_hypergraph_free(h: *mut PropbHypergraph) {
    if !h.is_null() {
        // SAFETY: allocated by `Box::into_raw` in this library.
        drop(unsafe { Box::from_raw(h) });
    }
}

/// Builds a hypergraph on `v` vertices from `edge_count` edges laid out back
/// to back in `members`; edge `i` has `edge_sizes[i]` entries. Duplicate
/// edges collapse.
///
/// # Safety
/// `members` must point to `Σ edge_sizes[i]` readable values and `edge_sizes`
/// to `edge_count` (either may be null when `edge_count` is 0); `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn propb_hypergraph_new(
    v: usize,
    members: *const u32,
    edge_sizes: *const usize,
    edge_count: usize,
    out: *mut *mut PropbHypergraph,
) -> PropbStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let sizes: &[usize] = if edge_count == 0 {
            &[]
        } else if edge_sizes.is_null() {
            return Err(null("edge_sizes"));
        } else {
            // SAFETY: caller guarantees `edge_count` readable sizes.
            unsafe { std::slice::from_raw_parts(edge_sizes, edge_count) }
        };
        let total = sizes
            .iter()
            .try_fold(0usize, |acc, &s| acc.checked_add(s))
            .ok_or_else(|| Failure(PropbStatus::InvalidArgument, "edge sizes overflow".into()))?;
        let flat: &[u32] = if total == 0 {
            &[]
        } else if members.is_null() {
            return Err(null("members"));
        } else {
            // SAFETY: caller guarantees `total` readable members.
            unsafe { std::slice::from_raw_parts(members, total) }
        };
        let mut edges = Vec::with_capacity(sizes.len());
        let mut offset = 0;
        for &s in sizes {
            edges.push(
                flat[offset..offset + s]
                    .iter()
                    .map(|&x| x as usize)
                    .collect::<Vec<_>>(),
            );
            offset += s;
        }
        let h = Hypergraph::new(v, edges)?;
        // SAFETY: checked non-null above.
        unsafe { put_hypergraph(out, h) };
        Ok(())
    })
}

/// Named construction: `triangle`, `fano`, `seymour-toft`, `h4`, `h8`, `paper-example`.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn propb_hypergraph_construct(
    name: *const c_char,
    out: *mut *mut PropbHypergraph,
) -> PropbStatus {
    guard(|| {
        let name = unsafe { c_str(name, "name") }?;
        if out.is_null() {
            return Err(null("out"));
        }
        let h = constructions::by_name(name)?;
        unsafe { put_hypergraph(out, h) };
        Ok(())
    })
}

/// Parses the `p <v> <m>` text format.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn propb_hypergraph_parse(
    text: *const c_char,
    out: *mut *mut PropbHypergraph,
) -> PropbStatus {
    guard(|| {
        let text = unsafe { c_str(text, "text") }?;
        if out.is_null() {
            return Err(null("out"));
        }
        let h = io::parse(text)?;
        unsafe { put_hypergraph(out, h) };
        Ok(())
    })
}

/// Canonical text serialization; free the result with [`propb_string_free`].
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn propb_hypergraph_serialize(
    h: *const PropbHypergraph,
    out: *mut *mut c_char,
) -> PropbStatus {
    guard(|| {
        let h = unsafe { handle(h, "h") }?;
        if out.is_null() {
            return Err(null("out"));
        }
        unsafe { *out = to_c_string(io::serialize(h)) };
        Ok(())
    })
}

/// # Safety
/// `h` must be a live handle; `vertices` and `edges` must be writable or null.
#[no_mangle]
pub unsafe extern "C" fn propb_hypergraph_shape(
    h: *const PropbHypergraph,
    vertices: *mut usize,
    edges: *mut usize,
) -> PropbStatus {
    guard(|| {
        let h = unsafe { handle(h, "h") }?;
        if !vertices.is_null() {
            unsafe { *vertices = h.vertex_count() };
        }
        if !edges.is_null() {
            unsafe { *edges = h.edge_count() };
        }
        Ok(())
    })
}

/// `q(H) = Σ 2^-|e|` as exact text `numerator/2^exponent` plus an f64 approximation.
///
/// # Safety
/// `h` must be a live handle; `exact` and `approx` must be writable or null.
#[no_mangle]
pub unsafe extern "C" fn propb_hypergraph_q(
    h: *const PropbHypergraph,
    exact: *mut *mut c_char,
    approx: *mut f64,
) -> PropbStatus {
    guard(|| {
        let q = unsafe { handle(h, "h") }?.q_value();
        if !exact.is_null() {
            unsafe { *exact = to_c_string(q.to_string()) };
        }
        if !approx.is_null() {
            unsafe { *approx = q.to_f64() };
        }
        Ok(())
    })
}

/// Edge-set union of two hypergraphs on the same vertex count.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn propb_hypergraph_union(
    a: *const PropbHypergraph,
    b: *const PropbHypergraph,
    out: *mut *mut PropbHypergraph,
) -> PropbStatus {
    guard(|| {
        let (a, b) = unsafe { (handle(a, "a")?, handle(b, "b")?) };
        if out.is_null() {
            return Err(null("out"));
        }
        let u = a.union(b)?;
        unsafe { put_hypergraph(out, u) };
        Ok(())
    })
}

/// Decides 2-colourability. When colourable and `witness` is non-null, writes
/// one byte per vertex (1 red, 0 blue); `witness_len` must be at least the
/// vertex count.
///
/// # Safety
/// `h` must be a live handle; `colourable` must be writable; `witness` must be
/// null or point to `witness_len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn propb_is_two_colourable(
    h: *const PropbHypergraph,
    colourable: *mut bool,
    witness: *mut u8,
    witness_len: usize,
) -> PropbStatus {
    guard(|| {
        let h = unsafe { handle(h, "h") }?;
        if colourable.is_null() {
            return Err(null("colourable"));
        }
        let v = h.vertex_count();
        if !witness.is_null() && witness_len < v {
            return Err(Failure(
                PropbStatus::InvalidArgument,
                format!("witness buffer holds {witness_len} bytes, need {v}"),
            ));
        }
        let decision = is_two_colourable(h);
        unsafe { *colourable = decision.colourable() };
        if let (Some(w), false) = (&decision.witness, witness.is_null()) {
            // SAFETY: buffer length checked above.
            let buf = unsafe { std::slice::from_raw_parts_mut(witness, v) };
            for (x, b) in buf.iter_mut().enumerate() {
                *b = u8::from(w.is_red(x));
            }
        }
        Ok(())
    })
}

/// Exact number of proper colourings as decimal text. Fails with
/// `PROPB_STATUS_LIMIT_EXCEEDED` above the exhaustive vertex limit.
///
/// # Safety
/// `h` must be a live handle; `count` must be writable.
#[no_mangle]
pub unsafe extern "C" fn propb_count_proper(
    h: *const PropbHypergraph,
    count: *mut *mut c_char,
) -> PropbStatus {
    guard(|| {
        let h = unsafe { handle(h, "h") }?;
        if count.is_null() {
            return Err(null("count"));
        }
        let r = enumerate_proper(h, false)?;
        unsafe { *count = to_c_string(r.total_proper.to_string()) };
        Ok(())
    })
}

/// Red classes of one member per opposite pair of proper colourings, as edges.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn propb_derive_h8(
    h: *const PropbHypergraph,
    out: *mut *mut PropbHypergraph,
) -> PropbStatus {
    guard(|| {
        let h = unsafe { handle(h, "h") }?;
        if out.is_null() {
            return Err(null("out"));
        }
        let h8 = derive_h8(h)?;
        unsafe { put_hypergraph(out, h8) };
        Ok(())
    })
}

/// Runs the sampling-and-repair construction. `report` (optional) receives
/// the text report. A strict run that exhausts its retries returns
/// `PROPB_STATUS_CHECK_FAILED`.
///
/// # Safety
/// `out` must be writable; `report` must be writable or null.
#[no_mangle]
pub unsafe extern "C" fn propb_run_alteration(
    n: u64,
    seed: u64,
    max_retries: u32,
    strict: bool,
    out: *mut *mut PropbHypergraph,
    report: *mut *mut c_char,
) -> PropbStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let params = AlterationParams::new(n, seed, max_retries, strict)?;
        let outcome = run_alteration(&params)?;
        if !report.is_null() {
            unsafe { *report = to_c_string(outcome.run_report().to_string()) };
        }
        unsafe { put_hypergraph(out, outcome.hypergraph) };
        Ok(())
    })
}

/// Runs the ten checks on the 16-vertex example.
///
/// # Safety
/// `all_passed` must be writable; `report` must be writable or null.
#[no_mangle]
pub unsafe extern "C" fn propb_verify_paper(
    all_passed: *mut bool,
    report: *mut *mut c_char,
) -> PropbStatus {
    guard(|| {
        if all_passed.is_null() {
            return Err(null("all_passed"));
        }
        let r = verify_paper_example();
        unsafe { *all_passed = r.all_passed() };
        if !report.is_null() {
            unsafe { *report = to_c_string(r.to_string()) };
        }
        Ok(())
    })
}
