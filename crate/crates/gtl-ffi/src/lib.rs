//! C ABI over the `gtl` crate.
//!
//! Every entry point returns a [`GtlStatus`]. Results come back through out
//! pointers: opaque handles are released with their `*_free` function, and
//! strings with [`gtl_string_free`]. After a non-OK status,
//! [`gtl_last_error`] describes the failure on the calling thread.
//! Panics never cross the boundary; they are reported as `GTL_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gtl::proofcheck::{check_proof, Proof};
use gtl::semantics::{eval_bi, eval_real, PeriodicBiModel, PeriodicRealModel};
use gtl::solver::{falsifiable, SearchLimits, Verdict};
use gtl::witness::{certify_witness, Witness};
use gtl::{Error, Formula};

/// Result code of every call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GtlStatus {
    Ok = 0,
    /// A well-formed input with a negative answer: not certified, proof rejected.
    Rejected = 1,
    NullArgument = 2,
    InvalidUtf8 = 3,
    Syntax = 4,
    /// The formula is outside the fragment the call accepts.
    NotClassical = 5,
    /// Malformed model, system, witness or proof JSON.
    BadInput = 6,
    Exhausted = 7,
    Panic = 8,
}

/// Outcome of [`gtl_decide`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GtlVerdict {
    Valid = 0,
    Falsifiable = 1,
    Exhausted = 3,
}

/// A parsed formula.
pub struct GtlFormula(Formula);

/// A falsifiability witness.
pub struct GtlWitness(Witness);

thread_local! {
    static LAST: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST.with(|l| *l.borrow_mut() = c);
}

struct Fail(GtlStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Syntax { .. } | Error::UnknownToken { .. } => GtlStatus::Syntax,
            Error::CoImpliesNotClassical | Error::NotClassical(_) => GtlStatus::NotClassical,
            Error::Exhausted(_) => GtlStatus::Exhausted,
            _ => GtlStatus::BadInput,
        };
        Fail(status, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<GtlStatus, Fail>) -> GtlStatus {
    set_last("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err(Fail(s, msg))) => {
            set_last(&msg);
            s
        }
        Err(_) => {
            set_last("internal panic");
            GtlStatus::Panic
        }
    }
}

fn null() -> Fail {
    Fail(GtlStatus::NullArgument, "null argument".into())
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p).to_str().map_err(|e| Fail(GtlStatus::InvalidUtf8, e.to_string()))
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null());
    }
    out.write(v);
    Ok(())
}

fn owned(s: String) -> *mut c_char {
    CString::new(s).expect("no interior nul").into_raw()
}

/// Library version as a static nul-terminated string.
#[no_mangle]
pub extern "C" fn gtl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread, or the reason behind an
/// exhausted verdict; empty otherwise.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn gtl_last_error() -> *const c_char {
    LAST.with(|l| l.borrow().as_ptr())
}

/// # Safety
/// `s` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn gtl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `src` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gtl_formula_parse(src: *const c_char, out: *mut *mut GtlFormula) -> GtlStatus {
    guard(|| {
        let f = gtl::parse(text(src)?)?;
        put(out, Box::into_raw(Box::new(GtlFormula(f))))?;
        Ok(GtlStatus::Ok)
    })
}

/// # Safety
/// `f` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn gtl_formula_free(f: *mut GtlFormula) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Prints `f` in ASCII, or with logical glyphs when `unicode` is nonzero.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gtl_formula_print(f: *const GtlFormula, unicode: i32, out: *mut *mut c_char) -> GtlStatus {
    guard(|| {
        let f = &f.as_ref().ok_or_else(null)?.0;
        let s = if unicode != 0 { gtl::formula::print_unicode(f) } else { gtl::formula::print(f) };
        put(out, owned(s))?;
        Ok(GtlStatus::Ok)
    })
}

/// Negative translation of a classical formula.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gtl_translate(f: *const GtlFormula, out: *mut *mut GtlFormula) -> GtlStatus {
    guard(|| {
        let f = &f.as_ref().ok_or_else(null)?.0;
        let t = gtl::formula::negative_translation(f)?;
        put(out, Box::into_raw(Box::new(GtlFormula(t))))?;
        Ok(GtlStatus::Ok)
    })
}

/// Decides validity. `max_states` of zero means no cap beyond
/// `GTL_MAX_STATES`. A witness is stored in `witness` when the formula is
/// falsifiable and `witness` is not null; otherwise it is set to null.
///
/// # Safety
/// `f` must be a live handle; `verdict` must be writable; `witness` may be null.
#[no_mangle]
pub unsafe extern "C" fn gtl_decide(
    f: *const GtlFormula,
    max_states: usize,
    verdict: *mut GtlVerdict,
    witness: *mut *mut GtlWitness,
) -> GtlStatus {
    guard(|| {
        let f = &f.as_ref().ok_or_else(null)?.0;
        if verdict.is_null() {
            return Err(null());
        }
        let mut limits = SearchLimits::from_env();
        if max_states > 0 {
            limits.max_states = max_states;
        }
        let (v, w) = match falsifiable(f, limits)? {
            Verdict::Valid => (GtlVerdict::Valid, None),
            Verdict::Falsifiable(w) => (GtlVerdict::Falsifiable, Some(*w)),
            Verdict::ResourceExhausted(why) => {
                set_last(&why);
                (GtlVerdict::Exhausted, None)
            }
        };
        verdict.write(v);
        if !witness.is_null() {
            witness.write(w.map_or(ptr::null_mut(), |w| Box::into_raw(Box::new(GtlWitness(w)))));
        }
        Ok(GtlStatus::Ok)
    })
}

/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gtl_witness_from_json(json: *const c_char, out: *mut *mut GtlWitness) -> GtlStatus {
    guard(|| {
        let w = Witness::from_json_str(text(json)?)?;
        put(out, Box::into_raw(Box::new(GtlWitness(w))))?;
        Ok(GtlStatus::Ok)
    })
}

/// # Safety
/// `w` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gtl_witness_to_json(w: *const GtlWitness, out: *mut *mut c_char) -> GtlStatus {
    guard(|| {
        let w = &w.as_ref().ok_or_else(null)?.0;
        put(out, owned(w.to_json_string()))?;
        Ok(GtlStatus::Ok)
    })
}

/// `GTL_STATUS_OK` when every clause holds, `GTL_STATUS_REJECTED` with the
/// first failing clause in [`gtl_last_error`] otherwise.
///
/// # Safety
/// `w` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn gtl_witness_certify(w: *const GtlWitness) -> GtlStatus {
    guard(|| {
        let w = &w.as_ref().ok_or_else(null)?.0;
        match certify_witness(w).first() {
            None => Ok(GtlStatus::Ok),
            Some(why) => Err(Fail(GtlStatus::Rejected, why)),
        }
    })
}

/// # Safety
/// `w` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn gtl_witness_free(w: *mut GtlWitness) {
    if !w.is_null() {
        drop(Box::from_raw(w));
    }
}

/// Evaluates `f` on a model given as JSON. Real-valued models yield a
/// rational such as `"1/2"`; bi-relational ones yield `"true"` or `"false"`
/// at `world` (ignored for real models).
///
/// # Safety
/// `model_json` must be a nul-terminated string; `f` a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gtl_eval(
    model_json: *const c_char,
    f: *const GtlFormula,
    time: usize,
    world: usize,
    out: *mut *mut c_char,
) -> GtlStatus {
    guard(|| {
        let src = text(model_json)?;
        let f = &f.as_ref().ok_or_else(null)?.0;
        let v = match PeriodicRealModel::from_json_str(src) {
            Ok(m) => eval_real(&m, f, time)?.to_string(),
            Err(_) => eval_bi(&PeriodicBiModel::from_json_str(src)?, f, world, time)?.to_string(),
        };
        put(out, owned(v))?;
        Ok(GtlStatus::Ok)
    })
}

/// `GTL_STATUS_OK` for a correct proof, `GTL_STATUS_REJECTED` with the
/// offending step in [`gtl_last_error`] otherwise.
///
/// # Safety
/// `proof_json` must be a nul-terminated string.
#[no_mangle]
pub unsafe extern "C" fn gtl_check_proof(proof_json: *const c_char) -> GtlStatus {
    guard(|| {
        let p = Proof::from_json_str(text(proof_json)?)?;
        match check_proof(&p) {
            Ok(()) => Ok(GtlStatus::Ok),
            Err(e) => Err(Fail(GtlStatus::Rejected, e.to_string())),
        }
    })
}
