//! C ABI over the exact engine.
//!
//! Rationals cross the boundary as NUL-terminated strings (`num/den`).
//! Results come back through out-pointers; strings returned by this library
//! must be released with [`plreal_string_free`] and functions with
//! [`plreal_function_free`].

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use plreal::density::diffquot_density;
use plreal::format::{read_pl, write_pl};
use plreal::ornstein::{lazy_eval, SeedFunction, SeedKind};
use plreal::rat::{fmt_exact, parse_rat};
use plreal::{Error, Interval, PLFunction, Rat};

/// Status codes returned by every entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlrealStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Domain = 4,
    Parameter = 5,
    Precondition = 6,
    Resource = 7,
    SelfCheck = 8,
    Panic = 9,
}

impl From<&Error> for PlrealStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Parse { .. } => PlrealStatus::Parse,
            Error::Domain { .. } => PlrealStatus::Domain,
            Error::Parameter(_) | Error::Degenerate(_) => PlrealStatus::Parameter,
            Error::Precondition(_) | Error::FlatSegment { .. } => PlrealStatus::Precondition,
            Error::Resource { .. } => PlrealStatus::Resource,
            Error::SelfCheck(_) => PlrealStatus::SelfCheck,
        }
    }
}

/// Opaque handle to a piecewise-linear function with rational knots.
pub struct PlrealFunction {
    inner: PLFunction,
}

type Res<T> = Result<T, PlrealStatus>;

fn guard(f: impl FnOnce() -> Res<()>) -> PlrealStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PlrealStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => PlrealStatus::Panic,
    }
}

unsafe fn text<'a>(p: *const c_char) -> Res<&'a str> {
    if p.is_null() {
        return Err(PlrealStatus::NullArgument);
    }
    CStr::from_ptr(p).to_str().map_err(|_| PlrealStatus::InvalidUtf8)
}

unsafe fn rational(p: *const c_char) -> Res<Rat> {
    parse_rat(text(p)?.trim()).map_err(|e| PlrealStatus::from(&e))
}

unsafe fn handle<'a>(f: *const PlrealFunction) -> Res<&'a PLFunction> {
    f.as_ref().map(|h| &h.inner).ok_or(PlrealStatus::NullArgument)
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Res<()> {
    if out.is_null() {
        return Err(PlrealStatus::NullArgument);
    }
    // Rationals and PL text never contain NUL.
    *out = CString::new(s).expect("no interior NUL").into_raw();
    Ok(())
}

unsafe fn put_function(out: *mut *mut PlrealFunction, f: PLFunction) -> Res<()> {
    if out.is_null() {
        return Err(PlrealStatus::NullArgument);
    }
    *out = Box::into_raw(Box::new(PlrealFunction { inner: f }));
    Ok(())
}

fn engine<T>(r: plreal::Result<T>) -> Res<T> {
    r.map_err(|e| PlrealStatus::from(&e))
}

fn window(lo: Rat, hi: Rat) -> Res<Interval> {
    engine(Interval::new(lo, hi))
}

/// Static description of a status code. Never free the result.
#[no_mangle]
pub extern "C" fn plreal_status_message(status: PlrealStatus) -> *const c_char {
    let s: &'static CStr = match status {
        PlrealStatus::Ok => c"ok",
        PlrealStatus::NullArgument => c"null argument",
        PlrealStatus::InvalidUtf8 => c"argument is not valid UTF-8",
        PlrealStatus::Parse => c"parse error",
        PlrealStatus::Domain => c"point outside the domain",
        PlrealStatus::Parameter => c"invalid parameter",
        PlrealStatus::Precondition => c"precondition failed",
        PlrealStatus::Resource => c"resource cap exceeded",
        PlrealStatus::SelfCheck => c"self-check failed",
        PlrealStatus::Panic => c"internal panic",
    };
    s.as_ptr()
}

/// Parses `PL v1` text into a new handle.
///
/// # Safety
/// `pl_text` must be a valid NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn plreal_function_parse(pl_text: *const c_char, out: *mut *mut PlrealFunction) -> PlrealStatus {
    guard(|| {
        let f = engine(read_pl(text(pl_text)?))?;
        put_function(out, f)
    })
}

/// A seed by name: `ornstein-g` or `fixed-h`.
///
/// # Safety
/// `name` must be a valid NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn plreal_function_seed(name: *const c_char, out: *mut *mut PlrealFunction) -> PlrealStatus {
    guard(|| {
        let kind = engine(SeedKind::parse(text(name)?))?;
        put_function(out, SeedFunction::of_kind(kind).function().clone())
    })
}

/// # Safety
/// `f` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn plreal_function_free(f: *mut PlrealFunction) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn plreal_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Number of knots of `f`, or 0 for a null handle.
///
/// # Safety
/// `f` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn plreal_function_knot_count(f: *const PlrealFunction) -> usize {
    handle(f).map_or(0, |g| g.knots().len())
}

/// Serializes `f` as `PL v1` text.
///
/// # Safety
/// `f` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn plreal_function_to_text(f: *const PlrealFunction, out: *mut *mut c_char) -> PlrealStatus {
    guard(|| put_string(out, write_pl(handle(f)?)))
}

/// `f(x)` as an exact rational string.
///
/// # Safety
/// `f` must be a live handle, `x` a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn plreal_function_eval(
    f: *const PlrealFunction,
    x: *const c_char,
    out: *mut *mut c_char,
) -> PlrealStatus {
    guard(|| {
        let v = engine(handle(f)?.eval(&rational(x)?))?;
        put_string(out, fmt_exact(&v))
    })
}

/// `λ({x ∈ [lo, hi] : f(x) > y})`.
///
/// # Safety
/// `f` must be a live handle, the rationals NUL-terminated strings, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn plreal_superlevel_measure(
    f: *const PlrealFunction,
    y: *const c_char,
    lo: *const c_char,
    hi: *const c_char,
    out: *mut *mut c_char,
) -> PlrealStatus {
    guard(|| {
        let i = window(rational(lo)?, rational(hi)?)?;
        let set = engine(handle(f)?.superlevel(&rational(y)?, &i))?;
        put_string(out, fmt_exact(&set.measure()))
    })
}

/// Density in `[lo, hi]` of the points where the difference quotient at `x0` is nonnegative.
///
/// # Safety
/// `f` must be a live handle, the rationals NUL-terminated strings, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn plreal_diffquot_density(
    f: *const PlrealFunction,
    x0: *const c_char,
    lo: *const c_char,
    hi: *const c_char,
    out: *mut *mut c_char,
) -> PlrealStatus {
    guard(|| {
        let i = window(rational(lo)?, rational(hi)?)?;
        let d = engine(diffquot_density(handle(f)?, &rational(x0)?, &i))?;
        put_string(out, fmt_exact(&d))
    })
}

/// Level `n` of the self-insertion of a named seed, at `x`.
///
/// # Safety
/// `seed` and `x` must be NUL-terminated strings and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn plreal_lazy_eval(
    seed: *const c_char,
    n: u32,
    x: *const c_char,
    out: *mut *mut c_char,
) -> PlrealStatus {
    guard(|| {
        let kind = engine(SeedKind::parse(text(seed)?))?;
        let v = engine(lazy_eval(&SeedFunction::of_kind(kind), n as usize, &rational(x)?))?;
        put_string(out, fmt_exact(&v))
    })
}
