//! C ABI over `koszulreg`.
//!
//! Cases are opaque handles built from the JSON case format. Results come back as
//! NUL-terminated JSON strings owned by the library; release them with `kr_string_free`.
//! On failure the message is available from `kr_last_error` on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use koszulreg::bounds::{FamilyKind, FamilySpec, Verdict};
use koszulreg::cli::{self, exit, CaseFile, CliError, ParsedCase, What};

/// Status codes; the nonzero values below 10 match the exit codes of the command-line tool.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KrStatus {
    Ok = 0,
    Parse = 2,
    Semantic = 3,
    Precondition = 4,
    Violation = 5,
    Generation = 6,
    NullPointer = 10,
    InvalidUtf8 = 11,
    Panic = 12,
}

impl KrStatus {
    fn from_code(code: i32) -> Self {
        match code {
            exit::VERIFIED => Self::Ok,
            exit::PARSE => Self::Parse,
            exit::PRECONDITION => Self::Precondition,
            exit::VIOLATION => Self::Violation,
            exit::GENERATION => Self::Generation,
            _ => Self::Semantic,
        }
    }
}

/// A parsed case: ring, ideal generators, optional module and theorem.
pub struct KrCase {
    case: ParsedCase,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<Vec<u8>>) {
    let mut bytes = msg.into();
    bytes.retain(|&b| b != 0);
    let s = CString::new(bytes).expect("no interior NUL");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(s));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Failure(KrStatus, String);

impl From<CliError> for Failure {
    fn from(e: CliError) -> Self {
        Failure(KrStatus::from_code(e.code), e.message)
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(KrStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(KrStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn read_opt_str<'a>(p: *const c_char, what: &str) -> Result<Option<&'a str>, Failure> {
    if p.is_null() {
        Ok(None)
    } else {
        read_str(p, what).map(Some)
    }
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).expect("JSON has no NUL").into_raw()
}

/// Runs `f`, stores the JSON it produces in `*out` and turns failures into a status.
fn guarded<F>(out: *mut *mut c_char, f: F) -> KrStatus
where
    F: FnOnce() -> Result<(KrStatus, String), Failure>,
{
    clear_error();
    if out.is_null() {
        set_error("output pointer is null");
        return KrStatus::NullPointer;
    }
    unsafe { *out = ptr::null_mut() };
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok((status, json))) => {
            unsafe { *out = into_c_string(json) };
            status
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            KrStatus::Panic
        }
    }
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("value serializes")
}

/// Parses a JSON case. Returns null on failure; see `kr_last_error`.
///
/// # Safety
/// `json` must be null or a valid NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn kr_case_from_json(json: *const c_char) -> *mut KrCase {
    clear_error();
    let result = catch_unwind(AssertUnwindSafe(|| -> Result<KrCase, Failure> {
        let text = read_str(json, "json")?;
        let case = CaseFile::from_json(text)?.parse()?;
        Ok(KrCase { case })
    }));
    match result {
        Ok(Ok(c)) => Box::into_raw(Box::new(c)),
        Ok(Err(Failure(_, msg))) => {
            set_error(msg);
            ptr::null_mut()
        }
        Err(_) => {
            set_error("internal panic");
            ptr::null_mut()
        }
    }
}

/// Releases a case. Null is ignored.
///
/// # Safety
/// `handle` must be null or a handle from `kr_case_from_json` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn kr_case_free(handle: *mut KrCase) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Checks one theorem and writes the bound report to `*out`.
///
/// `theorem` may be null to use the theorem of the case file; `dmax < 0` picks the default
/// oracle window. Returns `KR_STATUS_OK`, `KR_STATUS_PRECONDITION` or `KR_STATUS_VIOLATION`
/// with a report, or an error status with `*out` set to null.
///
/// # Safety
/// `handle` must be a live handle, `theorem` null or a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn kr_case_check(
    handle: *const KrCase,
    theorem: *const c_char,
    dmax: i64,
    out: *mut *mut c_char,
) -> KrStatus {
    guarded(out, || {
        let case = handle
            .as_ref()
            .ok_or(Failure(KrStatus::NullPointer, "case is null".into()))?;
        let theorem = read_opt_str(theorem, "theorem")?;
        let dmax = (dmax >= 0).then_some(dmax);
        let report = cli::check(&case.case, "ffi", theorem, dmax)?;
        let status = match report.verdict {
            Verdict::Verified => KrStatus::Ok,
            Verdict::PreconditionFailed => KrStatus::Precondition,
            Verdict::Violation => KrStatus::Violation,
        };
        Ok((status, report.to_json()))
    })
}

/// Computes `resolve`, `reg`, `koszul` or `hilbert` and writes the JSON result to `*out`.
///
/// # Safety
/// `handle` must be a live handle, `what` a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn kr_case_compute(
    handle: *const KrCase,
    what: *const c_char,
    dmax: i64,
    out: *mut *mut c_char,
) -> KrStatus {
    guarded(out, || {
        let case = handle
            .as_ref()
            .ok_or(Failure(KrStatus::NullPointer, "case is null".into()))?;
        let what = match read_str(what, "what")? {
            "resolve" => What::Resolve,
            "reg" => What::Reg,
            "koszul" => What::Koszul,
            "hilbert" => What::Hilbert,
            other => return Err(Failure(KrStatus::Semantic, format!("unknown computation `{other}`"))),
        };
        let dmax = (dmax >= 0).then_some(dmax);
        Ok((KrStatus::Ok, pretty(&cli::compute(&case.case, what, dmax)?)))
    })
}

/// Generates and checks `count` cases of a family; writes the fuzz summary to `*out`.
///
/// # Safety
/// `family` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn kr_fuzz(
    family: *const c_char,
    seed: u64,
    count: usize,
    max_vars: usize,
    max_deg: u32,
    out: *mut *mut c_char,
) -> KrStatus {
    guarded(out, || {
        let kind: FamilyKind = read_str(family, "family")?
            .parse()
            .map_err(|e: koszulreg::Error| Failure(KrStatus::Semantic, e.to_string()))?;
        let (code, v) = cli::fuzz(&FamilySpec::new(kind, max_vars, max_deg), seed, count)?;
        Ok((KrStatus::from_code(code), pretty(&v)))
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn kr_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failure on this thread, or null. Valid until the next call on the thread.
#[no_mangle]
pub extern "C" fn kr_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn kr_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
