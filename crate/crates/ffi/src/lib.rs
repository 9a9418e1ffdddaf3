//! C ABI over the omegalie toolkit.
//!
//! Every function returns an `OlStatus`; results come back through out
//! pointers. Handles are opaque and released with their `_free` function.
//! Strings returned through `char **` are owned by the caller and released
//! with `ol_string_free`. After a non-`OL_STATUS_OK` status,
//! `ol_last_error_message` describes the failure on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use omegalie::classify3::{
    canonical_algebra, classify, iso_witness, CanonicalLabel, ClassificationResult, ClassifyError, ClassifyOptions,
    IsoOutcome,
};
use omegalie::fields::Field;
use omegalie::groebner::{read_ideal_file, write_polynomials};
use omegalie::omega::{read_algebra_unchecked, validate, write_algebra, OmegaAlgebra};
use omegalie::report::ReportTable;
use omegalie::suite::{default_fields, run_section, Section};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OlStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// Malformed algebra, ideal, label or field text.
    Parse = 3,
    /// Well-formed input outside the domain: not ω-Lie, ω = 0, wrong dimension.
    Invalid = 4,
    /// A quadratic field extension is needed and was not allowed.
    ExtensionRequired = 5,
    /// A verification check or internal invariant failed.
    CheckFailed = 6,
    /// A panic was caught at the boundary.
    Panic = 7,
}

/// A parsed algebra with its field and ω.
pub struct OlAlgebra(OmegaAlgebra);

/// A label, witness and case trace.
pub struct OlClassification(ClassificationResult);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OlSection {
    All = 0,
    Variety = 1,
    Classification = 2,
    Components = 3,
}

/// Continue over a quadratic extension instead of failing.
pub const OL_ALLOW_EXTENSION: u32 = 1;
/// Keep α as computed instead of the pair representative.
pub const OL_STRICT_C_LABELS: u32 = 2;

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure(OlStatus, String);

impl From<ClassifyError> for Failure {
    fn from(e: ClassifyError) -> Failure {
        let status = match e {
            ClassifyError::ExtensionRequired(_) => OlStatus::ExtensionRequired,
            ClassifyError::Internal(_) => OlStatus::CheckFailed,
            ClassifyError::InvalidLabel(_) | ClassifyError::Parse { .. } | ClassifyError::Field(_) => OlStatus::Parse,
            _ => OlStatus::Invalid,
        };
        Failure(status, e.to_string())
    }
}

fn parse_failure(e: impl std::fmt::Display) -> Failure {
    Failure(OlStatus::Parse, e.to_string())
}

fn set_last_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = c);
}

/// Runs `body`, records any failure message and maps panics to `Panic`.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> OlStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_last_error("");
            OlStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_last_error(&message);
            status
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_last_error(&message);
            OlStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(OlStatus::NullArgument, format!("{name} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(OlStatus::InvalidUtf8, format!("{name} is not UTF-8")))
}

unsafe fn ref_arg<'a, T>(p: *const T, name: &str) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure(OlStatus::NullArgument, format!("{name} is null")))
}

fn out_arg<T>(p: *mut T, name: &str) -> Result<(), Failure> {
    if p.is_null() {
        Err(Failure(OlStatus::NullArgument, format!("{name} is null")))
    } else {
        Ok(())
    }
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap_or_default().into_raw()
}

/// Parses an algebra file. Structural checks only; see `ol_algebra_validate`.
///
/// # Safety
/// `text` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn ol_algebra_parse(text: *const c_char, out: *mut *mut OlAlgebra) -> OlStatus {
    guard(|| {
        out_arg(out, "out")?;
        let text = str_arg(text, "text")?;
        let alg = read_algebra_unchecked(text).map_err(parse_failure)?;
        *out = Box::into_raw(Box::new(OlAlgebra(alg)));
        Ok(())
    })
}

/// The canonical algebra for `A`, `B`, `D` or `C:<alpha>` over `field`
/// (`Q`, `Fp:<p>`; null means `Q`).
///
/// # Safety
/// `label` and a non-null `field` are NUL-terminated strings; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn ol_algebra_canonical(
    label: *const c_char,
    field: *const c_char,
    out: *mut *mut OlAlgebra,
) -> OlStatus {
    guard(|| {
        out_arg(out, "out")?;
        let label = str_arg(label, "label")?;
        let k: Field = if field.is_null() {
            Field::rationals()
        } else {
            str_arg(field, "field")?.parse().map_err(parse_failure)?
        };
        let label = CanonicalLabel::parse(label, &k)?;
        *out = Box::into_raw(Box::new(OlAlgebra(canonical_algebra(&label, &k)?)));
        Ok(())
    })
}

/// Writes 1 to `valid` if the ω-Jacobi identity and skewness hold, else 0;
/// the failure description is then available from `ol_last_error_message`.
///
/// # Safety
/// `alg` is a live handle; `valid` is writable.
#[no_mangle]
pub unsafe extern "C" fn ol_algebra_validate(alg: *const OlAlgebra, valid: *mut i32) -> OlStatus {
    let mut detail = String::new();
    let status = guard(|| {
        out_arg(valid, "valid")?;
        let report = validate(&ref_arg(alg, "alg")?.0);
        *valid = i32::from(report.is_valid());
        if !report.is_valid() {
            detail = report.to_string();
        }
        Ok(())
    });
    if status == OlStatus::Ok && !detail.is_empty() {
        set_last_error(&detail);
    }
    status
}

/// The algebra file text of `alg`.
///
/// # Safety
/// `alg` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn ol_algebra_to_string(alg: *const OlAlgebra, out: *mut *mut c_char) -> OlStatus {
    guard(|| {
        out_arg(out, "out")?;
        *out = into_c_string(write_algebra(&ref_arg(alg, "alg")?.0));
        Ok(())
    })
}

/// # Safety
/// `alg` is null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ol_algebra_free(alg: *mut OlAlgebra) {
    if !alg.is_null() {
        drop(Box::from_raw(alg));
    }
}

/// Classifies a 3-dimensional non-Lie ω-Lie algebra. `flags` is a bitwise
/// or of `OL_ALLOW_EXTENSION` and `OL_STRICT_C_LABELS`.
///
/// # Safety
/// `alg` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn ol_classify(alg: *const OlAlgebra, flags: u32, out: *mut *mut OlClassification) -> OlStatus {
    guard(|| {
        out_arg(out, "out")?;
        let opts = ClassifyOptions {
            allow_extension: flags & OL_ALLOW_EXTENSION != 0,
            strict_c_labels: flags & OL_STRICT_C_LABELS != 0,
        };
        let r = classify(&ref_arg(alg, "alg")?.0, opts)?;
        *out = Box::into_raw(Box::new(OlClassification(r)));
        Ok(())
    })
}

/// The label text: `A`, `B`, `D` or `C:<alpha>`.
///
/// # Safety
/// `result` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn ol_classification_label(result: *const OlClassification, out: *mut *mut c_char) -> OlStatus {
    guard(|| {
        out_arg(out, "out")?;
        *out = into_c_string(ref_arg(result, "result")?.0.label.to_string());
        Ok(())
    })
}

/// The replayable record form: `label`, `field`, `extension`, `witness`,
/// then one `step` line per move.
///
/// # Safety
/// `result` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn ol_classification_to_string(
    result: *const OlClassification,
    out: *mut *mut c_char,
) -> OlStatus {
    guard(|| {
        out_arg(out, "out")?;
        *out = into_c_string(ref_arg(result, "result")?.0.to_text());
        Ok(())
    })
}

/// # Safety
/// `result` is null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ol_classification_free(result: *mut OlClassification) {
    if !result.is_null() {
        drop(Box::from_raw(result));
    }
}

/// Writes 1 to `isomorphic` and the witness matrix to `witness` (if non-null)
/// when an isomorphism exists; otherwise 0 and the reason to `witness`.
///
/// # Safety
/// `first` and `second` are live handles; `isomorphic` is writable; `witness`
/// is null or writable.
#[no_mangle]
pub unsafe extern "C" fn ol_iso(
    first: *const OlAlgebra,
    second: *const OlAlgebra,
    allow_extension: i32,
    isomorphic: *mut i32,
    witness: *mut *mut c_char,
) -> OlStatus {
    guard(|| {
        out_arg(isomorphic, "isomorphic")?;
        let (a, b) = (ref_arg(first, "first")?, ref_arg(second, "second")?);
        let (flag, text) = match iso_witness(&a.0, &b.0, allow_extension != 0)? {
            IsoOutcome::Isomorphic { witness, .. } => (1, witness.matrix().encode()),
            IsoOutcome::NonIsomorphic { reason } => (0, reason),
        };
        *isomorphic = flag;
        if !witness.is_null() {
            *witness = into_c_string(text);
        }
        Ok(())
    })
}

/// The reduced Gröbner basis of an ideal file, as an ideal file.
///
/// # Safety
/// `ideal_text` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn ol_ideal_groebner(ideal_text: *const c_char, out: *mut *mut c_char) -> OlStatus {
    guard(|| {
        out_arg(out, "out")?;
        let ideal = read_ideal_file(str_arg(ideal_text, "ideal_text")?).map_err(parse_failure)?;
        *out = into_c_string(write_polynomials(ideal.ring(), ideal.groebner_basis()));
        Ok(())
    })
}

/// Runs a verification suite over `Q` and `Fp:101` and writes the report
/// table. Returns `CheckFailed` if any check fails; the report is written
/// either way.
///
/// # Safety
/// `report` is writable.
#[no_mangle]
pub unsafe extern "C" fn ol_verify(section: OlSection, report: *mut *mut c_char) -> OlStatus {
    guard(|| {
        out_arg(report, "report")?;
        let sections: &[Section] = match section {
            OlSection::All => &Section::ALL,
            OlSection::Variety => &[Section::Variety],
            OlSection::Classification => &[Section::Classification],
            OlSection::Components => &[Section::Components],
        };
        let fields = default_fields();
        let mut table = ReportTable::new();
        for s in sections {
            table.extend(run_section(*s, &fields));
        }
        *report = into_c_string(table.to_string());
        if table.all_passed() {
            Ok(())
        } else {
            Err(Failure(OlStatus::CheckFailed, "a verification check failed".into()))
        }
    })
}

/// # Safety
/// `s` is null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ol_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The message of the last failure on this thread; empty after success.
/// Valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn ol_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}
