//! C ABI for the jcubic workbench: opaque handles, integer status codes,
//! and JSON report strings. The header is generated by cbindgen into
//! `include/jcubic.h` at build time.
//!
//! Ownership rules: every `*_new` has a matching `*_free`; strings returned
//! through out-parameters are owned by the caller and released with
//! [`jc_string_free`]. All functions are safe to call from any thread;
//! handles are immutable once created but must not be freed while in use.

use std::ffi::{c_char, CStr, CString};

use jcubic::cubic_jordan::CubicJordan;
use jcubic::specdoc::SpecDocument;
use jcubic::{Error, Field};

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum JcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    DomainError = 4,
    BudgetExceeded = 5,
    PrecisionExhausted = 6,
    VerdictFailure = 7,
}

fn status_of(err: &Error) -> JcStatus {
    match err {
        Error::ParseError { .. }
        | Error::UnknownConstruction(_)
        | Error::FieldDescriptorError(_) => JcStatus::ParseError,
        Error::BudgetExceeded(_) => JcStatus::BudgetExceeded,
        Error::PrecisionExhausted(_) | Error::PrecisionTooSmall(_) => JcStatus::PrecisionExhausted,
        _ => JcStatus::DomainError,
    }
}

/// Opaque field handle.
pub struct JcField {
    inner: Field,
}

/// Opaque cubic Jordan algebra handle.
pub struct JcAlgebra {
    field: Field,
    inner: CubicJordan,
}

unsafe fn cstr<'a>(p: *const c_char) -> Result<&'a str, JcStatus> {
    if p.is_null() {
        return Err(JcStatus::NullPointer);
    }
    unsafe { CStr::from_ptr(p) }.to_str().map_err(|_| JcStatus::InvalidUtf8)
}

fn give_string(out: *mut *mut c_char, s: String) -> JcStatus {
    if out.is_null() {
        return JcStatus::NullPointer;
    }
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            JcStatus::Ok
        }
        Err(_) => JcStatus::InvalidUtf8,
    }
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn jc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Release a string produced by this library.
///
/// # Safety
/// `s` must have been returned by a jcubic function and not freed before.
#[no_mangle]
pub unsafe extern "C" fn jc_string_free(s: *mut c_char) {
    if !s.is_null() {
        unsafe {
            let _ = CString::from_raw(s);
        }
    }
}

/// Parse a field descriptor (`Q`, `Fp:7`, `Fq:2:3:x^3+x+1`,
/// `Laurent:Fp:5:t:prec=16`, ...) into a handle.
///
/// # Safety
/// `descriptor` must be a valid NUL-terminated string; `out` must be a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn jc_field_new(
    descriptor: *const c_char,
    out: *mut *mut JcField,
) -> JcStatus {
    let desc = match unsafe { cstr(descriptor) } {
        Ok(d) => d,
        Err(s) => return s,
    };
    if out.is_null() {
        return JcStatus::NullPointer;
    }
    match Field::parse(desc) {
        Ok(f) => {
            unsafe { *out = Box::into_raw(Box::new(JcField { inner: f })) };
            JcStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// # Safety
/// `f` must be a handle from [`jc_field_new`], freed at most once.
#[no_mangle]
pub unsafe extern "C" fn jc_field_free(f: *mut JcField) {
    if !f.is_null() {
        unsafe {
            let _ = Box::from_raw(f);
        }
    }
}

/// Characteristic of the field (0 for the rationals).
///
/// # Safety
/// `f` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn jc_field_characteristic(f: *const JcField, out: *mut u64) -> JcStatus {
    if f.is_null() || out.is_null() {
        return JcStatus::NullPointer;
    }
    unsafe { *out = (*f).inner.characteristic() };
    JcStatus::Ok
}

/// Canonical descriptor of the field, as an owned string.
///
/// # Safety
/// `f` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn jc_field_descriptor(
    f: *const JcField,
    out: *mut *mut c_char,
) -> JcStatus {
    if f.is_null() {
        return JcStatus::NullPointer;
    }
    give_string(out, unsafe { (*f).inner.descriptor() })
}

/// Build a cubic Jordan algebra from a construction literal, e.g.
/// `her3(cd(F,1,1),gamma=1,1,1)` or `tits1(etale3(minpoly:x^3+x+1),mu=t)`.
///
/// # Safety
/// `f` must be a live field handle, `literal` a valid string, `out` a valid
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn jc_algebra_new(
    f: *const JcField,
    literal: *const c_char,
    out: *mut *mut JcAlgebra,
) -> JcStatus {
    if f.is_null() || out.is_null() {
        return JcStatus::NullPointer;
    }
    let text = match unsafe { cstr(literal) } {
        Ok(t) => t,
        Err(s) => return s,
    };
    let field = unsafe { (*f).inner.clone() };
    match jcubic::literal::parse_algebra(&field, text) {
        Ok(j) => {
            unsafe { *out = Box::into_raw(Box::new(JcAlgebra { field, inner: j })) };
            JcStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// # Safety
/// `a` must be a handle from [`jc_algebra_new`], freed at most once.
#[no_mangle]
pub unsafe extern "C" fn jc_algebra_free(a: *mut JcAlgebra) {
    if !a.is_null() {
        unsafe {
            let _ = Box::from_raw(a);
        }
    }
}

/// Dimension of the algebra over its field.
///
/// # Safety
/// `a` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn jc_algebra_dim(a: *const JcAlgebra, out: *mut usize) -> JcStatus {
    if a.is_null() || out.is_null() {
        return JcStatus::NullPointer;
    }
    unsafe { *out = (*a).inner.dim() };
    JcStatus::Ok
}

/// Norm and adjoint/trace data of one element (a comma-separated coordinate
/// vector) as a JSON object with keys "norm", "sharp", "lin_trace",
/// "quad_trace", "charpoly".
///
/// # Safety
/// `a` must be a live handle, `vector` a valid string, `out_json` a valid
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn jc_algebra_cubic_data(
    a: *const JcAlgebra,
    vector: *const c_char,
    out_json: *mut *mut c_char,
) -> JcStatus {
    if a.is_null() {
        return JcStatus::NullPointer;
    }
    let text = match unsafe { cstr(vector) } {
        Ok(t) => t,
        Err(s) => return s,
    };
    let alg = unsafe { &*a };
    let x = match jcubic::literal::parse_vector(&alg.field, text, alg.inner.dim()) {
        Ok(x) => x,
        Err(e) => return status_of(&e),
    };
    match alg.inner.cubic_data(&x) {
        Ok(d) => {
            let f = &alg.field;
            let doc = serde_json::json!({
                "norm": f.format(&d.norm),
                "sharp": d.sharp.iter().map(|c| f.format(c)).collect::<Vec<_>>(),
                "lin_trace": f.format(&d.lin_trace),
                "quad_trace": f.format(&d.quad_trace),
                "charpoly": d.charpoly.iter().map(|c| f.format(c)).collect::<Vec<_>>(),
            });
            give_string(out_json, doc.to_string())
        }
        Err(e) => status_of(&e),
    }
}

/// Run the axiom suite on the algebra with the given sample count.
///
/// # Safety
/// `a` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn jc_algebra_verify(a: *const JcAlgebra, samples: usize) -> JcStatus {
    if a.is_null() {
        return JcStatus::NullPointer;
    }
    match unsafe { &*a }.inner.validate(samples) {
        Ok(()) => JcStatus::Ok,
        Err(Error::VerificationFailed(_)) => JcStatus::VerdictFailure,
        Err(e) => status_of(&e),
    }
}

/// Run one workbench command (`build`, `verify`, `invariants`,
/// `homogeneity`, `valuation`, `cascade`) against a field descriptor and
/// construction literal, returning the JSON report. The process exit-code
/// convention (0 ok, 1 verdict failure, 2 input error, 3 budget/precision)
/// is reported through `out_exit`.
///
/// # Safety
/// All pointer arguments must be valid; string arguments NUL-terminated.
/// `construction` may be NULL for field-level commands such as `cascade`.
#[no_mangle]
pub unsafe extern "C" fn jc_run(
    field_descriptor: *const c_char,
    construction: *const c_char,
    command: *const c_char,
    seed: u64,
    out_json: *mut *mut c_char,
    out_exit: *mut i32,
) -> JcStatus {
    let field = match unsafe { cstr(field_descriptor) } {
        Ok(t) => t,
        Err(s) => return s,
    };
    let cmd = match unsafe { cstr(command) } {
        Ok(t) => t,
        Err(s) => return s,
    };
    let construction = if construction.is_null() {
        None
    } else {
        match unsafe { cstr(construction) } {
            Ok(t) => Some(t.to_string()),
            Err(s) => return s,
        }
    };
    if !jcubic::specdoc::KNOWN_COMMANDS.contains(&cmd) {
        return JcStatus::ParseError;
    }
    let doc = SpecDocument {
        field: field.to_string(),
        construction,
        seed,
        commands: vec![cmd.to_string()],
        ..SpecDocument::default()
    };
    let (report, exit) = jcubic::cli::run_document(&doc);
    if !out_exit.is_null() {
        unsafe { *out_exit = exit };
    }
    give_string(out_json, report.to_json())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CString;
    use std::ptr;

    #[test]
    fn field_and_algebra_round_trip() {
        let desc = CString::new("Fp:5").unwrap();
        let mut field: *mut JcField = ptr::null_mut();
        unsafe {
            assert!(jc_field_new(desc.as_ptr(), &mut field) == JcStatus::Ok);
            let mut ch = 0u64;
            assert!(jc_field_characteristic(field, &mut ch) == JcStatus::Ok);
            assert_eq!(ch, 5);
            let lit = CString::new("her3(cd(F,1,1),gamma=1,1,1)").unwrap();
            let mut alg: *mut JcAlgebra = ptr::null_mut();
            assert!(jc_algebra_new(field, lit.as_ptr(), &mut alg) == JcStatus::Ok);
            let mut dim = 0usize;
            assert!(jc_algebra_dim(alg, &mut dim) == JcStatus::Ok);
            assert_eq!(dim, 15);
            assert!(jc_algebra_verify(alg, 20) == JcStatus::Ok);
            let v = CString::new("1,1,1,0,0,0,0,0,0,0,0,0,0,0,0").unwrap();
            let mut json: *mut c_char = ptr::null_mut();
            assert!(jc_algebra_cubic_data(alg, v.as_ptr(), &mut json) == JcStatus::Ok);
            let s = CStr::from_ptr(json).to_str().unwrap().to_string();
            assert!(s.contains("\"norm\":\"1\""), "{s}");
            jc_string_free(json);
            jc_algebra_free(alg);
            jc_field_free(field);
        }
    }

    #[test]
    fn run_entry_point() {
        let field = CString::new("Laurent:Fp:5:t").unwrap();
        let cons = CString::new("tits1(etale3(minpoly:x^3+x+1),mu=t)").unwrap();
        let cmd = CString::new("valuation").unwrap();
        let mut json: *mut c_char = ptr::null_mut();
        let mut exit = -1i32;
        unsafe {
            let st = jc_run(field.as_ptr(), cons.as_ptr(), cmd.as_ptr(), 3, &mut json, &mut exit);
            assert!(st == JcStatus::Ok);
            assert_eq!(exit, 0);
            let s = CStr::from_ptr(json).to_str().unwrap().to_string();
            assert!(s.contains("RamifiedFirstTits"), "{s}");
            jc_string_free(json);
        }
    }

    #[test]
    fn error_statuses() {
        let bad = CString::new("Fp:4").unwrap();
        let mut field: *mut JcField = ptr::null_mut();
        unsafe {
            assert!(jc_field_new(bad.as_ptr(), &mut field) == JcStatus::DomainError);
            assert!(jc_field_new(ptr::null(), &mut field) == JcStatus::NullPointer);
        }
    }
}
