//! C ABI over the syzchain command layer.
//!
//! A caller creates a [`SyzSession`], runs commands against it and reads the
//! JSON report (or the error document) back through borrowed C strings that
//! stay valid until the next call on the same session. Status codes equal
//! the CLI exit codes.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use syzchain::cli::{error_json, execute, Command, Format, RunConfig, Suite, DEFAULT_PRIME};
use syzchain::resolver::{Mode, VPolicy};
use syzchain::Error;

/// Result of every fallible call. Values 10 and up mirror the library's
/// error codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SyzStatus {
    Ok = 0,
    SuiteFailed = 1,
    NullArgument = 2,
    InvalidUtf8 = 3,
    Panic = 4,
    VariantMismatch = 10,
    UnsupportedField = 11,
    NotPrime = 12,
    RingMismatch = 13,
    DegreeTooHigh = 14,
    ZeroPoint = 15,
    Parse = 16,
    Codimension = 17,
    Threshold = 18,
    Genericity = 19,
    Speciality = 20,
    GeometricPosition = 21,
    Hypothesis = 22,
    DegenerateKernel = 23,
    Coprimality = 24,
    NonMinimal = 25,
    Budget = 26,
    Input = 27,
    Unsupported = 28,
    Io = 29,
}

impl SyzStatus {
    fn from_error(e: &Error) -> SyzStatus {
        use SyzStatus::*;
        match e {
            Error::VariantMismatch(_) => VariantMismatch,
            Error::UnsupportedField(_) => UnsupportedField,
            Error::NotPrime(_) => NotPrime,
            Error::RingMismatch(_) => RingMismatch,
            Error::DegreeTooHigh { .. } => DegreeTooHigh,
            Error::ZeroPoint => ZeroPoint,
            Error::Parse { .. } => Parse,
            Error::Codimension { .. } => Codimension,
            Error::Threshold { .. } => Threshold,
            Error::Genericity { .. } => Genericity,
            Error::Speciality { .. } => Speciality,
            Error::GeometricPosition(_) => GeometricPosition,
            Error::Hypothesis { .. } => Hypothesis,
            Error::DegenerateKernel { .. } => DegenerateKernel,
            Error::Coprimality { .. } => Coprimality,
            Error::NonMinimal(_) => NonMinimal,
            Error::Budget(_) => Budget,
            Error::Input(_) => Input,
            Error::Unsupported(_) => Unsupported,
            Error::Io(_) => Io,
        }
    }
}

/// Opaque per-caller state: coefficient prime, seed, and the buffers behind
/// the strings returned by [`syz_session_output`] and
/// [`syz_session_last_error`].
pub struct SyzSession {
    prime: u64,
    seed: u64,
    output: Option<CString>,
    error: Option<CString>,
}

impl SyzSession {
    fn run(&mut self, command: Command) -> SyzStatus {
        self.output = None;
        self.error = None;
        let cfg = RunConfig {
            command,
            prime: self.prime,
            seed: self.seed,
            format: Format::Json,
            verbosity: 0,
        };
        match catch_unwind(AssertUnwindSafe(|| execute(&cfg))) {
            Ok(Ok(out)) => {
                self.output = Some(c_string(out.render(Format::Json)));
                if out.passed {
                    SyzStatus::Ok
                } else {
                    SyzStatus::SuiteFailed
                }
            }
            Ok(Err(e)) => {
                self.error = Some(c_string(error_json(&e).to_string()));
                SyzStatus::from_error(&e)
            }
            Err(_) => {
                self.error = Some(c_string("{\"error\":{\"code\":\"PANIC\",\"exit_code\":4}}".into()));
                SyzStatus::Panic
            }
        }
    }

    fn fail(&mut self, status: SyzStatus, message: &str) -> SyzStatus {
        self.output = None;
        let code = unsafe { CStr::from_ptr(syz_status_name(status)) }.to_string_lossy();
        self.error = Some(c_string(format!(
            "{{\"error\":{{\"code\":\"{code}\",\"exit_code\":{},\"message\":\"bad argument: {message}\"}}}}",
            status as i32
        )));
        status
    }
}

fn c_string(s: String) -> CString {
    CString::new(s.replace('\0', "")).expect("interior nuls removed")
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, SyzStatus> {
    if p.is_null() {
        return Err(SyzStatus::NullArgument);
    }
    CStr::from_ptr(p).to_str().map_err(|_| SyzStatus::InvalidUtf8)
}

/// New session. `prime == 0` selects the default prime 32003.
#[no_mangle]
pub extern "C" fn syz_session_new(prime: u64, seed: u64) -> *mut SyzSession {
    let prime = if prime == 0 { DEFAULT_PRIME } else { prime };
    Box::into_raw(Box::new(SyzSession {
        prime,
        seed,
        output: None,
        error: None,
    }))
}

/// Releases a session. Null is ignored.
///
/// # Safety
/// `session` must come from [`syz_session_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn syz_session_free(session: *mut SyzSession) {
    if !session.is_null() {
        drop(Box::from_raw(session));
    }
}

/// JSON report of the last successful call, or null.
///
/// # Safety
/// `session` must be a live session or null.
#[no_mangle]
pub unsafe extern "C" fn syz_session_output(session: *const SyzSession) -> *const c_char {
    match session.as_ref().and_then(|s| s.output.as_ref()) {
        Some(s) => s.as_ptr(),
        None => std::ptr::null(),
    }
}

/// JSON error document of the last failed call, or null.
///
/// # Safety
/// `session` must be a live session or null.
#[no_mangle]
pub unsafe extern "C" fn syz_session_last_error(session: *const SyzSession) -> *const c_char {
    match session.as_ref().and_then(|s| s.error.as_ref()) {
        Some(s) => s.as_ptr(),
        None => std::ptr::null(),
    }
}

/// Butler kernel invariants for genus `g`, rank `r`, degree `deg`.
///
/// # Safety
/// `session` must be a live session.
#[no_mangle]
pub unsafe extern "C" fn syz_butler(session: *mut SyzSession, g: i64, r: i64, deg: i64) -> SyzStatus {
    match session.as_mut() {
        Some(s) => s.run(Command::Butler { g, r, deg }),
        None => SyzStatus::NullArgument,
    }
}

/// Integral combination of the classes `m^2 - 1` giving `H^2`.
///
/// # Safety
/// `session` must be a live session.
#[no_mangle]
pub unsafe extern "C" fn syz_bezout(session: *mut SyzSession, m1: i64, m2: i64) -> SyzStatus {
    match session.as_mut() {
        Some(s) => s.run(Command::Verify(Suite::Bezout { m1, m2 })),
        None => SyzStatus::NullArgument,
    }
}

/// Invariants of the surface kernels over `points` random points of P^2.
///
/// # Safety
/// `session` must be a live session.
#[no_mangle]
pub unsafe extern "C" fn syz_uniformity(session: *mut SyzSession, d: u32, m: u32, points: usize) -> SyzStatus {
    match session.as_mut() {
        Some(s) => s.run(Command::Verify(Suite::Uniformity { d, m, points })),
        None => SyzStatus::NullArgument,
    }
}

unsafe fn resolve(
    session: *mut SyzSession,
    builtin: *const c_char,
    input: *const c_char,
    d: u32,
    m: i32,
    module_mode: bool,
) -> SyzStatus {
    let Some(s) = session.as_mut() else {
        return SyzStatus::NullArgument;
    };
    let (arg, what) = if builtin.is_null() {
        (input, "path")
    } else {
        (builtin, "name")
    };
    let text = match read_str(arg) {
        Ok(t) => t.to_string(),
        Err(st) => return s.fail(st, what),
    };
    let (builtin, input) = if builtin.is_null() {
        (None, Some(text))
    } else {
        (Some(text), None)
    };
    s.run(Command::Resolve {
        builtin,
        input,
        n: None,
        d: if d == 0 { None } else { Some(d) },
        m: u32::try_from(m).ok(),
        mode: if module_mode { Mode::Module } else { Mode::Numeric },
        policy: VPolicy::CurveSections,
        hoppe: false,
    })
}

/// Resolves a builtin instance with polarization `d`. `m < 0` picks the
/// smallest admissible twist.
///
/// # Safety
/// `session` must be a live session and `name` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn syz_resolve_builtin(
    session: *mut SyzSession,
    name: *const c_char,
    d: u32,
    m: i32,
    module_mode: bool,
) -> SyzStatus {
    if name.is_null() {
        return match session.as_mut() {
            Some(s) => s.fail(SyzStatus::NullArgument, "name"),
            None => SyzStatus::NullArgument,
        };
    }
    resolve(session, name, std::ptr::null(), d, m, module_mode)
}

/// Resolves the subscheme described by an input file. `d == 0` takes the
/// polarization from the file; `m < 0` picks the smallest admissible twist.
///
/// # Safety
/// `session` must be a live session and `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn syz_resolve_file(
    session: *mut SyzSession,
    path: *const c_char,
    d: u32,
    m: i32,
    module_mode: bool,
) -> SyzStatus {
    resolve(session, std::ptr::null(), path, d, m, module_mode)
}

/// Static name of a status code, e.g. `"THRESHOLD"`.
#[no_mangle]
pub extern "C" fn syz_status_name(status: SyzStatus) -> *const c_char {
    let s: &'static CStr = match status {
        SyzStatus::Ok => c"OK",
        SyzStatus::SuiteFailed => c"SUITE_FAILED",
        SyzStatus::NullArgument => c"NULL_ARGUMENT",
        SyzStatus::InvalidUtf8 => c"INVALID_UTF8",
        SyzStatus::Panic => c"PANIC",
        SyzStatus::VariantMismatch => c"VARIANT_MISMATCH",
        SyzStatus::UnsupportedField => c"UNSUPPORTED_FIELD",
        SyzStatus::NotPrime => c"NOT_PRIME",
        SyzStatus::RingMismatch => c"RING_MISMATCH",
        SyzStatus::DegreeTooHigh => c"DEGREE_TOO_HIGH",
        SyzStatus::ZeroPoint => c"ZERO_POINT",
        SyzStatus::Parse => c"PARSE",
        SyzStatus::Codimension => c"CODIMENSION",
        SyzStatus::Threshold => c"THRESHOLD",
        SyzStatus::Genericity => c"GENERICITY",
        SyzStatus::Speciality => c"SPECIALITY",
        SyzStatus::GeometricPosition => c"GEOMETRIC_POSITION",
        SyzStatus::Hypothesis => c"HYPOTHESIS",
        SyzStatus::DegenerateKernel => c"DEGENERATE_KERNEL",
        SyzStatus::Coprimality => c"COPRIMALITY",
        SyzStatus::NonMinimal => c"NON_MINIMAL",
        SyzStatus::Budget => c"BUDGET",
        SyzStatus::Input => c"INPUT",
        SyzStatus::Unsupported => c"UNSUPPORTED",
        SyzStatus::Io => c"IO",
    };
    s.as_ptr()
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn syz_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_codes_match_library_codes() {
        let errs = [
            Error::Hypothesis {
                slope: "2".into(),
                two_g: 2,
                margin: "0".into(),
            },
            Error::Coprimality { gcd: 3 },
            Error::ZeroPoint,
            Error::Io("x".into()),
        ];
        for e in errs {
            let st = SyzStatus::from_error(&e);
            assert_eq!(st as i32, e.exit_code());
            let name = unsafe { CStr::from_ptr(syz_status_name(st)) };
            assert_eq!(name.to_str().unwrap(), e.code());
        }
    }
}
