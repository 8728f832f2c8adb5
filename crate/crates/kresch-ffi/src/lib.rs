//! C ABI over the kresch exact-arithmetic library.
//!
//! Conventions:
//! * Rationals cross the boundary as canonical text (`p/q` or a bare
//!   integer), NUL-terminated UTF-8.
//! * Output strings are allocated on this side of the boundary; release
//!   them with [`kresch_string_free`]. Sequences are opaque handles
//!   released with [`kresch_sequence_free`].
//! * Every fallible call returns a [`KreschStatus`]. On a non-OK status,
//!   [`kresch_last_error_message`] yields a human-readable explanation
//!   (thread-local, overwritten by the next failing call).
//!
//! The generated header lives at `include/kresch.h`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::fmt::Display;
use std::ptr;

use kresch::hypergeom::{chu_vandermonde, evaluate_terminating, HypSeriesSpec};
use kresch::racah::{
    corollary320_lhs, corollary320_rhs, kt_sweep, racah_special, RacahSpecialParams,
};
use kresch::suites::{run_suite, SuiteLimits};
use kresch::transforms::{
    inverse_transform, parse_sequence, render_sequence, tilde_transform,
};
use kresch::{binomial, rising_factorial, Error, Rational};

/// Result of any fallible call. Matches the CLI exit-code contract.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KreschStatus {
    /// The call succeeded; outputs are valid.
    Ok = 0,
    /// The computation ran but a verification or conjecture check failed;
    /// the report output is still valid.
    CheckFailed = 1,
    /// Mathematically rejected input (non-terminating series, parameter
    /// outside its box, pole, empty range).
    Domain = 2,
    /// Malformed input: NULL or non-UTF-8 pointer, unparsable rational or
    /// sequence text, unknown suite name.
    Usage = 64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: impl Display) {
    let text = message.to_string().replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = Some(CString::new(text).expect("NULs stripped"));
    });
}

fn clear_last_error() {
    LAST_ERROR.with(|slot| slot.borrow_mut().take());
}

fn status_of(err: &Error) -> KreschStatus {
    match err {
        Error::ParseRational { .. } | Error::ParseSequence { .. } | Error::UnknownSuite { .. } => {
            KreschStatus::Usage
        }
        _ => KreschStatus::Domain,
    }
}

fn fail(err: &Error) -> KreschStatus {
    set_last_error(err);
    status_of(err)
}

/// Reads a required NUL-terminated UTF-8 argument.
unsafe fn read_str<'a>(ptr: *const c_char, what: &str) -> Result<&'a str, KreschStatus> {
    if ptr.is_null() {
        set_last_error(format!("{what} is NULL"));
        return Err(KreschStatus::Usage);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_last_error(format!("{what} is not valid UTF-8"));
        KreschStatus::Usage
    })
}

unsafe fn write_out(out: *mut *mut c_char, text: String) -> KreschStatus {
    if out.is_null() {
        set_last_error("output pointer is NULL");
        return KreschStatus::Usage;
    }
    // interior NULs cannot occur in canonical rationals or JSON we emit
    let c = CString::new(text).expect("no interior NUL in rendered output");
    *out = c.into_raw();
    KreschStatus::Ok
}

fn parse_rational(text: &str, what: &str) -> Result<Rational, KreschStatus> {
    Rational::parse(text).map_err(|e| {
        set_last_error(format!("{what}: {e}"));
        KreschStatus::Usage
    })
}

/// Comma-separated rationals; empty or blank input means an empty list.
fn parse_param_list(text: &str, what: &str) -> Result<Vec<Rational>, KreschStatus> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|piece| parse_rational(piece, what))
        .collect()
}

/// Returns the message of the most recent failure on this thread, or NULL
/// if the last call succeeded. Free with [`kresch_string_free`].
#[no_mangle]
pub extern "C" fn kresch_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|slot| match &*slot.borrow() {
        Some(msg) => msg.clone().into_raw(),
        None => ptr::null_mut(),
    })
}

/// Frees any string returned by this library. NULL is a no-op.
///
/// # Safety
/// `s` must be NULL or a string returned by this library that has not
/// already been freed.
#[no_mangle]
pub unsafe extern "C" fn kresch_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a rational from text (any `p/q` or `p`) and writes its canonical
/// form: lowest terms, positive denominator.
///
/// # Safety
/// `text` must be NULL or point to a NUL-terminated string, and `out`
/// must be NULL or valid for writing one pointer (NULLs fail with
/// `USAGE`, they are not undefined behavior).
#[no_mangle]
pub unsafe extern "C" fn kresch_rational_normalize(
    text: *const c_char,
    out: *mut *mut c_char,
) -> KreschStatus {
    clear_last_error();
    let text = match read_str(text, "rational text") {
        Ok(t) => t,
        Err(s) => return s,
    };
    match parse_rational(text, "rational text") {
        Ok(r) => write_out(out, r.to_string()),
        Err(s) => s,
    }
}

/// Rising factorial `(a)_n` of a rational `a` given in text form.
///
/// # Safety
/// `a` must be NULL or point to a NUL-terminated string, and `out` must
/// be NULL or valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn kresch_rising_factorial(
    a: *const c_char,
    n: u64,
    out: *mut *mut c_char,
) -> KreschStatus {
    clear_last_error();
    let a = match read_str(a, "base") {
        Ok(t) => t,
        Err(s) => return s,
    };
    match parse_rational(a, "base") {
        Ok(a) => write_out(out, rising_factorial(&a, n).to_string()),
        Err(s) => s,
    }
}

/// Binomial coefficient `C(n, k)`; 0 when `k > n`.
///
/// # Safety
/// `out` must be NULL or valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn kresch_binomial(n: u64, k: u64, out: *mut *mut c_char) -> KreschStatus {
    clear_last_error();
    write_out(out, binomial(n, k).to_string())
}

/// Evaluates a terminating hypergeometric series exactly. Numerator and
/// denominator parameters are comma-separated rationals (empty string for
/// none); the argument is a rational. Fails with `DOMAIN` if no numerator
/// parameter is a non-positive integer or a denominator parameter hits a
/// pole within the truncation range.
///
/// # Safety
/// Each of the three string arguments must be NULL or point to a
/// NUL-terminated string, and `out` must be NULL or valid for writing
/// one pointer.
#[no_mangle]
pub unsafe extern "C" fn kresch_hyp_evaluate(
    numerator_params: *const c_char,
    denominator_params: *const c_char,
    argument: *const c_char,
    out: *mut *mut c_char,
) -> KreschStatus {
    clear_last_error();
    let nums = match read_str(numerator_params, "numerator parameters") {
        Ok(t) => t,
        Err(s) => return s,
    };
    let dens = match read_str(denominator_params, "denominator parameters") {
        Ok(t) => t,
        Err(s) => return s,
    };
    let z = match read_str(argument, "argument") {
        Ok(t) => t,
        Err(s) => return s,
    };
    let spec = HypSeriesSpec::new(
        match parse_param_list(nums, "numerator parameter") {
            Ok(v) => v,
            Err(s) => return s,
        },
        match parse_param_list(dens, "denominator parameter") {
            Ok(v) => v,
            Err(s) => return s,
        },
        match parse_rational(z, "argument") {
            Ok(v) => v,
            Err(s) => return s,
        },
    );
    match evaluate_terminating(&spec) {
        Ok(v) => write_out(out, v.to_string()),
        Err(e) => fail(&e),
    }
}

/// `2F1(-n, a; b; 1)` by the closed form `(b-a)_n / (b)_n`.
///
/// # Safety
/// `a` and `b` must be NULL or point to NUL-terminated strings, and
/// `out` must be NULL or valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn kresch_chu_vandermonde(
    n: u64,
    a: *const c_char,
    b: *const c_char,
    out: *mut *mut c_char,
) -> KreschStatus {
    clear_last_error();
    let a = match read_str(a, "a") {
        Ok(t) => t,
        Err(s) => return s,
    };
    let b = match read_str(b, "b") {
        Ok(t) => t,
        Err(s) => return s,
    };
    let a = match parse_rational(a, "a") {
        Ok(v) => v,
        Err(s) => return s,
    };
    let b = match parse_rational(b, "b") {
        Ok(v) => v,
        Err(s) => return s,
    };
    match chu_vandermonde(n, &a, &b) {
        Ok(v) => write_out(out, v.to_string()),
        Err(e) => fail(&e),
    }
}

/// Specialized Racah polynomial `R_n(s, T)`; requires
/// `T >= 1`, `0 <= n, s <= T-1`.
///
/// # Safety
/// `out` must be NULL or valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn kresch_racah(
    n: u64,
    s: u64,
    t: u64,
    out: *mut *mut c_char,
) -> KreschStatus {
    clear_last_error();
    match RacahSpecialParams::new(n, s, t) {
        Ok(p) => write_out(out, racah_special(&p).to_string()),
        Err(e) => fail(&e),
    }
}

/// Partial inverse transform of the Racah row at `(s, T)` up to index `m`.
///
/// # Safety
/// `out` must be NULL or valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn kresch_corollary320_lhs(
    s: u64,
    t: u64,
    m: u64,
    out: *mut *mut c_char,
) -> KreschStatus {
    clear_last_error();
    match corollary320_lhs(s, t, m) {
        Ok(v) => write_out(out, v.to_string()),
        Err(e) => fail(&e),
    }
}

/// Closed form `(-s)_m (s+1)_m / ((1-T)_m (1+T)_m)`.
///
/// # Safety
/// `out` must be NULL or valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn kresch_corollary320_rhs(
    s: u64,
    t: u64,
    m: u64,
    out: *mut *mut c_char,
) -> KreschStatus {
    clear_last_error();
    match corollary320_rhs(s, t, m) {
        Ok(v) => write_out(out, v.to_string()),
        Err(e) => fail(&e),
    }
}

/// Opaque handle to an exact rational sequence.
pub struct KreschSequence {
    inner: kresch::transforms::Sequence,
}

/// Parses a sequence from text: one rational per line, `#` comments and
/// blank lines ignored. Returns NULL on parse failure (see
/// [`kresch_last_error_message`]).
///
/// # Safety
/// `text` must be NULL or point to a NUL-terminated string. A returned
/// non-NULL handle must be released with [`kresch_sequence_free`].
#[no_mangle]
pub unsafe extern "C" fn kresch_sequence_parse(text: *const c_char) -> *mut KreschSequence {
    clear_last_error();
    let text = match read_str(text, "sequence text") {
        Ok(t) => t,
        Err(_) => return ptr::null_mut(),
    };
    match parse_sequence(text) {
        Ok(inner) => Box::into_raw(Box::new(KreschSequence { inner })),
        Err(e) => {
            set_last_error(&e);
            ptr::null_mut()
        }
    }
}

/// Frees a sequence handle. NULL is a no-op.
///
/// # Safety
/// `seq` must be NULL or a handle returned by this library that has not
/// already been freed.
#[no_mangle]
pub unsafe extern "C" fn kresch_sequence_free(seq: *mut KreschSequence) {
    if !seq.is_null() {
        drop(Box::from_raw(seq));
    }
}

/// Number of entries; 0 for NULL.
///
/// # Safety
/// `seq` must be NULL or a live handle returned by this library.
#[no_mangle]
pub unsafe extern "C" fn kresch_sequence_len(seq: *const KreschSequence) -> u64 {
    if seq.is_null() {
        return 0;
    }
    (*seq).inner.len() as u64
}

/// Writes entry `index` in canonical text form.
///
/// # Safety
/// `seq` must be NULL or a live handle returned by this library, and
/// `out` must be NULL or valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn kresch_sequence_entry(
    seq: *const KreschSequence,
    index: u64,
    out: *mut *mut c_char,
) -> KreschStatus {
    clear_last_error();
    if seq.is_null() {
        set_last_error("sequence is NULL");
        return KreschStatus::Usage;
    }
    let inner = &(*seq).inner;
    if index as usize >= inner.len() {
        return fail(&Error::IndexOutOfRange {
            index,
            max: inner.len().saturating_sub(1) as u64,
        });
    }
    write_out(out, inner[index as usize].to_string())
}

/// Renders a sequence to its text form (one canonical rational per line,
/// trailing newline). Free with [`kresch_string_free`].
///
/// # Safety
/// `seq` must be NULL or a live handle returned by this library.
#[no_mangle]
pub unsafe extern "C" fn kresch_sequence_render(seq: *const KreschSequence) -> *mut c_char {
    clear_last_error();
    if seq.is_null() {
        set_last_error("sequence is NULL");
        return ptr::null_mut();
    }
    CString::new(render_sequence(&(*seq).inner))
        .expect("no interior NUL")
        .into_raw()
}

/// Applies the tilde transform, returning a new handle (NULL only for a
/// NULL input).
///
/// # Safety
/// `seq` must be NULL or a live handle returned by this library; the
/// returned handle must be released with [`kresch_sequence_free`].
#[no_mangle]
pub unsafe extern "C" fn kresch_sequence_tilde(seq: *const KreschSequence) -> *mut KreschSequence {
    clear_last_error();
    if seq.is_null() {
        set_last_error("sequence is NULL");
        return ptr::null_mut();
    }
    Box::into_raw(Box::new(KreschSequence {
        inner: tilde_transform(&(*seq).inner),
    }))
}

/// Applies the inverse tilde transform, returning a new handle.
///
/// # Safety
/// `seq` must be NULL or a live handle returned by this library; the
/// returned handle must be released with [`kresch_sequence_free`].
#[no_mangle]
pub unsafe extern "C" fn kresch_sequence_tilde_inverse(
    seq: *const KreschSequence,
) -> *mut KreschSequence {
    clear_last_error();
    if seq.is_null() {
        set_last_error("sequence is NULL");
        return ptr::null_mut();
    }
    Box::into_raw(Box::new(KreschSequence {
        inner: inverse_transform(&(*seq).inner),
    }))
}

/// Sweeps the boundedness conjecture `|R_n(s,T)| <= 1` over
/// `t_min <= T <= t_max` with `workers` threads and writes the report as
/// JSON. Returns `CHECK_FAILED` (report still written) if any violation
/// was found.
///
/// # Safety
/// `out` must be NULL or valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn kresch_sweep_json(
    t_min: u64,
    t_max: u64,
    workers: usize,
    out: *mut *mut c_char,
) -> KreschStatus {
    clear_last_error();
    match kt_sweep(t_min, t_max, workers) {
        Ok(report) => {
            let ok = report.violations.is_empty();
            let json = serde_json::to_string(&report).expect("report serializes");
            let status = write_out(out, json);
            if status != KreschStatus::Ok {
                return status;
            }
            if ok {
                KreschStatus::Ok
            } else {
                set_last_error("conjecture violations found");
                KreschStatus::CheckFailed
            }
        }
        Err(e) => fail(&e),
    }
}

/// Runs a verification suite (`lemma340`, `c310a`, `c310b`, `kernel`,
/// `c320`, or `all`) and writes the reports as a JSON array. `limit`
/// overrides the suite's default range; pass 0 to keep defaults (`all`
/// always uses defaults). Returns `CHECK_FAILED` (reports still written)
/// if any suite did not pass.
///
/// # Safety
/// `suite` must be NULL or point to a NUL-terminated string, and `out`
/// must be NULL or valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn kresch_verify_json(
    suite: *const c_char,
    limit: u64,
    out: *mut *mut c_char,
) -> KreschStatus {
    clear_last_error();
    let name = match read_str(suite, "suite name") {
        Ok(t) => t,
        Err(s) => return s,
    };
    let mut limits = SuiteLimits::default();
    if limit != 0 {
        match name {
            "lemma340" => limits.lemma340 = limit,
            "c310a" => limits.c310a = limit,
            "c310b" => limits.c310b = limit,
            "kernel" => limits.kernel = limit,
            "c320" => limits.c320 = limit,
            _ => {}
        }
    }
    match run_suite(name, &limits) {
        Ok(reports) => {
            let ok = reports.iter().all(|r| r.passed());
            let json = serde_json::to_string(&reports).expect("reports serialize");
            let status = write_out(out, json);
            if status != KreschStatus::Ok {
                return status;
            }
            if ok {
                KreschStatus::Ok
            } else {
                set_last_error("one or more suites did not pass");
                KreschStatus::CheckFailed
            }
        }
        Err(e) => fail(&e),
    }
}
