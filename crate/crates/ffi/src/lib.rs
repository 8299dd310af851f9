//! C ABI over `trisect`: opaque handles for potentials, scattering data and
//! recovered potentials, integer status codes, and a thread-local message
//! for the last error.
//!
//! Complex numbers cross the boundary as `double[2]` (re, im).

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};

use num_complex::Complex64;
use trisect::cli::{x_grid, RunConfig, Command};
use trisect::forward::{
    coefficients_at, find_bound_states, scattering_data, validate, BoundStateOptions, BoundaryData, ScatteringData,
    ValidationOptions,
};
use trisect::riemann::{recover_potential, RecoveredPotential, RecoveryOptions};
use trisect::trig3::{eval_s, find_zeros};
use trisect::volterra::{JostOptions, SampledPotential, Support};
use trisect::Error;

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrisectStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ValidationFailed = 3,
    SolverFailed = 4,
    IoFailed = 5,
    BufferTooSmall = 6,
    Panic = 7,
}

/// Sampled potential on a uniform grid.
pub struct TrisectPotential(SampledPotential);

/// Scattering data on the three sample lines plus bound states.
pub struct TrisectData(ScatteringData);

/// Recovered `P(x)` and `q(x)`.
pub struct TrisectRecovered(RecoveredPotential);

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> TrisectStatus {
    match trisect::cli::exit_code(e) {
        trisect::cli::EXIT_VALIDATION => match e {
            Error::Validation { .. } => TrisectStatus::ValidationFailed,
            _ => TrisectStatus::InvalidArgument,
        },
        trisect::cli::EXIT_IO => TrisectStatus::IoFailed,
        _ => TrisectStatus::SolverFailed,
    }
}

/// Runs `f`, recording errors and converting panics.
fn guard(f: impl FnOnce() -> Result<(), TrisectStatus>) -> TrisectStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error(String::new());
            TrisectStatus::Ok
        }
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic".into());
            TrisectStatus::Panic
        }
    }
}

fn fail(e: Error) -> TrisectStatus {
    let s = status_of(&e);
    set_error(e.to_string());
    s
}

fn null() -> TrisectStatus {
    set_error("null pointer argument".into());
    TrisectStatus::NullPointer
}

fn invalid(msg: &str) -> TrisectStatus {
    set_error(msg.into());
    TrisectStatus::InvalidArgument
}

unsafe fn as_ref<'a, T>(p: *const T) -> Result<&'a T, TrisectStatus> {
    p.as_ref().ok_or_else(null)
}

unsafe fn write<T>(out: *mut T, v: T) -> Result<(), TrisectStatus> {
    if out.is_null() {
        return Err(null());
    }
    out.write(v);
    Ok(())
}

unsafe fn slice<'a, T>(p: *const T, n: usize) -> Result<&'a [T], TrisectStatus> {
    if n == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null());
    }
    Ok(std::slice::from_raw_parts(p, n))
}

unsafe fn slice_mut<'a, T>(p: *mut T, n: usize) -> Result<&'a mut [T], TrisectStatus> {
    if n == 0 {
        return Ok(&mut []);
    }
    if p.is_null() {
        return Err(null());
    }
    Ok(std::slice::from_raw_parts_mut(p, n))
}

fn boundary(alpha: f64, beta: f64, theta_arg: f64) -> Result<BoundaryData, TrisectStatus> {
    BoundaryData::with_theta_arg(alpha, beta, theta_arg).map_err(fail)
}

/// Copies the last error message of this thread into `buf` (NUL
/// terminated, truncated to `len`). Returns the full message length.
///
/// # Safety
/// `buf` must be null or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn trisect_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            std::ptr::copy_nonoverlapping(msg.as_ptr() as *const c_char, buf, n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}

/// `s_p(z)` for `p ∈ {0, 1, 2}`, written to `out[2]`.
///
/// # Safety
/// `out` must point to two writable doubles.
#[no_mangle]
pub unsafe extern "C" fn trisect_special_s(p: u32, re: f64, im: f64, out: *mut f64) -> TrisectStatus {
    guard(|| {
        if p > 2 {
            return Err(invalid("p must be 0, 1 or 2"));
        }
        let v = eval_s(p as usize, Complex64::new(re, im));
        let o = slice_mut(out, 2)?;
        o.copy_from_slice(&[v.re, v.im]);
        Ok(())
    })
}

/// The first `count` nonnegative zeros of family `p`, written to `out`.
///
/// # Safety
/// `out` must point to `count` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn trisect_zeros(p: u32, count: usize, out: *mut f64) -> TrisectStatus {
    guard(|| {
        let zs = find_zeros(p as usize, count).map_err(fail)?;
        let o = slice_mut(out, count)?;
        for (dst, z) in o.iter_mut().zip(zs) {
            *dst = z.x;
        }
        Ok(())
    })
}

/// Builds a potential from `len` samples `(x[i], q[i])` with ascending `x`,
/// resampled onto `intervals + 1` uniform nodes. `compact` selects compact
/// support; otherwise the tail beyond the last sample is truncated and
/// `decay` bounds the admissible `|λ| < decay/3`.
///
/// # Safety
/// `x` and `q` must point to `len` doubles; `out` to a writable handle slot.
#[no_mangle]
pub unsafe extern "C" fn trisect_potential_new(
    x: *const f64,
    q: *const f64,
    len: usize,
    intervals: usize,
    decay: f64,
    compact: bool,
    out: *mut *mut TrisectPotential,
) -> TrisectStatus {
    guard(|| {
        let (x, q) = (slice(x, len)?, slice(q, len)?);
        let support = if compact { Support::Compact } else { Support::Truncated };
        let pot = SampledPotential::from_scattered(x, q, intervals, decay, support).map_err(fail)?;
        write(out, Box::into_raw(Box::new(TrisectPotential(pot))))
    })
}

/// Number of grid nodes of a potential, or 0 for a null handle.
///
/// # Safety
/// `pot` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn trisect_potential_len(pot: *const TrisectPotential) -> usize {
    pot.as_ref().map_or(0, |p| p.0.len())
}

/// # Safety
/// `pot` must be null or a handle from [`trisect_potential_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn trisect_potential_free(pot: *mut TrisectPotential) {
    if !pot.is_null() {
        drop(Box::from_raw(pot));
    }
}

/// `(s₂, s₃, c₁)` at `λ`, written to `out[6]` as three (re, im) pairs.
///
/// # Safety
/// `pot` must be a live handle; `out` must point to six writable doubles.
#[no_mangle]
pub unsafe extern "C" fn trisect_scattering_coefficients(
    pot: *const TrisectPotential,
    re: f64,
    im: f64,
    alpha: f64,
    beta: f64,
    theta_arg: f64,
    out: *mut f64,
) -> TrisectStatus {
    guard(|| {
        let pot = as_ref(pot)?;
        let bd = boundary(alpha, beta, theta_arg)?;
        let c = coefficients_at(&pot.0, Complex64::new(re, im), &bd, &JostOptions::default()).map_err(fail)?;
        slice_mut(out, 6)?.copy_from_slice(&[c.s2.re, c.s2.im, c.s3.re, c.s3.im, c.c1.re, c.c1.im]);
        Ok(())
    })
}

/// Forward map: bound states within `radius`, then `m` samples per
/// half-line on the three sample lines up to `t_max`.
///
/// # Safety
/// `pot` must be a live handle; `out` a writable handle slot.
#[no_mangle]
pub unsafe extern "C" fn trisect_forward(
    pot: *const TrisectPotential,
    alpha: f64,
    beta: f64,
    theta_arg: f64,
    t_max: f64,
    m: usize,
    radius: f64,
    out: *mut *mut TrisectData,
) -> TrisectStatus {
    guard(|| {
        let pot = as_ref(pot)?;
        let bd = boundary(alpha, beta, theta_arg)?;
        let opts = JostOptions::default();
        let bs = find_bound_states(&pot.0, &bd, radius, &opts, &BoundStateOptions::default()).map_err(fail)?;
        let data = scattering_data(&pot.0, &bd, t_max, m, &bs, &opts).map_err(fail)?;
        write(out, Box::into_raw(Box::new(TrisectData(data))))
    })
}

/// Parses scattering data from NUL-terminated JSON.
///
/// # Safety
/// `json` must be a valid C string; `out` a writable handle slot.
#[no_mangle]
pub unsafe extern "C" fn trisect_data_from_json(json: *const c_char, out: *mut *mut TrisectData) -> TrisectStatus {
    guard(|| {
        if json.is_null() {
            return Err(null());
        }
        let text = CStr::from_ptr(json).to_str().map_err(|_| invalid("JSON is not valid UTF-8"))?;
        let data = ScatteringData::from_json(text).map_err(fail)?;
        write(out, Box::into_raw(Box::new(TrisectData(data))))
    })
}

/// Serialises scattering data as JSON into `buf` (NUL terminated).
/// `*written` receives the JSON length; when it does not fit, nothing is
/// copied and `BUFFER_TOO_SMALL` is returned.
///
/// # Safety
/// `data` must be a live handle; `buf` must point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn trisect_data_to_json(
    data: *const TrisectData,
    buf: *mut c_char,
    len: usize,
    written: *mut usize,
) -> TrisectStatus {
    guard(|| {
        let text = as_ref(data)?.0.to_json().map_err(fail)?;
        write(written, text.len())?;
        if text.len() + 1 > len {
            set_error(format!("need {} bytes", text.len() + 1));
            return Err(TrisectStatus::BufferTooSmall);
        }
        let dst = slice_mut(buf, len)?;
        for (d, s) in dst.iter_mut().zip(text.bytes()) {
            *d = s as c_char;
        }
        dst[text.len()] = 0;
        Ok(())
    })
}

/// Number of bound states, or 0 for a null handle.
///
/// # Safety
/// `data` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn trisect_data_bound_states(data: *const TrisectData) -> usize {
    data.as_ref().map_or(0, |d| d.0.kappas.len())
}

/// Checks the admissibility conditions; the message names the violated one.
///
/// # Safety
/// `data` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn trisect_data_validate(data: *const TrisectData) -> TrisectStatus {
    guard(|| {
        validate(&as_ref(data)?.0, &ValidationOptions::default()).map_err(fail)?;
        Ok(())
    })
}

/// # Safety
/// `data` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn trisect_data_free(data: *mut TrisectData) {
    if !data.is_null() {
        drop(Box::from_raw(data));
    }
}

/// Inverse map on `n + 1` uniform nodes of `[0, x_max]` with the default
/// recovery settings.
///
/// # Safety
/// `data` must be a live handle; `out` a writable handle slot.
#[no_mangle]
pub unsafe extern "C" fn trisect_inverse(
    data: *const TrisectData,
    x_max: f64,
    n: usize,
    out: *mut *mut TrisectRecovered,
) -> TrisectStatus {
    guard(|| {
        let data = as_ref(data)?;
        let mut cfg = RunConfig::new(Command::Inverse);
        cfg.x_max = x_max;
        cfg.n_x = n;
        cfg.validate().map_err(fail)?;
        validate(&data.0, &ValidationOptions::default()).map_err(fail)?;
        let rec = recover_potential(&data.0, &x_grid(x_max, n), &RecoveryOptions::default()).map_err(fail)?;
        write(out, Box::into_raw(Box::new(TrisectRecovered(rec))))
    })
}

/// Number of nodes of a recovered potential, or 0 for a null handle.
///
/// # Safety
/// `rec` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn trisect_recovered_len(rec: *const TrisectRecovered) -> usize {
    rec.as_ref().map_or(0, |r| r.0.x.len())
}

/// Copies `x`, `q` and `Re P` into arrays of length `len`, which must equal
/// [`trisect_recovered_len`]. Any output pointer may be null to skip it.
///
/// # Safety
/// `rec` must be a live handle; non-null outputs must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn trisect_recovered_values(
    rec: *const TrisectRecovered,
    x: *mut f64,
    q: *mut f64,
    p: *mut f64,
    len: usize,
) -> TrisectStatus {
    guard(|| {
        let r = &as_ref(rec)?.0;
        if len != r.x.len() {
            return Err(invalid("length does not match the recovered grid"));
        }
        let p_re: Vec<f64> = r.p.iter().map(|v| v.re).collect();
        for (dst, src) in [(x, &r.x), (q, &r.q), (p, &p_re)] {
            if !dst.is_null() {
                slice_mut(dst, len)?.copy_from_slice(src);
            }
        }
        Ok(())
    })
}

/// # Safety
/// `rec` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn trisect_recovered_free(rec: *mut TrisectRecovered) {
    if !rec.is_null() {
        drop(Box::from_raw(rec));
    }
}
