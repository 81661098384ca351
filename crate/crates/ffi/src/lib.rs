//! C ABI for the `rashba-ring` solver.
//!
//! Every entry point returns an [`RrStatus`]; on failure a message is kept
//! per thread and can be copied out with [`rr_last_error_message`]. Handles
//! are opaque and must be released with their `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use num_complex::Complex64;
use rashba_ring::bessel::{Family, Kernel};
use rashba_ring::matching::secular_det;
use rashba_ring::spectrum::{find_levels, level_count, SpectrumOptions};
use rashba_ring::wavefunction::{build_solution, evaluate, normalize, RadialSolution};
use rashba_ring::{Error, RingConfig};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RrStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidParameter = 2,
    Domain = 3,
    OrderOverflow = 4,
    Threshold = 5,
    RankDeficient = 6,
    Numerical = 7,
    BufferTooSmall = 8,
    OutOfRange = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RrFamily {
    J = 0,
    Y = 1,
    I = 2,
    K = 3,
}

impl From<RrFamily> for Family {
    fn from(f: RrFamily) -> Self {
        match f {
            RrFamily::J => Family::J,
            RrFamily::Y => Family::Y,
            RrFamily::I => Family::I,
            RrFamily::K => Family::K,
        }
    }
}

/// One angular-momentum channel plus spectrum options.
pub struct RrRing {
    cfg: RingConfig,
    opts: SpectrumOptions,
}

/// A normalised bound state.
pub struct RrSolution {
    sol: RadialSolution,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> RrStatus {
    match e {
        Error::InvalidParameter(_) => RrStatus::InvalidParameter,
        Error::Domain { .. } => RrStatus::Domain,
        Error::OrderOverflow { .. } => RrStatus::OrderOverflow,
        Error::Threshold { .. } => RrStatus::Threshold,
        Error::RankDeficient(_) => RrStatus::RankDeficient,
        Error::Quadrature(_) | Error::Stiffness(_) | Error::Singular | Error::NonFinite(_) => RrStatus::Numerical,
    }
}

enum Failure {
    Solver(Error),
    Status(RrStatus, String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Solver(e)
    }
}

fn null(name: &str) -> Failure {
    Failure::Status(RrStatus::NullPointer, format!("`{name}` is null"))
}

fn guard<F: FnOnce() -> Result<(), Failure>>(f: F) -> RrStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            RrStatus::Ok
        }
        Ok(Err(Failure::Solver(e))) => {
            set_error(&e.to_string());
            status_of(&e)
        }
        Ok(Err(Failure::Status(s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            RrStatus::Panic
        }
    }
}

unsafe fn out<'a, T>(p: *mut T, name: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| null(name))
}

unsafe fn handle<'a, T>(p: *const T, name: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(name))
}

/// Copies the calling thread's last error message (NUL-terminated,
/// truncated to `cap` bytes) and returns the full message length.
///
/// # Safety
/// `buf` must be null or point to `cap` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn rr_last_error_message(buf: *mut c_char, cap: usize) -> usize {
    LAST_ERROR.with(|e| {
        let bytes = e.borrow();
        let bytes = bytes.as_bytes();
        if !buf.is_null() && cap > 0 {
            let n = bytes.len().min(cap - 1);
            std::ptr::copy_nonoverlapping(bytes.as_ptr() as *const c_char, buf, n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn rr_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Creates a channel with default spectrum options.
///
/// # Safety
/// `ring_out` must be a valid pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn rr_ring_new(m: i32, v: f64, beta: f64, r_i: f64, ring_out: *mut *mut RrRing) -> RrStatus {
    guard(|| {
        let slot = out(ring_out, "ring_out")?;
        *slot = std::ptr::null_mut();
        let cfg = RingConfig::new(m, v, beta, r_i)?;
        *slot = Box::into_raw(Box::new(RrRing {
            cfg,
            opts: SpectrumOptions::default(),
        }));
        Ok(())
    })
}

/// # Safety
/// `ring` must be null or a handle from [`rr_ring_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rr_ring_free(ring: *mut RrRing) {
    if !ring.is_null() {
        drop(Box::from_raw(ring));
    }
}

/// # Safety
/// `ring` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn rr_ring_set_options(ring: *mut RrRing, grid_points: usize, tol: f64) -> RrStatus {
    guard(|| {
        let ring = out(ring, "ring")?;
        let opts = SpectrumOptions { grid_points, tol };
        opts.validate()?;
        ring.opts = opts;
        Ok(())
    })
}

/// Number of levels by sign counting on the scan grid.
///
/// # Safety
/// `ring` must be a live handle and `count_out` writable.
#[no_mangle]
pub unsafe extern "C" fn rr_ring_level_count(ring: *const RrRing, count_out: *mut usize) -> RrStatus {
    guard(|| {
        let ring = handle(ring, "ring")?;
        *out(count_out, "count_out")? = level_count(&ring.cfg)?;
        Ok(())
    })
}

/// Writes the sorted energies into `levels` (capacity `cap`) and their
/// number into `len_out`. If `cap` is too small nothing is written to
/// `levels`, `len_out` receives the required size and
/// `RR_STATUS_BUFFER_TOO_SMALL` is returned.
///
/// # Safety
/// `ring` must be a live handle, `len_out` writable and `levels` null or
/// valid for `cap` doubles.
#[no_mangle]
pub unsafe extern "C" fn rr_ring_find_levels(
    ring: *const RrRing,
    levels: *mut f64,
    cap: usize,
    len_out: *mut usize,
) -> RrStatus {
    guard(|| {
        let ring = handle(ring, "ring")?;
        let len_out = out(len_out, "len_out")?;
        let found = find_levels(&ring.cfg, &ring.opts)?;
        *len_out = found.len();
        if found.len() > cap {
            return Err(Failure::Status(
                RrStatus::BufferTooSmall,
                format!("{} levels found, buffer holds {cap}", found.len()),
            ));
        }
        if !found.is_empty() {
            if levels.is_null() {
                return Err(null("levels"));
            }
            let dst = std::slice::from_raw_parts_mut(levels, found.len());
            for (d, l) in dst.iter_mut().zip(&found) {
                *d = l.e;
            }
        }
        Ok(())
    })
}

/// Regularised secular determinant at `e` as sign and `ln |value|`.
///
/// # Safety
/// `ring` must be a live handle; the outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn rr_ring_secular_det(
    ring: *const RrRing,
    e: f64,
    sign_out: *mut i32,
    log_magnitude_out: *mut f64,
) -> RrStatus {
    guard(|| {
        let ring = handle(ring, "ring")?;
        let sign_out = out(sign_out, "sign_out")?;
        let log_out = out(log_magnitude_out, "log_magnitude_out")?;
        let d = secular_det(&ring.cfg, e)?;
        *sign_out = i32::from(d.sign);
        *log_out = d.log_magnitude;
        Ok(())
    })
}

/// Builds the normalised state of level `index` (zero-based).
///
/// # Safety
/// `ring` must be a live handle and `solution_out` writable.
#[no_mangle]
pub unsafe extern "C" fn rr_solution_new(
    ring: *const RrRing,
    index: usize,
    solution_out: *mut *mut RrSolution,
) -> RrStatus {
    guard(|| {
        let ring = handle(ring, "ring")?;
        let slot = out(solution_out, "solution_out")?;
        *slot = std::ptr::null_mut();
        let levels = find_levels(&ring.cfg, &ring.opts)?;
        let level = levels.get(index).ok_or_else(|| {
            Failure::Status(
                RrStatus::OutOfRange,
                format!("level index {index} out of range: {} level(s)", levels.len()),
            )
        })?;
        let sol = normalize(&build_solution(&ring.cfg, level.e)?)?;
        *slot = Box::into_raw(Box::new(RrSolution { sol }));
        Ok(())
    })
}

/// # Safety
/// `solution` must be null or a handle from [`rr_solution_new`] not yet
/// freed.
#[no_mangle]
pub unsafe extern "C" fn rr_solution_free(solution: *mut RrSolution) {
    if !solution.is_null() {
        drop(Box::from_raw(solution));
    }
}

/// # Safety
/// `solution` must be a live handle and `e_out` writable.
#[no_mangle]
pub unsafe extern "C" fn rr_solution_energy(solution: *const RrSolution, e_out: *mut f64) -> RrStatus {
    guard(|| {
        let s = handle(solution, "solution")?;
        *out(e_out, "e_out")? = s.sol.e;
        Ok(())
    })
}

/// Radial components `u(r)`, `w(r)` for `r ≥ 0`.
///
/// # Safety
/// `solution` must be a live handle; the outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn rr_solution_eval(
    solution: *const RrSolution,
    r: f64,
    u_out: *mut f64,
    w_out: *mut f64,
) -> RrStatus {
    guard(|| {
        let s = handle(solution, "solution")?;
        let u_out = out(u_out, "u_out")?;
        let w_out = out(w_out, "w_out")?;
        let (u, w) = evaluate(&s.sol, r)?;
        *u_out = u;
        *w_out = w;
        Ok(())
    })
}

/// Cylinder function `family_n(re + i im)` with the default kernel.
///
/// # Safety
/// The outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn rr_bessel_eval(
    family: RrFamily,
    n: i32,
    re: f64,
    im: f64,
    re_out: *mut f64,
    im_out: *mut f64,
) -> RrStatus {
    guard(|| {
        let re_out = out(re_out, "re_out")?;
        let im_out = out(im_out, "im_out")?;
        let c = Kernel::default().eval(family.into(), n, Complex64::new(re, im))?;
        *re_out = c.re;
        *im_out = c.im;
        Ok(())
    })
}
