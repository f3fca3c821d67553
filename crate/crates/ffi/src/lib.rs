//! C ABI over `kgring`.
//!
//! Models and solved states are opaque heap handles created by `kg_*_new` /
//! `kg_solve` and released with the matching `_free`. Every fallible call
//! returns a `KgStatus` and writes its result through an out-pointer; the
//! message of the last failure on the calling thread is available from
//! `kg_last_error`.

// Every pointer argument is null-checked; beyond that the caller guarantees
// handles are live, which is the usual C contract.
#![allow(clippy::not_unsafe_ptr_arg_deref)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use kgring::model::{ModelParams, QuantumNumbers};
use kgring::radial::{self, BoundState, SolverConfig};
use kgring::Error;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KgStatus {
    Ok = 0,
    InvalidParameter = 1,
    OutOfBoundWindow = 2,
    DomainError = 3,
    NoRealAngularMomentum = 4,
    NegativeDiscriminant = 5,
    NoBoundState = 6,
    NonConvergence = 7,
    NullPointer = 8,
    Panic = 9,
}

impl From<&Error> for KgStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::InvalidParameter { .. } => KgStatus::InvalidParameter,
            Error::OutOfBoundWindow { .. } => KgStatus::OutOfBoundWindow,
            Error::Domain(_) => KgStatus::DomainError,
            Error::NoRealAngularMomentum { .. } => KgStatus::NoRealAngularMomentum,
            Error::NegativeDiscriminant { .. } => KgStatus::NegativeDiscriminant,
            Error::NoBoundState => KgStatus::NoBoundState,
            Error::NonConvergence(_) => KgStatus::NonConvergence,
        }
    }
}

/// Opaque model handle.
pub struct KgParams(ModelParams);

/// Opaque solved-state handle.
pub struct KgState(BoundState);

/// Scalar summary of a solved state.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct KgStateInfo {
    pub energy: f64,
    /// `E - mu`.
    pub binding: f64,
    pub j: f64,
    pub j_prime: f64,
    pub m_prime: f64,
    pub zeta: f64,
    pub eps: f64,
    /// Radial normalization constant.
    pub radial_norm: f64,
    /// Polar normalization constant.
    pub polar_norm: f64,
    /// Sign-change brackets seen by the solver; more than one means several roots.
    pub brackets: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Vec<u8>> = const { RefCell::new(Vec::new()) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into_bytes());
}

fn fail(e: &Error) -> KgStatus {
    set_error(e.to_string());
    KgStatus::from(e)
}

fn guard<F: FnOnce() -> KgStatus>(f: F) -> KgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic".into());
            KgStatus::Panic
        }
    }
}

fn null() -> KgStatus {
    set_error("null pointer argument".into());
    KgStatus::NullPointer
}

fn new_params(out: *mut *mut KgParams, p: kgring::Result<ModelParams>) -> KgStatus {
    if out.is_null() {
        return null();
    }
    match p {
        Ok(p) => {
            // SAFETY: `out` is non-null and points to writable storage per the contract.
            unsafe { *out = Box::into_raw(Box::new(KgParams(p))) };
            KgStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Kratzer plus ring-shaped model. On success `*out` owns a new handle.
#[no_mangle]
pub extern "C" fn kg_params_new_kratzer(mu: f64, a0: f64, r0: f64, c: f64, d: u32, out: *mut *mut KgParams) -> KgStatus {
    guard(|| new_params(out, ModelParams::kratzer(mu, a0, r0, c, d)))
}

/// Coulomb (`B = 0`) plus ring-shaped model.
#[no_mangle]
pub extern "C" fn kg_params_new_coulomb(mu: f64, a: f64, c: f64, d: u32, out: *mut *mut KgParams) -> KgStatus {
    guard(|| new_params(out, ModelParams::coulomb(mu, a, c, d)))
}

/// Release a model handle. Null is ignored.
#[no_mangle]
pub extern "C" fn kg_params_free(p: *mut KgParams) {
    if !p.is_null() {
        // SAFETY: non-null handles come from `Box::into_raw` in this crate.
        drop(unsafe { Box::from_raw(p) });
    }
}

/// Solve for the state `(n, ntheta, m)`. On success `*out` owns a new handle.
#[no_mangle]
pub extern "C" fn kg_solve(p: *const KgParams, n: u32, ntheta: u32, m: u32, out: *mut *mut KgState) -> KgStatus {
    guard(|| {
        // SAFETY: null-checked; the handle is live per the contract.
        let Some(p) = (unsafe { p.as_ref() }) else { return null() };
        if out.is_null() {
            return null();
        }
        match radial::solve_bound_state(&p.0, QuantumNumbers::new(n, ntheta, m), &SolverConfig::default()) {
            Ok(s) => {
                // SAFETY: `out` is non-null.
                unsafe { *out = Box::into_raw(Box::new(KgState(s))) };
                KgStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Release a state handle. Null is ignored.
#[no_mangle]
pub extern "C" fn kg_state_free(s: *mut KgState) {
    if !s.is_null() {
        // SAFETY: non-null handles come from `Box::into_raw` in this crate.
        drop(unsafe { Box::from_raw(s) });
    }
}

#[no_mangle]
pub extern "C" fn kg_state_info(s: *const KgState, out: *mut KgStateInfo) -> KgStatus {
    guard(|| {
        // SAFETY: null-checked; the handle is live per the contract.
        let (Some(s), false) = (unsafe { s.as_ref() }, out.is_null()) else { return null() };
        let st = &s.0;
        let info = KgStateInfo {
            energy: st.energy,
            binding: st.binding(),
            j: st.angular.j,
            j_prime: st.angular.j_prime,
            m_prime: st.angular.m_prime,
            zeta: st.intermediates.zeta,
            eps: st.intermediates.eps,
            radial_norm: st.norm,
            polar_norm: st.angular.norm,
            brackets: st.diagnostics.brackets,
        };
        // SAFETY: `out` is non-null.
        unsafe { *out = info };
        KgStatus::Ok
    })
}

/// Energy of a state, or NaN for a null handle.
#[no_mangle]
pub extern "C" fn kg_state_energy(s: *const KgState) -> f64 {
    // SAFETY: null-checked; the handle is live per the contract.
    unsafe { s.as_ref() }.map_or(f64::NAN, |s| s.0.energy)
}

fn eval<F: FnOnce(&BoundState) -> kgring::Result<f64>>(s: *const KgState, out: *mut f64, f: F) -> KgStatus {
    guard(|| {
        // SAFETY: null-checked; the handle is live per the contract.
        let (Some(s), false) = (unsafe { s.as_ref() }, out.is_null()) else { return null() };
        match f(&s.0) {
            Ok(v) => {
                // SAFETY: `out` is non-null.
                unsafe { *out = v };
                KgStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Normalized radial function `R(r)`, `r > 0`.
#[no_mangle]
pub extern "C" fn kg_state_radial(s: *const KgState, r: f64, out: *mut f64) -> KgStatus {
    eval(s, out, |st| st.radial(r))
}

/// Normalized polar function `H(θ)`, `θ ∈ [0, π]`.
#[no_mangle]
pub extern "C" fn kg_state_polar(s: *const KgState, theta: f64, out: *mut f64) -> KgStatus {
    eval(s, out, |st| st.angular.polar(theta))
}

/// `ψ(r, θ, φ)` with phase `exp(+imφ)`, written as real and imaginary parts.
#[no_mangle]
pub extern "C" fn kg_state_total(
    s: *const KgState,
    r: f64,
    theta: f64,
    phi: f64,
    re: *mut f64,
    im: *mut f64,
) -> KgStatus {
    guard(|| {
        // SAFETY: null-checked; the handle is live per the contract.
        let Some(s) = (unsafe { s.as_ref() }) else { return null() };
        if re.is_null() || im.is_null() {
            return null();
        }
        match s.0.psi(r, theta, phi) {
            Ok(z) => {
                // SAFETY: both pointers are non-null.
                unsafe {
                    *re = z.re;
                    *im = z.im;
                }
                KgStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Closed-form Coulomb energy `mu (1 - 2 q²e² / (q²e² + N²))`, `N = 2n + 2 ell + D - 1`.
#[no_mangle]
pub extern "C" fn kg_coulomb_energy(mu: f64, qe_sq: f64, n: u32, ell: f64, d: u32) -> f64 {
    radial::coulomb_energy(mu, qe_sq, n, ell, d)
}

/// Nonrelativistic energy of the same potential.
#[no_mangle]
pub extern "C" fn kg_nonrel_energy(p: *const KgParams, n: u32, ntheta: u32, m: u32, out: *mut f64) -> KgStatus {
    guard(|| {
        // SAFETY: null-checked; the handle is live per the contract.
        let (Some(p), false) = (unsafe { p.as_ref() }, out.is_null()) else { return null() };
        match radial::nonrel_energy(&p.0, QuantumNumbers::new(n, ntheta, m)) {
            Ok(v) => {
                // SAFETY: `out` is non-null.
                unsafe { *out = v };
                KgStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Static NUL-terminated name of a status code.
#[no_mangle]
pub extern "C" fn kg_status_str(status: KgStatus) -> *const c_char {
    let s: &'static CStr = match status {
        KgStatus::Ok => c"ok",
        KgStatus::InvalidParameter => c"invalid_parameter",
        KgStatus::OutOfBoundWindow => c"out_of_bound_window",
        KgStatus::DomainError => c"domain_error",
        KgStatus::NoRealAngularMomentum => c"no_real_angular_momentum",
        KgStatus::NegativeDiscriminant => c"negative_discriminant",
        KgStatus::NoBoundState => c"no_bound_state",
        KgStatus::NonConvergence => c"non_convergence",
        KgStatus::NullPointer => c"null_pointer",
        KgStatus::Panic => c"panic",
    };
    s.as_ptr()
}

/// Copy the last error message of this thread into `buf` (NUL-terminated,
/// truncated to `len - 1` bytes). Returns the full message length; pass a
/// null `buf` to query it.
#[no_mangle]
pub extern "C" fn kg_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            // SAFETY: `buf` holds at least `len` bytes per the contract.
            unsafe {
                ptr::copy_nonoverlapping(msg.as_ptr().cast::<c_char>(), buf, n);
                *buf.add(n) = 0;
            }
        }
        msg.len()
    })
}
