//! C ABI for the kirchhoff1d library.
//!
//! Scalar queries write through out-pointers and return a [`K1dStatus`];
//! sampled profiles are returned as opaque [`K1dProfile`] handles with
//! accessor functions and an explicit free. The most recent error message
//! is kept per thread and retrieved with [`k1d_last_error_message`]. The
//! C header is generated into `include/kirchhoff1d.h` at build time.

use std::cell::RefCell;
use std::ffi::CString;
use std::os::raw::c_char;

use kirchhoff1d::{
    bifurcation, eigenproblem, profile, verify, Branch, Error, ProblemParams, ProfileGrid,
};

/// Status code of every fallible C entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum K1dStatus {
    K1dOk = 0,
    /// Input outside an operation's domain (bad p, x, range, grid size).
    K1dDomainError = 1,
    /// Parameter range where the requested quantity is undefined.
    K1dRegimeError = 2,
    /// Solver or quadrature non-convergence / f64 range exhaustion.
    K1dNumericError = 3,
    /// A required pointer argument was null.
    K1dNullArgument = 4,
}

/// Branch selector mirrored from the core library: 0 unique, 1 lower, 2 upper.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum K1dBranch {
    K1dBranchUnique = 0,
    K1dBranchLower = 1,
    K1dBranchUpper = 2,
}

/// The time-map integral triple (A_p, B_p, C_p) with its error estimate.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct K1dTimeMapConstants {
    pub p: f64,
    pub a_p: f64,
    pub b_p: f64,
    pub c_p: f64,
    pub est_error: f64,
}

/// One (λ, ξ) branch point of the bifurcation diagram.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct K1dBranchPoint {
    pub lambda: f64,
    pub xi: f64,
    pub grad_norm: f64,
    pub branch: K1dBranch,
}

/// Finite-difference residual report for a sampled solution.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct K1dResidualReport {
    pub max_residual: f64,
    pub nonlocal_gap: f64,
    pub grid_h: f64,
    pub nodes_checked: usize,
}

/// Opaque sampled profile handle; free with [`k1d_profile_free`].
pub struct K1dProfile {
    grid: ProfileGrid,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(err: &Error) -> K1dStatus {
    let msg = CString::new(err.to_string()).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = msg);
    match err {
        Error::Domain(_) => K1dStatus::K1dDomainError,
        Error::Regime(_) => K1dStatus::K1dRegimeError,
        Error::Numeric(_) => K1dStatus::K1dNumericError,
    }
}

fn null_error(what: &str) -> K1dStatus {
    let msg = CString::new(format!("null pointer argument: {what}")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = msg);
    K1dStatus::K1dNullArgument
}

/// Copies the most recent error message of this thread into `buf`
/// (truncated, always NUL-terminated) and returns the full length in
/// bytes including the terminator. A zero-length message means no error
/// has been recorded yet.
///
/// # Safety
/// `buf` must point to `len` writable bytes, or be null (then only the
/// required length is returned).
#[no_mangle]
pub unsafe extern "C" fn k1d_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|slot| {
        let msg = slot.borrow();
        let bytes = msg.as_bytes_with_nul();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len);
            std::ptr::copy_nonoverlapping(bytes.as_ptr() as *const c_char, buf, n);
            // guarantee termination on truncation
            *buf.add(n - 1) = 0;
        }
        bytes.len()
    })
}

macro_rules! write_out {
    ($out:ident, $value:expr) => {{
        if $out.is_null() {
            return null_error(stringify!($out));
        }
        match $value {
            Ok(v) => {
                *$out = v;
                K1dStatus::K1dOk
            }
            Err(e) => set_error(&e),
        }
    }};
}

/// A_p, B_p, C_p bundled with their quadrature error estimate.
///
/// # Safety
/// `out` must point to a writable `K1dTimeMapConstants`.
#[no_mangle]
pub unsafe extern "C" fn k1d_time_map_constants(
    p: f64,
    out: *mut K1dTimeMapConstants,
) -> K1dStatus {
    write_out!(
        out,
        kirchhoff1d::special_integrals::constants(p).map(|k| K1dTimeMapConstants {
            p: k.p,
            a_p: k.a_p,
            b_p: k.b_p,
            c_p: k.c_p,
            est_error: k.est_error,
        })
    )
}

/// η_p = W_p(0).
///
/// # Safety
/// `out` must point to a writable f64.
#[no_mangle]
pub unsafe extern "C" fn k1d_eta(p: f64, out: *mut f64) -> K1dStatus {
    write_out!(out, profile::eta(p))
}

/// ‖W_p'‖.
///
/// # Safety
/// `out` must point to a writable f64.
#[no_mangle]
pub unsafe extern "C" fn k1d_grad_norm(p: f64, out: *mut f64) -> K1dStatus {
    write_out!(out, profile::grad_norm(p))
}

/// W_p(x) for |x| ≤ 1.
///
/// # Safety
/// `out` must point to a writable f64.
#[no_mangle]
pub unsafe extern "C" fn k1d_profile_value(p: f64, x: f64, out: *mut f64) -> K1dStatus {
    write_out!(out, profile::evaluate(p, x))
}

/// First eigenvalue μ₁ of the nonlocal eigenproblem (p > 1).
///
/// # Safety
/// `out` must point to a writable f64.
#[no_mangle]
pub unsafe extern "C" fn k1d_mu1(p: f64, out: *mut f64) -> K1dStatus {
    write_out!(out, eigenproblem::mu1(p))
}

/// ζ = φ₁(0) of the nonlocal eigenproblem (p > 1).
///
/// # Safety
/// `out` must point to a writable f64.
#[no_mangle]
pub unsafe extern "C" fn k1d_zeta(p: f64, out: *mut f64) -> K1dStatus {
    write_out!(out, eigenproblem::zeta(p))
}

/// Bifurcation curve value λ(ξ).
///
/// # Safety
/// `out` must point to a writable f64.
#[no_mangle]
pub unsafe extern "C" fn k1d_lambda_of_xi(
    a: f64,
    b: f64,
    p: f64,
    xi: f64,
    out: *mut f64,
) -> K1dStatus {
    write_out!(out, bifurcation::lambda_of_xi(a, b, p, xi))
}

fn branch_code(b: Branch) -> K1dBranch {
    match b {
        Branch::Unique => K1dBranch::K1dBranchUnique,
        Branch::Lower => K1dBranch::K1dBranchLower,
        Branch::Upper => K1dBranch::K1dBranchUpper,
    }
}

fn branch_from_code(code: K1dBranch) -> Branch {
    match code {
        K1dBranch::K1dBranchUnique => Branch::Unique,
        K1dBranch::K1dBranchLower => Branch::Lower,
        K1dBranch::K1dBranchUpper => Branch::Upper,
    }
}

/// All solution branches at λ. Writes up to `cap` entries into `out_buf`
/// (entries beyond `cap` are dropped) and always stores the full branch
/// count in `out_count`; zero branches is a success. `out_buf` may be
/// null to query the count alone.
///
/// # Safety
/// `out_buf`, unless null, must point to `cap` writable `K1dBranchPoint`s;
/// `out_count` must point to a writable usize.
#[no_mangle]
pub unsafe extern "C" fn k1d_solve(
    a: f64,
    b: f64,
    p: f64,
    lambda: f64,
    out_buf: *mut K1dBranchPoint,
    cap: usize,
    out_count: *mut usize,
) -> K1dStatus {
    if out_count.is_null() {
        return null_error("out_count");
    }
    match bifurcation::xi_of_lambda(a, b, p, lambda) {
        Ok(points) => {
            *out_count = points.len();
            if !out_buf.is_null() {
                for (i, bp) in points.iter().take(cap).enumerate() {
                    *out_buf.add(i) = K1dBranchPoint {
                        lambda: bp.lambda,
                        xi: bp.xi,
                        grad_norm: bp.grad_norm,
                        branch: branch_code(bp.branch),
                    };
                }
            }
            K1dStatus::K1dOk
        }
        Err(e) => set_error(&e),
    }
}

fn profile_handle(result: Result<ProfileGrid, Error>, out: *mut *mut K1dProfile) -> K1dStatus {
    if out.is_null() {
        return null_error("out");
    }
    match result {
        Ok(grid) => {
            let handle = Box::new(K1dProfile { grid });
            unsafe { *out = Box::into_raw(handle) };
            K1dStatus::K1dOk
        }
        Err(e) => {
            unsafe { *out = std::ptr::null_mut() };
            set_error(&e)
        }
    }
}

/// Samples W_p on n uniform nodes (n odd ≥ 3) into a new profile handle.
///
/// # Safety
/// `out` must point to a writable `K1dProfile*`.
#[no_mangle]
pub unsafe extern "C" fn k1d_profile_sample(
    p: f64,
    n: usize,
    out: *mut *mut K1dProfile,
) -> K1dStatus {
    profile_handle(profile::sample(p, n), out)
}

/// Samples the exact solution u_λ of the requested branch.
///
/// # Safety
/// `out` must point to a writable `K1dProfile*`.
#[no_mangle]
pub unsafe extern "C" fn k1d_solution_profile(
    a: f64,
    b: f64,
    p: f64,
    lambda: f64,
    branch: K1dBranch,
    n: usize,
    out: *mut *mut K1dProfile,
) -> K1dStatus {
    profile_handle(
        bifurcation::solution_profile(a, b, p, lambda, branch_from_code(branch), n),
        out,
    )
}

/// Independent shooting-method construction of W_p (n odd ≥ 101).
///
/// # Safety
/// `out` must point to a writable `K1dProfile*`.
#[no_mangle]
pub unsafe extern "C" fn k1d_shoot_profile(
    p: f64,
    n: usize,
    out: *mut *mut K1dProfile,
) -> K1dStatus {
    profile_handle(verify::shoot_profile(p, n), out)
}

/// Number of nodes in a profile; 0 for a null handle.
///
/// # Safety
/// `handle` must be null or a live pointer from a profile constructor.
#[no_mangle]
pub unsafe extern "C" fn k1d_profile_len(handle: *const K1dProfile) -> usize {
    if handle.is_null() {
        return 0;
    }
    (*handle).grid.xs.len()
}

/// Borrowed pointer to the abscissae; valid until the handle is freed.
///
/// # Safety
/// `handle` must be null or a live pointer from a profile constructor.
#[no_mangle]
pub unsafe extern "C" fn k1d_profile_xs(handle: *const K1dProfile) -> *const f64 {
    if handle.is_null() {
        return std::ptr::null();
    }
    (*handle).grid.xs.as_ptr()
}

/// Borrowed pointer to the profile values; valid until the handle is freed.
///
/// # Safety
/// `handle` must be null or a live pointer from a profile constructor.
#[no_mangle]
pub unsafe extern "C" fn k1d_profile_values(handle: *const K1dProfile) -> *const f64 {
    if handle.is_null() {
        return std::ptr::null();
    }
    (*handle).grid.values.as_ptr()
}

/// Sup-norm of the sampled profile; NaN for a null handle.
///
/// # Safety
/// `handle` must be null or a live pointer from a profile constructor.
#[no_mangle]
pub unsafe extern "C" fn k1d_profile_max_value(handle: *const K1dProfile) -> f64 {
    if handle.is_null() {
        return f64::NAN;
    }
    (*handle).grid.max_value
}

/// L²-norm of the profile derivative; NaN for a null handle.
///
/// # Safety
/// `handle` must be null or a live pointer from a profile constructor.
#[no_mangle]
pub unsafe extern "C" fn k1d_profile_grad_norm(handle: *const K1dProfile) -> f64 {
    if handle.is_null() {
        return f64::NAN;
    }
    (*handle).grid.grad_norm
}

/// Frees a profile handle; null is a no-op.
///
/// # Safety
/// `handle` must be null or a live pointer from a profile constructor,
/// not freed before.
#[no_mangle]
pub unsafe extern "C" fn k1d_profile_free(handle: *mut K1dProfile) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Finite-difference residual of -(b + a‖u'‖²)u'' = λuᵖ on a sampled
/// profile (p is taken from the handle).
///
/// # Safety
/// `handle` must be a live profile pointer; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn k1d_residual(
    handle: *const K1dProfile,
    a: f64,
    b: f64,
    lambda: f64,
    out: *mut K1dResidualReport,
) -> K1dStatus {
    if handle.is_null() {
        return null_error("handle");
    }
    let grid = &(*handle).grid;
    let result =
        ProblemParams::new(a, b, grid.p, lambda).and_then(|params| verify::residual(grid, &params));
    write_out!(
        out,
        result.map(|r| K1dResidualReport {
            max_residual: r.max_residual,
            nonlocal_gap: r.nonlocal_gap,
            grid_h: r.grid_h,
            nodes_checked: r.nodes_checked,
        })
    )
}

/// Minimum sampled Rayleigh quotient over seeded random trials (p > 1).
///
/// # Safety
/// `out` must point to a writable f64.
#[no_mangle]
pub unsafe extern "C" fn k1d_rayleigh_sample(
    p: f64,
    n_trials: usize,
    seed: u64,
    out: *mut f64,
) -> K1dStatus {
    write_out!(out, verify::rayleigh_sample(p, n_trials, seed))
}
