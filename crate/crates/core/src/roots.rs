//! Internal bracketed scalar root-finding: secant/bisection hybrid,
//! safeguarded Newton, and geometric bracket expansion.

use crate::error::{Error, Result};

const MAX_ITER: usize = 200;

/// Secant/bisection hybrid on a bracket with a sign change.
///
/// The bracket is maintained at every step, so convergence is guaranteed
/// for any continuous integrand; the secant step merely accelerates.
pub(crate) fn solve_bracketed<F: Fn(f64) -> f64>(
    f: F,
    mut lo: f64,
    mut hi: f64,
    rel_tol: f64,
) -> Result<f64> {
    let mut flo = f(lo);
    let mut fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::numeric(format!(
            "no sign change on bracket [{lo}, {hi}]: f(lo)={flo}, f(hi)={fhi}"
        )));
    }
    let mut x_prev = lo;
    let mut f_prev = flo;
    let mut x = hi;
    let mut fx = fhi;
    for _ in 0..MAX_ITER {
        if (hi - lo).abs() <= rel_tol * hi.abs().max(lo.abs()) + f64::MIN_POSITIVE {
            return Ok(0.5 * (lo + hi));
        }
        // secant proposal from the two most recent iterates
        let denom = fx - f_prev;
        let mut cand = if denom != 0.0 {
            x - fx * (x - x_prev) / denom
        } else {
            f64::NAN
        };
        let width = hi - lo;
        if !cand.is_finite() || cand <= lo + 0.01 * width.abs() || cand >= hi - 0.01 * width.abs() {
            cand = 0.5 * (lo + hi);
        }
        let fcand = f(cand);
        x_prev = x;
        f_prev = fx;
        x = cand;
        fx = fcand;
        if fcand == 0.0 {
            return Ok(cand);
        }
        if fcand.signum() == flo.signum() {
            lo = cand;
            flo = fcand;
        } else {
            hi = cand;
            fhi = fcand;
        }
        let _ = fhi;
    }
    Err(Error::numeric(format!(
        "root iteration did not converge on [{lo}, {hi}] after {MAX_ITER} steps"
    )))
}

/// Newton iteration confined to a bracket; falls back to bisection
/// whenever the Newton step leaves the bracket or stalls.
pub(crate) fn solve_bracketed_newton<F, D>(
    f: F,
    df: D,
    mut lo: f64,
    mut hi: f64,
    rel_tol: f64,
) -> Result<f64>
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    let flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::numeric(format!(
            "no sign change on bracket [{lo}, {hi}]: f(lo)={flo}, f(hi)={fhi}"
        )));
    }
    let lo_sign = flo.signum();
    let mut x = 0.5 * (lo + hi);
    for _ in 0..MAX_ITER {
        let fx = f(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if fx.signum() == lo_sign {
            lo = x;
        } else {
            hi = x;
        }
        if (hi - lo).abs() <= rel_tol * hi.abs().max(lo.abs()) + f64::MIN_POSITIVE {
            return Ok(0.5 * (lo + hi));
        }
        let d = df(x);
        let newton = x - fx / d;
        x = if d != 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
    }
    Err(Error::numeric(format!(
        "newton iteration did not converge on [{lo}, {hi}] after {MAX_ITER} steps"
    )))
}

/// Expands a bracket geometrically from `start` (in both directions) until
/// `f` changes sign. Intended for monotone functions of a positive variable.
pub(crate) fn expand_bracket<F: Fn(f64) -> f64>(
    f: F,
    start: f64,
    factor: f64,
) -> Result<(f64, f64)> {
    let f0 = f(start);
    if f0 == 0.0 {
        return Ok((start, start));
    }
    let mut lo = start;
    let mut hi = start;
    for _ in 0..MAX_ITER {
        lo /= factor;
        if !lo.is_normal() {
            break;
        }
        if f(lo).signum() != f0.signum() {
            return Ok((lo, lo * factor));
        }
    }
    lo = start;
    for _ in 0..MAX_ITER {
        hi *= factor;
        if !hi.is_finite() {
            break;
        }
        if f(hi).signum() != f0.signum() {
            return Ok((hi / factor, hi));
        }
    }
    let _ = lo;
    Err(Error::numeric(format!(
        "bracket expansion from {start} found no sign change within f64 range"
    )))
}
