//! Shared test-side oracles, kept independent of the library's own
//! quadrature and root-finding paths: a tanh-sinh reference integrator
//! and Beta-function evaluations through statrs.

#![allow(dead_code)]

use std::f64::consts::FRAC_PI_2;

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

/// Reference tanh-sinh quadrature on (a, b). The integrand receives the
/// abscissa plus its distances to both endpoints, so inverse-square-root
/// endpoint singularities can be evaluated without cancellation.
pub fn tanh_sinh<F: Fn(f64, f64, f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64) -> f64 {
    let c = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let t_max = 6.5;
    let eval_level = |h: f64| -> f64 {
        let kmax = (t_max / h) as i64;
        let mut sum = 0.0;
        for k in -kmax..=kmax {
            let t = k as f64 * h;
            let u = FRAC_PI_2 * t.sinh();
            // 1 - |tanh u| without cancellation
            let d_near = 2.0 / ((2.0 * u.abs()).exp() + 1.0);
            let w = FRAC_PI_2 * t.cosh() * (sech_sq(u));
            if w == 0.0 || d_near == 0.0 {
                continue;
            }
            let x = mid + c * u.tanh();
            let (d_lo, d_hi) = if u >= 0.0 {
                (b - a - c * d_near, c * d_near)
            } else {
                (c * d_near, b - a - c * d_near)
            };
            let term = f(x, d_lo, d_hi) * w;
            if term.is_finite() {
                sum += term;
            }
        }
        sum * h * c
    };
    let mut h = 1.0;
    let mut prev = eval_level(h);
    for _ in 0..10 {
        h *= 0.5;
        let cur = eval_level(h);
        if (cur - prev).abs() <= rel_tol * cur.abs() {
            return cur;
        }
        prev = cur;
    }
    prev
}

fn sech_sq(u: f64) -> f64 {
    let e = (-2.0 * u.abs()).exp();
    4.0 * e / ((1.0 + e) * (1.0 + e))
}

pub fn beta_ref(x: f64, y: f64) -> f64 {
    use statrs::function::gamma::ln_gamma;
    (ln_gamma(x) + ln_gamma(y) - ln_gamma(x + y)).exp()
}

/// Oracle for A_p through the Beta function.
pub fn a_ref(p: f64) -> f64 {
    beta_ref(1.0 / (p + 1.0), 0.5) / (p + 1.0)
}

pub fn b_ref(p: f64) -> f64 {
    beta_ref(1.0 / (p + 1.0), 1.5) / (p + 1.0)
}

pub fn c_ref(p: f64) -> f64 {
    beta_ref((p + 2.0) / (p + 1.0), 0.5) / (p + 1.0)
}

#[cfg(test)]
mod self_checks {
    use super::*;

    #[test]
    fn tanh_sinh_handles_smooth_and_singular_integrands() {
        // smooth
        let v = tanh_sinh(|x, _, _| x.exp(), 0.0, 1.0, 1e-13);
        assert!(rel(v, std::f64::consts::E - 1.0) < 1e-12);
        // inverse square root singularity at the upper endpoint
        let v = tanh_sinh(|_, _, d_hi| 1.0 / d_hi.sqrt(), 0.0, 1.0, 1e-13);
        assert!(rel(v, 2.0) < 1e-11, "got {v}");
        // arcsine integrand: both-endpoint singularity
        let v = tanh_sinh(|_, d_lo, d_hi| 1.0 / (d_lo * d_hi).sqrt(), -1.0, 1.0, 1e-13);
        assert!(rel(v, std::f64::consts::PI) < 1e-11, "got {v}");
    }

    #[test]
    fn beta_matches_known_values() {
        assert!(rel(beta_ref(1.0, 1.0), 1.0) < 1e-14);
        assert!(rel(beta_ref(2.0, 3.0), 1.0 / 12.0) < 1e-13);
        assert!(rel(beta_ref(0.5, 0.5), std::f64::consts::PI) < 1e-13);
    }
}
