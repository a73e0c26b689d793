//! Reduction of the nonlocal problem to one scalar equation.
//!
//! Every solution of `-(b + a‖u'‖²) u'' = λ uᵖ` is the multiple
//! `t^{1/2} ‖W_p'‖⁻¹ W_p` of the normalized profile, where `t = ‖u'‖²`
//! solves
//!
//! ```text
//! a t + b = λ ‖W_p'‖^{1-p} t^{(p-1)/2},      i.e.  g(t) = 0,
//! g(t) = a t + b - R t^{(p-1)/2},            R = λ ‖W_p'‖^{1-p}.
//! ```
//!
//! The sign of `g` and the position of its single stationary point decide
//! multiplicity: one root for `p < 1` (g strictly increasing) and `p > 3`
//! (hump then decay), a threshold in `λ` at `p = 3` (g affine), and the
//! tangency trichotomy `L(λ) ⋛ a` for `1 < p < 3`.

use std::fmt;

use crate::bifurcation::ProblemParams;
use crate::error::{check_exponent, check_positive, Error, Result};
use crate::profile;
use crate::roots::{expand_bracket, solve_bracketed_newton};

/// Exponent regime of the scalar reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// 0 < p < 1
    Sublinear,
    /// p = 1 (linear eigenvalue problem; handled by the bifurcation module)
    Linear,
    /// 1 < p < 3
    Subcritical,
    /// p = 3 (the Kirchhoff case; g is affine in t)
    Cubic,
    /// p > 3
    Supercritical,
}

impl Regime {
    pub fn of(p: f64) -> Regime {
        if p < 1.0 {
            Regime::Sublinear
        } else if p == 1.0 {
            Regime::Linear
        } else if p < 3.0 {
            Regime::Subcritical
        } else if p == 3.0 {
            Regime::Cubic
        } else {
            Regime::Supercritical
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Regime::Sublinear => "p<1",
            Regime::Linear => "p=1",
            Regime::Subcritical => "1<p<3",
            Regime::Cubic => "p=3",
            Regime::Supercritical => "p>3",
        };
        f.write_str(s)
    }
}

/// Exact root multiplicity of g.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Multiplicity {
    Zero,
    One,
    Two,
}

impl Multiplicity {
    pub fn count(self) -> usize {
        match self {
            Multiplicity::Zero => 0,
            Multiplicity::One => 1,
            Multiplicity::Two => 2,
        }
    }
}

/// The regime rule that produced a multiplicity classification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CountRule {
    /// p < 1: g is strictly increasing from -∞ to +∞.
    MonotoneIncreasing,
    /// p > 3: g rises to a positive maximum, then decreases to -∞.
    SupercriticalHump,
    /// p = 3: a root exists iff λ exceeds a‖W₃'‖².
    CubicThreshold { lambda_min: f64 },
    /// 1 < p < 3: tangency test L(λ) against a.
    Tangency { l: f64, a: f64 },
}

impl fmt::Display for CountRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CountRule::MonotoneIncreasing => write!(f, "g strictly increasing (p<1)"),
            CountRule::SupercriticalHump => write!(f, "unique root beyond the maximum of g (p>3)"),
            CountRule::CubicThreshold { lambda_min } => {
                write!(f, "affine g: root iff lambda > {lambda_min} (p=3)")
            }
            CountRule::Tangency { l, a } => write!(f, "tangency test L(lambda)={l} vs a={a}"),
        }
    }
}

/// Multiplicity with the rule that decided it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolutionCount {
    pub multiplicity: Multiplicity,
    pub rule: CountRule,
}

/// All positive roots of g for one parameter set.
#[derive(Debug, Clone, PartialEq)]
pub struct ReductionRoots {
    pub params: ProblemParams,
    /// Ordered ascending; every t satisfies g(t) = 0 to 1e-12 relative.
    pub roots: Vec<f64>,
    pub count: SolutionCount,
    pub regime: Regime,
}

const ROOT_TOL: f64 = 1e-12;
/// Near-tangency window: |L - a| within this relative band collapses the
/// ill-conditioned root pair to the double root t₀.
const TANGENCY_BAND: f64 = 1e-10;

/// R = λ ‖W_p'‖^{1-p}.
fn reduction_coefficient(p: f64, lambda: f64) -> Result<f64> {
    Ok(lambda * profile::grad_norm(p)?.powf(1.0 - p))
}

/// g(t) = a t + b - R t^{(p-1)/2}.
pub fn g(params: &ProblemParams, t: f64) -> Result<f64> {
    if !t.is_finite() || t <= 0.0 {
        return Err(Error::domain(format!("g is defined for t > 0, got {t}")));
    }
    let r = reduction_coefficient(params.p, params.lambda)?;
    Ok(g_raw(params.a, params.b, params.p, r, t))
}

/// g'(t) = a - ((p-1)/2) R t^{(p-3)/2}.
pub fn g_prime(params: &ProblemParams, t: f64) -> Result<f64> {
    if !t.is_finite() || t <= 0.0 {
        return Err(Error::domain(format!("g' is defined for t > 0, got {t}")));
    }
    let r = reduction_coefficient(params.p, params.lambda)?;
    Ok(g_prime_raw(params.a, params.p, r, t))
}

fn g_raw(a: f64, b: f64, p: f64, r: f64, t: f64) -> f64 {
    a * t + b - r * t.powf((p - 1.0) / 2.0)
}

fn g_prime_raw(a: f64, p: f64, r: f64, t: f64) -> f64 {
    a - 0.5 * (p - 1.0) * r * t.powf((p - 3.0) / 2.0)
}

/// The tangency threshold of the subcritical band,
/// L(λ) = ((p-1)/2) λ^{2/(p-1)} ‖W_p'‖⁻² (2b/(3-p))^{(p-3)/(p-1)}.
/// L > a means two solutions, L = a one, L < a none.
pub fn tangency_threshold(a: f64, b: f64, p: f64, lambda: f64) -> Result<f64> {
    check_positive("a", a)?;
    check_positive("b", b)?;
    check_positive("lambda", lambda)?;
    check_exponent(p)?;
    if p <= 1.0 || p >= 3.0 {
        return Err(Error::regime(format!(
            "tangency threshold requires 1 < p < 3, got p = {p}"
        )));
    }
    let w = profile::grad_norm(p)?;
    Ok(0.5
        * (p - 1.0)
        * lambda.powf(2.0 / (p - 1.0))
        * w.powi(-2)
        * (2.0 * b / (3.0 - p)).powf((p - 3.0) / (p - 1.0)))
}

/// The stationary point of g: the tangency candidate t₀ with g'(t₀) = 0,
/// t₀ = (2a / ((p-1) R))^{2/(p-3)}. Defined for 1 < p < 3 (minimum of g)
/// and p > 3 (maximum of g); g is affine at p = 3.
pub fn tangency_point(a: f64, b: f64, p: f64, lambda: f64) -> Result<f64> {
    check_positive("a", a)?;
    check_positive("b", b)?;
    check_positive("lambda", lambda)?;
    check_exponent(p)?;
    if p <= 1.0 || p == 3.0 {
        return Err(Error::regime(format!(
            "the stationary point of g requires 1 < p < 3 or p > 3, got p = {p}"
        )));
    }
    let r = reduction_coefficient(p, lambda)?;
    let t0 = (2.0 * a / ((p - 1.0) * r)).powf(2.0 / (p - 3.0));
    if !t0.is_finite() || t0 <= 0.0 {
        return Err(Error::numeric(format!(
            "stationary point overflows the f64 range at p = {p}"
        )));
    }
    Ok(t0)
}

/// Finds every positive root of g, bracketed and polished to 1e-12
/// relative, with the regime rule that fixes the count.
pub fn solve_roots(params: &ProblemParams) -> Result<ReductionRoots> {
    params.validate()?;
    let (a, b, p, lambda) = (params.a, params.b, params.p, params.lambda);
    if p == 1.0 {
        return Err(Error::regime(
            "the scalar reduction is undefined at p = 1; use the bifurcation module's cosine branch",
        ));
    }
    let regime = Regime::of(p);
    let r = reduction_coefficient(p, lambda)?;
    let gf = |t: f64| g_raw(a, b, p, r, t);
    let dgf = |t: f64| g_prime_raw(a, p, r, t);

    let polish =
        |lo: f64, hi: f64| -> Result<f64> { solve_bracketed_newton(gf, dgf, lo, hi, ROOT_TOL) };

    let (roots, count) = match regime {
        Regime::Sublinear => {
            // g increases strictly from -infinity; bracket by geometric
            // expansion from t = 1.
            let (lo, hi) = expand_bracket(gf, 1.0, 2.0)?;
            let t = if lo == hi { lo } else { polish(lo, hi)? };
            (
                vec![t],
                SolutionCount {
                    multiplicity: Multiplicity::One,
                    rule: CountRule::MonotoneIncreasing,
                },
            )
        }
        Regime::Cubic => {
            let w2 = profile::grad_norm(3.0)?.powi(2);
            let lambda_min = a * w2;
            if lambda > lambda_min {
                let t = b * w2 / (lambda - lambda_min);
                (
                    vec![t],
                    SolutionCount {
                        multiplicity: Multiplicity::One,
                        rule: CountRule::CubicThreshold { lambda_min },
                    },
                )
            } else {
                (
                    vec![],
                    SolutionCount {
                        multiplicity: Multiplicity::Zero,
                        rule: CountRule::CubicThreshold { lambda_min },
                    },
                )
            }
        }
        Regime::Supercritical => {
            let t0 = tangency_point(a, b, p, lambda)?;
            let mut hi = t0;
            let mut found = false;
            for _ in 0..200 {
                hi *= 2.0;
                if !hi.is_finite() {
                    break;
                }
                if gf(hi) < 0.0 {
                    found = true;
                    break;
                }
            }
            if !found {
                return Err(Error::numeric(format!(
                    "no sign change of g beyond its maximum t0={t0} within the f64 range"
                )));
            }
            let t = polish(t0, hi)?;
            (
                vec![t],
                SolutionCount {
                    multiplicity: Multiplicity::One,
                    rule: CountRule::SupercriticalHump,
                },
            )
        }
        Regime::Subcritical => {
            let l = tangency_threshold(a, b, p, lambda)?;
            let t0 = tangency_point(a, b, p, lambda)?;
            let rule = CountRule::Tangency { l, a };
            if (l - a).abs() <= TANGENCY_BAND * a {
                (
                    vec![t0],
                    SolutionCount {
                        multiplicity: Multiplicity::One,
                        rule,
                    },
                )
            } else if l < a {
                (
                    vec![],
                    SolutionCount {
                        multiplicity: Multiplicity::Zero,
                        rule,
                    },
                )
            } else {
                // the minimum of g dips below zero: one root on each side
                let mut lo = t0;
                let mut found = false;
                for _ in 0..200 {
                    lo *= 0.5;
                    if !lo.is_normal() {
                        break;
                    }
                    if gf(lo) > 0.0 {
                        found = true;
                        break;
                    }
                }
                if !found {
                    return Err(Error::numeric(
                        "no positive value of g below the tangency point within the f64 range",
                    ));
                }
                let left = polish(lo, t0)?;
                let mut hi = t0;
                found = false;
                for _ in 0..200 {
                    hi *= 2.0;
                    if !hi.is_finite() {
                        break;
                    }
                    if gf(hi) > 0.0 {
                        found = true;
                        break;
                    }
                }
                if !found {
                    return Err(Error::numeric(
                        "no positive value of g beyond the tangency point within the f64 range",
                    ));
                }
                let right = polish(t0, hi)?;
                (
                    vec![left, right],
                    SolutionCount {
                        multiplicity: Multiplicity::Two,
                        rule,
                    },
                )
            }
        }
        Regime::Linear => unreachable!("p = 1 rejected above"),
    };

    debug_assert_eq!(roots.len(), count.multiplicity.count());
    Ok(ReductionRoots {
        params: params.clone(),
        roots,
        count,
        regime,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
    }

    fn params(a: f64, b: f64, p: f64, lambda: f64) -> ProblemParams {
        ProblemParams::new(a, b, p, lambda).unwrap()
    }

    fn q2() -> f64 {
        profile::grad_norm(2.0).unwrap()
    }

    #[test]
    fn g_limit_at_zero_is_b() {
        let pr = params(1.0, 7.5, 2.0, 3.0);
        let v = g(&pr, 1e-28).unwrap();
        assert!(rel(v, 7.5) < 1e-12);
    }

    #[test]
    fn g_is_affine_at_p3() {
        // slope a - lambda ||W3'||^{-2}
        let pr = params(2.0, 1.0, 3.0, 20.0);
        let w2 = profile::grad_norm(3.0).unwrap().powi(2);
        let slope_expected = 2.0 - 20.0 / w2;
        let g1 = g(&pr, 1.0).unwrap();
        let g2 = g(&pr, 2.0).unwrap();
        assert!(rel(g2 - g1, slope_expected) < 1e-12);
    }

    #[test]
    fn tangency_threshold_p2() {
        // L(lambda) = lambda^2 / (4 b ||W2'||^2); equals a at lambda = 2 sqrt(ab) Q2
        let l = tangency_threshold(1.0, 1.0, 2.0, 3.0 * q2()).unwrap();
        assert!(rel(l, 9.0 / 4.0) < 1e-12);
        let l = tangency_threshold(1.0, 1.0, 2.0, q2()).unwrap();
        assert!(rel(l, 0.25) < 1e-12);
        let lam_star = 2.0 * q2();
        assert!(rel(tangency_threshold(1.0, 1.0, 2.0, lam_star).unwrap(), 1.0) < 1e-12);
    }

    #[test]
    fn tangency_point_examples() {
        // at the tangency lambda, t0 = b/a
        let lam_star = 2.0 * (2.0f64 * 3.0).sqrt() * q2();
        let t0 = tangency_point(2.0, 3.0, 2.0, lam_star).unwrap();
        assert!(rel(t0, 1.5) < 1e-12);

        // lambda = 5 Q2 makes R = 5 exactly: t0 = (R/(2a))^2 = 25/16
        let t0 = tangency_point(2.0, 3.0, 2.0, 5.0 * q2()).unwrap();
        assert!(rel(t0, 1.5625) < 1e-12);

        // stationarity at p = 5 by direct evaluation of g'
        let pr = params(1.3, 0.7, 5.0, 4.0);
        let t0 = tangency_point(1.3, 0.7, 5.0, 4.0).unwrap();
        assert!(g_prime(&pr, t0).unwrap().abs() < 1e-10);

        assert!(tangency_point(1.0, 1.0, 3.0, 4.0).is_err());
        assert!(tangency_threshold(1.0, 1.0, 3.5, 4.0).is_err());
        assert!(tangency_threshold(1.0, 1.0, 0.5, 4.0).is_err());
    }

    #[test]
    fn stationary_point_is_grid_minimum() {
        // brute-force grid minimization oracle for g on log-spaced t
        let pr = params(2.0, 3.0, 2.0, 5.0 * q2());
        let t0 = tangency_point(2.0, 3.0, 2.0, 5.0 * q2()).unwrap();
        let n = 20000;
        let (lo, hi) = (1e-4f64, 1e4f64);
        let mut best_t = lo;
        let mut best = f64::INFINITY;
        for i in 0..=n {
            let t = lo * (hi / lo).powf(i as f64 / n as f64);
            let v = g(&pr, t).unwrap();
            if v < best {
                best = v;
                best_t = t;
            }
        }
        let step = (hi / lo).powf(1.0 / n as f64);
        assert!(t0 / best_t < step * step && best_t / t0 < step * step);
        assert!(g(&pr, t0).unwrap() <= best + 1e-12 * best.abs());
    }

    #[test]
    fn p3_closed_form_root() {
        let w2 = profile::grad_norm(3.0).unwrap().powi(2);
        let lambda = 2.5 * w2; // above the threshold a*w2 with a=1
        let rr = solve_roots(&params(1.0, 1.0, 3.0, lambda)).unwrap();
        assert_eq!(rr.count.multiplicity, Multiplicity::One);
        assert!(rel(rr.roots[0], w2 / (lambda - w2)) < 1e-12);

        // at or below the threshold: no roots, still exit-ok
        let rr = solve_roots(&params(1.0, 1.0, 3.0, w2)).unwrap();
        assert_eq!(rr.count.multiplicity, Multiplicity::Zero);
        assert!(rr.roots.is_empty());
    }

    #[test]
    fn p2_roots_match_quadratic_closed_form() {
        let lambda = 1.5 * 2.0 * q2();
        let rr = solve_roots(&params(1.0, 1.0, 2.0, lambda)).unwrap();
        assert_eq!(rr.count.multiplicity, Multiplicity::Two);
        // sqrt(t) = (lambda/Q2 ± sqrt(lambda^2/Q2^2 - 4ab)) / (2a)
        let disc = (lambda * lambda / (q2() * q2()) - 4.0).sqrt();
        let s2 = (lambda / q2() - disc) / 2.0;
        let s1 = (lambda / q2() + disc) / 2.0;
        assert!(rel(rr.roots[0], s2 * s2) < 1e-11);
        assert!(rel(rr.roots[1], s1 * s1) < 1e-11);
        // frozen references
        assert!(rel(rr.roots[0], 0.14589803375031546) < 1e-11);
        assert!(rel(rr.roots[1], 6.8541019662496845) < 1e-11);
    }

    #[test]
    fn p2_tangency_collapses_to_double_root() {
        let rr = solve_roots(&params(1.0, 1.0, 2.0, 2.0 * q2())).unwrap();
        assert_eq!(rr.count.multiplicity, Multiplicity::One);
        assert!(rel(rr.roots[0], 1.0) < 1e-9); // t0 = b/a = 1
    }

    #[test]
    fn sublinear_unique_root() {
        let rr = solve_roots(&params(1.0, 1.0, 0.5, 1.0)).unwrap();
        assert_eq!(rr.count.multiplicity, Multiplicity::One);
        assert!(rel(rr.roots[0], 0.076602816874987151) < 1e-11);
        assert_eq!(rr.regime, Regime::Sublinear);
    }

    #[test]
    fn supercritical_root_is_beyond_maximum() {
        let rr = solve_roots(&params(1.0, 1.0, 5.0, 10.0)).unwrap();
        assert_eq!(rr.count.multiplicity, Multiplicity::One);
        let t0 = tangency_point(1.0, 1.0, 5.0, 10.0).unwrap();
        assert!(rr.roots[0] > t0);
        assert!(rel(rr.roots[0], 2.9084256903775428) < 1e-11);
    }

    #[test]
    fn every_root_satisfies_the_scalar_equation() {
        let sets = [
            (1.0, 1.0, 0.5, 1.0),
            (2.0, 0.5, 2.0, 14.0),
            (1.0, 1.0, 2.5, 9.0),
            (1.0, 1.0, 5.0, 10.0),
            (0.3, 2.0, 7.0, 5.0),
        ];
        for (a, b, p, lambda) in sets {
            let pr = params(a, b, p, lambda);
            let rr = solve_roots(&pr).unwrap();
            assert_eq!(rr.roots.len(), rr.count.multiplicity.count());
            for &t in &rr.roots {
                let resid = g(&pr, t).unwrap().abs();
                assert!(
                    resid <= 1e-9 * (a * t + b),
                    "root residual {resid} too large at p={p}"
                );
            }
        }
    }

    #[test]
    fn p1_is_a_regime_error() {
        assert!(matches!(
            solve_roots(&params(1.0, 1.0, 1.0, 5.0)),
            Err(Error::Regime(_))
        ));
    }
}
