//! Exact bifurcation curves λ(ξ), their branch inversions ξ(λ), and the
//! exact solution profiles, for every exponent regime.
//!
//! For `p ≠ 1` the time map gives the single closed form
//!
//! ```text
//! λ(ξ) = ((p+1)/2) A_p² (2 A_p B_p a ξ^{3-p} + b ξ^{1-p}),
//! ```
//!
//! which specializes at p = 3 to `4aA₃³B₃ + 2A₃²bξ⁻²` and degenerates at
//! p = 1 to the explicit parabola `λ(ξ) = (π⁴/16) a ξ² + (π²/4) b` of the
//! cosine solution. The curve is strictly increasing for p < 1, strictly
//! decreasing for p > 3, and U-shaped with one interior minimum for
//! 1 < p < 3, which fixes the solution count at every λ.

use std::fmt;

use crate::error::{check_exponent, check_positive, Error, Result};
use crate::profile::{self, ProfileGrid};
use crate::roots::{expand_bracket, solve_bracketed_newton};
use crate::special_integrals::constants;

/// The quadruple (a, b, p, λ) defining the nonlocal problem.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemParams {
    /// Coefficient of the nonlocal term ‖u'‖².
    pub a: f64,
    /// Diffusion offset.
    pub b: f64,
    /// Nonlinearity exponent.
    pub p: f64,
    /// Bifurcation parameter.
    pub lambda: f64,
}

impl ProblemParams {
    pub fn new(a: f64, b: f64, p: f64, lambda: f64) -> Result<Self> {
        let out = ProblemParams { a, b, p, lambda };
        out.validate()?;
        Ok(out)
    }

    pub fn validate(&self) -> Result<()> {
        check_positive("a", self.a)?;
        check_positive("b", self.b)?;
        check_exponent(self.p)?;
        check_positive("lambda", self.lambda)
    }
}

/// Identity of a solution branch at fixed λ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// The only solution (monotone regimes, thresholds, tangency).
    Unique,
    /// The smaller-ξ solution of a two-solution pair (ξ₂).
    Lower,
    /// The larger-ξ solution of a two-solution pair (ξ₁).
    Upper,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Unique => "unique",
            Branch::Lower => "lower",
            Branch::Upper => "upper",
        })
    }
}

/// Shape of the bifurcation curve over ξ > 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Monotonicity {
    Increasing,
    Decreasing,
    UShaped,
}

impl Monotonicity {
    pub fn of(p: f64) -> Monotonicity {
        if p <= 1.0 {
            Monotonicity::Increasing
        } else if p < 3.0 {
            Monotonicity::UShaped
        } else {
            Monotonicity::Decreasing
        }
    }
}

impl fmt::Display for Monotonicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Monotonicity::Increasing => "increasing",
            Monotonicity::Decreasing => "decreasing",
            Monotonicity::UShaped => "U-shaped",
        })
    }
}

/// One point (λ, ξ) on a bifurcation curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchPoint {
    pub lambda: f64,
    /// Sup-norm ξ = ‖u_λ‖_∞.
    pub xi: f64,
    pub branch: Branch,
    /// ‖u_λ'‖ = √(2 A_p B_p) ξ.
    pub grad_norm: f64,
}

/// A curve sweep with its monotonicity classification.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveSweep {
    pub points: Vec<BranchPoint>,
    pub monotonicity: Monotonicity,
}

/// Relative window inside which λ is treated as sitting exactly on a
/// branch-count threshold (tangency / curve minimum).
const THRESHOLD_BAND: f64 = 1e-12;
const INVERT_TOL: f64 = 1e-13;

/// The bifurcation curve λ(ξ).
pub fn lambda_of_xi(a: f64, b: f64, p: f64, xi: f64) -> Result<f64> {
    check_positive("a", a)?;
    check_positive("b", b)?;
    check_exponent(p)?;
    if !xi.is_finite() || xi <= 0.0 {
        return Err(Error::domain(format!(
            "xi must be finite and > 0, got {xi}"
        )));
    }
    if p == 1.0 {
        let pi2 = std::f64::consts::PI * std::f64::consts::PI;
        return Ok(pi2 * pi2 / 16.0 * a * xi * xi + pi2 / 4.0 * b);
    }
    let k = constants(p)?;
    Ok(0.5
        * (p + 1.0)
        * k.a_p
        * k.a_p
        * (2.0 * k.a_p * k.b_p * a * xi.powf(3.0 - p) + b * xi.powf(1.0 - p)))
}

fn dlambda_dxi(a: f64, b: f64, p: f64, xi: f64) -> Result<f64> {
    if p == 1.0 {
        let pi2 = std::f64::consts::PI * std::f64::consts::PI;
        return Ok(pi2 * pi2 / 8.0 * a * xi);
    }
    let k = constants(p)?;
    Ok(0.5
        * (p + 1.0)
        * k.a_p
        * k.a_p
        * (2.0 * k.a_p * k.b_p * a * (3.0 - p) * xi.powf(2.0 - p) + b * (1.0 - p) * xi.powf(-p)))
}

/// Interior minimizer of λ(ξ) in the subcritical band 1 < p < 3:
/// ξ_min = √( (p-1) b / ((3-p) · 2 A_p B_p · a) ).
pub fn curve_minimum_xi(a: f64, b: f64, p: f64) -> Result<f64> {
    check_positive("a", a)?;
    check_positive("b", b)?;
    check_exponent(p)?;
    if p <= 1.0 || p >= 3.0 {
        return Err(Error::regime(format!(
            "the curve has an interior minimum only for 1 < p < 3, got p = {p}"
        )));
    }
    let k = constants(p)?;
    Ok(((p - 1.0) * b / ((3.0 - p) * 2.0 * k.a_p * k.b_p * a)).sqrt())
}

fn branch_point(
    a: f64,
    b: f64,
    p: f64,
    lambda: f64,
    xi: f64,
    branch: Branch,
) -> Result<BranchPoint> {
    let _ = (a, b);
    let k = constants(p)?;
    Ok(BranchPoint {
        lambda,
        xi,
        branch,
        grad_norm: (2.0 * k.a_p * k.b_p).sqrt() * xi,
    })
}

/// Inverts a strictly monotone stretch of the curve by bracketed Newton
/// iteration; `seed` must lie inside the stretch.
fn invert_monotone(a: f64, b: f64, p: f64, lambda: f64, lo0: f64, hi0: f64) -> Result<f64> {
    let f = |xi: f64| lambda_of_xi(a, b, p, xi).unwrap_or(f64::NAN) - lambda;
    let df = |xi: f64| dlambda_dxi(a, b, p, xi).unwrap_or(f64::NAN);
    solve_bracketed_newton(f, df, lo0, hi0, INVERT_TOL)
}

/// Every ξ with λ(ξ) = λ, tagged by branch. An empty list is the valid
/// "no solutions exist" answer, not an error.
pub fn xi_of_lambda(a: f64, b: f64, p: f64, lambda: f64) -> Result<Vec<BranchPoint>> {
    check_positive("a", a)?;
    check_positive("b", b)?;
    check_positive("lambda", lambda)?;
    check_exponent(p)?;

    if p == 1.0 {
        let pi2 = std::f64::consts::PI * std::f64::consts::PI;
        let thresh = pi2 / 4.0 * b;
        if lambda <= thresh {
            return Ok(vec![]);
        }
        let xi = 4.0 / pi2 * ((lambda - thresh) / a).sqrt();
        return Ok(vec![branch_point(a, b, p, lambda, xi, Branch::Unique)?]);
    }

    if p == 3.0 {
        let k = constants(3.0)?;
        let lambda_min = 4.0 * a * k.a_p.powi(3) * k.b_p;
        if lambda <= lambda_min {
            return Ok(vec![]);
        }
        let xi = (2.0 * k.a_p * k.a_p * b / (lambda - lambda_min)).sqrt();
        return Ok(vec![branch_point(a, b, p, lambda, xi, Branch::Unique)?]);
    }

    if p == 2.0 {
        // Closed forms: sqrt(t) solves the quadratic a s² - (λ/Q₂) s + b = 0
        // and ξ = s Q₁ / Q₂.
        let k = constants(2.0)?;
        let q1 = 1.5 * k.a_p * k.a_p;
        let q2 = profile::grad_norm(2.0)?;
        let r = lambda / q2;
        let disc = r * r - 4.0 * a * b;
        if disc.abs() <= THRESHOLD_BAND * r * r {
            let xi = (b / a).sqrt() * q1 / q2;
            return Ok(vec![branch_point(a, b, p, lambda, xi, Branch::Unique)?]);
        }
        if disc < 0.0 {
            return Ok(vec![]);
        }
        let root = disc.sqrt();
        let s1 = (r + root) / (2.0 * a);
        let s2 = (r - root) / (2.0 * a);
        return Ok(vec![
            branch_point(a, b, p, lambda, s2 * q1 / q2, Branch::Lower)?,
            branch_point(a, b, p, lambda, s1 * q1 / q2, Branch::Upper)?,
        ]);
    }

    if p < 1.0 || p > 3.0 {
        // strictly monotone curve: a single branch for every λ > 0
        let f = |xi: f64| lambda_of_xi(a, b, p, xi).unwrap_or(f64::NAN) - lambda;
        let (lo, hi) = expand_bracket(f, 1.0, 2.0)?;
        let xi = if lo == hi {
            lo
        } else {
            invert_monotone(a, b, p, lambda, lo, hi)?
        };
        return Ok(vec![branch_point(a, b, p, lambda, xi, Branch::Unique)?]);
    }

    // general subcritical band: split at the interior minimum
    let xi_min = curve_minimum_xi(a, b, p)?;
    let lambda_min = lambda_of_xi(a, b, p, xi_min)?;
    if (lambda - lambda_min).abs() <= THRESHOLD_BAND * lambda_min {
        return Ok(vec![branch_point(a, b, p, lambda, xi_min, Branch::Unique)?]);
    }
    if lambda < lambda_min {
        return Ok(vec![]);
    }
    let mut lo = xi_min;
    for _ in 0..200 {
        lo *= 0.5;
        if !lo.is_normal() {
            return Err(Error::numeric("left branch inversion ran out of f64 range"));
        }
        if lambda_of_xi(a, b, p, lo)? > lambda {
            break;
        }
    }
    let xi_lower = invert_monotone(a, b, p, lambda, lo, xi_min)?;
    let mut hi = xi_min;
    for _ in 0..200 {
        hi *= 2.0;
        if !hi.is_finite() {
            return Err(Error::numeric(
                "right branch inversion ran out of f64 range",
            ));
        }
        if lambda_of_xi(a, b, p, hi)? > lambda {
            break;
        }
    }
    let xi_upper = invert_monotone(a, b, p, lambda, xi_min, hi)?;
    Ok(vec![
        branch_point(a, b, p, lambda, xi_lower, Branch::Lower)?,
        branch_point(a, b, p, lambda, xi_upper, Branch::Upper)?,
    ])
}

/// Human-readable existence threshold for error messages.
fn existence_note(a: f64, b: f64, p: f64) -> String {
    if p == 1.0 {
        let t = std::f64::consts::PI.powi(2) / 4.0 * b;
        format!("requires lambda > pi^2 b / 4 = {t}")
    } else if p == 3.0 {
        let k = constants(3.0).expect("p=3 constants");
        format!(
            "requires lambda > 4 a A_3^3 B_3 = {}",
            4.0 * a * k.a_p.powi(3) * k.b_p
        )
    } else if p > 1.0 && p < 3.0 {
        let xi_min = curve_minimum_xi(a, b, p).expect("subcritical band");
        match lambda_of_xi(a, b, p, xi_min) {
            Ok(lm) => format!("requires lambda >= min of the curve = {lm}"),
            Err(_) => "requires lambda at or above the curve minimum".to_string(),
        }
    } else {
        "a branch exists for every lambda > 0 in this regime".to_string()
    }
}

/// The exact solution profile u_λ on n nodes for a chosen branch:
/// `u_λ = (ξ/η) W_p` for p ≠ 1 and the explicit cosine for p = 1.
pub fn solution_profile(
    a: f64,
    b: f64,
    p: f64,
    lambda: f64,
    branch: Branch,
    n: usize,
) -> Result<ProfileGrid> {
    let branches = xi_of_lambda(a, b, p, lambda)?;
    let Some(point) = branches.iter().find(|bp| bp.branch == branch) else {
        let available: Vec<String> = branches.iter().map(|bp| bp.branch.to_string()).collect();
        return Err(Error::regime(if branches.is_empty() {
            format!(
                "no solution branch exists at lambda = {lambda}: {}",
                existence_note(a, b, p)
            )
        } else {
            format!(
                "branch '{branch}' does not exist at lambda = {lambda}; available: {}",
                available.join(", ")
            )
        }));
    };

    if p == 1.0 {
        if n < 3 || n % 2 == 0 {
            return Err(Error::domain(format!(
                "grid size must be odd and >= 3, got {n}"
            )));
        }
        let xi = point.xi;
        let h = 2.0 / (n - 1) as f64;
        let half = (n - 1) / 2;
        let mut xs = vec![0.0; n];
        let mut values = vec![0.0; n];
        for i in 0..=half {
            let x = -1.0 + i as f64 * h;
            xs[i] = x;
            xs[n - 1 - i] = -x;
            let v = xi * (std::f64::consts::FRAC_PI_2 * x).cos();
            values[i] = v;
            values[n - 1 - i] = v;
        }
        xs[half] = 0.0;
        values[0] = 0.0;
        values[n - 1] = 0.0;
        values[half] = xi;
        return Ok(ProfileGrid {
            p,
            xs,
            values,
            max_value: xi,
            grad_norm: point.grad_norm,
        });
    }

    let base = profile::sample(p, n)?;
    let scale = point.xi / base.max_value;
    Ok(ProfileGrid {
        p,
        xs: base.xs,
        values: base.values.iter().map(|v| v * scale).collect(),
        max_value: scale * base.max_value,
        grad_norm: scale * base.grad_norm,
    })
}

/// Log-spaced sweep of the curve over [xi_lo, xi_hi] with the regime's
/// monotonicity classification.
pub fn curve_sweep(a: f64, b: f64, p: f64, xi_lo: f64, xi_hi: f64, n: usize) -> Result<CurveSweep> {
    check_positive("a", a)?;
    check_positive("b", b)?;
    check_exponent(p)?;
    if !(xi_lo.is_finite() && xi_hi.is_finite()) || xi_lo <= 0.0 || xi_hi <= xi_lo {
        return Err(Error::domain(format!(
            "sweep range requires 0 < xi_lo < xi_hi, got [{xi_lo}, {xi_hi}]"
        )));
    }
    if n < 2 {
        return Err(Error::domain(format!(
            "sweep needs n >= 2 samples, got {n}"
        )));
    }
    let ratio = xi_hi / xi_lo;
    let mut points = Vec::with_capacity(n);
    for i in 0..n {
        let xi = xi_lo * ratio.powf(i as f64 / (n - 1) as f64);
        let lambda = lambda_of_xi(a, b, p, xi)?;
        points.push(branch_point(a, b, p, lambda, xi, Branch::Unique)?);
    }
    Ok(CurveSweep {
        points,
        monotonicity: Monotonicity::of(p),
    })
}
