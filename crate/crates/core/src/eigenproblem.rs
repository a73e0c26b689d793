//! First eigenpair of the nonlocal eigenproblem
//!
//! ```text
//! -‖u'‖^{p-1} u''(x) = μ u(x)^p,  u > 0 on (-1,1),  u(±1) = 0,   p > 1,
//! ```
//!
//! where μ₁ is the infimum of ‖u'‖^{p+1} over H¹₀ functions normalized by
//! ∫ u^{p+1} = 1. The time map yields the closed forms
//!
//! ```text
//! μ₁ = 2^{(p-3)/2} (p+1) A_p^{(p+3)/2} B_p^{(p-1)/2},
//! ζ  = φ₁(0) = (A_p / (2 C_p))^{1/(p+1)},
//! φ₁ = ν W_p,   ν = 2^{2/(p²-1)} (p+1)^{-1/(p-1)} A_p^{-(p+3)/(p²-1)} C_p^{-1/(p+1)},
//! ```
//!
//! with ‖φ₁'‖ = √(2 A_p B_p) ζ and ‖φ₁'‖^{p+1} = μ₁ exactly.

use crate::error::{check_exponent, Error, Result};
use crate::profile;
use crate::quad::simpson_uniform;
use crate::special_integrals::constants;

/// The first eigenvalue with the scalars of its eigenfunction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenPair {
    pub p: f64,
    pub mu1: f64,
    /// ζ = φ₁(0).
    pub zeta: f64,
    /// Scaling factor relating φ₁ = ν W_p.
    pub nu: f64,
    /// ‖φ₁'‖.
    pub phi_grad_norm: f64,
}

fn check_eigen_exponent(p: f64) -> Result<()> {
    check_exponent(p)?;
    if p <= 1.0 {
        return Err(Error::regime(format!(
            "the nonlocal eigenproblem requires p > 1, got p = {p}"
        )));
    }
    Ok(())
}

/// μ₁ = 2^{(p-3)/2} (p+1) A_p^{(p+3)/2} B_p^{(p-1)/2}.
pub fn mu1(p: f64) -> Result<f64> {
    check_eigen_exponent(p)?;
    let k = constants(p)?;
    Ok(2f64.powf((p - 3.0) / 2.0)
        * (p + 1.0)
        * k.a_p.powf((p + 3.0) / 2.0)
        * k.b_p.powf((p - 1.0) / 2.0))
}

/// ζ = φ₁(0) = (A_p / (2 C_p))^{1/(p+1)}.
pub fn zeta(p: f64) -> Result<f64> {
    check_eigen_exponent(p)?;
    let k = constants(p)?;
    Ok((k.a_p / (2.0 * k.c_p)).powf(1.0 / (p + 1.0)))
}

/// ν with φ₁ = ν W_p.
pub fn scaling_factor(p: f64) -> Result<f64> {
    check_eigen_exponent(p)?;
    let k = constants(p)?;
    let p2m1 = p * p - 1.0;
    Ok(2f64.powf(2.0 / p2m1)
        * (p + 1.0).powf(-1.0 / (p - 1.0))
        * k.a_p.powf(-(p + 3.0) / p2m1)
        * k.c_p.powf(-1.0 / (p + 1.0)))
}

/// φ₁(x) = ν W_p(x).
pub fn phi1(p: f64, x: f64) -> Result<f64> {
    check_eigen_exponent(p)?;
    Ok(scaling_factor(p)? * profile::evaluate(p, x)?)
}

/// Bundles μ₁, ζ, ν and ‖φ₁'‖.
pub fn eigen_pair(p: f64) -> Result<EigenPair> {
    let k = constants(p)?;
    check_eigen_exponent(p)?;
    let z = zeta(p)?;
    Ok(EigenPair {
        p,
        mu1: mu1(p)?,
        zeta: z,
        nu: scaling_factor(p)?,
        phi_grad_norm: (2.0 * k.a_p * k.b_p).sqrt() * z,
    })
}

/// ∫_I φ₁^{p+1} dx by composite Simpson on n uniform nodes (n odd).
/// Exactly 1 up to quadrature error; the integrand vanishes at the
/// boundary so no singularity handling is needed.
pub fn phi1_norm_integral(p: f64, n: usize) -> Result<f64> {
    check_eigen_exponent(p)?;
    if n < 3 || n % 2 == 0 {
        return Err(Error::domain(format!(
            "Simpson needs an odd node count >= 3, got {n}"
        )));
    }
    let nu = scaling_factor(p)?;
    let grid = profile::sample(p, n)?;
    let h = 2.0 / (n - 1) as f64;
    let vals: Vec<f64> = grid.values.iter().map(|w| (nu * w).powf(p + 1.0)).collect();
    Ok(simpson_uniform(&vals, h))
}
