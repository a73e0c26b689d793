//! Closed-form bifurcation analysis of the one-dimensional Kirchhoff-type
//! equation
//!
//! ```text
//! -(b + a‖u'‖²) u''(x) = λ u(x)ᵖ,   x ∈ (-1, 1),
//!  u > 0 on (-1, 1),  u(±1) = 0,
//! ```
//!
//! with `a, b, λ > 0`, `p > 0` and `‖u'‖² = ∫ u'² dx`. The library computes
//! the singular time-map integrals A_p, B_p, C_p, the normalized profile
//! W_p, the exact bifurcation curves λ(ξ) with their branch inversions and
//! solution counts, and the first eigenpair of the associated nonlocal
//! eigenproblem — and re-derives every closed form through independent
//! numerical oracles (finite-difference residuals, a shooting integrator,
//! brute-force sign scans, Rayleigh-quotient sampling).
//!
//! ```
//! use kirchhoff1d::{bifurcation, special_integrals};
//!
//! // A_1 is the arcsine integral pi/2
//! let k = special_integrals::constants(1.0)?;
//! assert!((k.a_p - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
//!
//! // every lambda above the p = 3 threshold carries exactly one branch
//! let branches = bifurcation::xi_of_lambda(1.0, 1.0, 3.0, 12.0)?;
//! assert_eq!(branches.len(), 1);
//! # Ok::<(), kirchhoff1d::Error>(())
//! ```

pub mod bifurcation;
pub mod cli;
pub mod eigenproblem;
mod error;
pub mod output;
pub mod profile;
mod quad;
mod roots;
pub mod scalar_reduction;
pub mod special_integrals;
pub mod verify;

pub use bifurcation::{Branch, BranchPoint, CurveSweep, Monotonicity, ProblemParams};
pub use eigenproblem::EigenPair;
pub use error::{Error, Result};
pub use profile::{ProfileGrid, ProfileScalars};
pub use scalar_reduction::{CountRule, Multiplicity, ReductionRoots, Regime, SolutionCount};
pub use special_integrals::TimeMapConstants;
pub use verify::{ResidualReport, SignScan};
