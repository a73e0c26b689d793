use thiserror::Error;

/// Error taxonomy shared by every module.
///
/// `Domain` flags inputs outside an operation's preconditions, `Regime`
/// flags parameter ranges where a formula is not defined (e.g. the profile
/// equation at `p = 1`), and `Numeric` flags solver non-convergence.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("regime error: {0}")]
    Regime(String),
    #[error("numeric error: {0}")]
    Numeric(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn regime(msg: impl Into<String>) -> Self {
        Error::Regime(msg.into())
    }

    pub fn numeric(msg: impl Into<String>) -> Self {
        Error::Numeric(msg.into())
    }
}

/// Rejects non-finite or non-positive values of the exponent `p`.
pub(crate) fn check_exponent(p: f64) -> Result<()> {
    if !p.is_finite() || p <= 0.0 {
        return Err(Error::domain(format!(
            "exponent p must be finite and > 0, got {p}"
        )));
    }
    Ok(())
}

/// Rejects a non-finite or non-positive named scalar.
pub(crate) fn check_positive(name: &str, v: f64) -> Result<()> {
    if !v.is_finite() || v <= 0.0 {
        return Err(Error::domain(format!(
            "{name} must be finite and > 0, got {v}"
        )));
    }
    Ok(())
}
