//! The normalized profile W_p: the unique positive solution of
//!
//! ```text
//! -W''(x) = W(x)^p  on (-1, 1),  W(±1) = 0,  W > 0,
//! ```
//!
//! defined for `p > 0`, `p ≠ 1`. The conserved energy of the autonomous
//! equation gives the velocity law `W' = √(2/(p+1)) √(η^{p+1} - W^{p+1})`
//! on [-1, 0], and integrating it over the half-domain forces the sup-norm
//!
//! ```text
//! η_p = [√((p+1)/2) · A_p]^{2/(p-1)},    ‖W_p'‖ = √(2 A_p B_p) · η_p.
//! ```
//!
//! Pointwise values come from inverting the incomplete time map. Under the
//! same substitution used for the closed constants, the condition on
//! `w = W(x)` at `x ∈ [-1, 0]` reduces to `S(φ_w) = (1+x) A_p` with
//! `S(φ) = (2/(p+1)) ∫₀^φ sin^q ϑ dϑ`, `q = (1-p)/(p+1)`, and
//! `w = η (sin φ_w)^{2/(p+1)}` — one fixed monotone function per `p`,
//! tabulated once on a graded mesh and inverted by bracketed root-finding.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use once_cell::sync::Lazy;

use crate::error::{check_exponent, Error, Result};
use crate::quad::{gl32, sin_pow_tail, KahanSum};
use crate::roots::solve_bracketed_newton;
use crate::special_integrals::constants;

/// Sampled profile on [-1, 1] with its derived scalars.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileGrid {
    /// Exponent of the problem that produced the grid.
    pub p: f64,
    /// Ordered sample abscissae in [-1, 1].
    pub xs: Vec<f64>,
    /// Nonnegative profile samples; zero at x = ±1.
    pub values: Vec<f64>,
    /// Sup-norm, attained at x = 0.
    pub max_value: f64,
    /// L²-norm of the derivative.
    pub grad_norm: f64,
}

/// The two scalars of W_p used throughout the closed forms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileScalars {
    pub p: f64,
    /// η_p = W_p(0).
    pub eta: f64,
    /// ‖W_p'‖ = √(2 A_p B_p) η_p.
    pub grad_norm: f64,
}

/// Tabulated incomplete time map for one value of p.
struct TimeMap {
    p: f64,
    q: f64,
    prefactor: f64,
    eta: f64,
    /// Panel boundaries 0 = φ₀ < … < φ_N = π/2, cubically graded toward 0.
    phi: Vec<f64>,
    /// Cumulative S(φ_j); s[N] is A_p as seen by this table.
    s: Vec<f64>,
}

const TABLE_PANELS: usize = 256;
const PHI_TOL: f64 = 1e-15;

fn check_profile_exponent(p: f64) -> Result<()> {
    check_exponent(p)?;
    if p == 1.0 {
        return Err(Error::regime(
            "profile W_p is undefined at p = 1; the p = 1 case is handled by the explicit cosine solution",
        ));
    }
    Ok(())
}

impl TimeMap {
    fn build(p: f64) -> Result<Self> {
        let k = constants(p)?;
        let e = eta_from_a(p, k.a_p)?;
        let q = (1.0 - p) / (p + 1.0);
        let prefactor = 2.0 / (p + 1.0);
        let half_pi = std::f64::consts::FRAC_PI_2;

        let mut phi = Vec::with_capacity(TABLE_PANELS + 1);
        for j in 0..=TABLE_PANELS {
            let r = j as f64 / TABLE_PANELS as f64;
            phi.push(half_pi * r * r * r);
        }
        let f = |t: f64| t.sin().powf(q);
        let mut s = Vec::with_capacity(TABLE_PANELS + 1);
        let mut acc = KahanSum::default();
        s.push(0.0);
        acc.add(prefactor * sin_pow_tail(phi[1], q));
        s.push(acc.value());
        for j in 2..=TABLE_PANELS {
            acc.add(prefactor * gl32(&f, phi[j - 1], phi[j]));
            s.push(acc.value());
        }
        for j in 1..=TABLE_PANELS {
            if !(s[j] > s[j - 1]) {
                return Err(Error::numeric(format!(
                    "time-map table lost monotonicity at p={p}, panel {j}"
                )));
            }
        }
        Ok(TimeMap {
            p,
            q,
            prefactor,
            eta: e,
            phi,
            s,
        })
    }

    /// S(φ) through the table: cumulative value at the panel boundary below
    /// φ plus one Gauss–Legendre increment.
    fn s_at(&self, phi: f64) -> f64 {
        if phi <= 0.0 {
            return 0.0;
        }
        let n = TABLE_PANELS;
        if phi >= self.phi[n] {
            return self.s[n];
        }
        let j = self.phi.partition_point(|&b| b < phi);
        // phi lies in (phi[j-1], phi[j]]
        if j <= 1 {
            return self.prefactor * sin_pow_tail(phi, self.q);
        }
        let f = |t: f64| t.sin().powf(self.q);
        self.s[j - 1] + self.prefactor * gl32(&f, self.phi[j - 1], phi)
    }

    /// Inverts S on [0, π/2]: the unique φ with S(φ) = y, 0 ≤ y ≤ s_N.
    fn invert(&self, y: f64) -> Result<f64> {
        let n = TABLE_PANELS;
        if y <= 0.0 {
            return Ok(0.0);
        }
        if y >= self.s[n] {
            return Ok(self.phi[n]);
        }
        let j = self.s.partition_point(|&v| v < y);
        let (lo, hi) = (self.phi[j - 1], self.phi[j]);
        let df = |t: f64| self.prefactor * t.sin().powf(self.q);
        if j == 1 {
            // series panel next to φ = 0
            let g = |t: f64| self.prefactor * sin_pow_tail(t, self.q) - y;
            return solve_bracketed_newton(g, df, lo, hi, PHI_TOL).map_err(|e| {
                Error::numeric(format!(
                    "time-map inversion failed in the series panel: {e}"
                ))
            });
        }
        let base = self.s[j - 1];
        let f = |t: f64| t.sin().powf(self.q);
        let g = |t: f64| base + self.prefactor * gl32(&f, lo, t) - y;
        solve_bracketed_newton(g, df, lo, hi, PHI_TOL).map_err(|e| {
            Error::numeric(format!(
                "time-map inversion failed on panel [{lo}, {hi}] at p={}: {e}",
                self.p
            ))
        })
    }

    fn value_at(&self, phi: f64) -> f64 {
        self.eta * phi.sin().powf(2.0 / (self.p + 1.0))
    }
}

static TABLE_CACHE: Lazy<RwLock<HashMap<u64, Arc<TimeMap>>>> =
    Lazy::new(|| RwLock::new(HashMap::new()));

fn timemap(p: f64) -> Result<Arc<TimeMap>> {
    check_profile_exponent(p)?;
    let key = p.to_bits();
    if let Some(hit) = TABLE_CACHE
        .read()
        .expect("time-map cache poisoned")
        .get(&key)
    {
        return Ok(hit.clone());
    }
    let tm = Arc::new(TimeMap::build(p)?);
    TABLE_CACHE
        .write()
        .expect("time-map cache poisoned")
        .insert(key, tm.clone());
    Ok(tm)
}

fn eta_from_a(p: f64, a_p: f64) -> Result<f64> {
    let e = (((p + 1.0) / 2.0).sqrt() * a_p).powf(2.0 / (p - 1.0));
    if !e.is_finite() || e <= 0.0 {
        return Err(Error::numeric(format!(
            "eta overflows the f64 range at p = {p} (exponent 2/(p-1) too large)"
        )));
    }
    Ok(e)
}

/// η_p = W_p(0) = [√((p+1)/2) A_p]^{2/(p-1)}, the unique sup-norm forced by
/// the time map on the unit half-domain.
pub fn eta(p: f64) -> Result<f64> {
    check_profile_exponent(p)?;
    eta_from_a(p, constants(p)?.a_p)
}

/// ‖W_p'‖ = √(2 A_p B_p) · η_p.
pub fn grad_norm(p: f64) -> Result<f64> {
    let k = constants(p)?;
    check_profile_exponent(p)?;
    let e = eta_from_a(p, k.a_p)?;
    Ok((2.0 * k.a_p * k.b_p).sqrt() * e)
}

/// Bundles η_p and ‖W_p'‖.
pub fn scalars(p: f64) -> Result<ProfileScalars> {
    Ok(ProfileScalars {
        p,
        eta: eta(p)?,
        grad_norm: grad_norm(p)?,
    })
}

/// W_p(x) for |x| ≤ 1, by inverting the incomplete time map on the
/// monotone half-domain and reflecting evenly.
pub fn evaluate(p: f64, x: f64) -> Result<f64> {
    if !x.is_finite() || x.abs() > 1.0 {
        return Err(Error::domain(format!(
            "abscissa must satisfy |x| <= 1, got {x}"
        )));
    }
    let tm = timemap(p)?;
    let rho = 1.0 - x.abs();
    if rho == 0.0 {
        return Ok(0.0);
    }
    if rho == 1.0 {
        return Ok(tm.eta);
    }
    let phi = tm.invert(rho * tm.s[TABLE_PANELS])?;
    Ok(tm.value_at(phi))
}

/// Maps a profile value w ∈ [0, η] back to the abscissa x ∈ [-1, 0] with
/// W_p(x) = w, i.e. evaluates the incomplete time-map integral at w.
pub fn time_map_position(p: f64, w: f64) -> Result<f64> {
    let tm = timemap(p)?;
    if !(0.0..=tm.eta * (1.0 + 1e-12)).contains(&w) {
        return Err(Error::domain(format!(
            "profile value must lie in [0, eta] = [0, {}], got {w}",
            tm.eta
        )));
    }
    let z = (w / tm.eta).min(1.0).powf((p + 1.0) / 2.0);
    let phi = z.asin();
    Ok(tm.s_at(phi) / tm.s[TABLE_PANELS] - 1.0)
}

/// Samples W_p on a uniform grid of odd size n (so that x = 0 is a node),
/// mirroring the left half for bit-exact even symmetry.
pub fn sample(p: f64, n: usize) -> Result<ProfileGrid> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::domain(format!(
            "grid size must be odd and >= 3 so that x = 0 is a node, got {n}"
        )));
    }
    let tm = timemap(p)?;
    let h = 2.0 / (n - 1) as f64;
    let half = (n - 1) / 2;
    let mut xs = vec![0.0; n];
    let mut values = vec![0.0; n];
    for i in 0..=half {
        let x = -1.0 + i as f64 * h;
        xs[i] = x;
        xs[n - 1 - i] = -x;
        let v = if i == 0 {
            0.0
        } else if i == half {
            tm.eta
        } else {
            let phi = tm.invert((1.0 + x) * tm.s[TABLE_PANELS])?;
            tm.value_at(phi)
        };
        values[i] = v;
        values[n - 1 - i] = v;
    }
    xs[half] = 0.0;
    let grad = (2.0 * constants(p)?.a_p * constants(p)?.b_p).sqrt() * tm.eta;
    Ok(ProfileGrid {
        p,
        xs,
        values,
        max_value: tm.eta,
        grad_norm: grad,
    })
}
