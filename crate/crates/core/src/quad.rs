//! Internal quadrature primitives: fixed Gauss–Legendre rules, composite
//! Simpson and trapezoid sums. Not part of the public surface.

use once_cell::sync::Lazy;

/// Gauss–Legendre nodes and weights on [-1, 1], computed by Newton
/// iteration on the Legendre recurrence (accurate to ~1 ulp).
fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for k in 0..n {
        // Tricomi-style initial guess, then Newton.
        let mut x = (std::f64::consts::PI * (k as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let mut p0 = 1.0;
            let mut p1 = x;
            for j in 2..=n {
                let jf = j as f64;
                let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() <= 1e-16 * x.abs().max(1e-3) {
                break;
            }
        }
        nodes[k] = x;
        weights[k] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    nodes.reverse();
    weights.reverse();
    (nodes, weights)
}

static GL32: Lazy<(Vec<f64>, Vec<f64>)> = Lazy::new(|| gauss_legendre(32));
static GL16: Lazy<(Vec<f64>, Vec<f64>)> = Lazy::new(|| gauss_legendre(16));

/// 32-point Gauss–Legendre on [a, b].
pub(crate) fn gl32<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let (xs, ws) = &*GL32;
    let c = 0.5 * (b - a);
    let m = 0.5 * (a + b);
    let mut sum = 0.0;
    for (x, w) in xs.iter().zip(ws.iter()) {
        sum += w * f(m + c * x);
    }
    c * sum
}

/// 16-point Gauss–Legendre on [a, b]; paired with [`gl32`] for error estimates.
pub(crate) fn gl16<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let (xs, ws) = &*GL16;
    let c = 0.5 * (b - a);
    let m = 0.5 * (a + b);
    let mut sum = 0.0;
    for (x, w) in xs.iter().zip(ws.iter()) {
        sum += w * f(m + c * x);
    }
    c * sum
}

/// Composite Simpson over tabulated samples on a uniform grid.
/// Requires an odd sample count.
pub(crate) fn simpson_uniform(values: &[f64], h: f64) -> f64 {
    let n = values.len();
    assert!(n >= 3 && n % 2 == 1, "simpson needs an odd sample count");
    let mut sum = values[0] + values[n - 1];
    for (i, v) in values.iter().enumerate().take(n - 1).skip(1) {
        sum += if i % 2 == 1 { 4.0 * v } else { 2.0 * v };
    }
    sum * h / 3.0
}

/// Composite trapezoid over tabulated samples on a uniform grid.
pub(crate) fn trapezoid_uniform(values: &[f64], h: f64) -> f64 {
    let n = values.len();
    assert!(n >= 2);
    let mut sum = 0.5 * (values[0] + values[n - 1]);
    for v in &values[1..n - 1] {
        sum += v;
    }
    sum * h
}

/// Series for ∫₀^ε sin^q θ dθ, valid for small ε (relative error O(ε⁶)).
pub(crate) fn sin_pow_tail(eps: f64, q: f64) -> f64 {
    if eps <= 0.0 {
        return 0.0;
    }
    let e2 = eps * eps;
    let c0 = 1.0 / (q + 1.0);
    let c1 = -(q / 6.0) / (q + 3.0);
    let c2 = (q / 120.0 + q * (q - 1.0) / 72.0) / (q + 5.0);
    eps.powf(q + 1.0) * (c0 + e2 * (c1 + e2 * c2))
}

/// Kahan-compensated accumulator for long panel sums.
#[derive(Default, Clone, Copy)]
pub(crate) struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn add(&mut self, v: f64) {
        let y = v - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl32_exact_on_polynomials() {
        // degree 63 is integrated exactly by the 32-point rule
        let f = |x: f64| x.powi(8) - 3.0 * x.powi(5) + x;
        let got = gl32(&f, 0.0, 2.0);
        let exact = 2f64.powi(9) / 9.0 - 3.0 * 2f64.powi(6) / 6.0 + 2.0;
        assert!((got - exact).abs() <= 1e-13 * exact.abs());
    }

    #[test]
    fn gl_pair_agrees_on_smooth_integrand() {
        let f = |x: f64| (2.5 * x).sin().exp();
        let hi = gl32(&f, 0.0, 1.0);
        let lo = gl16(&f, 0.0, 1.0);
        assert!((hi - lo).abs() <= 1e-12 * hi.abs());
    }

    #[test]
    fn simpson_integrates_cubics_exactly() {
        let n = 11;
        let h = 1.0 / (n as f64 - 1.0);
        let values: Vec<f64> = (0..n)
            .map(|i| {
                let x = i as f64 * h;
                x * x * x - x
            })
            .collect();
        let got = simpson_uniform(&values, h);
        assert!((got - (0.25 - 0.5)).abs() < 1e-15);
    }

    #[test]
    fn trapezoid_linear_exact() {
        let values = [0.0, 0.5, 1.0, 1.5];
        assert!((trapezoid_uniform(&values, 0.5) - 1.125).abs() < 1e-15);
    }
}
