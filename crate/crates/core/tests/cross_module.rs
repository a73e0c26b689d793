//! Cross-module invariants: agreement between closed forms, the scalar
//! reduction, the branch inversions, and the independent oracles.

mod common;

use common::{a_ref, b_ref, c_ref, rel, tanh_sinh};
use kirchhoff1d::bifurcation::{self, Branch};
use kirchhoff1d::eigenproblem;
use kirchhoff1d::profile;
use kirchhoff1d::scalar_reduction::{self, Regime};
use kirchhoff1d::special_integrals::{compute_a, compute_b, compute_c, constants};
use kirchhoff1d::verify;
use kirchhoff1d::ProblemParams;

#[test]
fn integrals_match_the_tanh_sinh_reference() {
    // independent quadrature of the original s-space integrands
    for p in [0.05, 0.5, 2.0, 5.0, 20.0] {
        let q = p + 1.0;
        let a = tanh_sinh(
            |_, _, d_hi| {
                let one_minus = -((q * (-d_hi).ln_1p()).exp_m1());
                1.0 / one_minus.sqrt()
            },
            0.0,
            1.0,
            1e-13,
        );
        assert!(rel(compute_a(p).unwrap(), a) < 1e-11, "A at p={p}: {a}");
        let b = tanh_sinh(
            |_, _, d_hi| (-((q * (-d_hi).ln_1p()).exp_m1())).sqrt(),
            0.0,
            1.0,
            1e-13,
        );
        assert!(rel(compute_b(p).unwrap(), b) < 1e-11, "B at p={p}");
        let c = tanh_sinh(
            |x, _, d_hi| {
                let one_minus = -((q * (-d_hi).ln_1p()).exp_m1());
                x.powf(q) / one_minus.sqrt()
            },
            0.0,
            1.0,
            1e-13,
        );
        assert!(rel(compute_c(p).unwrap(), c) < 1e-11, "C at p={p}");
    }
}

#[test]
fn integrals_match_the_beta_oracle_on_a_log_grid() {
    for i in 0..25 {
        let p = 0.05 * (20.0f64 / 0.05).powf(i as f64 / 24.0);
        let k = constants(p).unwrap();
        assert!(rel(k.a_p, a_ref(p)) < 1e-12, "A at p={p}");
        assert!(rel(k.b_p, b_ref(p)) < 1e-12, "B at p={p}");
        assert!(rel(k.c_p, c_ref(p)) < 1e-12, "C at p={p}");
        // the (conservative) estimate bounds the true error and stays small
        assert!(
            (k.a_p - a_ref(p)).abs() <= k.est_error,
            "estimate soundness at p={p}"
        );
        assert!(k.est_error < 1e-9 * k.a_p, "error estimate at p={p}");
    }
}

#[test]
fn eta_satisfies_the_time_map_integral() {
    // ∫₀^η dθ/√(η^{p+1} - θ^{p+1}) = √(2/(p+1)), by independent quadrature
    for p in [0.5, 2.0, 3.0, 5.0] {
        let eta = profile::eta(p).unwrap();
        let q = p + 1.0;
        let hp = eta.powf(q);
        let integral = tanh_sinh(
            |theta, _, d_hi| {
                // η^{p+1} - θ^{p+1} without cancellation as θ -> η
                let ratio_ln = (-d_hi / eta).ln_1p();
                let diff = -hp * (q * ratio_ln).exp_m1();
                if diff <= 0.0 {
                    return 0.0;
                }
                let _ = theta;
                1.0 / diff.sqrt()
            },
            0.0,
            eta,
            1e-12,
        );
        let expect = (2.0 / q).sqrt();
        assert!(
            rel(integral, expect) < 1e-9,
            "time map at p={p}: {integral} vs {expect}"
        );
    }
}

#[test]
fn branch_points_match_scalar_reduction_roots() {
    // {ξ} from the curve inversion equals {√t · η / ‖W'‖} from g's roots
    let sets = [
        (1.0, 1.0, 0.5, 1.0),
        (1.0, 1.0, 0.5, 20.0),
        (2.0, 0.5, 2.0, 14.0),
        (1.0, 1.0, 2.5, 9.0),
        (0.3, 2.0, 2.8, 21.0),
        (1.0, 1.0, 5.0, 10.0),
        (0.5, 3.0, 7.0, 4.0),
    ];
    for (a, b, p, lambda) in sets {
        let params = ProblemParams::new(a, b, p, lambda).unwrap();
        let branches = bifurcation::xi_of_lambda(a, b, p, lambda).unwrap();
        let roots = scalar_reduction::solve_roots(&params).unwrap();
        assert_eq!(
            branches.len(),
            roots.roots.len(),
            "count at p={p}, lambda={lambda}"
        );
        let eta = profile::eta(p).unwrap();
        let w = profile::grad_norm(p).unwrap();
        for (bp, &t) in branches.iter().zip(roots.roots.iter()) {
            let xi_from_t = t.sqrt() * eta / w;
            assert!(
                rel(bp.xi, xi_from_t) < 1e-9,
                "xi mismatch at p={p}, lambda={lambda}: {} vs {xi_from_t}",
                bp.xi
            );
            // λ(ξ) roundtrip
            let back = bifurcation::lambda_of_xi(a, b, p, bp.xi).unwrap();
            assert!(rel(back, lambda) < 1e-9, "roundtrip at p={p}");
            // grad_norm invariant ‖u'‖² = 2 A B ξ²
            let k = constants(p).unwrap();
            assert!(
                rel(
                    bp.grad_norm * bp.grad_norm,
                    2.0 * k.a_p * k.b_p * bp.xi * bp.xi
                ) < 1e-10
            );
        }
    }
}

#[test]
fn sign_scan_agrees_with_solve_roots_everywhere_tested() {
    let sets = [
        (1.0, 1.0, 0.5, 0.2),
        (1.0, 1.0, 0.5, 5.0),
        (2.0, 0.5, 2.0, 5.0),
        (2.0, 0.5, 2.0, 14.0),
        (1.0, 1.0, 2.5, 6.0),
        (1.0, 1.0, 2.5, 9.0),
        (1.0, 1.0, 3.0, 6.0),
        (1.0, 1.0, 3.0, 12.0),
        (1.0, 1.0, 5.0, 10.0),
        (0.5, 3.0, 7.0, 4.0),
    ];
    for (a, b, p, lambda) in sets {
        let params = ProblemParams::new(a, b, p, lambda).unwrap();
        let roots = scalar_reduction::solve_roots(&params).unwrap();
        let scan = verify::sign_scan_roots(&params, 1e-12, 1e12, 4001).unwrap();
        assert_eq!(
            scan.count,
            roots.roots.len(),
            "scan disagreement at p={p}, lambda={lambda}"
        );
        // each polished root sits inside one scan bracket
        for &t in &roots.roots {
            assert!(
                scan.brackets.iter().any(|&(lo, hi)| lo <= t && t <= hi),
                "root {t} outside scan brackets at p={p}"
            );
        }
    }
}

#[test]
fn shooting_and_time_map_agree_in_sup_norm() {
    for p in [0.5, 2.0, 3.0, 5.0] {
        let n = 4001;
        let shot = verify::shoot_profile(p, n).unwrap();
        let mut worst = 0.0f64;
        for i in (0..n).step_by(40) {
            let w = profile::evaluate(p, shot.xs[i]).unwrap();
            worst = worst.max((w - shot.values[i]).abs());
        }
        assert!(worst < 1e-6, "sup gap {worst} at p={p}");
        // closed-form gradient norm against the integrator's
        let w = profile::grad_norm(p).unwrap();
        assert!(rel(shot.grad_norm, w) < 1e-6, "grad gap at p={p}");
    }
}

#[test]
fn every_branch_profile_passes_the_residual_oracle() {
    let q2 = profile::grad_norm(2.0).unwrap();
    let sets = [
        (1.0, 1.0, 0.5, 3.0),
        (1.0, 1.0, 1.0, 5.0),
        (1.0, 1.0, 2.0, 3.0 * q2),
        (1.0, 1.0, 5.0, 10.0),
    ];
    for (a, b, p, lambda) in sets {
        let params = ProblemParams::new(a, b, p, lambda).unwrap();
        for bp in bifurcation::xi_of_lambda(a, b, p, lambda).unwrap() {
            let grid = bifurcation::solution_profile(a, b, p, lambda, bp.branch, 2001).unwrap();
            assert!(rel(grid.max_value, bp.xi) < 1e-10);
            let rep = verify::residual(&grid, &params).unwrap();
            assert!(
                rep.max_residual < 1e-5,
                "residual {} at p={p}, branch {}",
                rep.max_residual,
                bp.branch
            );
        }
    }
}

#[test]
fn regimes_with_guaranteed_uniqueness() {
    for p in [0.2, 0.5, 0.9, 3.5, 5.0, 9.0] {
        for lambda in [0.1, 1.0, 42.0] {
            let params = ProblemParams::new(1.0, 1.0, p, lambda).unwrap();
            let roots = scalar_reduction::solve_roots(&params).unwrap();
            assert_eq!(roots.roots.len(), 1, "uniqueness at p={p}, lambda={lambda}");
            let regime = Regime::of(p);
            assert!(matches!(regime, Regime::Sublinear | Regime::Supercritical));
        }
    }
}

#[test]
fn eigenfunction_norm_against_the_tanh_sinh_reference() {
    for p in [1.5, 3.0] {
        let nu = eigenproblem::eigen_pair(p).unwrap().nu;
        let integral = tanh_sinh(
            |x, _, _| (nu * profile::evaluate(p, x).unwrap()).powf(p + 1.0),
            -1.0,
            1.0,
            1e-11,
        );
        assert!(
            (integral - 1.0).abs() < 1e-9,
            "independent normalization at p={p}: {integral}"
        );
    }
}

#[test]
fn supercritical_root_exceeds_stationary_point() {
    for lambda in [0.5, 2.0, 50.0] {
        let params = ProblemParams::new(1.0, 1.0, 5.0, lambda).unwrap();
        let roots = scalar_reduction::solve_roots(&params).unwrap();
        let t0 = scalar_reduction::tangency_point(1.0, 1.0, 5.0, lambda).unwrap();
        assert!(roots.roots[0] > t0);
    }
}

#[test]
fn profile_fd_residual_convergence() {
    // -W'' = W^p on sampled grids: interior residual drops ~4x per doubling
    for p in [2.0, 5.0] {
        let r1 = verify::profile_residual(&profile::sample(p, 501).unwrap()).unwrap();
        let r2 = verify::profile_residual(&profile::sample(p, 1001).unwrap()).unwrap();
        let ratio = r1 / r2;
        assert!((3.3..=4.7).contains(&ratio), "ratio {ratio} at p={p}");
    }
}

#[test]
fn grad_norm_matches_fd_trapezoid_at_n4001() {
    // closed-form ‖W_p'‖² against trapezoid integration of the squared
    // FD first derivative of the sampled grid
    for p in [0.5, 2.0, 5.0] {
        let n = 4001;
        let grid = profile::sample(p, n).unwrap();
        let h = grid.xs[1] - grid.xs[0];
        let mut t_quad = 0.0;
        for i in 0..n {
            let d = if i == 0 {
                (-3.0 * grid.values[0] + 4.0 * grid.values[1] - grid.values[2]) / (2.0 * h)
            } else if i == n - 1 {
                (3.0 * grid.values[n - 1] - 4.0 * grid.values[n - 2] + grid.values[n - 3])
                    / (2.0 * h)
            } else {
                (grid.values[i + 1] - grid.values[i - 1]) / (2.0 * h)
            };
            let w = if i == 0 || i == n - 1 { 0.5 } else { 1.0 };
            t_quad += w * d * d * h;
        }
        let closed = grid.grad_norm * grid.grad_norm;
        assert!(
            rel(t_quad, closed) < 1e-5,
            "FD/trapezoid gap at p={p}: {t_quad} vs {closed}"
        );
        // and the scalars bundle satisfies its own identity
        let s = profile::scalars(p).unwrap();
        let k = constants(p).unwrap();
        assert!(
            rel(
                s.grad_norm * s.grad_norm,
                2.0 * k.a_p * k.b_p * s.eta * s.eta
            ) < 1e-10
        );
    }
}

#[test]
fn solution_profile_matches_explicit_scaling_p3() {
    // u_λ = √(b‖W₃'‖²/(λ - a‖W₃'‖²)) ‖W₃'‖⁻¹ W₃
    let w = profile::grad_norm(3.0).unwrap();
    let (a, b) = (1.3, 0.8);
    let lambda = 2.0 * a * w * w;
    let t = b * w * w / (lambda - a * w * w);
    let scale = t.sqrt() / w;
    let grid = bifurcation::solution_profile(a, b, 3.0, lambda, Branch::Unique, 201).unwrap();
    let base = profile::sample(3.0, 201).unwrap();
    for i in 0..201 {
        assert!((grid.values[i] - scale * base.values[i]).abs() < 1e-12 * base.max_value);
    }
}
