//! Command-line front end: constants, profiles, curve sweeps, solution
//! solving, eigenpairs and end-to-end verification, emitted as CSV or JSON.
//!
//! Exit codes: 0 success (including "no solutions exist"), 1 verification
//! failure, 2 usage/domain/regime error, 3 numeric non-convergence.

use clap::{Parser, Subcommand, ValueEnum};

use crate::bifurcation::{self, ProblemParams};
use crate::eigenproblem;
use crate::error::{Error, Result};
use crate::output::{value_bool, value_f64, value_str, OutputRecord};
use crate::profile;
use crate::scalar_reduction::{self, Regime};
use crate::special_integrals::constants;
use crate::verify;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

/// Residual tolerance enforced by `verify` (intended for n >= 2001).
pub const VERIFY_RESIDUAL_TOL: f64 = 1e-5;
/// Relative tolerance on the nonlocal gap enforced by `verify`.
pub const VERIFY_GAP_TOL: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "kirchhoff1d",
    about = "Closed-form bifurcation diagrams and exact solutions of -(b + a||u'||^2) u'' = lambda u^p on (-1,1), with built-in verification"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format for the record written to stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Seed for every randomized verification step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Time-map constants A_p, B_p, C_p and the scalars derived from them.
    Constants {
        #[arg(long, allow_negative_numbers = true)]
        p: f64,
    },
    /// Sample the normalized profile W_p on a uniform grid.
    Profile {
        #[arg(long, allow_negative_numbers = true)]
        p: f64,
        /// Grid size (odd, so x = 0 is a node).
        #[arg(long, default_value_t = 201)]
        n: usize,
    },
    /// Sweep the bifurcation curve lambda(xi) over a log-spaced xi range.
    Curve {
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, allow_negative_numbers = true)]
        b: f64,
        #[arg(long, allow_negative_numbers = true)]
        p: f64,
        #[arg(long, allow_negative_numbers = true)]
        xi_min: f64,
        #[arg(long, allow_negative_numbers = true)]
        xi_max: f64,
        #[arg(long, default_value_t = 101)]
        n: usize,
    },
    /// All solution branches at a given lambda, with residual checks.
    Solve {
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, allow_negative_numbers = true)]
        b: f64,
        #[arg(long, allow_negative_numbers = true)]
        p: f64,
        #[arg(long, allow_negative_numbers = true)]
        lambda: f64,
        /// Grid size for the attached residual report.
        #[arg(long, default_value_t = 2001)]
        n: usize,
    },
    /// First eigenvalue and eigenfunction scalars of the nonlocal eigenproblem.
    Eigen {
        #[arg(long, allow_negative_numbers = true)]
        p: f64,
    },
    /// End-to-end verification at one parameter point; exits nonzero if
    /// any residual exceeds its tolerance.
    Verify {
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, allow_negative_numbers = true)]
        b: f64,
        #[arg(long, allow_negative_numbers = true)]
        p: f64,
        #[arg(long, allow_negative_numbers = true)]
        lambda: f64,
        #[arg(long, default_value_t = 2001)]
        n: usize,
    },
}

/// Runs one command, returning the output record and the process exit code.
pub fn execute(command: &Command, seed: u64) -> Result<(OutputRecord, i32)> {
    match command {
        Command::Constants { p } => cmd_constants(*p).map(|r| (r, EXIT_OK)),
        Command::Profile { p, n } => cmd_profile(*p, *n).map(|r| (r, EXIT_OK)),
        Command::Curve {
            a,
            b,
            p,
            xi_min,
            xi_max,
            n,
        } => cmd_curve(*a, *b, *p, *xi_min, *xi_max, *n).map(|r| (r, EXIT_OK)),
        Command::Solve { a, b, p, lambda, n } => {
            cmd_solve(*a, *b, *p, *lambda, *n).map(|r| (r, EXIT_OK))
        }
        Command::Eigen { p } => cmd_eigen(*p).map(|r| (r, EXIT_OK)),
        Command::Verify { a, b, p, lambda, n } => cmd_verify(*a, *b, *p, *lambda, *n, seed),
    }
}

pub fn cmd_constants(p: f64) -> Result<OutputRecord> {
    let k = constants(p)?;
    let mut rec = OutputRecord::new("constants", &["quantity", "value"]);
    rec.input_f64("p", p);
    rec.push_row(vec![value_str("A"), value_f64(k.a_p)]);
    rec.push_row(vec![value_str("B"), value_f64(k.b_p)]);
    rec.push_row(vec![value_str("C"), value_f64(k.c_p)]);
    if p == 1.0 {
        rec.check_str("omitted eta", "requires p != 1");
        rec.check_str("omitted grad_norm", "requires p != 1");
    } else {
        rec.push_row(vec![value_str("eta"), value_f64(profile::eta(p)?)]);
        rec.push_row(vec![
            value_str("grad_norm"),
            value_f64(profile::grad_norm(p)?),
        ]);
    }
    if p > 1.0 {
        rec.push_row(vec![value_str("mu1"), value_f64(eigenproblem::mu1(p)?)]);
        rec.push_row(vec![value_str("zeta"), value_f64(eigenproblem::zeta(p)?)]);
    } else {
        rec.check_str("omitted mu1", "requires p > 1");
        rec.check_str("omitted zeta", "requires p > 1");
    }
    rec.check_f64(
        "identity_gap_a_minus_b_minus_c",
        (k.a_p - k.b_p - k.c_p).abs(),
    );
    rec.check_f64("by_parts_gap", (k.b_p - 0.5 * (p + 1.0) * k.c_p).abs());
    rec.check_f64("est_error", k.est_error);
    Ok(rec)
}

pub fn cmd_profile(p: f64, n: usize) -> Result<OutputRecord> {
    let grid = profile::sample(p, n)?;
    let mut rec = OutputRecord::new("profile", &["x", "w"]);
    rec.input_f64("p", p).input_usize("n", n);
    rec.check_f64("eta", grid.max_value);
    rec.check_f64("grad_norm", grid.grad_norm);
    for i in 0..grid.xs.len() {
        rec.push_row(vec![value_f64(grid.xs[i]), value_f64(grid.values[i])]);
    }
    Ok(rec)
}

pub fn cmd_curve(
    a: f64,
    b: f64,
    p: f64,
    xi_min: f64,
    xi_max: f64,
    n: usize,
) -> Result<OutputRecord> {
    let sweep = bifurcation::curve_sweep(a, b, p, xi_min, xi_max, n)?;
    let mut rec = OutputRecord::new("curve", &["xi", "lambda", "grad_norm"]);
    rec.input_f64("a", a)
        .input_f64("b", b)
        .input_f64("p", p)
        .input_f64("xi_min", xi_min)
        .input_f64("xi_max", xi_max)
        .input_usize("n", n);
    rec.check_str("monotonicity", &sweep.monotonicity.to_string());
    if p > 1.0 && p < 3.0 {
        rec.check_f64("curve_minimum_xi", bifurcation::curve_minimum_xi(a, b, p)?);
    }
    for pt in &sweep.points {
        rec.push_row(vec![
            value_f64(pt.xi),
            value_f64(pt.lambda),
            value_f64(pt.grad_norm),
        ]);
    }
    Ok(rec)
}

pub fn cmd_solve(a: f64, b: f64, p: f64, lambda: f64, n: usize) -> Result<OutputRecord> {
    let params = ProblemParams::new(a, b, p, lambda)?;
    let branches = bifurcation::xi_of_lambda(a, b, p, lambda)?;
    let mut rec = OutputRecord::new(
        "solve",
        &[
            "branch",
            "xi",
            "t",
            "grad_norm",
            "max_residual",
            "nonlocal_gap",
        ],
    );
    rec.input_f64("a", a)
        .input_f64("b", b)
        .input_f64("p", p)
        .input_f64("lambda", lambda)
        .input_usize("n", n);
    rec.check_str("regime", &Regime::of(p).to_string());
    rec.check_f64("count", branches.len() as f64);
    for bp in &branches {
        let grid = bifurcation::solution_profile(a, b, p, lambda, bp.branch, n)?;
        let report = verify::residual(&grid, &params)?;
        rec.push_row(vec![
            value_str(&bp.branch.to_string()),
            value_f64(bp.xi),
            value_f64(bp.grad_norm * bp.grad_norm),
            value_f64(bp.grad_norm),
            value_f64(report.max_residual),
            value_f64(report.nonlocal_gap),
        ]);
    }
    Ok(rec)
}

pub fn cmd_eigen(p: f64) -> Result<OutputRecord> {
    let pair = eigenproblem::eigen_pair(p)?;
    let mut rec = OutputRecord::new("eigen", &["quantity", "value"]);
    rec.input_f64("p", p);
    rec.push_row(vec![value_str("mu1"), value_f64(pair.mu1)]);
    rec.push_row(vec![value_str("zeta"), value_f64(pair.zeta)]);
    rec.push_row(vec![value_str("nu"), value_f64(pair.nu)]);
    rec.push_row(vec![
        value_str("phi_grad_norm"),
        value_f64(pair.phi_grad_norm),
    ]);
    rec.check_f64("norm_integral", eigenproblem::phi1_norm_integral(p, 2001)?);
    rec.check_f64(
        "grad_power_gap",
        (pair.phi_grad_norm.powf(p + 1.0) - pair.mu1).abs() / pair.mu1,
    );
    Ok(rec)
}

pub fn cmd_verify(
    a: f64,
    b: f64,
    p: f64,
    lambda: f64,
    n: usize,
    seed: u64,
) -> Result<(OutputRecord, i32)> {
    let params = ProblemParams::new(a, b, p, lambda)?;
    let branches = bifurcation::xi_of_lambda(a, b, p, lambda)?;
    let mut rec = OutputRecord::new("verify", &["check", "branch", "value", "tolerance", "pass"]);
    rec.input_f64("a", a)
        .input_f64("b", b)
        .input_f64("p", p)
        .input_f64("lambda", lambda)
        .input_usize("n", n)
        .input_usize("seed", seed as usize);
    let mut all_pass = true;
    let push_check = |rec: &mut OutputRecord, check: &str, branch: &str, value: f64, tol: f64| {
        let pass = value <= tol;
        rec.push_row(vec![
            value_str(check),
            value_str(branch),
            value_f64(value),
            value_f64(tol),
            value_bool(pass),
        ]);
        pass
    };

    for bp in &branches {
        let grid = bifurcation::solution_profile(a, b, p, lambda, bp.branch, n)?;
        let report = verify::residual(&grid, &params)?;
        let name = bp.branch.to_string();
        all_pass &= push_check(
            &mut rec,
            "max_residual",
            &name,
            report.max_residual,
            VERIFY_RESIDUAL_TOL,
        );
        let expected_t = bp.grad_norm * bp.grad_norm;
        all_pass &= push_check(
            &mut rec,
            "nonlocal_gap_rel",
            &name,
            report.nonlocal_gap / expected_t,
            VERIFY_GAP_TOL,
        );
    }

    if p != 1.0 {
        // root-count agreement between the closed-form inversion, the
        // scalar reduction and the brute-force sign scan
        let roots = scalar_reduction::solve_roots(&params)?;
        let scan = verify::sign_scan_roots(&params, 1e-12, 1e12, 4001)?;
        let counts_ok = roots.roots.len() == branches.len()
            && (scan.count == branches.len()
                // a tangency double root is invisible to a sign scan
                || roots.roots.len() == 1 && scan.count != 1);
        all_pass &= push_check(
            &mut rec,
            "count_agreement",
            "all",
            if counts_ok { 0.0 } else { 1.0 },
            0.5,
        );
    }

    if p > 1.0 {
        let mu1 = eigenproblem::mu1(p)?;
        let sampled = verify::rayleigh_sample(p, 20, seed)?;
        all_pass &= push_check(
            &mut rec,
            "rayleigh_infimum_gap",
            "all",
            (mu1 - sampled).max(0.0) / mu1,
            1e-8,
        );
    }

    rec.check_bool("passed", all_pass);
    rec.check_f64("count", branches.len() as f64);
    Ok((
        rec,
        if all_pass {
            EXIT_OK
        } else {
            EXIT_VERIFY_FAILED
        },
    ))
}

/// Maps an error to its process exit code.
pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Domain(_) | Error::Regime(_) => EXIT_USAGE,
        Error::Numeric(_) => EXIT_NUMERIC,
    }
}

/// Full CLI entry point: execute, print to stdout, report errors on stderr.
pub fn run(cli: &Cli) -> i32 {
    match execute(&cli.command, cli.seed) {
        Ok((record, code)) => {
            match cli.format {
                Format::Csv => print!("{}", record.to_csv()),
                Format::Json => println!("{}", record.to_json()),
            }
            code
        }
        Err(err) => {
            eprintln!("error: {err}");
            exit_code_for(&err)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_p1_closed_forms_in_record() {
        let rec = cmd_constants(1.0).unwrap();
        let a = rec.rows[0][1].as_f64().unwrap();
        assert!((a - std::f64::consts::FRAC_PI_2).abs() < 1e-13);
        // eta/grad/mu1 omitted with reasons
        let checks = rec.checks.unwrap();
        assert_eq!(checks["omitted mu1"], "requires p > 1");
        assert_eq!(checks["omitted eta"], "requires p != 1");
    }

    #[test]
    fn constants_p05_omits_mu1_with_reason() {
        let rec = cmd_constants(0.5).unwrap();
        assert!(rec.rows.iter().all(|r| r[0] != "mu1"));
        let csv = rec.to_csv();
        assert!(csv.contains("requires p > 1"), "{csv}");
    }

    #[test]
    fn constants_p3_includes_mu1() {
        let rec = cmd_constants(3.0).unwrap();
        let mu = rec.rows.iter().find(|r| r[0] == "mu1").unwrap()[1]
            .as_f64()
            .unwrap();
        assert!((mu - 7.8780300053847438).abs() < 1e-12);
    }

    #[test]
    fn profile_p2_n3_rows() {
        let rec = cmd_profile(2.0, 3).unwrap();
        assert_eq!(rec.rows.len(), 3);
        assert_eq!(rec.rows[0][0].as_f64().unwrap(), -1.0);
        assert_eq!(rec.rows[0][1].as_f64().unwrap(), 0.0);
        assert!((rec.rows[1][1].as_f64().unwrap() - 2.9491719847423850).abs() < 1e-12);
        assert_eq!(rec.rows[2][1].as_f64().unwrap(), 0.0);
    }

    #[test]
    fn curve_header_tags() {
        let rec = cmd_curve(1.0, 1.0, 5.0, 0.1, 10.0, 33).unwrap();
        assert!(rec.to_csv().contains("# check monotonicity=decreasing"));
        let rec = cmd_curve(1.0, 1.0, 2.0, 0.1, 10.0, 33).unwrap();
        assert!(rec.to_csv().contains("# check monotonicity=U-shaped"));
        assert!(matches!(
            cmd_curve(1.0, 1.0, 2.0, 0.1, 10.0, 1),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn solve_zero_branches_is_ok() {
        let k = constants(3.0).unwrap();
        let lam_min = 4.0 * k.a_p.powi(3) * k.b_p;
        let rec = cmd_solve(1.0, 1.0, 3.0, lam_min, 2001).unwrap();
        assert!(rec.rows.is_empty());
        assert_eq!(rec.checks.unwrap()["count"], 0.0);
    }

    #[test]
    fn verify_passes_at_p2_above_threshold() {
        let q2 = profile::grad_norm(2.0).unwrap();
        let (rec, code) = cmd_verify(1.0, 1.0, 2.0, 3.0 * q2, 2001, 0).unwrap();
        assert_eq!(code, EXIT_OK, "{}", rec.to_csv());
        assert_eq!(rec.checks.unwrap()["passed"], true);
    }

    #[test]
    fn verify_flags_coarse_grids() {
        // at n = 101 the p = 0.5 FD residual exceeds the pinned tolerance
        let (rec, code) = cmd_verify(1.0, 1.0, 0.5, 3.0, 101, 0).unwrap();
        assert_eq!(code, EXIT_VERIFY_FAILED, "{}", rec.to_csv());
    }

    #[test]
    fn exit_codes_map_error_kinds() {
        assert_eq!(exit_code_for(&Error::domain("x")), EXIT_USAGE);
        assert_eq!(exit_code_for(&Error::regime("x")), EXIT_USAGE);
        assert_eq!(exit_code_for(&Error::numeric("x")), EXIT_NUMERIC);
    }
}
