//! Random-point checks of the estimating equations: score expectation,
//! invertibility of J, the sandwich closed forms, and residuals of the
//! closed-form fits on simulated samples.

use clap::Args;
use mmle::estimators::{
    beta_avar_q, jk_matrices_beta, jk_matrices_power_gamma, mmle_family, modified_eq_residuals, power_gamma_avar,
    sandwich_covariance, verify_score_zero, MatrixPair,
};
use mmle::montecarlo::{derive_seed, sample_family};
use mmle::{GammaParams, ModifiedFamily};

use crate::exit::{CliError, FAILED_CHECKS};
use crate::Dist;

pub const SCORE_TOL: f64 = 1e-6;
pub const DET_J_MIN: f64 = 1e-10;
pub const SANDWICH_TOL: f64 = 1e-9;
pub const RESIDUAL_TOL: f64 = 1e-8;
const RESIDUAL_N: usize = 50;

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Restrict to one family.
    #[arg(long, value_enum)]
    pub dist: Option<Dist>,
    /// Random parameter points per family.
    #[arg(long, default_value_t = 25, value_parser = clap::value_parser!(u64).range(1..))]
    pub points: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Add beta points with alpha = 1.5, outside the J/K domain.
    #[arg(long)]
    pub include_invalid: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    ScoreZero,
    DetJ,
    Sandwich,
    Residual,
}

impl Check {
    const ALL: [Check; 4] = [Check::ScoreZero, Check::DetJ, Check::Sandwich, Check::Residual];

    fn name(self) -> &'static str {
        match self {
            Check::ScoreZero => "score_zero",
            Check::DetJ => "det_j",
            Check::Sandwich => "sandwich",
            Check::Residual => "residual",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Row {
    pub dist: Dist,
    pub check: Check,
    pub point: [f64; 2],
    /// Measured quantity, or the error that prevented measuring it.
    pub outcome: Result<f64, String>,
    pub pass: bool,
}

fn unit(seed: u64) -> f64 {
    (seed >> 11) as f64 / (1u64 << 53) as f64
}

fn log_uniform(seed: u64, lo: f64, hi: f64) -> f64 {
    (lo.ln() + unit(seed) * (hi / lo).ln()).exp()
}

/// Parameter point `i` for `dist`, reproducible from `seed`.
pub fn random_point(dist: Dist, seed: u64, i: usize) -> [f64; 2] {
    let s = derive_seed(seed ^ dist as u64, 0, 2 * i);
    let t = derive_seed(seed ^ dist as u64, 0, 2 * i + 1);
    match dist {
        Dist::Beta => [log_uniform(s, 2.1, 15.0), log_uniform(t, 2.1, 15.0)],
        Dist::Nakagami => [log_uniform(s, 0.2, 20.0), log_uniform(t, 0.6, 20.0)],
        Dist::Gamma | Dist::WilsonHilferty => [log_uniform(s, 0.2, 20.0), log_uniform(t, 0.2, 20.0)],
    }
}

fn modified(dist: Dist) -> ModifiedFamily<f64> {
    match dist.family().power() {
        Some(p) => ModifiedFamily::PowerGamma { alpha0: p as f64 },
        None => ModifiedFamily::Beta,
    }
}

fn jk(dist: Dist, [a, b]: [f64; 2]) -> mmle::Result<MatrixPair<f64>> {
    match dist {
        Dist::Beta => jk_matrices_beta(a, b),
        _ => jk_matrices_power_gamma(&GammaParams::new(a, b)?),
    }
}

fn rel(x: f64, reference: f64) -> f64 {
    (x - reference).abs() / reference.abs().max(1.0)
}

fn measure(dist: Dist, check: Check, point: [f64; 2], seed: u64, i: usize) -> mmle::Result<f64> {
    match check {
        Check::ScoreZero => {
            let e = verify_score_zero(modified(dist), point)?;
            Ok(e[0].abs().max(e[1].abs()))
        }
        Check::DetJ => Ok(jk(dist, point)?.j.det().abs()),
        Check::Sandwich => {
            let s = sandwich_covariance(&jk(dist, point)?)?;
            let [a, b] = point;
            Ok(match dist {
                Dist::Beta => rel(s[(0, 0)], beta_avar_q(a, b)).max(rel(s[(1, 1)], beta_avar_q(b, a))),
                _ => {
                    let c = power_gamma_avar(a, b)?;
                    let mut worst = 0.0f64;
                    for r in 0..2 {
                        for k in 0..2 {
                            worst = worst.max(rel(s[(r, k)], c[(r, k)]));
                        }
                    }
                    worst
                }
            })
        }
        Check::Residual => {
            let sample = sample_family(dist.family(), point, RESIDUAL_N, derive_seed(seed, RESIDUAL_N, i))?;
            let est = mmle_family(dist.family(), &sample)?.estimates();
            let r = modified_eq_residuals(modified(dist), est, &sample)?;
            Ok(r[0].abs().max(r[1].abs()))
        }
    }
}

fn passes(check: Check, value: f64) -> bool {
    match check {
        Check::ScoreZero => value <= SCORE_TOL,
        Check::DetJ => value >= DET_J_MIN && value.is_finite(),
        Check::Sandwich => value <= SANDWICH_TOL,
        Check::Residual => value <= RESIDUAL_TOL,
    }
}

pub fn run_checks(args: &VerifyArgs) -> Vec<Row> {
    let dists: Vec<Dist> = match args.dist {
        Some(d) => vec![d],
        None => Dist::ALL.to_vec(),
    };
    let mut rows = Vec::new();
    for dist in dists {
        let mut points: Vec<[f64; 2]> = (0..args.points as usize).map(|i| random_point(dist, args.seed, i)).collect();
        if args.include_invalid && dist == Dist::Beta {
            let extra: Vec<[f64; 2]> = points.iter().map(|p| [1.5, p[1]]).collect();
            points.extend(extra);
        }
        for (i, &point) in points.iter().enumerate() {
            for check in Check::ALL {
                let outcome = measure(dist, check, point, args.seed, i).map_err(|e| e.to_string());
                let pass = outcome.as_ref().is_ok_and(|&v| passes(check, v));
                rows.push(Row { dist, check, point, outcome, pass });
            }
        }
    }
    rows
}

pub fn render(rows: &[Row]) -> String {
    let mut out = format!("{:<16} {:<11} {:>7} {:>7} {:>12}\n", "dist", "check", "passed", "failed", "worst");
    let mut groups: Vec<(Dist, Check)> = Vec::new();
    for r in rows {
        if !groups.contains(&(r.dist, r.check)) {
            groups.push((r.dist, r.check));
        }
    }
    for (dist, check) in groups {
        let sel: Vec<&Row> = rows.iter().filter(|r| r.dist == dist && r.check == check).collect();
        let passed = sel.iter().filter(|r| r.pass).count();
        let values = sel.iter().filter_map(|r| r.outcome.as_ref().ok().copied());
        let worst = match check {
            Check::DetJ => values.fold(f64::INFINITY, f64::min),
            _ => values.fold(0.0, f64::max),
        };
        out.push_str(&format!(
            "{:<16} {:<11} {:>7} {:>7} {:>12.3e}\n",
            dist.name(),
            check.name(),
            passed,
            sel.len() - passed,
            worst
        ));
    }
    let failed: Vec<&Row> = rows.iter().filter(|r| !r.pass).collect();
    if !failed.is_empty() {
        out.push_str(&format!("\n{} failed checks:\n", failed.len()));
        out.push_str(&format!("{:<16} {:<11} {:>14} {:>14}  {}\n", "dist", "check", "p1", "p2", "detail"));
        for r in failed {
            let detail = match &r.outcome {
                Ok(v) => format!("value {v:.6e}"),
                Err(e) => format!("DomainError: {e}"),
            };
            out.push_str(&format!(
                "{:<16} {:<11} {:>14.8} {:>14.8}  {}\n",
                r.dist.name(),
                r.check.name(),
                r.point[0],
                r.point[1],
                detail
            ));
        }
    }
    out
}

pub fn run(args: &VerifyArgs) -> Result<i32, CliError> {
    let rows = run_checks(args);
    print!("{}", render(&rows));
    if rows.iter().all(|r| r.pass) {
        println!("all {} checks passed", rows.len());
        Ok(0)
    } else {
        Ok(FAILED_CHECKS)
    }
}
