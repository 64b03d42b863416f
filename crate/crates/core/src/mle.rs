//! Classical maximum likelihood fits, used as the comparison baseline for
//! the closed-form estimators.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::distributions::{Family, ParameterVector, SampleBatch, Support};
use crate::error::{Error, Result};
use crate::estimators::{mmle_beta, mmle_power_gamma, EstimateReport, Flag, Method, SolverInfo};
use crate::linalg::Mat2;
use crate::scalar::{compensated_sum, lit, to_f64, Real};
use crate::special::{digamma, log_minus_digamma, trigamma, trigamma_minus_inv};

/// φ beyond which a gamma MLE is reported as near-degenerate.
const LARGE_SHAPE: f64 = 1e6;
const SHAPE_CEILING: f64 = 1e15;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub max_iter: usize,
    /// Tolerance on the relative step and on the residual.
    pub tol: f64,
    /// Initial fraction of the Newton step; halved on overshoot.
    pub damping: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self { max_iter: 100, tol: 1e-12, damping: 1.0 }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_iter == 0 {
            return Err(Error::Config("max_iter must be positive".into()));
        }
        if !(self.tol > 0.0 && self.tol < 1.0) {
            return Err(Error::Config(format!("tol must lie in (0, 1), got {}", self.tol)));
        }
        if !(self.damping > 0.0 && self.damping <= 1.0) {
            return Err(Error::Config(format!("damping must lie in (0, 1], got {}", self.damping)));
        }
        Ok(())
    }
}

fn check_sample<T: Real>(sample: &SampleBatch<T>, support: Support) -> Result<()> {
    if sample.support() != support {
        return Err(Error::Config(format!("expected a {} sample, got {}", support.name(), sample.support().name())));
    }
    if sample.len() < 2 {
        return Err(Error::InsufficientData { required: 2, got: sample.len() });
    }
    if sample.is_degenerate() {
        return Err(Error::DegenerateSample);
    }
    Ok(())
}

/// Root of ln φ − ψ(φ) = rhs by bracketed Newton in s = ln φ.
///
/// The left side decreases strictly from +∞ to 0, so a bracket always exists
/// for rhs > 0. Newton steps leaving the bracket fall back to bisection.
fn solve_gamma_shape(rhs: f64, start: f64, cfg: &SolverConfig) -> Result<(f64, SolverInfo)> {
    let h = |phi: f64| log_minus_digamma(phi).map(|v| v - rhs);
    let (mut lo, mut hi) = (1e-6f64, 1e6f64);
    while h(lo)? <= 0.0 {
        lo *= 1e-3;
        if lo < 1e-300 {
            return Err(Error::NonConvergence { iterations: 0, last: [f64::NAN, lo], residual: h(lo)? });
        }
    }
    while h(hi)? >= 0.0 {
        hi *= 1e3;
        if hi > SHAPE_CEILING {
            return Err(Error::NonConvergence { iterations: 0, last: [f64::NAN, hi], residual: h(hi)? });
        }
    }
    debug_assert!(h(lo)? > 0.0 && h(hi)? < 0.0);

    let (mut s_lo, mut s_hi) = (lo.ln(), hi.ln());
    let mut s = if start.is_finite() && start > lo && start < hi { start.ln() } else { 0.5 * (s_lo + s_hi) };
    let mut residual = f64::INFINITY;
    for iter in 1..=cfg.max_iter {
        let phi = s.exp();
        residual = h(phi)?;
        if residual > 0.0 {
            s_lo = s;
        } else {
            s_hi = s;
        }
        // d/ds h(e^s) = −φ (ψ′(φ) − 1/φ)
        let slope = -phi * trigamma_minus_inv(phi)?;
        let mut step = -cfg.damping * residual / slope;
        let mut next = s + step;
        if !(next > s_lo && next < s_hi) || !next.is_finite() {
            next = 0.5 * (s_lo + s_hi);
            step = next - s;
        }
        s = next;
        if step.abs() <= cfg.tol && residual.abs() <= cfg.tol {
            let phi = s.exp();
            return Ok((phi, SolverInfo { iterations: iter, residual: h(phi)?.abs() }));
        }
    }
    Err(Error::NonConvergence { iterations: cfg.max_iter, last: [f64::NAN, s.exp()], residual: residual.abs() })
}

/// Gamma MLE of X^α₀: λ̂ = mean(X^α₀) and ln φ − ψ(φ) = ln λ̂ − mean(ln X^α₀).
pub fn mle_power_gamma<T: Real>(sample: &SampleBatch<T>, alpha0: T, cfg: &SolverConfig) -> Result<EstimateReport<T>> {
    cfg.validate()?;
    check_sample(sample, Support::Positive)?;
    // the closed form supplies λ̂ (the same sample mean) and the Newton start
    let start = mmle_power_gamma(sample, alpha0)?;
    let lambda = start.params.values[0];
    let n = sample.len();
    let nf = lit::<T>(n as f64);
    let mean_log = compensated_sum(sample.values().iter().map(|&x| if alpha0 == T::one() { x.ln() } else { x.powf(alpha0).ln() })) / nf;
    let rhs = to_f64(lambda.ln() - mean_log);
    if !(rhs > 0.0) {
        return Err(Error::DegenerateSample);
    }
    let init = if start.flags.is_empty() { to_f64(start.params.values[1]) } else { minka_start(rhs) };
    let (phi, info) = solve_gamma_shape(rhs, init, cfg)?;

    let mut flags = BTreeSet::new();
    if phi > LARGE_SHAPE {
        flags.insert(Flag::NearDegenerate);
    }
    let avar = fisher_avar(Family::Gamma, [to_f64(lambda), phi])?.map(lit::<T>);
    let params = ParameterVector { family: start.params.family, values: [lambda, lit(phi)] };
    let mut report = EstimateReport::new(Method::Mle, params, n, Some(avar), flags);
    report.power = start.power;
    report.solver = Some(info);
    Ok(report)
}

/// Closed-form approximation to the gamma shape MLE.
fn minka_start(rhs: f64) -> f64 {
    (3.0 - rhs + ((rhs - 3.0).powi(2) + 24.0 * rhs).sqrt()) / (12.0 * rhs)
}

pub fn mle_gamma<T: Real>(sample: &SampleBatch<T>, cfg: &SolverConfig) -> Result<EstimateReport<T>> {
    mle_power_gamma(sample, T::one(), cfg)
}

/// Gamma MLE applied to the squared sample.
pub fn mle_nakagami<T: Real>(sample: &SampleBatch<T>, cfg: &SolverConfig) -> Result<EstimateReport<T>> {
    mle_power_gamma(sample, lit(2.0), cfg)
}

pub fn mle_wilson_hilferty<T: Real>(sample: &SampleBatch<T>, cfg: &SolverConfig) -> Result<EstimateReport<T>> {
    mle_power_gamma(sample, lit(3.0), cfg)
}

fn method_of_moments_beta(xs: &[f64]) -> [f64; 2] {
    let n = xs.len() as f64;
    let m = compensated_sum(xs.iter().copied()) / n;
    let v = compensated_sum(xs.iter().map(|x| (x - m).powi(2))) / (n - 1.0);
    let c = m * (1.0 - m) / v - 1.0;
    if c > 0.0 && c.is_finite() {
        [m * c, (1.0 - m) * c]
    } else {
        [1.0, 1.0]
    }
}

fn beta_score(a: f64, b: f64, mean_log: f64, mean_log1m: f64) -> Result<[f64; 2]> {
    let ab = digamma(a + b)?;
    Ok([digamma(a)? - ab - mean_log, digamma(b)? - ab - mean_log1m])
}

fn beta_fisher(a: f64, b: f64) -> Result<Mat2<f64>> {
    let t = trigamma(a + b)?;
    Ok(Mat2::new(trigamma(a)? - t, -t, -t, trigamma(b)? - t))
}

/// Beta MLE: ψ(α) − ψ(α+β) = mean(ln X), ψ(β) − ψ(α+β) = mean(ln(1−X)) by
/// damped Newton with the trigamma Jacobian.
pub fn mle_beta<T: Real>(sample: &SampleBatch<T>, cfg: &SolverConfig) -> Result<EstimateReport<T>> {
    cfg.validate()?;
    check_sample(sample, Support::UnitInterval)?;
    let xs: Vec<f64> = sample.values().iter().map(|&x| to_f64(x)).collect();
    let n = xs.len();
    let nf = n as f64;
    let mean_log = compensated_sum(xs.iter().map(|x| x.ln())) / nf;
    let mean_log1m = compensated_sum(xs.iter().map(|x| (-x).ln_1p())) / nf;

    let mut theta = match mmle_beta(sample) {
        Ok(r) if r.flags.is_empty() => [to_f64(r.params.values[0]), to_f64(r.params.values[1])],
        Ok(_) => method_of_moments_beta(&xs),
        Err(e) => return Err(e),
    };
    let norm = |g: [f64; 2]| g[0].abs().max(g[1].abs());
    let mut g = beta_score(theta[0], theta[1], mean_log, mean_log1m)?;
    for iter in 1..=cfg.max_iter {
        // Jacobian of the score equations is the Fisher matrix
        let step = beta_fisher(theta[0], theta[1])?.solve(g)?;
        let mut scale = cfg.damping;
        let (mut next, mut g_next);
        loop {
            next = [theta[0] - scale * step[0], theta[1] - scale * step[1]];
            if next[0] > 0.0 && next[1] > 0.0 {
                g_next = beta_score(next[0], next[1], mean_log, mean_log1m)?;
                if norm(g_next) <= norm(g) || scale < 1e-10 {
                    break;
                }
            }
            scale *= 0.5;
            if scale < 1e-30 {
                return Err(Error::NonConvergence { iterations: iter, last: theta, residual: norm(g) });
            }
        }
        let rel_step = ((next[0] - theta[0]) / theta[0]).abs().max(((next[1] - theta[1]) / theta[1]).abs());
        theta = next;
        g = g_next;
        if rel_step <= cfg.tol || norm(g) <= cfg.tol * 1e-3 {
            let avar = beta_fisher(theta[0], theta[1])?.inverse()?.map(lit::<T>);
            let params = ParameterVector { family: Family::Beta, values: [lit(theta[0]), lit(theta[1])] };
            let mut report = EstimateReport::new(Method::Mle, params, n, Some(avar), BTreeSet::new());
            report.solver = Some(SolverInfo { iterations: iter, residual: norm(g) });
            return Ok(report);
        }
    }
    Err(Error::NonConvergence { iterations: cfg.max_iter, last: theta, residual: norm(g) })
}

/// Inverse Fisher information, the asymptotic covariance of the MLE.
pub fn fisher_avar(family: Family, params: [f64; 2]) -> Result<Mat2<f64>> {
    family.validate(params)?;
    let [a, b] = params;
    match family {
        Family::Beta => beta_fisher(a, b)?.inverse(),
        _ => Ok(Mat2::diag(a * a / b, 1.0 / trigamma_minus_inv(b)?)),
    }
}

/// Dispatches to the MLE for `family`.
pub fn mle_family<T: Real>(family: Family, sample: &SampleBatch<T>, cfg: &SolverConfig) -> Result<EstimateReport<T>> {
    match family.power() {
        Some(p) => mle_power_gamma(sample, lit(p as f64), cfg),
        None => mle_beta(sample, cfg),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::{sample_beta, sample_gamma, sample_nakagami, BetaParams, GammaParams, NakagamiParams};

    #[test]
    fn gamma_lambda_equals_closed_form_lambda() {
        let s = sample_gamma::<f64>(&GammaParams::new(1.5, 2.0).unwrap(), 37, 1).unwrap();
        let mle = mle_gamma(&s, &SolverConfig::default()).unwrap();
        let mmle = mmle_power_gamma(&s, 1.0).unwrap();
        assert_eq!(mle.params.values[0], mmle.params.values[0]);
        assert_eq!(mle.method, Method::Mle);
        let info = mle.solver.unwrap();
        assert!(info.residual <= 1e-12);
    }

    #[test]
    fn gamma_score_equation_holds() {
        let s = sample_gamma::<f64>(&GammaParams::new(3.0, 0.4).unwrap(), 50, 2).unwrap();
        let r = mle_gamma(&s, &SolverConfig::default()).unwrap();
        let [lambda, phi] = r.params.values;
        let mean_log = s.values().iter().map(|x| x.ln()).sum::<f64>() / 50.0;
        let lhs = phi.ln() - digamma(phi).unwrap();
        assert!((lhs - (lambda.ln() - mean_log)).abs() < 1e-12);
    }

    #[test]
    fn gamma_large_sample_consistency() {
        let s = sample_gamma::<f64>(&GammaParams::new(1.5, 2.0).unwrap(), 100_000, 77).unwrap();
        let phi = mle_gamma(&s, &SolverConfig::default()).unwrap().params.values[1];
        assert!(phi > 1.9 && phi < 2.1, "{phi}");
    }

    #[test]
    fn nakagami_equals_gamma_on_squares() {
        let s = sample_nakagami::<f64>(&NakagamiParams::new(10.0, 4.0).unwrap(), 100_000, 5).unwrap();
        let cfg = SolverConfig::default();
        let nk = mle_nakagami(&s, &cfg).unwrap();
        let g = mle_gamma(&s.powf(2.0).unwrap(), &cfg).unwrap();
        assert_eq!(nk.params.values, g.params.values);
        assert_eq!(nk.params.family, Family::Nakagami);
        assert!(nk.params.values[1] > 3.9 && nk.params.values[1] < 4.1);
    }

    #[test]
    fn nearly_degenerate_gamma_sample() {
        let s = SampleBatch::new(vec![1.0, 1.0 + 1e-9, 1.0 - 1e-9], Support::Positive).unwrap();
        match mle_gamma(&s, &SolverConfig::default()) {
            Ok(r) => assert!(r.has_flag(Flag::NearDegenerate) && r.params.values[1] > 1e6),
            Err(e) => assert!(matches!(e, Error::NonConvergence { .. } | Error::DegenerateSample), "{e}"),
        }
        let s = SampleBatch::new(vec![2.0, 2.0], Support::Positive).unwrap();
        assert_eq!(mle_gamma(&s, &SolverConfig::default()).unwrap_err(), Error::DegenerateSample);
    }

    #[test]
    fn beta_consistency_and_reflection() {
        let cfg = SolverConfig::default();
        let s = sample_beta::<f64>(&BetaParams::new(3.0, 2.5).unwrap(), 100_000, 8).unwrap();
        let r = mle_beta(&s, &cfg).unwrap();
        assert!((r.params.values[0] - 3.0).abs() < 0.1 && (r.params.values[1] - 2.5).abs() < 0.1);
        let flipped = mle_beta(&s.reflected().unwrap(), &cfg).unwrap();
        assert!((flipped.params.values[0] / r.params.values[1] - 1.0).abs() < 1e-9);
        assert!((flipped.params.values[1] / r.params.values[0] - 1.0).abs() < 1e-9);

        let u = sample_beta::<f64>(&BetaParams::new(1.0, 1.0).unwrap(), 100_000, 9).unwrap();
        let r = mle_beta(&u, &cfg).unwrap();
        assert!((r.params.values[0] - 1.0).abs() < 0.05 && (r.params.values[1] - 1.0).abs() < 0.05);
    }

    #[test]
    fn beta_starts_from_moments_when_closed_form_is_flagged() {
        let s = SampleBatch::new(vec![0.05, 0.5, 0.95, 0.3], Support::UnitInterval).unwrap();
        let r = mle_beta(&s, &SolverConfig::default()).unwrap();
        let g = beta_score(r.params.values[0], r.params.values[1],
            s.values().iter().map(|x| x.ln()).sum::<f64>() / 4.0,
            s.values().iter().map(|x| (-x).ln_1p()).sum::<f64>() / 4.0).unwrap();
        assert!(g[0].abs() < 1e-10 && g[1].abs() < 1e-10);
    }

    #[test]
    fn config_validation() {
        let s = SampleBatch::new(vec![1.0, 2.0], Support::Positive).unwrap();
        for cfg in [
            SolverConfig { max_iter: 0, ..Default::default() },
            SolverConfig { tol: 0.0, ..Default::default() },
            SolverConfig { damping: 1.5, ..Default::default() },
        ] {
            assert!(matches!(mle_gamma(&s, &cfg), Err(Error::Config(_))));
        }
    }

    #[test]
    fn non_convergence_is_reported() {
        let s = sample_beta::<f64>(&BetaParams::new(3.0, 2.5).unwrap(), 30, 3).unwrap();
        let cfg = SolverConfig { max_iter: 1, tol: 1e-15, damping: 0.01 };
        assert!(matches!(mle_beta(&s, &cfg), Err(Error::NonConvergence { iterations: 1, .. })));
    }
}
