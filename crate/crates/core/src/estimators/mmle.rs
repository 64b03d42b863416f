use std::collections::BTreeSet;

use crate::distributions::{Family, ParameterVector, SampleBatch, Support};
use crate::error::{Error, Result};
use crate::linalg::Mat2;
use crate::scalar::{compensated_sum, lit, to_f64, Real};

use super::covariance::{beta_avar_q, jk_matrices_beta, power_gamma_avar, sandwich_covariance};
use super::report::{EstimateReport, Flag, Method};

/// Relative size below which a closed-form denominator is flagged.
pub const NEAR_DEGENERACY_TOLERANCE: f64 = 1e-10;

fn check_sample<T: Real>(sample: &SampleBatch<T>, support: Support) -> Result<()> {
    if sample.support() != support {
        return Err(Error::Config(format!(
            "expected a {} sample, got {}",
            support.name(),
            sample.support().name()
        )));
    }
    if sample.len() < 2 {
        return Err(Error::InsufficientData { required: 2, got: sample.len() });
    }
    if sample.is_degenerate() {
        return Err(Error::DegenerateSample);
    }
    Ok(())
}

fn family_for_power<T: Real>(alpha0: T) -> Family {
    match to_f64(alpha0) {
        2.0 => Family::Nakagami,
        3.0 => Family::WilsonHilferty,
        _ => Family::Gamma,
    }
}

/// Closed-form estimates for the generalized-gamma embedding at power `alpha0`.
///
/// With Yᵢ = Xᵢ^α₀: λ̂ = Ȳ and φ̂ = ΣYᵢ / (ΣYᵢ ln Yᵢ − (1/n) ΣYᵢ Σ ln Yᵢ).
/// `alpha0` = 1, 2, 3 gives the Gamma, Nakagami-m and Wilson–Hilferty fits;
/// any other positive power reports the gamma law of X^α₀.
pub fn mmle_power_gamma<T: Real>(sample: &SampleBatch<T>, alpha0: T) -> Result<EstimateReport<T>> {
    if !(alpha0 > T::zero() && alpha0.is_finite()) {
        return Err(Error::InvalidParameter { name: "alpha0", value: to_f64(alpha0), requirement: "> 0" });
    }
    check_sample(sample, Support::Positive)?;
    let n = sample.len();
    let nf = lit::<T>(n as f64);
    let y: Vec<T> = if alpha0 == T::one() {
        sample.values().to_vec()
    } else {
        sample.values().iter().map(|&x| x.powf(alpha0)).collect()
    };
    let log_y: Vec<T> = y.iter().map(|v| v.ln()).collect();

    let sum_y = compensated_sum(y.iter().copied());
    let mean_y = sum_y / nf;
    let mean_log = compensated_sum(log_y.iter().copied()) / nf;
    // Σ Yᵢ ln Yᵢ − (1/n) Σ Yᵢ Σ ln Yᵢ, written as a centred cross product
    let denom = compensated_sum(y.iter().zip(&log_y).map(|(&yi, &li)| (yi - mean_y) * (li - mean_log)));
    if !(denom > T::zero()) {
        return Err(Error::DegenerateSample);
    }

    let lambda = mean_y;
    let phi = sum_y / denom;
    let mut flags = BTreeSet::new();
    if denom < lit::<T>(NEAR_DEGENERACY_TOLERANCE) * sum_y {
        flags.insert(Flag::NearDegenerate);
    }
    let avar = power_gamma_avar(lambda, phi).ok();
    let params = ParameterVector { family: family_for_power(alpha0), values: [lambda, phi] };
    let mut report = EstimateReport::new(Method::Mmle, params, n, avar, flags);
    if alpha0 != T::one() && params.family == Family::Gamma {
        report.power = Some(alpha0);
    }
    Ok(report)
}

/// Closed-form Beta estimates from the four-parameter beta embedding:
///
/// α̂ = Σ(1/Xᵢ) / (Σ(1−Xᵢ)/Xᵢ − n² / ΣXᵢ/(1−Xᵢ)),
/// β̂ = Σ1/(1−Xᵢ) / (ΣXᵢ/(1−Xᵢ) − n² / Σ(1−Xᵢ)/Xᵢ).
///
/// Estimates with α̂ ≤ 2 or β̂ ≤ 2 are still returned, flagged
/// [`Flag::AvarOutOfDomain`] and without covariance.
pub fn mmle_beta<T: Real>(sample: &SampleBatch<T>) -> Result<EstimateReport<T>> {
    check_sample(sample, Support::UnitInterval)?;
    let n = sample.len();
    let nf = lit::<T>(n as f64);
    let xs = sample.values();
    let inv_x = compensated_sum(xs.iter().map(|&x| x.recip()));
    let inv_1mx = compensated_sum(xs.iter().map(|&x| (T::one() - x).recip()));
    let odds_against = compensated_sum(xs.iter().map(|&x| (T::one() - x) / x));
    let odds_for = compensated_sum(xs.iter().map(|&x| x / (T::one() - x)));

    // S₂S₃ − n² ≥ 0 by the harmonic–arithmetic inequality, zero only when constant
    let cross = odds_against * odds_for - nf * nf;
    if !(cross > T::zero()) {
        return Err(Error::DegenerateSample);
    }
    let alpha = inv_x * odds_for / cross;
    let beta = inv_1mx * odds_against / cross;

    let mut flags = BTreeSet::new();
    if cross < lit::<T>(NEAR_DEGENERACY_TOLERANCE) * odds_against * odds_for {
        flags.insert(Flag::NearDegenerate);
    }
    let avar = if alpha > lit(2.0) && beta > lit(2.0) {
        let pair = jk_matrices_beta(alpha, beta)?;
        let full = sandwich_covariance(&pair)?;
        // closed-form diagonal, numeric off-diagonal
        let off = lit::<T>(0.5) * (full[(0, 1)] + full[(1, 0)]);
        Some(Mat2::new(beta_avar_q(alpha, beta), off, off, beta_avar_q(beta, alpha)))
    } else {
        flags.insert(Flag::AvarOutOfDomain);
        None
    };
    let params = ParameterVector { family: Family::Beta, values: [alpha, beta] };
    Ok(EstimateReport::new(Method::Mmle, params, n, avar, flags))
}

/// Dispatches to the closed-form estimator for `family`.
pub fn mmle_family<T: Real>(family: Family, sample: &SampleBatch<T>) -> Result<EstimateReport<T>> {
    match family.power() {
        Some(p) => mmle_power_gamma(sample, lit(p as f64)),
        None => mmle_beta(sample),
    }
}
