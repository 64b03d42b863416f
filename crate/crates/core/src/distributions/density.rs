use crate::error::{Error, Result};
use crate::scalar::{lit, to_f64, Real};
use crate::special::{log_beta, log_gamma};

use super::{BetaParams, GammaParams, GeneralizedBetaParams, GeneralizedGammaParams, NakagamiParams};

fn positive<T: Real>(function: &'static str, x: T) -> Result<()> {
    if x > T::zero() && x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain { function, value: to_f64(x), expected: "x > 0" })
    }
}

/// φ ln(φ/λ) − ln Γ(φ) + (φ−1) ln x − (φ/λ) x
pub fn log_pdf_gamma<T: Real>(params: &GammaParams<T>, x: T) -> Result<T> {
    positive("log_pdf_gamma", x)?;
    let (lambda, phi) = (params.lambda(), params.phi());
    Ok(phi * (phi / lambda).ln() - log_gamma(phi)? + (phi - T::one()) * x.ln() - phi / lambda * x)
}

/// ln α + φ ln(φ/λ) − ln Γ(φ) + (αφ−1) ln x − (φ/λ) x^α
pub fn log_pdf_generalized_gamma<T: Real>(params: &GeneralizedGammaParams<T>, x: T) -> Result<T> {
    positive("log_pdf_generalized_gamma", x)?;
    let (lambda, phi, alpha) = (params.lambda(), params.phi(), params.alpha());
    Ok(alpha.ln() + phi * (phi / lambda).ln() - log_gamma(phi)? + (alpha * phi - T::one()) * x.ln()
        - phi / lambda * x.powf(alpha))
}

pub fn log_pdf_nakagami<T: Real>(params: &NakagamiParams<T>, x: T) -> Result<T> {
    positive("log_pdf_nakagami", x)?;
    let (lambda, phi) = (params.lambda(), params.phi());
    let two = lit::<T>(2.0);
    Ok(two.ln() + phi * (phi / lambda).ln() - log_gamma(phi)? + (two * phi - T::one()) * x.ln()
        - phi / lambda * x * x)
}

/// Generalized gamma with power 3.
pub fn log_pdf_wilson_hilferty<T: Real>(params: &GammaParams<T>, x: T) -> Result<T> {
    positive("log_pdf_wilson_hilferty", x)?;
    let (lambda, phi) = (params.lambda(), params.phi());
    let three = lit::<T>(3.0);
    Ok(three.ln() + phi * (phi / lambda).ln() - log_gamma(phi)? + (three * phi - T::one()) * x.ln()
        - phi / lambda * x.powi(3))
}

/// (α−1) ln x + (β−1) ln(1−x) − ln B(α, β)
pub fn log_pdf_beta<T: Real>(params: &BetaParams<T>, x: T) -> Result<T> {
    if !(x > T::zero() && x < T::one()) {
        return Err(Error::Domain { function: "log_pdf_beta", value: to_f64(x), expected: "0 < x < 1" });
    }
    let (a, b) = (params.alpha(), params.beta());
    Ok((a - T::one()) * x.ln() + (b - T::one()) * (-x).ln_1p() - log_beta(a, b)?)
}

/// (α−1) ln(x−a) + (β−1) ln(c−x) − (α+β−1) ln(c−a) − ln B(α, β)
pub fn log_pdf_generalized_beta<T: Real>(params: &GeneralizedBetaParams<T>, x: T) -> Result<T> {
    let (lo, hi) = (params.a(), params.c());
    if !(x > lo && x < hi) {
        return Err(Error::Domain { function: "log_pdf_generalized_beta", value: to_f64(x), expected: "a < x < c" });
    }
    let (al, be) = (params.alpha(), params.beta());
    let one = T::one();
    Ok((al - one) * (x - lo).ln() + (be - one) * (hi - x).ln() - (al + be - one) * (hi - lo).ln() - log_beta(al, be)?)
}
