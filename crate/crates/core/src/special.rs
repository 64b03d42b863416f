//! Log-gamma, digamma and trigamma on the positive real axis.
//!
//! Arguments below [`ASYMPTOTIC_THRESHOLD`] are shifted upward with the
//! recurrences Γ(x+1) = xΓ(x), ψ(x+1) = ψ(x) + 1/x and ψ′(x+1) = ψ′(x) − 1/x²,
//! then the Bernoulli-number asymptotic series is summed.

use crate::error::{Error, Result};
use crate::scalar::{lit, to_f64, Real};

const ASYMPTOTIC_THRESHOLD: f64 = 10.0;

/// B_{2k} / (2k(2k−1)), k = 1..7: Stirling series coefficients for ln Γ.
const LOG_GAMMA_SERIES: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
];

/// B_{2k} / (2k), k = 1..7.
const DIGAMMA_SERIES: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32_760.0,
    1.0 / 12.0,
];

/// B_{2k}, k = 1..7.
const TRIGAMMA_SERIES: [f64; 7] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
];

fn check_positive<T: Real>(function: &'static str, x: T) -> Result<()> {
    if x.is_finite() && x > T::zero() {
        Ok(())
    } else {
        Err(Error::Domain { function, value: to_f64(x), expected: "finite and > 0" })
    }
}

/// Sums Σ c_k · t^k for k = 1..=len, with `t` the series variable.
fn series<T: Real>(coeffs: &[f64], t: T) -> T {
    coeffs.iter().rev().fold(T::zero(), |acc, &c| (acc + lit::<T>(c)) * t)
}

/// ln Γ(x) for x > 0.
pub fn log_gamma<T: Real>(x: T) -> Result<T> {
    check_positive("log_gamma", x)?;
    let threshold = lit::<T>(ASYMPTOTIC_THRESHOLD);
    let mut z = x;
    let mut product = T::one();
    while z < threshold {
        product = product * z;
        z = z + T::one();
    }
    let half = lit::<T>(0.5);
    let half_ln_two_pi = lit::<T>(0.918_938_533_204_672_8);
    let inv = z.recip();
    let stirling = (z - half) * z.ln() - z + half_ln_two_pi + series(&LOG_GAMMA_SERIES, inv * inv) * z;
    Ok(stirling - product.ln())
}

/// ln B(a, b) = ln Γ(a) + ln Γ(b) − ln Γ(a+b).
pub fn log_beta<T: Real>(a: T, b: T) -> Result<T> {
    Ok(log_gamma(a)? + log_gamma(b)? - log_gamma(a + b)?)
}

/// Digamma ψ(x) = d/dx ln Γ(x) for x > 0.
pub fn digamma<T: Real>(x: T) -> Result<T> {
    check_positive("digamma", x)?;
    let threshold = lit::<T>(ASYMPTOTIC_THRESHOLD);
    let mut z = x;
    let mut shift = T::zero();
    while z < threshold {
        shift = shift + z.recip();
        z = z + T::one();
    }
    let inv2 = (z * z).recip();
    Ok(z.ln() - lit::<T>(0.5) / z - series(&DIGAMMA_SERIES, inv2) - shift)
}

/// Trigamma ψ′(x) for x > 0.
pub fn trigamma<T: Real>(x: T) -> Result<T> {
    check_positive("trigamma", x)?;
    let threshold = lit::<T>(ASYMPTOTIC_THRESHOLD);
    let mut z = x;
    let mut shift = T::zero();
    while z < threshold {
        shift = shift + (z * z).recip();
        z = z + T::one();
    }
    let inv = z.recip();
    let inv2 = inv * inv;
    Ok(shift + inv + lit::<T>(0.5) * inv2 + inv * series(&TRIGAMMA_SERIES, inv2))
}

/// ln x − ψ(x), summed from its asymptotic series for large x where the
/// direct difference cancels.
pub fn log_minus_digamma<T: Real>(x: T) -> Result<T> {
    check_positive("log_minus_digamma", x)?;
    if x < lit(ASYMPTOTIC_THRESHOLD) {
        return Ok(x.ln() - digamma(x)?);
    }
    Ok(lit::<T>(0.5) / x + series(&DIGAMMA_SERIES, (x * x).recip()))
}

/// ψ′(x) − 1/x, the negated derivative of [`log_minus_digamma`].
pub fn trigamma_minus_inv<T: Real>(x: T) -> Result<T> {
    check_positive("trigamma_minus_inv", x)?;
    if x < lit(ASYMPTOTIC_THRESHOLD) {
        return Ok(trigamma(x)? - x.recip());
    }
    let inv = x.recip();
    let inv2 = inv * inv;
    Ok(lit::<T>(0.5) * inv2 + inv * series(&TRIGAMMA_SERIES, inv2))
}
