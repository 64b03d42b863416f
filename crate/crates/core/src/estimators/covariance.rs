//! J and K matrices of the modified estimating equations and the resulting
//! sandwich covariance (J⁻¹)ᵀ K J⁻¹.
//!
//! J is the expected negative cross-derivative of log g between the target
//! parameters (rows) and the equation parameters (columns); K is the
//! covariance of the estimating functions.

use serde::{Deserialize, Serialize};

use crate::distributions::{BetaParams, GammaParams};
use crate::error::{Error, Result};
use crate::linalg::Mat2;
use crate::scalar::{lit, to_f64, Real};
use crate::special::{digamma, trigamma};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MatrixPair<T> {
    pub j: Mat2<T>,
    pub k: Mat2<T>,
}

/// J and K of the generalized-gamma embedding at α₀ = 1, with the equations
/// taken in (λ, α) and the targets (λ, φ).
pub fn jk_matrices_power_gamma<T: Real>(params: &GammaParams<T>) -> Result<MatrixPair<T>> {
    let (lambda, phi) = (params.lambda(), params.phi());
    let one = T::one();
    let two = lit::<T>(2.0);
    let log_rate = (phi / lambda).ln();
    let psi = digamma(phi)?;
    let cross = (phi * log_rate - phi * psi - one) / lambda;
    let i_alpha = log_rate * (phi * log_rate - two * phi * psi - two) + phi * trigamma(phi)? + two * psi + phi * psi * psi + one;
    let i_lambda = phi / (lambda * lambda);
    Ok(MatrixPair {
        j: Mat2::new(i_lambda, cross, T::zero(), phi.recip()),
        k: Mat2::new(i_lambda, cross, cross, i_alpha),
    })
}

/// J and K of the four-parameter beta embedding at (a, c) = (0, 1).
/// K exists only for α > 2 and β > 2.
pub fn jk_matrices_beta<T: Real>(alpha: T, beta: T) -> Result<MatrixPair<T>> {
    let two = lit::<T>(2.0);
    for v in [alpha, beta] {
        if !(v > two) || !v.is_finite() {
            return Err(Error::Domain { function: "jk_matrices_beta", value: to_f64(v), expected: "alpha > 2 and beta > 2" });
        }
    }
    let one = T::one();
    let s = alpha + beta - one;
    Ok(MatrixPair {
        j: Mat2::new(beta / (alpha - one), -one, one, -alpha / (beta - one)),
        k: Mat2::new(beta * s / (alpha - two), s, s, alpha * s / (beta - two)),
    })
}

/// (J⁻¹)ᵀ K J⁻¹.
pub fn sandwich_covariance<T: Real>(pair: &MatrixPair<T>) -> Result<Mat2<T>> {
    let j_inv = pair.j.inverse()?;
    Ok(j_inv.transpose() * pair.k * j_inv)
}

/// diag(λ²/φ, φ³ ψ′(φ+1) + φ²): asymptotic covariance of the power-gamma
/// closed-form estimates.
pub fn power_gamma_avar<T: Real>(lambda: T, phi: T) -> Result<Mat2<T>> {
    GammaParams::new(lambda, phi)?;
    let phi2 = phi * phi;
    Ok(Mat2::diag(lambda * lambda / phi, phi2 * phi * trigamma(phi + T::one())? + phi2))
}

/// Q(y, z) = y(y−1)²(4yz² − 6z² − 10yz + 5y + 16z − 10) / ((y−2)(z−2)(y+z−1)),
/// the diagonal of the beta sandwich: Q(α, β) for α̂ and Q(β, α) for β̂.
pub fn beta_avar_q<T: Real>(y: T, z: T) -> T {
    let c = |v: f64| lit::<T>(v);
    let num = y * (y - T::one()).powi(2)
        * (c(4.0) * y * z * z - c(6.0) * z * z - c(10.0) * y * z + c(5.0) * y + c(16.0) * z - c(10.0));
    num / ((y - c(2.0)) * (z - c(2.0)) * (y + z - T::one()))
}

/// Covariance of √n(θ̂ − θ) for the beta closed form obtained by linearizing
/// the estimating equations directly: D⁻¹ K D⁻ᵀ with D = E[∂ψ/∂θ].
///
/// The beta J above carries its off-diagonal terms in the opposite
/// orientation to the gamma one, so this differs from
/// [`sandwich_covariance`] of [`jk_matrices_beta`]; Monte Carlo variances of
/// the beta estimates follow this matrix.
pub fn beta_linearized_covariance<T: Real>(params: &BetaParams<T>) -> Result<Mat2<T>> {
    let pair = jk_matrices_beta(params.alpha(), params.beta())?;
    let j_inv = pair.j.inverse()?;
    Ok(j_inv * pair.k * j_inv.transpose())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use proptest::prelude::*;

    const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

    #[test]
    fn gamma_jk_at_unit_point() {
        let pair = jk_matrices_power_gamma(&GammaParams::new(1.0, 1.0).unwrap()).unwrap();
        assert_abs_diff_eq!(pair.j[(0, 0)], 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(pair.j[(1, 1)], 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(pair.j[(0, 1)], EULER_GAMMA - 1.0, epsilon = 1e-13);
        assert_eq!(pair.j[(1, 0)], 0.0);
        let s = sandwich_covariance(&pair).unwrap();
        assert_abs_diff_eq!(s[(0, 0)], 1.0, epsilon = 1e-12);
    }

    #[test]
    fn gamma_sandwich_reference_point() {
        let pair = jk_matrices_power_gamma(&GammaParams::new(1.5, 2.0).unwrap()).unwrap();
        let s = sandwich_covariance(&pair).unwrap();
        assert_abs_diff_eq!(s[(0, 0)], 1.125, epsilon = 1e-12);
        assert_abs_diff_eq!(s[(1, 1)], 7.159_472_534_785_811, epsilon = 1e-9);
        assert_abs_diff_eq!(s[(0, 1)], 0.0, epsilon = 1e-12);
    }

    #[test]
    fn beta_jk_reference_point() {
        let pair = jk_matrices_beta(3.0, 3.0).unwrap();
        assert_eq!(pair.j, Mat2::new(1.5, -1.0, 1.0, -1.5));
        assert_eq!(pair.j.det(), -1.25);
        let s = sandwich_covariance(&pair).unwrap();
        assert_relative_eq!(s[(0, 0)], 40.8, max_relative = 1e-12);
        assert_relative_eq!(beta_avar_q(3.0, 3.0), 40.8, max_relative = 1e-14);
    }

    #[test]
    fn beta_jk_domain() {
        assert!(matches!(jk_matrices_beta(2.0, 3.0), Err(Error::Domain { .. })));
        assert!(jk_matrices_beta(3.0, 1.5).is_err());
        assert!(jk_matrices_beta(f64::INFINITY, 3.0).is_err());
    }

    #[test]
    fn linearized_beta_covariance_reference() {
        // α = 3, β = 2.5: J⁻¹ K J⁻ᵀ = [[24, 18], [18, 18.75]]
        let m = beta_linearized_covariance(&BetaParams::new(3.0, 2.5).unwrap()).unwrap();
        assert_relative_eq!(m[(0, 0)], 24.0, max_relative = 1e-12);
        assert_relative_eq!(m[(0, 1)], 18.0, max_relative = 1e-12);
        assert_relative_eq!(m[(1, 1)], 18.75, max_relative = 1e-12);
    }

    proptest! {
        #[test]
        fn gamma_det_and_symmetry(lambda in 0.05f64..20.0, phi in 0.05f64..20.0) {
            let pair = jk_matrices_power_gamma(&GammaParams::new(lambda, phi).unwrap()).unwrap();
            prop_assert!((pair.j.det() - 1.0 / (lambda * lambda)).abs() <= 1e-12 * (1.0 / (lambda * lambda)).max(1.0));
            prop_assert_eq!(pair.j[(1, 0)], 0.0);
            prop_assert!(pair.k.is_symmetric(0.0));
        }

        #[test]
        fn beta_k_symmetric(alpha in 2.01f64..50.0, beta in 2.01f64..50.0) {
            let pair = jk_matrices_beta(alpha, beta).unwrap();
            prop_assert!(pair.k.is_symmetric(0.0));
            prop_assert!(pair.j.det().abs() > 0.0);
        }
    }
}
