use crate::distributions::{BetaParams, GammaParams};
use crate::error::{Error, Result};
use crate::quadrature::{QuadratureRule, DEFAULT_NODES};
use crate::scalar::{lit, to_f64, Real};
use crate::special::{log_beta, log_gamma};

use super::residuals::ModifiedFamily;

const PANEL_NODES: usize = 16;
const PANEL_WIDTH: f64 = 0.5;

/// Quadrature estimates of the expected estimating functions at the true
/// parameter point. Both components vanish analytically when the
/// score-expectation condition holds.
///
/// Power gamma: with U = (φ/λ) X^α₀ ~ Gamma(φ, 1), integrate over t = ln U on
/// a composite Gauss–Legendre grid, which keeps the ln X terms smooth.
/// Beta: X(1−X)·ψ(X) is a polynomial, so a Gauss–Jacobi rule for the weight
/// x^{α−2}(1−x)^{β−2} is exact; requires α > 1 and β > 1.
pub fn verify_score_zero<T: Real>(family: ModifiedFamily<T>, params: [T; 2]) -> Result<[T; 2]> {
    match family {
        ModifiedFamily::PowerGamma { alpha0 } => {
            if !(alpha0 > T::zero()) {
                return Err(Error::InvalidParameter { name: "alpha0", value: to_f64(alpha0), requirement: "> 0" });
            }
            let p = GammaParams::new(params[0], params[1])?;
            let res = power_gamma_scores(to_f64(p.lambda()), to_f64(p.phi()), to_f64(alpha0))?;
            Ok([lit(res[0]), lit(res[1])])
        }
        ModifiedFamily::Beta => {
            let p = BetaParams::new(params[0], params[1])?;
            let (a, b) = (to_f64(p.alpha()), to_f64(p.beta()));
            if !(a > 1.0 && b > 1.0) {
                return Err(Error::Domain {
                    function: "verify_score_zero",
                    value: a.min(b),
                    expected: "alpha > 1 and beta > 1 (finite E[1/X], E[1/(1-X)])",
                });
            }
            let rule = QuadratureRule::<f64>::gauss_jacobi(DEFAULT_NODES, a - 2.0, b - 2.0)?;
            let norm = log_beta(a, b)?.exp();
            let total = a + b - 1.0;
            let e1 = rule.integrate(|x| (-(a - 1.0) * (1.0 - x) + total * x * (1.0 - x)) / norm)?;
            let e2 = rule.integrate(|x| ((b - 1.0) * x - total * x * (1.0 - x)) / norm)?;
            Ok([lit(e1), lit(e2)])
        }
    }
}

fn power_gamma_scores(lambda: f64, phi: f64, alpha0: f64) -> Result<[f64; 2]> {
    let rate = phi / lambda;
    let log_norm = log_gamma(phi)?;
    // density of t = ln U is exp(φt − eᵗ)/Γ(φ); trim where it drops below e^{-45}
    let lo = phi.ln() - 45.0 / phi;
    let hi = (phi + 60.0 + 15.0 * phi.sqrt()).ln();
    let panels = ((hi - lo) / PANEL_WIDTH).ceil() as usize;
    let rule = QuadratureRule::<f64>::composite_legendre(PANEL_NODES, lo, hi, panels)?;
    let density = |t: f64| (phi * t - t.exp() - log_norm).exp();
    let e_lambda = rule.integrate(|t| {
        let u = t.exp();
        density(t) * (-phi / lambda + phi / (lambda * lambda) * (u / rate))
    })?;
    let e_alpha = rule.integrate(|t| {
        let u = t.exp();
        let log_x = (t - rate.ln()) / alpha0;
        density(t) * (alpha0.recip() + log_x * (phi - u))
    })?;
    Ok([e_lambda, e_alpha])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_reference_point() {
        let [e1, e2] = verify_score_zero(ModifiedFamily::PowerGamma { alpha0: 1.0f64 }, [1.5, 2.0]).unwrap();
        assert!(e1.abs() <= 1e-8, "{e1}");
        assert!(e2.abs() <= 1e-6, "{e2}");
    }

    #[test]
    fn nakagami_reference_point() {
        let e = verify_score_zero(ModifiedFamily::PowerGamma { alpha0: 2.0f64 }, [10.0, 4.0]).unwrap();
        assert!(e[0].abs() <= 1e-6 && e[1].abs() <= 1e-6, "{e:?}");
    }

    #[test]
    fn beta_reference_point() {
        let e = verify_score_zero(ModifiedFamily::Beta, [3.0f64, 2.5]).unwrap();
        assert!(e[0].abs() <= 1e-6 && e[1].abs() <= 1e-6, "{e:?}");
    }

    #[test]
    fn small_shapes() {
        for phi in [0.05f64, 0.3, 1.0] {
            let e = verify_score_zero(ModifiedFamily::PowerGamma { alpha0: 3.0 }, [0.7, phi]).unwrap();
            assert!(e[0].abs() <= 1e-8 && e[1].abs() <= 1e-8, "phi={phi}: {e:?}");
        }
    }

    #[test]
    fn beta_needs_finite_inverse_moments() {
        assert!(verify_score_zero(ModifiedFamily::Beta, [1.0, 3.0]).is_err());
        assert!(verify_score_zero(ModifiedFamily::Beta, [3.0, 0.5]).is_err());
    }
}
