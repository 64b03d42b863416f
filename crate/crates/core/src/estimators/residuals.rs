use serde::{Deserialize, Serialize};

use crate::distributions::{BetaParams, GammaParams, SampleBatch, Support};
use crate::error::{Error, Result};
use crate::scalar::{compensated_sum, lit, to_f64, Real};

/// Embedding used to build the modified equations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModifiedFamily<T> {
    /// Generalized gamma at power α₀; equations in (λ, α).
    PowerGamma { alpha0: T },
    /// Four-parameter beta at (a, c) = (0, 1); equations in (a, c).
    Beta,
}

fn require_support<T: Real>(sample: &SampleBatch<T>, support: Support) -> Result<()> {
    match sample.values().iter().position(|&x| !support.contains(x)) {
        Some(index) => Err(Error::OutOfSupport { index, value: to_f64(sample.values()[index]), support: support.name() }),
        None => Ok(()),
    }
}

/// Left-hand sides of the modified likelihood equations at `params`, each
/// divided by n.
///
/// Power gamma (params = (λ, φ)):
///   (1/n) Σ ∂λ log g = −φ/λ + (φ/λ²)·mean(X^α₀),
///   (1/n) Σ ∂α log g = 1/α₀ + φ·mean(ln X) − (φ/λ)·mean(X^α₀ ln X).
/// Beta (params = (α, β)):
///   (1/n) Σ ∂a log g = −(α−1)·mean(1/X) + (α+β−1),
///   (1/n) Σ ∂c log g = (β−1)·mean(1/(1−X)) − (α+β−1).
pub fn modified_eq_residuals<T: Real>(family: ModifiedFamily<T>, params: [T; 2], sample: &SampleBatch<T>) -> Result<[T; 2]> {
    let nf = lit::<T>(sample.len() as f64);
    let mean = |f: &dyn Fn(T) -> T| compensated_sum(sample.values().iter().map(|&x| f(x))) / nf;
    match family {
        ModifiedFamily::PowerGamma { alpha0 } => {
            if !(alpha0 > T::zero()) {
                return Err(Error::InvalidParameter { name: "alpha0", value: to_f64(alpha0), requirement: "> 0" });
            }
            let p = GammaParams::new(params[0], params[1])?;
            require_support(sample, Support::Positive)?;
            let (lambda, phi) = (p.lambda(), p.phi());
            let mean_pow = mean(&|x| x.powf(alpha0));
            let mean_log = mean(&|x| x.ln());
            let mean_pow_log = mean(&|x| x.powf(alpha0) * x.ln());
            Ok([
                -phi / lambda + phi / (lambda * lambda) * mean_pow,
                alpha0.recip() + phi * mean_log - phi / lambda * mean_pow_log,
            ])
        }
        ModifiedFamily::Beta => {
            let p = BetaParams::new(params[0], params[1])?;
            require_support(sample, Support::UnitInterval)?;
            let one = T::one();
            let (a, b) = (p.alpha(), p.beta());
            let total = a + b - one;
            Ok([
                -(a - one) * mean(&|x| x.recip()) + total,
                (b - one) * mean(&|x| (one - x).recip()) - total,
            ])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::estimators::{mmle_beta, mmle_power_gamma};
    use std::f64::consts::E;

    #[test]
    fn residuals_vanish_at_hand_examples() {
        let s = SampleBatch::new(vec![1.0, E], Support::Positive).unwrap();
        let est = mmle_power_gamma(&s, 1.0).unwrap().params.values;
        let r = modified_eq_residuals(ModifiedFamily::PowerGamma { alpha0: 1.0 }, est, &s).unwrap();
        assert!(r[0].abs() < 1e-10 && r[1].abs() < 1e-10, "{r:?}");

        let b = SampleBatch::new(vec![1.0f64 / 3.0, 2.0 / 3.0], Support::UnitInterval).unwrap();
        let r = modified_eq_residuals(ModifiedFamily::Beta, [5.0, 5.0], &b).unwrap();
        assert!(r[0].abs() < 1e-10 && r[1].abs() < 1e-10, "{r:?}");
        let est = mmle_beta(&b).unwrap().params.values;
        let r = modified_eq_residuals(ModifiedFamily::Beta, est, &b).unwrap();
        assert!(r[0].abs() < 1e-10 && r[1].abs() < 1e-10, "{r:?}");
    }

    #[test]
    fn lambda_equation_has_a_unique_root() {
        let s = SampleBatch::new(vec![0.4f64, 1.3, 2.2, 0.9], Support::Positive).unwrap();
        let [lambda, phi] = mmle_power_gamma(&s, 1.0).unwrap().params.values;
        let r = modified_eq_residuals(ModifiedFamily::PowerGamma { alpha0: 1.0 }, [2.0 * lambda, phi], &s).unwrap();
        // −φ/(2λ) + φ/(4λ) = −φ/(4λ)
        assert!((r[0] + phi / (4.0 * lambda)).abs() < 1e-12);
    }

    #[test]
    fn residual_domain_errors() {
        let b = SampleBatch::new(vec![0.2, 0.7], Support::UnitInterval).unwrap();
        let s = SampleBatch::new(vec![0.2, 1.7], Support::Positive).unwrap();
        assert!(modified_eq_residuals(ModifiedFamily::Beta, [2.0, 2.0], &s).is_err());
        assert!(modified_eq_residuals(ModifiedFamily::Beta, [-1.0, 2.0], &b).is_err());
        assert!(modified_eq_residuals(ModifiedFamily::PowerGamma { alpha0: 1.0 }, [0.0, 2.0], &b).is_err());
    }
}
