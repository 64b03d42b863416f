//! Seeded random variates. Every sampler is a pure function of its
//! parameters, `n` and a 64-bit seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::scalar::{lit, to_f64, Real};

use super::{BetaParams, GammaParams, NakagamiParams, SampleBatch, Support};

/// Portable, seedable stream used by all samplers.
pub type SeededRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Unit-scale gamma variate with the given shape (Marsaglia–Tsang squeeze,
/// boosted through Gamma(shape + 1) · U^{1/shape} when shape < 1).
pub fn standard_gamma<R: Rng + ?Sized>(rng: &mut R, shape: f64) -> f64 {
    if shape < 1.0 {
        let boosted = standard_gamma(rng, shape + 1.0);
        let u: f64 = rng.random();
        return boosted * u.powf(shape.recip());
    }
    let d = shape - 1.0 / 3.0;
    let c = (9.0 * d).sqrt().recip();
    loop {
        let (x, v) = loop {
            let x: f64 = rng.sample(StandardNormal);
            let v = 1.0 + c * x;
            if v > 0.0 {
                break (x, v * v * v);
            }
        };
        let u: f64 = rng.random();
        let x2 = x * x;
        if u < 1.0 - 0.0331 * x2 * x2 || u.ln() < 0.5 * x2 + d * (1.0 - v + v.ln()) {
            return d * v;
        }
    }
}

fn draw<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize, support: Support, mut one: impl FnMut(&mut R) -> f64) -> Result<SampleBatch<T>> {
    if n == 0 {
        return Err(Error::InsufficientData { required: 1, got: 0 });
    }
    let mut values = Vec::with_capacity(n);
    while values.len() < n {
        // underflow to 0 (tiny shapes) or rounding to 1 (beta) is redrawn
        let x: T = lit(one(rng));
        if support.contains(x) {
            values.push(x);
        }
    }
    SampleBatch::new(values, support)
}

fn gamma_draw<R: Rng + ?Sized>(rng: &mut R, params: &GammaParams<f64>) -> f64 {
    standard_gamma(rng, params.phi()) / params.rate()
}

fn to_f64_gamma<T: Real>(params: &GammaParams<T>) -> GammaParams<f64> {
    GammaParams::new(to_f64(params.lambda()), to_f64(params.phi())).expect("validated parameters")
}

/// n draws from the gamma law with mean λ and shape φ.
pub fn sample_gamma<T: Real>(params: &GammaParams<T>, n: usize, seed: u64) -> Result<SampleBatch<T>> {
    let p = to_f64_gamma(params);
    draw(&mut rng_from_seed(seed), n, Support::Positive, |rng| gamma_draw(rng, &p))
}

/// Square roots of gamma draws.
pub fn sample_nakagami<T: Real>(params: &NakagamiParams<T>, n: usize, seed: u64) -> Result<SampleBatch<T>> {
    let p = to_f64_gamma(&params.squared());
    draw(&mut rng_from_seed(seed), n, Support::Positive, |rng| gamma_draw(rng, &p).sqrt())
}

/// Cube roots of gamma draws.
pub fn sample_wilson_hilferty<T: Real>(params: &GammaParams<T>, n: usize, seed: u64) -> Result<SampleBatch<T>> {
    let p = to_f64_gamma(params);
    draw(&mut rng_from_seed(seed), n, Support::Positive, |rng| gamma_draw(rng, &p).cbrt())
}

/// G₁ / (G₁ + G₂) with unit-scale gamma draws of shapes α and β.
pub fn sample_beta<T: Real>(params: &BetaParams<T>, n: usize, seed: u64) -> Result<SampleBatch<T>> {
    let (a, b) = (to_f64(params.alpha()), to_f64(params.beta()));
    draw(&mut rng_from_seed(seed), n, Support::UnitInterval, |rng| {
        let g1 = standard_gamma(rng, a);
        let g2 = standard_gamma(rng, b);
        g1 / (g1 + g2)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mean_var(xs: &[f64]) -> (f64, f64) {
        let n = xs.len() as f64;
        let m = xs.iter().sum::<f64>() / n;
        (m, xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1.0))
    }

    #[test]
    fn deterministic_under_seed() {
        let p = GammaParams::new(1.5, 2.0).unwrap();
        let a = sample_gamma::<f64>(&p, 100, 7).unwrap();
        let b = sample_gamma::<f64>(&p, 100, 7).unwrap();
        let c = sample_gamma::<f64>(&p, 100, 8).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        let beta = BetaParams::new(3.0, 2.5).unwrap();
        assert_eq!(sample_beta::<f64>(&beta, 50, 1).unwrap(), sample_beta::<f64>(&beta, 50, 1).unwrap());
    }

    #[test]
    fn gamma_moments() {
        let p = GammaParams::new(1.5, 2.0).unwrap();
        let s = sample_gamma::<f64>(&p, 200_000, 2024).unwrap();
        let (m, v) = mean_var(s.values());
        assert!((m - 1.5).abs() < 0.01, "mean {m}");
        assert!((v - 1.125).abs() < 0.02, "variance {v}");
    }

    #[test]
    fn small_shape_boost() {
        let p = GammaParams::new(2.0, 0.3).unwrap();
        let s = sample_gamma::<f64>(&p, 200_000, 5).unwrap();
        let (m, v) = mean_var(s.values());
        // variance λ²/φ = 13.33
        assert!((m - 2.0).abs() < 4.0 * (4.0 / 0.3 / 200_000f64).sqrt(), "mean {m}");
        assert!((v / (4.0 / 0.3) - 1.0).abs() < 0.05, "variance {v}");
    }

    #[test]
    fn transformed_samplers_match_their_gamma_law() {
        let naka = NakagamiParams::new(10.0, 4.0).unwrap();
        let s = sample_nakagami::<f64>(&naka, 100_000, 3).unwrap();
        let sq: Vec<f64> = s.values().iter().map(|x| x * x).collect();
        let (m, _) = mean_var(&sq);
        assert!((m - 10.0).abs() < 4.0 * (100.0 / 4.0 / 100_000f64).sqrt());

        let wh = GammaParams::new(2.0, 3.0).unwrap();
        let s = sample_wilson_hilferty::<f64>(&wh, 100_000, 4).unwrap();
        let cubes: Vec<f64> = s.values().iter().map(|x| x.powi(3)).collect();
        let (m, _) = mean_var(&cubes);
        assert!((m - 2.0).abs() < 4.0 * (4.0 / 3.0 / 100_000f64).sqrt());

        let beta = BetaParams::new(3.0, 2.5).unwrap();
        let s = sample_beta::<f64>(&beta, 100_000, 9).unwrap();
        let (m, v) = mean_var(s.values());
        let (mean, var) = (3.0 / 5.5, 3.0 * 2.5 / (5.5f64.powi(2) * 6.5));
        assert!((m - mean).abs() < 4.0 * (var / 100_000f64).sqrt());
        assert!((v / var - 1.0).abs() < 0.03);
    }

    #[test]
    fn every_draw_is_inside_support() {
        let beta = BetaParams::new(0.05, 0.05).unwrap();
        let s = sample_beta::<f32>(&beta, 2000, 11).unwrap();
        assert!(s.values().iter().all(|&x| x > 0.0 && x < 1.0));
        let tiny = GammaParams::new(1.0, 0.02).unwrap();
        let s = sample_gamma::<f64>(&tiny, 2000, 12).unwrap();
        assert!(s.values().iter().all(|&x| x > 0.0));
        assert!(sample_gamma::<f64>(&tiny, 0, 1).is_err());
    }
}
