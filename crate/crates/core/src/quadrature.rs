//! Gauss quadrature rules used to check expectation identities numerically.
//!
//! Nodes are the eigenvalues of the Jacobi (recurrence) matrix; weights are
//! Christoffel numbers μ₀ / Σₖ p̂ₖ(xᵢ)², evaluated with the orthonormal
//! three-term recurrence so that tiny tail weights stay positive.

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{lit, to_f64, Real};
use crate::special::log_gamma;

/// Default node count for every rule.
pub const DEFAULT_NODES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RuleKind {
    /// Weight 1 on a finite interval.
    Legendre,
    /// Weight xᵃ e^{−x} on (0, ∞).
    Laguerre,
    /// Weight tᵖ (1−t)^q on (0, 1).
    Jacobi,
}

/// A quadrature rule: `∫ w(x) f(x) dx ≈ Σ wᵢ f(xᵢ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule<T> {
    nodes: Vec<T>,
    weights: Vec<T>,
    kind: RuleKind,
}

struct Recurrence {
    diag: Vec<f64>,
    off: Vec<f64>,
    mass: f64,
}

fn check_order(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::Config(format!("quadrature needs at least 2 nodes, got {n}")));
    }
    Ok(())
}

fn gauss_from_recurrence(rec: &Recurrence) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = rec.diag.len();
    let mut jacobi = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        jacobi[(i, i)] = rec.diag[i];
        if i + 1 < n {
            jacobi[(i, i + 1)] = rec.off[i];
            jacobi[(i + 1, i)] = rec.off[i];
        }
    }
    let mut nodes: Vec<f64> = SymmetricEigen::new(jacobi).eigenvalues.iter().copied().collect();
    nodes.sort_by(|a, b| a.total_cmp(b));

    let weights = nodes
        .iter()
        .map(|&x| {
            // orthonormal polynomials for the unit-mass measure
            let mut prev = 0.0;
            let mut cur = 1.0;
            let mut norm = 1.0;
            for k in 0..n - 1 {
                let b_prev = if k == 0 { 0.0 } else { rec.off[k - 1] };
                let next = ((x - rec.diag[k]) * cur - b_prev * prev) / rec.off[k];
                prev = cur;
                cur = next;
                norm += cur * cur;
            }
            rec.mass / norm
        })
        .collect::<Vec<_>>();

    if nodes.windows(2).any(|w| !(w[0] < w[1])) || weights.iter().any(|&w| !(w > 0.0 && w.is_finite())) {
        return Err(Error::Config("quadrature construction lost node ordering or weight positivity".into()));
    }
    Ok((nodes, weights))
}

impl<T: Real> QuadratureRule<T> {
    fn from_f64(nodes: Vec<f64>, weights: Vec<f64>, kind: RuleKind) -> Self {
        Self {
            nodes: nodes.into_iter().map(lit).collect(),
            weights: weights.into_iter().map(lit).collect(),
            kind,
        }
    }

    /// n-point Gauss–Legendre rule on [−1, 1].
    pub fn gauss_legendre(n: usize) -> Result<Self> {
        check_order(n)?;
        let rec = Recurrence {
            diag: vec![0.0; n],
            off: (1..n).map(|k| {
                let k = k as f64;
                k / (4.0 * k * k - 1.0).sqrt()
            }).collect(),
            mass: 2.0,
        };
        let (nodes, weights) = gauss_from_recurrence(&rec)?;
        Ok(Self::from_f64(nodes, weights, RuleKind::Legendre))
    }

    /// n-point Gauss–Legendre rule mapped onto [lo, hi].
    pub fn gauss_legendre_on(n: usize, lo: T, hi: T) -> Result<Self> {
        Self::composite_legendre(n, lo, hi, 1)
    }

    /// `panels` equal-width copies of an n-point Gauss–Legendre rule on [lo, hi].
    pub fn composite_legendre(n: usize, lo: T, hi: T, panels: usize) -> Result<Self> {
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() || panels == 0 {
            return Err(Error::Config(format!(
                "composite rule needs finite lo < hi and panels ≥ 1 (got [{lo}, {hi}], {panels})"
            )));
        }
        let base = QuadratureRule::<f64>::gauss_legendre(n)?;
        let (lo, hi) = (to_f64(lo), to_f64(hi));
        let width = (hi - lo) / panels as f64;
        let mut nodes = Vec::with_capacity(n * panels);
        let mut weights = Vec::with_capacity(n * panels);
        for p in 0..panels {
            let a = lo + width * p as f64;
            let half = 0.5 * width;
            for (&x, &w) in base.nodes.iter().zip(&base.weights) {
                nodes.push(a + half * (x + 1.0));
                weights.push(half * w);
            }
        }
        Ok(Self::from_f64(nodes, weights, RuleKind::Legendre))
    }

    /// n-point generalized Gauss–Laguerre rule for the weight xᵃ e^{−x}, a > −1.
    pub fn gauss_laguerre(n: usize, a: T) -> Result<Self> {
        check_order(n)?;
        let a = to_f64(a);
        if !(a > -1.0) || !a.is_finite() {
            return Err(Error::InvalidParameter { name: "laguerre exponent", value: a, requirement: "> -1" });
        }
        let rec = Recurrence {
            diag: (0..n).map(|k| 2.0 * k as f64 + 1.0 + a).collect(),
            off: (1..n).map(|k| {
                let k = k as f64;
                (k * (k + a)).sqrt()
            }).collect(),
            mass: log_gamma(a + 1.0)?.exp(),
        };
        let (nodes, weights) = gauss_from_recurrence(&rec)?;
        Ok(Self::from_f64(nodes, weights, RuleKind::Laguerre))
    }

    /// n-point Gauss–Jacobi rule for the weight tᵖ (1−t)^q on (0, 1), p, q > −1.
    pub fn gauss_jacobi(n: usize, p: T, q: T) -> Result<Self> {
        check_order(n)?;
        let (p, q) = (to_f64(p), to_f64(q));
        for (name, v) in [("jacobi exponent p", p), ("jacobi exponent q", q)] {
            if !(v > -1.0) || !v.is_finite() {
                return Err(Error::InvalidParameter { name, value: v, requirement: "> -1" });
            }
        }
        // Recurrence on [−1, 1] for (1−x)^q (1+x)^p, then t = (1+x)/2.
        let (al, be) = (q, p);
        let s = al + be;
        let diag = (0..n)
            .map(|k| {
                if k == 0 {
                    (be - al) / (s + 2.0)
                } else {
                    let m = 2.0 * k as f64 + s;
                    (be * be - al * al) / (m * (m + 2.0))
                }
            })
            .collect();
        let off = (1..n)
            .map(|k| {
                let kf = k as f64;
                let m = 2.0 * kf + s;
                if k == 1 {
                    (4.0 * (1.0 + al) * (1.0 + be) / ((2.0 + s).powi(2) * (3.0 + s))).sqrt()
                } else {
                    (4.0 * kf * (kf + al) * (kf + be) * (kf + s) / (m * m * (m + 1.0) * (m - 1.0))).sqrt()
                }
            })
            .collect();
        let mass = (log_gamma(p + 1.0)? + log_gamma(q + 1.0)? - log_gamma(p + q + 2.0)?).exp();
        let (nodes, weights) = gauss_from_recurrence(&Recurrence { diag, off, mass })?;
        let nodes = nodes.into_iter().map(|x| 0.5 * (1.0 + x)).collect();
        Ok(Self::from_f64(nodes, weights, RuleKind::Jacobi))
    }

    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn kind(&self) -> RuleKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Shorthand for [`expectation_quadrature`].
    pub fn integrate(&self, integrand: impl Fn(T) -> T) -> Result<T> {
        expectation_quadrature(integrand, self)
    }
}

/// Returns Σ wᵢ · integrand(xᵢ). Any weight-function correction is the
/// caller's job.
pub fn expectation_quadrature<T: Real>(integrand: impl Fn(T) -> T, rule: &QuadratureRule<T>) -> Result<T> {
    let mut acc = crate::scalar::CompensatedSum::default();
    for (index, (&x, &w)) in rule.nodes.iter().zip(&rule.weights).enumerate() {
        let fx = integrand(x);
        if !fx.is_finite() {
            return Err(Error::NonFiniteIntegrand { index, node: to_f64(x) });
        }
        acc.add(w * fx);
    }
    Ok(acc.value())
}
