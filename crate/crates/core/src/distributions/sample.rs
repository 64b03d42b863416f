use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{lit, to_f64, Real};

/// Relative spread below which a sample counts as degenerate.
pub const DEGENERACY_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Support {
    /// (0, ∞)
    Positive,
    /// (0, 1)
    UnitInterval,
}

impl Support {
    pub fn contains<T: Real>(&self, x: T) -> bool {
        match self {
            Support::Positive => x > T::zero() && x.is_finite(),
            Support::UnitInterval => x > T::zero() && x < T::one(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Support::Positive => "positive",
            Support::UnitInterval => "unit-interval",
        }
    }
}

/// Observations validated against a support, with a degeneracy flag.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleBatch<T> {
    values: Vec<T>,
    support: Support,
    degenerate: bool,
}

impl<T: Real> SampleBatch<T> {
    /// Fails with [`Error::OutOfSupport`] naming the first offending index.
    pub fn new(values: Vec<T>, support: Support) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InsufficientData { required: 1, got: 0 });
        }
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, x)| !support.contains(**x)) {
            return Err(Error::OutOfSupport { index, value: to_f64(value), support: support.name() });
        }
        let (lo, hi) = values
            .iter()
            .fold((values[0], values[0]), |(lo, hi), &x| (lo.min(x), hi.max(x)));
        let degenerate = hi - lo <= lit::<T>(DEGENERACY_TOLERANCE) * hi.abs().max(lo.abs());
        Ok(Self { values, support, degenerate })
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn support(&self) -> Support {
        self.support
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    /// Elementwise xᵖ; stays on the positive axis.
    pub fn powf(&self, power: T) -> Result<Self> {
        Self::new(self.values.iter().map(|&x| x.powf(power)).collect(), Support::Positive)
    }

    /// Elementwise c·x.
    pub fn scaled(&self, c: T) -> Result<Self> {
        Self::new(self.values.iter().map(|&x| c * x).collect(), self.support)
    }

    /// Elementwise 1 − x for unit-interval samples.
    pub fn reflected(&self) -> Result<Self> {
        Self::new(self.values.iter().map(|&x| T::one() - x).collect(), self.support)
    }
}
