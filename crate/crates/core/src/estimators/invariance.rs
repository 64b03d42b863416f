use crate::error::{Error, Result};
use crate::scalar::{to_f64, Real};

use super::report::EstimateReport;

/// A scalar bijection and its inverse, applied to one parameter component.
#[derive(Debug, Clone, Copy)]
pub struct ComponentMap<T> {
    pub forward: fn(T) -> T,
    pub inverse: fn(T) -> T,
}

impl<T: Real> ComponentMap<T> {
    pub fn identity() -> Self {
        Self { forward: |x| x, inverse: |x| x }
    }

    /// ln on (0, ∞), exp back.
    pub fn log() -> Self {
        Self { forward: T::ln, inverse: T::exp }
    }
}

fn apply<T: Real>(values: [T; 2], f: [fn(T) -> T; 2]) -> Result<[T; 2]> {
    let out = [f[0](values[0]), f[1](values[1])];
    for (i, v) in out.iter().enumerate() {
        if !v.is_finite() {
            return Err(Error::Domain { function: "invariance_map", value: to_f64(values[i]), expected: "inside the map's domain" });
        }
    }
    Ok(out)
}

/// Applies the product map π = (π₁, π₂) componentwise to the estimates.
pub fn invariance_map<T: Real>(report: &EstimateReport<T>, maps: &[ComponentMap<T>; 2]) -> Result<[T; 2]> {
    apply(report.params.values, [maps[0].forward, maps[1].forward])
}

/// Applies π⁻¹ componentwise.
pub fn invert_components<T: Real>(values: [T; 2], maps: &[ComponentMap<T>; 2]) -> Result<[T; 2]> {
    apply(values, [maps[0].inverse, maps[1].inverse])
}
