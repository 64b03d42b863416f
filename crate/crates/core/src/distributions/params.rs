use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{lit, to_f64, Real};

fn require<T: Real>(name: &'static str, value: T, ok: bool, requirement: &'static str) -> Result<()> {
    if ok && value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter { name, value: to_f64(value), requirement })
    }
}

/// Gamma law with mean λ and shape φ: rate φ/λ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GammaParams<T> {
    lambda: T,
    phi: T,
}

impl<T: Real> GammaParams<T> {
    pub fn new(lambda: T, phi: T) -> Result<Self> {
        require("lambda", lambda, lambda > T::zero(), "> 0")?;
        require("phi", phi, phi > T::zero(), "> 0")?;
        Ok(Self { lambda, phi })
    }

    pub fn lambda(&self) -> T {
        self.lambda
    }

    pub fn phi(&self) -> T {
        self.phi
    }

    /// Rate φ/λ of the shape/rate parameterization.
    pub fn rate(&self) -> T {
        self.phi / self.lambda
    }
}

/// Nakagami-m law: X² follows `GammaParams { lambda, phi }`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NakagamiParams<T> {
    lambda: T,
    phi: T,
}

impl<T: Real> NakagamiParams<T> {
    pub fn new(lambda: T, phi: T) -> Result<Self> {
        require("lambda", lambda, lambda > T::zero(), "> 0")?;
        require("phi", phi, phi > lit(0.5), "> 0.5")?;
        Ok(Self { lambda, phi })
    }

    pub fn lambda(&self) -> T {
        self.lambda
    }

    pub fn phi(&self) -> T {
        self.phi
    }

    /// Law of the squared variable.
    pub fn squared(&self) -> GammaParams<T> {
        GammaParams { lambda: self.lambda, phi: self.phi }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BetaParams<T> {
    alpha: T,
    beta: T,
}

impl<T: Real> BetaParams<T> {
    pub fn new(alpha: T, beta: T) -> Result<Self> {
        require("alpha", alpha, alpha > T::zero(), "> 0")?;
        require("beta", beta, beta > T::zero(), "> 0")?;
        Ok(Self { alpha, beta })
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn beta(&self) -> T {
        self.beta
    }

    /// The closed-form asymptotic covariance exists only for α > 2 and β > 2.
    pub fn avar_valid(&self) -> bool {
        self.alpha > lit(2.0) && self.beta > lit(2.0)
    }

    pub fn swapped(&self) -> Self {
        Self { alpha: self.beta, beta: self.alpha }
    }
}

/// Generalized gamma: density α (φ/λ)^φ x^{αφ−1} exp(−(φ/λ) x^α) / Γ(φ).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneralizedGammaParams<T> {
    lambda: T,
    phi: T,
    alpha: T,
}

impl<T: Real> GeneralizedGammaParams<T> {
    pub fn new(lambda: T, phi: T, alpha: T) -> Result<Self> {
        GammaParams::new(lambda, phi)?;
        require("alpha", alpha, alpha > T::zero(), "> 0")?;
        Ok(Self { lambda, phi, alpha })
    }

    pub fn lambda(&self) -> T {
        self.lambda
    }

    pub fn phi(&self) -> T {
        self.phi
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    /// Law of X^α.
    pub fn powered(&self) -> GammaParams<T> {
        GammaParams { lambda: self.lambda, phi: self.phi }
    }
}

/// Four-parameter beta on the interval ]a, c[.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneralizedBetaParams<T> {
    alpha: T,
    beta: T,
    a: T,
    c: T,
}

impl<T: Real> GeneralizedBetaParams<T> {
    pub fn new(alpha: T, beta: T, a: T, c: T) -> Result<Self> {
        require("alpha", alpha, alpha > lit(2.0), "> 2")?;
        require("beta", beta, beta > lit(2.0), "> 2")?;
        require("a", a, a.is_finite(), "finite")?;
        require("c", c, c > a, "> a")?;
        Ok(Self { alpha, beta, a, c })
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn beta(&self) -> T {
        self.beta
    }

    pub fn a(&self) -> T {
        self.a
    }

    pub fn c(&self) -> T {
        self.c
    }
}

/// The four baseline families handled end to end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Gamma,
    Nakagami,
    WilsonHilferty,
    Beta,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Gamma, Family::Nakagami, Family::WilsonHilferty, Family::Beta];

    /// Power α₀ linking the family to the gamma law (`None` for Beta).
    pub fn power(&self) -> Option<u32> {
        match self {
            Family::Gamma => Some(1),
            Family::Nakagami => Some(2),
            Family::WilsonHilferty => Some(3),
            Family::Beta => None,
        }
    }

    pub fn param_names(&self) -> [&'static str; 2] {
        match self {
            Family::Beta => ["alpha", "beta"],
            _ => ["lambda", "phi"],
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::Gamma => "gamma",
            Family::Nakagami => "nakagami",
            Family::WilsonHilferty => "wilson_hilferty",
            Family::Beta => "beta",
        }
    }

    /// Checks that `values` is a valid parameter point for this family.
    pub fn validate<T: Real>(&self, values: [T; 2]) -> Result<ParameterVector<T>> {
        match self {
            Family::Gamma | Family::WilsonHilferty => {
                GammaParams::new(values[0], values[1])?;
            }
            Family::Nakagami => {
                NakagamiParams::new(values[0], values[1])?;
            }
            Family::Beta => {
                BetaParams::new(values[0], values[1])?;
            }
        }
        Ok(ParameterVector { family: *self, values })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Named two-component parameter point of a [`Family`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParameterVector<T> {
    pub family: Family,
    pub values: [T; 2],
}

impl<T: Real> ParameterVector<T> {
    pub fn names(&self) -> [&'static str; 2] {
        self.family.param_names()
    }

    pub fn get(&self, name: &str) -> Option<T> {
        self.names().iter().position(|n| *n == name).map(|i| self.values[i])
    }
}
