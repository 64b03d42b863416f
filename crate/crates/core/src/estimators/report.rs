use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::distributions::ParameterVector;
use crate::linalg::Mat2;
use crate::scalar::{lit, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Flag {
    /// Estimates fall where the asymptotic covariance is undefined (Beta with α̂ ≤ 2 or β̂ ≤ 2).
    AvarOutOfDomain,
    /// A closed-form denominator is within rounding of zero.
    NearDegenerate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Mmle,
    Mle,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::Mmle => "mmle",
            Method::Mle => "mle",
        }
    }
}

/// Iteration record of a numerical fit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverInfo {
    pub iterations: usize,
    pub residual: f64,
}

/// Point estimates with plug-in asymptotic covariance of √n(θ̂ − θ).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateReport<T> {
    pub method: Method,
    pub params: ParameterVector<T>,
    /// Power α₀ applied to the data before the gamma fit, when not 1.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub power: Option<T>,
    pub n: usize,
    pub avar: Option<Mat2<T>>,
    pub std_errors: Option<[T; 2]>,
    pub flags: BTreeSet<Flag>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solver: Option<SolverInfo>,
}

impl<T: Real> EstimateReport<T> {
    pub(crate) fn new(method: Method, params: ParameterVector<T>, n: usize, avar: Option<Mat2<T>>, flags: BTreeSet<Flag>) -> Self {
        let scale = lit::<T>(n as f64);
        let std_errors = avar.and_then(|m| {
            let d = m.diagonal();
            (d[0] >= T::zero() && d[1] >= T::zero()).then(|| [(d[0] / scale).sqrt(), (d[1] / scale).sqrt()])
        });
        Self { method, params, power: None, n, avar, std_errors, flags, solver: None }
    }

    pub fn estimates(&self) -> [T; 2] {
        self.params.values
    }

    pub fn has_flag(&self, flag: Flag) -> bool {
        self.flags.contains(&flag)
    }
}
