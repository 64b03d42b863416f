//! Closed-form modified maximum likelihood estimators for the gamma,
//! Nakagami, Wilson–Hilferty and beta families, with an iterative MLE
//! baseline and a deterministic Monte Carlo harness.
//!
//! Numerical code is generic over [`Real`] (`f32` or `f64`); the aliases
//! at the bottom of this file fix the scalar for common use.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod distributions;
pub mod error;
pub mod estimators;
pub mod linalg;
pub mod mle;
pub mod montecarlo;
pub mod quadrature;
pub mod scalar;
pub mod special;

pub use distributions::{
    BetaParams, Family, GammaParams, GeneralizedBetaParams, GeneralizedGammaParams, NakagamiParams, ParameterVector,
    SampleBatch, Support,
};
pub use error::{Error, Result};
pub use estimators::{EstimateReport, Flag, Method, ModifiedFamily, SolverInfo};
pub use linalg::Mat2;
pub use mle::SolverConfig;
pub use montecarlo::{ExperimentConfig, ExperimentResult, NormalityReport};
pub use quadrature::QuadratureRule;
pub use scalar::Real;

pub type GammaParamsF64 = GammaParams<f64>;
pub type GammaParamsF32 = GammaParams<f32>;
pub type NakagamiParamsF64 = NakagamiParams<f64>;
pub type BetaParamsF64 = BetaParams<f64>;
pub type BetaParamsF32 = BetaParams<f32>;
pub type SampleBatchF64 = SampleBatch<f64>;
pub type SampleBatchF32 = SampleBatch<f32>;
pub type EstimateReportF64 = EstimateReport<f64>;
pub type EstimateReportF32 = EstimateReport<f32>;
pub type Mat2F64 = Mat2<f64>;
pub type QuadratureRuleF64 = QuadratureRule<f64>;
