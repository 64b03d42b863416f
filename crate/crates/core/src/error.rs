use thiserror::Error;

/// Errors raised by the estimation library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{function}: argument {value} outside domain ({expected})")]
    Domain { function: &'static str, value: f64, expected: &'static str },

    #[error("invalid parameter {name} = {value}: must be {requirement}")]
    InvalidParameter { name: &'static str, value: f64, requirement: &'static str },

    #[error("observation {index} ({value}) is outside the {support} support")]
    OutOfSupport { index: usize, value: f64, support: &'static str },

    #[error("degenerate sample: all observations are equal")]
    DegenerateSample,

    #[error("need at least {required} observations, got {got}")]
    InsufficientData { required: usize, got: usize },

    #[error("singular matrix (|det| = {det:e})")]
    SingularMatrix { det: f64 },

    #[error("no convergence after {iterations} iterations (last iterate {last:?}, residual {residual:e})")]
    NonConvergence { iterations: usize, last: [f64; 2], residual: f64 },

    #[error("integrand is not finite at quadrature node {index} (x = {node})")]
    NonFiniteIntegrand { index: usize, node: f64 },

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
