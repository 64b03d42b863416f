//! Closed-form modified maximum likelihood estimators (MMLE).
//!
//! The baseline density is embedded in a larger family g(x; θ, α) and the
//! likelihood equations are taken with respect to the extra parameters α at
//! the embedding point α₀ instead of some of the original parameters. For the
//! generalized gamma (α₀ = 1, 2, 3) and the four-parameter beta ((a, c) =
//! (0, 1)) the resulting system is linear in the unknowns and has a closed
//! form solution whenever the sample is not constant.

mod covariance;
mod invariance;
mod mmle;
mod report;
mod residuals;
mod score;

pub use covariance::{
    beta_avar_q, beta_linearized_covariance, jk_matrices_beta, jk_matrices_power_gamma, power_gamma_avar,
    sandwich_covariance, MatrixPair,
};
pub use invariance::{invariance_map, invert_components, ComponentMap};
pub use mmle::{mmle_beta, mmle_family, mmle_power_gamma, NEAR_DEGENERACY_TOLERANCE};
pub use report::{EstimateReport, Flag, Method, SolverInfo};
pub use residuals::{modified_eq_residuals, ModifiedFamily};
pub use score::verify_score_zero;
