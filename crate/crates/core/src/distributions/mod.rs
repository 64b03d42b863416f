//! Parameter types, log-densities, validated samples and seeded samplers for
//! the Gamma (mean/shape parameterization), Nakagami-m, Wilson–Hilferty and
//! Beta families plus the generalized families they are embedded in.

mod density;
mod params;
mod sample;
mod sampling;

pub use density::{
    log_pdf_beta, log_pdf_gamma, log_pdf_generalized_beta, log_pdf_generalized_gamma, log_pdf_nakagami,
    log_pdf_wilson_hilferty,
};
pub use params::{
    BetaParams, Family, GammaParams, GeneralizedBetaParams, GeneralizedGammaParams, NakagamiParams, ParameterVector,
};
pub use sample::{SampleBatch, Support, DEGENERACY_TOLERANCE};
pub use sampling::{
    rng_from_seed, sample_beta, sample_gamma, sample_nakagami, sample_wilson_hilferty, standard_gamma, SeededRng,
};
