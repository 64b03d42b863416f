//! Replication engine comparing estimators by bias, RMSE and scaled
//! variance, plus a standardized-error check of asymptotic normality.
//!
//! Each replication draws from its own stream seeded by
//! [`derive_seed`], so results do not depend on the rayon pool size.

use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::distributions::{
    sample_beta, sample_gamma, sample_nakagami, sample_wilson_hilferty, BetaParams, Family, GammaParams, NakagamiParams,
    SampleBatch,
};
use crate::error::{Error, Result};
use crate::estimators::{beta_avar_q, mmle_family, power_gamma_avar, Flag, Method};
use crate::linalg::Mat2;
use crate::mle::{fisher_avar, mle_family, SolverConfig};
use crate::scalar::pairwise_sum;

pub const DEFAULT_REPLICATIONS: usize = 10_000;
pub const MIN_NORMALITY_REPLICATIONS: usize = 1000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub family: Family,
    pub true_params: [f64; 2],
    pub n_grid: Vec<usize>,
    pub replications: usize,
    pub master_seed: u64,
    pub estimators: Vec<Method>,
    #[serde(default)]
    pub solver: SolverConfig,
}

impl ExperimentConfig {
    pub fn new(family: Family, true_params: [f64; 2], n_grid: Vec<usize>, replications: usize, master_seed: u64) -> Self {
        Self {
            family,
            true_params,
            n_grid,
            replications,
            master_seed,
            estimators: vec![Method::Mmle, Method::Mle],
            solver: SolverConfig::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.family.validate(self.true_params)?;
        if self.n_grid.is_empty() {
            return Err(Error::Config("n_grid is empty".into()));
        }
        if self.n_grid[0] < 2 {
            return Err(Error::Config(format!("sample sizes must be at least 2, got {}", self.n_grid[0])));
        }
        if let Some(w) = self.n_grid.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::Config(format!("n_grid must be strictly increasing ({} then {})", w[0], w[1])));
        }
        if self.replications == 0 {
            return Err(Error::Config("replications must be positive".into()));
        }
        if self.estimators.is_empty() {
            return Err(Error::Config("no estimators requested".into()));
        }
        for (i, m) in self.estimators.iter().enumerate() {
            if self.estimators[..i].contains(m) {
                return Err(Error::Config(format!("estimator {} listed twice", m.name())));
            }
        }
        self.solver.validate()
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Stream seed for replication `r` at sample size `n`.
pub fn derive_seed(master_seed: u64, n: usize, r: usize) -> u64 {
    splitmix64(splitmix64(splitmix64(master_seed) ^ n as u64) ^ r as u64)
}

/// Draws `n` observations of `family` at `params`.
pub fn sample_family(family: Family, params: [f64; 2], n: usize, seed: u64) -> Result<SampleBatch<f64>> {
    let [a, b] = params;
    match family {
        Family::Gamma => sample_gamma(&GammaParams::new(a, b)?, n, seed),
        Family::Nakagami => sample_nakagami(&NakagamiParams::new(a, b)?, n, seed),
        Family::WilsonHilferty => sample_wilson_hilferty(&GammaParams::new(a, b)?, n, seed),
        Family::Beta => sample_beta(&BetaParams::new(a, b)?, n, seed),
    }
}

/// Outcome of one estimator on one replication. `None` marks a replication
/// that errored or produced a beta estimate outside the covariance domain.
type Outcome = Option<[f64; 2]>;

fn estimate(cfg: &ExperimentConfig, method: Method, sample: &SampleBatch<f64>) -> Outcome {
    let report = match method {
        Method::Mmle => mmle_family(cfg.family, sample),
        Method::Mle => mle_family(cfg.family, sample, &cfg.solver),
    }
    .ok()?;
    if report.has_flag(Flag::AvarOutOfDomain) {
        return None;
    }
    Some(report.estimates())
}

/// Outcomes indexed by `[replication][estimator]`, in replication order.
fn replicate(cfg: &ExperimentConfig, n: usize) -> Vec<Vec<Outcome>> {
    (0..cfg.replications)
        .into_par_iter()
        .map(|r| match sample_family(cfg.family, cfg.true_params, n, derive_seed(cfg.master_seed, n, r)) {
            Ok(sample) => cfg.estimators.iter().map(|&m| estimate(cfg, m, &sample)).collect(),
            Err(_) => vec![None; cfg.estimators.len()],
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub estimator: Method,
    pub parameter: String,
    pub n: usize,
    pub bias: f64,
    pub rmse: f64,
    pub var_scaled: f64,
    pub failures: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub family: Family,
    pub true_params: [f64; 2],
    pub replications: usize,
    pub rows: Vec<ResultRow>,
    /// Wall time; kept out of serialized artifacts so they stay reproducible.
    #[serde(skip)]
    pub elapsed: f64,
}

pub const CSV_HEADER: &str = "estimator,parameter,n,bias,rmse,var_scaled,failures";

impl ExperimentResult {
    pub fn row(&self, estimator: Method, parameter: &str, n: usize) -> Option<&ResultRow> {
        self.rows.iter().find(|r| r.estimator == estimator && r.parameter == parameter && r.n == n)
    }

    /// Rows for one estimator and parameter, ordered by n.
    pub fn series(&self, estimator: Method, parameter: &str) -> Vec<&ResultRow> {
        self.rows.iter().filter(|r| r.estimator == estimator && r.parameter == parameter).collect()
    }

    /// CSV with 17 significant digits per number.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{:.16e},{:.16e},{:.16e},{}",
                r.estimator.name(),
                r.parameter,
                r.n,
                r.bias,
                r.rmse,
                r.var_scaled,
                r.failures
            );
        }
        out
    }
}

struct Moments {
    bias: f64,
    rmse: f64,
    var: f64,
}

fn summarize(estimates: &[f64], truth: f64) -> Moments {
    let m = estimates.len();
    if m == 0 {
        return Moments { bias: f64::NAN, rmse: f64::NAN, var: f64::NAN };
    }
    let mf = m as f64;
    let dev: Vec<f64> = estimates.iter().map(|e| e - truth).collect();
    let bias = pairwise_sum(&dev) / mf;
    let sq: Vec<f64> = dev.iter().map(|d| d * d).collect();
    let rmse = (pairwise_sum(&sq) / mf).sqrt();
    let var = if m > 1 {
        let centred: Vec<f64> = dev.iter().map(|d| (d - bias).powi(2)).collect();
        pairwise_sum(&centred) / (mf - 1.0)
    } else {
        0.0
    };
    Moments { bias, rmse, var }
}

fn column(outcomes: &[Vec<Outcome>], estimator: usize, parameter: usize) -> Vec<f64> {
    outcomes.iter().filter_map(|row| row[estimator].map(|v| v[parameter])).collect()
}

/// Runs every (n, replication) pair and aggregates per estimator and parameter.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentResult> {
    cfg.validate()?;
    let start = Instant::now();
    let names = cfg.family.param_names();
    let mut rows = Vec::with_capacity(cfg.n_grid.len() * cfg.estimators.len() * 2);
    for &n in &cfg.n_grid {
        let outcomes = replicate(cfg, n);
        for (e, &method) in cfg.estimators.iter().enumerate() {
            let failures = outcomes.iter().filter(|row| row[e].is_none()).count();
            for (p, name) in names.iter().enumerate() {
                let m = summarize(&column(&outcomes, e, p), cfg.true_params[p]);
                rows.push(ResultRow {
                    estimator: method,
                    parameter: (*name).to_string(),
                    n,
                    bias: m.bias,
                    rmse: m.rmse,
                    var_scaled: n as f64 * m.var,
                    failures,
                });
            }
        }
    }
    Ok(ExperimentResult {
        family: cfg.family,
        true_params: cfg.true_params,
        replications: cfg.replications,
        rows,
        elapsed: start.elapsed().as_secs_f64(),
    })
}

/// Asymptotic covariance of √n(θ̂ − θ) for `method` at the true parameters.
pub fn reference_avar(method: Method, family: Family, params: [f64; 2]) -> Result<Mat2<f64>> {
    family.validate(params)?;
    let [a, b] = params;
    match (method, family) {
        (Method::Mle, _) => fisher_avar(family, params),
        (Method::Mmle, Family::Beta) => {
            BetaParams::new(a, b)?;
            if !(a > 2.0 && b > 2.0) {
                return Err(Error::Domain { function: "reference_avar", value: a.min(b), expected: "alpha, beta > 2" });
            }
            Ok(Mat2::diag(beta_avar_q(a, b), beta_avar_q(b, a)))
        }
        (Method::Mmle, _) => power_gamma_avar(a, b),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalityStats {
    pub estimator: Method,
    pub parameter: String,
    /// Reference variance the errors were standardized by.
    pub avar: f64,
    pub mean: f64,
    pub variance: f64,
    pub skewness: f64,
    pub excess_kurtosis: f64,
    /// Fraction of standardized errors inside ±1.96.
    pub coverage: f64,
    pub used: usize,
    pub failures: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalityReport {
    pub family: Family,
    pub n: usize,
    pub replications: usize,
    pub stats: Vec<NormalityStats>,
}

impl NormalityReport {
    pub fn get(&self, estimator: Method, parameter: &str) -> Option<&NormalityStats> {
        self.stats.iter().find(|s| s.estimator == estimator && s.parameter == parameter)
    }
}

/// Standardized-error summary at sample size `n`, using [`reference_avar`].
pub fn normality_check(cfg: &ExperimentConfig, n: usize) -> Result<NormalityReport> {
    normality_check_with(cfg, n, |m| reference_avar(m, cfg.family, cfg.true_params))
}

/// As [`normality_check`] with a caller-supplied reference covariance.
pub fn normality_check_with(
    cfg: &ExperimentConfig,
    n: usize,
    reference: impl Fn(Method) -> Result<Mat2<f64>>,
) -> Result<NormalityReport> {
    cfg.validate()?;
    if cfg.replications < MIN_NORMALITY_REPLICATIONS {
        return Err(Error::Config(format!(
            "normality check needs at least {MIN_NORMALITY_REPLICATIONS} replications, got {}",
            cfg.replications
        )));
    }
    if n < 2 {
        return Err(Error::Config(format!("sample size must be at least 2, got {n}")));
    }
    let avars = cfg.estimators.iter().map(|&m| reference(m)).collect::<Result<Vec<_>>>()?;
    let outcomes = replicate(cfg, n);
    let names = cfg.family.param_names();
    let mut stats = Vec::new();
    for (e, &method) in cfg.estimators.iter().enumerate() {
        let failures = outcomes.iter().filter(|row| row[e].is_none()).count();
        for (p, name) in names.iter().enumerate() {
            let avar = avars[e][(p, p)];
            let scale = (n as f64 / avar).sqrt();
            let z: Vec<f64> = column(&outcomes, e, p).iter().map(|v| (v - cfg.true_params[p]) * scale).collect();
            stats.push(standardized_stats(method, name, avar, &z, failures));
        }
    }
    Ok(NormalityReport { family: cfg.family, n, replications: cfg.replications, stats })
}

fn standardized_stats(estimator: Method, parameter: &str, avar: f64, z: &[f64], failures: usize) -> NormalityStats {
    let m = z.len() as f64;
    let mean = pairwise_sum(z) / m;
    let central = |k: i32| pairwise_sum(&z.iter().map(|v| (v - mean).powi(k)).collect::<Vec<_>>()) / m;
    let (m2, m3, m4) = (central(2), central(3), central(4));
    NormalityStats {
        estimator,
        parameter: parameter.to_string(),
        avar,
        mean,
        variance: m2 * m / (m - 1.0),
        skewness: m3 / m2.powf(1.5),
        excess_kurtosis: m4 / (m2 * m2) - 3.0,
        coverage: z.iter().filter(|v| v.abs() <= 1.96).count() as f64 / m,
        used: z.len(),
        failures,
    }
}
