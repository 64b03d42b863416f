use std::path::{Path, PathBuf};

use clap::Args;
use mmle::montecarlo::{run_experiment, DEFAULT_REPLICATIONS};
use mmle::{ExperimentConfig, Family, Method};

use crate::exit::CliError;
use crate::manifest::{manifest_path, now, RunManifest};
use crate::Dist;

pub const THREADS_ENV: &str = "MMLE_THREADS";

#[derive(Args, Debug)]
pub struct SimulateArgs {
    #[arg(long, value_enum, required_unless_present = "replay")]
    pub dist: Option<Dist>,
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub phi: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    /// Sample sizes as lo:hi:step (inclusive) or a single size.
    #[arg(long, default_value = "10:100:5")]
    pub n_grid: String,
    #[arg(long, default_value_t = DEFAULT_REPLICATIONS)]
    pub reps: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// CSV output; the manifest is written beside it.
    #[arg(long)]
    pub out: PathBuf,
    /// Estimators to compare, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "mmle,mle")]
    pub estimators: Vec<String>,
    /// Also write the result as JSON.
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Re-run the configuration recorded in a manifest.
    #[arg(long, conflicts_with_all = ["dist", "lambda", "phi", "alpha", "beta", "n_grid", "reps", "seed", "estimators"])]
    pub replay: Option<PathBuf>,
}

pub fn parse_grid(grid: &str) -> Result<Vec<usize>, CliError> {
    let bad = || CliError::usage(format!("--n-grid {grid:?}: expected lo:hi:step or a single size"));
    let parts: Vec<usize> = grid.split(':').map(|p| p.trim().parse().map_err(|_| bad())).collect::<Result<_, _>>()?;
    match parts[..] {
        [n] => Ok(vec![n]),
        [lo, hi, step] if step > 0 && lo <= hi => Ok((lo..=hi).step_by(step).collect()),
        _ => Err(bad()),
    }
}

fn parse_estimators(names: &[String]) -> Result<Vec<Method>, CliError> {
    names
        .iter()
        .map(|s| match s.trim() {
            "mmle" => Ok(Method::Mmle),
            "mle" => Ok(Method::Mle),
            other => Err(CliError::usage(format!("--estimators: unknown estimator {other:?}"))),
        })
        .collect()
}

fn true_params(args: &SimulateArgs, family: Family) -> Result<[f64; 2], CliError> {
    let (pair, flags) = if family == Family::Beta {
        ((args.alpha, args.beta), "--alpha and --beta")
    } else {
        ((args.lambda, args.phi), "--lambda and --phi")
    };
    match pair {
        (Some(a), Some(b)) => Ok([a, b]),
        _ => Err(CliError::usage(format!("{} needs {flags}", family.name()))),
    }
}

fn config_from_args(args: &SimulateArgs) -> Result<ExperimentConfig, CliError> {
    let dist = args.dist.ok_or_else(|| CliError::usage("--dist is required"))?;
    let family = dist.family();
    let mut cfg = ExperimentConfig::new(family, true_params(args, family)?, parse_grid(&args.n_grid)?, args.reps, args.seed);
    cfg.estimators = parse_estimators(&args.estimators)?;
    Ok(cfg)
}

/// Worker count from the environment, if set.
pub fn threads_from_env() -> Result<Option<usize>, CliError> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::usage(format!("{THREADS_ENV}={v:?}: expected a positive integer"))),
        },
    }
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    std::fs::write(path, text).map_err(|e| CliError::io(path, e))
}

pub fn run(args: &SimulateArgs) -> Result<i32, CliError> {
    let cfg = match &args.replay {
        Some(path) => RunManifest::read(path)?.config,
        None => config_from_args(args)?,
    };
    cfg.validate().map_err(|e| CliError::usage(e.to_string()))?;

    let started_at = now();
    let result = match threads_from_env()? {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::usage(format!("thread pool: {e}")))?
            .install(|| run_experiment(&cfg)),
        None => run_experiment(&cfg),
    }?;

    write(&args.out, &result.to_csv())?;
    let mut outputs = vec![args.out.clone()];
    if let Some(path) = &args.json {
        write(path, &(serde_json::to_string_pretty(&result).expect("result serializes") + "\n"))?;
        outputs.push(path.clone());
    }
    let manifest = RunManifest {
        command: "simulate".into(),
        args: std::env::args().skip(1).collect(),
        seed: cfg.master_seed,
        config: cfg,
        version: env!("CARGO_PKG_VERSION").into(),
        started_at,
        finished_at: now(),
        outputs,
    };
    manifest.write(&manifest_path(&args.out))?;

    let failures: usize = result.rows.iter().filter(|r| r.parameter == result.rows[0].parameter).map(|r| r.failures).sum();
    println!(
        "wrote {} rows to {} ({:.1}s, {} failed replications)",
        result.rows.len(),
        args.out.display(),
        result.elapsed,
        failures
    );
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing() {
        assert_eq!(parse_grid("10:100:5").unwrap().len(), 19);
        assert_eq!(parse_grid("10:20:4").unwrap(), vec![10, 14, 18]);
        assert_eq!(parse_grid("50").unwrap(), vec![50]);
        for bad in ["10:5:1", "1:2:0", "a:b:c", "1:2", ""] {
            assert!(parse_grid(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn estimator_names() {
        assert_eq!(parse_estimators(&["mle".into()]).unwrap(), vec![Method::Mle]);
        assert!(parse_estimators(&["moments".into()]).is_err());
    }
}
