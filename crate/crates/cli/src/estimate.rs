use std::path::PathBuf;

use clap::{Args, ValueEnum};
use mmle::estimators::mmle_family;
use mmle::mle::mle_family;
use mmle::{EstimateReport, Family, SolverConfig, Support};
use serde_json::{json, Map, Value};

use crate::exit::CliError;
use crate::input::read_sample;
use crate::Dist;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Mmle,
    Mle,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Args, Debug)]
pub struct EstimateArgs {
    #[arg(long, value_enum)]
    pub dist: Dist,
    /// Data file, one value per line.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "mmle")]
    pub method: MethodArg,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

fn named(family: Family, values: [f64; 2]) -> Value {
    let mut m = Map::new();
    for (name, v) in family.param_names().into_iter().zip(values) {
        m.insert(name.into(), json!(v));
    }
    Value::Object(m)
}

fn report_fields(dist: Dist, r: &EstimateReport<f64>) -> Map<String, Value> {
    let family = dist.family();
    let mut m = Map::new();
    m.insert("estimates".into(), named(family, r.estimates()));
    m.insert("std_errors".into(), r.std_errors.map_or(Value::Null, |se| named(family, se)));
    m.insert("avar".into(), r.avar.map_or(Value::Null, |a| json!([[a[(0, 0)], a[(0, 1)]], [a[(1, 0)], a[(1, 1)]]])));
    m.insert("flags".into(), json!(r.flags));
    if let Some(info) = r.solver {
        m.insert("solver".into(), json!(info));
    }
    m
}

pub fn to_json(dist: Dist, reports: &[EstimateReport<f64>]) -> Value {
    let n = reports[0].n;
    let mut top = Map::new();
    top.insert("dist".into(), json!(dist.name()));
    top.insert("n".into(), json!(n));
    if let [single] = reports {
        top.insert("method".into(), json!(single.method.name()));
        top.extend(report_fields(dist, single));
    } else {
        top.insert("method".into(), json!("both"));
        for r in reports {
            let mut fields = report_fields(dist, r);
            fields.insert("method".into(), json!(r.method.name()));
            top.insert(r.method.name().into(), Value::Object(fields));
        }
        let [a, b] = [reports[0].estimates(), reports[1].estimates()];
        top.insert("difference".into(), named(dist.family(), [a[0] - b[0], a[1] - b[1]]));
    }
    Value::Object(top)
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), |x| format!("{x:.10}"))
}

pub fn to_text(dist: Dist, reports: &[EstimateReport<f64>]) -> String {
    let names = dist.family().param_names();
    let mut out = format!("dist: {}\nn: {}\n", dist.name(), reports[0].n);
    for r in reports {
        out.push_str(&format!("\n[{}]\n", r.method.name()));
        out.push_str(&format!("{:<10} {:>20} {:>20}\n", "parameter", "estimate", "std_error"));
        for (i, name) in names.iter().enumerate() {
            let se = r.std_errors.map(|s| s[i]);
            out.push_str(&format!("{:<10} {:>20} {:>20}\n", name, fmt_opt(Some(r.estimates()[i])), fmt_opt(se)));
        }
        if !r.flags.is_empty() {
            let flags: Vec<String> = r.flags.iter().map(|f| json!(f).as_str().unwrap_or_default().to_string()).collect();
            out.push_str(&format!("flags: {}\n", flags.join(", ")));
        }
        if let Some(info) = r.solver {
            out.push_str(&format!("solver: {} iterations, residual {:.3e}\n", info.iterations, info.residual));
        }
    }
    if let [a, b] = reports {
        out.push_str("\n[difference mmle - mle]\n");
        for (i, name) in names.iter().enumerate() {
            out.push_str(&format!("{:<10} {:>20}\n", name, fmt_opt(Some(a.estimates()[i] - b.estimates()[i]))));
        }
    }
    out
}

pub fn run(args: &EstimateArgs) -> Result<i32, CliError> {
    let family = args.dist.family();
    let support = if family == Family::Beta { Support::UnitInterval } else { Support::Positive };
    let sample = read_sample(&args.input, support)?;
    let cfg = SolverConfig::default();
    let mut reports = Vec::new();
    if matches!(args.method, MethodArg::Mmle | MethodArg::Both) {
        reports.push(mmle_family(family, &sample)?);
    }
    if matches!(args.method, MethodArg::Mle | MethodArg::Both) {
        reports.push(mle_family(family, &sample, &cfg)?);
    }
    match args.format {
        Format::Json => {
            let text = serde_json::to_string_pretty(&to_json(args.dist, &reports)).expect("json values serialize");
            println!("{text}");
        }
        Format::Text => print!("{}", to_text(args.dist, &reports)),
    }
    Ok(0)
}
