//! Command-line front end. Every command reads JSON or polynomial strings,
//! runs in exact arithmetic, and prints a [`CommandReport`].

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::config::{classify, Config, Family};
use crate::error::{Error, Result};
use crate::exact::{parse_rational, LieVector, Rational};
use crate::kirwan::{
    betti_table, kernel_ideal, lemma_ee_check, lemma_ff_check, Group, Presentation, Target, DEFAULT_MAX_DEGREE,
};
use crate::model::{RationalEntry, WeightedModel};
use crate::perturbation::{certify, propose_epsilon, refinement_report, shifted_model};
use crate::residue::pairing;
use crate::series::{
    perfection_check, quotient_poincare_polynomial, semistable_series, sl2_quotient_polynomial, sl2_quotient_series,
};

pub const DEFAULT_TRUNC: usize = 40;
pub const THREADS_VAR: &str = "MOMENT_STRATA_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "moment-strata",
    version,
    about = "Exact Morse/GIT stratifications of products of projective spaces"
)]
pub struct Cli {
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Index set with projection certificates and component codimensions.
    IndexSet { model: PathBuf },
    /// Stratum of a point given by per-factor homogeneous coordinates.
    Classify { model: PathBuf, point: PathBuf },
    /// Semistable series, perfection check and quotient polynomial.
    Series {
        model: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TRUNC)]
        trunc: usize,
        #[arg(long, value_enum, default_value = "torus")]
        group: Group,
    },
    /// Generic shift of the moment map and the refinement it induces.
    Perturb {
        model: PathBuf,
        /// Comma-separated rationals, e.g. "1/97" or "1/101,1/10201".
        #[arg(long)]
        epsilon: Option<String>,
    },
    /// Presentation, kernel generators, Betti numbers and kernel cross-checks.
    Kirwan {
        model: PathBuf,
        #[arg(long, value_enum, default_value = "torus")]
        group: Group,
        #[arg(long, default_value_t = DEFAULT_MAX_DEGREE)]
        max_degree: u32,
        #[arg(long, value_enum, default_value = "ss")]
        target: Target,
    },
    /// Residue pairing of two classes, raw and normalized.
    Pairing {
        model: PathBuf,
        eta: String,
        zeta: String,
        #[arg(long, value_enum, default_value = "torus")]
        group: Group,
    },
    /// Refined and coarse labels of a point configuration.
    Config {
        config: PathBuf,
        #[arg(long, value_enum)]
        family: Family,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct CommandReport {
    pub command: Vec<String>,
    pub input_digest: String,
    pub exact: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<Value>,
}

/// SHA-256 over the length-prefixed inputs.
pub fn input_digest(parts: &[&[u8]]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update((p.len() as u64).to_le_bytes());
        h.update(p);
    }
    hex::encode(h.finalize())
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

pub fn parse_vector(s: &str) -> Result<LieVector> {
    Ok(LieVector(
        s.split(',')
            .map(|x| parse_rational(x.trim()))
            .collect::<Result<Vec<Rational>>>()?,
    ))
}

pub fn cmd_index_set(model_text: &str) -> Result<Value> {
    let model = WeightedModel::from_json(model_text)?;
    let mut out = Vec::new();
    for idx in model.index_set()? {
        let comps: Vec<Value> = if idx.beta.is_zero() {
            vec![]
        } else {
            model
                .z_components(&idx.beta)
                .into_iter()
                .map(|c| {
                    let codim = model.codim(&idx.beta, &c);
                    json!({ "values": to_value(&c)["values"], "indices": c.indices, "codim": codim })
                })
                .collect()
        };
        out.push(json!({
            "beta": idx.beta,
            "norm_sq": crate::exact::format_rational(&model.form().norm_sq(&idx.beta)),
            "certificate": idx.certificate,
            "components": comps,
        }));
    }
    Ok(json!({ "model": model.to_file(), "index_set": out }))
}

pub fn cmd_classify(model_text: &str, point_text: &str) -> Result<Value> {
    let model = WeightedModel::from_json(model_text)?;
    let raw: Vec<Vec<RationalEntry>> =
        serde_json::from_str(point_text).map_err(|e| Error::Parse(format!("point file: {e}")))?;
    let coords: Vec<Vec<Rational>> = raw
        .iter()
        .map(|f| f.iter().map(RationalEntry::value).collect())
        .collect::<Result<_>>()?;
    let profile = model.support_of_point(&coords)?;
    let idx = model.classify(&profile)?;
    let stratum = if idx.beta.is_zero() {
        Value::Null
    } else {
        let comp = model.component_of_profile(&idx.beta, &profile);
        json!({ "component": comp, "codim": model.codim(&idx.beta, &comp) })
    };
    Ok(json!({
        "profile": profile.to_string(),
        "beta": idx.beta,
        "certificate": idx.certificate,
        "stratum": stratum,
        "semistable": idx.beta.is_zero(),
        "stable": model.is_stable(&profile)?,
    }))
}

/// Reports a precondition failure inline instead of failing the command.
fn applicable<T: Serialize>(r: Result<T>) -> Result<Value> {
    match r {
        Ok(x) => Ok(json!({ "status": "ok", "value": to_value(&x) })),
        Err(e) if e.is_precondition() => Ok(error_value(&e)),
        Err(e) => Err(e),
    }
}

pub fn cmd_series(model_text: &str, trunc: usize, group: Group) -> Result<Value> {
    let model = WeightedModel::from_json(model_text)?;
    match group {
        Group::Torus => {
            let ss = semistable_series(&model, trunc)?;
            let perfection = perfection_check(&model, trunc)?;
            let poly = quotient_poincare_polynomial(&model, trunc);
            Ok(json!({
                "group": group,
                "truncation": trunc,
                "semistable_series": ss.to_string(),
                "perfection": perfection,
                "quotient_polynomial": applicable(poly.map(|p| p.to_string()))?,
            }))
        }
        Group::Sl2 => {
            let s = sl2_quotient_series(&model, trunc)?;
            let poly = sl2_quotient_polynomial(&model, trunc);
            Ok(json!({
                "group": group,
                "truncation": trunc,
                "quotient_series": s.to_string(),
                "quotient_polynomial": applicable(poly.map(|p| p.to_string()))?,
            }))
        }
    }
}

pub fn cmd_perturb(model_text: &str, epsilon: Option<&str>) -> Result<Value> {
    let model = WeightedModel::from_json(model_text)?;
    let eps = match epsilon {
        Some(s) => certify(&model, parse_vector(s)?)?,
        None => propose_epsilon(&model)?,
    };
    let shifted = shifted_model(&model, &eps.vector)?;
    let refinement = refinement_report(&model, &eps.vector)?;
    Ok(json!({
        "epsilon": eps,
        "index_set": model.index_betas()?,
        "perturbed_index_set": shifted.index_betas()?,
        "refinement": refinement,
        "bijection": refinement.is_bijection(),
    }))
}

pub fn cmd_kirwan(model_text: &str, group: Group, max_degree: u32, target: Target) -> Result<Value> {
    if max_degree % 2 != 0 {
        return Err(Error::InvalidInput(format!("max degree {max_degree} is odd")));
    }
    let model = WeightedModel::from_json(model_text)?;
    let pres = Presentation::new(&model, group)?;
    let kernel = kernel_ideal(&pres, group, target, max_degree)?;
    let relations: Vec<String> = pres.base_relations().iter().map(|r| pres.format(r)).collect();
    let kernel_dims: Vec<usize> = (0..=max_degree).step_by(2).map(|d| kernel.dim(d)).collect();
    let d_times_kernel = match group {
        Group::Sl2 => to_value(&lemma_ff_check(&pres, max_degree)?),
        Group::Torus => Value::Null,
    };
    let vanishing_kernel = match group {
        Group::Torus => applicable(lemma_ee_check(&pres, max_degree))?,
        Group::Sl2 => Value::Null,
    };
    Ok(json!({
        "group": group,
        "target": target,
        "max_degree": max_degree,
        "presentation": { "variables": pres.ring().names(), "relations": relations },
        "generators": kernel.generator_families(&pres)?,
        "kernel_dims": kernel_dims,
        "betti": betti_table(&pres, &kernel)?,
        "d_times_kernel": d_times_kernel,
        "vanishing_kernel": vanishing_kernel,
    }))
}

pub fn cmd_pairing(model_text: &str, eta: &str, zeta: &str, group: Group) -> Result<Value> {
    let model = WeightedModel::from_json(model_text)?;
    let pres = Presentation::new(&model, group)?;
    let (e, z) = (pres.parse(eta)?, pres.parse(zeta)?);
    let v = pairing(&pres, &e, &z)?;
    Ok(json!({
        "group": group,
        "eta": pres.format(&e),
        "zeta": pres.format(&z),
        "raw": v.raw.to_string(),
        "normalized": v.normalized.to_string(),
        "normalization": crate::residue::normalization(group).to_string(),
    }))
}

pub fn cmd_config(config_text: &str, family: Family) -> Result<Value> {
    let config = Config::from_json(config_text)?;
    let c = classify(&config, family)?;
    Ok(json!({ "family": family, "points": config.len(), "classification": c }))
}

fn error_value(e: &Error) -> Value {
    json!({
        "status": "error",
        "kind": e.kind(),
        "message": e.to_string(),
        "witness": e.witness(),
    })
}

/// Exit code of an error: 3 for mathematical preconditions, 2 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    if e.is_precondition() {
        3
    } else {
        2
    }
}

fn echo(cli: &Cli) -> (Vec<String>, Vec<Vec<u8>>) {
    let file = |p: &Path| read(p).map(String::into_bytes).unwrap_or_default();
    let name = |p: &Path| p.display().to_string();
    match &cli.command {
        Command::IndexSet { model } => (vec!["index-set".into(), name(model)], vec![file(model)]),
        Command::Classify { model, point } => (
            vec!["classify".into(), name(model), name(point)],
            vec![file(model), file(point)],
        ),
        Command::Series { model, trunc, group } => (
            vec![
                "series".into(),
                name(model),
                format!("--trunc={trunc}"),
                format!("--group={}", to_value(group).as_str().unwrap_or_default()),
            ],
            vec![file(model)],
        ),
        Command::Perturb { model, epsilon } => {
            let mut c = vec!["perturb".into(), name(model)];
            if let Some(e) = epsilon {
                c.push(format!("--epsilon={e}"));
            }
            (c, vec![file(model)])
        }
        Command::Kirwan {
            model,
            group,
            max_degree,
            target,
        } => (
            vec![
                "kirwan".into(),
                name(model),
                format!("--group={}", to_value(group).as_str().unwrap_or_default()),
                format!("--max-degree={max_degree}"),
                format!("--target={}", if *target == Target::Stable { "s" } else { "ss" }),
            ],
            vec![file(model)],
        ),
        Command::Pairing {
            model,
            eta,
            zeta,
            group,
        } => (
            vec![
                "pairing".into(),
                name(model),
                eta.clone(),
                zeta.clone(),
                format!("--group={}", to_value(group).as_str().unwrap_or_default()),
            ],
            vec![file(model)],
        ),
        Command::Config { config, family } => (
            vec![
                "config".into(),
                name(config),
                format!("--family={}", to_value(family).as_str().unwrap_or_default()),
            ],
            vec![file(config)],
        ),
    }
}

fn input_paths(cli: &Cli) -> Vec<&Path> {
    match &cli.command {
        Command::Classify { model, point } => vec![model, point],
        Command::IndexSet { model }
        | Command::Series { model, .. }
        | Command::Perturb { model, .. }
        | Command::Kirwan { model, .. }
        | Command::Pairing { model, .. } => vec![model],
        Command::Config { config, .. } => vec![config],
    }
    .into_iter()
    .map(PathBuf::as_path)
    .collect()
}

fn dispatch(cli: &Cli) -> Result<Value> {
    match &cli.command {
        Command::IndexSet { model } => cmd_index_set(&read(model)?),
        Command::Classify { model, point } => cmd_classify(&read(model)?, &read(point)?),
        Command::Series { model, trunc, group } => cmd_series(&read(model)?, *trunc, *group),
        Command::Perturb { model, epsilon } => cmd_perturb(&read(model)?, epsilon.as_deref()),
        Command::Kirwan {
            model,
            group,
            max_degree,
            target,
        } => cmd_kirwan(&read(model)?, *group, *max_degree, *target),
        Command::Pairing {
            model,
            eta,
            zeta,
            group,
        } => cmd_pairing(&read(model)?, eta, zeta, *group),
        Command::Config { config, family } => cmd_config(&read(config)?, *family),
    }
}

/// Runs a parsed command line and returns the exit code with the report.
pub fn run(cli: &Cli) -> (i32, CommandReport) {
    let (command, inputs) = echo(cli);
    // file names are left out so that the digest depends only on contents
    let names: Vec<String> = input_paths(cli).iter().map(|p| p.display().to_string()).collect();
    let mut parts: Vec<&[u8]> = command
        .iter()
        .filter(|s| !names.contains(s))
        .map(|s| s.as_bytes())
        .collect();
    parts.extend(inputs.iter().map(Vec::as_slice));
    let digest = input_digest(&parts);
    let (code, result, error) = match dispatch(cli) {
        Ok(v) => (0, Some(v), None),
        Err(e) => (exit_code(&e), None, Some(error_value(&e))),
    };
    (
        code,
        CommandReport {
            command,
            input_digest: digest,
            exact: true,
            result,
            error,
        },
    )
}

/// Sizes the global thread pool from `MOMENT_STRATA_THREADS`, if set.
pub fn configure_threads() -> Result<()> {
    let Ok(v) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .map_err(|_| Error::InvalidInput(format!("{THREADS_VAR}={v} is not a thread count")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))
}

/// Entry point of the binary.
pub fn main_with(args: impl IntoIterator<Item = std::ffi::OsString>) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("{e}");
        return 2;
    }
    let (code, report) = run(&cli);
    let text = serde_json::to_string_pretty(&report).expect("reports serialize") + "\n";
    match &cli.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("{}: {e}", path.display());
                return 2;
            }
        }
        None => print!("{text}"),
    }
    if let Some(err) = &report.error {
        eprintln!("{}", err["message"].as_str().unwrap_or("error"));
    }
    code
}

#[cfg(test)]
mod tests {
    use super::*;

    const P1: &str = r#"{"rank": 1, "factors": [[[1], [-1]]]}"#;
    const P3: &str = r#"{"rank": 1, "factors": [[[3], [1], [-1], [-3]]]}"#;
    const P1_4: &str = r#"{"rank": 1, "factors": [[[1],[-1]],[[1],[-1]],[[1],[-1]],[[1],[-1]]]}"#;

    #[test]
    fn index_set_report() {
        let v = cmd_index_set(P3).unwrap();
        let betas: Vec<&Value> = v["index_set"].as_array().unwrap().iter().map(|x| &x["beta"]).collect();
        assert_eq!(betas.len(), 5);
        assert_eq!(betas[0], &json!(["0"]));
        assert_eq!(v["index_set"][1]["components"][0]["codim"], json!(4));
    }

    #[test]
    fn series_reports_precondition_inline() {
        let v = cmd_series(P1_4, 12, Group::Torus).unwrap();
        assert_eq!(v["perfection"]["holds"], json!(true));
        assert_eq!(v["quotient_polynomial"]["kind"], json!("not-coprime-stable"));
        let v = cmd_series(P3, 12, Group::Torus).unwrap();
        assert_eq!(v["quotient_polynomial"]["value"], json!("1 + 2*t^2 + t^4"));
        let v = cmd_series(P3, 12, Group::Sl2).unwrap();
        assert_eq!(v["quotient_polynomial"]["value"], json!("1"));
    }

    #[test]
    fn pairing_report() {
        let v = cmd_pairing(P1, "1", "1", Group::Torus).unwrap();
        assert_eq!(v["raw"], json!("-1/2"));
        assert_eq!(v["normalized"], json!("1"));
        let e = cmd_pairing(P1_4, "1", "1", Group::Sl2).unwrap_err();
        assert_eq!(exit_code(&e), 3);
        assert_eq!(exit_code(&cmd_pairing(P1, "1 +", "1", Group::Torus).unwrap_err()), 2);
    }

    #[test]
    fn digests_are_length_prefixed() {
        assert_ne!(input_digest(&[b"ab", b"c"]), input_digest(&[b"a", b"bc"]));
        assert_eq!(input_digest(&[b"x"]).len(), 64);
    }

    #[test]
    fn vectors() {
        assert_eq!(parse_vector("1/97, 1/9409").unwrap().rank(), 2);
        assert!(parse_vector("1/0").is_err());
    }
}
