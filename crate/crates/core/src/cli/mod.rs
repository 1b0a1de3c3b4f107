//! Command-line orchestration: certificates, tables, case reports, oracles
//! and suites.
//!
//! Exit codes: `0` success, `1` a validation or suite check failed, `2` a
//! parse or usage error.

pub mod certificate;
pub mod suite;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

pub use certificate::{certify, certify_with, Branch, Certificate, Tolerances, Validation};
pub use suite::{run_suite, SuiteReport, SuiteRow, Which};

use crate::catalog::FactorSpec;
use crate::critical7::{
    case_catalog, find_case, forensics, minimize_jacobian_with, validate_claim, MinimizeOptions, CLAIM_NODES,
};
use crate::error::Error;
use crate::lawlor::{theta1, theta2, theta2_scaled_bound};
use crate::matrixlab::oracles::radius_check;
use crate::matrixlab::{plucker_orbit_check, sup_alpha_sq, sym_det_floor, DEFAULT_SEED};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "conecert", version, about = "Curvature-criterion certificates for cones over minimal products")]
pub struct Cli {
    /// Emit CSV instead of JSON.
    #[arg(long, global = true)]
    pub csv: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Certify one product, given inline or as a file.
    Certify {
        /// `G(1,3;R) x S(2)` or a path to a text or JSON (`{"factors": [...]}`) file.
        spec: String,
        /// Also write the JSON certificate here.
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Vanishing angles for `α = sqrt(k - 1)` over a range of cone dimensions.
    Table {
        #[arg(long, default_value_t = 8)]
        kmin: u32,
        #[arg(long, default_value_t = 12)]
        kmax: u32,
    },
    /// Dimension-7 reports.
    Critical7 {
        /// Validate every case on the full slope grid.
        #[arg(long, conflicts_with_all = ["case", "t"])]
        all: bool,
        /// Case name, 1-based index or product.
        #[arg(long, requires = "t")]
        case: Option<String>,
        #[arg(long)]
        t: Option<f64>,
        /// Upper end of admissible slopes.
        #[arg(long)]
        t_cap: Option<f64>,
    },
    /// Brute-force checks of a factor or of the eigenvalue lemma.
    Oracle {
        #[arg(long)]
        factor: Option<String>,
        #[arg(long, value_enum)]
        check: Check,
        #[arg(long, default_value_t = 2000)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Half of `dim - 1` for the Plücker check.
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 6)]
        m: usize,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long, default_value_t = 0.2)]
        t: f64,
        #[arg(long, default_value_t = 100_000)]
        trials: usize,
    },
    /// Run a reproduction suite.
    Suite {
        #[arg(value_enum)]
        which: Which,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Alpha,
    Trace,
    Radius,
    Plucker,
    Detfloor,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Failure::Usage(_) => EXIT_USAGE,
                Failure::Failed(_) => EXIT_FAILED,
            }
        }
    }
}

#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failed(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(..)
            | Error::NotNormalized(..)
            | Error::Degenerate(_)
            | Error::Unreduced(..)
            | Error::EmptyProduct
            | Error::OutOfRange { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Failed(e.to_string()),
        }
    }
}

fn io(e: impl std::fmt::Display) -> Failure {
    Failure::Failed(e.to_string())
}

fn emit_json<S: Serialize>(out: &mut dyn Write, value: &S) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(io)?;
    writeln!(out, "{text}").map_err(io)
}

fn emit_csv(out: &mut dyn Write, header: &[&str], rows: &[Vec<String>]) -> Result<(), Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(io)?;
    out.write_all(&bytes).map_err(io)
}

fn opt(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

/// Flattens a JSON object into `field,value` rows.
fn flatten(value: &Value) -> Vec<Vec<String>> {
    match value {
        Value::Object(map) => map
            .iter()
            .map(|(k, v)| {
                let v = match v {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                vec![k.clone(), v]
            })
            .collect(),
        other => vec![vec!["value".into(), other.to_string()]],
    }
}

/// Reads a product from inline text, a text file or a JSON file with a
/// `factors` array.
pub fn read_spec(arg: &str) -> Result<String, String> {
    let path = Path::new(arg);
    if !path.is_file() {
        return Ok(arg.to_string());
    }
    let text = std::fs::read_to_string(path).map_err(|e| format!("{arg}: {e}"))?;
    match serde_json::from_str::<Value>(&text) {
        Ok(Value::Object(map)) => {
            let factors = map
                .get("factors")
                .and_then(Value::as_array)
                .ok_or_else(|| format!("{arg}: expected a `factors` array"))?;
            let atoms = factors
                .iter()
                .map(|f| f.as_str().map(str::to_string).ok_or_else(|| format!("{arg}: factors must be strings")))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(atoms.join(" x "))
        }
        _ => Ok(text.trim().to_string()),
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    match &cli.command {
        Command::Certify { spec, json, seed } => {
            let text = read_spec(spec).map_err(Failure::Usage)?;
            let cert = certify_with(&text, &Tolerances::default(), *seed)?;
            if let Some(path) = json {
                std::fs::write(path, cert.to_json() + "\n").map_err(io)?;
            }
            if cli.csv {
                emit_csv(
                    out,
                    &["product", "dimC", "alphaSq", "normalRadiusDeg", "branch", "angleDeg", "tanBound", "verdict"],
                    &[vec![
                        cert.product.clone(),
                        cert.dim_c.to_string(),
                        cert.alpha_sq.to_string(),
                        format!("{:.4}", cert.normal_radius_deg),
                        serde_json::to_value(cert.branch).map_err(io)?.as_str().unwrap_or_default().to_string(),
                        cert.vanishing_angle_deg.map(|a| format!("{a:.4}")).unwrap_or_default(),
                        opt(cert.tan_bound),
                        serde_json::to_value(cert.verdict).map_err(io)?.as_str().unwrap_or_default().to_string(),
                    ]],
                )?;
            } else {
                writeln!(out, "{}", cert.to_json()).map_err(io)?;
            }
            Ok(if cert.all_validations_pass() { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Table { kmin, kmax } => {
            if *kmin < 3 || kmin > kmax {
                return Err(Failure::Usage(format!("need 3 <= kmin <= kmax, got {kmin}..{kmax}")));
            }
            let mut rows = Vec::new();
            for k in *kmin..=*kmax {
                let alpha = ((k - 1) as f64).sqrt();
                let mut row = serde_json::Map::new();
                row.insert("dimC".into(), k.into());
                row.insert("alphaSq".into(), ((k - 1) as f64).into());
                if k <= 12 {
                    let a1 = theta1(k, alpha)?.angle();
                    let a2 = theta2(k, alpha)?.angle();
                    row.insert("theta1".into(), a1.into());
                    row.insert("theta1Deg".into(), a1.map(|a| certificate::round4(a.to_degrees())).into());
                    row.insert("theta2".into(), a2.into());
                    row.insert("theta2Deg".into(), a2.map(|a| certificate::round4(a.to_degrees())).into());
                } else {
                    let b = theta2_scaled_bound(k, alpha)?;
                    row.insert("tanBound".into(), b.tan_bound.into());
                    row.insert("angleDeg".into(), certificate::round4(b.tan_bound.atan().to_degrees()).into());
                    row.insert("belowTwoOverK".into(), b.below_two_over_k.into());
                }
                rows.push(Value::Object(row));
            }
            if cli.csv {
                let header = ["dimC", "alphaSq", "theta1Deg", "theta2Deg", "tanBound", "angleDeg"];
                let cells: Vec<Vec<String>> = rows
                    .iter()
                    .map(|r| {
                        header
                            .iter()
                            .map(|h| match r.get(*h) {
                                Some(Value::Null) | None => String::new(),
                                Some(v) => v.to_string(),
                            })
                            .collect()
                    })
                    .collect();
                emit_csv(out, &header, &cells)?;
            } else {
                emit_json(out, &rows)?;
            }
            Ok(EXIT_OK)
        }
        Command::Critical7 { all, case, t, t_cap } => {
            let mut opts = MinimizeOptions::default();
            if let Some(cap) = t_cap {
                opts.t_cap = *cap;
            }
            if let (Some(name), Some(t)) = (case, t) {
                let c = find_case(name).ok_or_else(|| Failure::Usage(format!("unknown case `{name}`")))?;
                let r = minimize_jacobian_with(&c, *t, &opts)?;
                if cli.csv {
                    emit_csv(
                        out,
                        &["case", "t", "numericMin", "closedForm", "gap", "distinctEigenvalues"],
                        &[vec![
                            r.case.clone(),
                            r.t.to_string(),
                            r.numeric_min.to_string(),
                            r.closed_form.to_string(),
                            r.gap.to_string(),
                            r.distinct_eigenvalues.to_string(),
                        ]],
                    )?;
                } else {
                    emit_json(out, &r)?;
                }
                return Ok(EXIT_OK);
            }
            if !*all {
                return Err(Failure::Usage("use --all or --case N --t V".into()));
            }
            let mut rows = Vec::new();
            let mut passed = true;
            for c in case_catalog() {
                let v = validate_claim(&c, CLAIM_NODES, &opts)?;
                let forensic = forensics::boundary_threshold_check(&c);
                passed &= v.passed();
                rows.push(serde_json::json!({
                    "case": c.name,
                    "product": c.product(),
                    "form": v.form,
                    "interval": v.interval,
                    "maxAbsGap": v.max_abs_gap,
                    "minGap": v.min_gap,
                    "twoValued": v.two_valued,
                    "passed": v.passed(),
                    "forensics": forensic.checks,
                }));
            }
            if cli.csv {
                let cells: Vec<Vec<String>> = rows
                    .iter()
                    .map(|r| {
                        ["case", "form", "maxAbsGap", "minGap", "twoValued", "passed"]
                            .iter()
                            .map(|h| match &r[*h] {
                                Value::String(s) => s.clone(),
                                v => v.to_string(),
                            })
                            .collect()
                    })
                    .collect();
                emit_csv(out, &["case", "form", "maxAbsGap", "minGap", "twoValued", "passed"], &cells)?;
            } else {
                emit_json(out, &rows)?;
            }
            Ok(if passed { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Oracle {
            factor,
            check,
            samples,
            seed,
            n,
            m,
            alpha,
            t,
            trials,
        } => {
            let spec = || -> Result<FactorSpec, Failure> {
                let text = factor.as_deref().ok_or_else(|| Failure::Usage("--factor is required".into()))?;
                Ok(text.parse::<FactorSpec>()?)
            };
            let (value, ok) = match check {
                Check::Alpha => {
                    let r = sup_alpha_sq(spec()?, *samples, *seed)?;
                    let ok = r.matches_catalog(1e-6);
                    (serde_json::to_value(&r).map_err(io)?, ok)
                }
                Check::Trace => {
                    let r = sup_alpha_sq(spec()?, *samples, *seed)?;
                    let ok = r.max_abs_trace <= 1e-10;
                    (
                        serde_json::json!({"factor": r.factor, "samples": r.samples, "maxAbsTrace": r.max_abs_trace, "maxAsymmetry": r.max_asymmetry}),
                        ok,
                    )
                }
                Check::Radius => {
                    let r = radius_check(spec()?)?;
                    let ok = r.exact();
                    (serde_json::to_value(&r).map_err(io)?, ok)
                }
                Check::Plucker => {
                    let n = match factor {
                        Some(_) => match spec()? {
                            FactorSpec::OrientedGrassmann { l: 2, k } if k % 2 == 1 => (k as usize - 1) / 2,
                            other => {
                                return Err(Failure::Usage(format!("{other} is not of the form Gor(2,2n+1)")))
                            }
                        },
                        None => *n,
                    };
                    let dev = plucker_orbit_check(n, *trials.min(&10_000), *seed)?;
                    (serde_json::json!({"n": n, "trials": (*trials).min(10_000), "maxDeviation": dev}), dev < 1e-12)
                }
                Check::Detfloor => {
                    let alpha = alpha.unwrap_or((*m as f64).sqrt());
                    let r = sym_det_floor(*m, alpha, *t, *trials, *seed)?;
                    let ok = r.holds(1e-9);
                    (serde_json::to_value(&r).map_err(io)?, ok)
                }
            };
            let mut value = value;
            if let Value::Object(map) = &mut value {
                map.insert("passed".into(), ok.into());
            }
            if cli.csv {
                emit_csv(out, &["field", "value"], &flatten(&value))?;
            } else {
                emit_json(out, &value)?;
            }
            Ok(if ok { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Suite { which } => {
            let reports = run_suite(*which);
            if cli.csv {
                let mut cells = Vec::new();
                for r in &reports {
                    for row in &r.rows {
                        cells.push(vec![
                            r.name.clone(),
                            row.label.clone(),
                            row.passed.to_string(),
                            opt(row.value),
                            opt(row.expected),
                            row.detail.clone(),
                        ]);
                    }
                }
                emit_csv(out, &["suite", "label", "passed", "value", "expected", "detail"], &cells)?;
            } else {
                emit_json(out, &reports)?;
            }
            Ok(if reports.iter().all(|r| r.passed) { EXIT_OK } else { EXIT_FAILED })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut full = vec!["conecert"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(call(&["certify", "G(1,3;Q)"]).0, EXIT_USAGE);
        assert_eq!(call(&["critical7"]).0, EXIT_USAGE);
        assert_eq!(call(&["oracle", "--check", "alpha"]).0, EXIT_USAGE);
    }

    #[test]
    fn certify_csv() {
        let (code, out, _) = call(&["certify", "G(1,2;H) x G(1,2;H)", "--csv"]);
        assert_eq!(code, EXIT_OK);
        let mut lines = out.lines();
        assert!(lines.next().unwrap().starts_with("product,dimC"));
        let row = lines.next().unwrap();
        assert!(row.contains("TABLE_7_TO_12") && row.contains("MINIMIZING") && row.contains("90.0000"));
    }

    #[test]
    fn oracle_failures_exit_one() {
        assert_eq!(call(&["oracle", "--factor", "G(2,4;R)", "--check", "alpha", "--samples", "200"]).0, EXIT_OK);
        assert_eq!(call(&["oracle", "--factor", "G(1,3;R)", "--check", "alpha", "--samples", "200"]).0, EXIT_FAILED);
        assert_eq!(call(&["oracle", "--factor", "Gor(2,5)", "--check", "plucker", "--trials", "10"]).0, EXIT_OK);
    }

    #[test]
    fn json_spec_files() {
        let dir = std::env::temp_dir().join(format!("conecert-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("p.json");
        std::fs::write(&path, r#"{"factors": ["Gor(2,5)", "Gor(2,5)"]}"#).unwrap();
        assert_eq!(read_spec(path.to_str().unwrap()).unwrap(), "Gor(2,5) x Gor(2,5)");
        std::fs::remove_dir_all(dir).unwrap();
    }
}
