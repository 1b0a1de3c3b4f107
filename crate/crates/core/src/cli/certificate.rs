//! Certificates for single products.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::catalog::{parse_product, reduce, to_f64, FactorSpec, Field};
use crate::critical7::{self, certify_dim7, match_factors, CLAIM_TOL};
use crate::error::Result;
use crate::lawlor::{
    self, criterion, Evidence, IntegratorConfig, VanishingAngleResult, VanishingStatus, Verdict,
    CRITERION_MARGIN,
};
use crate::matrixlab::{normal_radius_witness, sup_alpha_sq, DEFAULT_SEED};
use crate::product::{compose, ProductProfile};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    #[serde(rename = "TABLE_7_TO_12")]
    Table7To12,
    #[serde(rename = "SCALED_K_GE_13")]
    ScaledKGe13,
    #[serde(rename = "CRITICAL_DIM7")]
    CriticalDim7,
    #[serde(rename = "UNSUPPORTED")]
    Unsupported,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Tolerances {
    pub criterion_margin: f64,
    pub claim: f64,
    pub witness: f64,
    pub alpha: f64,
    pub integrator: IntegratorConfig,
    pub alpha_samples: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            criterion_margin: CRITERION_MARGIN,
            claim: CLAIM_TOL,
            witness: 1e-12,
            alpha: 1e-9,
            integrator: IntegratorConfig::default(),
            alpha_samples: 1000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Validation {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Validation {
    fn new(name: &str, passed: bool, detail: String) -> Self {
        Validation {
            name: name.to_string(),
            passed,
            detail,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CandidateRow {
    pub factor: String,
    /// Exact cosine as `p/q`.
    pub cos: String,
    pub angle: f64,
    pub angle_deg: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Certificate {
    pub version: String,
    pub seed: u64,
    pub tolerances: Tolerances,
    pub product: String,
    pub factors: Vec<String>,
    pub dim_m: u32,
    pub dim_c: u32,
    pub alpha_sq: f64,
    pub alpha_sq_exact: String,
    pub lambdas: Vec<f64>,
    pub normal_radius: f64,
    pub normal_radius_deg: f64,
    pub candidates: Vec<CandidateRow>,
    pub branch: Branch,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vanishing_angle: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vanishing_angle_deg: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tan_bound: Option<f64>,
    pub verdict: Verdict,
    pub validations: Vec<Validation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theorem: Option<String>,
    pub notes: Vec<String>,
}

impl Certificate {
    pub fn all_validations_pass(&self) -> bool {
        self.validations.iter().all(|v| v.passed)
    }

    /// The angle compared against the normal radius, in radians.
    pub fn angle(&self) -> Option<f64> {
        self.vanishing_angle.or(self.tan_bound.map(f64::atan))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }
}

pub fn round4(x: f64) -> f64 {
    (x * 1e4).round() / 1e4
}

fn cached_vanishing(k: u32, alpha: f64, limit: bool, cfg: &IntegratorConfig) -> Result<VanishingAngleResult> {
    type Key = (u32, u64, bool, u64, u64);
    static CACHE: OnceLock<Mutex<HashMap<Key, VanishingAngleResult>>> = OnceLock::new();
    let key = (k, alpha.to_bits(), limit, cfg.atol.to_bits(), cfg.max_step.to_bits());
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().expect("cache lock").get(&key) {
        return Ok(hit.clone());
    }
    let result = if limit {
        lawlor::theta2_with(k, alpha, cfg)?
    } else {
        lawlor::theta1_with(k, alpha, cfg)?
    };
    cache.lock().expect("cache lock").insert(key, result.clone());
    Ok(result)
}

type AlphaCache = Mutex<HashMap<(FactorSpec, usize, u64), (f64, f64)>>;

/// `(exact sup |H^ξ|², catalog α²)` per factor, cached.
fn alpha_check(spec: FactorSpec, samples: usize, seed: u64) -> Result<(f64, f64)> {
    static CACHE: OnceLock<AlphaCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().expect("cache lock").get(&(spec, samples, seed)) {
        return Ok(*hit);
    }
    let r = sup_alpha_sq(spec, samples, seed)?;
    let value = (r.sampled_sup.max(r.exact_sup), r.catalog);
    cache.lock().expect("cache lock").insert((spec, samples, seed), value);
    Ok(value)
}

fn witness_check(profile: &ProductProfile, tol: f64) -> Result<Validation> {
    static CACHE: OnceLock<Mutex<HashMap<Vec<FactorSpec>, Arc<Validation>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = profile.specs();
    if let Some(hit) = cache.lock().expect("cache lock").get(&key) {
        return Ok((**hit).clone());
    }
    let mut worst: f64 = 0.0;
    for (i, c) in profile.candidates.iter().enumerate() {
        worst = worst.max((normal_radius_witness(profile, i)? - to_f64(c.cos)).abs());
    }
    let v = Validation::new(
        "normal_radius_witness",
        worst <= tol,
        format!("max |witness cos - candidate cos| = {worst:.3e}"),
    );
    cache.lock().expect("cache lock").insert(key, Arc::new(v.clone()));
    Ok(v)
}

fn theorem_label(specs: &[FactorSpec], dim_c: u32) -> Option<String> {
    if dim_c == 7 {
        return match_factors(specs).map(|c| format!("dimension-7 classification, case {}", c.name));
    }
    if dim_c < 7 {
        return None;
    }
    let fields: Vec<Option<Field>> = specs
        .iter()
        .map(|s| match s {
            FactorSpec::Grassmann { field, .. } => Some(*field),
            _ => None,
        })
        .collect();
    if fields.iter().all(Option::is_some) {
        let first = fields[0];
        return Some(if fields.iter().all(|f| *f == first) {
            "same-field Grassmann products, dim C > 7".into()
        } else {
            "mixed-field Grassmann products, dim C > 7".into()
        });
    }
    if specs.iter().all(|s| matches!(s, FactorSpec::OrientedGrassmann { .. })) {
        return Some("oriented Grassmann products in Plücker coordinates".into());
    }
    None
}

pub fn certify(spec_text: &str) -> Result<Certificate> {
    certify_with(spec_text, &Tolerances::default(), DEFAULT_SEED)
}

pub fn certify_with(spec_text: &str, tol: &Tolerances, seed: u64) -> Result<Certificate> {
    let parsed = parse_product(spec_text)?;
    let mut notes = Vec::new();
    let specs: Vec<FactorSpec> = parsed
        .iter()
        .map(|&s| {
            let r = reduce(s);
            if r != s {
                notes.push(format!("{s} is isometric to {r} and was replaced by it"));
            }
            r
        })
        .collect();
    let profile = compose(&specs)?;
    let mut validations = vec![witness_check(&profile, tol.witness)?];
    let mut seen = Vec::new();
    for &s in &specs {
        if seen.contains(&s) {
            continue;
        }
        seen.push(s);
        let (sup, catalog) = alpha_check(s, tol.alpha_samples, seed)?;
        validations.push(Validation::new(
            "alpha_bound",
            sup <= catalog + tol.alpha,
            format!("{s}: sup |H|² = {sup:.9} <= catalog {catalog:.9}"),
        ));
    }

    let radius = profile.normal_radius;
    let k = profile.dim_c;
    let alpha = profile.alpha();
    let mut vanishing_angle = None;
    let mut tan_bound = None;
    let (branch, mut verdict) = match k {
        7 => match match_factors(&specs) {
            Some(case) => {
                let cert = certify_dim7(&case)?;
                validations.push(Validation::new(
                    "closed_form_minimum",
                    cert.max_abs_gap <= tol.claim,
                    format!(
                        "{}: max |numeric - {:?}| = {:.3e} on {} nodes",
                        case.name,
                        cert.form,
                        cert.max_abs_gap,
                        critical7::CLAIM_NODES
                    ),
                ));
                notes.extend(cert.notes.iter().cloned());
                vanishing_angle = cert.angle();
                (Branch::CriticalDim7, cert.verdict)
            }
            None => {
                if specs.contains(&FactorSpec::Sphere { n: 1 }) {
                    notes.push(
                        "products with a circle factor are only known to be stable; the criterion cannot decide them"
                            .into(),
                    );
                } else {
                    notes.push("not among the twelve catalogued dimension-7 products".into());
                }
                (Branch::Unsupported, Verdict::Inconclusive)
            }
        },
        8..=12 => {
            let limit = k == 12;
            let r = cached_vanishing(k, alpha, limit, &tol.integrator)?;
            let refined = cached_vanishing(k, alpha, limit, &tol.integrator.refined())?;
            let drift = match (r.angle(), refined.angle()) {
                (Some(a), Some(b)) => (a - b).abs(),
                _ => f64::INFINITY,
            };
            validations.push(Validation::new(
                "integrator_refinement",
                drift < 1e-4,
                format!("angle change under halved tolerance: {drift:.3e} rad"),
            ));
            vanishing_angle = r.angle();
            if let VanishingStatus::NoVanishingAngle { reason, .. } = r.status {
                notes.push(format!("no vanishing angle ({reason:?})"));
            }
            (Branch::Table7To12, criterion(&Evidence::Vanishing(r.status), radius))
        }
        k if k >= 13 => {
            let b = lawlor::theta2_scaled_bound_with(k, alpha, &tol.integrator)?;
            let kf = k as f64;
            let chain = 2.0 * (2.0 / kf).atan();
            validations.push(Validation::new(
                "cosine_chain",
                b.below_two_over_k && chain < radius,
                format!(
                    "tan bound {:.6} < 2/k = {:.6}; 2·arctan(2/k) = {:.4}° < normal radius {:.4}°",
                    b.tan_bound,
                    2.0 / kf,
                    chain.to_degrees(),
                    radius.to_degrees()
                ),
            ));
            tan_bound = Some(b.tan_bound);
            (Branch::ScaledKGe13, criterion(&Evidence::TanBound(b.tan_bound), radius))
        }
        _ => {
            notes.push("cones of dimension below 7 are outside the reach of the criterion here".into());
            if specs.contains(&FactorSpec::Sphere { n: 1 }) {
                notes.push("products with a circle factor are only known to be stable".into());
            }
            (Branch::Unsupported, Verdict::Inconclusive)
        }
    };
    if verdict == Verdict::Minimizing && !validations.iter().all(|v| v.passed) {
        notes.push("a validation failed; verdict withheld".into());
        verdict = Verdict::Inconclusive;
    }

    Ok(Certificate {
        version: VERSION.to_string(),
        seed,
        tolerances: tol.clone(),
        product: spec_text.trim().to_string(),
        factors: specs.iter().map(ToString::to_string).collect(),
        dim_m: profile.dim_m,
        dim_c: profile.dim_c,
        alpha_sq: profile.alpha_sq_f64(),
        alpha_sq_exact: profile.alpha_sq.to_string(),
        lambdas: profile.lambdas.clone(),
        normal_radius: radius,
        normal_radius_deg: round4(radius.to_degrees()),
        candidates: profile
            .candidates
            .iter()
            .map(|c| CandidateRow {
                factor: specs[c.factor].to_string(),
                cos: c.cos.to_string(),
                angle: c.angle,
                angle_deg: round4(c.angle.to_degrees()),
            })
            .collect(),
        branch,
        vanishing_angle,
        vanishing_angle_deg: vanishing_angle.map(|a| round4(a.to_degrees())),
        tan_bound,
        verdict,
        validations,
        theorem: theorem_label(&specs, profile.dim_c),
        notes,
    })
}
