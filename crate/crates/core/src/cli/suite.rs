//! Reproduction suites. Each `criterion_*` function checks one group of
//! published or derived values and reports one row per value.

use std::collections::BTreeSet;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use super::certificate::{certify, Certificate};
use crate::catalog::{to_f64, FactorSpec, Field};
use crate::critical7::forensics::boundary_threshold_check;
use crate::critical7::sampler::{full_normal_check, FULL_SAMPLES};
use crate::critical7::{
    case_catalog, minimize_jacobian_with, validate_claim, ClosedForm, MinimizeOptions, MultistartConfig,
    CLAIM_NODES, CLAIM_TOL,
};
use crate::lawlor::{
    integrate_vn_with, theta1_with, theta2_with, IntegratorConfig, JacobianBound, VanishingStatus, Verdict,
};
use crate::matrixlab::oracles::radius_check;
use crate::matrixlab::{normal_radius_witness, plucker_orbit_check, sup_alpha_sq, sym_det_floor, DEFAULT_SEED};
use crate::product::compose;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteRow {
    pub label: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<f64>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub name: String,
    pub passed: bool,
    pub rows: Vec<SuiteRow>,
}

impl SuiteReport {
    fn new(name: &str, rows: Vec<SuiteRow>) -> Self {
        SuiteReport {
            name: name.to_string(),
            passed: rows.iter().all(|r| r.passed),
            rows,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &SuiteRow> {
        self.rows.iter().filter(|r| !r.passed)
    }

    /// One line: name, pass/fail and the count of failing rows.
    pub fn summary(&self) -> String {
        let failed = self.failures().count();
        if failed == 0 {
            format!("PASS  {} ({} checks)", self.name, self.rows.len())
        } else {
            let first = self.failures().next().expect("failure");
            format!(
                "FAIL  {} ({failed}/{} checks failed; first: {}: {})",
                self.name,
                self.rows.len(),
                first.label,
                first.detail
            )
        }
    }
}

fn row(label: impl Into<String>, passed: bool, value: Option<f64>, expected: Option<f64>, detail: impl Into<String>) -> SuiteRow {
    SuiteRow {
        label: label.into(),
        passed,
        value,
        expected,
        detail: detail.into(),
    }
}

fn angle_row(label: &str, status: VanishingStatus, expected_deg: f64, tol_deg: f64) -> SuiteRow {
    match status {
        VanishingStatus::Vanishes { angle } => {
            let deg = angle.to_degrees();
            row(
                label,
                (deg - expected_deg).abs() <= tol_deg,
                Some(deg),
                Some(expected_deg),
                format!("{deg:.4}° vs {expected_deg}° ± {tol_deg}°"),
            )
        }
        VanishingStatus::NoVanishingAngle { reason, .. } => row(
            label,
            false,
            None,
            Some(expected_deg),
            format!("no vanishing angle ({reason:?})"),
        ),
    }
}

/// Vanishing angles of the two generic bounds and the three dimension-7 forms.
pub fn criterion_vanishing_angles() -> SuiteReport {
    let cfg = IntegratorConfig::default();
    let mut rows = Vec::new();
    let exact = |form| integrate_vn_with(7, &JacobianBound::CaseExact { form }, &cfg);
    match theta1_with(9, 8f64.sqrt(), &cfg) {
        Ok(r) => rows.push(angle_row("theta1(9, √8)", r.status, 12.99, 0.05)),
        Err(e) => rows.push(row("theta1(9, √8)", false, None, None, e.to_string())),
    }
    match theta2_with(12, 11f64.sqrt(), &cfg) {
        Ok(r) => rows.push(angle_row("theta2(12, √11)", r.status, 15.84, 0.2)),
        Err(e) => rows.push(row("theta2(12, √11)", false, None, None, e.to_string())),
    }
    for (label, form, expected, tol) in [("E at k = 7", ClosedForm::E, 19.9, 0.1), ("G at k = 7", ClosedForm::G, 19.0, 0.3)] {
        match exact(form) {
            Ok(r) => rows.push(angle_row(label, r.status, expected, tol)),
            Err(e) => rows.push(row(label, false, None, None, e.to_string())),
        }
    }
    match exact(ClosedForm::F) {
        Ok(r) => {
            let none = matches!(r.status, VanishingStatus::NoVanishingAngle { .. });
            rows.push(row("F at k = 7", none, r.angle().map(f64::to_degrees), None, format!("{:?}", r.status)));
        }
        Err(e) => rows.push(row("F at k = 7", false, None, None, e.to_string())),
    }
    SuiteReport::new("vanishing angles", rows)
}

/// Exact normal-radius cosines and their explicit witnesses.
pub fn criterion_normal_radii() -> SuiteReport {
    let mut rows = Vec::new();
    for (text, cos) in [
        ("G(1,3;R) x G(1,3;R) x G(1,3;R)", Rational64::new(1, 2)),
        ("G(1,4;R) x G(1,4;R)", Rational64::new(1, 3)),
        ("G(1,2;H) x G(1,2;H)", Rational64::new(0, 1)),
        ("Gor(2,4) x Gor(2,4)", Rational64::new(1, 2)),
        ("S(2) x S(2) x G(1,3;R)", Rational64::new(1, 2)),
    ] {
        let result = compose(&crate::catalog::parse_product(text).expect("valid product")).and_then(|p| {
            let worst = (0..p.factors.len())
                .map(|i| normal_radius_witness(&p, i).map(|w| (w - to_f64(p.candidates[i].cos)).abs()))
                .collect::<crate::error::Result<Vec<_>>>()?
                .into_iter()
                .fold(0.0, f64::max);
            Ok((p.normal_cos, worst))
        });
        match result {
            Ok((got, worst)) => rows.push(row(
                text,
                got == cos && worst <= 1e-12,
                Some(to_f64(got)),
                Some(to_f64(cos)),
                format!("cos = {got} (expected {cos}); witness deviation {worst:.2e}"),
            )),
            Err(e) => rows.push(row(text, false, None, Some(to_f64(cos)), e.to_string())),
        }
    }
    SuiteReport::new("normal radii", rows)
}

/// Closed-form minima on 32 slopes, the full-normal sampler and
/// two-valuedness of the argmin spectrum, for all twelve cases.
pub fn criterion_critical_cases(samples: usize) -> SuiteReport {
    let opts = MinimizeOptions::default();
    let mut rows = Vec::new();
    for case in case_catalog() {
        let label = format!("{} ({:?})", case.name, case.claimed);
        let v = match validate_claim(&case, CLAIM_NODES, &opts) {
            Ok(v) => v,
            Err(e) => {
                rows.push(row(label, false, None, None, e.to_string()));
                continue;
            }
        };
        let sampler = full_normal_check(&case, &v.reports, samples, DEFAULT_SEED);
        let (undercut, detail) = match &sampler {
            Ok(s) => (s.worst_undercut, format!("sampler worst undercut {:.2e} over {} normals", s.worst_undercut, s.samples)),
            Err(e) => (f64::INFINITY, e.to_string()),
        };
        rows.push(row(
            label,
            v.max_abs_gap <= CLAIM_TOL && v.two_valued && undercut <= CLAIM_TOL,
            Some(v.max_abs_gap),
            Some(0.0),
            format!("max |gap| {:.2e}, two-valued {}, {detail}", v.max_abs_gap, v.two_valued),
        ));
    }
    SuiteReport::new("critical cases", rows)
}

/// Sign-pattern threshold of the projective cube and the derivative data of `ℝP² × ℝP⁴`.
pub fn criterion_thresholds() -> SuiteReport {
    let mut rows = Vec::new();
    let catalog = case_catalog();
    let find = |name: &str| catalog.iter().find(|c| c.name == name).expect("catalogued");
    let cube = boundary_threshold_check(find("RP2xRP2xRP2"));
    let four = boundary_threshold_check(find("RP2xRP4"));
    for (report, names) in [
        (&cube, &["threshold", "boundary_sign_below", "boundary_sign_above"][..]),
        (&four, &["h2_root", "h1_min_at_threshold"][..]),
    ] {
        for name in names {
            match report.check(name) {
                Some(c) => rows.push(row(
                    format!("{} {}", report.case, name),
                    c.pass,
                    Some(c.value),
                    c.expected,
                    c.detail.clone(),
                )),
                None => rows.push(row(format!("{} {}", report.case, name), false, None, None, "missing check")),
            }
        }
    }
    SuiteReport::new("threshold forensics", rows)
}

/// Random trace-free matrices never beat the two-valued floor.
pub fn criterion_det_floor(trials: usize) -> SuiteReport {
    let mut rows = Vec::new();
    for m in [4usize, 5, 6] {
        for alpha in [6f64.sqrt(), (m as f64).sqrt()] {
            let cap = JacobianBound::TwoEigen { alpha, m: m as u32, r: 1 }.validity_cap();
            for t in [0.1f64, 0.2, 0.4] {
                let t = t.min(cap * (1.0 - 1e-9));
                let label = format!("m={m} α={alpha:.4} t={t:.4}");
                match sym_det_floor(m, alpha, t, trials, DEFAULT_SEED ^ m as u64) {
                    Ok(r) => rows.push(row(
                        label,
                        r.holds(1e-9),
                        Some(r.empirical_min),
                        Some(r.bound),
                        format!("min {:.9} >= L {:.9}; extremal {:.9}", r.empirical_min, r.bound, r.extremal),
                    )),
                    Err(e) => rows.push(row(label, false, None, None, e.to_string())),
                }
            }
        }
    }
    SuiteReport::new("eigenvalue floor", rows)
}

/// Grassmannians `G(l,k;F)` with `k <= 5` and `l <= k - l`.
pub fn small_grassmannians() -> Vec<FactorSpec> {
    let mut out = Vec::new();
    for field in [Field::R, Field::C, Field::H] {
        for k in 2..=5 {
            for l in 1..=k / 2 {
                out.push(FactorSpec::grassmann(field, l, k));
            }
        }
    }
    out
}

/// Sup of `|H^ξ|²`, trace and radius for every small Grassmannian.
pub fn criterion_embedding_oracle(samples: usize) -> SuiteReport {
    let mut rows = Vec::new();
    for spec in small_grassmannians() {
        match (sup_alpha_sq(spec, samples, DEFAULT_SEED), radius_check(spec)) {
            (Ok(a), Ok(r)) => rows.push(row(
                spec.to_string(),
                a.matches_catalog(1e-6) && a.max_abs_trace <= 1e-10 && r.exact(),
                Some(a.sampled_sup),
                Some(a.catalog),
                format!(
                    "sup |H|² {:.9} vs catalog {:.9}; max |tr| {:.1e}; r² {} vs {}",
                    a.sampled_sup, a.catalog, a.max_abs_trace, r.radius_sq, r.catalog
                ),
            )),
            (Err(e), _) | (_, Err(e)) => rows.push(row(spec.to_string(), false, None, None, e.to_string())),
        }
    }
    SuiteReport::new("embedding oracle", rows)
}

/// Scaled tangent bound and the cosine chain for `k ∈ [13, 60]`.
pub fn criterion_scaling() -> SuiteReport {
    let cfg = IntegratorConfig::default();
    let mut rows = Vec::new();
    for k in 13u32..=60 {
        let kf = k as f64;
        let chain = 2.0 * (2.0 / kf).atan() < (1.0 - 2.0 / (kf - 1.0)).acos();
        match crate::lawlor::theta2_scaled_bound_with(k, (kf - 1.0).sqrt(), &cfg) {
            Ok(b) => rows.push(row(
                format!("k = {k}"),
                b.below_two_over_k && chain,
                Some(b.tan_bound),
                Some(2.0 / kf),
                format!("tan bound {:.6} < {:.6}; chain {chain}", b.tan_bound, 2.0 / kf),
            )),
            Err(e) => rows.push(row(format!("k = {k}"), false, None, None, e.to_string())),
        }
    }
    SuiteReport::new("scaling branch", rows)
}

/// Factor types of dimension at most `max_dim`.
fn grassmann_types(field: Field, max_dim: u32) -> Vec<FactorSpec> {
    let d = field.dim();
    let mut out = Vec::new();
    for l in 1..=max_dim {
        for k in 2 * l..=max_dim + l {
            if d * l * (k - l) <= max_dim {
                out.push(FactorSpec::grassmann(field, l, k));
            }
        }
    }
    out
}

fn oriented_types(max_dim: u32) -> Vec<FactorSpec> {
    let mut out = Vec::new();
    for l in 2..=max_dim {
        for k in 2 * l..=max_dim + l {
            if l * (k - l) <= max_dim {
                out.push(FactorSpec::oriented(l, k));
            }
        }
    }
    out
}

/// Multisets of `types` whose dimensions sum into `[lo, hi]`.
fn products_in_range(types: &[FactorSpec], lo: u32, hi: u32) -> Vec<Vec<FactorSpec>> {
    fn rec(types: &[FactorSpec], start: usize, sum: u32, lo: u32, hi: u32, cur: &mut Vec<FactorSpec>, out: &mut Vec<Vec<FactorSpec>>) {
        if sum >= lo && !cur.is_empty() {
            out.push(cur.clone());
        }
        for i in start..types.len() {
            let d = types[i].dim();
            if sum + d <= hi {
                cur.push(types[i]);
                rec(types, i, sum + d, lo, hi, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(types, 0, 0, lo, hi, &mut Vec::new(), &mut out);
    out
}

fn join(specs: &[FactorSpec]) -> String {
    specs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" x ")
}

/// Every product covered by the area-minimization theorems, at desk scale.
pub fn theorem_products() -> Vec<String> {
    let mut out = BTreeSet::new();
    for field in [Field::R, Field::C, Field::H] {
        for p in products_in_range(&grassmann_types(field, 16), 7, 16) {
            out.insert(join(&p));
        }
    }
    for text in [
        "G(1,3;C) x G(1,3;H)",
        "G(2,4;R) x G(1,3;H)",
        "G(1,4;R) x G(1,3;C) x G(1,2;H)",
        "G(2,5;R) x G(1,3;C)",
        "G(1,2;C) x G(2,4;C) x G(1,3;R)",
        "G(2,4;H) x G(1,4;R)",
    ] {
        out.insert(text.to_string());
    }
    for p in products_in_range(&oriented_types(16), 8, 16) {
        out.insert(join(&p));
    }
    for case in case_catalog() {
        out.insert(case.product());
    }
    out.into_iter().collect()
}

/// Theorem products certify as minimizing; circle products stay inconclusive.
pub fn criterion_end_to_end() -> SuiteReport {
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    let products = theorem_products();
    let mut by_branch = std::collections::BTreeMap::<String, usize>::new();
    for text in &products {
        match certify(text) {
            Ok(c) if c.verdict == Verdict::Minimizing => {
                *by_branch.entry(format!("{:?}", c.branch)).or_default() += 1;
            }
            Ok(c) => failures.push(format!("{text}: {:?} {:?}", c.verdict, c.notes)),
            Err(e) => failures.push(format!("{text}: {e}")),
        }
    }
    rows.push(row(
        format!("{} theorem products", products.len()),
        failures.is_empty(),
        Some((products.len() - failures.len()) as f64),
        Some(products.len() as f64),
        if failures.is_empty() {
            format!("all MINIMIZING; branches {by_branch:?}")
        } else {
            format!("{} not minimizing, e.g. {}", failures.len(), failures[0])
        },
    ));
    for text in ["S(1) x G(1,3;R)", "G(1,2;R) x G(1,3;R)"] {
        let c: Option<Certificate> = certify(text).ok();
        rows.push(row(
            text,
            c.as_ref().is_some_and(|c| c.verdict == Verdict::Inconclusive),
            None,
            None,
            c.map_or("failed to certify".into(), |c| format!("{:?}: {:?}", c.verdict, c.notes)),
        ));
    }
    SuiteReport::new("end to end", rows)
}

pub fn criterion_plucker(trials: usize) -> SuiteReport {
    let rows = [2usize, 3]
        .into_iter()
        .map(|n| match plucker_orbit_check(n, trials, DEFAULT_SEED + n as u64) {
            Ok(dev) => row(format!("n = {n}"), dev < 1e-12, Some(dev), Some(0.0), format!("max deviation {dev:.2e} over {trials} rotations")),
            Err(e) => row(format!("n = {n}"), false, None, None, e.to_string()),
        })
        .collect();
    SuiteReport::new("Plücker orbit", rows)
}

/// Angle drift under halved integrator tolerances and minimum drift under
/// doubled multistart seeds.
pub fn criterion_robustness() -> SuiteReport {
    let base = IntegratorConfig::default();
    let fine = base.refined();
    let mut rows = Vec::new();
    let mut bounds: Vec<(String, u32, JacobianBound)> = Vec::new();
    for k in 8u32..=12 {
        let alpha = ((k - 1) as f64).sqrt();
        bounds.push((format!("theta1({k}, √{})", k - 1), k, JacobianBound::GenericF { alpha, m: k - 1 }));
        bounds.push((format!("theta2({k}, √{})", k - 1), k, JacobianBound::GenericLimit { alpha }));
    }
    bounds.push(("theta1(9, √8)".into(), 9, JacobianBound::GenericF { alpha: 8f64.sqrt(), m: 8 }));
    for form in [ClosedForm::E, ClosedForm::G] {
        bounds.push((format!("{form:?} at k = 7"), 7, JacobianBound::CaseExact { form }));
    }
    for (label, k, bound) in bounds {
        let a = integrate_vn_with(k, &bound, &base).ok().and_then(|r| r.angle());
        let b = integrate_vn_with(k, &bound, &fine).ok().and_then(|r| r.angle());
        let drift = match (a, b) {
            (Some(a), Some(b)) => (a - b).abs(),
            _ => f64::INFINITY,
        };
        rows.push(row(label, drift < 1e-4, Some(drift), Some(0.0), format!("{drift:.2e} rad")));
    }
    let single = MinimizeOptions::default();
    let double = MinimizeOptions {
        search: MultistartConfig {
            starts: 2 * single.search.starts,
            ..single.search
        },
        ..single
    };
    for case in case_catalog() {
        let mut worst: f64 = 0.0;
        let mut err = None;
        for t in [0.1, 0.2, 0.3] {
            match (minimize_jacobian_with(&case, t, &single), minimize_jacobian_with(&case, t, &double)) {
                (Ok(a), Ok(b)) => worst = worst.max((a.numeric_min - b.numeric_min).abs()),
                (Err(e), _) | (_, Err(e)) => err = Some(e.to_string()),
            }
        }
        rows.push(row(
            format!("{} doubled starts", case.name),
            err.is_none() && worst < 1e-9,
            Some(worst),
            Some(0.0),
            err.unwrap_or_else(|| format!("{worst:.2e}")),
        ));
    }
    SuiteReport::new("numerical robustness", rows)
}

/// Runs the numbered criteria `1..=10`.
pub fn criterion(n: u8) -> Option<SuiteReport> {
    Some(match n {
        1 => criterion_vanishing_angles(),
        2 => criterion_normal_radii(),
        3 => criterion_critical_cases(FULL_SAMPLES),
        4 => criterion_thresholds(),
        5 => criterion_det_floor(100_000),
        6 => criterion_embedding_oracle(2000),
        7 => criterion_scaling(),
        8 => criterion_end_to_end(),
        9 => criterion_plucker(100),
        10 => criterion_robustness(),
        _ => return None,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Which {
    Table,
    Critical7,
    Oracle,
    EndToEnd,
    Robustness,
    All,
}

pub fn run_suite(which: Which) -> Vec<SuiteReport> {
    let ids: &[u8] = match which {
        Which::Table => &[1, 7],
        Which::Critical7 => &[3, 4],
        Which::Oracle => &[2, 5, 6, 9],
        Which::EndToEnd => &[8],
        Which::Robustness => &[10],
        Which::All => &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10],
    };
    ids.iter().filter_map(|&n| criterion(n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theorem_products_cover_the_examples() {
        let all = theorem_products();
        for p in ["G(1,2;H) x G(1,2;H)", "Gor(2,5) x Gor(2,5)", "Gor(2,4) x Gor(2,4)", "G(1,3;R) x G(1,3;R) x G(1,3;R)"] {
            assert!(all.iter().any(|x| x == p), "{p}");
        }
        assert!(all.len() > 100);
    }

    #[test]
    fn multisets_respect_the_range() {
        let types = grassmann_types(Field::H, 8);
        for p in products_in_range(&types, 7, 8) {
            let d: u32 = p.iter().map(FactorSpec::dim).sum();
            assert!((7..=8).contains(&d));
        }
    }

    #[test]
    fn summaries_name_the_first_failure() {
        let r = SuiteReport::new("x", vec![row("a", true, None, None, ""), row("b", false, None, None, "why")]);
        assert!(r.summary().starts_with("FAIL  x (1/2"));
        assert!(r.summary().contains("b: why"));
    }
}
