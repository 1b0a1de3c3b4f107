//! Cones of dimension 7 over minimal products.
//!
//! At `dim M = 6` the generic bound `F(t)` has no vanishing angle, so each of
//! the twelve catalogued products is handled by minimizing
//! `det(I - t H^v)` over its unit normals and comparing the minimum with one
//! of the closed forms
//!
//! ```text
//! E(t) = (1 - √2 t)² (1 + t/√2)⁴
//! F(t) = (1 - √5 t) (1 + t/√5)⁵
//! G(t) = (1 - t)³ (1 + t)³
//! ```
//!
//! A claimed closed form is only used for certification after a numeric
//! minimization on a Chebyshev grid of its interval agrees with it.

pub mod cases;
pub mod forensics;
pub mod optimize;
pub mod sampler;

use std::f64::consts::{PI, SQRT_2};

use serde::{Deserialize, Serialize};

pub use cases::{det_of_spectrum, CaseKind, FourVariant, NormalLift};
pub use optimize::MultistartConfig;

use crate::catalog::FactorSpec;
use crate::error::{Error, Result};
use crate::lawlor::{self, Evidence, JacobianBound, VanishingStatus, Verdict};
use crate::product::{compose, ProductProfile};

/// Largest slope accepted by default, `1/√5`.
pub const T_CAP: f64 = 0.447_213_595_499_958;
/// End of the claimed interval for `E`, `2√2/7`.
pub const E_THRESHOLD: f64 = 2.0 * SQRT_2 / 7.0;
/// Tolerance for agreement between a numeric minimum and a closed form.
pub const CLAIM_TOL: f64 = 1e-6;

pub fn poly_e(t: f64) -> f64 {
    (1.0 - t * SQRT_2).powi(2) * (1.0 + t / SQRT_2).powi(4)
}

pub fn poly_f(t: f64) -> f64 {
    let r5 = 5f64.sqrt();
    (1.0 - t * r5) * (1.0 + t / r5).powi(5)
}

pub fn poly_g(t: f64) -> f64 {
    (1.0 - t * t).powi(3)
}

/// Minimum of `det(I - tA)` over trace-free symmetric `6×6` matrices with
/// `|A|² = 6` and two eigenvalues, indexed by the multiplicity of the
/// positive one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClosedForm {
    E,
    F,
    G,
}

impl ClosedForm {
    pub fn eval(&self, t: f64) -> f64 {
        match self {
            ClosedForm::E => poly_e(t),
            ClosedForm::F => poly_f(t),
            ClosedForm::G => poly_g(t),
        }
    }

    pub fn multiplicity(&self) -> u32 {
        match self {
            ClosedForm::F => 1,
            ClosedForm::E => 2,
            ClosedForm::G => 3,
        }
    }

    pub fn spectrum(&self) -> [f64; 6] {
        let r = self.multiplicity() as f64;
        let pos = (6.0 * (6.0 - r) / (6.0 * r)).sqrt();
        let neg = -(6.0 * r / (6.0 * (6.0 - r))).sqrt();
        let mut out = [neg; 6];
        for v in out.iter_mut().take(self.multiplicity() as usize) {
            *v = pos;
        }
        out
    }

    pub fn curvature_sq(&self) -> f64 {
        6.0
    }

    /// Smallest positive root.
    pub fn first_root(&self) -> f64 {
        1.0 / self.spectrum()[0]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CriticalCase {
    pub name: &'static str,
    pub kind: CaseKind,
    pub claimed: ClosedForm,
    /// Open `t`-interval on which `claimed` is asserted to be the minimum.
    pub interval: (f64, f64),
    pub note: Option<&'static str>,
}

impl CriticalCase {
    pub fn factors(&self) -> Vec<FactorSpec> {
        self.kind.factors()
    }

    pub fn product(&self) -> String {
        self.factors()
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" x ")
    }

    pub fn profile(&self) -> ProductProfile {
        compose(&self.factors()).expect("catalogued factors are valid")
    }

    /// Family number `1..=5`; sphere variants share the family of the product
    /// they restrict.
    pub fn family(&self) -> u8 {
        self.kind.family()
    }

    pub fn param_dim(&self) -> usize {
        self.kind.box_dim()
    }

    pub fn domain(&self) -> &'static str {
        self.kind.domain()
    }

    pub fn spectrum(&self, params: &[f64]) -> [f64; 6] {
        self.kind.spectrum(params)
    }

    /// `det(I - t H^v)` at the normal with parameters `params`.
    pub fn jacobian(&self, params: &[f64], t: f64) -> f64 {
        det_of_spectrum(&self.kind.spectrum(params), t)
    }

    pub fn lift(&self, params: &[f64]) -> NormalLift {
        self.kind.lift(params)
    }
}

pub fn case_catalog() -> Vec<CriticalCase> {
    use CaseKind::*;
    use FourVariant::*;
    let e = |name, kind| CriticalCase {
        name,
        kind,
        claimed: ClosedForm::E,
        interval: (0.0, E_THRESHOLD),
        note: None,
    };
    let g = |name, kind| CriticalCase {
        name,
        kind,
        claimed: ClosedForm::G,
        interval: (0.0, T_CAP),
        note: None,
    };
    vec![
        e("RP2xRP2xRP2", Cube { carrier: 0 }),
        e("RP2xG24", PlaneGrass { sphere: false }),
        e("RP2xRP4", PlaneFour(Full)),
        g("RP3xRP3", ThreeThree { sphere: false }),
        CriticalCase {
            note: Some(
                "E(t) is the minimum only up to t = 2√2/7; on the b = 0 axis the \
                 minimum drops below E(t) for larger t",
            ),
            ..e("RP2xCP2", PlaneProjC { sphere: false })
        },
        e("S2xS2xRP2", Cube { carrier: 2 }),
        e("S2xRP2xRP2", Cube { carrier: 1 }),
        e("S2xCP2", PlaneProjC { sphere: true }),
        e("S2xRP4", PlaneFour(SphereTwo)),
        CriticalCase {
            note: Some("sphere variant of RP2 x G(2,4;R); the normal family is the c = 0 slice"),
            ..e("S2xG24", PlaneGrass { sphere: true })
        },
        e("S4xRP2", PlaneFour(SphereFour)),
        g("S3xRP3", ThreeThree { sphere: true }),
    ]
}

/// Looks a case up by name (case-insensitive), by 1-based index, or by a
/// product specification with the same factors in any order.
pub fn find_case(query: &str) -> Option<CriticalCase> {
    let cases = case_catalog();
    let q = query.trim();
    if let Ok(i) = q.parse::<usize>() {
        return cases.into_iter().nth(i.checked_sub(1)?);
    }
    if let Some(c) = cases.iter().find(|c| c.name.eq_ignore_ascii_case(q)) {
        return Some(c.clone());
    }
    let specs = crate::catalog::parse_product(q).ok()?;
    match_factors(&specs)
}

/// The catalogued case with exactly these factors, up to order.
pub fn match_factors(specs: &[FactorSpec]) -> Option<CriticalCase> {
    let key = |v: &[FactorSpec]| {
        let mut s: Vec<String> = v.iter().map(ToString::to_string).collect();
        s.sort();
        s
    };
    let want = key(specs);
    case_catalog().into_iter().find(|c| key(&c.factors()) == want)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MinimizeOptions {
    /// Slopes must lie in `(0, t_cap)`.
    pub t_cap: f64,
    pub search: MultistartConfig,
}

impl Default for MinimizeOptions {
    fn default() -> Self {
        MinimizeOptions {
            t_cap: T_CAP,
            search: MultistartConfig::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MinimizationReport {
    pub case: String,
    pub t: f64,
    pub numeric_min: f64,
    /// Minimizing parameters in the case's own variables.
    pub argmin: Vec<f64>,
    pub closed_form: f64,
    pub gap: f64,
    pub within_claim: bool,
    /// Eigenvalues of `H^v` at the argmin, ascending.
    pub spectrum: Vec<f64>,
    /// Number of distinct eigenvalues at tolerance `1e-6`.
    pub distinct_eigenvalues: usize,
}

pub fn minimize_jacobian(case: &CriticalCase, t: f64) -> Result<MinimizationReport> {
    minimize_jacobian_with(case, t, &MinimizeOptions::default())
}

pub fn minimize_jacobian_with(
    case: &CriticalCase,
    t: f64,
    opts: &MinimizeOptions,
) -> Result<MinimizationReport> {
    if !(t > 0.0 && t < opts.t_cap) {
        return Err(Error::OutOfRange {
            what: "t",
            value: t,
            range: format!("0 < t < {:.6}", opts.t_cap),
        });
    }
    let f = |u: &[f64]| log_jacobian(&case.spectrum(&case.kind.from_box(u)), t);
    let best = optimize::multistart(&f, case.param_dim(), &opts.search);
    let argmin = case.kind.from_box(&best.x);
    let value = case.jacobian(&argmin, t);
    let mut spectrum = case.spectrum(&argmin).to_vec();
    spectrum.sort_by(f64::total_cmp);
    let closed_form = case.claimed.eval(t);
    Ok(MinimizationReport {
        case: case.name.to_string(),
        t,
        numeric_min: value,
        argmin,
        closed_form,
        gap: value - closed_form,
        within_claim: t > case.interval.0 && t < case.interval.1,
        distinct_eigenvalues: distinct_values(&spectrum, 1e-6),
        spectrum,
    })
}

/// `ln det(I - tH)` with `ln(1 + x)` accuracy for small `t`; nonpositive
/// determinants map below every logarithm.
fn log_jacobian(mu: &[f64], t: f64) -> f64 {
    if mu.iter().all(|m| t * m < 1.0) {
        mu.iter().map(|m| (-t * m).ln_1p()).sum()
    } else {
        det_of_spectrum(mu, t) - 1e3
    }
}

/// Number of clusters of sorted `values` whose consecutive gaps exceed `tol`.
pub fn distinct_values(sorted: &[f64], tol: f64) -> usize {
    if sorted.is_empty() {
        return 0;
    }
    1 + sorted.windows(2).filter(|w| w[1] - w[0] > tol).count()
}

/// `n` Chebyshev nodes of the first kind inside `(lo, hi)`.
pub fn chebyshev_nodes(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|j| {
            let x = ((2 * j + 1) as f64 * PI / (2 * n) as f64).cos();
            lo + (hi - lo) * (1.0 - x) / 2.0
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClaimValidation {
    pub case: String,
    pub form: ClosedForm,
    pub interval: (f64, f64),
    pub reports: Vec<MinimizationReport>,
    /// Largest `|numeric_min - closed_form|` over the grid.
    pub max_abs_gap: f64,
    pub min_gap: f64,
    /// Every argmin has at most two distinct eigenvalues.
    pub two_valued: bool,
}

impl ClaimValidation {
    pub fn passed(&self) -> bool {
        self.max_abs_gap <= CLAIM_TOL && self.two_valued
    }
}

pub const CLAIM_NODES: usize = 32;

/// Minimizes on `nodes` Chebyshev points of the claimed interval. A numeric
/// minimum below the closed form by more than [`CLAIM_TOL`] is an error.
pub fn validate_claim(case: &CriticalCase, nodes: usize, opts: &MinimizeOptions) -> Result<ClaimValidation> {
    let (lo, hi) = case.interval;
    let mut reports = Vec::with_capacity(nodes);
    for t in chebyshev_nodes(lo, hi, nodes) {
        let r = minimize_jacobian_with(case, t, opts)?;
        if r.gap < -CLAIM_TOL {
            return Err(Error::ClaimRejected {
                case: case.name.to_string(),
                t,
                numeric_min: r.numeric_min,
                closed_form: r.closed_form,
            });
        }
        reports.push(r);
    }
    let max_abs_gap = reports.iter().map(|r| r.gap.abs()).fold(0.0, f64::max);
    let min_gap = reports.iter().map(|r| r.gap).fold(f64::INFINITY, f64::min);
    let two_valued = reports.iter().all(|r| r.distinct_eigenvalues <= 2);
    Ok(ClaimValidation {
        case: case.name.to_string(),
        form: case.claimed,
        interval: case.interval,
        reports,
        max_abs_gap,
        min_gap,
        two_valued,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Dim7Certificate {
    pub case: String,
    pub product: String,
    pub form: ClosedForm,
    pub interval: (f64, f64),
    pub vanishing: VanishingStatus,
    pub normal_radius: f64,
    pub max_abs_gap: f64,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

impl Dim7Certificate {
    pub fn angle(&self) -> Option<f64> {
        match self.vanishing {
            VanishingStatus::Vanishes { angle } => Some(angle),
            VanishingStatus::NoVanishingAngle { .. } => None,
        }
    }
}

pub fn certify_dim7(case: &CriticalCase) -> Result<Dim7Certificate> {
    certify_dim7_with(case, &MinimizeOptions::default())
}

pub fn certify_dim7_with(case: &CriticalCase, opts: &MinimizeOptions) -> Result<Dim7Certificate> {
    let validation = validate_claim(case, CLAIM_NODES, opts)?;
    let mut notes: Vec<String> = case.note.iter().map(|s| s.to_string()).collect();
    if !validation.passed() {
        return Err(Error::Unsupported(format!(
            "{}: closed form {:?} not reproduced (max gap {:.3e}, two-valued {})",
            case.name, case.claimed, validation.max_abs_gap, validation.two_valued
        )));
    }
    let vn = lawlor::integrate_vn(7, &JacobianBound::CaseExact { form: case.claimed })?;
    let radius = case.profile().normal_radius;
    let mut verdict = lawlor::criterion(&Evidence::Vanishing(vn.status), radius);
    if let Some(angle) = vn.angle() {
        if angle.tan() >= case.interval.1 {
            notes.push(format!(
                "tan of the vanishing angle {:.4} leaves the validated interval",
                angle.tan()
            ));
            verdict = Verdict::Inconclusive;
        }
    }
    Ok(Dim7Certificate {
        case: case.name.to_string(),
        product: case.product(),
        form: case.claimed,
        interval: case.interval,
        vanishing: vn.status,
        normal_radius: radius,
        max_abs_gap: validation.max_abs_gap,
        verdict,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn case(name: &str) -> CriticalCase {
        find_case(name).unwrap()
    }

    #[test]
    fn closed_forms() {
        for f in [ClosedForm::E, ClosedForm::F, ClosedForm::G] {
            assert_eq!(f.eval(0.0), 1.0);
            let mu = f.spectrum();
            assert!(mu.iter().sum::<f64>().abs() < 1e-14);
            assert!((mu.iter().map(|m| m * m).sum::<f64>() - 6.0).abs() < 1e-13);
            for t in [0.1, 0.25, 0.4] {
                assert!((det_of_spectrum(&mu, t) - f.eval(t)).abs() < 1e-14);
            }
        }
        assert!((poly_e(0.3) - 0.715_560_542).abs() < 1e-9);
        assert_eq!(poly_g(1.0), 0.0);
        assert!((ClosedForm::E.first_root() - 1.0 / SQRT_2).abs() < 1e-15);
        assert!((ClosedForm::F.first_root() - T_CAP).abs() < 1e-15);
    }

    #[test]
    fn catalog_has_twelve_distinct_products() {
        let cases = case_catalog();
        assert_eq!(cases.len(), 12);
        for c in &cases {
            assert_eq!(c.profile().dim_c, 7);
            assert_eq!(match_factors(&c.factors()).unwrap().name, c.name);
        }
        assert_eq!(find_case("G( 1,3 ; R )x S(2)xS(2)").unwrap().name, "S2xS2xRP2");
        assert_eq!(find_case("4").unwrap().name, "RP3xRP3");
        assert!(find_case("S(1) x G(1,3;R)").is_none());
    }

    #[test]
    fn argmin_examples() {
        let r23 = (2.0f64 / 3.0).sqrt();
        for t in [0.1, 0.3] {
            let c1 = case("RP2xRP2xRP2");
            assert!((c1.jacobian(&[r23, 0.0], t) - poly_e(t)).abs() < 1e-14);
            let c4 = case("RP3xRP3");
            assert!((c4.jacobian(&[1.0 / SQRT_2, 0.0, 0.0], t) - poly_g(t)).abs() < 1e-14);
        }
        for c in case_catalog() {
            let p = c.kind.from_box(&vec![0.3; c.param_dim()]);
            assert_eq!(c.jacobian(&p, 0.0), 1.0);
        }
    }

    #[test]
    fn minimize_examples() {
        let r = minimize_jacobian(&case("RP2xRP2xRP2"), 0.3).unwrap();
        assert!(r.gap.abs() < 1e-9, "{r:?}");
        assert!((r.argmin[0] - (2.0f64 / 3.0).sqrt()).abs() < 1e-6);
        assert!(r.argmin[1].abs() < 1e-6);
        assert!(r.within_claim);
        assert_eq!(r.distinct_eigenvalues, 2);

        let r = minimize_jacobian(&case("RP3xRP3"), 0.3).unwrap();
        assert!((r.numeric_min - 0.753571).abs() < 1e-6);
        assert!(r.gap.abs() < 1e-9);
    }

    #[test]
    fn beyond_the_threshold_the_minimum_drops_below_e() {
        let opts = MinimizeOptions {
            t_cap: 1.0 / SQRT_2,
            ..Default::default()
        };
        let r = minimize_jacobian_with(&case("RP2xRP2xRP2"), 0.45, &opts).unwrap();
        assert!(!r.within_claim);
        assert!(r.gap < -1e-6, "{r:?}");
        let r = minimize_jacobian(&case("RP2xRP2xRP2"), 0.44).unwrap();
        assert!(r.gap < -1e-6);
        let r = minimize_jacobian(&case("RP2xCP2"), 0.44).unwrap();
        assert!(r.gap < -1e-6);
    }

    #[test]
    fn slope_range_is_enforced() {
        let c = case("RP2xRP4");
        assert!(minimize_jacobian(&c, 0.0).is_err());
        assert!(minimize_jacobian(&c, 0.45).is_err());
        assert!(minimize_jacobian(&c, -0.1).is_err());
    }

    #[test]
    fn chebyshev_nodes_stay_inside() {
        let n = chebyshev_nodes(0.0, E_THRESHOLD, 32);
        assert_eq!(n.len(), 32);
        assert!(n.iter().all(|&t| t > 0.0 && t < E_THRESHOLD));
        assert!(n.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn distinct_value_count() {
        assert_eq!(distinct_values(&[-1.0, -1.0, 1.0 - 1e-9, 1.0], 1e-6), 2);
        assert_eq!(distinct_values(&[0.0, 0.5, 1.0], 1e-6), 3);
    }

    /// Exhaustive grid over the case's own variables plus the domain boundary.
    fn grid_oracle(c: &CriticalCase, t: f64) -> f64 {
        let r23 = (2.0f64 / 3.0).sqrt();
        let mut best = f64::INFINITY;
        let mut take = |p: &[f64]| best = best.min(c.jacobian(p, t));
        let n = 2001;
        let lin = |i: usize, lo: f64, hi: f64| lo + (hi - lo) * i as f64 / (n - 1) as f64;
        match c.kind {
            CaseKind::Cube { .. } | CaseKind::PlaneFour(FourVariant::Full) | CaseKind::PlaneProjC { sphere: false } => {
                for i in 0..n {
                    let a = lin(i, -r23, r23);
                    for j in 0..n {
                        let b = lin(j, -1.0, 1.0);
                        if 3.0 * a * a + 2.0 * b * b <= 2.0 {
                            take(&[a, b]);
                        }
                    }
                }
                for i in 0..20 * n {
                    let phi = 2.0 * PI * i as f64 / (20 * n) as f64;
                    take(&[r23 * phi.cos(), phi.sin()]);
                }
            }
            CaseKind::PlaneFour(FourVariant::SphereTwo) | CaseKind::PlaneProjC { sphere: true } => {
                for i in 0..20 * n {
                    let phi = 2.0 * PI * i as f64 / (20 * n) as f64;
                    take(&[r23 * phi.cos(), phi.sin()]);
                }
            }
            CaseKind::PlaneFour(FourVariant::SphereFour) => {
                for i in 0..n {
                    take(&[lin(i, -r23, r23), 0.0]);
                }
            }
            CaseKind::ThreeThree { sphere } => {
                let m = 401;
                for i in 0..m {
                    let a = (2.0 * i as f64 / (m - 1) as f64 - 1.0) / SQRT_2;
                    let rho = ((4.0 - 8.0 * a * a) / 3.0).max(0.0).sqrt();
                    for j in 0..m {
                        let phi = 2.0 * PI * j as f64 / (m - 1) as f64;
                        if sphere {
                            take(&[a, 0.0, rho * if j % 2 == 0 { 1.0 } else { -1.0 }]);
                        } else {
                            take(&[a, rho * phi.cos(), rho * phi.sin()]);
                        }
                    }
                }
            }
            CaseKind::PlaneGrass { sphere } => {
                let m = 121;
                for i in 0..m {
                    let b1 = -r23 + 2.0 * r23 * i as f64 / (m - 1) as f64;
                    let rest = (1.0 - 1.5 * b1 * b1).max(0.0);
                    for j in 0..m {
                        for k in 0..m {
                            // β1 + (β2 + β3)/2 = rest on a barycentric grid
                            let (x2, x3) = (j as f64 / (m - 1) as f64, k as f64 / (m - 1) as f64);
                            if x2 + x3 > 1.0 + 1e-12 {
                                continue;
                            }
                            let beta1 = if sphere { 0.0 } else { rest * (1.0 - x2 - x3) };
                            let (beta2, beta3) = if sphere {
                                let s = x2 + x3;
                                if (s - 1.0).abs() > 1e-12 {
                                    continue;
                                }
                                (2.0 * rest * x2, 2.0 * rest * x3)
                            } else {
                                (2.0 * rest * x2, 2.0 * rest * x3)
                            };
                            take(&[b1, beta1.max(0.0).sqrt(), beta2.sqrt(), beta3.sqrt()]);
                        }
                    }
                }
            }
        }
        best
    }

    #[test]
    #[ignore = "dense grids; run with --ignored"]
    fn optimizer_agrees_with_grid_oracle() {
        for c in case_catalog() {
            for t in [0.1, 0.2, 0.3] {
                let opt = minimize_jacobian(&c, t).unwrap().numeric_min;
                let grid = grid_oracle(&c, t);
                assert!(opt <= grid + 1e-12, "{} t={t}: {opt} > {grid}", c.name);
                assert!((opt - grid).abs() < 1e-6, "{} t={t}: {opt} vs {grid}", c.name);
            }
        }
    }

    #[test]
    fn optimizer_agrees_with_coarse_grid_oracle() {
        // the fast companion of the dense check: optimizer never above the grid
        for c in case_catalog() {
            let opt = minimize_jacobian(&c, 0.2).unwrap().numeric_min;
            let grid = grid_oracle(&c, 0.2);
            assert!(opt <= grid + 1e-12, "{}", c.name);
            assert!((opt - grid).abs() < 1e-6, "{}", c.name);
        }
    }

    #[test]
    fn cube_minimum_is_invariant_under_factor_permutation() {
        let names = ["RP2xRP2xRP2", "S2xRP2xRP2", "S2xS2xRP2"];
        for t in [0.1, 0.3] {
            let mins: Vec<f64> = names
                .iter()
                .map(|n| minimize_jacobian(&case(n), t).unwrap().numeric_min)
                .collect();
            assert!((mins[0] - mins[1]).abs() < 1e-9 && (mins[0] - mins[2]).abs() < 1e-9);
        }
    }

    #[test]
    fn doubling_starts_does_not_move_minima() {
        let twice = MinimizeOptions {
            search: MultistartConfig {
                starts: 64,
                ..Default::default()
            },
            ..Default::default()
        };
        for c in case_catalog() {
            let a = minimize_jacobian(&c, 0.25).unwrap().numeric_min;
            let b = minimize_jacobian_with(&c, 0.25, &twice).unwrap().numeric_min;
            assert!((a - b).abs() < 1e-9, "{}", c.name);
        }
    }

    #[test]
    fn three_three_swap_invariance() {
        let c = case("RP3xRP3");
        let swapped = |p: &[f64]| vec![-p[0], p[2], p[1]];
        for t in [0.1, 0.2, 0.3] {
            let r = minimize_jacobian(&c, t).unwrap();
            let back = c.jacobian(&swapped(&r.argmin), t);
            assert!((back - r.numeric_min).abs() < 1e-9);
        }
    }

    #[test]
    fn certify_one_case() {
        let cert = certify_dim7(&case("RP2xCP2")).unwrap();
        assert_eq!(cert.verdict, Verdict::Minimizing);
        assert!((cert.normal_radius.to_degrees() - 60.0).abs() < 1e-9);
        let cert = certify_dim7(&case("S3xRP3")).unwrap();
        assert_eq!(cert.verdict, Verdict::Minimizing);
        assert!((cert.angle().unwrap().to_degrees() - 19.0).abs() < 0.3);
    }

    use proptest::prelude::*;

    proptest! {
        #[test]
        fn jacobian_dominates_the_lemma_floor(idx in 0usize..12, u in prop::array::uniform3(0.0f64..=1.0), s in 0.0f64..1.0) {
            let c = &case_catalog()[idx];
            let p = c.kind.from_box(&u[..c.param_dim()]);
            let t = s * T_CAP;
            let floor = lawlor::two_eigen_l(6f64.sqrt(), t, 6, 1).unwrap();
            prop_assert!(c.jacobian(&p, t) >= floor - 1e-9);
        }
    }
}
