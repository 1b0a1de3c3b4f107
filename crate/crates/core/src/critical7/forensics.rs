//! Sign and threshold analysis of the reduced dimension-7 Jacobians.
//!
//! The functions here are written out in the reduced variables of each
//! family, independently of [`super::cases`], and the unit tests check that
//! both agree.

use std::f64::consts::SQRT_2;

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use super::optimize::nelder_mead;
use super::{poly_e, poly_g, CriticalCase, E_THRESHOLD, T_CAP};
use crate::lawlor::two_eigen_l;

const S3: f64 = 1.732_050_807_568_877_2;
const R23: f64 = 0.816_496_580_927_726;

/// Case (1) on `3a² + 2b² <= 2`.
pub fn cube_g(a: f64, b: f64, t: f64) -> f64 {
    let first = (1.0 - S3 * a * t).powi(2) - b * b * t * t;
    let second = 1.0 + S3 * a * t + (3.0 * a * a + 1.5 * b * b - 1.5) * t * t;
    first * second * second
}

/// `cube_g` on the ellipse `b² = 1 - 3a²/2`.
pub fn cube_boundary(a: f64, t: f64) -> f64 {
    -(2.0 * S3 + 3.0 * a * t).powi(4) * (-2.0 + 4.0 * S3 * a * t + 2.0 * t * t - 9.0 * a * a * t * t)
        / 288.0
}

/// The quadratic factor of the boundary derivative.
pub fn cube_boundary_q(a: f64, t: f64) -> f64 {
    27.0 * t * a * a - 4.0 * S3 * a - 4.0 * t
}

/// Case (2) with `β_1 = c²`, `β_2 = x²`, `β_3 = y²`.
pub fn grass_f(b1: f64, beta: [f64; 3], t: f64) -> f64 {
    let big_a = (1.0 - S3 * b1 * t).powi(2);
    let big_b = (1.0 + S3 / 2.0 * b1 * t).powi(2);
    (big_a - t * t * beta[0]) * (big_b - 0.75 * t * t * beta[1]) * (big_b - 0.75 * t * t * beta[2])
}

/// Case (2) on the edge `c = x = 0`.
pub fn grass_edge(b1: f64, t: f64) -> f64 {
    (1.0 - S3 * b1 * t).powi(2)
        * (1.0 + S3 / 2.0 * b1 * t).powi(2)
        * (1.0 + S3 * b1 * t + 3.0 * b1 * b1 * t * t - 1.5 * t * t)
}

/// Case (3) on `3a² + 2b² <= 2`, `b >= 0`.
pub fn four_g(a: f64, b: f64, t: f64) -> f64 {
    let r10 = 10f64.sqrt();
    ((1.0 - S3 * a * t).powi(2) - (1.0 - 1.5 * a * a - b * b) * t * t)
        * (1.0 + S3 / 2.0 * a * t - 3.0 / r10 * b * t)
        * (1.0 + S3 / 2.0 * a * t + b * t / r10).powi(3)
}

/// Case (3) on the ellipse `b = sqrt(1 - 3a²/2)`.
pub fn four_boundary(a: f64, t: f64) -> f64 {
    let r5 = 5f64.sqrt();
    let w = (2.0 - 3.0 * a * a).max(0.0).sqrt();
    (1.0 - S3 * a * t).powi(2) / 10000.0
        * (10.0 + 5.0 * S3 * a * t - 3.0 * r5 * w * t)
        * (10.0 + 5.0 * S3 * a * t + r5 * w * t).powi(3)
}

/// The sign-carrying factor of the case (3) boundary derivative.
pub fn four_h(a: f64, t: f64) -> f64 {
    let w = (2.0 - 3.0 * a * a).max(0.0).sqrt();
    12.0 * a - S3 * t + 12.0 * S3 * a * a * t - 3.0 * 5f64.sqrt() * a * w * t
}

pub fn four_h_prime(a: f64, t: f64) -> f64 {
    let r5 = 5f64.sqrt();
    let w = (2.0 - 3.0 * a * a).sqrt();
    12.0 + 24.0 * S3 * a * t + 9.0 * r5 * a * a * t / w - 3.0 * r5 * w * t
}

/// Numerator of `h''` up to the factor `6t`; its real root is independent of `t`.
pub fn four_h2_numerator(a: f64) -> f64 {
    let r5 = 5f64.sqrt();
    9.0 * r5 * a - 9.0 * r5 * a.powi(3) + 4.0 * S3 * (2.0 - 3.0 * a * a).max(0.0).powf(1.5)
}

/// Case (4) with `8a² + 3b² + 3c² = 4`.
pub fn three_det(a: f64, b: f64, c: f64, t: f64) -> f64 {
    let (u, v) = (SQRT_2 * a * t, S3 * t);
    (1.0 - u - v / 2.0 * b)
        * (1.0 - u + v / 4.0 * b).powi(2)
        * (1.0 + u - v / 2.0 * c)
        * (1.0 + u + v / 4.0 * c).powi(2)
}

/// Case (4) with `c = 0`, `b` on the ellipse.
pub fn three_h(a: f64, t: f64) -> f64 {
    three_det(a, ((4.0 - 8.0 * a * a) / 3.0).max(0.0).sqrt(), 0.0, t)
}

pub fn three_h_prime(a: f64, t: f64) -> f64 {
    let w = (1.0 - 2.0 * a * a).max(0.0).sqrt();
    0.75 * t * t
        * (SQRT_2 * a * t + 1.0).powi(2)
        * (w * t - 2.0 * SQRT_2 * a * t + 2.0)
        * (12.0 * SQRT_2 * a * a * t + 4.0 * w * a * t - 6.0 * a - SQRT_2 * t)
}

/// Case (5) on `3a² + 2b² <= 2`.
pub fn projc_g(a: f64, b: f64, t: f64) -> f64 {
    ((1.0 - S3 * a * t).powi(2) - (1.0 - 1.5 * a * a - b * b) * t * t)
        * ((1.0 + S3 / 2.0 * a * t).powi(2) - 0.5 * b * b * t * t).powi(2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

/// Signs of `f` on consecutive runs of `xs`, zeros skipped.
pub fn sign_runs(values: impl IntoIterator<Item = f64>) -> Vec<Sign> {
    let mut runs = Vec::new();
    for v in values {
        let s = if v > 0.0 {
            Sign::Plus
        } else if v < 0.0 {
            Sign::Minus
        } else {
            continue;
        };
        if runs.last() != Some(&s) {
            runs.push(s);
        }
    }
    runs
}

/// Nodes on `[-half, half]` clustered at both ends.
fn clustered(half: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..=n).map(move |j| -half * (std::f64::consts::PI * j as f64 / n as f64).cos())
}

fn derivative<F: Fn(f64) -> f64>(f: &F, x: f64, h: f64) -> f64 {
    (f(x + h) - f(x - h)) / (2.0 * h)
}

fn pattern_of<F: Fn(f64) -> f64>(df: &F, half: f64) -> Vec<Sign> {
    sign_runs(clustered(half, 4000).map(df))
}

/// Smallest `t` in `[lo, hi]` where `changed(t)` holds, by bisection.
fn bisect_threshold<P: Fn(f64) -> bool>(lo: f64, hi: f64, changed: P) -> Option<f64> {
    if changed(lo) || !changed(hi) {
        return None;
    }
    let (mut lo, mut hi) = (lo, hi);
    while hi - lo > 1e-10 {
        let mid = 0.5 * (lo + hi);
        if changed(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub value: f64,
    pub expected: Option<f64>,
    pub detail: String,
}

impl Check {
    fn new(name: &str, pass: bool, value: f64, expected: Option<f64>, detail: String) -> Self {
        Check {
            name: name.to_string(),
            pass,
            value,
            expected,
            detail,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StationaryKind {
    Minimum,
    Maximum,
    Saddle,
    Degenerate,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StationaryPoint {
    pub t: f64,
    pub params: Vec<f64>,
    pub value: f64,
    pub closed_form: f64,
    pub kind: StationaryKind,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThresholdReport {
    pub case: String,
    pub family: u8,
    pub checks: Vec<Check>,
    /// Interior stationary points of the reduced function.
    pub stationary: Vec<StationaryPoint>,
}

impl ThresholdReport {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Slopes at which interior stationary points are searched.
pub const SCAN_SLOPES: [f64; 5] = [0.05, 0.15, 0.25, 0.35, 0.44];

/// Open chart `lo < x < hi` intersected with `inside`.
struct Chart<'a> {
    lo: Vec<f64>,
    hi: Vec<f64>,
    inside: &'a dyn Fn(&[f64]) -> bool,
}

fn gradient<F: Fn(&[f64]) -> f64>(f: &F, x: &[f64], h: f64) -> Vec<f64> {
    let mut p = x.to_vec();
    (0..x.len())
        .map(|i| {
            p[i] = x[i] + h;
            let up = f(&p);
            p[i] = x[i] - h;
            let down = f(&p);
            p[i] = x[i];
            (up - down) / (2.0 * h)
        })
        .collect()
}

fn classify<F: Fn(&[f64]) -> f64>(f: &F, x: &[f64]) -> StationaryKind {
    let n = x.len();
    let h = 1e-4;
    let mut hess = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut p = x.to_vec();
            let mut at = |di: f64, dj: f64| {
                p.copy_from_slice(x);
                p[i] += di;
                p[j] += dj;
                f(&p)
            };
            hess[(i, j)] = (at(h, h) - at(h, -h) - at(-h, h) + at(-h, -h)) / (4.0 * h * h);
        }
    }
    let eig = SymmetricEigen::new(hess).eigenvalues;
    let tol = 1e-6;
    let pos = eig.iter().filter(|&&e| e > tol).count();
    let neg = eig.iter().filter(|&&e| e < -tol).count();
    match (pos, neg) {
        (p, 0) if p == n => StationaryKind::Minimum,
        (0, q) if q == n => StationaryKind::Maximum,
        (p, q) if p > 0 && q > 0 => StationaryKind::Saddle,
        _ => StationaryKind::Degenerate,
    }
}

/// Interior stationary points of `f` on the chart, found by minimizing
/// `|∇f|²` from the best grid seeds.
fn stationary_points<F: Fn(&[f64]) -> f64>(f: &F, chart: &Chart) -> Vec<(Vec<f64>, StationaryKind)> {
    let n = chart.lo.len();
    let to_x = |u: &[f64]| -> Vec<f64> {
        u.iter()
            .zip(chart.lo.iter().zip(&chart.hi))
            .map(|(v, (l, h))| l + (h - l) * v)
            .collect()
    };
    let grad_sq = |u: &[f64]| {
        let x = to_x(u);
        if !(chart.inside)(&x) {
            return f64::INFINITY;
        }
        gradient(f, &x, 1e-6).iter().map(|g| g * g).sum::<f64>()
    };
    let g: usize = if n == 3 { 24 } else { 64 };
    let mut seeds = Vec::new();
    for idx in 0..g.pow(n as u32) {
        let mut rest = idx;
        let u: Vec<f64> = (0..n)
            .map(|_| {
                let c = (rest % g) as f64 + 0.5;
                rest /= g;
                c / g as f64
            })
            .collect();
        let v = grad_sq(&u);
        if v.is_finite() {
            seeds.push((v, u));
        }
    }
    seeds.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut found: Vec<(Vec<f64>, StationaryKind)> = Vec::new();
    for (_, u0) in seeds.into_iter().take(48) {
        let m = nelder_mead(&grad_sq, &u0, 0.5 / g as f64, 1e-13, 6000);
        let x = to_x(&m.x);
        let margin_ok = (0..n).all(|i| {
            let mut p = x.clone();
            let eps = 1e-6 * (chart.hi[i] - chart.lo[i]);
            p[i] += eps;
            let up = (chart.inside)(&p);
            p[i] = x[i] - eps;
            up && (chart.inside)(&p)
        });
        if m.value.sqrt() > 1e-7 || !margin_ok {
            continue;
        }
        if found
            .iter()
            .any(|(y, _)| y.iter().zip(&x).all(|(a, b)| (a - b).abs() < 1e-5))
        {
            continue;
        }
        let kind = classify(f, &x);
        found.push((x, kind));
    }
    found.sort_by(|a, b| a.0.iter().zip(&b.0).map(|(p, q)| p.total_cmp(q)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal));
    found
}

fn scan<F: Fn(&[f64], f64) -> f64>(
    f: &F,
    lo: Vec<f64>,
    hi: Vec<f64>,
    inside: &dyn Fn(&[f64]) -> bool,
    closed: fn(f64) -> f64,
) -> Vec<StationaryPoint> {
    let chart = Chart { lo, hi, inside };
    let mut out = Vec::new();
    for &t in &SCAN_SLOPES {
        let ft = |x: &[f64]| f(x, t);
        for (params, kind) in stationary_points(&ft, &chart) {
            out.push(StationaryPoint {
                t,
                value: ft(&params),
                params,
                closed_form: closed(t),
                kind,
            });
        }
    }
    out
}

fn stationary_checks(points: &[StationaryPoint], checks: &mut Vec<Check>, absent_claim: Option<&str>) {
    let below = points
        .iter()
        .filter(|p| p.t < E_THRESHOLD && p.value < p.closed_form - 1e-9)
        .count();
    checks.push(Check::new(
        "interior_stationary_above_closed_form",
        below == 0,
        below as f64,
        Some(0.0),
        format!(
            "{} interior stationary points on slopes below the threshold, {below} undercut the closed form",
            points.iter().filter(|p| p.t < E_THRESHOLD).count()
        ),
    ));
    if let Some(claim) = absent_claim {
        let n = points.len();
        checks.push(Check::new(
            claim,
            n == 0,
            n as f64,
            Some(0.0),
            format!("{n} interior stationary points over slopes {SCAN_SLOPES:?}"),
        ));
    }
    let minima = points
        .iter()
        .filter(|p| p.kind == StationaryKind::Minimum && p.t < T_CAP)
        .count();
    checks.push(Check::new(
        "interior_local_minima",
        true,
        minima as f64,
        None,
        format!("{minima} interior local minima"),
    ));
}

fn inside_ellipse(x: &[f64]) -> bool {
    3.0 * x[0] * x[0] + 2.0 * x[1] * x[1] < 2.0
}

fn cube_report(checks: &mut Vec<Check>) -> Vec<StationaryPoint> {
    let below = E_THRESHOLD - 1e-3;
    let above = E_THRESHOLD + 1e-3;
    let df = |t: f64| move |a: f64| derivative(&|x| cube_boundary(x, t), a, 1e-6);
    let p_below = pattern_of(&df(below), R23);
    let p_above = pattern_of(&df(above), R23);
    checks.push(Check::new(
        "boundary_sign_below",
        p_below == [Sign::Plus, Sign::Minus],
        below,
        None,
        format!("{p_below:?}"),
    ));
    checks.push(Check::new(
        "boundary_sign_above",
        p_above == [Sign::Plus, Sign::Minus, Sign::Plus],
        above,
        None,
        format!("{p_above:?}"),
    ));
    let flip = bisect_threshold(0.3, T_CAP, |t| pattern_of(&df(t), R23).len() == 3);
    let flip_v = flip.unwrap_or(f64::NAN);
    checks.push(Check::new(
        "threshold",
        (flip_v - E_THRESHOLD).abs() <= 1e-3,
        flip_v,
        Some(E_THRESHOLD),
        "sign pattern of the boundary derivative changes".into(),
    ));
    let q_ok = clustered(R23, 400).all(|a| {
        [0.1, 0.3, below].iter().all(|&t| {
            let exact = t * t / 48.0 * (2.0 * S3 + 3.0 * a * t).powi(3) * cube_boundary_q(a, t);
            (derivative(&|x| cube_boundary(x, t), a, 1e-5) - exact).abs() < 1e-8
        })
    });
    checks.push(Check::new(
        "boundary_derivative_factorization",
        q_ok,
        0.0,
        None,
        "f'(a) = t²(2√3 + 3at)³ q(a) / 48".into(),
    ));
    let ends = super::chebyshev_nodes(0.0, E_THRESHOLD, 32)
        .into_iter()
        .all(|t| cube_boundary(-R23, t) > cube_boundary(R23, t) && (cube_boundary(R23, t) - poly_e(t)).abs() < 1e-13);
    checks.push(Check::new(
        "boundary_minimum_is_e",
        ends,
        0.0,
        None,
        "f(-√(2/3)) > f(√(2/3)) = E(t)".into(),
    ));
    let points = scan(
        &|x: &[f64], t| cube_g(x[0], x[1], t),
        vec![-R23, -1.0],
        vec![R23, 1.0],
        &inside_ellipse,
        poly_e,
    );
    stationary_checks(&points, checks, None);
    let expected = 1.0 / 6f64.sqrt();
    let at_expected = points
        .iter()
        .all(|p| (p.params[0].abs() - expected).abs() < 1e-6 && p.params[1].abs() < 1e-6);
    checks.push(Check::new(
        "interior_stationary_at_plus_minus_inv_sqrt6",
        at_expected && !points.is_empty(),
        expected,
        Some(expected),
        format!(
            "a values {:?}",
            points.iter().map(|p| p.params[0]).collect::<Vec<_>>()
        ),
    ));
    points
}

fn grass_report(checks: &mut Vec<Check>) -> Vec<StationaryPoint> {
    let split = SQRT_2 / 4.0;
    let df = |t: f64| move |b: f64| derivative(&|x| grass_edge(x, t), b, 1e-6);
    let p_below = pattern_of(&df(split - 1e-3), R23);
    let p_above = pattern_of(&df(split + 1e-3), R23);
    checks.push(Check::new(
        "edge_sign_below",
        p_below == [Sign::Plus, Sign::Minus],
        split - 1e-3,
        None,
        format!("{p_below:?}"),
    ));
    checks.push(Check::new(
        "edge_sign_above",
        p_above == [Sign::Minus, Sign::Plus, Sign::Minus],
        split + 1e-3,
        None,
        format!("{p_above:?}"),
    ));
    let flip = bisect_threshold(0.2, T_CAP, |t| pattern_of(&df(t), R23).len() == 3).unwrap_or(f64::NAN);
    checks.push(Check::new(
        "edge_threshold",
        (flip - split).abs() <= 1e-3,
        flip,
        Some(split),
        "edge sign pattern changes".into(),
    ));
    let margin = super::chebyshev_nodes(split, T_CAP, 32)
        .into_iter()
        .map(|t| grass_edge(-1.0 / (2.0 * S3 * t), t) - grass_edge(R23, t))
        .fold(f64::INFINITY, f64::min);
    checks.push(Check::new(
        "edge_interior_critical_above_e",
        margin > 0.0,
        margin,
        None,
        "min over t of f(-1/(2√3 t)) - f(√(2/3))".into(),
    ));
    let points = scan(
        &|x: &[f64], t| {
            let beta1 = 1.0 - 1.5 * x[0] * x[0] - 0.5 * (x[1] + x[2]);
            grass_f(x[0], [beta1, x[1], x[2]], t)
        },
        vec![-R23, 0.0, 0.0],
        vec![R23, 2.0, 2.0],
        &|x: &[f64]| {
            x[1] > 0.0 && x[2] > 0.0 && 1.0 - 1.5 * x[0] * x[0] - 0.5 * (x[1] + x[2]) > 0.0
        },
        poly_e,
    );
    stationary_checks(&points, checks, None);
    let minima = points.iter().filter(|p| p.kind == StationaryKind::Minimum).count();
    checks.push(Check::new(
        "interior_minimum_absent",
        minima == 0,
        minima as f64,
        Some(0.0),
        "stationary points of the simplex problem are not minima".into(),
    ));
    points
}

/// Real root of the numerator of `h''` for case (3).
pub fn four_h2_root() -> f64 {
    let (mut lo, mut hi) = (-R23, 0.0);
    // numerator is negative at -√(2/3) and positive at 0
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if four_h2_numerator(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn four_report(checks: &mut Vec<Check>) -> Vec<StationaryPoint> {
    let x0 = four_h2_root();
    checks.push(Check::new(
        "h2_root",
        (x0 + 0.555087).abs() <= 1e-5,
        x0,
        Some(-0.555087),
        "unique real root of h''".into(),
    ));
    let sign_changes = sign_runs(clustered(R23 - 1e-12, 4000).map(four_h2_numerator)).len();
    checks.push(Check::new(
        "h2_root_unique",
        sign_changes == 2,
        sign_changes as f64 - 1.0,
        Some(1.0),
        "sign changes of the h'' numerator".into(),
    ));
    let slope = (four_h_prime(x0, 1.0) - 12.0) / 1.0;
    checks.push(Check::new(
        "h1_min_slope",
        (slope + 24.053).abs() < 1e-3,
        slope,
        Some(-24.053),
        "min h'(a) = 12 + slope·t".into(),
    ));
    let at = four_h_prime(x0, E_THRESHOLD);
    checks.push(Check::new(
        "h1_min_at_threshold",
        (at - 2.28114).abs() <= 1e-3,
        at,
        Some(2.28114),
        "h'(x0) at t = 2√2/7".into(),
    ));
    let grid_min = clustered(R23 - 1e-9, 4000)
        .map(|a| four_h_prime(a, E_THRESHOLD))
        .fold(f64::INFINITY, f64::min);
    checks.push(Check::new(
        "h1_grid_min",
        (grid_min - at).abs() < 1e-4 && grid_min > 0.0,
        grid_min,
        Some(at),
        "dense minimum of h' at t = 2√2/7".into(),
    ));
    let below = super::chebyshev_nodes(0.0, E_THRESHOLD, 32);
    let pattern_ok = below.iter().all(|&t| {
        let p = pattern_of(&|a: f64| -four_h(a, t), R23 - 1e-6);
        let fd = pattern_of(&|a: f64| derivative(&|x| four_boundary(x, t), a, 1e-6), R23 - 1e-6);
        p == [Sign::Plus, Sign::Minus] && (t < 1e-2 || fd == p)
    });
    checks.push(Check::new(
        "boundary_sign",
        pattern_ok,
        0.0,
        None,
        "-h and f' are (+,-) on the ellipse for t < 2√2/7".into(),
    ));
    let min_end = below.iter().all(|&t| {
        four_boundary(-R23, t) > four_boundary(R23, t) && (four_boundary(R23, t) - poly_e(t)).abs() < 1e-13
    });
    checks.push(Check::new(
        "boundary_minimum_at_plus_end",
        min_end,
        R23,
        Some(R23),
        "ellipse minimum f(+√(2/3)) = E(t)".into(),
    ));
    let points = scan(
        &|x: &[f64], t| four_g(x[0], x[1], t),
        vec![-R23, 0.0],
        vec![R23, 1.0],
        &|x: &[f64]| inside_ellipse(x) && x[1] > 0.0,
        poly_e,
    );
    stationary_checks(&points, checks, Some("interior_stationary_absent"));
    points
}

fn three_report(checks: &mut Vec<Check>) -> Vec<StationaryPoint> {
    let a_max = 1.0 / SQRT_2;
    let nodes = super::chebyshev_nodes(0.0, T_CAP, 32);
    let mut worst = f64::NEG_INFINITY;
    let mut agree = true;
    for &t in &nodes {
        for j in 0..=2000 {
            let a = a_max * j as f64 / 2000.0 * (1.0 - 1e-9);
            let exact = three_h_prime(a, t);
            worst = worst.max(exact);
            if j > 0 && j < 2000 {
                let numeric = derivative(&|x| three_h(x, t), a, 1e-7);
                agree &= (numeric - exact).abs() < 1e-6;
            }
        }
    }
    checks.push(Check::new(
        "h_decreasing",
        worst < 0.0,
        worst,
        None,
        "max of h'(a) over a in [0, 1/√2), t in (0, 1/√5)".into(),
    ));
    checks.push(Check::new(
        "h_derivative_factorization",
        agree,
        0.0,
        None,
        "factored h' matches the numeric derivative".into(),
    ));
    let mut gap = f64::INFINITY;
    for &t in &nodes {
        for j in 0..=400 {
            let a = a_max * j as f64 / 400.0;
            let bmax = ((4.0 - 8.0 * a * a) / 3.0).max(0.0).sqrt();
            let f0 = three_det(a, 0.0, bmax, t);
            let f1 = three_det(a, bmax, 0.0, t);
            gap = gap.min(f0 - f1);
        }
    }
    checks.push(Check::new(
        "c_zero_edge_is_lower",
        gap >= -1e-15,
        gap,
        None,
        "f(a, 0) - f(a, b_max) over the grid".into(),
    ));
    let g_ok = nodes.iter().all(|&t| (three_h(a_max, t) - poly_g(t)).abs() < 1e-14);
    checks.push(Check::new(
        "minimum_is_g",
        g_ok,
        a_max,
        Some(a_max),
        "h(1/√2) = G(t)".into(),
    ));
    Vec::new()
}

fn projc_report(checks: &mut Vec<Check>) -> Vec<StationaryPoint> {
    let nodes = super::chebyshev_nodes(0.0, T_CAP, 32);
    let mut worst = f64::INFINITY;
    for &t in &nodes {
        let floor = two_eigen_l(3f64.sqrt(), t, 3, 1).expect("m = 3").powi(2);
        for j in 0..=4000 {
            let phi = std::f64::consts::TAU * j as f64 / 4000.0;
            let (a, b) = (R23 * phi.cos(), phi.sin());
            worst = worst.min(projc_g(a, b, t) - floor);
        }
    }
    checks.push(Check::new(
        "boundary_above_f_squared",
        worst >= -1e-12,
        worst,
        None,
        "f(a) - F(√3, t, 3)² on the ellipse".into(),
    ));
    let sq_ok = nodes
        .iter()
        .all(|&t| (two_eigen_l(3f64.sqrt(), t, 3, 1).unwrap().powi(2) - poly_e(t)).abs() < 1e-14);
    checks.push(Check::new(
        "f_squared_is_e",
        sq_ok,
        0.0,
        None,
        "F(√3, t, 3)² = E(t)".into(),
    ));
    let points = scan(
        &|x: &[f64], t| projc_g(x[0], x[1], t),
        vec![-R23, -1.0],
        vec![R23, 1.0],
        &inside_ellipse,
        poly_e,
    );
    stationary_checks(&points, checks, Some("interior_stationary_absent"));
    points
}

/// Runs the sign and threshold analysis of the case's family.
pub fn boundary_threshold_check(case: &CriticalCase) -> ThresholdReport {
    let mut checks = Vec::new();
    let stationary = match case.family() {
        1 => cube_report(&mut checks),
        2 => grass_report(&mut checks),
        3 => four_report(&mut checks),
        4 => three_report(&mut checks),
        _ => projc_report(&mut checks),
    };
    ThresholdReport {
        case: case.name.to_string(),
        family: case.family(),
        checks,
        stationary,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::critical7::find_case;

    #[test]
    fn reduced_forms_match_the_case_spectra() {
        let cube = find_case("RP2xRP2xRP2").unwrap();
        let grass = find_case("RP2xG24").unwrap();
        let four = find_case("RP2xRP4").unwrap();
        let three = find_case("RP3xRP3").unwrap();
        let projc = find_case("RP2xCP2").unwrap();
        for t in [0.05, 0.2, 0.41] {
            for i in 0..=20 {
                let a = -R23 + 2.0 * R23 * i as f64 / 20.0;
                let bmax = (1.0 - 1.5 * a * a).max(0.0).sqrt();
                for j in 0..=10 {
                    let b = bmax * j as f64 / 10.0;
                    assert!((cube.jacobian(&[a, b], t) - cube_g(a, b, t)).abs() < 1e-13);
                    assert!((four.jacobian(&[a, b], t) - four_g(a, b, t)).abs() < 1e-13);
                    assert!((projc.jacobian(&[a, b], t) - projc_g(a, b, t)).abs() < 1e-13);
                }
                assert!((cube_g(a, bmax, t) - cube_boundary(a, t)).abs() < 1e-13);
                assert!((four_g(a, bmax, t) - four_boundary(a, t)).abs() < 1e-13);
                let y = (2.0 - 3.0 * a * a).max(0.0).sqrt();
                assert!((grass.jacobian(&[a, 0.0, 0.0, y], t) - grass_edge(a, t)).abs() < 1e-13);
                assert!((grass.jacobian(&[a, 0.3 * bmax, 0.5 * bmax, 0.0], t)
                    - grass_f(a, [0.09 * bmax * bmax, 0.25 * bmax * bmax, 0.0], t))
                .abs()
                    < 1e-13);
            }
            for i in 0..=20 {
                let a = -1.0 / SQRT_2 + SQRT_2 * i as f64 / 20.0;
                let rho = ((4.0 - 8.0 * a * a) / 3.0).max(0.0).sqrt();
                let (b, c) = (0.6 * rho, 0.8 * rho);
                assert!((three.jacobian(&[a, b, c], t) - three_det(a, b, c, t)).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn four_h_derivatives_match() {
        for t in [0.1, 0.3] {
            for i in 1..40 {
                let a = -R23 + 2.0 * R23 * i as f64 / 40.0;
                let num = derivative(&|x| four_h(x, t), a, 1e-6);
                assert!((num - four_h_prime(a, t)).abs() < 1e-6);
                let second = derivative(&|x| four_h_prime(x, t), a, 1e-6);
                let exact = 6.0 * t * four_h2_numerator(a) / (2.0 - 3.0 * a * a).powf(1.5);
                assert!((second - exact).abs() < 1e-5 * (1.0 + exact.abs()));
            }
        }
    }

    #[test]
    fn sign_runs_compress() {
        let r = sign_runs([1.0, 2.0, 0.0, -1.0, -3.0, 4.0]);
        assert_eq!(r, vec![Sign::Plus, Sign::Minus, Sign::Plus]);
    }

    #[test]
    fn cube_threshold() {
        let r = boundary_threshold_check(&find_case("RP2xRP2xRP2").unwrap());
        for name in ["boundary_sign_below", "boundary_sign_above", "threshold", "boundary_derivative_factorization", "boundary_minimum_is_e", "interior_stationary_at_plus_minus_inv_sqrt6"] {
            assert!(r.check(name).unwrap().pass, "{name}: {:?}", r.check(name));
        }
    }

    #[test]
    fn four_threshold() {
        let r = boundary_threshold_check(&find_case("RP2xRP4").unwrap());
        for name in ["h2_root", "h2_root_unique", "h1_min_slope", "h1_min_at_threshold", "h1_grid_min", "boundary_sign", "boundary_minimum_at_plus_end", "interior_stationary_absent"] {
            assert!(r.check(name).unwrap().pass, "{name}: {:?}", r.check(name));
        }
    }

    #[test]
    fn three_and_grass_reports() {
        let r = boundary_threshold_check(&find_case("RP3xRP3").unwrap());
        assert!(r.passed(), "{:?}", r.checks);
        let r = boundary_threshold_check(&find_case("RP2xG24").unwrap());
        assert!(r.passed(), "{:?}", r.checks);
    }

    #[test]
    fn projc_has_interior_stationary_points_above_e() {
        let r = boundary_threshold_check(&find_case("RP2xCP2").unwrap());
        assert!(r.check("boundary_above_f_squared").unwrap().pass);
        assert!(r.check("interior_stationary_above_closed_form").unwrap().pass);
        assert!(!r.check("interior_stationary_absent").unwrap().pass);
        assert!(r
            .stationary
            .iter()
            .any(|p| p.params[0].abs() < 1e-6 && (p.params[1].abs() - R23).abs() < 1e-6));
    }
}
