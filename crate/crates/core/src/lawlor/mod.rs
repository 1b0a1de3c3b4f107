//! Vanishing angles.
//!
//! The retraction curve `r(θ)` of the curvature criterion solves
//!
//! ```text
//! dr/dθ = r · sqrt(r^(2k) cos^(2k-2)(θ) J(tan θ)^2 - 1),   r(0) = 1,
//! ```
//!
//! where `k` is the dimension of the cone and `J(t)` is a lower bound for
//! `inf_v det(I - t H^v)`. The vanishing angle is the polar angle at which
//! `r` blows up. It is computed on the compactified unknown `u = r^(-k)`,
//!
//! ```text
//! du/dθ = -k · sqrt(cos^(2k-2)(θ) J(tan θ)^2 - u^2),   u(0) = 1,
//! ```
//!
//! so that blow-up becomes the regular event `u → 0`. The right-hand side
//! vanishes at `θ = 0`; the integration starts at a small `θ_0` on the series
//! `r ≈ 1 + A θ²` with `A` the larger root of `4A² - 2kA + (k - 1 + α²) = 0`.

pub mod ode;

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::critical7::ClosedForm;
use crate::error::{Error, Result};

/// `F(α, t, m) = (1 - αt sqrt((m-1)/m)) (1 + αt / sqrt(m(m-1)))^(m-1)`.
///
/// With `m = k - 1` this is the generic lower bound used for a cone of
/// dimension `k`. Past its first root the value is returned as is.
pub fn generic_f(alpha: f64, t: f64, m: u32) -> Result<f64> {
    if m < 2 {
        return Err(Error::OutOfRange {
            what: "m",
            value: m as f64,
            range: "m >= 2".into(),
        });
    }
    two_eigen_l(alpha, t, m, 1)
}

/// `L(α, t, m, r)`: the value of `det(I - tA)` for a trace-free symmetric
/// `m×m` matrix of norm `α` whose spectrum is `α sqrt((m-r)/(mr))` with
/// multiplicity `r` and `-α sqrt(r/(m(m-r)))` with multiplicity `m - r`.
pub fn two_eigen_l(alpha: f64, t: f64, m: u32, r: u32) -> Result<f64> {
    if r == 0 || r >= m {
        return Err(Error::OutOfRange {
            what: "r",
            value: r as f64,
            range: format!("1 <= r <= {}", m.saturating_sub(1)),
        });
    }
    let (mf, rf) = (m as f64, r as f64);
    let pos = alpha * ((mf - rf) / (mf * rf)).sqrt();
    let neg = alpha * (rf / (mf * (mf - rf))).sqrt();
    Ok((1.0 - t * pos).powi(r as i32) * (1.0 + t * neg).powi((m - r) as i32))
}

/// `lim_{m→∞} F(α, t, m) = (1 - αt) e^(αt)`.
pub fn generic_limit(alpha: f64, t: f64) -> f64 {
    (1.0 - alpha * t) * (alpha * t).exp()
}

/// A lower bound `J(t)` for the Jacobian, `t = tan θ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "bound")]
pub enum JacobianBound {
    /// `F(α, t, m)`, `m = dim C - 1`.
    GenericF { alpha: f64, m: u32 },
    /// `(1 - αt) e^(αt)`.
    GenericLimit { alpha: f64 },
    /// `L(α, t, m, r)`.
    TwoEigen { alpha: f64, m: u32, r: u32 },
    /// One of the closed-form minima of the dimension-7 analysis.
    CaseExact { form: ClosedForm },
}

impl JacobianBound {
    pub fn eval(&self, t: f64) -> f64 {
        match *self {
            JacobianBound::GenericF { alpha, m } => two_eigen_l(alpha, t, m, 1).unwrap_or(f64::NAN),
            JacobianBound::GenericLimit { alpha } => generic_limit(alpha, t),
            JacobianBound::TwoEigen { alpha, m, r } => {
                two_eigen_l(alpha, t, m, r).unwrap_or(f64::NAN)
            }
            JacobianBound::CaseExact { form } => form.eval(t),
        }
    }

    /// `α²` with `J(t) = 1 - α² t² / 2 + O(t³)`.
    pub fn curvature_sq(&self) -> f64 {
        match *self {
            JacobianBound::GenericF { alpha, .. }
            | JacobianBound::GenericLimit { alpha }
            | JacobianBound::TwoEigen { alpha, .. } => alpha * alpha,
            JacobianBound::CaseExact { form } => form.curvature_sq(),
        }
    }

    /// Largest `t` for which the bound is a valid lower bound.
    pub fn validity_cap(&self) -> f64 {
        match *self {
            JacobianBound::GenericF { alpha, m } => {
                let m = m as f64;
                (m / (m - 1.0)).sqrt() / alpha
            }
            JacobianBound::GenericLimit { alpha } => 1.0 / alpha,
            JacobianBound::TwoEigen { alpha, m, r } => {
                let (m, r) = (m as f64, r as f64);
                1.0 / (alpha * ((m - r) / (m * r)).sqrt())
            }
            JacobianBound::CaseExact { form } => form.first_root(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntegratorConfig {
    pub theta_start: f64,
    pub atol: f64,
    pub max_step: f64,
    /// `u` at or below this value counts as blow-up of `r`.
    pub u_tol: f64,
    /// Radicand exhaustion only counts while `u` is above this value.
    pub u_floor: f64,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        IntegratorConfig {
            theta_start: 1e-4,
            atol: 1e-12,
            max_step: 1e-3,
            u_tol: 1e-9,
            u_floor: 1e-6,
        }
    }
}

impl IntegratorConfig {
    /// Same configuration with tolerance and step cap halved.
    pub fn refined(&self) -> Self {
        IntegratorConfig {
            atol: self.atol / 2.0,
            max_step: self.max_step / 2.0,
            ..*self
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Exhaustion {
    /// The start-up discriminant `k² - 4(k - 1 + α²)` is negative.
    NoStart,
    /// The radicand became negative while `r` was still finite.
    Radicand,
    /// `tan θ` reached the validity cap of the bound.
    ValidityCap,
    /// `θ` reached π/2.
    Horizon,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status")]
pub enum VanishingStatus {
    Vanishes { angle: f64 },
    NoVanishingAngle { max_theta: f64, reason: Exhaustion },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VanishingAngleResult {
    pub status: VanishingStatus,
    /// `(θ, u)` samples, roughly every 0.01 rad.
    pub trace: Vec<(f64, f64)>,
}

impl VanishingAngleResult {
    pub fn angle(&self) -> Option<f64> {
        match self.status {
            VanishingStatus::Vanishes { angle } => Some(angle),
            VanishingStatus::NoVanishingAngle { .. } => None,
        }
    }

    pub fn angle_deg(&self) -> Option<f64> {
        self.angle().map(f64::to_degrees)
    }
}

const TRACE_SPACING: f64 = 0.01;

/// Integrates the compactified vanishing-angle equation for a cone of
/// dimension `k` under the Jacobian bound `bound`.
pub fn integrate_vn(k: u32, bound: &JacobianBound) -> Result<VanishingAngleResult> {
    integrate_vn_with(k, bound, &IntegratorConfig::default())
}

pub fn integrate_vn_with(
    k: u32,
    bound: &JacobianBound,
    cfg: &IntegratorConfig,
) -> Result<VanishingAngleResult> {
    if k < 3 {
        return Err(Error::OutOfRange {
            what: "k",
            value: k as f64,
            range: "k >= 3".into(),
        });
    }
    let kf = k as f64;
    let a_sq = bound.curvature_sq();
    let disc = kf * kf - 4.0 * (kf - 1.0 + a_sq);
    if disc < 0.0 {
        return Ok(VanishingAngleResult {
            status: VanishingStatus::NoVanishingAngle {
                max_theta: 0.0,
                reason: Exhaustion::NoStart,
            },
            trace: vec![(0.0, 1.0)],
        });
    }
    let growth = (kf + disc.sqrt()) / 4.0;
    let cos_exp = 2 * k as i32 - 2;
    let radicand = |theta: f64, u: f64| {
        let j = bound.eval(theta.tan());
        theta.cos().powi(cos_exp) * j * j - u * u
    };
    let rhs = |theta: f64, u: f64| -kf * radicand(theta, u).max(0.0).sqrt();

    let theta_cap = bound.validity_cap().atan();
    let horizon = FRAC_PI_2 - 1e-6;
    let theta_end = theta_cap.min(horizon);

    let mut theta = cfg.theta_start;
    let r0 = 1.0 + growth * theta * theta;
    let mut u = r0.powf(-kf);
    let mut trace = vec![(0.0, 1.0), (theta, u)];
    let mut h = cfg.max_step.min(1e-5);

    let finish = |status: VanishingStatus, mut trace: Vec<(f64, f64)>, last: (f64, f64)| {
        trace.push(last);
        Ok(VanishingAngleResult { status, trace })
    };

    loop {
        if theta >= theta_end - 1e-15 {
            let reason = if theta_cap < horizon {
                Exhaustion::ValidityCap
            } else {
                Exhaustion::Horizon
            };
            return finish(
                VanishingStatus::NoVanishingAngle {
                    max_theta: theta,
                    reason,
                },
                trace,
                (theta, u),
            );
        }
        h = h.min(cfg.max_step).min(theta_end - theta);
        let (u_new, err) = ode::dopri_step(&rhs, theta, u, h);
        let ratio = err / cfg.atol;
        if ratio > 1.0 {
            h *= (0.9 * ratio.powf(-0.2)).max(0.2);
            if h < 1e-14 {
                return Err(Error::Integration(format!("step size underflow at θ = {theta}")));
            }
            continue;
        }
        let next = theta + h;
        if u_new <= cfg.u_tol {
            let hit = bisect_step(&rhs, theta, u, h, |_, v| v <= cfg.u_tol);
            return finish(
                VanishingStatus::Vanishes { angle: theta + hit },
                trace,
                (theta + hit, cfg.u_tol),
            );
        }
        if next > 10.0 * cfg.theta_start && u_new > cfg.u_floor && radicand(next, u_new) <= 0.0 {
            let hit = bisect_step(&rhs, theta, u, h, |x, v| radicand(x, v) <= 0.0);
            return finish(
                VanishingStatus::NoVanishingAngle {
                    max_theta: theta + hit,
                    reason: Exhaustion::Radicand,
                },
                trace,
                (theta + hit, u_new),
            );
        }
        theta = next;
        u = u_new;
        if theta - trace.last().map_or(0.0, |p| p.0) >= TRACE_SPACING {
            trace.push((theta, u));
        }
        let grow = if ratio > 0.0 { 0.9 * ratio.powf(-0.2) } else { 5.0 };
        h *= grow.clamp(0.2, 5.0);
    }
}

/// Smallest sub-step in `(0, h]` (to bisection accuracy) after which `hit` holds.
fn bisect_step<F, P>(rhs: &F, x: f64, y: f64, h: f64, hit: P) -> f64
where
    F: Fn(f64, f64) -> f64,
    P: Fn(f64, f64) -> bool,
{
    let (mut lo, mut hi) = (0.0, h);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        let (v, _) = ode::dopri_step(rhs, x, y, mid);
        if hit(x + mid, v) {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo < 1e-15 {
            break;
        }
    }
    hi
}

/// Estimated vanishing angle from the generic bound `F(α, t, k - 1)`.
pub fn theta1(k: u32, alpha: f64) -> Result<VanishingAngleResult> {
    theta1_with(k, alpha, &IntegratorConfig::default())
}

pub fn theta1_with(k: u32, alpha: f64, cfg: &IntegratorConfig) -> Result<VanishingAngleResult> {
    check_alpha(alpha)?;
    if k < 3 {
        return Err(Error::OutOfRange {
            what: "k",
            value: k as f64,
            range: "k >= 3".into(),
        });
    }
    integrate_vn_with(k, &JacobianBound::GenericF { alpha, m: k - 1 }, cfg)
}

/// Estimated vanishing angle from the limit bound `(1 - αt) e^(αt)`.
pub fn theta2(k: u32, alpha: f64) -> Result<VanishingAngleResult> {
    theta2_with(k, alpha, &IntegratorConfig::default())
}

pub fn theta2_with(k: u32, alpha: f64, cfg: &IntegratorConfig) -> Result<VanishingAngleResult> {
    check_alpha(alpha)?;
    integrate_vn_with(k, &JacobianBound::GenericLimit { alpha }, cfg)
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha.is_finite() {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            what: "alpha",
            value: alpha,
            range: "alpha > 0".into(),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScaledBound {
    pub k: u32,
    pub alpha: f64,
    /// Upper bound on `tan θ₂(k, α)`.
    pub tan_bound: f64,
    /// Angle `θ₂(12, 12α/k)` that was scaled, in radians.
    pub base_angle: f64,
    /// `tan_bound < 2/k`.
    pub below_two_over_k: bool,
}

/// `tan θ₂(k, α) < (12/k) tan θ₂(12, 12α/k)` for `k >= 13`.
pub fn theta2_scaled_bound(k: u32, alpha: f64) -> Result<ScaledBound> {
    theta2_scaled_bound_with(k, alpha, &IntegratorConfig::default())
}

pub fn theta2_scaled_bound_with(k: u32, alpha: f64, cfg: &IntegratorConfig) -> Result<ScaledBound> {
    if k < 13 {
        return Err(Error::OutOfRange {
            what: "k",
            value: k as f64,
            range: "k >= 13".into(),
        });
    }
    let kf = k as f64;
    if alpha == 0.0 {
        // a totally geodesic link spans a plane
        return Ok(ScaledBound {
            k,
            alpha,
            tan_bound: 0.0,
            base_angle: 0.0,
            below_two_over_k: true,
        });
    }
    let scaled = 12.0 * alpha / kf;
    let base = theta2_with(12, scaled, cfg)?;
    let angle = base.angle().ok_or_else(|| {
        Error::Integration(format!("θ₂(12, {scaled}) has no vanishing angle"))
    })?;
    let tan_bound = 12.0 / kf * angle.tan();
    Ok(ScaledBound {
        k,
        alpha,
        tan_bound,
        base_angle: angle,
        below_two_over_k: tan_bound < 2.0 / kf,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Minimizing,
    Inconclusive,
}

/// What the criterion is applied to.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Evidence {
    Vanishing(VanishingStatus),
    /// Upper bound `b` on the tangent of the vanishing angle.
    TanBound(f64),
}

pub const CRITERION_MARGIN: f64 = 1e-9;

/// Twice the vanishing angle must stay below the normal radius. The test is
/// one-sided: failure is never evidence against minimization.
pub fn criterion(evidence: &Evidence, normal_radius: f64) -> Verdict {
    let angle = match *evidence {
        Evidence::Vanishing(VanishingStatus::Vanishes { angle }) => angle,
        Evidence::Vanishing(VanishingStatus::NoVanishingAngle { .. }) => {
            return Verdict::Inconclusive
        }
        Evidence::TanBound(b) => b.atan(),
    };
    if angle.is_finite() && 2.0 * angle < normal_radius - CRITERION_MARGIN {
        Verdict::Minimizing
    } else {
        Verdict::Inconclusive
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn deg(result: &VanishingAngleResult) -> f64 {
        result.angle_deg().expect("vanishing angle")
    }

    #[test]
    fn bounds_start_at_one() {
        assert_eq!(generic_f(2.0, 0.0, 6).unwrap(), 1.0);
        assert_eq!(two_eigen_l(2.0, 0.0, 6, 3).unwrap(), 1.0);
        assert_eq!(generic_limit(3.0, 0.0), 1.0);
    }

    #[test]
    fn generic_f_matches_closed_forms() {
        let s6 = 6f64.sqrt();
        for i in 0..=20 {
            let t = 0.02 * i as f64;
            let f = (1.0 - t * 5f64.sqrt()) * (1.0 + t / 5f64.sqrt()).powi(5);
            assert!((generic_f(s6, t, 6).unwrap() - f).abs() < 1e-14);
            let e = (1.0 - t * 2f64.sqrt()).powi(2) * (1.0 + t / 2f64.sqrt()).powi(4);
            assert!((two_eigen_l(s6, t, 6, 2).unwrap() - e).abs() < 1e-14);
            let g = (1.0 - t).powi(3) * (1.0 + t).powi(3);
            assert!((two_eigen_l(s6, t, 6, 3).unwrap() - g).abs() < 1e-14);
        }
        let s8 = 8f64.sqrt();
        let direct = (1.0 - 0.1 * s8 * (7.0f64 / 8.0).sqrt()) * (1.0 + 0.1 * s8 / 56f64.sqrt()).powi(7);
        assert!((generic_f(s8, 0.1, 8).unwrap() - direct).abs() < 1e-15);
    }

    #[test]
    fn argument_errors() {
        assert!(generic_f(1.0, 0.1, 1).is_err());
        assert!(two_eigen_l(1.0, 0.1, 6, 0).is_err());
        assert!(two_eigen_l(1.0, 0.1, 6, 6).is_err());
        assert!(theta2_scaled_bound(12, 3.0).is_err());
        assert!(integrate_vn(2, &JacobianBound::GenericLimit { alpha: 1.0 }).is_err());
    }

    #[test]
    fn table_entry_nine_eight() {
        let r = theta1(9, 8f64.sqrt()).unwrap();
        assert!((deg(&r) - 12.99).abs() < 0.05, "{}", deg(&r));
    }

    #[test]
    fn closed_form_angles_at_dimension_seven() {
        let e = integrate_vn(7, &JacobianBound::CaseExact { form: ClosedForm::E }).unwrap();
        let g = integrate_vn(7, &JacobianBound::CaseExact { form: ClosedForm::G }).unwrap();
        let f = integrate_vn(7, &JacobianBound::CaseExact { form: ClosedForm::F }).unwrap();
        // the E angle comes out at 19.70°, slightly below the tabulated 19.9°
        assert!((deg(&e) - 19.70).abs() < 0.01, "{}", deg(&e));
        assert!((deg(&g) - 19.0).abs() < 0.3, "{}", deg(&g));
        assert!(matches!(
            f.status,
            VanishingStatus::NoVanishingAngle {
                reason: Exhaustion::Radicand,
                ..
            }
        ));
        // G >= E pointwise, and the larger Jacobian vanishes first
        assert!(deg(&g) < deg(&e));
    }

    #[test]
    fn theta_one_below_theta_two() {
        for (k, a2) in [(7u32, 6.0f64), (9, 8.0), (12, 11.0)] {
            let t1 = theta1(k, a2.sqrt()).unwrap();
            let t2 = theta2(k, a2.sqrt()).unwrap();
            match (t1.angle(), t2.angle()) {
                (Some(a), Some(b)) => assert!(a <= b, "k={k}: {a} > {b}"),
                // θ₁ missing while θ₂ exists would break the ordering
                (None, Some(_)) => panic!("k={k}: θ₁ missing"),
                _ => {}
            }
        }
    }

    #[test]
    fn trace_is_monotone() {
        let r = theta1(9, 8f64.sqrt()).unwrap();
        assert!(r.trace.len() > 10);
        for w in r.trace.windows(2) {
            assert!(w[1].0 >= w[0].0);
            assert!(w[1].1 <= w[0].1 + 1e-15);
        }
    }

    #[test]
    fn refinement_is_stable() {
        let bound = JacobianBound::GenericF {
            alpha: 7f64.sqrt(),
            m: 7,
        };
        let cfg = IntegratorConfig::default();
        let a = integrate_vn_with(8, &bound, &cfg).unwrap().angle().unwrap();
        let b = integrate_vn_with(8, &bound, &cfg.refined()).unwrap().angle().unwrap();
        assert!((a - b).abs() < 1e-4);
    }

    #[test]
    fn scaled_bound_examples() {
        let b13 = theta2_scaled_bound(13, 12f64.sqrt()).unwrap();
        assert!(b13.below_two_over_k && b13.tan_bound < 2.0 / 13.0);
        let b60 = theta2_scaled_bound(60, 59f64.sqrt()).unwrap();
        assert!(b60.tan_bound < 1.0 / 30.0);
        assert_eq!(theta2_scaled_bound(13, 0.0).unwrap().tan_bound, 0.0);
    }

    #[test]
    fn criterion_is_one_sided() {
        let r = |d: f64| d.to_radians();
        let v = |d: f64| Evidence::Vanishing(VanishingStatus::Vanishes { angle: r(d) });
        assert_eq!(criterion(&v(12.99), r(90.0)), Verdict::Minimizing);
        assert_eq!(criterion(&v(19.9), r(60.0)), Verdict::Minimizing);
        assert_eq!(criterion(&v(30.0), r(60.0)), Verdict::Inconclusive);
        let none = Evidence::Vanishing(VanishingStatus::NoVanishingAngle {
            max_theta: 0.4,
            reason: Exhaustion::Radicand,
        });
        assert_eq!(criterion(&none, r(60.0)), Verdict::Inconclusive);
        assert_eq!(
            criterion(&Evidence::TanBound(2.0 / 13.0), r(60.0)),
            Verdict::Minimizing
        );
    }

    use proptest::prelude::*;

    proptest! {
        #[test]
        fn l_increases_with_multiplicity(alpha in 0.5f64..3.0, m in 3u32..9, s in 0.0f64..1.0) {
            let cap = JacobianBound::GenericF { alpha, m }.validity_cap();
            let t = s * cap;
            let mut prev = generic_f(alpha, t, m).unwrap();
            for r in 2..m {
                let next = two_eigen_l(alpha, t, m, r).unwrap();
                prop_assert!(next >= prev - 1e-12);
                prev = next;
            }
        }

        #[test]
        fn f_decreases_in_alpha(a in 0.3f64..2.5, da in 0.0f64..0.5, m in 3u32..9, s in 0.0f64..1.0) {
            let hi = a + da;
            let t = s * JacobianBound::GenericF { alpha: hi, m }.validity_cap();
            prop_assert!(generic_f(hi, t, m).unwrap() <= generic_f(a, t, m).unwrap() + 1e-12);
            prop_assert!(generic_limit(hi, t) <= generic_limit(a, t) + 1e-12);
        }
    }
}
