//! The twelve product cones of dimension 7 and their reduced normal parameters.
//!
//! Every case has `dim M = 6`. A unit normal is `v = Σ (b_i x_i + ξ_i)` with
//! `Σ λ_i b_i = 0` and `Σ (b_i² + |ξ_i|²) = 1`; the families below restrict
//! `ξ_i` to the diagonal shapes on which the minimum is attained.

use std::f64::consts::{PI, SQRT_2};

use crate::catalog::{FactorSpec, Field};

const S3: f64 = 1.732_050_807_568_877_2;

fn sq(x: f64) -> f64 {
    x.max(0.0).sqrt()
}

fn rp(n: u32) -> FactorSpec {
    FactorSpec::projective(Field::R, n)
}

/// Parameter family of a case together with its type-II restriction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CaseKind {
    /// `ℝP² × ℝP² × ℝP²` and its sphere variants; params `(a, b)`.
    /// `carrier` is the factor holding `(a, ξ)`.
    Cube { carrier: usize },
    /// `ℝP² × G(2,4;ℝ)`; params `(b1, c, x, y)`.
    PlaneGrass { sphere: bool },
    /// `ℝP² × ℝP⁴`; params `(a, b)`, `d² = 1 - 3a²/2 - b²`.
    PlaneFour(FourVariant),
    /// `ℝP³ × ℝP³`; params `(a, b, c)`, `8a² + 3b² + 3c² = 4`.
    ThreeThree { sphere: bool },
    /// `ℝP² × ℂP²`; params `(a, b)`, `c² = 1 - 3a²/2 - b²`.
    PlaneProjC { sphere: bool },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FourVariant {
    Full,
    /// `S² × ℝP⁴`: `d = 0`.
    SphereTwo,
    /// `S⁴ × ℝP²`: `b = 0`.
    SphereFour,
}

/// A normal vector given by position coefficients `b_i` and diagonal
/// normals `ξ_i` (`None` for sphere factors).
#[derive(Clone, Debug, PartialEq)]
pub struct NormalLift {
    pub b: Vec<f64>,
    pub xi: Vec<Option<Vec<f64>>>,
}

impl CaseKind {
    pub fn family(&self) -> u8 {
        match self {
            CaseKind::Cube { .. } => 1,
            CaseKind::PlaneGrass { .. } => 2,
            CaseKind::PlaneFour(_) => 3,
            CaseKind::ThreeThree { .. } => 4,
            CaseKind::PlaneProjC { .. } => 5,
        }
    }

    pub fn factors(&self) -> Vec<FactorSpec> {
        let g24 = FactorSpec::grassmann(Field::R, 2, 4);
        let cp2 = FactorSpec::projective(Field::C, 2);
        let s = FactorSpec::sphere;
        match *self {
            CaseKind::Cube { carrier: 0 } => vec![rp(2), rp(2), rp(2)],
            CaseKind::Cube { carrier: 1 } => vec![s(2), rp(2), rp(2)],
            CaseKind::Cube { .. } => vec![s(2), s(2), rp(2)],
            CaseKind::PlaneGrass { sphere } => vec![if sphere { s(2) } else { rp(2) }, g24],
            CaseKind::PlaneFour(FourVariant::Full) => vec![rp(2), rp(4)],
            CaseKind::PlaneFour(FourVariant::SphereTwo) => vec![s(2), rp(4)],
            CaseKind::PlaneFour(FourVariant::SphereFour) => vec![s(4), rp(2)],
            CaseKind::ThreeThree { sphere } => vec![if sphere { s(3) } else { rp(3) }, rp(3)],
            CaseKind::PlaneProjC { sphere } => vec![if sphere { s(2) } else { rp(2) }, cp2],
        }
    }

    /// Number of free parameters.
    pub fn box_dim(&self) -> usize {
        match *self {
            CaseKind::Cube { .. } => 2,
            CaseKind::PlaneGrass { sphere } => 3 - sphere as usize,
            CaseKind::PlaneFour(FourVariant::Full) => 2,
            CaseKind::PlaneFour(_) => 1,
            CaseKind::ThreeThree { sphere } => 2 - sphere as usize,
            CaseKind::PlaneProjC { sphere } => 2 - sphere as usize,
        }
    }

    pub fn domain(&self) -> &'static str {
        match *self {
            CaseKind::Cube { .. } => "{(a,b): 3a^2 + 2b^2 <= 2}",
            CaseKind::PlaneGrass { sphere: false } => {
                "{(b1,c,x,y): 3b1^2/2 + c^2 + (x^2+y^2)/2 = 1, c,x,y >= 0}"
            }
            CaseKind::PlaneGrass { sphere: true } => {
                "{(b1,x,y): 3b1^2/2 + (x^2+y^2)/2 = 1, x,y >= 0}"
            }
            CaseKind::PlaneFour(FourVariant::Full) => "{(a,b): 3a^2 + 2b^2 <= 2}",
            CaseKind::PlaneFour(FourVariant::SphereTwo) => "{(a,b): 3a^2 + 2b^2 = 2}",
            CaseKind::PlaneFour(FourVariant::SphereFour) => "{a: 3a^2 <= 2}",
            CaseKind::ThreeThree { sphere: false } => "{(a,b,c): 8a^2 + 3b^2 + 3c^2 = 4}",
            CaseKind::ThreeThree { sphere: true } => "{(a,c): 8a^2 + 3c^2 = 4}",
            CaseKind::PlaneProjC { sphere: false } => "{(a,b): 3a^2 + 2b^2 <= 2}",
            CaseKind::PlaneProjC { sphere: true } => "{(a,b): 3a^2 + 2b^2 = 2}",
        }
    }

    /// Maps `u ∈ [0,1]^box_dim` onto the parameter domain.
    pub fn from_box(&self, u: &[f64]) -> Vec<f64> {
        let r23 = (2.0f64 / 3.0).sqrt();
        let span = |v: f64| 2.0 * v - 1.0;
        match *self {
            CaseKind::Cube { .. } => {
                let a = r23 * span(u[0]);
                vec![a, sq(1.0 - 1.5 * a * a) * span(u[1])]
            }
            CaseKind::PlaneGrass { sphere } => {
                let b1 = r23 * span(u[0]);
                let rest = (1.0 - 1.5 * b1 * b1).max(0.0);
                if sphere {
                    vec![b1, 0.0, sq(2.0 * rest * (1.0 - u[1])), sq(2.0 * rest * u[1])]
                } else {
                    let s = u[1].sqrt();
                    let (w1, w2, w3) = (1.0 - s, s * (1.0 - u[2]), s * u[2]);
                    vec![b1, sq(rest * w1), sq(2.0 * rest * w2), sq(2.0 * rest * w3)]
                }
            }
            CaseKind::PlaneFour(FourVariant::Full) | CaseKind::PlaneProjC { sphere: false } => {
                let a = r23 * span(u[0]);
                vec![a, sq(1.0 - 1.5 * a * a) * span(u[1])]
            }
            CaseKind::PlaneFour(FourVariant::SphereTwo) | CaseKind::PlaneProjC { sphere: true } => {
                let phi = 2.0 * PI * u[0];
                vec![r23 * phi.cos(), phi.sin()]
            }
            CaseKind::PlaneFour(FourVariant::SphereFour) => vec![r23 * span(u[0]), 0.0],
            CaseKind::ThreeThree { sphere: false } => {
                let a = span(u[0]) / SQRT_2;
                let rho = sq((4.0 - 8.0 * a * a) / 3.0);
                let phi = 2.0 * PI * u[1];
                vec![a, rho * phi.cos(), rho * phi.sin()]
            }
            CaseKind::ThreeThree { sphere: true } => {
                let phi = 2.0 * PI * u[0];
                vec![phi.cos() / SQRT_2, 0.0, 2.0 / S3 * phi.sin()]
            }
        }
    }

    /// Eigenvalues of `H^v` on the reduced family.
    pub fn spectrum(&self, p: &[f64]) -> [f64; 6] {
        match *self {
            CaseKind::Cube { .. } => {
                let (a, b) = (p[0], p[1]);
                let r = sq(2.0 - 3.0 * a * a - 2.0 * b * b);
                let (b2, b3) = ((-a + r) / 2.0, (-a - r) / 2.0);
                [S3 * a + b, S3 * a - b, S3 * b2, S3 * b2, S3 * b3, S3 * b3]
            }
            CaseKind::PlaneGrass { .. } => {
                let (b1, c, x, y) = (p[0], p[1], p[2], p[3]);
                let h = S3 / 2.0 * b1;
                let q = S3 / 2.0;
                [S3 * b1 + c, S3 * b1 - c, -h + q * x, -h - q * x, -h + q * y, -h - q * y]
            }
            CaseKind::PlaneFour(variant) => {
                let (a, b) = (p[0], p[1]);
                let d = match variant {
                    FourVariant::SphereTwo => 0.0,
                    _ => sq(1.0 - 1.5 * a * a - b * b),
                };
                let h = S3 / 2.0 * a;
                let r10 = 10f64.sqrt();
                let low = -h - b / r10;
                [S3 * a + d, S3 * a - d, -h + 3.0 / r10 * b, low, low, low]
            }
            CaseKind::ThreeThree { .. } => {
                let (a, b, c) = (p[0], p[1], p[2]);
                let (u, v) = (SQRT_2 * a, S3 / 4.0);
                [
                    u + 2.0 * v * b,
                    u - v * b,
                    u - v * b,
                    -u + 2.0 * v * c,
                    -u - v * c,
                    -u - v * c,
                ]
            }
            CaseKind::PlaneProjC { sphere } => {
                let (a, b) = (p[0], p[1]);
                let c = if sphere { 0.0 } else { sq(1.0 - 1.5 * a * a - b * b) };
                let h = S3 / 2.0 * a;
                let q = b / SQRT_2;
                [S3 * a + c, S3 * a - c, -h + q, -h + q, -h - q, -h - q]
            }
        }
    }

    /// The full normal vector represented by `p`, in factor order.
    pub fn lift(&self, p: &[f64]) -> NormalLift {
        let diag3 = |c: f64| Some(vec![0.0, c, -c]);
        match *self {
            CaseKind::Cube { carrier } => {
                let (a, b) = (p[0], p[1]);
                let r = sq(2.0 - 3.0 * a * a - 2.0 * b * b);
                let mut rest = [(-a + r) / 2.0, (-a - r) / 2.0].into_iter();
                let mut bs = Vec::new();
                let mut xi = Vec::new();
                let factors = self.factors();
                for (i, f) in factors.iter().enumerate() {
                    if i == carrier {
                        bs.push(a);
                        xi.push(diag3(b));
                    } else {
                        bs.push(rest.next().expect("three factors"));
                        xi.push((!f.is_sphere()).then(|| vec![0.0; 3]));
                    }
                }
                NormalLift { b: bs, xi }
            }
            CaseKind::PlaneGrass { sphere } => {
                let (b1, c, x, y) = (p[0], p[1], p[2], p[3]);
                let (a2, b2) = ((x + y) / 2.0, (y - x) / 2.0);
                NormalLift {
                    b: vec![b1, -b1 / SQRT_2],
                    xi: vec![
                        (!sphere).then(|| vec![0.0, c, -c]),
                        Some(vec![a2, -a2, b2, -b2]),
                    ],
                }
            }
            CaseKind::PlaneFour(variant) => {
                let (a, b) = (p[0], p[1]);
                let d = sq(1.0 - 1.5 * a * a - b * b);
                let c1 = (1.5f64).sqrt() * b;
                let four = Some(vec![0.0, c1, -c1 / 3.0, -c1 / 3.0, -c1 / 3.0]);
                match variant {
                    FourVariant::Full => NormalLift {
                        b: vec![a, -a / SQRT_2],
                        xi: vec![diag3(d), four],
                    },
                    FourVariant::SphereTwo => NormalLift {
                        b: vec![a, -a / SQRT_2],
                        xi: vec![None, four],
                    },
                    FourVariant::SphereFour => NormalLift {
                        b: vec![-a / SQRT_2, a],
                        xi: vec![None, diag3(d)],
                    },
                }
            }
            CaseKind::ThreeThree { sphere } => {
                let (a, b, c) = (p[0], p[1], p[2]);
                let shape = |v: f64| Some(vec![0.0, v, -v / 2.0, -v / 2.0]);
                NormalLift {
                    b: vec![a, -a],
                    xi: vec![if sphere { None } else { shape(b) }, shape(c)],
                }
            }
            CaseKind::PlaneProjC { sphere } => {
                let (a, b) = (p[0], p[1]);
                let c = sq(1.0 - 1.5 * a * a - b * b);
                NormalLift {
                    b: vec![a, -a / SQRT_2],
                    xi: vec![if sphere { None } else { diag3(c) }, diag3(b)],
                }
            }
        }
    }

    /// Whether `p` lies in the domain, within `tol`.
    pub fn contains(&self, p: &[f64], tol: f64) -> bool {
        match *self {
            CaseKind::Cube { .. } | CaseKind::PlaneFour(FourVariant::Full) => {
                3.0 * p[0] * p[0] + 2.0 * p[1] * p[1] <= 2.0 + tol
            }
            CaseKind::PlaneProjC { sphere: false } => {
                3.0 * p[0] * p[0] + 2.0 * p[1] * p[1] <= 2.0 + tol
            }
            CaseKind::PlaneFour(FourVariant::SphereTwo) | CaseKind::PlaneProjC { sphere: true } => {
                (3.0 * p[0] * p[0] + 2.0 * p[1] * p[1] - 2.0).abs() <= tol
            }
            CaseKind::PlaneFour(FourVariant::SphereFour) => {
                3.0 * p[0] * p[0] <= 2.0 + tol && p[1] == 0.0
            }
            CaseKind::PlaneGrass { sphere } => {
                let (b1, c, x, y) = (p[0], p[1], p[2], p[3]);
                let lhs = 1.5 * b1 * b1 + c * c + 0.5 * (x * x + y * y);
                (lhs - 1.0).abs() <= tol
                    && c >= -tol
                    && x >= -tol
                    && y >= -tol
                    && (!sphere || c.abs() <= tol)
            }
            CaseKind::ThreeThree { sphere } => {
                let (a, b, c) = (p[0], p[1], p[2]);
                (8.0 * a * a + 3.0 * b * b + 3.0 * c * c - 4.0).abs() <= tol
                    && (!sphere || b.abs() <= tol)
            }
        }
    }
}

/// `Π (1 - t μ_j)`.
pub fn det_of_spectrum(mu: &[f64], t: f64) -> f64 {
    mu.iter().map(|m| 1.0 - t * m).product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::factor_props;
    use crate::product::compose;

    fn all_kinds() -> Vec<CaseKind> {
        use FourVariant::*;
        vec![
            CaseKind::Cube { carrier: 0 },
            CaseKind::Cube { carrier: 1 },
            CaseKind::Cube { carrier: 2 },
            CaseKind::PlaneGrass { sphere: false },
            CaseKind::PlaneGrass { sphere: true },
            CaseKind::PlaneFour(Full),
            CaseKind::PlaneFour(SphereTwo),
            CaseKind::PlaneFour(SphereFour),
            CaseKind::ThreeThree { sphere: false },
            CaseKind::ThreeThree { sphere: true },
            CaseKind::PlaneProjC { sphere: false },
            CaseKind::PlaneProjC { sphere: true },
        ]
    }

    /// Eigenvalues of `H^v` for a diagonal lift, from the orbit formula
    /// `r_i (ξ_αα - ξ_aa)` with `a <= l < α`, each of multiplicity `d`.
    fn spectrum_of_lift(kind: &CaseKind, lift: &NormalLift) -> Vec<f64> {
        let profile = compose(&kind.factors()).unwrap();
        let mut out = Vec::new();
        for (i, spec) in kind.factors().iter().enumerate() {
            let lam = profile.lambdas[i];
            let props = factor_props(*spec).unwrap();
            let shift = lift.b[i] / lam;
            match (spec, &lift.xi[i]) {
                (FactorSpec::Sphere { n }, _) => out.extend(std::iter::repeat_n(shift, *n as usize)),
                (FactorSpec::Grassmann { field, l, k }, Some(xi)) => {
                    let r = props.radius();
                    for a in 0..*l as usize {
                        for al in *l as usize..*k as usize {
                            for _ in 0..field.dim() {
                                out.push(shift + r * (xi[al] - xi[a]) / lam);
                            }
                        }
                    }
                }
                _ => unreachable!(),
            }
        }
        out.sort_by(f64::total_cmp);
        out
    }

    fn unit_norm(kind: &CaseKind, lift: &NormalLift) -> f64 {
        let mut total = 0.0;
        for (i, spec) in kind.factors().iter().enumerate() {
            total += lift.b[i] * lift.b[i];
            if let (FactorSpec::Grassmann { .. }, Some(xi)) = (spec, &lift.xi[i]) {
                total += 0.5 * xi.iter().map(|x| x * x).sum::<f64>();
            }
        }
        total
    }

    #[test]
    fn every_kind_has_dimension_six() {
        for kind in all_kinds() {
            let p = compose(&kind.factors()).unwrap();
            assert_eq!(p.dim_m, 6, "{kind:?}");
        }
    }

    #[test]
    fn lifts_are_unit_normals_with_balanced_positions() {
        for kind in all_kinds() {
            let profile = compose(&kind.factors()).unwrap();
            for i in 0..=10 {
                for j in 0..=10 {
                    for k in [0.0, 0.37, 1.0] {
                        let u = [i as f64 / 10.0, j as f64 / 10.0, k];
                        let p = kind.from_box(&u[..kind.box_dim()]);
                        assert!(kind.contains(&p, 1e-12), "{kind:?} {p:?}");
                        let lift = kind.lift(&p);
                        assert!((unit_norm(&kind, &lift) - 1.0).abs() < 1e-12, "{kind:?} {p:?}");
                        let bal: f64 = lift.b.iter().zip(&profile.lambdas).map(|(b, l)| b * l).sum();
                        assert!(bal.abs() < 1e-14);
                        let mut mu = kind.spectrum(&p).to_vec();
                        mu.sort_by(f64::total_cmp);
                        let from_lift = spectrum_of_lift(&kind, &lift);
                        for (x, y) in mu.iter().zip(&from_lift) {
                            assert!((x - y).abs() < 1e-12, "{kind:?} {p:?}: {mu:?} vs {from_lift:?}");
                        }
                        assert!(mu.iter().sum::<f64>().abs() < 1e-12);
                        let norm: f64 = mu.iter().map(|m| m * m).sum();
                        assert!(norm <= 6.0 + 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn three_three_is_symmetric_under_swap() {
        let k = CaseKind::ThreeThree { sphere: false };
        for (a, b) in [(0.3, 0.5), (-0.2, 0.1)] {
            let c = sq((4.0 - 8.0 * a * a - 3.0 * b * b) / 3.0);
            for t in [0.1, 0.3, 0.44] {
                let x = det_of_spectrum(&k.spectrum(&[a, b, c]), t);
                let y = det_of_spectrum(&k.spectrum(&[-a, c, b]), t);
                assert!((x - y).abs() < 1e-15);
            }
        }
    }
}
