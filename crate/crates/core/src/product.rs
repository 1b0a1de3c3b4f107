//! Minimal products of factors.
//!
//! Factor `i` is rescaled by `λ_i = sqrt(dim_i / dim M)`, which makes the
//! product minimal in the unit sphere. The curvature bound of the product is
//! `α² = dim M · max(1, ratio_1, …, ratio_m)`.
//!
//! The normal radius is the smallest angle from the base point to a nearby
//! point of the cone's singular set, minimized over factors:
//!
//! | factor            | cosine of candidate angle |
//! |-------------------|---------------------------|
//! | `G(l,k;F)`        | `1 - d·k / dim M`         |
//! | `Gor(l,k)`        | `1 - λ_i²`                |
//! | `S(n)`            | `1 - 2 λ_i²`              |

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::catalog::{factor_props, to_f64, FactorProps, FactorSpec};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadiusCandidate {
    pub factor: usize,
    /// Exact cosine of the candidate angle.
    pub cos: Rational64,
    /// Candidate angle in radians.
    pub angle: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProductProfile {
    pub factors: Vec<(FactorSpec, FactorProps)>,
    pub dim_m: u32,
    pub dim_c: u32,
    pub lambda_sq: Vec<Rational64>,
    pub lambdas: Vec<f64>,
    pub alpha_sq: Rational64,
    /// Cosine of the normal radius.
    pub normal_cos: Rational64,
    /// Normal radius in radians.
    pub normal_radius: f64,
    pub candidates: Vec<RadiusCandidate>,
}

impl ProductProfile {
    pub fn specs(&self) -> Vec<FactorSpec> {
        self.factors.iter().map(|(s, _)| *s).collect()
    }

    pub fn alpha_sq_f64(&self) -> f64 {
        to_f64(self.alpha_sq)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha_sq_f64().sqrt()
    }

    /// Ambient scale `a_i = λ_i / r_i` of factor `i`.
    pub fn ambient_scale(&self, i: usize) -> f64 {
        self.lambdas[i] / self.factors[i].1.radius()
    }

    /// Index of the factor realizing the normal radius (first one on ties).
    pub fn radius_witness(&self) -> usize {
        self.candidates
            .iter()
            .max_by(|a, b| a.cos.cmp(&b.cos).then(b.factor.cmp(&a.factor)))
            .map(|c| c.factor)
            .unwrap_or(0)
    }
}

fn candidate_cos(spec: &FactorSpec, props: &FactorProps, dim_m: i64) -> Rational64 {
    let one = Rational64::from_integer(1);
    let dim_i = props.dim as i64;
    match *spec {
        FactorSpec::Grassmann { field, k, .. } => {
            one - Rational64::new(field.dim() as i64 * k as i64, dim_m)
        }
        FactorSpec::OrientedGrassmann { .. } => one - Rational64::new(dim_i, dim_m),
        FactorSpec::Sphere { .. } => one - Rational64::new(2 * dim_i, dim_m),
    }
}

pub fn compose(specs: &[FactorSpec]) -> Result<ProductProfile> {
    if specs.is_empty() {
        return Err(Error::EmptyProduct);
    }
    let factors = specs
        .iter()
        .map(|&s| factor_props(s).map(|p| (s, p)))
        .collect::<Result<Vec<_>>>()?;
    let dim_m: u32 = factors.iter().map(|(_, p)| p.dim).sum();
    let dm = dim_m as i64;
    let lambda_sq: Vec<Rational64> = factors
        .iter()
        .map(|(_, p)| Rational64::new(p.dim as i64, dm))
        .collect();
    let lambdas = lambda_sq.iter().map(|&r| to_f64(r).sqrt()).collect();
    let max_ratio = factors
        .iter()
        .map(|(_, p)| p.ratio)
        .fold(Rational64::from_integer(1), |a, b| a.max(b));
    let alpha_sq = Rational64::from_integer(dm) * max_ratio;

    let candidates: Vec<RadiusCandidate> = factors
        .iter()
        .enumerate()
        .map(|(i, (s, p))| {
            let cos = candidate_cos(s, p, dm);
            RadiusCandidate {
                factor: i,
                cos,
                angle: to_f64(cos).clamp(-1.0, 1.0).acos(),
            }
        })
        .collect();
    let normal_cos = candidates.iter().map(|c| c.cos).max().expect("nonempty");
    Ok(ProductProfile {
        factors,
        dim_m,
        dim_c: dim_m + 1,
        lambda_sq,
        lambdas,
        alpha_sq,
        normal_cos,
        normal_radius: to_f64(normal_cos).clamp(-1.0, 1.0).acos(),
        candidates,
    })
}

/// Normal radius of a composed profile, in radians.
pub fn normal_radius(profile: &ProductProfile) -> f64 {
    profile.normal_radius
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Field;

    fn rp(n: u32) -> FactorSpec {
        FactorSpec::projective(Field::R, n)
    }

    #[test]
    fn quaternionic_lines_squared() {
        let p = compose(&[
            FactorSpec::projective(Field::H, 1),
            FactorSpec::projective(Field::H, 1),
        ])
        .unwrap();
        assert_eq!((p.dim_m, p.dim_c), (8, 9));
        assert_eq!(p.alpha_sq, Rational64::from_integer(8));
        assert_eq!(p.normal_cos, Rational64::from_integer(0));
        // the reduced form gives the same profile numbers
        let s = compose(&[FactorSpec::sphere(4), FactorSpec::sphere(4)]).unwrap();
        assert_eq!(s.normal_cos, p.normal_cos);
        assert_eq!(s.alpha_sq, p.alpha_sq);
    }

    #[test]
    fn veronese_cube() {
        let p = compose(&[rp(2), rp(2), rp(2)]).unwrap();
        assert_eq!(p.dim_m, 6);
        assert_eq!(p.alpha_sq, Rational64::from_integer(6));
        for (l, lsq) in p.lambdas.iter().zip(&p.lambda_sq) {
            assert_eq!(*lsq, Rational64::new(1, 3));
            assert!((l - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        }
        assert_eq!(p.normal_cos, Rational64::new(1, 2));
        assert!((p.normal_radius.to_degrees() - 60.0).abs() < 1e-12);
        // a_i = λ_i / r_i = sqrt(2 d k_i / dim M)
        for i in 0..3 {
            assert!((p.ambient_scale(i) - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn single_factor_is_the_factor() {
        let p = compose(&[FactorSpec::grassmann(Field::R, 2, 5)]).unwrap();
        assert_eq!(p.lambdas, vec![1.0]);
        assert_eq!(p.alpha_sq, Rational64::from_integer(6));
    }

    #[test]
    fn projective_three_squared() {
        let p = compose(&[rp(3), rp(3)]).unwrap();
        assert_eq!(p.normal_cos, Rational64::new(1, 3));
        assert!(p.normal_radius.to_degrees() > 70.0);
    }

    #[test]
    fn oriented_squared() {
        let g = FactorSpec::oriented(2, 4);
        let p = compose(&[g, g]).unwrap();
        assert_eq!(p.normal_cos, Rational64::new(1, 2));
        assert_eq!((p.dim_c, p.alpha_sq), (9, Rational64::from_integer(8)));
    }

    #[test]
    fn mixed_sphere_product() {
        let p = compose(&[FactorSpec::sphere(2), FactorSpec::sphere(2), rp(2)]).unwrap();
        let cos: Vec<_> = p.candidates.iter().map(|c| c.cos).collect();
        assert_eq!(
            cos,
            vec![
                Rational64::new(1, 3),
                Rational64::new(1, 3),
                Rational64::new(1, 2)
            ]
        );
        assert_eq!(p.normal_cos, Rational64::new(1, 2));
        assert_eq!(p.radius_witness(), 2);
    }

    #[test]
    fn single_sphere_radius_is_pi() {
        let p = compose(&[FactorSpec::sphere(3)]).unwrap();
        assert_eq!(p.normal_cos, Rational64::from_integer(-1));
        assert!((p.normal_radius - std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn empty_product_is_rejected() {
        assert_eq!(compose(&[]), Err(Error::EmptyProduct));
    }

    use proptest::prelude::*;

    fn grassmann_or_sphere() -> impl Strategy<Value = FactorSpec> {
        prop_oneof![
            (1u32..4, 0u32..5, 0usize..3).prop_map(|(l, e, f)| {
                FactorSpec::grassmann([Field::R, Field::C, Field::H][f], l, 2 * l + e)
            }),
            (1u32..8).prop_map(FactorSpec::sphere),
        ]
    }

    proptest! {
        #[test]
        fn permutation_invariance(specs in prop::collection::vec(grassmann_or_sphere(), 1..5), rot in 0usize..5) {
            let a = compose(&specs).unwrap();
            let mut shuffled = specs.clone();
            let n = shuffled.len();
            shuffled.rotate_left(rot % n);
            shuffled.reverse();
            let b = compose(&shuffled).unwrap();
            prop_assert_eq!(a.dim_m, b.dim_m);
            prop_assert_eq!(a.alpha_sq, b.alpha_sq);
            prop_assert_eq!(a.normal_cos, b.normal_cos);
        }

        #[test]
        fn weights_and_curvature(specs in prop::collection::vec(grassmann_or_sphere(), 1..5)) {
            let p = compose(&specs).unwrap();
            let total: Rational64 = p.lambda_sq.iter().copied().sum();
            prop_assert_eq!(total, Rational64::from_integer(1));
            let float_total: f64 = p.lambdas.iter().map(|l| l * l).sum();
            prop_assert!((float_total - 1.0).abs() < 1e-14);
            prop_assert_eq!(p.alpha_sq, Rational64::from_integer(p.dim_m as i64));
            prop_assert!(p.normal_radius > 0.0 && p.normal_radius <= std::f64::consts::PI);
        }

        #[test]
        fn same_field_radius(f in 0usize..3, planes in prop::collection::vec((1u32..4, 0u32..4), 1..4)) {
            let field = [Field::R, Field::C, Field::H][f];
            let specs: Vec<_> = planes.iter().map(|&(l, e)| FactorSpec::grassmann(field, l, 2 * l + e)).collect();
            let p = compose(&specs).unwrap();
            let k_min = planes.iter().map(|&(l, e)| 2 * l + e).min().unwrap() as i64;
            let expect = Rational64::from_integer(1)
                - Rational64::new(field.dim() as i64 * k_min, p.dim_m as i64);
            prop_assert_eq!(p.normal_cos, expect);
        }
    }
}
