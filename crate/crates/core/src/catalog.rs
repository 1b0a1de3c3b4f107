//! Intrinsic constants of the admissible factors.
//!
//! Each factor is one of
//!
//! * `G(l,k;F)`: the Grassmannian of `l`-planes in `F^k`, `F` one of R, C, H,
//!   embedded by its Hermitian orthogonal projector `P ↦ P - (l/k) I`;
//! * `Gor(l,k)`: oriented real `l`-planes in `R^k`, Plücker embedded as unit
//!   simple `l`-vectors;
//! * `S(n)`: a round unit sphere.
//!
//! Quantities that are rational in the integer inputs are kept as exact
//! [`Rational64`] values.

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Base field of a Grassmannian.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Field {
    R,
    C,
    H,
}

impl Field {
    /// Real dimension of the field.
    pub fn dim(self) -> u32 {
        match self {
            Field::R => 1,
            Field::C => 2,
            Field::H => 4,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Field::R => 'R',
            Field::C => 'C',
            Field::H => 'H',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum FactorSpec {
    Grassmann { field: Field, l: u32, k: u32 },
    OrientedGrassmann { l: u32, k: u32 },
    Sphere { n: u32 },
}

impl FactorSpec {
    pub fn grassmann(field: Field, l: u32, k: u32) -> Self {
        FactorSpec::Grassmann { field, l, k }
    }

    pub fn oriented(l: u32, k: u32) -> Self {
        FactorSpec::OrientedGrassmann { l, k }
    }

    pub fn sphere(n: u32) -> Self {
        FactorSpec::Sphere { n }
    }

    /// `FP^n`, the projective space of lines in `F^(n+1)`.
    pub fn projective(field: Field, n: u32) -> Self {
        FactorSpec::Grassmann {
            field,
            l: 1,
            k: n + 1,
        }
    }

    /// Checks the normalization `1 <= l <= k - l` (and `n >= 1` for spheres).
    pub fn validate(&self) -> Result<()> {
        match *self {
            FactorSpec::Grassmann { l, k, .. } | FactorSpec::OrientedGrassmann { l, k } => {
                if l == 0 || k <= l {
                    return Err(Error::Degenerate(self.to_string()));
                }
                if l > k - l {
                    return Err(Error::NotNormalized(self.to_string(), k - l));
                }
                Ok(())
            }
            FactorSpec::Sphere { n } => {
                if n == 0 {
                    Err(Error::Degenerate(self.to_string()))
                } else {
                    Ok(())
                }
            }
        }
    }

    /// Intrinsic dimension.
    pub fn dim(&self) -> u32 {
        match *self {
            FactorSpec::Grassmann { field, l, k } => field.dim() * l * (k - l),
            FactorSpec::OrientedGrassmann { l, k } => l * (k - l),
            FactorSpec::Sphere { n } => n,
        }
    }

    pub fn is_sphere(&self) -> bool {
        matches!(self, FactorSpec::Sphere { .. })
    }

    /// A conventional name such as `RP^2`, `G(2,4;R)` or `S^3`.
    pub fn common_name(&self) -> String {
        match *self {
            FactorSpec::Grassmann { field, l: 1, k } => format!("{}P^{}", field.symbol(), k - 1),
            FactorSpec::Grassmann { field, l, k } => format!("G({l},{k};{})", field.symbol()),
            FactorSpec::OrientedGrassmann { l, k } => format!("Gor({l},{k})"),
            FactorSpec::Sphere { n } => format!("S^{n}"),
        }
    }
}

impl fmt::Display for FactorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FactorSpec::Grassmann { field, l, k } => write!(f, "G({l},{k};{})", field.symbol()),
            FactorSpec::OrientedGrassmann { l, k } => write!(f, "Gor({l},{k})"),
            FactorSpec::Sphere { n } => write!(f, "S({n})"),
        }
    }
}

fn parse_uint(atom: &str, s: &str) -> Result<u32> {
    s.parse::<u32>()
        .map_err(|_| Error::Parse(atom.to_string(), format!("`{s}` is not a non-negative integer")))
}

impl FromStr for FactorSpec {
    type Err = Error;

    /// Parses one atom of the factor grammar: `G(l,k;R|C|H)`, `Gor(l,k)` or `S(n)`.
    /// Whitespace is ignored. The result is not validated.
    fn from_str(s: &str) -> Result<Self> {
        let atom: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let err = |msg: &str| Error::Parse(atom.clone(), msg.to_string());
        let open = atom.find('(').ok_or_else(|| err("missing `(`"))?;
        if !atom.ends_with(')') {
            return Err(err("missing `)`"));
        }
        let head = &atom[..open];
        let body = &atom[open + 1..atom.len() - 1];
        match head {
            "G" => {
                let (nums, field) = body.split_once(';').ok_or_else(|| err("expected `;F`"))?;
                let field = match field {
                    "R" => Field::R,
                    "C" => Field::C,
                    "H" => Field::H,
                    other => return Err(err(&format!("unknown field `{other}`"))),
                };
                let (l, k) = nums.split_once(',').ok_or_else(|| err("expected `l,k`"))?;
                Ok(FactorSpec::Grassmann {
                    field,
                    l: parse_uint(&atom, l)?,
                    k: parse_uint(&atom, k)?,
                })
            }
            "Gor" => {
                let (l, k) = body.split_once(',').ok_or_else(|| err("expected `l,k`"))?;
                Ok(FactorSpec::OrientedGrassmann {
                    l: parse_uint(&atom, l)?,
                    k: parse_uint(&atom, k)?,
                })
            }
            "S" => Ok(FactorSpec::Sphere {
                n: parse_uint(&atom, body)?,
            }),
            other => Err(err(&format!("unknown factor type `{other}`"))),
        }
    }
}

/// Parses an infix product `A x B x C` of factor atoms.
pub fn parse_product(text: &str) -> Result<Vec<FactorSpec>> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::EmptyProduct);
    }
    let mut atoms = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in compact.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            'x' | '×' | '*' if depth == 0 => {
                atoms.push(&compact[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    atoms.push(&compact[start..]);
    atoms.into_iter().map(FactorSpec::from_str).collect()
}

/// Replaces the Grassmannians that are round spheres by the sphere itself:
/// `RP^1 → S^1`, `CP^1 → S^2`, `HP^1 → S^4`, `Gor(1,m) → S^(m-1)`.
pub fn reduce(spec: FactorSpec) -> FactorSpec {
    match spec {
        FactorSpec::Grassmann { field, l: 1, k: 2 } => FactorSpec::Sphere { n: field.dim() },
        FactorSpec::OrientedGrassmann { l: 1, k } if k >= 2 => FactorSpec::Sphere { n: k - 1 },
        other => other,
    }
}

/// Intrinsic constants of one factor, at unit-sphere scale.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FactorProps {
    pub dim: u32,
    /// Real dimension of the base field (1 for spheres and oriented factors).
    pub d: u32,
    /// Square of the radius of the sphere containing the embedded factor.
    pub radius_sq: Rational64,
    /// Dimension of the Euclidean space containing that sphere.
    pub ambient: u64,
    /// Bound on `|H^ξ|^2` over unit normals.
    pub alpha_sq: Rational64,
    /// `alpha_sq / dim`.
    pub ratio: Rational64,
}

impl FactorProps {
    pub fn radius(&self) -> f64 {
        to_f64(self.radius_sq).sqrt()
    }

    pub fn alpha_sq_f64(&self) -> f64 {
        to_f64(self.alpha_sq)
    }
}

pub(crate) fn to_f64(r: Rational64) -> f64 {
    r.to_f64().expect("rational fits in f64")
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

pub fn factor_props(spec: FactorSpec) -> Result<FactorProps> {
    spec.validate()?;
    let r = |n: i64, d: i64| Rational64::new(n, d);
    Ok(match spec {
        FactorSpec::Grassmann { field, l, k } => {
            let d = field.dim();
            let (l, k, di) = (l as i64, k as i64, d as i64);
            let dim = di * l * (k - l);
            let alpha_sq = r(di * l * (k - l) * (k - l), k);
            FactorProps {
                dim: dim as u32,
                d,
                radius_sq: r(l * (k - l), 2 * k),
                ambient: (k - 1 + di * k * (k - 1) / 2) as u64,
                alpha_sq,
                ratio: alpha_sq / Rational64::from_integer(dim),
            }
        }
        FactorSpec::OrientedGrassmann { l, k } => {
            if l < 2 {
                return Err(Error::Unreduced(spec.to_string(), reduce(spec).to_string()));
            }
            let dim = (l * (k - l)) as i64;
            FactorProps {
                dim: dim as u32,
                d: 1,
                radius_sq: Rational64::from_integer(1),
                ambient: binomial(k as u64, l as u64),
                alpha_sq: Rational64::from_integer(4),
                ratio: r(4, dim),
            }
        }
        FactorSpec::Sphere { n } => FactorProps {
            dim: n,
            d: 1,
            radius_sq: Rational64::from_integer(1),
            ambient: n as u64 + 1,
            alpha_sq: Rational64::from_integer(0),
            ratio: Rational64::from_integer(0),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_projective_plane() {
        let p = factor_props(FactorSpec::projective(Field::R, 2)).unwrap();
        assert_eq!(p.dim, 2);
        assert_eq!(p.radius_sq, Rational64::new(1, 3));
        assert_eq!(p.alpha_sq, Rational64::new(4, 3));
        assert_eq!(p.ratio, Rational64::new(2, 3));
        assert_eq!(p.ambient, 5);
    }

    #[test]
    fn sphere_is_totally_geodesic() {
        let p = factor_props(FactorSpec::sphere(2)).unwrap();
        assert_eq!(p.dim, 2);
        assert_eq!(p.alpha_sq, Rational64::from_integer(0));
        assert_eq!(p.ratio, Rational64::from_integer(0));
    }

    #[test]
    fn oriented_two_planes_in_four_space() {
        let p = factor_props(FactorSpec::oriented(2, 4)).unwrap();
        assert_eq!(p.dim, 4);
        assert_eq!(p.alpha_sq, Rational64::from_integer(4));
        assert_eq!(p.ambient, 6);
    }

    #[test]
    fn embedding_radii() {
        let rp3 = factor_props(FactorSpec::projective(Field::R, 3)).unwrap();
        assert_eq!(rp3.radius_sq, Rational64::new(3, 8));
        let g24 = factor_props(FactorSpec::grassmann(Field::R, 2, 4)).unwrap();
        assert_eq!(g24.radius_sq, Rational64::new(1, 2));
        let cp2 = factor_props(FactorSpec::projective(Field::C, 2)).unwrap();
        assert_eq!(cp2.dim, 4);
        assert_eq!(cp2.ambient, 8);
    }

    #[test]
    fn rejects_unnormalized_and_degenerate() {
        assert!(matches!(
            factor_props(FactorSpec::grassmann(Field::R, 3, 4)),
            Err(Error::NotNormalized(_, 1))
        ));
        assert!(matches!(
            factor_props(FactorSpec::grassmann(Field::C, 2, 2)),
            Err(Error::Degenerate(_))
        ));
        assert!(matches!(
            factor_props(FactorSpec::oriented(1, 4)),
            Err(Error::Unreduced(_, _))
        ));
    }

    #[test]
    fn reduced_cases() {
        assert_eq!(
            reduce(FactorSpec::projective(Field::H, 1)),
            FactorSpec::sphere(4)
        );
        assert_eq!(
            reduce(FactorSpec::projective(Field::C, 1)),
            FactorSpec::sphere(2)
        );
        assert_eq!(
            reduce(FactorSpec::projective(Field::R, 1)),
            FactorSpec::sphere(1)
        );
        assert_eq!(reduce(FactorSpec::oriented(1, 4)), FactorSpec::sphere(3));
        let g25 = FactorSpec::grassmann(Field::R, 2, 5);
        assert_eq!(reduce(g25), g25);
    }

    #[test]
    fn parses_grammar() {
        let p = parse_product(" G(1,3;R) x Gor( 2,5 )xS(4) ").unwrap();
        assert_eq!(
            p,
            vec![
                FactorSpec::projective(Field::R, 2),
                FactorSpec::oriented(2, 5),
                FactorSpec::sphere(4)
            ]
        );
        assert!(parse_product("G(1,3;Q)").is_err());
        assert!(parse_product("T(2)").is_err());
        assert!(parse_product("").is_err());
        for spec in &p {
            assert_eq!(spec.to_string().parse::<FactorSpec>().unwrap(), *spec);
        }
    }

    use proptest::prelude::*;

    fn grassmann_spec() -> impl Strategy<Value = FactorSpec> {
        (1u32..6, 0u32..8, 0usize..3).prop_map(|(l, extra, f)| {
            let field = [Field::R, Field::C, Field::H][f];
            FactorSpec::grassmann(field, l, 2 * l + extra)
        })
    }

    fn any_spec() -> impl Strategy<Value = FactorSpec> {
        prop_oneof![
            grassmann_spec(),
            (1u32..5, 0u32..6).prop_map(|(l, e)| FactorSpec::oriented(l, 2 * l.max(1) + e)),
            (1u32..10).prop_map(FactorSpec::sphere),
        ]
    }

    proptest! {
        #[test]
        fn ratio_is_below_one(spec in grassmann_spec()) {
            let p = factor_props(spec).unwrap();
            prop_assert!(p.ratio < Rational64::from_integer(1));
        }

        #[test]
        fn reduce_is_idempotent_and_keeps_dimension(spec in any_spec()) {
            let once = reduce(spec);
            prop_assert_eq!(reduce(once), once);
            prop_assert_eq!(once.dim(), spec.dim());
            prop_assert_eq!(factor_props(once).unwrap().dim, spec.dim());
        }
    }
}
