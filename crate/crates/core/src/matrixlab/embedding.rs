//! Orbit embeddings at their base point: frames and second fundamental forms.
//!
//! Every embedding is described in an orthonormal basis of its ambient
//! Euclidean space. Second derivatives come from orbit curves
//! `s ↦ exp(sX)·p`, whose acceleration at `s = 0` is `X·(X·p)`; mixed terms
//! are obtained by polarization.

use nalgebra::{DMatrix, DVector};
use num_rational::Rational64;

use super::exterior::ExteriorPower;
use super::hermitian::{HMatrix, HermitianBasis};
use super::quaternion::{field_units, Quat};
use crate::catalog::{factor_props, FactorSpec, Field};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub enum Model {
    /// Centered projector `P - (l/k)I` in Hermitian `k×k` matrices.
    Projector {
        basis: HermitianBasis,
        base: HMatrix,
        generators: Vec<HMatrix>,
    },
    /// Unit simple `l`-vector in `Λ^l ℝ^k`.
    Plucker {
        ext: ExteriorPower,
        generators: Vec<DMatrix<f64>>,
    },
    /// Unit sphere `S^n ⊂ ℝ^{n+1}`.
    Sphere,
}

#[derive(Clone, Debug)]
pub struct Embedding {
    pub spec: FactorSpec,
    pub model: Model,
    /// Radius of the sphere containing the raw orbit.
    pub radius: f64,
    pub position: DVector<f64>,
    /// Directions that every normal must avoid besides position and tangents
    /// (the identity for projectors).
    pub constraints: Vec<DVector<f64>>,
    pub tangents: Vec<DVector<f64>>,
    pub normals: Vec<DVector<f64>>,
    /// Symmetrized second derivatives, row-major over tangent pairs.
    second: Vec<DVector<f64>>,
}

/// Orthonormalizes `fixed` followed by the standard basis; returns the
/// vectors contributed by the standard basis.
fn complement(fixed: &[DVector<f64>], dim: usize) -> Vec<DVector<f64>> {
    let mut kept: Vec<DVector<f64>> = Vec::new();
    let project = |v: &mut DVector<f64>, kept: &[DVector<f64>]| {
        for _ in 0..2 {
            for q in kept {
                let c = q.dot(v);
                v.axpy(-c, q, 1.0);
            }
        }
    };
    for f in fixed {
        let mut v = f.clone();
        project(&mut v, &kept);
        let n = v.norm();
        if n > 1e-10 {
            kept.push(v / n);
        }
    }
    let start = kept.len();
    for m in 0..dim {
        let mut v = DVector::zeros(dim);
        v[m] = 1.0;
        project(&mut v, &kept);
        let n = v.norm();
        if n > 1e-8 {
            kept.push(v / n);
        }
    }
    kept.split_off(start)
}

impl Embedding {
    pub fn new(spec: FactorSpec) -> Result<Self> {
        spec.validate()?;
        match spec {
            FactorSpec::Grassmann { field, l, k } => Ok(Self::projector(spec, field, l as usize, k as usize)),
            FactorSpec::OrientedGrassmann { l, k } => Ok(Self::plucker(spec, l as usize, k as usize)),
            FactorSpec::Sphere { n } => Ok(Self::sphere(spec, n as usize)),
        }
    }

    fn projector(spec: FactorSpec, field: Field, l: usize, k: usize) -> Self {
        let basis = HermitianBasis::new(field, k);
        let mut diag = vec![0.0; k];
        for d in diag.iter_mut().take(l) {
            *d = 1.0;
        }
        let p = HMatrix::diag(field, &diag);
        let centered = &p - &HMatrix::identity(field, k).scale(l as f64 / k as f64);
        let mut generators = Vec::new();
        for a in 0..l {
            for al in l..k {
                for u in field_units(field) {
                    let mut x = HMatrix::unit(field, k, al, a, u);
                    x[(a, al)] = -u.conj();
                    generators.push(x);
                }
            }
        }
        let tangents: Vec<_> = generators.iter().map(|x| basis.coords(&x.commutator(&p))).collect();
        let n = generators.len();
        let mut second = Vec::with_capacity(n * n);
        let first: Vec<HMatrix> = generators.iter().map(|x| x.commutator(&p)).collect();
        for i in 0..n {
            for j in 0..n {
                let a = generators[i].commutator(&first[j]);
                let b = generators[j].commutator(&first[i]);
                second.push(basis.coords(&(&a + &b).scale(0.5)));
            }
        }
        let position = basis.coords(&centered);
        let identity = basis.coords(&HMatrix::identity(field, k));
        let mut fixed = vec![identity.clone(), position.clone()];
        fixed.extend(tangents.iter().cloned());
        let normals = complement(&fixed, basis.dim());
        Embedding {
            spec,
            radius: position.norm(),
            position,
            constraints: vec![identity],
            tangents,
            normals,
            second,
            model: Model::Projector {
                basis,
                base: p,
                generators,
            },
        }
    }

    fn plucker(spec: FactorSpec, l: usize, k: usize) -> Self {
        let ext = ExteriorPower::new(k, l);
        let base = ext.basis_wedge(&(0..l).collect::<Vec<_>>());
        let mut generators = Vec::new();
        for a in 0..l {
            for al in l..k {
                let mut x = DMatrix::zeros(k, k);
                x[(al, a)] = 1.0;
                x[(a, al)] = -1.0;
                generators.push(x);
            }
        }
        let first: Vec<DVector<f64>> = generators.iter().map(|x| ext.derivation(x, &base)).collect();
        let n = generators.len();
        let mut second = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let a = ext.derivation(&generators[i], &first[j]);
                let b = ext.derivation(&generators[j], &first[i]);
                second.push((a + b) * 0.5);
            }
        }
        let mut fixed = vec![base.clone()];
        fixed.extend(first.iter().cloned());
        let normals = complement(&fixed, ext.dim());
        Embedding {
            spec,
            radius: 1.0,
            position: base,
            constraints: Vec::new(),
            tangents: first,
            normals,
            second,
            model: Model::Plucker { ext, generators },
        }
    }

    fn sphere(spec: FactorSpec, n: usize) -> Self {
        let unit = |i: usize| {
            let mut v = DVector::zeros(n + 1);
            v[i] = 1.0;
            v
        };
        let tangents: Vec<_> = (1..=n).map(unit).collect();
        let mut second = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                second.push(if i == j { -unit(0) } else { DVector::zeros(n + 1) });
            }
        }
        Embedding {
            spec,
            radius: 1.0,
            position: unit(0),
            constraints: Vec::new(),
            tangents,
            normals: Vec::new(),
            second,
            model: Model::Sphere,
        }
    }

    pub fn dim(&self) -> usize {
        self.tangents.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.position.len()
    }

    /// Exact `|P - (l/k)I|²` from the diagonal of the centered projector;
    /// `1` for the other models.
    pub fn radius_sq_exact(&self) -> Rational64 {
        match (&self.model, self.spec) {
            (Model::Projector { .. }, FactorSpec::Grassmann { l, k, .. }) => {
                let (l, k) = (l as i64, k as i64);
                let hi = Rational64::new(k - l, k);
                let lo = Rational64::new(-l, k);
                (hi * hi * l + lo * lo * (k - l)) / 2
            }
            _ => Rational64::from_integer(1),
        }
    }

    /// Raw `II(T_i, T_j)` in ambient coordinates, before normal projection.
    pub fn second_derivative(&self, i: usize, j: usize) -> &DVector<f64> {
        &self.second[i * self.dim() + j]
    }

    /// Largest inner product of `xi` with position, constraints and tangents.
    pub fn normal_residual(&self, xi: &DVector<f64>) -> f64 {
        std::iter::once(&self.position)
            .chain(&self.constraints)
            .chain(&self.tangents)
            .map(|v| v.dot(xi).abs() / v.norm())
            .fold(0.0, f64::max)
    }

    /// `H^ξ` in the tangent frame, rescaled to the unit sphere.
    pub fn shape_operator(&self, xi: &DVector<f64>) -> Result<DMatrix<f64>> {
        let res = self.normal_residual(xi);
        if res > 1e-10 * xi.norm().max(1.0) {
            return Err(Error::NotNormal(res));
        }
        Ok(self.shape_operator_unchecked(xi))
    }

    pub(crate) fn shape_operator_unchecked(&self, xi: &DVector<f64>) -> DMatrix<f64> {
        let n = self.dim();
        DMatrix::from_fn(n, n, |i, j| self.radius * self.second_derivative(i, j).dot(xi))
    }

    /// Shape operators of the normal basis vectors.
    pub fn normal_shape_operators(&self) -> Vec<DMatrix<f64>> {
        self.normals.iter().map(|v| self.shape_operator_unchecked(v)).collect()
    }

    /// Ambient coordinates of a Hermitian matrix (projector model only).
    pub fn coords_of(&self, m: &HMatrix) -> Result<DVector<f64>> {
        match &self.model {
            Model::Projector { basis, .. } => Ok(basis.coords(m)),
            _ => Err(Error::Unsupported(format!("{} is not a projector model", self.spec))),
        }
    }

    /// Ambient coordinates of `diag(entries)` over the factor's field.
    pub fn diagonal_normal(&self, entries: &[f64]) -> Result<DVector<f64>> {
        match &self.model {
            Model::Projector { basis, .. } => Ok(basis.coords(&HMatrix::diag(basis.field, entries))),
            _ => Err(Error::Unsupported(format!("{} has no diagonal normals", self.spec))),
        }
    }

    /// `exp(sX)·p` for the `i`-th generator, in ambient coordinates.
    pub fn orbit_point(&self, i: usize, s: f64) -> DVector<f64> {
        match &self.model {
            Model::Projector { basis, base, generators } => {
                let g = generators[i].scale(s).exp();
                let moved = &(&g * base) * &g.adjoint();
                let l = base.re_trace();
                let centered = &moved - &HMatrix::identity(basis.field, basis.k).scale(l / basis.k as f64);
                basis.coords(&centered)
            }
            Model::Plucker { ext, generators } => {
                let g = (&generators[i] * s).exp();
                ext.wedge_columns(&g, &(0..ext.l).collect::<Vec<_>>())
            }
            Model::Sphere => {
                let mut v = self.position.clone() * s.cos();
                v += &self.tangents[i] * s.sin();
                v
            }
        }
    }
}

impl Embedding {
    /// `exp(sX_i)·p - p`, computed without cancelling the base point.
    pub fn displacement(&self, i: usize, s: f64) -> DVector<f64> {
        match &self.model {
            Model::Projector { basis, base, generators } => {
                let f = expm1(&generators[i].scale(s));
                let fp = &f * base;
                let moved = &(&fp + &fp.adjoint()) + &(&fp * &f.adjoint());
                basis.coords(&moved)
            }
            Model::Plucker { ext, generators } => {
                let x = &generators[i] * s;
                let mut term = x.clone();
                let mut f = x.clone();
                for n in 2..40 {
                    term = &term * &x / n as f64;
                    f += &term;
                }
                let mut out = DVector::zeros(ext.dim());
                for mask in 1u32..(1 << ext.l) {
                    let cols = DMatrix::from_fn(ext.k, ext.l, |r, c| {
                        if mask & (1 << c) != 0 {
                            f[(r, c)]
                        } else if r == c {
                            1.0
                        } else {
                            0.0
                        }
                    });
                    out += ext.wedge_columns(&cols, &(0..ext.l).collect::<Vec<_>>());
                }
                out
            }
            Model::Sphere => {
                let half = (s / 2.0).sin();
                let mut v = &self.position * (-2.0 * half * half);
                v += &self.tangents[i] * s.sin();
                v
            }
        }
    }
}

/// `exp(X) - I` by Taylor series.
fn expm1(x: &HMatrix) -> HMatrix {
    let mut term = x.clone();
    let mut sum = term.clone();
    for n in 2..40 {
        term = (&term * x).scale(1.0 / n as f64);
        sum = &sum + &term;
        if term.max_abs_diff(&HMatrix::zeros(x.field, x.k)) < 1e-300 {
            break;
        }
    }
    sum
}

/// Catalogued radius of `spec`, for comparison.
pub fn catalog_radius(spec: FactorSpec) -> Result<f64> {
    Ok(factor_props(spec)?.radius())
}

/// The quaternion unit `u` placed at `(i, j)` and `ū` at `(j, i)`.
pub fn hermitian_unit(field: Field, k: usize, i: usize, j: usize, u: Quat) -> HMatrix {
    let mut m = HMatrix::unit(field, k, i, j, u);
    m[(j, i)] = u.conj();
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Field::*;

    fn emb(s: &str) -> Embedding {
        Embedding::new(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn dimensions() {
        for (s, dim, amb, normals) in [
            ("G(1,3;R)", 2, 6, 2),
            ("G(2,4;R)", 4, 10, 4),
            ("G(1,3;C)", 4, 9, 3),
            ("G(1,3;H)", 8, 15, 5),
            ("Gor(2,4)", 4, 6, 1),
            ("Gor(2,5)", 6, 10, 3),
            ("S(3)", 3, 4, 0),
        ] {
            let e = emb(s);
            assert_eq!((e.dim(), e.ambient_dim(), e.normals.len()), (dim, amb, normals), "{s}");
        }
    }

    #[test]
    fn radii() {
        let r = |s| emb(s).radius;
        assert!((r("G(1,3;R)") - (1.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert!((r("G(2,4;R)") - 0.5f64.sqrt()).abs() < 1e-15);
        assert!((r("G(1,4;R)") - 3f64.sqrt() / (2.0 * 2f64.sqrt())).abs() < 1e-15);
        assert_eq!(emb("G(2,5;C)").radius_sq_exact(), Rational64::new(3, 5));
    }

    #[test]
    fn frames_are_orthonormal() {
        for s in ["G(1,3;R)", "G(2,4;C)", "G(1,3;H)", "Gor(2,5)", "Gor(3,6)"] {
            let e = emb(s);
            let all: Vec<_> = e.tangents.iter().chain(&e.normals).collect();
            for (i, a) in all.iter().enumerate() {
                for (j, b) in all.iter().enumerate() {
                    let expect = if i == j { 1.0 } else { 0.0 };
                    assert!((a.dot(b) - expect).abs() < 1e-13, "{s} {i} {j}");
                }
                assert!(a.dot(&e.position).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn published_shape_operators() {
        let s3 = 3f64.sqrt();
        let rp2 = emb("G(1,3;R)");
        let a = 0.7;
        let h = rp2.shape_operator(&rp2.diagonal_normal(&[0.0, a, -a]).unwrap()).unwrap();
        assert!((h[(0, 0)] - a / s3).abs() < 1e-14 && (h[(1, 1)] + a / s3).abs() < 1e-14);
        assert!(h[(0, 1)].abs() < 1e-14);

        let g24 = emb("G(2,4;R)");
        let (a, b) = (0.3, -0.55);
        let h = g24.shape_operator(&g24.diagonal_normal(&[a, -a, b, -b]).unwrap()).unwrap();
        let mut got: Vec<f64> = (0..4).map(|i| h[(i, i)]).collect();
        let mut want: Vec<f64> = [-a + b, a + b, -a - b, a - b].iter().map(|x| x / 2f64.sqrt()).collect();
        got.sort_by(f64::total_cmp);
        want.sort_by(f64::total_cmp);
        for (x, y) in got.iter().zip(&want) {
            assert!((x - y).abs() < 1e-14);
        }

        let cp2 = emb("G(1,3;C)");
        let b = 0.4;
        let h = cp2.shape_operator(&cp2.diagonal_normal(&[0.0, b, -b]).unwrap()).unwrap();
        let diag: Vec<f64> = (0..4).map(|i| h[(i, i)]).collect();
        assert_eq!(diag.iter().filter(|&&x| (x - b / s3).abs() < 1e-14).count(), 2);
        assert_eq!(diag.iter().filter(|&&x| (x + b / s3).abs() < 1e-14).count(), 2);
    }

    #[test]
    fn non_normal_vectors_are_rejected() {
        let e = emb("G(1,3;R)");
        assert!(matches!(e.shape_operator(&e.tangents[0]), Err(Error::NotNormal(_))));
        assert!(e.shape_operator(&e.position).is_err());
    }

    #[test]
    fn hermitian_units_are_basis_elements() {
        let m = hermitian_unit(H, 3, 0, 2, Quat::unit(3));
        assert!(m.is_hermitian(0.0));
        assert!((m.g(&m) - 1.0).abs() < 1e-15);
        let _ = C;
    }
}
