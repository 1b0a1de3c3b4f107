//! Brute-force checks of the catalog, the product formulas and the
//! eigenvalue lemma.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::embedding::{Embedding, Model};
use super::exterior::ExteriorPower;
use super::hermitian::HMatrix;
use crate::catalog::{factor_props, to_f64, FactorSpec};
use crate::critical7::NormalLift;
use crate::error::{Error, Result};
use crate::lawlor::two_eigen_l;
use crate::product::ProductProfile;

pub const DEFAULT_SEED: u64 = 0x5eed_c0de;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian_vector(rng: &mut ChaCha8Rng, n: usize) -> DVector<f64> {
    DVector::from_iterator(n, (0..n).map(|_| rng.sample::<f64, _>(StandardNormal)))
}

/// A unit normal of `emb` with Gaussian coordinates in its normal frame.
pub fn random_normal(emb: &Embedding, rng: &mut ChaCha8Rng) -> Option<DVector<f64>> {
    if emb.normals.is_empty() {
        return None;
    }
    let c = gaussian_vector(rng, emb.normals.len());
    let c = &c / c.norm();
    Some(combine(&emb.normals, &c))
}

fn combine(frame: &[DVector<f64>], c: &DVector<f64>) -> DVector<f64> {
    let mut v = DVector::zeros(frame[0].len());
    for (f, &x) in frame.iter().zip(c.iter()) {
        v.axpy(x, f, 1.0);
    }
    v
}

/// Gram matrix of `ξ ↦ |H^ξ|²` in the normal frame.
pub fn curvature_form(emb: &Embedding) -> DMatrix<f64> {
    let ops = emb.normal_shape_operators();
    let q = ops.len();
    DMatrix::from_fn(q, q, |p, r| ops[p].dot(&ops[r]))
}

/// Unit normals coming from diagonal matrices, in normal-frame coordinates.
fn diagonal_normals(emb: &Embedding) -> Vec<DVector<f64>> {
    let FactorSpec::Grassmann { k, .. } = emb.spec else {
        return Vec::new();
    };
    let k = k as usize;
    let mut out = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            let mut d = vec![0.0; k];
            d[i] = 1.0;
            d[j] = -1.0;
            let v = emb.diagonal_normal(&d).expect("projector model");
            let c = DVector::from_iterator(emb.normals.len(), emb.normals.iter().map(|n| n.dot(&v)));
            if c.norm() > 1e-9 {
                out.push(&c / c.norm());
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlphaReport {
    pub factor: String,
    pub samples: usize,
    pub seed: u64,
    /// Largest `|H^ξ|²` over the sampled unit normals.
    pub sampled_sup: f64,
    /// Largest eigenvalue of the curvature form.
    pub exact_sup: f64,
    /// Largest `|H^ξ|²` over diagonal normals alone.
    pub diagonal_sup: f64,
    pub catalog: f64,
    pub max_abs_trace: f64,
    pub max_asymmetry: f64,
}

impl AlphaReport {
    pub fn matches_catalog(&self, tol: f64) -> bool {
        (self.sampled_sup - self.catalog).abs() <= tol
    }
}

/// Sup of `|H^ξ|²` over unit normals: random normals, every normal-frame
/// vector, the diagonal normals and the top eigenvector of the curvature
/// form.
pub fn sup_alpha_sq(spec: FactorSpec, samples: usize, seed: u64) -> Result<AlphaReport> {
    let emb = Embedding::new(spec)?;
    let catalog = factor_props(spec)?.alpha_sq_f64();
    let q = emb.normals.len();
    let mut report = AlphaReport {
        factor: spec.to_string(),
        samples,
        seed,
        sampled_sup: 0.0,
        exact_sup: 0.0,
        diagonal_sup: 0.0,
        catalog,
        max_abs_trace: 0.0,
        max_asymmetry: 0.0,
    };
    if q == 0 {
        return Ok(report);
    }
    let form = curvature_form(&emb);
    let eig = SymmetricEigen::new(form.clone());
    let top = eig.eigenvalues.imax();
    report.exact_sup = eig.eigenvalues[top];

    let mut candidates: Vec<DVector<f64>> = (0..q)
        .map(|i| {
            let mut e = DVector::zeros(q);
            e[i] = 1.0;
            e
        })
        .collect();
    let diagonal = diagonal_normals(&emb);
    candidates.extend(diagonal.iter().cloned());
    candidates.push(eig.eigenvectors.column(top).into_owned());
    let mut r = rng(seed);
    for _ in 0..samples {
        let c = gaussian_vector(&mut r, q);
        candidates.push(&c / c.norm());
    }
    for (n, c) in candidates.iter().enumerate() {
        let h = emb.shape_operator(&combine(&emb.normals, c))?;
        let norm_sq = h.norm_squared();
        report.sampled_sup = report.sampled_sup.max(norm_sq);
        report.max_abs_trace = report.max_abs_trace.max(h.trace().abs());
        report.max_asymmetry = report.max_asymmetry.max((&h - h.transpose()).amax());
        if n >= q && n < q + diagonal.len() {
            report.diagonal_sup = report.diagonal_sup.max(norm_sq);
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadiusReport {
    pub factor: String,
    pub radius_sq: Rational64,
    pub catalog: Rational64,
    /// `|numeric radius² - exact|`.
    pub float_error: f64,
}

impl RadiusReport {
    pub fn exact(&self) -> bool {
        self.radius_sq == self.catalog
    }
}

pub fn radius_check(spec: FactorSpec) -> Result<RadiusReport> {
    let emb = Embedding::new(spec)?;
    let exact = emb.radius_sq_exact();
    Ok(RadiusReport {
        factor: spec.to_string(),
        radius_sq: exact,
        catalog: factor_props(spec)?.radius_sq,
        float_error: (emb.radius * emb.radius - to_f64(exact)).abs(),
    })
}

/// Unit base point of factor `i` and the nearest singular point of the cone
/// in that factor, both at unit scale.
fn factor_witness(emb: &Embedding) -> (DVector<f64>, DVector<f64>) {
    let unit = &emb.position / emb.radius;
    let other = match (&emb.model, emb.spec) {
        (Model::Projector { basis, base, .. }, FactorSpec::Grassmann { l, k, .. }) => {
            let (l, k) = (l as usize, k as usize);
            let mut swapped = base.clone();
            let (a, b) = (swapped[(l - 1, l - 1)], swapped[(l, l)]);
            swapped[(l - 1, l - 1)] = b;
            swapped[(l, l)] = a;
            let centered = &swapped - &HMatrix::identity(basis.field, k).scale(l as f64 / k as f64);
            basis.coords(&centered) / emb.radius
        }
        (Model::Plucker { ext, .. }, _) => {
            let mut idx: Vec<usize> = (0..ext.l).collect();
            idx[ext.l - 1] = ext.l;
            ext.basis_wedge(&idx)
        }
        _ => -unit.clone(),
    };
    (unit, other)
}

type Witness = (DVector<f64>, DVector<f64>);

fn cached_witness(spec: FactorSpec) -> Result<Arc<Witness>> {
    static CACHE: OnceLock<Mutex<HashMap<FactorSpec, Arc<Witness>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().expect("cache lock").get(&spec) {
        return Ok(hit.clone());
    }
    let w = Arc::new(factor_witness(&Embedding::new(spec)?));
    cache.lock().expect("cache lock").insert(spec, w.clone());
    Ok(w)
}

/// Cosine of the angle between the product base point and the witness that
/// changes factor `factor` only, from explicit product vectors.
pub fn normal_radius_witness(profile: &ProductProfile, factor: usize) -> Result<f64> {
    if factor >= profile.factors.len() {
        return Err(Error::OutOfRange {
            what: "factor",
            value: factor as f64,
            range: format!("0..{}", profile.factors.len()),
        });
    }
    let mut base = Vec::new();
    let mut moved = Vec::new();
    for (i, (spec, _)) in profile.factors.iter().enumerate() {
        let wit = cached_witness(*spec)?;
        let (u, w) = (&wit.0, &wit.1);
        let lambda = profile.lambdas[i];
        base.extend(u.iter().map(|x| x * lambda));
        let m = if i == factor { w } else { u };
        moved.extend(m.iter().map(|x| x * lambda));
    }
    let (x, y) = (DVector::from_vec(base), DVector::from_vec(moved));
    Ok(x.dot(&y) / (x.norm() * y.norm()))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DetFloorReport {
    pub m: usize,
    pub alpha: f64,
    pub t: f64,
    pub trials: usize,
    pub seed: u64,
    pub empirical_min: f64,
    /// `L(α, t, m, 1)`.
    pub bound: f64,
    /// `det(I - tA)` at the two-valued extremal matrix.
    pub extremal: f64,
}

impl DetFloorReport {
    pub fn holds(&self, tol: f64) -> bool {
        self.empirical_min >= self.bound - tol && (self.extremal - self.bound).abs() <= tol
    }
}

/// A uniformly random trace-free symmetric `m×m` matrix of Frobenius norm `alpha`.
pub fn random_traceless(m: usize, alpha: f64, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    let mut a = DMatrix::zeros(m, m);
    for i in 0..m {
        a[(i, i)] = rng.sample::<f64, _>(StandardNormal);
        for j in i + 1..m {
            let x = rng.sample::<f64, _>(StandardNormal) * std::f64::consts::FRAC_1_SQRT_2;
            a[(i, j)] = x;
            a[(j, i)] = x;
        }
    }
    let shift = a.trace() / m as f64;
    for i in 0..m {
        a[(i, i)] -= shift;
    }
    let n = a.norm();
    a * (alpha / n)
}

/// `diag(α√((m-r)/(mr)) ×r, -α√(r/(m(m-r))) ×(m-r))`.
pub fn two_valued(m: usize, alpha: f64, r: usize) -> DMatrix<f64> {
    let (mf, rf) = (m as f64, r as f64);
    let pos = alpha * ((mf - rf) / (mf * rf)).sqrt();
    let neg = -alpha * (rf / (mf * (mf - rf))).sqrt();
    DMatrix::from_diagonal(&DVector::from_fn(m, |i, _| if i < r { pos } else { neg }))
}

fn det_shift(a: &DMatrix<f64>, t: f64) -> f64 {
    (DMatrix::identity(a.nrows(), a.ncols()) - a * t).determinant()
}

pub fn sym_det_floor(m: usize, alpha: f64, t: f64, trials: usize, seed: u64) -> Result<DetFloorReport> {
    if m < 2 {
        return Err(Error::OutOfRange {
            what: "m",
            value: m as f64,
            range: "m >= 2".into(),
        });
    }
    let mut r = rng(seed);
    let mut min = f64::INFINITY;
    for _ in 0..trials {
        min = min.min(det_shift(&random_traceless(m, alpha, &mut r), t));
    }
    Ok(DetFloorReport {
        m,
        alpha,
        t,
        trials,
        seed,
        empirical_min: min,
        bound: two_eigen_l(alpha, t, m as u32, 1)?,
        extremal: det_shift(&two_valued(m, alpha, 1), t),
    })
}

/// Haar-random element of `SO(n)` from the QR factorization of a Gaussian matrix.
pub fn random_rotation(n: usize, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    let g = DMatrix::from_fn(n, n, |_, _| rng.sample::<f64, _>(StandardNormal));
    let qr = g.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    if q.determinant() < 0.0 {
        q.column_mut(0).neg_mut();
    }
    q
}

/// Largest deviation between `Ae₁∧Ae₂` and `A G₁₂ Aᵀ` over random rotations
/// of `ℝ^{2n+1}`, with `e_i∧e_j ↔ G_ij = E_ji - E_ij`.
pub fn plucker_orbit_check(n: usize, trials: usize, seed: u64) -> Result<f64> {
    if n < 2 {
        return Err(Error::OutOfRange {
            what: "n",
            value: n as f64,
            range: "n >= 2".into(),
        });
    }
    let dim = 2 * n + 1;
    let ext = ExteriorPower::new(dim, 2);
    let mut g12 = DMatrix::zeros(dim, dim);
    g12[(1, 0)] = 1.0;
    g12[(0, 1)] = -1.0;
    let mut r = rng(seed);
    let mut worst: f64 = 0.0;
    for trial in 0..trials {
        let a = if trial == 0 {
            DMatrix::identity(dim, dim)
        } else {
            random_rotation(dim, &mut r)
        };
        let wedge = ext.wedge_columns(&a, &[0, 1]);
        let conj = &a * &g12 * a.transpose();
        for (pos, set) in ext.index_sets.iter().enumerate() {
            worst = worst.max((wedge[pos] - conj[(set[1], set[0])]).abs());
        }
    }
    Ok(worst)
}

/// Per-factor embeddings of a product, in factor order.
pub fn embeddings(profile: &ProductProfile) -> Result<Vec<Embedding>> {
    profile.specs().into_iter().map(Embedding::new).collect()
}

/// `H^v = blockdiag{(b_i/λ_i) I + H_i^{ξ_i}/λ_i}` for ambient normals `xi`.
pub fn product_shape_operator(
    profile: &ProductProfile,
    embs: &[Embedding],
    b: &[f64],
    xi: &[Option<DVector<f64>>],
) -> Result<DMatrix<f64>> {
    let n = profile.dim_m as usize;
    let mut h = DMatrix::zeros(n, n);
    let mut off = 0;
    for (i, emb) in embs.iter().enumerate() {
        let d = emb.dim();
        let lambda = profile.lambdas[i];
        let mut block = DMatrix::identity(d, d) * (b[i] / lambda);
        if let Some(v) = &xi[i] {
            block += emb.shape_operator(v)? / lambda;
        }
        h.view_mut((off, off), (d, d)).copy_from(&block);
        off += d;
    }
    Ok(h)
}

/// Ambient normals of a diagonal lift.
pub fn lift_normals(embs: &[Embedding], lift: &NormalLift) -> Result<Vec<Option<DVector<f64>>>> {
    embs.iter()
        .zip(&lift.xi)
        .map(|(emb, x)| x.as_ref().map(|d| emb.diagonal_normal(d)).transpose())
        .collect()
}

pub fn jacobian(h: &DMatrix<f64>, t: f64) -> f64 {
    det_shift(h, t)
}

/// Largest deviation between the second difference of the orbit curves
/// and the algebraic second fundamental form along the frame directions.
pub fn finite_difference_check(spec: FactorSpec, step: f64) -> Result<f64> {
    let emb = Embedding::new(spec)?;
    let mut worst: f64 = 0.0;
    for i in 0..emb.dim() {
        let fd = (emb.displacement(i, step) + emb.displacement(i, -step)) / (step * step);
        worst = worst.max((fd - emb.second_derivative(i, i)).amax());
    }
    Ok(worst)
}
