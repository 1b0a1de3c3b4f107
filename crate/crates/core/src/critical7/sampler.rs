//! Random unit normals over the whole normal space of a dimension-7 product,
//! compared against the reduced-domain minimum.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::{CriticalCase, MinimizationReport};
use crate::error::Result;
use crate::matrixlab::oracles::{embeddings, lift_normals};

pub const FULL_SAMPLES: usize = 100_000;

/// Normal-space coordinates of a product: `b ∈ ℝ^m` with `Σ λ_i b_i = 0`
/// followed by each factor's normal-frame coordinates.
struct NormalSpace {
    lambdas: Vec<f64>,
    /// Shape operators of each factor's normal frame, divided by `λ_i`.
    ops: Vec<Vec<DMatrix<f64>>>,
    dims: Vec<usize>,
    normals: Vec<Vec<DVector<f64>>>,
}

impl NormalSpace {
    fn new(case: &CriticalCase) -> Result<Self> {
        let profile = case.profile();
        let embs = embeddings(&profile)?;
        Ok(NormalSpace {
            ops: embs
                .iter()
                .zip(&profile.lambdas)
                .map(|(e, l)| e.normal_shape_operators().into_iter().map(|h| h / *l).collect())
                .collect(),
            dims: embs.iter().map(|e| e.dim()).collect(),
            normals: embs.iter().map(|e| e.normals.clone()).collect(),
            lambdas: profile.lambdas,
        })
    }

    fn len(&self) -> usize {
        self.lambdas.len() + self.ops.iter().map(Vec::len).sum::<usize>()
    }

    /// Projects the `b` block onto `λ^⊥` and normalizes.
    fn normalize(&self, x: &mut DVector<f64>) {
        let m = self.lambdas.len();
        let dot: f64 = (0..m).map(|i| x[i] * self.lambdas[i]).sum();
        for i in 0..m {
            x[i] -= dot * self.lambdas[i];
        }
        let n = x.norm();
        *x /= n;
    }

    fn jacobian(&self, x: &DVector<f64>, t: f64) -> f64 {
        let m = self.lambdas.len();
        let mut det = 1.0;
        let mut pos = m;
        for i in 0..m {
            let d = self.dims[i];
            let mut h = DMatrix::identity(d, d) * (x[i] / self.lambdas[i]);
            for op in &self.ops[i] {
                h += op * x[pos];
                pos += 1;
            }
            det *= (DMatrix::identity(d, d) - h * t).determinant();
        }
        det
    }

    fn coordinates(&self, case: &CriticalCase, params: &[f64]) -> Result<DVector<f64>> {
        let lift = case.lift(params);
        let profile = case.profile();
        let ambient = lift_normals(&embeddings(&profile)?, &lift)?;
        let mut x = DVector::zeros(self.len());
        for (i, &b) in lift.b.iter().enumerate() {
            x[i] = b;
        }
        let mut pos = self.lambdas.len();
        for (frame, xi) in self.normals.iter().zip(&ambient) {
            for n in frame {
                x[pos] = xi.as_ref().map_or(0.0, |v| n.dot(v));
                pos += 1;
            }
        }
        Ok(x)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SamplerReport {
    pub case: String,
    pub samples: usize,
    pub seed: u64,
    pub normal_dim: usize,
    /// Largest `reduced minimum - sampled value` seen (negative if never below).
    pub worst_undercut: f64,
    pub worst_t: f64,
    /// Smallest sampled value minus reduced minimum over all slopes.
    pub closest_gap: f64,
}

impl SamplerReport {
    pub fn passed(&self, tol: f64) -> bool {
        self.worst_undercut <= tol
    }
}

/// Samples `samples` unit normals, cycling over the slopes of `reports`.
/// Even samples are uniform on the normal sphere; odd ones perturb the
/// reduced argmin at scales `10^-3 … 10^-1`.
pub fn full_normal_check(
    case: &CriticalCase,
    reports: &[MinimizationReport],
    samples: usize,
    seed: u64,
) -> Result<SamplerReport> {
    let space = NormalSpace::new(case)?;
    let n = space.len();
    let anchors = reports
        .iter()
        .map(|r| space.coordinates(case, &r.argmin))
        .collect::<Result<Vec<_>>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SamplerReport {
        case: case.name.to_string(),
        samples,
        seed,
        normal_dim: n,
        worst_undercut: f64::NEG_INFINITY,
        worst_t: f64::NAN,
        closest_gap: f64::INFINITY,
    };
    if reports.is_empty() {
        return Ok(report);
    }
    for s in 0..samples {
        let which = (s / 2) % reports.len();
        let r = &reports[which];
        let g = DVector::from_iterator(n, (0..n).map(|_| rng.sample::<f64, _>(StandardNormal)));
        let mut x = if s % 2 == 0 {
            g
        } else {
            let scale = [1e-3, 1e-2, 1e-1][(s / 2) % 3];
            &anchors[which] + g * (scale / (n as f64).sqrt())
        };
        space.normalize(&mut x);
        let value = space.jacobian(&x, r.t);
        let reduced = r.numeric_min;
        if reduced - value > report.worst_undercut {
            report.worst_undercut = reduced - value;
            report.worst_t = r.t;
        }
        report.closest_gap = report.closest_gap.min(value - reduced);
    }
    Ok(report)
}
