//! Explicit embeddings of the factors and the oracles built on them.

pub mod embedding;
pub mod exterior;
pub mod hermitian;
pub mod oracles;
pub mod quaternion;

use nalgebra::DMatrix;

pub use embedding::Embedding;
pub use hermitian::{HMatrix, HermitianBasis};
pub use oracles::{
    normal_radius_witness, plucker_orbit_check, product_shape_operator, radius_check, sup_alpha_sq,
    sym_det_floor, AlphaReport, DetFloorReport, RadiusReport, DEFAULT_SEED,
};
pub use quaternion::Quat;

use crate::catalog::{FactorSpec, Field};
use crate::error::{Error, Result};

/// The base projector `diag(1,…,1,0,…,0)` of a Grassmannian.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianPoint {
    pub matrix: HMatrix,
    pub l: usize,
}

impl HermitianPoint {
    pub fn base(field: Field, l: usize, k: usize) -> Self {
        let diag: Vec<f64> = (0..k).map(|i| if i < l { 1.0 } else { 0.0 }).collect();
        HermitianPoint {
            matrix: HMatrix::diag(field, &diag),
            l,
        }
    }

    /// `P - (l/k) I`.
    pub fn centered(&self) -> HMatrix {
        let k = self.matrix.k;
        &self.matrix - &HMatrix::identity(self.matrix.field, k).scale(self.l as f64 / k as f64)
    }

    /// Self-adjoint, idempotent and of trace `l`.
    pub fn is_projector(&self, tol: f64) -> bool {
        let sq = &self.matrix * &self.matrix;
        self.matrix.is_hermitian(tol)
            && sq.max_abs_diff(&self.matrix) <= tol
            && (self.matrix.re_trace() - self.l as f64).abs() <= tol
    }
}

/// Base point and centered point of a Grassmannian.
pub fn build_embedding(spec: FactorSpec) -> Result<(HermitianPoint, HMatrix)> {
    spec.validate()?;
    match spec {
        FactorSpec::Grassmann { field, l, k } => {
            let p = HermitianPoint::base(field, l as usize, k as usize);
            let c = p.centered();
            Ok((p, c))
        }
        _ => Err(Error::Unsupported(format!(
            "{spec} has no projector model; use Embedding::new for its unit vector"
        ))),
    }
}

/// Shape operator at unit-sphere scale for a normal in ambient coordinates.
pub fn shape_operator(spec: FactorSpec, normal: &nalgebra::DVector<f64>) -> Result<DMatrix<f64>> {
    Embedding::new(spec)?.shape_operator(normal)
}
