//! Square matrices over `ℝ`, `ℂ`, `ℍ` and the real inner product
//! `g(A, B) = ½ Re tr(AB)` on Hermitian matrices.

use std::ops::{Add, Mul, Sub};

use nalgebra::DVector;

use super::quaternion::{field_units, Quat};
use crate::catalog::Field;

#[derive(Clone, Debug, PartialEq)]
pub struct HMatrix {
    pub k: usize,
    pub field: Field,
    data: Vec<Quat>,
}

impl HMatrix {
    pub fn zeros(field: Field, k: usize) -> Self {
        HMatrix {
            k,
            field,
            data: vec![Quat::ZERO; k * k],
        }
    }

    pub fn identity(field: Field, k: usize) -> Self {
        let mut m = Self::zeros(field, k);
        for i in 0..k {
            m[(i, i)] = Quat::ONE;
        }
        m
    }

    pub fn diag(field: Field, entries: &[f64]) -> Self {
        let mut m = Self::zeros(field, entries.len());
        for (i, &x) in entries.iter().enumerate() {
            m[(i, i)] = Quat::real(x);
        }
        m
    }

    /// `E_ij q`.
    pub fn unit(field: Field, k: usize, i: usize, j: usize, q: Quat) -> Self {
        let mut m = Self::zeros(field, k);
        m[(i, j)] = q;
        m
    }

    pub fn scale(&self, s: f64) -> Self {
        HMatrix {
            data: self.data.iter().map(|q| q.scale(s)).collect(),
            ..self.clone()
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.field, self.k);
        for i in 0..self.k {
            for j in 0..self.k {
                m[(i, j)] = self[(j, i)].conj();
            }
        }
        m
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn re_trace(&self) -> f64 {
        (0..self.k).map(|i| self[(i, i)].re()).sum()
    }

    /// `½ Re tr(AB)`.
    pub fn g(&self, other: &Self) -> f64 {
        0.5 * (self * other).re_trace()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (*a - *b).norm_sq().sqrt())
            .fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.adjoint()) <= tol
    }

    /// `exp(X)` by Taylor series, for `X` of moderate norm.
    pub fn exp(&self) -> Self {
        let mut term = Self::identity(self.field, self.k);
        let mut sum = term.clone();
        for n in 1..40 {
            term = (&term * self).scale(1.0 / n as f64);
            sum = &sum + &term;
            if term.data.iter().all(|q| q.norm_sq() < 1e-40) {
                break;
            }
        }
        sum
    }
}

impl std::ops::Index<(usize, usize)> for HMatrix {
    type Output = Quat;
    fn index(&self, (i, j): (usize, usize)) -> &Quat {
        &self.data[i * self.k + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for HMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Quat {
        &mut self.data[i * self.k + j]
    }
}

impl Add for &HMatrix {
    type Output = HMatrix;
    fn add(self, o: &HMatrix) -> HMatrix {
        HMatrix {
            data: self.data.iter().zip(&o.data).map(|(a, b)| *a + *b).collect(),
            ..self.clone()
        }
    }
}

impl Sub for &HMatrix {
    type Output = HMatrix;
    fn sub(self, o: &HMatrix) -> HMatrix {
        HMatrix {
            data: self.data.iter().zip(&o.data).map(|(a, b)| *a - *b).collect(),
            ..self.clone()
        }
    }
}

impl Mul for &HMatrix {
    type Output = HMatrix;
    fn mul(self, o: &HMatrix) -> HMatrix {
        let k = self.k;
        let mut m = HMatrix::zeros(self.field, k);
        for i in 0..k {
            for l in 0..k {
                let a = self[(i, l)];
                if a == Quat::ZERO {
                    continue;
                }
                for j in 0..k {
                    m[(i, j)] = m[(i, j)] + a * o[(l, j)];
                }
            }
        }
        m
    }
}

/// Orthonormal basis of the Hermitian `k×k` matrices under `g`:
/// `√2 E_ii`, then `E_ij u + E_ji ū` for `i < j` and units `u` of the field.
#[derive(Clone, Debug)]
pub struct HermitianBasis {
    pub field: Field,
    pub k: usize,
    pub elements: Vec<HMatrix>,
}

impl HermitianBasis {
    pub fn new(field: Field, k: usize) -> Self {
        let mut elements = Vec::new();
        for i in 0..k {
            elements.push(HMatrix::unit(field, k, i, i, Quat::real(2f64.sqrt())));
        }
        for i in 0..k {
            for j in i + 1..k {
                for u in field_units(field) {
                    let mut m = HMatrix::unit(field, k, i, j, u);
                    m[(j, i)] = u.conj();
                    elements.push(m);
                }
            }
        }
        HermitianBasis { field, k, elements }
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn coords(&self, a: &HMatrix) -> DVector<f64> {
        DVector::from_iterator(self.dim(), self.elements.iter().map(|e| e.g(a)))
    }

    pub fn matrix(&self, c: &DVector<f64>) -> HMatrix {
        let mut m = HMatrix::zeros(self.field, self.k);
        for (e, &x) in self.elements.iter().zip(c.iter()) {
            if x != 0.0 {
                m = &m + &e.scale(x);
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_is_orthonormal() {
        for field in [Field::R, Field::C, Field::H] {
            let b = HermitianBasis::new(field, 4);
            assert_eq!(b.dim(), 4 + field.dim() as usize * 6);
            for (i, x) in b.elements.iter().enumerate() {
                assert!(x.is_hermitian(0.0));
                for (j, y) in b.elements.iter().enumerate() {
                    let expect = if i == j { 1.0 } else { 0.0 };
                    assert!((x.g(y) - expect).abs() < 1e-15, "{field:?} {i} {j}");
                }
            }
        }
    }

    #[test]
    fn coordinates_are_an_isometry() {
        let b = HermitianBasis::new(Field::H, 3);
        let mut a = HMatrix::diag(Field::H, &[0.3, -1.0, 0.7]);
        a[(0, 2)] = Quat([0.1, 0.2, -0.4, 0.5]);
        a[(2, 0)] = a[(0, 2)].conj();
        let mut c = HMatrix::diag(Field::H, &[1.0, 2.0, -3.0]);
        c[(1, 2)] = Quat([0.0, 1.0, 1.0, 0.0]);
        c[(2, 1)] = c[(1, 2)].conj();
        let (ca, cc) = (b.coords(&a), b.coords(&c));
        assert!((ca.dot(&cc) - a.g(&c)).abs() < 1e-13);
        assert!(b.matrix(&ca).max_abs_diff(&a) < 1e-14);
    }

    #[test]
    fn exponential_of_rotation_generator() {
        let mut x = HMatrix::zeros(Field::R, 2);
        x[(1, 0)] = Quat::real(0.3);
        x[(0, 1)] = Quat::real(-0.3);
        let e = x.exp();
        assert!((e[(0, 0)].re() - 0.3f64.cos()).abs() < 1e-15);
        assert!((e[(1, 0)].re() - 0.3f64.sin()).abs() < 1e-15);
    }
}
