//! Exterior powers `Λ^l ℝ^k` with the basis `e_I`, `I` increasing.

use std::collections::HashMap;

use nalgebra::{DMatrix, DVector};

#[derive(Clone, Debug)]
pub struct ExteriorPower {
    pub k: usize,
    pub l: usize,
    pub index_sets: Vec<Vec<usize>>,
    rank: HashMap<Vec<usize>, usize>,
}

fn combinations(k: usize, l: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(l);
    fn rec(start: usize, k: usize, l: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == l {
            out.push(cur.clone());
            return;
        }
        for i in start..k {
            cur.push(i);
            rec(i + 1, k, l, cur, out);
            cur.pop();
        }
    }
    rec(0, k, l, &mut cur, &mut out);
    out
}

/// Sorts `idx` in place; returns the sign of the permutation, or 0 on a repeat.
fn sort_sign(idx: &mut [usize]) -> f64 {
    let mut sign = 1.0;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        0.0
    } else {
        sign
    }
}

impl ExteriorPower {
    pub fn new(k: usize, l: usize) -> Self {
        let index_sets = combinations(k, l);
        let rank = index_sets
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        ExteriorPower {
            k,
            l,
            index_sets,
            rank,
        }
    }

    pub fn dim(&self) -> usize {
        self.index_sets.len()
    }

    /// Coordinates of `e_{i_1} ∧ … ∧ e_{i_l}` for arbitrary indices.
    pub fn basis_wedge(&self, indices: &[usize]) -> DVector<f64> {
        let mut v = DVector::zeros(self.dim());
        let mut idx = indices.to_vec();
        let s = sort_sign(&mut idx);
        if s != 0.0 {
            v[self.rank[&idx]] = s;
        }
        v
    }

    /// `v_1 ∧ … ∧ v_l` for the columns `cols` of `a`.
    pub fn wedge_columns(&self, a: &DMatrix<f64>, cols: &[usize]) -> DVector<f64> {
        DVector::from_iterator(
            self.dim(),
            self.index_sets.iter().map(|rows| {
                let minor = DMatrix::from_fn(self.l, self.l, |i, j| a[(rows[i], cols[j])]);
                minor.determinant()
            }),
        )
    }

    /// Action of `x ∈ gl(k)` on `Λ^l` as a derivation.
    pub fn derivation(&self, x: &DMatrix<f64>, v: &DVector<f64>) -> DVector<f64> {
        let mut out = DVector::zeros(self.dim());
        for (pos, set) in self.index_sets.iter().enumerate() {
            let c = v[pos];
            if c == 0.0 {
                continue;
            }
            for slot in 0..self.l {
                let col = set[slot];
                for row in 0..self.k {
                    let coef = x[(row, col)];
                    if coef == 0.0 {
                        continue;
                    }
                    let mut idx = set.clone();
                    idx[slot] = row;
                    let s = sort_sign(&mut idx);
                    if s != 0.0 {
                        out[self.rank[&idx]] += s * coef * c;
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions_and_signs() {
        let ext = ExteriorPower::new(5, 2);
        assert_eq!(ext.dim(), 10);
        let v = ext.basis_wedge(&[3, 1]);
        assert_eq!(v[ext.rank[&vec![1, 3]]], -1.0);
        assert_eq!(ext.basis_wedge(&[2, 2]).norm(), 0.0);
    }

    #[test]
    fn derivation_is_the_differential_of_the_action() {
        let ext = ExteriorPower::new(4, 2);
        let mut x = DMatrix::zeros(4, 4);
        x[(2, 0)] = 0.7;
        x[(0, 2)] = -0.7;
        x[(3, 1)] = 0.2;
        x[(1, 3)] = -0.2;
        let base = ext.basis_wedge(&[0, 1]);
        let h = 1e-6;
        let expm = |s: f64| (&x * s).exp();
        let plus = ext.wedge_columns(&expm(h), &[0, 1]);
        let minus = ext.wedge_columns(&expm(-h), &[0, 1]);
        let numeric = (plus - minus) / (2.0 * h);
        assert!((numeric - ext.derivation(&x, &base)).norm() < 1e-9);
    }
}
