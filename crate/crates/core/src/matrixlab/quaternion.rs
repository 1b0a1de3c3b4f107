//! Scalars of `ℝ`, `ℂ` and `ℍ` stored as four real components.
//!
//! A real number uses only component 0, a complex number components 0 and 1.
//! All three fields share the quaternion multiplication table.

use std::ops::{Add, Mul, Neg, Sub};

use crate::catalog::Field;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Quat(pub [f64; 4]);

impl Quat {
    pub const ZERO: Quat = Quat([0.0; 4]);
    pub const ONE: Quat = Quat([1.0, 0.0, 0.0, 0.0]);

    pub fn real(x: f64) -> Self {
        Quat([x, 0.0, 0.0, 0.0])
    }

    /// The `n`-th unit `1, i, j, k`.
    pub fn unit(n: usize) -> Self {
        let mut q = [0.0; 4];
        q[n] = 1.0;
        Quat(q)
    }

    pub fn conj(self) -> Self {
        let [a, b, c, d] = self.0;
        Quat([a, -b, -c, -d])
    }

    pub fn re(self) -> f64 {
        self.0[0]
    }

    pub fn norm_sq(self) -> f64 {
        self.0.iter().map(|x| x * x).sum()
    }

    pub fn scale(self, s: f64) -> Self {
        Quat(self.0.map(|x| x * s))
    }

    /// Whether the imaginary components outside `field` vanish.
    pub fn lies_in(self, field: Field) -> bool {
        self.0[field.dim() as usize..].iter().all(|&x| x == 0.0)
    }
}

/// Units `1, i, j, k` spanning `field` over `ℝ`.
pub fn field_units(field: Field) -> impl Iterator<Item = Quat> {
    (0..field.dim() as usize).map(Quat::unit)
}

impl Add for Quat {
    type Output = Quat;
    fn add(self, o: Quat) -> Quat {
        Quat([
            self.0[0] + o.0[0],
            self.0[1] + o.0[1],
            self.0[2] + o.0[2],
            self.0[3] + o.0[3],
        ])
    }
}

impl Sub for Quat {
    type Output = Quat;
    fn sub(self, o: Quat) -> Quat {
        self + (-o)
    }
}

impl Neg for Quat {
    type Output = Quat;
    fn neg(self) -> Quat {
        Quat(self.0.map(|x| -x))
    }
}

impl Mul for Quat {
    type Output = Quat;
    fn mul(self, o: Quat) -> Quat {
        let [a1, b1, c1, d1] = self.0;
        let [a2, b2, c2, d2] = o.0;
        Quat([
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        ])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hamilton_relations() {
        let (i, j, k) = (Quat::unit(1), Quat::unit(2), Quat::unit(3));
        let m1 = Quat::real(-1.0);
        assert_eq!(i * i, m1);
        assert_eq!(j * j, m1);
        assert_eq!(k * k, m1);
        assert_eq!(i * j, k);
        assert_eq!(j * k, i);
        assert_eq!(k * i, j);
        assert_eq!(j * i, -k);
    }

    #[test]
    fn complex_subfield_is_closed() {
        let z = Quat([1.0, 2.0, 0.0, 0.0]);
        let w = Quat([-0.5, 3.0, 0.0, 0.0]);
        assert!((z * w).lies_in(Field::C));
        assert_eq!(z * w, w * z);
        assert_eq!(field_units(Field::C).count(), 2);
    }

    use proptest::prelude::*;

    fn quat() -> impl Strategy<Value = Quat> {
        prop::array::uniform4(-3.0f64..3.0).prop_map(Quat)
    }

    proptest! {
        #[test]
        fn norm_is_multiplicative(p in quat(), q in quat()) {
            let lhs = (p * q).norm_sq();
            prop_assert!((lhs - p.norm_sq() * q.norm_sq()).abs() < 1e-10 * (1.0 + lhs));
        }

        #[test]
        fn conjugation_reverses_products(p in quat(), q in quat()) {
            let lhs = (p * q).conj();
            let rhs = q.conj() * p.conj();
            for (a, b) in lhs.0.iter().zip(rhs.0.iter()) {
                prop_assert!((a - b).abs() < 1e-12);
            }
        }

        #[test]
        fn associativity(p in quat(), q in quat(), r in quat()) {
            let lhs = (p * q) * r;
            let rhs = p * (q * r);
            for (a, b) in lhs.0.iter().zip(rhs.0.iter()) {
                prop_assert!((a - b).abs() < 1e-10);
            }
        }
    }
}
