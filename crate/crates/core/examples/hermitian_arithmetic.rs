//! Quaternion and Hermitian matrix arithmetic over ℝ, ℂ and ℍ: a tangent
//! vector at the base projector, and the unitary orbit it generates.

use cone_certify::catalog::Field;
use cone_certify::matrixlab::embedding::hermitian_unit;
use cone_certify::matrixlab::{HMatrix, HermitianPoint, Quat};

fn main() {
    let (i, j, k) = (Quat::unit(1), Quat::unit(2), Quat::unit(3));
    println!("i·j = {:?}", (i * j).0);
    println!("j·i = {:?}", (j * i).0);
    println!("i·j·k = {:?}", (i * j * k).0);

    for field in [Field::R, Field::C, Field::H] {
        let q = Quat::unit(field.dim() as usize - 1);
        let p = HermitianPoint::base(field, 1, 3);
        // tangent vector at P and the skew generator moving P along it
        let x = hermitian_unit(field, 3, 0, 1, q);
        let mut skew = HMatrix::unit(field, 3, 0, 1, q);
        skew[(1, 0)] = -q.conj();
        let u = skew.scale(0.3).exp();
        let moved = &(&u * &p.matrix) * &u.adjoint();
        let unitary = (&u * &u.adjoint()).max_abs_diff(&HMatrix::identity(field, 3));
        println!(
            "{:?}: g(X,X) = {:.3}, |UU* - I| = {:.1e}, U P U* projector: {}, g(UPU* - P, X) = {:+.4}",
            field,
            x.g(&x),
            unitary,
            HermitianPoint { matrix: moved.clone(), l: 1 }.is_projector(1e-12),
            (&moved - &p.matrix).g(&x)
        );
    }
}
