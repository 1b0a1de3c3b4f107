//! Random trace-free symmetric matrices against the two-eigenvalue floor
//! on det(I - tA).

use cone_certify::lawlor::{two_eigen_l, JacobianBound};
use cone_certify::matrixlab::oracles::{sym_det_floor, DEFAULT_SEED};

fn main() -> cone_certify::Result<()> {
    println!(" m     α      t     floor L      empirical min   extremal");
    for m in [4usize, 5, 6] {
        for alpha in [6f64.sqrt(), (m as f64).sqrt()] {
            let cap = JacobianBound::TwoEigen { alpha, m: m as u32, r: 1 }.validity_cap();
            for t in [0.1, 0.2, 0.4f64.min(cap * (1.0 - 1e-9))] {
                let r = sym_det_floor(m, alpha, t, 20_000, DEFAULT_SEED)?;
                debug_assert!((r.bound - two_eigen_l(alpha, t, m as u32, 1)?).abs() < 1e-12);
                println!(
                    "{m:>2}  {alpha:.3}  {t:.3}  {:>11.8}  {:>14.8}  {:>10.8}  {}",
                    r.bound,
                    r.empirical_min,
                    r.extremal,
                    if r.holds(1e-9) { "holds" } else { "VIOLATED" }
                );
            }
        }
    }
    Ok(())
}
