//! The Plücker image of an oriented 2-plane moved by a rotation agrees with
//! the rotation acting on the exterior square.

use cone_certify::matrixlab::oracles::{plucker_orbit_check, DEFAULT_SEED};
use cone_certify::matrixlab::exterior::ExteriorPower;

fn main() -> cone_certify::Result<()> {
    let ext = ExteriorPower::new(4, 2);
    println!("Λ²ℝ⁴ has {} coordinates: {:?}", ext.dim(), ext.index_sets);
    for n in [2usize, 3] {
        let dev = plucker_orbit_check(n, 100, DEFAULT_SEED)?;
        println!("n = {n}: max coordinate deviation over 100 rotations {dev:.2e}");
    }
    Ok(())
}
