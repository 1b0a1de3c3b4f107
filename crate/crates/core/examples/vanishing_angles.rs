//! Vanishing angles from the generic and two-eigenvalue Jacobian bounds,
//! plus the scaled bound used for large cones.

use cone_certify::lawlor::{theta1, theta2, theta2_scaled_bound, VanishingStatus};

fn main() -> cone_certify::Result<()> {
    println!(" k   α²    θ₁ (deg)   θ₂ (deg)");
    for k in 8..=12u32 {
        let alpha = ((k - 1) as f64).sqrt();
        let t1 = theta1(k, alpha)?;
        let t2 = theta2(k, alpha)?;
        println!(
            "{k:>2}  {:>3}   {:>8}   {:>8}",
            k - 1,
            fmt(&t1.status),
            fmt(&t2.status)
        );
    }
    println!();
    println!(" k   tan bound   2/k");
    for k in [13u32, 20, 40, 60] {
        let b = theta2_scaled_bound(k, ((k - 1) as f64).sqrt())?;
        println!("{k:>2}   {:.6}    {:.6}  {}", b.tan_bound, 2.0 / k as f64, if b.below_two_over_k { "ok" } else { "above" });
    }
    Ok(())
}

fn fmt(s: &VanishingStatus) -> String {
    match s {
        VanishingStatus::Vanishes { angle } => format!("{:.4}", angle.to_degrees()),
        VanishingStatus::NoVanishingAngle { reason, .. } => format!("{reason:?}"),
    }
}
