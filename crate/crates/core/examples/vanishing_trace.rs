//! The compactified profile `u = r^-k` along θ for one bound, as CSV.
//!
//!     cargo run --example vanishing_trace -- 9 8

use cone_certify::lawlor::{integrate_vn, JacobianBound};

fn main() -> cone_certify::Result<()> {
    let mut args = std::env::args().skip(1);
    let k: u32 = args.next().and_then(|s| s.parse().ok()).unwrap_or(9);
    let alpha_sq: f64 = args.next().and_then(|s| s.parse().ok()).unwrap_or((k - 1) as f64);
    let bound = JacobianBound::GenericF { alpha: alpha_sq.sqrt(), m: k - 1 };
    let result = integrate_vn(k, &bound)?;
    println!("theta_deg,u");
    for (theta, u) in &result.trace {
        println!("{:.4},{u:.9}", theta.to_degrees());
    }
    eprintln!("{:?}", result.status);
    Ok(())
}
