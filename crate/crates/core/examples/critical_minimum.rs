//! Minimizes the Jacobian of one dimension-7 case over its normal domain and
//! compares with the closed form.
//!
//!     cargo run --example critical_minimum -- "G(1,4;R) x G(1,4;R)" 0.3

use cone_certify::critical7::{case_catalog, find_case, minimize_jacobian};

fn main() -> cone_certify::Result<()> {
    let mut args = std::env::args().skip(1);
    let query = args.next();
    let t: f64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(0.25);
    let cases = match query {
        Some(q) => vec![find_case(&q).unwrap_or_else(|| {
            eprintln!("no dimension-7 case matches `{q}`");
            std::process::exit(2)
        })],
        None => case_catalog(),
    };
    println!("{:<16} {:>10} {:>14} {:>14} {:>10}  spectrum", "case", "form", "numeric", "closed form", "gap");
    for case in cases {
        let r = minimize_jacobian(&case, t)?;
        let spectrum: Vec<String> = r.spectrum.iter().map(|x| format!("{x:+.3}")).collect();
        println!(
            "{:<16} {:>10} {:>14.10} {:>14.10} {:>10.2e}  {}",
            case.name,
            format!("{:?}", case.claimed),
            r.numeric_min,
            r.closed_form,
            r.gap,
            spectrum.join(" ")
        );
    }
    Ok(())
}
