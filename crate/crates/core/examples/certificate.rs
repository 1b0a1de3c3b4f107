//! Full certification of a product, printed as the JSON certificate.
//!
//!     cargo run --example certificate -- "Gor(2,5) x Gor(2,5)"

use cone_certify::cli::certificate::certify;

fn main() {
    let text = std::env::args().nth(1).unwrap_or_else(|| "G(1,2;H) x G(1,2;H)".into());
    match certify(&text) {
        Ok(cert) => {
            println!("{}", cert.to_json());
            eprintln!(
                "{:?}: 2θ = {:?}°, normal radius {:.4}°",
                cert.verdict,
                cert.angle().map(|a| 2.0 * a.to_degrees()),
                cert.normal_radius_deg
            );
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    }
}
