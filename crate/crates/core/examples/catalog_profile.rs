//! Factor constants and the composed minimal product for a few products.
//!
//!     cargo run --example catalog_profile -- "G(2,4;C) x S(3)"

use cone_certify::catalog::{factor_props, parse_product};
use cone_certify::product::compose;

fn main() -> cone_certify::Result<()> {
    let inputs: Vec<String> = std::env::args().skip(1).collect();
    let inputs = if inputs.is_empty() {
        vec![
            "G(1,3;R) x G(1,3;R) x G(1,3;R)".to_string(),
            "G(1,2;H) x G(1,2;H)".to_string(),
            "S(2) x S(2) x G(1,3;R)".to_string(),
            "Gor(2,4) x Gor(2,4)".to_string(),
        ]
    } else {
        inputs
    };
    for text in inputs {
        let specs = parse_product(&text)?;
        println!("{text}");
        for spec in &specs {
            let p = factor_props(*spec)?;
            println!(
                "  {:<10} dim {:>2}  d {}  r² {:<5} ambient {:>3}  α² {}",
                spec.to_string(),
                p.dim,
                p.d,
                p.radius_sq.to_string(),
                p.ambient,
                p.alpha_sq
            );
        }
        let profile = compose(&specs)?;
        let lambdas: Vec<String> = profile.lambdas.iter().map(|l| format!("{l:.4}")).collect();
        println!(
            "  dim M {}  dim C {}  α² {}  λ [{}]  normal radius {:.4}° (cos {})\n",
            profile.dim_m,
            profile.dim_c,
            profile.alpha_sq,
            lambdas.join(", "),
            profile.normal_radius.to_degrees(),
            profile.normal_cos
        );
    }
    Ok(())
}
