//! Builds the projector embedding of a Grassmannian, checks its radius and
//! prints the spectrum of the shape operator in a few normal directions.
//!
//!     cargo run --example shape_operator -- "G(2,4;C)"

use cone_certify::catalog::FactorSpec;
use cone_certify::matrixlab::oracles::{radius_check, sup_alpha_sq, DEFAULT_SEED};
use cone_certify::matrixlab::Embedding;

fn main() -> cone_certify::Result<()> {
    let text = std::env::args().nth(1).unwrap_or_else(|| "G(2,4;C)".into());
    let spec: FactorSpec = text.parse()?;
    let emb = Embedding::new(spec)?;
    println!("{spec}: dim {}, ambient {}", emb.dim(), emb.ambient_dim());

    let radius = radius_check(spec)?;
    println!("radius² {} (catalog {})", radius.radius_sq, radius.catalog);

    for (i, xi) in emb.normals.iter().take(3).enumerate() {
        let h = emb.shape_operator(xi)?;
        let mut ev: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        let ev: Vec<String> = ev.iter().map(|x| format!("{x:+.4}")).collect();
        println!("normal {i}: tr {:+.1e}  |H|² {:.6}  spectrum {}", h.trace(), h.norm_squared(), ev.join(" "));
    }

    let alpha = sup_alpha_sq(spec, 500, DEFAULT_SEED)?;
    println!(
        "sup |H|²: exact {:.9}, sampled {:.9}, catalog {:.9}",
        alpha.exact_sup, alpha.sampled_sup, alpha.catalog
    );
    Ok(())
}
