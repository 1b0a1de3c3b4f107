//! Random unit normals over the whole normal space never undercut the
//! reduced minimum.

use cone_certify::critical7::sampler::full_normal_check;
use cone_certify::critical7::{case_catalog, minimize_jacobian};

fn main() -> cone_certify::Result<()> {
    let samples = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(20_000);
    for case in case_catalog() {
        let (lo, hi) = case.interval;
        let reports = [0.25, 0.5, 0.75]
            .iter()
            .map(|f| minimize_jacobian(&case, lo + f * (hi - lo)))
            .collect::<cone_certify::Result<Vec<_>>>()?;
        let s = full_normal_check(&case, &reports, samples, 7)?;
        println!(
            "{:<16} normal dim {:>2}  worst undercut {:>10.2e}  closest gap {:.2e}",
            s.case, s.normal_dim, s.worst_undercut, s.closest_gap
        );
    }
    Ok(())
}
