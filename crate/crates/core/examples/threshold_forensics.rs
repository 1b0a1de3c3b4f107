//! Boundary and interior analysis of the reduced Jacobians near the
//! thresholds where the minimizer changes.

use cone_certify::critical7::forensics::boundary_threshold_check;
use cone_certify::critical7::case_catalog;

fn main() {
    for case in case_catalog() {
        let report = boundary_threshold_check(&case);
        println!("{} (family {})", report.case, report.family);
        for c in &report.checks {
            println!("  [{}] {}: {}", if c.pass { "ok" } else { "!!" }, c.name, c.detail);
        }
        for p in &report.stationary {
            println!(
                "  stationary {:?} at t = {:.3}: {:.6} vs closed form {:.6}",
                p.kind, p.t, p.value, p.closed_form
            );
        }
    }
}
