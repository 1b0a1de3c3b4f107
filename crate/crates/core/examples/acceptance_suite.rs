//! Runs one acceptance criterion, or all of them, at reduced sample sizes.
//!
//!     cargo run --release --example acceptance_suite -- 3

use cone_certify::cli::suite::{
    criterion_critical_cases, criterion_det_floor, criterion_embedding_oracle, criterion_end_to_end,
    criterion_normal_radii, criterion_plucker, criterion_robustness, criterion_scaling,
    criterion_thresholds, criterion_vanishing_angles,
};

fn main() {
    let only: Option<u8> = std::env::args().nth(1).and_then(|s| s.parse().ok());
    for n in 1..=10u8 {
        if only.is_some_and(|o| o != n) {
            continue;
        }
        let report = match n {
            1 => criterion_vanishing_angles(),
            2 => criterion_normal_radii(),
            3 => criterion_critical_cases(5_000),
            4 => criterion_thresholds(),
            5 => criterion_det_floor(5_000),
            6 => criterion_embedding_oracle(200),
            7 => criterion_scaling(),
            8 => criterion_end_to_end(),
            9 => criterion_plucker(20),
            _ => criterion_robustness(),
        };
        println!("{n:>2}: {}", report.summary());
        for row in &report.rows {
            println!("      {} {}: {}", if row.passed { "ok" } else { "!!" }, row.label, row.detail);
        }
    }
}
