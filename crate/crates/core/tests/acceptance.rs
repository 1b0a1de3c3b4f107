//! One line per acceptance criterion, in order. Failing rows are listed under
//! their criterion and the process exits non-zero if any criterion is red.

use std::process::ExitCode;
use std::time::Instant;

use cone_certify::cli::suite::criterion;

fn main() -> ExitCode {
    let mut red = Vec::new();
    for n in 1..=10u8 {
        let start = Instant::now();
        let report = criterion(n).expect("criteria are numbered 1 through 10");
        println!("criterion {n:>2}: {}  [{:.1}s]", report.summary(), start.elapsed().as_secs_f64());
        for row in report.failures() {
            println!("    red: {}: {}", row.label, row.detail);
        }
        if !report.passed {
            red.push(n);
        }
    }
    if red.is_empty() {
        println!("acceptance: all 10 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: red criteria {red:?}");
        ExitCode::FAILURE
    }
}
