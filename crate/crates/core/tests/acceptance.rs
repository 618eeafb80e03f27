//! Runs every acceptance criterion and prints one line per criterion.

use std::process::ExitCode;

use zeta_kernels::acceptance::run_all;

fn main() -> ExitCode {
    let reports = run_all();
    for report in &reports {
        println!("{report}");
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    println!("acceptance: {} passed, {failed} failed", reports.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
