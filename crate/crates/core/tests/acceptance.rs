//! Runs the ten acceptance criteria and prints one line per criterion.
//!
//! The slow cases (F(8) tables, F(7;1,2,4) Todd genera) run by default;
//! set `FLAGCHERN_SLOW=0` to skip them.

use std::process::ExitCode;

use flagchern::chern::Oracle;
use flagchern::suite::{self, SuiteOptions};

fn main() -> ExitCode {
    let slow = std::env::var("FLAGCHERN_SLOW").map_or(true, |v| v != "0");
    let jobs = std::thread::available_parallelism().map_or(1, |n| n.get());
    let opts = SuiteOptions { oracle: Oracle::Both, jobs, slow };
    println!("\nrunning acceptance criteria (slow cases {})", if slow { "included" } else { "skipped" });
    let report = suite::run(&opts, &[]);
    for r in &report.results {
        println!("{}", r.line());
        if !r.passed || std::env::var_os("FLAGCHERN_VERBOSE").is_some() {
            for d in &r.details {
                println!("    {d}");
            }
        }
    }
    let passed = report.results.iter().filter(|r| r.passed).count();
    println!("acceptance: {passed}/{} criteria passed\n", report.results.len());
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
