//! Runs every consistency check for one dimension.
//!
//! ```text
//! cargo run --release --example verify_suite -- 3
//! ```

use std::process::ExitCode;

use toric_ccc::verify::{self, DEFAULT_SEED};

fn main() -> ExitCode {
    let n: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(2);
    let r = verify::all(n, DEFAULT_SEED);
    println!("{r}");
    if r.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
