// The coefficient verification suite as a report.

use harmonic_maps::error::Result;
use harmonic_maps::verify::{run_suite, Suite};

pub fn run_example() -> Result<()> {
    let report = run_suite(Suite::Coefficients, 64)?;
    print!("{}", report.summary());
    println!("suite passed: {}", report.passed);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
