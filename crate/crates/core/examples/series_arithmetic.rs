// Truncated power series: generators, products and Hadamard products.

use harmonic_maps::error::Result;
use harmonic_maps::series::{Generator, TruncatedSeries};
use num_complex::Complex64;

pub fn run_example() -> Result<()> {
    let l = TruncatedSeries::generator(Generator::HalfPlaneL, 16)?;
    let k = TruncatedSeries::generator(Generator::KoebeK, 16)?;

    // z/(1-z) squared has coefficients n - 1
    let sq = l.mul(&l);
    println!("l^2 coefficients: {:?}", (0..6).map(|n| sq.coeff(n).re).collect::<Vec<_>>());

    // z l' = k
    let zl = l.differentiate(1)?.shift_up();
    println!("|z l' - k| = {:e}", zl.max_abs_diff(&k.truncate(15)?));

    let lk = l.hadamard(&k);
    let z = Complex64::new(0.3, 0.2);
    println!("(l * k)(z) = {}  k(z) = {}", lk.evaluate(z)?, k.evaluate(z)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
