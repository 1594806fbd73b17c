// A sense-preserving map that is not univalent: two points with the same image.

use harmonic_maps::catalog::{make_named, CatalogEntry};
use harmonic_maps::error::Result;
use num_complex::Complex64;

pub fn run_example() -> Result<()> {
    let f = make_named(&CatalogEntry::Example21, 16)?;
    let z0 = Complex64::new(0.75, 3f64.sqrt() / 4.0);
    println!("f(z0) = {}   f(conj z0) = {}", f.evaluate_f(z0)?, f.evaluate_f(z0.conj())?);

    let sp = f.sense_preserving_check(0.95, (64, 256))?;
    println!("Jacobian > 0 on |z| <= 0.95: {} (min {:.3e})", sp.passed, sp.min_jacobian);

    let mut samples = harmonic_maps::harmonic_map::sunflower(0.95, 500);
    samples.extend([z0, z0.conj()]);
    let inj = f.injectivity_check(&samples, 0.05)?;
    println!("collision found: {} (closest images {:.1e} apart)", inj.collision, inj.min_image_distance);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
