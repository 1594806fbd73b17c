// Named harmonic maps, dilatations and a shear construction.

use harmonic_maps::catalog::{make_named, shear_horizontal, AnalyticSeed, CatalogEntry, FunctionExpr, PolyDilatation};
use harmonic_maps::error::Result;
use num_complex::Complex64;

pub fn run_example() -> Result<()> {
    let big_f = make_named(&CatalogEntry::F, 64)?;
    for r in [0.5, 0.9, 0.99] {
        let z = Complex64::new(r, 0.0);
        // on the real axis F(r) = r/(1-r)^2
        println!("F({r}) = {:.6}   r/(1-r)^2 = {:.6}", big_f.evaluate_f(z)?.re, r / (1.0 - r).powi(2));
    }
    let z = Complex64::from_polar(0.8, 1.0);
    println!("dilatation of F at {z:.3} = {:.6} (equals z)", big_f.dilatation(z)?);

    // F is the horizontal shear of z/(1-z) with w = z
    let sheared = shear_horizontal(&AnalyticSeed::half_plane(64)?, &PolyDilatation::monomial(Complex64::new(1.0, 0.0), 1))?;
    println!("|shear - F| on coefficients: {:e}", sheared.h().max_abs_diff(big_f.h()).max(sheared.g().max_abs_diff(big_f.g())));

    let expr: FunctionExpr = "conv(f_alpha:0,1,L)".parse()?;
    let prod = expr.build(32)?;
    println!("{expr}: a_3 = {}, b_3 = {}", prod.h().coeff(3), prod.g().coeff(3));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
