// Harmonic Hadamard products and the dilatation of F * f.

use std::f64::consts::PI;

use harmonic_maps::catalog::{make_named, CatalogEntry};
use harmonic_maps::classifiers::coefficient_bounds;
use harmonic_maps::convolution::{hadamard, tilde_dilatation_check};
use harmonic_maps::error::Result;
use num_complex::Complex64;

pub fn run_example() -> Result<()> {
    let l = make_named(&CatalogEntry::L, 64)?;
    let ll = hadamard(&l, &l)?.product;
    println!("L*L: a_5 = {}, b_5 = {}", ll.h().coeff(5).re, ll.g().coeff(5).re);

    let big_f = make_named(&CatalogEntry::F, 64)?;
    let ff = hadamard(&big_f, &big_f)?.product;
    let b = coefficient_bounds(&ff, Complex64::new(1.0, 0.0));
    println!("F*F coefficient bounds hold: {} (first violation at n = {:?})", b.passed, b.first_violation);

    for n in [1, 2] {
        let rep = tilde_dilatation_check(n, PI / 3.0, (32, 128))?;
        println!(
            "w = e^(i pi/3) z^{n}: max |w~| = {:.6} at {:.3}, cross-check {:.1e}",
            rep.max_abs, rep.max_at, rep.cross_check_residual
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
