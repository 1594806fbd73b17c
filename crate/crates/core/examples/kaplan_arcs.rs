// Kaplan-type arc integrals for h + eps g.

use std::f64::consts::PI;

use harmonic_maps::catalog::{make_named, CatalogEntry};
use harmonic_maps::classifiers::{epsilon_sweep, kaplan_integral_check, kaplan_scan};
use harmonic_maps::error::Result;
use num_complex::Complex64;

pub fn run_example() -> Result<()> {
    let f = make_named(&CatalogEntry::F, 64)?;
    let one = Complex64::new(1.0, 0.0);
    let full = kaplan_integral_check(&f, one, 0.9, 0.0, 2.0 * PI)?;
    println!("full period at r = 0.9: {full:.12} (2 pi = {:.12})", 2.0 * PI);

    let worst = epsilon_sweep()
        .into_iter()
        .map(|eps| kaplan_scan(&f, eps, 0.95, 64))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .min_by(|a, b| a.min_arc_value.total_cmp(&b.min_arc_value))
        .expect("sweep is non-empty");
    println!(
        "worst arc over 16 eps at r = 0.95: {:.6} on [{:.3}, {:.3}] for eps = {:.3} (bound -pi)",
        worst.min_arc_value, worst.min_arc.0, worst.min_arc.1, worst.epsilon
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
