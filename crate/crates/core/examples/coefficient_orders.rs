// Starlike and convex orders from coefficient sums.

use harmonic_maps::classifiers::{lemma13_orders, theorem2_classify, CoefficientPower};
use harmonic_maps::error::Result;
use harmonic_maps::harmonic_map::HarmonicMap;
use harmonic_maps::series::TruncatedSeries;
use num_complex::Complex64;

pub fn run_example() -> Result<()> {
    let h = TruncatedSeries::from_real(&[0.0, 1.0, 0.25])?;
    let f = HarmonicMap::new("z + z^2/4", h.clone(), TruncatedSeries::zero(2)?)?;
    let (first, second) = lemma13_orders(&f)?;
    println!("{}: value {} -> starlike order {:?}", first.condition_name, first.condition_value, first.order_starlike());
    println!("{}: value {} -> convex order {:?}", second.condition_name, second.condition_value, second.order_convex());

    for a in [0.0, 1.0 / 3.0, 0.9] {
        let rep = theorem2_classify(&h, Complex64::new(a, 0.0), CoefficientPower::Two);
        println!("|alpha| = {a:.3}: close-to-convex {} starlike order {:?}", rep.passed, rep.order_starlike());
    }

    let h3 = TruncatedSeries::from_real(&[0.0, 1.0, 0.125])?;
    let rep = theorem2_classify(&h3, Complex64::new(0.1, 0.0), CoefficientPower::Three);
    println!("{}", rep.to_json());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
