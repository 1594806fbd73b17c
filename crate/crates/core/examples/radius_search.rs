// Radii of convexity and starlikeness of F by bisection.

use harmonic_maps::catalog::{make_named, CatalogEntry};
use harmonic_maps::error::Result;
use harmonic_maps::radius_analysis::{r0_closed_form, radius_search, solve_special_radii, RadiusKind};

pub fn run_example() -> Result<()> {
    let f = make_named(&CatalogEntry::F, 64)?;
    let convex = radius_search(&f, RadiusKind::Convexity, 1e-6, 4096)?;
    println!("convexity:    [{:.9}, {:.9}]  2 - sqrt 3 = {:.9}", convex.r_lo, convex.r_hi, 2.0 - 3f64.sqrt());
    let star = radius_search(&f, RadiusKind::Starlikeness, 1e-6, 4096)?;
    println!("starlikeness: [{:.9}, {:.9}]  r0 = {:.9}", star.r_lo, star.r_hi, r0_closed_form());

    let s = solve_special_radii()?;
    println!("roots: r_convex = {:.15}, r_star = {:.15}, 4 sqrt 2 - 5 = {:.15}", s.r_convex, s.r_star, s.r_close_to_convex_star);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
