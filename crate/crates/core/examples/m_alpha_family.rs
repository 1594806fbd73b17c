// Members of M(alpha): coefficient relation, curvature condition, bounds and area.

use std::f64::consts::PI;

use harmonic_maps::catalog::{make_named, CatalogEntry};
use harmonic_maps::classifiers::{area_series, jacobian_area, m_alpha_check, thm31_bounds_check};
use harmonic_maps::closed_form::CoefficientLaw;
use harmonic_maps::error::Result;
use num_complex::Complex64;

pub fn run_example() -> Result<()> {
    let alpha = Complex64::new(0.0, 1.0);
    let f = make_named(&CatalogEntry::FAlpha(alpha), 64)?;
    let rep = m_alpha_check(&f, alpha, 0.99, (32, 128))?;
    println!("f_i: relation residual {:e}, min Re(1+zh''/h') = {:.4}", rep.max_relation_residual, rep.min_curvature);

    // any h with Re(1 + z h''/h') > -1/2 seeds a member
    let seed = CoefficientLaw::half_plane();
    let beta = Complex64::new(0.3, -0.4);
    let m = make_named(&CatalogEntry::MAlphaMember { h: seed, alpha: beta }, 64)?;
    let b = thm31_bounds_check(&m, beta, 2000)?;
    println!("{}: coefficient bounds {} growth slack {:.3e}", m.label(), b.coefficients.passed, b.min_growth_slack);

    let g = make_named(&CatalogEntry::GAlpha(Complex64::new(0.5, 0.0)), 16)?;
    let series_area = area_series(&g, Complex64::new(0.5, 0.0));
    let quad_area = jacobian_area(&g, 1.0 - 1e-12, 200, 200)?;
    println!("area of g_0.5: series {series_area:.10}  quadrature {quad_area:.10}  pi(1-1/8) = {:.10}", PI * 0.875);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
