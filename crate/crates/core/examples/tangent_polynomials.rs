// Sign polynomials p, q of the tangent and radius-vector turning of F.

use harmonic_maps::error::Result;
use harmonic_maps::radius_analysis::{identity_check_tangent, p_min_over_u, q_local_min_u, q_min_over_u, r0_closed_form};

pub fn run_example() -> Result<()> {
    let rc = 2.0 - 3f64.sqrt();
    let r0 = r0_closed_form();
    for (name, r) in [("rc - 1e-3", rc - 1e-3), ("rc + 1e-3", rc + 1e-3)] {
        println!("min_u p({name}, u) = {:+.3e}", p_min_over_u(r, 2001));
    }
    for (name, r) in [("r0 - 1e-3", r0 - 1e-3), ("r0 + 1e-3", r0 + 1e-3)] {
        println!("min_u q({name}, u) = {:+.3e}", q_min_over_u(r, 2001));
    }
    println!("local minimum of q(0.7, .) at u = {:.6}", q_local_min_u(0.7)?);

    let res = identity_check_tangent(0.2, 0.3)?;
    println!("tangent identity residuals at (0.2, 0.3): psi {:.1e}, phi {:.1e}", res.psi, res.phi);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
