//! Harmonic Hadamard products.
//!
//! `f * F = h * H + conj(g * G)`: analytic parts and co-analytic parts are
//! multiplied coefficient by coefficient.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::catalog::{make_named, shear_vertical, AnalyticSeed, CatalogEntry, PolyDilatation};
use crate::error::{Error, Result};
use crate::harmonic_map::{HarmonicMap, Route};

const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone, PartialEq)]
pub struct ConvolutionResult {
    pub product: HarmonicMap,
    pub left_label: String,
    pub right_label: String,
}

pub fn hadamard(f: &HarmonicMap, other: &HarmonicMap) -> Result<ConvolutionResult> {
    let label = format!("conv({},{})", f.label(), other.label());
    let product = HarmonicMap::new(label, f.h().hadamard(other.h()), f.g().hadamard(other.g()))?;
    let product = match (f.exact(), other.exact()) {
        (Some(a), Some(b)) => {
            let laws = a
                .h
                .law()
                .hadamard(b.h.law())
                .and_then(|h| Ok((h, a.g.law().hadamard(b.g.law())?)));
            match laws {
                Ok((h, g)) => product.with_exact(&h, &g)?,
                Err(Error::NotRepresentable(_)) => product,
                Err(e) => return Err(e),
            }
        }
        _ => product,
    };
    Ok(ConvolutionResult {
        product,
        left_label: f.label().to_string(),
        right_label: other.label().to_string(),
    })
}

/// `(beta conj(phi) + phi) * f = phi*h + conj(conj(beta) (phi*g))`.
pub fn convex_combination_convolve(phi: &AnalyticSeed, beta: Complex64, f: &HarmonicMap) -> Result<HarmonicMap> {
    if beta.norm() > 1.0 + 1e-15 {
        return Err(Error::InvalidParameter(format!("|beta| = {} exceeds 1", beta.norm())));
    }
    let big_h = phi.series.hadamard(f.h());
    let big_g = phi.series.hadamard(f.g()).scale(beta.conj());
    let label = format!("combo({},{})", beta, f.label());
    let map = HarmonicMap::new(label, big_h, big_g)?;
    match (&phi.law, f.exact()) {
        (Some(law), Some(ex)) => {
            let laws = law
                .hadamard(ex.h.law())
                .and_then(|h| Ok((h, law.hadamard(ex.g.law())?.scale(beta.conj()))));
            match laws {
                Ok((h, g)) => map.with_exact(&h, &g),
                Err(Error::NotRepresentable(_)) => Ok(map),
                Err(e) => Err(e),
            }
        }
        _ => Ok(map),
    }
}

/// Closed-form dilatation of `F * f` when `f` is the vertical shear of
/// `z/(1-z)` with dilatation `w`:
///
/// ```text
/// w~ = z (w^2 + [w - w' z / 2] + w'/2) / (1 + [w - w' z / 2] + w' z^2 / 2)
/// ```
pub fn tilde_dilatation(w: &PolyDilatation, z: Complex64) -> Result<Complex64> {
    let wz = w.eval(z);
    let dw = w.derivative_at(z);
    let mid = wz - dw * z * 0.5;
    let num = wz * wz + mid + dw * 0.5;
    let den = ONE + mid + dw * z * z * 0.5;
    if den.norm() < 1e-14 {
        return Err(Error::SingularPoint { z });
    }
    Ok(z * num / den)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TildeDilatationReport {
    pub n: usize,
    pub theta: f64,
    pub grid: (usize, usize),
    pub r_max: f64,
    pub max_abs: f64,
    pub max_at: Complex64,
    /// Largest `|w~ - G'/H'|` over grid nodes with `r <= cross_check_radius`.
    pub cross_check_residual: f64,
    pub cross_check_radius: f64,
    pub passed: bool,
}

/// Upper radius of the `w~` grid.
pub const TILDE_GRID_RADIUS: f64 = 0.999;
/// Radius up to which `w~` is compared with the product-series dilatation.
pub const TILDE_CROSS_CHECK_RADIUS: f64 = 0.9;
/// Truncation order for the product series in the cross-check.
pub const TILDE_CROSS_CHECK_ORDER: usize = 512;

/// Evaluates `|w~|` on the polar grid `r_j = 0.999 j / n_r` for
/// `w = e^{i theta} z^n` and cross-checks it against the dilatation of the
/// series product `F * f`.
pub fn tilde_dilatation_check(n: usize, theta: f64, grid: (usize, usize)) -> Result<TildeDilatationReport> {
    if !(1..=2).contains(&n) {
        return Err(Error::InvalidParameter(format!("n must be 1 or 2, got {n}")));
    }
    let (n_r, n_th) = grid;
    if n_r == 0 || n_th == 0 {
        return Err(Error::InvalidParameter("empty grid".into()));
    }
    let w = PolyDilatation::rotated_power(theta, n);
    let order = TILDE_CROSS_CHECK_ORDER;
    let f = shear_vertical(&AnalyticSeed::half_plane(order)?, &w)?;
    let big_f = make_named(&CatalogEntry::F, order)?;
    let product = hadamard(&big_f, &f)?.product;

    let mut max_abs = 0.0;
    let mut max_at = Complex64::new(0.0, 0.0);
    let mut residual: f64 = 0.0;
    for j in 1..=n_r {
        let r = TILDE_GRID_RADIUS * j as f64 / n_r as f64;
        for k in 0..n_th {
            let z = Complex64::from_polar(r, 2.0 * PI * k as f64 / n_th as f64);
            let wt = tilde_dilatation(&w, z)?;
            if wt.norm() > max_abs {
                max_abs = wt.norm();
                max_at = z;
            }
            if r <= TILDE_CROSS_CHECK_RADIUS {
                let direct = product.dilatation_via(z, Route::Series)?;
                residual = residual.max((direct - wt).norm());
            }
        }
    }
    Ok(TildeDilatationReport {
        n,
        theta,
        grid,
        r_max: TILDE_GRID_RADIUS,
        max_abs,
        max_at,
        cross_check_residual: residual,
        cross_check_radius: TILDE_CROSS_CHECK_RADIUS,
        passed: max_abs < 1.0,
    })
}
