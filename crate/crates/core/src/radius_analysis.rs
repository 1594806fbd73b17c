//! Radii of convexity and starlikeness.
//!
//! A circle image is convex when its tangent direction `arg(d/dtheta f)`
//! turns monotonically, and starlike about 0 when `arg f` does. Both tests
//! sample the turning rate on a theta grid, refine the worst local minima
//! and require the total turning over one period to be `2 pi`.
//!
//! The closed forms at the end describe `F = f_1` on `|z| = r`, with
//! `u = cos(theta)`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::harmonic_map::{HarmonicMap, Route};
use crate::numeric;
use crate::tolerance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RadiusKind {
    Convexity,
    Starlikeness,
}

impl fmt::Display for RadiusKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RadiusKind::Convexity => "convexity",
            RadiusKind::Starlikeness => "starlikeness",
        })
    }
}

impl FromStr for RadiusKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "convex" | "convexity" => Ok(RadiusKind::Convexity),
            "starlike" | "starlikeness" => Ok(RadiusKind::Starlikeness),
            _ => Err(Error::Unknown {
                what: "radius kind",
                name: s.to_string(),
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadiusTest {
    pub kind: RadiusKind,
    pub r: f64,
    pub n_theta: usize,
    /// Smallest turning rate found (grid plus refinement).
    pub min_value: f64,
    pub min_theta: f64,
    /// Integral of the turning rate over `[0, 2 pi]`.
    pub total_turning: f64,
    pub passed: bool,
}

/// Local grid minima refined by golden-section search.
const REFINED_MINIMA: usize = 8;
const TURNING_QUAD_TOL: f64 = 1e-7;

/// Turning rate of the tangent (`Im(f_tt / f_t)`) or of the radius vector (`Im(f_t / f)`).
pub fn turning_rate(f: &HarmonicMap, kind: RadiusKind, r: f64, theta: f64) -> Result<f64> {
    let (d1, d2) = f.angular_derivatives_via(r, theta, Route::ExactPreferred)?;
    let z = Complex64::from_polar(r, theta);
    match kind {
        RadiusKind::Convexity => {
            if d1.norm() < 1e-14 {
                return Err(Error::SingularPoint { z });
            }
            Ok((d2 / d1).im)
        }
        RadiusKind::Starlikeness => {
            let value = f.evaluate_f_via(z, Route::ExactPreferred)?;
            if value.norm() < 1e-14 {
                return Err(Error::SingularPoint { z });
            }
            Ok((d1 / value).im)
        }
    }
}

pub fn convex_test_at_radius(f: &HarmonicMap, r: f64, n_theta: usize) -> Result<RadiusTest> {
    test_at_radius(f, RadiusKind::Convexity, r, n_theta)
}

pub fn starlike_test_at_radius(f: &HarmonicMap, r: f64, n_theta: usize) -> Result<RadiusTest> {
    test_at_radius(f, RadiusKind::Starlikeness, r, n_theta)
}

pub fn test_at_radius(f: &HarmonicMap, kind: RadiusKind, r: f64, n_theta: usize) -> Result<RadiusTest> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::InvalidParameter(format!("radius {r} not in (0,1)")));
    }
    if n_theta < 8 {
        return Err(Error::InvalidParameter(format!("need at least 8 angles, got {n_theta}")));
    }
    let step = 2.0 * PI / n_theta as f64;
    let values = (0..n_theta)
        .map(|k| turning_rate(f, kind, r, k as f64 * step))
        .collect::<Result<Vec<_>>>()?;

    let mut minima: Vec<usize> = (0..n_theta)
        .filter(|&k| {
            let prev = values[(k + n_theta - 1) % n_theta];
            let next = values[(k + 1) % n_theta];
            values[k] <= prev && values[k] <= next
        })
        .collect();
    minima.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    minima.truncate(REFINED_MINIMA);

    let (mut min_theta, mut min_value) = (0.0, values[0]);
    for (k, &v) in values.iter().enumerate() {
        if v < min_value {
            min_value = v;
            min_theta = k as f64 * step;
        }
    }
    for &k in &minima {
        let centre = k as f64 * step;
        let mut failure = None;
        let (t, v) = numeric::golden_min(
            |t| {
                turning_rate(f, kind, r, t).unwrap_or_else(|e| {
                    failure.get_or_insert(e);
                    f64::INFINITY
                })
            },
            centre - step,
            centre + step,
            1e-12,
        );
        if let Some(e) = failure {
            return Err(e);
        }
        if v < min_value {
            min_value = v;
            min_theta = t.rem_euclid(2.0 * PI);
        }
    }

    let total_turning = total_turning(f, kind, r)?;
    let passed =
        min_value >= -tolerance::ANGULAR_MIN && (total_turning - 2.0 * PI).abs() <= tolerance::TOTAL_TURNING;
    Ok(RadiusTest {
        kind,
        r,
        n_theta,
        min_value,
        min_theta,
        total_turning,
        passed,
    })
}

/// `int_0^{2 pi}` of the turning rate.
pub fn total_turning(f: &HarmonicMap, kind: RadiusKind, r: f64) -> Result<f64> {
    let mut failure = None;
    let q = numeric::integrate(
        |t| {
            turning_rate(f, kind, r, t).unwrap_or_else(|e| {
                failure.get_or_insert(e);
                0.0
            })
        },
        0.0,
        2.0 * PI,
        TURNING_QUAD_TOL,
    )?;
    match failure {
        Some(e) => Err(e),
        None => Ok(q.value),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadiusResult {
    pub kind: RadiusKind,
    /// Largest radius certified to pass.
    pub r_lo: f64,
    /// Smallest radius certified to fail; `1.0` (untested) when the search reached its upper limit.
    pub r_hi: f64,
    pub grid_theta: usize,
    pub tol: f64,
    /// Every scanned radius up to the search limit passed.
    pub reached_upper_limit: bool,
}

impl RadiusResult {
    pub fn contains(&self, r: f64) -> bool {
        self.r_lo <= r && r <= self.r_hi
    }

    pub fn width(&self) -> f64 {
        self.r_hi - self.r_lo
    }
}

/// Radii of the monotonicity scan that precedes bisection.
pub const MONOTONICITY_SCAN: usize = 50;

/// Bisects for the radius where the test switches from pass to fail.
///
/// Assumes the property is monotone in `r`; a 50-point scan over
/// `[0.01, 0.999]` aborts the search if a pass follows a fail.
pub fn radius_search(f: &HarmonicMap, kind: RadiusKind, tol: f64, n_theta: usize) -> Result<RadiusResult> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!("tolerance must be positive, got {tol}")));
    }
    let passes = |r: f64| test_at_radius(f, kind, r, n_theta).map(|t| t.passed);
    let start = tolerance::RADIUS_SEARCH_START;
    let limit = tolerance::RADIUS_SEARCH_LIMIT;
    if !passes(start)? {
        return Err(Error::RadiusSearch(format!(
            "{kind} test fails already at r = {start}; no inner radius"
        )));
    }

    let scan: Vec<f64> = (0..MONOTONICITY_SCAN)
        .map(|i| start + (limit - start) * i as f64 / (MONOTONICITY_SCAN - 1) as f64)
        .collect();
    let outcomes = scan.iter().map(|&r| passes(r)).collect::<Result<Vec<_>>>()?;
    let first_fail = outcomes.iter().position(|&p| !p);
    let Some(first_fail) = first_fail else {
        return Ok(RadiusResult {
            kind,
            r_lo: limit,
            r_hi: 1.0,
            grid_theta: n_theta,
            tol,
            reached_upper_limit: true,
        });
    };
    if let Some(later) = outcomes[first_fail..].iter().position(|&p| p) {
        return Err(Error::RadiusSearch(format!(
            "non-monotone {kind}: fails at r = {} but passes at r = {}",
            scan[first_fail],
            scan[first_fail + later]
        )));
    }

    let (mut lo, mut hi) = (scan[first_fail - 1], scan[first_fail]);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if passes(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(RadiusResult {
        kind,
        r_lo: lo,
        r_hi: hi,
        grid_theta: n_theta,
        tol,
        reached_upper_limit: false,
    })
}

/// Real and imaginary parts of `F` and of `d/dtheta F` on `|z| = r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ClosedFormExpr {
    /// `Re d/dtheta F`
    A,
    /// `Im d/dtheta F`
    B,
    /// `Re F`
    C,
    /// `Im F`
    D,
}

pub fn closed_form_f(expr: ClosedFormExpr, r: f64, theta: f64) -> f64 {
    let one_minus_z = 1.0 - 2.0 * r * theta.cos() + r * r;
    let r2 = r * r;
    match expr {
        ClosedFormExpr::A => {
            -r * ((1.0 - 6.0 * r2 + r2 * r2) * theta.sin() + r * (1.0 + r2) * (2.0 * theta).sin())
                / one_minus_z.powi(3)
        }
        ClosedFormExpr::B => r * ((1.0 + r2) * theta.cos() - 2.0 * r) / one_minus_z.powi(2),
        ClosedFormExpr::C => r * ((1.0 + r2) * theta.cos() - 2.0 * r) / one_minus_z.powi(2),
        ClosedFormExpr::D => r * theta.sin() / one_minus_z,
    }
}

/// `p(r,u)`: sign of the tangent-turning rate of `F`.
pub fn polynomial_p(r: f64, u: f64) -> f64 {
    let r2 = r * r;
    1.0 + 4.0 * r2 - 26.0 * r2 * r2 + 4.0 * r2.powi(3) + r2.powi(4)
        - 6.0 * u * r * (1.0 + r2) * (1.0 + r2 * r2 - 6.0 * r2)
        - 12.0 * r2 * u * u * (1.0 + r2).powi(2)
        + 4.0 * r * u.powi(3) * (1.0 + r2) * (1.0 + r2 * r2)
}

/// `q(r,u)`: sign of the radius-vector turning rate of `F`.
pub fn polynomial_q(r: f64, u: f64) -> f64 {
    let r2 = r * r;
    (1.0 - r2).powi(2) - 2.0 * r * u * (1.0 + r2) + 8.0 * r2 * u * u - 2.0 * r * (1.0 + r2) * u.powi(3)
}

pub fn dq_du(r: f64, u: f64) -> f64 {
    let r2 = r * r;
    -2.0 * r * (1.0 + r2) + 16.0 * r2 * u - 6.0 * r * (1.0 + r2) * u * u
}

/// Local minimum of `u -> q(r,u)`; real only for `r >= 1/sqrt(3)`.
pub fn q_local_min_u(r: f64) -> Result<f64> {
    let disc = -3.0 + 10.0 * r * r - 3.0 * r.powi(4);
    if disc < 0.0 {
        return Err(Error::InvalidParameter(format!("q has no real critical point at r = {r}")));
    }
    Ok((4.0 * r - disc.sqrt()) / (3.0 * (1.0 + r * r)))
}

/// `27 (1+r^2)^2 q(r, u*)` on `[1/sqrt(3), 1]`.
pub fn q_at_local_min_scaled(r: f64) -> f64 {
    let r2 = r * r;
    let disc = (-3.0 + 10.0 * r2 - 3.0 * r2 * r2).max(0.0);
    27.0 - 72.0 * r2 + 58.0 * r2 * r2 - 72.0 * r2.powi(3)
        + 27.0 * r2.powi(4)
        + 4.0 * r * (3.0 - 10.0 * r2 + 3.0 * r2 * r2) * disc.sqrt()
}

/// `min_u p(r,u)` on `n_u` equally spaced points of `[-1, 1]`.
pub fn p_min_over_u(r: f64, n_u: usize) -> f64 {
    min_over_u(|u| polynomial_p(r, u), n_u)
}

pub fn q_min_over_u(r: f64, n_u: usize) -> f64 {
    min_over_u(|u| polynomial_q(r, u), n_u)
}

fn min_over_u(f: impl Fn(f64) -> f64, n_u: usize) -> f64 {
    let n = n_u.max(2);
    (0..n)
        .map(|j| f(-1.0 + 2.0 * j as f64 / (n - 1) as f64))
        .fold(f64::INFINITY, f64::min)
}

pub fn tan_psi(r: f64, theta: f64) -> f64 {
    closed_form_f(ClosedFormExpr::B, r, theta) / closed_form_f(ClosedFormExpr::A, r, theta)
}

pub fn tan_phi(r: f64, theta: f64) -> f64 {
    closed_form_f(ClosedFormExpr::D, r, theta) / closed_form_f(ClosedFormExpr::C, r, theta)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TangentResiduals {
    pub r: f64,
    pub u: f64,
    /// `|[(1-6r^2+r^4) + 2r(1+r^2)u]^2 (1-u^2) d/dtheta tan(Psi) - p(r,u)|`
    pub psi: f64,
    /// `|[(1+r^2)u - 2r]^2 d/dtheta tan(Phi) - q(r,u)|`
    pub phi: f64,
}

impl TangentResiduals {
    pub fn passed(&self) -> bool {
        self.psi < tolerance::TANGENT_IDENTITY && self.phi < tolerance::TANGENT_IDENTITY
    }
}

/// Pole factors closer to zero than this are treated as poles.
const POLE_GUARD: f64 = 1e-6;

/// Richardson-extrapolated 5-point central difference.
fn derivative(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    let five = |h: f64| (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h);
    (16.0 * five(h / 2.0) - five(h)) / 15.0
}

/// Both sides of the tangent identities for `tan(Psi)` and `tan(Phi)` at
/// `theta = arccos(u)`, the left sides by numerical differentiation of the
/// closed forms.
pub fn identity_check_tangent(r: f64, u: f64) -> Result<TangentResiduals> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::InvalidParameter(format!("radius {r} not in (0,1)")));
    }
    if !(u > -1.0 && u < 1.0) {
        return Err(Error::InvalidParameter(format!("u = {u} must lie strictly inside (-1, 1)")));
    }
    let r2 = r * r;
    let theta = u.acos();
    let z = Complex64::from_polar(r, theta);

    let psi_factor = (1.0 - 6.0 * r2 + r2 * r2) + 2.0 * r * (1.0 + r2) * u;
    let phi_factor = (1.0 + r2) * u - 2.0 * r;
    if psi_factor.abs() < POLE_GUARD || phi_factor.abs() < POLE_GUARD {
        return Err(Error::SingularPoint { z });
    }
    // distance (in u, hence a lower bound in theta) to the pole of each tangent
    let psi_dist = (psi_factor.abs() / (2.0 * r * (1.0 + r2))).min(1.0 - u.abs());
    let phi_dist = phi_factor.abs() / (1.0 + r2);
    let step = |dist: f64| 1e-3 * dist.min(1.0);

    let d_psi = derivative(|t| tan_psi(r, t), theta, step(psi_dist));
    let d_phi = derivative(|t| tan_phi(r, t), theta, step(phi_dist));
    let lhs_psi = psi_factor * psi_factor * (1.0 - u * u) * d_psi;
    let lhs_phi = phi_factor * phi_factor * d_phi;
    Ok(TangentResiduals {
        r,
        u,
        psi: (lhs_psi - polynomial_p(r, u)).abs(),
        phi: (lhs_phi - polynomial_q(r, u)).abs(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpecialRadii {
    /// Root of `1 - 4r + r^2` in `(0, 1)`.
    pub r_convex: f64,
    /// Root of `q(r, u*(r)) = 0` on `[1/sqrt(3), 1)`.
    pub r_star: f64,
    /// `4 sqrt(2) - 5`, the class-wide starlikeness bound.
    pub r_close_to_convex_star: f64,
    /// `2 - sqrt(3)`, the class-wide convexity radius.
    pub r_close_to_convex_conv: f64,
}

/// `(1/3) sqrt((37 - 8 sqrt(10)) / 3)`.
pub fn r0_closed_form() -> f64 {
    ((37.0 - 8.0 * 10f64.sqrt()) / 3.0).sqrt() / 3.0
}

pub fn solve_special_radii() -> Result<SpecialRadii> {
    let r_convex = numeric::find_root(|r| 1.0 - 4.0 * r + r * r, 0.0, 1.0)?;
    let r_star = numeric::find_root(q_at_local_min_scaled, 1.0 / 3f64.sqrt(), 1.0)?;
    Ok(SpecialRadii {
        r_convex,
        r_star,
        r_close_to_convex_star: 4.0 * 2f64.sqrt() - 5.0,
        r_close_to_convex_conv: 2.0 - 3f64.sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{make_named, CatalogEntry};
    use crate::series::{Generator, TruncatedSeries};

    fn identity() -> HarmonicMap {
        HarmonicMap::new(
            "z",
            TruncatedSeries::generator(Generator::Identity, 8).unwrap(),
            TruncatedSeries::zero(8).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn identity_passes_everywhere() {
        let id = identity();
        for r in [0.01, 0.5, 0.99] {
            let c = convex_test_at_radius(&id, r, 64).unwrap();
            assert!(c.passed && (c.min_value - 1.0).abs() < 1e-12);
            assert!(starlike_test_at_radius(&id, r, 64).unwrap().passed);
        }
    }

    #[test]
    fn f_examples() {
        let f = make_named(&CatalogEntry::F, 64).unwrap();
        assert!(convex_test_at_radius(&f, 0.25, 1024).unwrap().passed);
        assert!(!convex_test_at_radius(&f, 0.30, 1024).unwrap().passed);
        assert!(starlike_test_at_radius(&f, 0.65, 1024).unwrap().passed);
        assert!(!starlike_test_at_radius(&f, 0.67, 1024).unwrap().passed);
    }

    #[test]
    fn closed_forms_match_map() {
        assert_eq!(closed_form_f(ClosedFormExpr::D, 0.4, 0.0), 0.0);
        assert!((closed_form_f(ClosedFormExpr::C, 0.5, 0.0) - 2.0).abs() < 1e-15);
        let f = make_named(&CatalogEntry::F, 64).unwrap();
        for (r, t) in [(0.3, 0.4), (0.8, 2.0), (0.95, -1.0)] {
            let (d1, _) = f.angular_derivatives_via(r, t, Route::ExactPreferred).unwrap();
            let a = closed_form_f(ClosedFormExpr::A, r, t);
            let b = closed_form_f(ClosedFormExpr::B, r, t);
            assert!((Complex64::new(a, b) - d1).norm() < 1e-9 * d1.norm().max(1.0));
            let v = f.evaluate_f_via(Complex64::from_polar(r, t), Route::ExactPreferred).unwrap();
            let c = closed_form_f(ClosedFormExpr::C, r, t);
            let d = closed_form_f(ClosedFormExpr::D, r, t);
            assert!((Complex64::new(c, d) - v).norm() < 1e-9 * v.norm().max(1.0));
        }
    }

    #[test]
    fn polynomial_endpoints() {
        for r in [0.1f64, 0.2, 0.3] {
            let expect = (1.0 + r).powi(6) * (1.0 - 4.0 * r + r * r);
            assert!((polynomial_p(r, -1.0) - expect).abs() < 1e-12);
            assert!((polynomial_q(r, -1.0) - (1.0 + r).powi(4)).abs() < 1e-12);
            assert!((polynomial_q(r, 1.0) - (1.0 - r).powi(4)).abs() < 1e-12);
        }
        let u = q_local_min_u(0.7).unwrap();
        assert!(dq_du(0.7, u).abs() < 1e-10);
        assert!(q_local_min_u(0.3).is_err());
    }

    #[test]
    fn scaled_local_min_matches_q() {
        for r in [0.6, 0.658, 0.7, 0.9] {
            let u = q_local_min_u(r).unwrap();
            let direct = 27.0 * (1.0 + r * r).powi(2) * polynomial_q(r, u);
            assert!((direct - q_at_local_min_scaled(r)).abs() < 1e-11);
        }
    }

    #[test]
    fn tangent_identities() {
        for (r, u) in [(0.2, 0.3), (0.5, -0.5)] {
            let res = identity_check_tangent(r, u).unwrap();
            assert!(res.passed(), "{res:?}");
        }
        assert!(identity_check_tangent(0.2, 1.0).is_err());
        // (1+r^2)u = 2r is a pole of tan(Phi)
        let r: f64 = 0.5;
        assert!(matches!(
            identity_check_tangent(r, 2.0 * r / (1.0 + r * r)),
            Err(Error::SingularPoint { .. })
        ));
    }

    #[test]
    fn special_radii() {
        let s = solve_special_radii().unwrap();
        assert!((s.r_convex - (2.0 - 3f64.sqrt())).abs() < 1e-12);
        assert!((s.r_star - r0_closed_form()).abs() < 1e-10);
        assert!((s.r_close_to_convex_star - 0.656_854_249_492_380_2).abs() < 1e-15);
        assert!(s.r_close_to_convex_star <= s.r_star);
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("convex".parse::<RadiusKind>().unwrap(), RadiusKind::Convexity);
        assert_eq!("starlikeness".parse::<RadiusKind>().unwrap(), RadiusKind::Starlikeness);
        assert!("round".parse::<RadiusKind>().is_err());
    }
}
