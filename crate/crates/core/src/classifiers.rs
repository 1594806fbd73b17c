//! Coefficient-condition classifiers and the M(alpha) verifiers.
//!
//! Every sum over coefficients runs over the stored truncation; reports
//! carry `truncation_order` so the caller can judge the omitted tail.
//! Grid-based checks are necessary conditions only: the underlying
//! properties are open conditions on the whole disk.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::harmonic_map::{HarmonicMap, Route};
use crate::numeric;
use crate::series::{Jet, TruncatedSeries};
use crate::tolerance;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct Orders {
    pub starlike: Option<f64>,
    pub convex: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassificationReport {
    pub condition_name: String,
    /// The computed coefficient sum.
    pub condition_value: f64,
    pub threshold: f64,
    pub passed: bool,
    pub orders: Orders,
    /// An order formula evaluated to exactly 1 and was capped below 1.
    pub degenerate: bool,
    pub truncation_order: usize,
    pub grid: Option<(usize, usize)>,
}

impl ClassificationReport {
    pub fn order_starlike(&self) -> Option<f64> {
        self.orders.starlike
    }

    pub fn order_convex(&self) -> Option<f64> {
        self.orders.convex
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Largest representable order below 1.
const ORDER_CAP: f64 = 1.0 - f64::EPSILON;

fn capped(order: f64, degenerate: &mut bool) -> f64 {
    if order >= 1.0 {
        *degenerate = true;
        ORDER_CAP
    } else {
        order.max(0.0)
    }
}

/// `2 (1 - lambda) / (2 + lambda)`.
pub fn order_starlike_lemma_i(lambda: f64) -> f64 {
    2.0 * (1.0 - lambda) / (2.0 + lambda)
}

/// `2 (2 - lambda) / (4 + lambda)`.
pub fn order_starlike_lemma_ii(lambda: f64) -> f64 {
    2.0 * (2.0 - lambda) / (4.0 + lambda)
}

/// `2 (1 - lambda) / (2 + lambda)`.
pub fn order_convex_lemma_ii(lambda: f64) -> f64 {
    2.0 * (1.0 - lambda) / (2.0 + lambda)
}

fn weighted_sum(series: &[&TruncatedSeries], power: i32) -> f64 {
    let order = series.iter().map(|s| s.order()).min().unwrap_or(0);
    (2..=order)
        .map(|n| {
            let w = (n as f64).powi(power);
            w * series.iter().map(|s| s.coeff(n).norm()).sum::<f64>()
        })
        .sum()
}

/// Coefficient tests `sum n (|a_n|+|b_n|) <= 1` and `sum n^2 (|a_n|+|b_n|) <= 1`
/// with their full-starlikeness and full-convexity orders.
pub fn lemma13_orders(f: &HarmonicMap) -> Result<(ClassificationReport, ClassificationReport)> {
    let b1 = f.g().coeff(1);
    if b1.norm() > 1e-12 {
        return Err(Error::Normalization(format!("coefficient test needs b_1 = 0, got {b1}")));
    }
    let truncation_order = f.order();
    let lambda1 = weighted_sum(&[f.h(), f.g()], 1);
    let lambda2 = weighted_sum(&[f.h(), f.g()], 2);

    let mut degenerate = false;
    let passed = lambda1 <= 1.0;
    let orders = if passed {
        Orders {
            starlike: Some(capped(order_starlike_lemma_i(lambda1), &mut degenerate)),
            convex: None,
        }
    } else {
        Orders::default()
    };
    let first = ClassificationReport {
        condition_name: "sum n(|a_n|+|b_n|) <= 1".into(),
        condition_value: lambda1,
        threshold: 1.0,
        passed,
        orders,
        degenerate,
        truncation_order,
        grid: None,
    };

    let mut degenerate = false;
    let passed = lambda2 <= 1.0;
    let orders = if passed {
        Orders {
            starlike: Some(capped(order_starlike_lemma_ii(lambda2), &mut degenerate)),
            convex: Some(capped(order_convex_lemma_ii(lambda2), &mut degenerate)),
        }
    } else {
        Orders::default()
    };
    let second = ClassificationReport {
        condition_name: "sum n^2(|a_n|+|b_n|) <= 1".into(),
        condition_value: lambda2,
        threshold: 1.0,
        passed,
        orders,
        degenerate,
        truncation_order,
        grid: None,
    };
    Ok((first, second))
}

/// Which coefficient hypothesis `sum n^p |a_n| <= 1` is tested.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CoefficientPower {
    Two,
    Three,
}

/// Classifies `f = h + conj(g)` with `g' = alpha z h'` from the coefficients of `h`.
///
/// * `Two`: passes (close-to-convex) when the sum is at most 1 and `|alpha| <= 1`;
///   for `|alpha| <= 1/3` also fully starlike of order `2(1-3|a|)/(5+3|a|)`.
/// * `Three`: passes when the sum is at most 1 and `|alpha| <= 2/11`, with
///   starlike order `2(6-11|a|)/(18+11|a|)` and convex order `2(2-11|a|)/(10+11|a|)`.
pub fn theorem2_classify(h: &TruncatedSeries, alpha: Complex64, power: CoefficientPower) -> ClassificationReport {
    let a = alpha.norm();
    let slack = 1e-15;
    let (exponent, name) = match power {
        CoefficientPower::Two => (2, "sum n^2 |a_n| <= 1"),
        CoefficientPower::Three => (3, "sum n^3 |a_n| <= 1"),
    };
    let sum = weighted_sum(&[h], exponent);
    let hypothesis = sum <= 1.0;
    let mut degenerate = false;
    let (passed, orders) = match power {
        CoefficientPower::Two => {
            let passed = hypothesis && a <= 1.0 + slack;
            let starlike = (passed && a <= 1.0 / 3.0 + slack)
                .then(|| capped(2.0 * (1.0 - 3.0 * a) / (5.0 + 3.0 * a), &mut degenerate));
            (passed, Orders { starlike, convex: None })
        }
        CoefficientPower::Three => {
            let passed = hypothesis && a <= 2.0 / 11.0 + slack;
            let orders = if passed {
                Orders {
                    starlike: Some(capped(2.0 * (6.0 - 11.0 * a) / (18.0 + 11.0 * a), &mut degenerate)),
                    convex: Some(capped(2.0 * (2.0 - 11.0 * a) / (10.0 + 11.0 * a), &mut degenerate)),
                }
            } else {
                Orders::default()
            };
            (passed, orders)
        }
    };
    ClassificationReport {
        condition_name: name.into(),
        condition_value: sum,
        threshold: 1.0,
        passed,
        orders,
        degenerate,
        truncation_order: h.order(),
        grid: None,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MAlphaReport {
    pub alpha: Complex64,
    /// `(n+1) b_{n+1} = n alpha a_n` for every stored `n`.
    pub relation_passed: bool,
    pub max_relation_residual: f64,
    /// `Re(1 + z h''/h') > -1/2` at every grid node (necessary check).
    pub curvature_passed: bool,
    pub min_curvature: f64,
    pub min_curvature_at: Complex64,
    pub r_max: f64,
    pub grid: (usize, usize),
    pub truncation_order: usize,
    pub passed: bool,
}

/// Default grid for the curvature part of [`m_alpha_check`].
pub const M_ALPHA_GRID: (usize, usize) = (64, 256);
pub const M_ALPHA_R_MAX: f64 = 0.99;

/// Largest `|(n+1) b_{n+1} - n alpha a_n|`, including `b_1` (`n = 0`).
pub fn relation_residual(f: &HarmonicMap, alpha: Complex64) -> f64 {
    let order = f.order();
    (0..order)
        .map(|n| {
            let lhs = f.g().coeff(n + 1) * (n as f64 + 1.0);
            let rhs = alpha * f.h().coeff(n) * n as f64;
            (lhs - rhs).norm()
        })
        .fold(0.0, f64::max)
}

pub fn m_alpha_check(f: &HarmonicMap, alpha: Complex64, r_max: f64, grid: (usize, usize)) -> Result<MAlphaReport> {
    if alpha.norm() > 1.0 + 1e-15 {
        return Err(Error::InvalidParameter(format!("|alpha| = {} exceeds 1", alpha.norm())));
    }
    if !(r_max > 0.0 && r_max < 1.0) || grid.0 == 0 || grid.1 == 0 {
        return Err(Error::InvalidParameter(format!("bad grid r_max={r_max}, {grid:?}")));
    }
    let residual = relation_residual(f, alpha);
    let mut min_curvature = f64::INFINITY;
    let mut min_at = Complex64::new(0.0, 0.0);
    for j in 1..=grid.0 {
        let r = r_max * j as f64 / grid.0 as f64;
        for k in 0..grid.1 {
            let z = Complex64::from_polar(r, 2.0 * PI * k as f64 / grid.1 as f64);
            let (h, _) = f.jets(z, Route::ExactPreferred)?;
            let value = curvature(z, &h)?;
            if value < min_curvature {
                min_curvature = value;
                min_at = z;
            }
        }
    }
    let relation_passed = residual <= tolerance::COEFF_RELATION;
    let curvature_passed = min_curvature > -0.5;
    Ok(MAlphaReport {
        alpha,
        relation_passed,
        max_relation_residual: residual,
        curvature_passed,
        min_curvature,
        min_curvature_at: min_at,
        r_max,
        grid,
        truncation_order: f.order(),
        passed: relation_passed && curvature_passed,
    })
}

/// `Re(1 + z F''/F')`.
fn curvature(z: Complex64, jet: &Jet) -> Result<f64> {
    if jet.d1.norm() == 0.0 {
        return Err(Error::SingularPoint { z });
    }
    Ok((1.0 + z * jet.d2 / jet.d1).re)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoefficientBoundReport {
    /// `max_n |a_n| - (n+1)/2`.
    pub max_a_excess: f64,
    /// `max_n |b_n| - (n-1)|alpha|/2`.
    pub max_b_excess: f64,
    /// Every bound holds with equality (within `COEFF_BOUND`).
    pub equality: bool,
    pub first_violation: Option<usize>,
    pub passed: bool,
    pub truncation_order: usize,
}

/// `|a_n| <= (n+1)/2` and `|b_n| <= (n-1)|alpha|/2` for `2 <= n <= N`.
pub fn coefficient_bounds(f: &HarmonicMap, alpha: Complex64) -> CoefficientBoundReport {
    let a_abs = alpha.norm();
    let mut max_a: f64 = f64::NEG_INFINITY;
    let mut max_b: f64 = f64::NEG_INFINITY;
    let mut equality = true;
    let mut first_violation = None;
    for n in 2..=f.order() {
        let nf = n as f64;
        let ea = f.h().coeff(n).norm() - (nf + 1.0) / 2.0;
        let eb = f.g().coeff(n).norm() - (nf - 1.0) * a_abs / 2.0;
        max_a = max_a.max(ea);
        max_b = max_b.max(eb);
        if ea.abs() > tolerance::COEFF_BOUND || eb.abs() > tolerance::COEFF_BOUND {
            equality = false;
        }
        if (ea > tolerance::COEFF_BOUND || eb > tolerance::COEFF_BOUND) && first_violation.is_none() {
            first_violation = Some(n);
        }
    }
    CoefficientBoundReport {
        max_a_excess: max_a,
        max_b_excess: max_b,
        equality,
        first_violation,
        passed: first_violation.is_none(),
        truncation_order: f.order(),
    }
}

/// `|z|/(1-|z|)^2 [1 - (1-|alpha|)|z|/2]`.
pub fn growth_bound(z_abs: f64, alpha_abs: f64) -> f64 {
    z_abs / (1.0 - z_abs).powi(2) * (1.0 - 0.5 * (1.0 - alpha_abs) * z_abs)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsReport {
    pub coefficients: CoefficientBoundReport,
    pub samples: usize,
    /// `max (|f(z)| - bound(|z|))` over the sample; non-positive when the bound holds.
    pub max_growth_excess: f64,
    /// `min (bound(|z|) - |f(z)|)`, the tightest sample.
    pub min_growth_slack: f64,
    pub growth_passed: bool,
    pub passed: bool,
}

/// Radius of the growth-bound sample disk.
pub const GROWTH_SAMPLE_RADIUS: f64 = 0.9;

/// Coefficient bounds plus the growth bound at `samples` seeded random points of `|z| <= 0.9`.
pub fn thm31_bounds_check(f: &HarmonicMap, alpha: Complex64, samples: usize) -> Result<BoundsReport> {
    let residual = relation_residual(f, alpha);
    if residual > tolerance::COEFF_RELATION {
        return Err(Error::InvalidParameter(format!(
            "coefficient relation fails (residual {residual:e}); not an M(alpha) candidate"
        )));
    }
    let coefficients = coefficient_bounds(f, alpha);
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut max_excess = f64::NEG_INFINITY;
    for _ in 0..samples {
        let rho = GROWTH_SAMPLE_RADIUS * rng.gen::<f64>().sqrt();
        let z = Complex64::from_polar(rho, rng.gen_range(0.0..2.0 * PI));
        let value = f.evaluate_f_via(z, Route::ExactPreferred)?.norm();
        max_excess = max_excess.max(value - growth_bound(rho, alpha.norm()));
    }
    let growth_passed = max_excess <= tolerance::GROWTH_BOUND;
    Ok(BoundsReport {
        passed: coefficients.passed && growth_passed,
        coefficients,
        samples,
        max_growth_excess: max_excess,
        min_growth_slack: -max_excess,
        growth_passed,
    })
}

/// `pi (1 - |alpha|^2/2) + pi sum_{n>=2} (n - n^2 |alpha|^2/(n+1)) |a_n|^2`
/// over the stored coefficients. Meaningful for M(alpha) members only.
pub fn area_series(f: &HarmonicMap, alpha: Complex64) -> f64 {
    let a2 = alpha.norm_sqr();
    let tail: f64 = (2..=f.h().order())
        .map(|n| {
            let nf = n as f64;
            (nf - nf * nf * a2 / (nf + 1.0)) * f.h().coeff(n).norm_sqr()
        })
        .sum();
    PI * (1.0 - a2 / 2.0) + PI * tail
}

/// Midpoint-rule polar quadrature of the Jacobian over `|z| < r_max`.
pub fn jacobian_area(f: &HarmonicMap, r_max: f64, n_r: usize, n_theta: usize) -> Result<f64> {
    let dr = r_max / n_r as f64;
    let dt = 2.0 * PI / n_theta as f64;
    let mut total = 0.0;
    for j in 0..n_r {
        let r = (j as f64 + 0.5) * dr;
        let mut ring = 0.0;
        for k in 0..n_theta {
            ring += f.jacobian(Complex64::from_polar(r, (k as f64 + 0.5) * dt))?;
        }
        total += ring * r * dr * dt;
    }
    Ok(total)
}

/// `P_zeta(theta) = (1 - |zeta|^2) / |e^{i theta} - zeta|^2`.
pub fn poisson_kernel(zeta: Complex64, theta: f64) -> Result<f64> {
    if zeta.norm() >= 1.0 {
        return Err(Error::OutsideDisk { z: zeta });
    }
    Ok((1.0 - zeta.norm_sqr()) / (Complex64::from_polar(1.0, theta) - zeta).norm_sqr())
}

/// `Re(1 + z F_eps''/F_eps')` on `|z| = r` with `F_eps = h + eps g`.
pub fn kaplan_integrand(f: &HarmonicMap, epsilon: Complex64, r: f64, theta: f64) -> Result<f64> {
    let z = Complex64::from_polar(r, theta);
    let (h, g) = f.jets(z, Route::ExactPreferred)?;
    curvature(z, &h.add_scaled(epsilon, g))
}

const KAPLAN_QUAD_TOL: f64 = 1e-11;

/// `int_{theta1}^{theta2} Re(1 + z F_eps''/F_eps') d theta` on `|z| = r`.
/// Kaplan's condition asks for values above `-pi` on every arc shorter than a full turn.
pub fn kaplan_integral_check(
    f: &HarmonicMap,
    epsilon: Complex64,
    r: f64,
    theta1: f64,
    theta2: f64,
) -> Result<f64> {
    let span = theta2 - theta1;
    if !(span > 0.0 && span <= 2.0 * PI + 1e-12) {
        return Err(Error::InvalidParameter(format!(
            "need 0 < theta2 - theta1 <= 2 pi, got {span}"
        )));
    }
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::InvalidParameter(format!("radius {r} not in (0,1)")));
    }
    let mut failure = None;
    let q = numeric::integrate(
        |t| match kaplan_integrand(f, epsilon, r, t) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        },
        theta1,
        theta2,
        KAPLAN_QUAD_TOL,
    )?;
    match failure {
        Some(e) => Err(e),
        None => Ok(q.value),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KaplanScan {
    pub epsilon: Complex64,
    pub r: f64,
    pub full_period: f64,
    pub min_arc_value: f64,
    pub min_arc: (f64, f64),
    pub passed: bool,
}

/// Integrates over `nodes` equal sub-arcs and scans every arc between nodes
/// (wrapping through `theta = 0`) for the smallest Kaplan integral.
pub fn kaplan_scan(f: &HarmonicMap, epsilon: Complex64, r: f64, nodes: usize) -> Result<KaplanScan> {
    if nodes < 2 {
        return Err(Error::InvalidParameter("need at least 2 nodes".into()));
    }
    let step = 2.0 * PI / nodes as f64;
    let mut cumulative = vec![0.0; nodes + 1];
    for i in 0..nodes {
        let piece = kaplan_integral_check(f, epsilon, r, i as f64 * step, (i + 1) as f64 * step)?;
        cumulative[i + 1] = cumulative[i] + piece;
    }
    let total = cumulative[nodes];
    let mut best = f64::INFINITY;
    let mut arc = (0.0, 0.0);
    for i in 0..=nodes {
        for j in 0..=nodes {
            let (value, from, to) = if i < j {
                if i == 0 && j == nodes {
                    continue;
                }
                (cumulative[j] - cumulative[i], i, j)
            } else if j < i {
                // theta_i -> 2 pi -> theta_j
                (total - cumulative[i] + cumulative[j], i, j + nodes)
            } else {
                continue;
            };
            if value < best {
                best = value;
                arc = (from as f64 * step, to as f64 * step);
            }
        }
    }
    Ok(KaplanScan {
        epsilon,
        r,
        full_period: total,
        min_arc_value: best,
        min_arc: arc,
        passed: best > -PI - tolerance::KAPLAN_SLACK,
    })
}

/// The 16 unimodular values `e^{2 pi i k / 16}`.
pub fn epsilon_sweep() -> Vec<Complex64> {
    (0..16)
        .map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / 16.0))
        .collect()
}
