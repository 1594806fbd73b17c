//! One-shot verification suites: every checked claim becomes a record with
//! the computed value, the expected value and the tolerance used.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use crate::catalog::{make_named, CatalogEntry};
use crate::classifiers::{
    area_series, coefficient_bounds, epsilon_sweep, jacobian_area, kaplan_integral_check, kaplan_scan,
    lemma13_orders, thm31_bounds_check,
};
use crate::closed_form::CoefficientLaw;
use crate::convolution::{hadamard, tilde_dilatation_check};
use crate::error::{Error, Result};
use crate::harmonic_map::HarmonicMap;
use crate::radius_analysis::{
    polynomial_p, polynomial_q, r0_closed_form, radius_search, solve_special_radii, starlike_test_at_radius,
    RadiusKind,
};
use crate::series::TruncatedSeries;
use crate::tolerance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Coefficients,
    Radii,
    Convolution,
    Bounds,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Suite::All),
            "coefficients" => Ok(Suite::Coefficients),
            "radii" => Ok(Suite::Radii),
            "convolution" => Ok(Suite::Convolution),
            "bounds" => Ok(Suite::Bounds),
            _ => Err(Error::Unknown {
                what: "suite",
                name: s.to_string(),
            }),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::All => "all",
            Suite::Coefficients => "coefficients",
            Suite::Radii => "radii",
            Suite::Convolution => "convolution",
            Suite::Bounds => "bounds",
        })
    }
}

/// How `computed` is compared with `expected`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    /// `|computed - expected| <= tolerance`
    #[serde(rename = "approx")]
    Approx,
    /// `computed < expected`
    #[serde(rename = "lt")]
    Below,
    /// `computed >= expected - tolerance`
    #[serde(rename = "ge")]
    AtLeast,
    /// `computed <= expected + tolerance`
    #[serde(rename = "le")]
    AtMost,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Record {
    pub claim_id: String,
    /// The claim being checked, quoted in words.
    pub paper_anchor: String,
    pub computed: f64,
    pub expected: f64,
    pub tolerance: f64,
    pub relation: Relation,
    pub passed: bool,
}

impl Record {
    pub fn new(
        claim_id: impl Into<String>,
        anchor: impl Into<String>,
        computed: f64,
        expected: f64,
        tolerance: f64,
        relation: Relation,
    ) -> Record {
        let passed = match relation {
            Relation::Approx => (computed - expected).abs() <= tolerance,
            Relation::Below => computed < expected,
            Relation::AtLeast => computed >= expected - tolerance,
            Relation::AtMost => computed <= expected + tolerance,
        };
        Record {
            claim_id: claim_id.into(),
            paper_anchor: anchor.into(),
            computed,
            expected,
            tolerance,
            relation,
            passed,
        }
    }

    /// A yes/no claim recorded as `1` (true) or `0` (false).
    pub fn flag(claim_id: impl Into<String>, anchor: impl Into<String>, computed: bool, expected: bool) -> Record {
        Record::new(
            claim_id,
            anchor,
            f64::from(u8::from(computed)),
            f64::from(u8::from(expected)),
            0.0,
            Relation::Approx,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub suite: Suite,
    pub truncation_order: usize,
    pub records: Vec<Record>,
    pub passed: bool,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| !r.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&format!(
                "{} {:<48} computed={:<14.6e} expected={:.6e}\n",
                if r.passed { "PASS" } else { "FAIL" },
                r.claim_id,
                r.computed,
                r.expected
            ));
        }
        let failed = self.failures().count();
        out.push_str(&format!("{} records, {} failed\n", self.records.len(), failed));
        out
    }
}

pub fn run_suite(suite: Suite, order: usize) -> Result<VerificationReport> {
    let mut records = Vec::new();
    if matches!(suite, Suite::All | Suite::Coefficients) {
        records.extend(coefficient_records(order)?);
    }
    if matches!(suite, Suite::All | Suite::Radii) {
        records.extend(radius_records(order)?);
    }
    if matches!(suite, Suite::All | Suite::Convolution) {
        records.extend(convolution_records(order)?);
    }
    if matches!(suite, Suite::All | Suite::Bounds) {
        records.extend(bound_records(order)?);
    }
    let passed = records.iter().all(|r| r.passed);
    Ok(VerificationReport {
        suite,
        truncation_order: order,
        records,
        passed,
    })
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// The `alpha` values whose `f_alpha` coefficient equalities are recorded.
pub fn f_alpha_samples() -> [Complex64; 4] {
    [c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 1.0), c(0.5, 0.0)]
}

fn coefficient_records(order: usize) -> Result<Vec<Record>> {
    let mut out = Vec::new();
    for alpha in f_alpha_samples() {
        let f = make_named(&CatalogEntry::FAlpha(alpha), order)?;
        let b = coefficient_bounds(&f, alpha);
        let anchor = "f_alpha attains |a_n| = (n+1)/2 and |b_n| = (n-1)|alpha|/2";
        out.push(Record::new(
            format!("f_alpha:{},{} |a_n| equality", alpha.re, alpha.im),
            anchor,
            b.max_a_excess,
            0.0,
            tolerance::COEFF_BOUND,
            Relation::Approx,
        ));
        out.push(Record::new(
            format!("f_alpha:{},{} |b_n| equality", alpha.re, alpha.im),
            anchor,
            b.max_b_excess,
            0.0,
            tolerance::COEFF_BOUND,
            Relation::Approx,
        ));
    }

    let h = TruncatedSeries::from_real(&[0.0, 1.0, 0.25])?;
    let f = HarmonicMap::new("z+z^2/4", h, TruncatedSeries::zero(2)?)?;
    let (first, _) = lemma13_orders(&f)?;
    out.push(Record::new(
        "coefficient test order for z+z^2/4",
        "sum n|a_n| = lambda gives starlike order 2(1-lambda)/(2+lambda)",
        first.order_starlike().unwrap_or(f64::NAN),
        0.4,
        1e-15,
        Relation::Approx,
    ));
    Ok(out)
}

fn radius_records(order: usize) -> Result<Vec<Record>> {
    let mut out = Vec::new();
    let special = solve_special_radii()?;
    out.push(Record::new(
        "radius of convexity 2-sqrt(3)",
        "the radius of convexity of M(1) is 2-sqrt(3)",
        special.r_convex,
        2.0 - 3f64.sqrt(),
        1e-12,
        Relation::Approx,
    ));
    out.push(Record::new(
        "starlikeness radius r0 of F",
        "r0 = (1/3) sqrt((37 - 8 sqrt(10))/3) ~ 0.658331",
        special.r_star,
        r0_closed_form(),
        1e-10,
        Relation::Approx,
    ));
    out.push(Record::new(
        "4 sqrt(2) - 5 <= r0",
        "starlikeness radius of M(1) is at least 4 sqrt(2) - 5 ~ 0.65685",
        special.r_star,
        special.r_close_to_convex_star,
        0.0,
        Relation::AtLeast,
    ));

    let f = make_named(&CatalogEntry::F, order)?;
    let grid = tolerance::DEFAULT_THETA_GRID;
    for (kind, expected, anchor) in [
        (RadiusKind::Convexity, 2.0 - 3f64.sqrt(), "F maps |z| < r convexly iff r <= 2 - sqrt(3)"),
        (RadiusKind::Starlikeness, r0_closed_form(), "F maps |z| < r onto a starlike domain iff r <= r0"),
    ] {
        let res = radius_search(&f, kind, 1e-6, grid)?;
        let mid = 0.5 * (res.r_lo + res.r_hi);
        let tol = if res.contains(expected) { 0.5 * res.width() } else { 0.0 };
        out.push(Record::new(format!("F {kind} bracket"), anchor, mid, expected, tol.max(1e-15), Relation::Approx));
    }

    let mut worst_p: f64 = 0.0;
    let mut worst_q: f64 = 0.0;
    for k in 1..100 {
        let r = k as f64 / 100.0;
        worst_p = worst_p.max((polynomial_p(r, -1.0) - (1.0 + r).powi(6) * (1.0 - 4.0 * r + r * r)).abs());
        worst_q = worst_q
            .max((polynomial_q(r, -1.0) - (1.0 + r).powi(4)).abs())
            .max((polynomial_q(r, 1.0) - (1.0 - r).powi(4)).abs());
    }
    out.push(Record::new("p(r,-1) factorization", "p(r,-1) = (1+r)^6 (1-4r+r^2)", worst_p, 0.0, 1e-12, Relation::Approx));
    out.push(Record::new("q(r,+-1) values", "q(r,-1) = (1+r)^4 and q(r,1) = (1-r)^4", worst_q, 0.0, 1e-12, Relation::Approx));
    Ok(out)
}

fn convolution_records(order: usize) -> Result<Vec<Record>> {
    let mut out = Vec::new();
    let l = make_named(&CatalogEntry::L, order)?;
    let ll = hadamard(&l, &l)?.product;
    let mut worst: f64 = 0.0;
    for n in 2..=order {
        let nf = n as f64;
        worst = worst
            .max((ll.h().coeff(n) - c(((nf + 1.0) / 2.0).powi(2), 0.0)).norm())
            .max((ll.g().coeff(n) - c(((nf - 1.0) / 2.0).powi(2), 0.0)).norm());
    }
    out.push(Record::new(
        "L*L coefficients",
        "L*L = z + sum ((n+1)/2)^2 z^n + conj(sum ((n-1)/2)^2 z^n)",
        worst,
        0.0,
        1e-12,
        Relation::Approx,
    ));
    let mut worst: f64 = 0.0;
    for t in [0.0, 0.5, 1.0, 2.0, PI] {
        let a = Complex64::from_polar(1.0, t);
        let p = hadamard(&make_named(&CatalogEntry::FAlpha(a), order)?, &make_named(&CatalogEntry::FAlpha(a.conj()), order)?)?
            .product;
        worst = worst.max(p.h().max_abs_diff(ll.h())).max(p.g().max_abs_diff(ll.g()));
    }
    out.push(Record::new(
        "f_alpha * f_conj(alpha) = L*L",
        "f_alpha * f_conj(alpha) = L*L for |alpha| = 1",
        worst,
        0.0,
        1e-12,
        Relation::Approx,
    ));
    let star = starlike_test_at_radius(&ll, 0.99, tolerance::DEFAULT_THETA_GRID)?;
    out.push(Record::new(
        "L*L circle starlikeness at r = 0.99",
        "L*L is starlike (image C minus (-inf,-1/4])",
        star.min_value,
        0.0,
        tolerance::ANGULAR_MIN,
        Relation::AtLeast,
    ));

    let ff = hadamard(&make_named(&CatalogEntry::F, order)?, &make_named(&CatalogEntry::F, order)?)?.product;
    let b = coefficient_bounds(&ff, c(1.0, 0.0));
    out.push(Record::flag(
        "F*F violates the M(1) coefficient bounds",
        "coefficients of F*F are too large for it to lie in M(1)",
        !b.passed,
        true,
    ));

    for n in [1, 2] {
        for theta in [0.0, PI / 3.0, PI] {
            let rep = tilde_dilatation_check(n, theta, (64, 256))?;
            let anchor = "F * f is sense-preserving for vertical shears of z/(1-z) with w = e^{i theta} z^n";
            out.push(Record::new(
                format!("max |w~| n={n} theta={theta:.6}"),
                anchor,
                rep.max_abs,
                1.0,
                0.0,
                Relation::Below,
            ));
            out.push(Record::new(
                format!("w~ vs product dilatation n={n} theta={theta:.6}"),
                anchor,
                rep.cross_check_residual,
                0.0,
                1e-6,
                Relation::Approx,
            ));
        }
    }
    Ok(out)
}

/// Eight members of M(alpha) for the growth-bound checks.
pub fn m_alpha_samples(order: usize) -> Result<Vec<(HarmonicMap, Complex64)>> {
    let mut out = Vec::new();
    for alpha in f_alpha_samples() {
        out.push((make_named(&CatalogEntry::FAlpha(alpha), order)?, alpha));
    }
    let alpha = c(0.0, 0.5);
    out.push((make_named(&CatalogEntry::GAlpha(alpha), order)?, alpha));
    let seeds = [
        (CoefficientLaw::half_plane(), c(0.0, 0.3)),
        (CoefficientLaw::log_one_minus_z().scale(c(-1.0, 0.0)), c(-0.7, 0.0)),
        (CoefficientLaw::polynomial(&[c(0.0, 0.0), c(1.0, 0.0), c(0.25, 0.0)]), c(0.6, 0.2)),
    ];
    for (h, alpha) in seeds {
        out.push((make_named(&CatalogEntry::MAlphaMember { h, alpha }, order)?, alpha));
    }
    Ok(out)
}

fn bound_records(order: usize) -> Result<Vec<Record>> {
    let mut out = Vec::new();
    for (f, alpha) in m_alpha_samples(order)? {
        let rep = thm31_bounds_check(&f, alpha, 2000)?;
        out.push(Record::new(
            format!("growth bound {}", f.label()),
            "|f(z)| <= |z|/(1-|z|)^2 [1 - (1-|alpha|)|z|/2]",
            rep.max_growth_excess,
            0.0,
            tolerance::GROWTH_BOUND,
            Relation::AtMost,
        ));
    }

    for alpha in [c(0.5, 0.0), c(0.0, 1.0)] {
        let g = make_named(&CatalogEntry::GAlpha(alpha), order)?;
        let expected = PI * (1.0 - alpha.norm_sqr() / 2.0);
        out.push(Record::new(
            format!("area of g_alpha:{},{}", alpha.re, alpha.im),
            "area of f(D) is pi(1 - |alpha|^2/2) + pi sum (n - n^2|alpha|^2/(n+1)) |a_n|^2",
            area_series(&g, alpha),
            expected,
            1e-12,
            Relation::Approx,
        ));
        let quad = jacobian_area(&g, 1.0 - 1e-12, 400, 400)?;
        out.push(Record::new(
            format!("Jacobian integral of g_alpha:{},{}", alpha.re, alpha.im),
            "area equals the integral of the Jacobian over the disk",
            quad / expected,
            1.0,
            1e-4,
            Relation::Approx,
        ));
    }

    let f = make_named(&CatalogEntry::F, order)?;
    let mut worst_full: f64 = 0.0;
    let mut worst_arc = f64::INFINITY;
    for eps in epsilon_sweep() {
        for r in [0.5, 0.9] {
            let full = kaplan_integral_check(&f, eps, r, 0.0, 2.0 * PI)?;
            worst_full = worst_full.max((full - 2.0 * PI).abs());
            worst_arc = worst_arc.min(kaplan_scan(&f, eps, r, 64)?.min_arc_value);
        }
    }
    let anchor = "h + eps g is close-to-convex for every |eps| = 1";
    out.push(Record::new("Kaplan full period for F", anchor, worst_full, 0.0, 1e-6, Relation::Approx));
    out.push(Record::new(
        "Kaplan worst sub-arc for F",
        anchor,
        worst_arc,
        -PI,
        0.0,
        Relation::AtLeast,
    ));

    let ex = make_named(&CatalogEntry::Example21, order)?;
    let z0 = c(0.75, 3f64.sqrt() / 4.0);
    let anchor = "f(z0) = f(conj z0) = 3/4 with z0 = (3 + sqrt(3) i)/4";
    for (name, z) in [("z0", z0), ("conj z0", z0.conj())] {
        out.push(Record::new(
            format!("example21 at {name}"),
            anchor,
            (ex.evaluate_f(z)? - c(0.75, 0.0)).norm(),
            0.0,
            1e-12,
            Relation::Approx,
        ));
    }
    let sp = ex.sense_preserving_check(0.95, (32, 128))?;
    out.push(Record::flag("example21 sense-preserving to r = 0.95", "f is sense-preserving in D", sp.passed, true));
    Ok(out)
}
