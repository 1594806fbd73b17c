use std::f64::consts::PI;

use harmonic_maps::catalog::{make_m_alpha_member, make_named, AnalyticSeed, CatalogEntry, FunctionExpr};
use harmonic_maps::classifiers::{
    coefficient_bounds, growth_bound, lemma13_orders, relation_residual, theorem2_classify, CoefficientPower,
};
use harmonic_maps::closed_form::CoefficientLaw;
use harmonic_maps::convolution::hadamard;
use harmonic_maps::harmonic_map::{HarmonicMap, Route};
use harmonic_maps::plot::format_real;
use harmonic_maps::radius_analysis::{
    identity_check_tangent, p_min_over_u, q_min_over_u, r0_closed_form, test_at_radius, RadiusKind,
};
use harmonic_maps::series::{Generator, TruncatedSeries};
use num_complex::Complex64;
use proptest::prelude::*;

fn complex(bound: f64) -> impl Strategy<Value = Complex64> {
    (-bound..bound, -bound..bound).prop_map(|(a, b)| Complex64::new(a, b))
}

fn unit_disk() -> impl Strategy<Value = Complex64> {
    (0.0..1.0f64, 0.0..2.0 * PI).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

fn series(order: usize) -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(complex(2.0), order + 1).prop_map(|c| TruncatedSeries::new(c).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hadamard_commutes_and_associates(a in series(12), b in series(12), c in series(12)) {
        prop_assert!(a.hadamard(&b).max_abs_diff(&b.hadamard(&a)) <= 1e-12);
        let left = a.hadamard(&b).hadamard(&c);
        let right = a.hadamard(&b.hadamard(&c));
        prop_assert!(left.max_abs_diff(&right) <= 1e-12);
    }

    #[test]
    fn cauchy_product_commutes(a in series(10), b in series(10)) {
        prop_assert!(a.mul(&b).max_abs_diff(&b.mul(&a)) <= 1e-12);
    }

    #[test]
    fn evaluation_is_linear(a in series(10), b in series(10), s in complex(1.0), z in unit_disk()) {
        let lhs = a.add(&b.scale(s)).evaluate(z * 0.9).unwrap();
        let rhs = a.evaluate(z * 0.9).unwrap() + s * b.evaluate(z * 0.9).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-10);
    }

    #[test]
    fn integrate_then_differentiate(a in series(10)) {
        let back = a.integrate().differentiate(1).unwrap();
        prop_assert!(back.max_abs_diff(&a) <= 1e-12);
    }

    #[test]
    fn harmonic_convolution_commutes(a in unit_disk(), b in unit_disk(), c in unit_disk()) {
        let fa = make_named(&CatalogEntry::FAlpha(a), 24).unwrap();
        let fb = make_named(&CatalogEntry::FAlpha(b), 24).unwrap();
        let fc = make_named(&CatalogEntry::FAlpha(c), 24).unwrap();
        let ab = hadamard(&fa, &fb).unwrap().product;
        let ba = hadamard(&fb, &fa).unwrap().product;
        prop_assert!(ab.h().max_abs_diff(ba.h()) <= 1e-12 && ab.g().max_abs_diff(ba.g()) <= 1e-12);
        let left = hadamard(&ab, &fc).unwrap().product;
        let bc = hadamard(&fb, &fc).unwrap().product;
        let right = hadamard(&fa, &bc).unwrap().product;
        let scale = 25f64.powi(3);
        prop_assert!(left.h().max_abs_diff(right.h()) <= 1e-12 * scale);
        prop_assert!(left.g().max_abs_diff(right.g()) <= 1e-12 * scale);
    }

    #[test]
    fn f_alpha_attains_coefficient_bounds(alpha in unit_disk()) {
        let f = make_named(&CatalogEntry::FAlpha(alpha), 48).unwrap();
        let b = coefficient_bounds(&f, alpha);
        prop_assert!(b.passed && b.equality);
        prop_assert!(relation_residual(&f, alpha) <= 1e-10);
    }

    #[test]
    fn growth_bound_holds_for_f_alpha(alpha in unit_disk(), z in unit_disk()) {
        let z = z * 0.95;
        let f = make_named(&CatalogEntry::FAlpha(alpha), 64).unwrap();
        let v = f.evaluate_f_via(z, Route::ExactPreferred).unwrap();
        prop_assert!(v.norm() <= growth_bound(z.norm(), alpha.norm()) + 1e-9);
    }

    #[test]
    fn exact_and_series_routes_agree(alpha in unit_disk(), z in unit_disk()) {
        let z = z * 0.5;
        let f = make_named(&CatalogEntry::FAlpha(alpha), 96).unwrap();
        let a = f.evaluate_f_via(z, Route::Series).unwrap();
        let b = f.evaluate_f_via(z, Route::ExactPreferred).unwrap();
        prop_assert!((a - b).norm() <= 1e-8);
    }

    #[test]
    fn m_alpha_members_satisfy_the_relation(
        a2 in complex(0.2), a3 in complex(0.05), alpha in unit_disk()
    ) {
        let law = CoefficientLaw::polynomial(&[Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), a2, a3]);
        let seed = AnalyticSeed::from_law(law, 16).unwrap();
        let f = make_m_alpha_member(&seed, alpha).unwrap();
        prop_assert!(relation_residual(&f, alpha) <= 1e-12);
        prop_assert!(f.exact().is_some());
    }

    #[test]
    fn lemma_orders_decrease_with_the_sum(t in 0.0..0.5f64, extra in 0.0..0.2f64) {
        // nested coefficient sets: the larger set has the larger sum
        let small = TruncatedSeries::from_real(&[0.0, 1.0, t / 2.0]).unwrap();
        let large = TruncatedSeries::from_real(&[0.0, 1.0, t / 2.0, extra / 3.0]).unwrap();
        let zero = TruncatedSeries::zero(3).unwrap();
        let fs = HarmonicMap::new("s", small.truncate(3).unwrap(), zero.clone()).unwrap();
        let fl = HarmonicMap::new("l", large, zero).unwrap();
        let (s1, _) = lemma13_orders(&fs).unwrap();
        let (l1, _) = lemma13_orders(&fl).unwrap();
        if let (Some(a), Some(b)) = (s1.order_starlike(), l1.order_starlike()) {
            prop_assert!(b <= a);
        }
    }

    #[test]
    fn power_two_test_is_weaker_than_weighted_sum(a in prop::collection::vec(-0.1..0.1f64, 4)) {
        let mut coeffs = vec![0.0, 1.0];
        coeffs.extend(a.iter().enumerate().map(|(i, x)| x / ((i + 2) as f64).powi(2)));
        let h = TruncatedSeries::from_real(&coeffs).unwrap();
        let t2 = theorem2_classify(&h, Complex64::new(0.0, 0.0), CoefficientPower::Two);
        let f = HarmonicMap::new("h", h.clone(), TruncatedSeries::zero(h.order()).unwrap()).unwrap();
        let (l1, _) = lemma13_orders(&f).unwrap();
        if t2.passed {
            prop_assert!(l1.passed);
            prop_assert!(l1.order_starlike().unwrap() >= t2.order_starlike().unwrap());
        }
    }

    #[test]
    fn report_orders_live_in_unit_interval(a2 in 0.0..0.3f64) {
        let h = TruncatedSeries::from_real(&[0.0, 1.0, a2]).unwrap();
        let f = HarmonicMap::new("h", h, TruncatedSeries::zero(2).unwrap()).unwrap();
        let (i, ii) = lemma13_orders(&f).unwrap();
        for rep in [i, ii] {
            for o in [rep.order_starlike(), rep.order_convex()].into_iter().flatten() {
                prop_assert!((0.0..1.0).contains(&o));
                prop_assert!(rep.passed);
            }
        }
    }

    #[test]
    fn real_formatting_round_trips(x in -1e6..1e6f64) {
        let s = format_real(x);
        let back: f64 = s.parse().unwrap();
        prop_assert!((back - x).abs() <= 5e-12 * x.abs().max(1e-300));
        prop_assert!(!s.contains('e'));
    }

    #[test]
    fn tangent_identities_hold(r in 0.02..0.98f64, u in -0.98..0.98f64) {
        match identity_check_tangent(r, u) {
            Ok(res) => prop_assert!(res.passed(), "{res:?}"),
            Err(harmonic_maps::error::Error::SingularPoint { .. }) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn identity_map_turns_uniformly(r in 0.01..0.99f64) {
        let id = HarmonicMap::new(
            "z",
            TruncatedSeries::generator(Generator::Identity, 8).unwrap(),
            TruncatedSeries::zero(8).unwrap(),
        )
        .unwrap();
        for kind in [RadiusKind::Convexity, RadiusKind::Starlikeness] {
            let t = test_at_radius(&id, kind, r, 64).unwrap();
            prop_assert!(t.passed && (t.min_value - 1.0).abs() < 1e-12);
        }
    }
}

#[test]
fn function_expressions_round_trip() {
    for s in ["F", "L", "f_alpha:0.5,-0.25", "g_alpha:0,1", "example21", "conv(f_alpha:0,1,conv(L,F))"] {
        let e: FunctionExpr = s.parse().unwrap();
        let again: FunctionExpr = e.to_string().parse().unwrap();
        assert_eq!(e, again, "{s}");
    }
}

#[test]
fn p_changes_sign_only_above_convexity_radius() {
    let rc = 2.0 - 3f64.sqrt();
    assert!(p_min_over_u(rc - 1e-3, 4001) > 0.0);
    assert!(p_min_over_u(rc + 1e-3, 4001) < 0.0);
    for k in 1..27 {
        assert!(p_min_over_u(k as f64 / 100.0, 401) > 0.0);
    }
}

#[test]
fn q_changes_sign_only_above_starlikeness_radius() {
    let r0 = r0_closed_form();
    assert!(q_min_over_u(r0 - 1e-3, 4001) > 0.0);
    assert!(q_min_over_u(r0 + 1e-3, 4001) < 0.0);
    for k in 1..66 {
        assert!(q_min_over_u(k as f64 / 100.0, 401) > 0.0);
    }
}

#[test]
fn radius_tests_match_sign_polynomials_for_f() {
    let f = make_named(&CatalogEntry::F, 64).unwrap();
    for r in [0.1, 0.25, 0.27, 0.4, 0.6, 0.65, 0.66, 0.8] {
        let convex = test_at_radius(&f, RadiusKind::Convexity, r, 2048).unwrap().passed;
        let star = test_at_radius(&f, RadiusKind::Starlikeness, r, 2048).unwrap().passed;
        assert_eq!(convex, p_min_over_u(r, 4001) >= 0.0, "convexity at {r}");
        assert_eq!(star, q_min_over_u(r, 4001) >= 0.0, "starlikeness at {r}");
    }
}

fn segments_cross(p: Complex64, q: Complex64, a: Complex64, b: Complex64) -> Option<(f64, f64)> {
    let cross = |u: Complex64, v: Complex64| u.re * v.im - u.im * v.re;
    let (d1, d2) = (q - p, b - a);
    let den = cross(d1, d2);
    if den.abs() < 1e-300 {
        return None;
    }
    let s = cross(a - p, d2) / den;
    let t = cross(a - p, d1) / den;
    ((0.0..=1.0).contains(&s) && (0.0..=1.0).contains(&t)).then_some((s, t))
}

#[test]
fn l_star_f_is_sense_preserving_but_not_univalent() {
    let l = make_named(&CatalogEntry::L, 128).unwrap();
    let big_f = make_named(&CatalogEntry::F, 128).unwrap();
    let lf = hadamard(&l, &big_f).unwrap().product;
    assert!(lf.exact().is_some());
    assert!(lf.sense_preserving_check(0.95, (32, 128)).unwrap().passed);

    // the image of |z| = 0.8 crosses itself
    let r = 0.8;
    let n = 1500;
    let step = 2.0 * PI / n as f64;
    let at = |t: f64| lf.evaluate_f_via(Complex64::from_polar(r, t), Route::ExactPreferred).unwrap();
    let pts: Vec<Complex64> = (0..=n).map(|k| at(k as f64 * step)).collect();
    let mut found = None;
    'outer: for i in 0..n {
        for j in i + 2..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            if let Some((s, t)) = segments_cross(pts[i], pts[i + 1], pts[j], pts[j + 1]) {
                found = Some(((i as f64 + s) * step, (j as f64 + t) * step));
                break 'outer;
            }
        }
    }
    let (mut t1, mut t2) = found.expect("self-intersection of the circle image");

    // Newton on f(r e^{i t1}) = f(r e^{i t2})
    for _ in 0..30 {
        let res = at(t1) - at(t2);
        let (a, _) = lf.angular_derivatives_via(r, t1, Route::ExactPreferred).unwrap();
        let (b, _) = lf.angular_derivatives_via(r, t2, Route::ExactPreferred).unwrap();
        let b = -b;
        let det = a.re * b.im - a.im * b.re;
        t1 -= (res.re * b.im - res.im * b.re) / det;
        t2 -= (a.re * res.im - a.im * res.re) / det;
    }
    let gap = (at(t1) - at(t2)).norm();
    let z1 = Complex64::from_polar(r, t1);
    let z2 = Complex64::from_polar(r, t2);
    assert!(gap < 1e-9 * at(t1).norm().max(1.0), "gap {gap}");
    assert!((z1 - z2).norm() > 0.05, "{z1} {z2}");
}
