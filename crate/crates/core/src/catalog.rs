//! Named harmonic maps and the shearing construction.
//!
//! | name        | analytic part `h`        | co-analytic part `g`            |
//! |-------------|--------------------------|---------------------------------|
//! | `f_alpha`   | `(l + k)/2`              | `alpha (k - l)/2`               |
//! | `L`         | `f_alpha`, `alpha = -1`  |                                 |
//! | `F`         | `f_alpha`, `alpha = 1`   |                                 |
//! | `g_alpha`   | `z`                      | `alpha z^2 / 2`                 |
//! | `example21` | `z - z^2/2`              | `z^2/2 - z^3/3`                 |
//! | `example22` | `l`                      | `l + log(1-z)`                  |
//!
//! with `l = z/(1-z)` and `k = z/(1-z)^2`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::closed_form::CoefficientLaw;
use crate::convolution;
use crate::error::{Error, Result};
use crate::harmonic_map::HarmonicMap;
use crate::series::TruncatedSeries;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone, PartialEq)]
pub enum CatalogEntry {
    FAlpha(Complex64),
    L,
    F,
    GAlpha(Complex64),
    Example21,
    Example22,
    /// `h` given as an exact law, `g` from `g' = alpha z h'`.
    MAlphaMember { h: CoefficientLaw, alpha: Complex64 },
}

impl CatalogEntry {
    pub fn name(&self) -> String {
        match self {
            CatalogEntry::FAlpha(a) => format!("f_alpha:{},{}", a.re, a.im),
            CatalogEntry::L => "L".into(),
            CatalogEntry::F => "F".into(),
            CatalogEntry::GAlpha(a) => format!("g_alpha:{},{}", a.re, a.im),
            CatalogEntry::Example21 => "example21".into(),
            CatalogEntry::Example22 => "example22".into(),
            CatalogEntry::MAlphaMember { alpha, .. } => format!("m_alpha:{},{}", alpha.re, alpha.im),
        }
    }

    /// Parameter `alpha` of the M(alpha) family the entry belongs to, if any.
    pub fn alpha(&self) -> Option<Complex64> {
        match self {
            CatalogEntry::FAlpha(a) | CatalogEntry::GAlpha(a) => Some(*a),
            CatalogEntry::MAlphaMember { alpha, .. } => Some(*alpha),
            CatalogEntry::L => Some(-ONE),
            CatalogEntry::F => Some(ONE),
            CatalogEntry::Example22 => Some(ONE),
            CatalogEntry::Example21 => None,
        }
    }
}

fn check_alpha(alpha: Complex64) -> Result<()> {
    if alpha.norm() <= 1.0 + 1e-15 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("|alpha| = {} exceeds 1", alpha.norm())))
    }
}

/// Exact laws of `(h, g)` for `f_alpha`.
pub fn f_alpha_laws(alpha: Complex64) -> (CoefficientLaw, CoefficientLaw) {
    let l = CoefficientLaw::half_plane();
    let k = CoefficientLaw::koebe();
    let h = l.add(&k).scale(Complex64::new(0.5, 0.0));
    let g = k.sub(&l).scale(alpha * 0.5);
    (h, g)
}

pub fn make_named(entry: &CatalogEntry, order: usize) -> Result<HarmonicMap> {
    if order < 8 {
        return Err(Error::OrderTooSmall { min: 8, got: order });
    }
    let label = entry.name();
    let (h, g) = match entry {
        CatalogEntry::FAlpha(alpha) => {
            check_alpha(*alpha)?;
            f_alpha_laws(*alpha)
        }
        CatalogEntry::L => f_alpha_laws(-ONE),
        CatalogEntry::F => f_alpha_laws(ONE),
        CatalogEntry::GAlpha(alpha) => {
            check_alpha(*alpha)?;
            (
                CoefficientLaw::identity(),
                CoefficientLaw::polynomial(&[ZERO, ZERO, alpha * 0.5]),
            )
        }
        CatalogEntry::Example21 => (
            CoefficientLaw::polynomial(&[ZERO, ONE, Complex64::new(-0.5, 0.0)]),
            CoefficientLaw::polynomial(&[ZERO, ZERO, Complex64::new(0.5, 0.0), Complex64::new(-1.0 / 3.0, 0.0)]),
        ),
        CatalogEntry::Example22 => {
            let l = CoefficientLaw::half_plane();
            (l.clone(), l.add(&CoefficientLaw::log_one_minus_z()))
        }
        CatalogEntry::MAlphaMember { h, alpha } => {
            check_alpha(*alpha)?;
            return make_m_alpha_member(&AnalyticSeed::from_law(h.clone(), order)?, *alpha)
                .map(|f| f.relabel(label));
        }
    };
    HarmonicMap::from_laws(label, &h, &g, order)
}

/// A normalized analytic function given as series, with an exact law when known.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticSeed {
    pub series: TruncatedSeries,
    pub law: Option<CoefficientLaw>,
}

impl AnalyticSeed {
    pub fn from_law(law: CoefficientLaw, order: usize) -> Result<Self> {
        Ok(AnalyticSeed {
            series: law.to_series(order)?,
            law: Some(law),
        })
    }

    pub fn from_series(series: TruncatedSeries) -> Self {
        AnalyticSeed { series, law: None }
    }

    /// `l(z) = z/(1-z)`.
    pub fn half_plane(order: usize) -> Result<Self> {
        Self::from_law(CoefficientLaw::half_plane(), order)
    }
}

/// Polynomial dilatation `w(z) = sum w_k z^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyDilatation {
    coeffs: Vec<Complex64>,
}

impl PolyDilatation {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        PolyDilatation { coeffs }
    }

    pub fn zero() -> Self {
        Self::new(vec![])
    }

    /// `c z^n`.
    pub fn monomial(c: Complex64, n: usize) -> Self {
        let mut coeffs = vec![ZERO; n + 1];
        coeffs[n] = c;
        Self::new(coeffs)
    }

    /// `e^{i theta} z^n`.
    pub fn rotated_power(theta: f64, n: usize) -> Self {
        Self::monomial(Complex64::from_polar(1.0, theta), n)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or(ZERO)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, c| acc * z + c)
    }

    pub fn derivative_at(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(ZERO, |acc, (k, c)| acc * z + c * k as f64)
    }

    /// `Some(c)` when `w = c z`.
    fn as_linear(&self) -> Option<Complex64> {
        let nonzero: Vec<usize> = (0..self.coeffs.len()).filter(|&k| self.coeffs[k] != ZERO).collect();
        match nonzero.as_slice() {
            [] => Some(ZERO),
            [1] => Some(self.coeffs[1]),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShearDirection {
    /// `h - g = phi`.
    Horizontal,
    /// `h + g = phi`.
    Vertical,
}

impl ShearDirection {
    fn sign(self) -> f64 {
        match self {
            ShearDirection::Horizontal => 1.0,
            ShearDirection::Vertical => -1.0,
        }
    }
}

pub fn shear_horizontal(phi: &AnalyticSeed, w: &PolyDilatation) -> Result<HarmonicMap> {
    shear(phi, w, ShearDirection::Horizontal)
}

pub fn shear_vertical(phi: &AnalyticSeed, w: &PolyDilatation) -> Result<HarmonicMap> {
    shear(phi, w, ShearDirection::Vertical)
}

/// Shears `phi` with dilatation `w`: `h -+ g = phi` and `g' = w h'`, so
/// `h' = phi' / (1 -+ w)`, expanded as a truncated geometric series.
pub fn shear(phi: &AnalyticSeed, w: &PolyDilatation, direction: ShearDirection) -> Result<HarmonicMap> {
    let s = direction.sign();
    for j in 1..=16 {
        let r = 0.99 * j as f64 / 16.0;
        for k in 0..64 {
            let z = Complex64::from_polar(r, 2.0 * PI * k as f64 / 64.0);
            let wz = w.eval(z);
            if wz.norm() >= 1.0 {
                return Err(Error::InvalidParameter(format!("|w({z})| = {} >= 1", wz.norm())));
            }
            if (ONE - wz * s).norm() < 1e-12 {
                return Err(Error::SingularPoint { z });
            }
        }
    }

    let order = phi.series.order();
    let dphi = phi.series.differentiate(1)?;
    // u = 1/(1 - s w): u_n (1 - s w_0) = [n = 0] + s sum_{k>=1} w_k u_{n-k}
    let lead = ONE - w.coeff(0) * s;
    let mut inv = Vec::with_capacity(dphi.order() + 1);
    for n in 0..=dphi.order() {
        let mut acc = if n == 0 { ONE } else { ZERO };
        for k in 1..=n {
            acc += w.coeff(k) * inv[n - k] * s;
        }
        inv.push(acc / lead);
    }
    let dh = dphi.mul(&TruncatedSeries::new(inv)?);
    let h = dh.integrate();
    let g = h.sub(&phi.series).scale(Complex64::new(s, 0.0));
    let kind = match direction {
        ShearDirection::Horizontal => "horizontal",
        ShearDirection::Vertical => "vertical",
    };
    let map = HarmonicMap::new(format!("shear_{kind}"), h, g)?;
    debug_assert_eq!(map.order(), order);

    // closed form survives when the only pole stays at z = 1
    let exact = match (&phi.law, w.as_linear()) {
        (Some(law), Some(c)) if c == ZERO => Some((law.clone(), CoefficientLaw::default())),
        (Some(law), Some(c)) if (c * s - ONE).norm() == 0.0 => {
            let h_law = law.derivative().partial_sums()?.integral()?;
            let g_law = h_law.sub(law).scale(Complex64::new(s, 0.0));
            Some((h_law, g_law))
        }
        _ => None,
    };
    match exact {
        Some((h_law, g_law)) => map.with_exact(&h_law, &g_law),
        None => Ok(map),
    }
}

/// Member of M(alpha) built from `h`: `b_1 = 0`, `b_{n+1} = n alpha a_n / (n+1)`.
/// The curvature condition on `h` is not checked here.
pub fn make_m_alpha_member(h: &AnalyticSeed, alpha: Complex64) -> Result<HarmonicMap> {
    check_alpha(alpha)?;
    let a = &h.series;
    let g = TruncatedSeries::from_fn(a.order(), |m| {
        if m < 2 {
            ZERO
        } else {
            let n = (m - 1) as f64;
            alpha * a.coeff(m - 1) * n / (n + 1.0)
        }
    })?;
    let map = HarmonicMap::new(format!("m_alpha:{},{}", alpha.re, alpha.im), a.clone(), g)?;
    match &h.law {
        Some(law) => {
            let g_law = law.derivative().times_z()?.integral()?.scale(alpha);
            map.with_exact(law, &g_law)
        }
        None => Ok(map),
    }
}

/// Function expression accepted on the command line:
/// `name[:re,im]` or `conv(left,right)`.
#[derive(Debug, Clone, PartialEq)]
pub enum FunctionExpr {
    Named(CatalogEntry),
    Identity,
    Conv(Box<FunctionExpr>, Box<FunctionExpr>),
}

impl FunctionExpr {
    pub fn build(&self, order: usize) -> Result<HarmonicMap> {
        match self {
            FunctionExpr::Named(entry) => make_named(entry, order),
            FunctionExpr::Identity => HarmonicMap::from_laws(
                "identity",
                &CoefficientLaw::identity(),
                &CoefficientLaw::default(),
                order,
            ),
            FunctionExpr::Conv(a, b) => {
                let left = a.build(order)?;
                let right = b.build(order)?;
                Ok(convolution::hadamard(&left, &right)?.product)
            }
        }
    }

    /// `alpha` of the M(alpha) family the expression belongs to, if known.
    pub fn alpha(&self) -> Option<Complex64> {
        match self {
            FunctionExpr::Named(e) => e.alpha(),
            FunctionExpr::Identity => Some(ZERO),
            FunctionExpr::Conv(..) => None,
        }
    }
}

impl fmt::Display for FunctionExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctionExpr::Named(e) => write!(f, "{}", e.name()),
            FunctionExpr::Identity => write!(f, "identity"),
            FunctionExpr::Conv(a, b) => write!(f, "conv({a},{b})"),
        }
    }
}

fn parse_complex(s: &str) -> Result<Complex64> {
    let (re, im) = s
        .split_once(',')
        .ok_or_else(|| Error::Parse(format!("expected <re>,<im>, got `{s}`")))?;
    let parse = |t: &str| {
        t.trim()
            .parse::<f64>()
            .map_err(|e| Error::Parse(format!("bad number `{t}`: {e}")))
    };
    Ok(Complex64::new(parse(re)?, parse(im)?))
}

impl FromStr for FunctionExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix("conv(").and_then(|t| t.strip_suffix(')')) {
            let mut depth = 0usize;
            let mut split = None;
            for (i, ch) in inner.char_indices() {
                match ch {
                    '(' => depth += 1,
                    ')' => depth = depth.saturating_sub(1),
                    ',' if depth == 0 && is_boundary(inner, i) => {
                        split = Some(i);
                        break;
                    }
                    _ => {}
                }
            }
            let i = split.ok_or_else(|| Error::Parse(format!("conv needs two arguments: `{s}`")))?;
            let left = inner[..i].parse()?;
            let right = inner[i + 1..].parse()?;
            return Ok(FunctionExpr::Conv(Box::new(left), Box::new(right)));
        }
        let (name, param) = match s.split_once(':') {
            Some((n, p)) => (n, Some(parse_complex(p)?)),
            None => (s, None),
        };
        let entry = match (name, param) {
            ("f_alpha", Some(a)) => CatalogEntry::FAlpha(a),
            ("g_alpha", Some(a)) => CatalogEntry::GAlpha(a),
            ("L", None) => CatalogEntry::L,
            ("F", None) => CatalogEntry::F,
            ("example21", None) => CatalogEntry::Example21,
            ("example22", None) => CatalogEntry::Example22,
            ("identity", None) => return Ok(FunctionExpr::Identity),
            _ => {
                return Err(Error::Unknown {
                    what: "function",
                    name: s.to_string(),
                })
            }
        };
        Ok(FunctionExpr::Named(entry))
    }
}

/// A top-level comma separates the two `conv` arguments unless it sits
/// inside a `name:re,im` parameter.
fn is_boundary(inner: &str, comma: usize) -> bool {
    let before = &inner[..comma];
    let segment = before.rsplit([',', '(', ')']).next().unwrap_or(before);
    !segment.contains(':')
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Generator;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn f_alpha_coefficients() {
        let f = make_named(&CatalogEntry::FAlpha(c(0.0, 1.0)), 64).unwrap();
        assert!((f.h().coeff(3) - c(2.0, 0.0)).norm() < 1e-14);
        assert!((f.g().coeff(3) - c(0.0, 1.0)).norm() < 1e-14);
        assert_eq!(f.g().coeff(1), ZERO);
        for n in 2..=64 {
            assert!((f.h().coeff(n).norm() - (n as f64 + 1.0) / 2.0).abs() < 1e-12);
            assert!((f.g().coeff(n).norm() - (n as f64 - 1.0) / 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn example22_coefficients() {
        let f = make_named(&CatalogEntry::Example22, 32).unwrap();
        for n in 1..=32 {
            assert!((f.g().coeff(n) - c(1.0 - 1.0 / n as f64, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn l_dilatation() {
        let l = make_named(&CatalogEntry::L, 64).unwrap();
        let z = c(0.0, 0.2);
        assert!((l.dilatation(z).unwrap() - (-z)).norm() < 1e-12);
        let z = c(-0.6, 0.5);
        assert!((l.dilatation(z).unwrap() + z).norm() < 1e-9);
    }

    #[test]
    fn invalid_alpha_and_order() {
        assert!(make_named(&CatalogEntry::FAlpha(c(1.0, 1.0)), 64).is_err());
        assert!(make_named(&CatalogEntry::GAlpha(c(0.0, 2.0)), 64).is_err());
        assert!(matches!(make_named(&CatalogEntry::F, 4), Err(Error::OrderTooSmall { .. })));
    }

    #[test]
    fn shear_recovers_f_and_l() {
        let l = AnalyticSeed::half_plane(64).unwrap();
        let f_h = shear_horizontal(&l, &PolyDilatation::monomial(ONE, 1)).unwrap();
        let big_f = make_named(&CatalogEntry::F, 64).unwrap();
        assert!(f_h.h().max_abs_diff(big_f.h()) < 1e-12);
        assert!(f_h.g().max_abs_diff(big_f.g()) < 1e-12);
        assert!(f_h.exact().is_some());

        let f_v = shear_vertical(&l, &PolyDilatation::monomial(-ONE, 1)).unwrap();
        let big_l = make_named(&CatalogEntry::L, 64).unwrap();
        assert!(f_v.h().max_abs_diff(big_l.h()) < 1e-12);
        assert!(f_v.g().max_abs_diff(big_l.g()) < 1e-12);
        for n in 1..=64 {
            assert!((f_v.h().coeff(n) - c((n as f64 + 1.0) / 2.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn shear_with_zero_dilatation() {
        let l = AnalyticSeed::half_plane(32).unwrap();
        for f in [
            shear_horizontal(&l, &PolyDilatation::zero()).unwrap(),
            shear_vertical(&l, &PolyDilatation::zero()).unwrap(),
        ] {
            assert!(f.h().max_abs_diff(&l.series) < 1e-14);
            assert!(f.g().coeffs().iter().all(|c| c.norm() < 1e-14));
        }
    }

    #[test]
    fn shear_dilatation_roundtrip() {
        let l = AnalyticSeed::half_plane(128).unwrap();
        let w = PolyDilatation::rotated_power(PI / 3.0, 2);
        let f = shear_vertical(&l, &w).unwrap();
        assert!(f.exact().is_none());
        for z in [c(0.1, 0.3), c(-0.4, -0.2), c(0.5, 0.0)] {
            assert!((f.dilatation(z).unwrap() - w.eval(z)).norm() < 1e-9);
        }
        assert!((f.h().add(f.g())).max_abs_diff(&l.series) < 1e-12);
    }

    #[test]
    fn shear_rejects_large_dilatation() {
        let l = AnalyticSeed::half_plane(16).unwrap();
        let w = PolyDilatation::monomial(c(2.0, 0.0), 1);
        assert!(shear_horizontal(&l, &w).is_err());
    }

    #[test]
    fn m_alpha_members() {
        let l = AnalyticSeed::half_plane(40).unwrap();
        let f = make_m_alpha_member(&l, ONE).unwrap();
        let ex22 = make_named(&CatalogEntry::Example22, 40).unwrap();
        assert!(f.g().max_abs_diff(ex22.g()) < 1e-14);
        let z_far = Complex64::from_polar(0.95, 2.0);
        let a = f.evaluate_f(z_far).unwrap();
        let b = ex22.evaluate_f(z_far).unwrap();
        assert!((a - b).norm() < 1e-12);

        let id = AnalyticSeed::from_law(CoefficientLaw::identity(), 16).unwrap();
        let alpha = c(0.3, -0.4);
        let ga = make_m_alpha_member(&id, alpha).unwrap();
        assert!((ga.g().coeff(2) - alpha / 2.0).norm() < 1e-15);
        assert!(make_m_alpha_member(&id, ZERO).unwrap().g().coeffs().iter().all(|c| *c == ZERO));
    }

    #[test]
    fn m_alpha_member_from_series_only() {
        let s = TruncatedSeries::generator(Generator::HalfPlaneL, 20).unwrap();
        let f = make_m_alpha_member(&AnalyticSeed::from_series(s), c(0.0, 1.0)).unwrap();
        assert!(f.exact().is_none());
        assert!((f.g().coeff(3) - c(0.0, 2.0 / 3.0)).norm() < 1e-15);
    }

    #[test]
    fn parse_expressions() {
        let e: FunctionExpr = "f_alpha:0,1".parse().unwrap();
        assert_eq!(e, FunctionExpr::Named(CatalogEntry::FAlpha(c(0.0, 1.0))));
        let e: FunctionExpr = "conv(L,L)".parse().unwrap();
        assert!(matches!(e, FunctionExpr::Conv(..)));
        let e: FunctionExpr = "conv(f_alpha:0,1,f_alpha:0,-1)".parse().unwrap();
        assert_eq!(e.to_string(), "conv(f_alpha:0,1,f_alpha:0,-1)");
        let e: FunctionExpr = "conv(conv(L,F),g_alpha:0.5,0)".parse().unwrap();
        assert_eq!(e.to_string(), "conv(conv(L,F),g_alpha:0.5,0)");
        assert!("nope".parse::<FunctionExpr>().is_err());
        assert!("f_alpha".parse::<FunctionExpr>().is_err());
        assert!("conv(L)".parse::<FunctionExpr>().is_err());
    }
}
