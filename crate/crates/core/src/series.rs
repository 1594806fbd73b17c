//! Truncated complex power series.
//!
//! A [`TruncatedSeries`] of order `N` stores the Taylor coefficients
//! `c_0..=c_N` of an analytic function at the origin. Binary operations
//! never extend the order: sums and products truncate to the smaller input.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Value together with first and second derivative at a point.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Jet {
    pub value: Complex64,
    pub d1: Complex64,
    pub d2: Complex64,
}

impl Jet {
    pub fn new(value: Complex64, d1: Complex64, d2: Complex64) -> Self {
        Jet { value, d1, d2 }
    }

    /// `self + scale * other`, derivative by derivative.
    pub fn add_scaled(self, scale: Complex64, other: Jet) -> Jet {
        Jet {
            value: self.value + scale * other.value,
            d1: self.d1 + scale * other.d1,
            d2: self.d2 + scale * other.d2,
        }
    }

    pub fn max_abs_diff(&self, other: &Jet) -> f64 {
        (self.value - other.value)
            .norm()
            .max((self.d1 - other.d1).norm())
            .max((self.d2 - other.d2).norm())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruncatedSeries {
    coeffs: Vec<Complex64>,
}

/// Elementary analytic functions with known expansions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Generator {
    /// `l(z) = z/(1-z)`, the conformal half-plane map.
    HalfPlaneL,
    /// `k(z) = z/(1-z)^2`.
    KoebeK,
    /// `log(1-z)` on the principal branch.
    LogOneMinusZ,
    /// `z`.
    Identity,
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "half_plane_l" | "l" => Ok(Generator::HalfPlaneL),
            "koebe_k" | "k" => Ok(Generator::KoebeK),
            "log_one_minus_z" | "log" => Ok(Generator::LogOneMinusZ),
            "identity" | "z" => Ok(Generator::Identity),
            _ => Err(Error::Unknown {
                what: "generator",
                name: s.to_string(),
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CombineOp {
    Add,
    Sub,
    Mul,
}

impl TruncatedSeries {
    /// Builds a series from `c_0..=c_N`. Requires `N >= 1`.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::OrderTooSmall {
                min: 1,
                got: coeffs.len().saturating_sub(1),
            });
        }
        Ok(TruncatedSeries { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero(order: usize) -> Result<Self> {
        Self::new(vec![ZERO; order + 1])
    }

    /// Builds a series of the given order from a coefficient rule `n -> c_n`.
    pub fn from_fn(order: usize, f: impl Fn(usize) -> Complex64) -> Result<Self> {
        Self::new((0..=order).map(f).collect())
    }

    /// Pads (with zeros) or truncates a short coefficient list to `order`.
    pub fn from_prefix(prefix: &[Complex64], order: usize) -> Result<Self> {
        Self::from_fn(order, |n| prefix.get(n).copied().unwrap_or(ZERO))
    }

    pub fn generator(kind: Generator, order: usize) -> Result<Self> {
        if order < 1 {
            return Err(Error::OrderTooSmall { min: 1, got: order });
        }
        Self::from_fn(order, |n| {
            let n_f = n as f64;
            let c = match (kind, n) {
                (_, 0) => 0.0,
                (Generator::HalfPlaneL, _) => 1.0,
                (Generator::KoebeK, _) => n_f,
                (Generator::LogOneMinusZ, _) => -1.0 / n_f,
                (Generator::Identity, 1) => 1.0,
                (Generator::Identity, _) => 0.0,
            };
            Complex64::new(c, 0.0)
        })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// `c_n`, or zero beyond the truncation order.
    pub fn coeff(&self, n: usize) -> Complex64 {
        self.coeffs.get(n).copied().unwrap_or(ZERO)
    }

    pub fn truncate(&self, order: usize) -> Result<Self> {
        Self::from_fn(order.min(self.order()), |n| self.coeffs[n])
    }

    pub fn scale(&self, s: Complex64) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn conj_coeffs(&self) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| c.conj()).collect(),
        }
    }

    /// Coefficientwise add/sub or Cauchy product; `scalar` premultiplies `b`.
    pub fn combine(
        a: &TruncatedSeries,
        b: &TruncatedSeries,
        op: CombineOp,
        scalar: Option<Complex64>,
    ) -> TruncatedSeries {
        let s = scalar.unwrap_or(ONE);
        let order = a.order().min(b.order());
        let coeffs = match op {
            CombineOp::Add => (0..=order).map(|n| a.coeffs[n] + s * b.coeffs[n]).collect(),
            CombineOp::Sub => (0..=order).map(|n| a.coeffs[n] - s * b.coeffs[n]).collect(),
            CombineOp::Mul => (0..=order)
                .map(|n| {
                    let c: Complex64 = (0..=n).map(|k| a.coeffs[k] * b.coeffs[n - k]).sum();
                    s * c
                })
                .collect(),
        };
        TruncatedSeries { coeffs }
    }

    pub fn add(&self, other: &TruncatedSeries) -> TruncatedSeries {
        Self::combine(self, other, CombineOp::Add, None)
    }

    pub fn sub(&self, other: &TruncatedSeries) -> TruncatedSeries {
        Self::combine(self, other, CombineOp::Sub, None)
    }

    pub fn mul(&self, other: &TruncatedSeries) -> TruncatedSeries {
        Self::combine(self, other, CombineOp::Mul, None)
    }

    /// Coefficientwise (Hadamard) product, truncated to the smaller order.
    pub fn hadamard(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(other.order());
        TruncatedSeries {
            coeffs: (0..=order).map(|n| self.coeffs[n] * other.coeffs[n]).collect(),
        }
    }

    /// `times`-th derivative; the order drops by `times`.
    pub fn differentiate(&self, times: usize) -> Result<TruncatedSeries> {
        if !(1..=2).contains(&times) {
            return Err(Error::InvalidParameter(format!(
                "differentiate supports 1 or 2 derivatives, got {times}"
            )));
        }
        if self.order() < times + 1 {
            return Err(Error::OrderTooSmall {
                min: times + 1,
                got: self.order(),
            });
        }
        let order = self.order() - times;
        Self::from_fn(order, |n| {
            let falling: f64 = (n + 1..=n + times).map(|k| k as f64).product();
            self.coeffs[n + times] * falling
        })
    }

    /// Termwise antiderivative vanishing at 0; the order grows by one.
    pub fn integrate(&self) -> TruncatedSeries {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(ZERO);
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| c / (n as f64 + 1.0)),
        );
        TruncatedSeries { coeffs }
    }

    /// Multiplies by `z`, dropping the top coefficient so the order is kept.
    pub fn shift_up(&self) -> TruncatedSeries {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        coeffs.push(ZERO);
        coeffs.extend_from_slice(&self.coeffs[..self.coeffs.len() - 1]);
        TruncatedSeries { coeffs }
    }

    /// Horner evaluation of the truncated polynomial; requires `|z| < 1`.
    pub fn evaluate(&self, z: Complex64) -> Result<Complex64> {
        check_disk(z)?;
        Ok(self.eval_unchecked(z))
    }

    pub(crate) fn eval_unchecked(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, c| acc * z + c)
    }

    /// Value, first and second derivative of the truncated polynomial.
    pub fn jet(&self, z: Complex64) -> Result<Jet> {
        check_disk(z)?;
        Ok(self.jet_unchecked(z))
    }

    pub(crate) fn jet_unchecked(&self, z: Complex64) -> Jet {
        let (mut p, mut d1, mut d2) = (ZERO, ZERO, ZERO);
        for c in self.coeffs.iter().rev() {
            d2 = d2 * z + d1 * 2.0;
            d1 = d1 * z + p;
            p = p * z + c;
        }
        Jet::new(p, d1, d2)
    }

    /// Largest coefficient deviation over the common orders.
    pub fn max_abs_diff(&self, other: &TruncatedSeries) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.norm() == 0.0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})z")?,
                _ => write!(f, "({c})z^{n}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(z^{})", self.order() + 1)
    }
}

pub(crate) fn check_disk(z: Complex64) -> Result<()> {
    if z.norm() < 1.0 && z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::OutsideDisk { z })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn generator_tables() {
        let l = TruncatedSeries::generator(Generator::HalfPlaneL, 3).unwrap();
        assert_eq!(l.coeffs(), &[c(0.0), c(1.0), c(1.0), c(1.0)]);
        let k = TruncatedSeries::generator(Generator::KoebeK, 4).unwrap();
        assert_eq!(k.coeffs(), &[c(0.0), c(1.0), c(2.0), c(3.0), c(4.0)]);
        let lg = TruncatedSeries::generator(Generator::LogOneMinusZ, 3).unwrap();
        assert_eq!(lg.coeffs(), &[c(0.0), c(-1.0), c(-0.5), c(-1.0 / 3.0)]);
        let id = TruncatedSeries::generator(Generator::Identity, 2).unwrap();
        assert_eq!(id.coeffs(), &[c(0.0), c(1.0), c(0.0)]);
    }

    #[test]
    fn generator_errors() {
        assert!(matches!(
            TruncatedSeries::generator(Generator::KoebeK, 0),
            Err(Error::OrderTooSmall { .. })
        ));
        assert!("cosine".parse::<Generator>().is_err());
        assert_eq!("koebe_k".parse::<Generator>().unwrap(), Generator::KoebeK);
    }

    #[test]
    fn combine_examples() {
        let l = TruncatedSeries::generator(Generator::HalfPlaneL, 8).unwrap();
        let k = TruncatedSeries::generator(Generator::KoebeK, 8).unwrap();
        assert_eq!(l.add(&k).coeff(2), c(3.0));

        let id = TruncatedSeries::generator(Generator::Identity, 5).unwrap();
        let sq = id.mul(&id);
        assert_eq!(sq.coeffs(), &[c(0.0), c(0.0), c(1.0), c(0.0), c(0.0), c(0.0)]);

        assert!(l.sub(&l).coeffs().iter().all(|c| c.norm() == 0.0));

        let scaled = TruncatedSeries::combine(&l, &k, CombineOp::Add, Some(c(2.0)));
        assert_eq!(scaled.coeff(3), c(7.0));
    }

    #[test]
    fn products_truncate_to_min_order() {
        let a = TruncatedSeries::generator(Generator::HalfPlaneL, 10).unwrap();
        let b = TruncatedSeries::generator(Generator::HalfPlaneL, 4).unwrap();
        assert_eq!(a.mul(&b).order(), 4);
        assert_eq!(a.add(&b).order(), 4);
        // l * l = z^2/(1-z)^2, coefficients n-1
        let p = a.mul(&b);
        assert_eq!(p.coeffs(), &[c(0.0), c(0.0), c(1.0), c(2.0), c(3.0)]);
    }

    #[test]
    fn differentiate_examples() {
        let l = TruncatedSeries::generator(Generator::HalfPlaneL, 6).unwrap();
        let dl = l.differentiate(1).unwrap();
        assert_eq!(dl.order(), 5);
        for n in 0..=5 {
            assert_eq!(dl.coeff(n), c(n as f64 + 1.0));
        }
        let id = TruncatedSeries::generator(Generator::Identity, 6).unwrap();
        assert!(id.differentiate(2).unwrap().coeffs().iter().all(|c| c.norm() == 0.0));

        let lg = TruncatedSeries::generator(Generator::LogOneMinusZ, 10).unwrap();
        for v in lg.differentiate(1).unwrap().coeffs() {
            assert!((v - c(-1.0)).norm() < 1e-15);
        }
        assert!(TruncatedSeries::generator(Generator::Identity, 1)
            .unwrap()
            .differentiate(1)
            .is_err());
        assert!(l.differentiate(3).is_err());
    }

    #[test]
    fn evaluate_examples() {
        let l = TruncatedSeries::generator(Generator::HalfPlaneL, 50).unwrap();
        let v = l.evaluate(c(0.5)).unwrap();
        assert!((v - c(1.0)).norm() <= 0.5f64.powi(50) / 0.5 + 1e-15);

        let k = TruncatedSeries::generator(Generator::KoebeK, 60).unwrap();
        let v = k.evaluate(c(0.3)).unwrap();
        assert!((v.re - 0.3 / 0.49).abs() < 1e-12);

        let s = TruncatedSeries::from_real(&[2.5, 1.0, 3.0]).unwrap();
        assert_eq!(s.evaluate(c(0.0)).unwrap(), c(2.5));

        assert!(matches!(
            s.evaluate(Complex64::new(0.6, 0.8)),
            Err(Error::OutsideDisk { .. })
        ));
    }

    #[test]
    fn jet_matches_differentiated_series() {
        let k = TruncatedSeries::generator(Generator::KoebeK, 30).unwrap();
        let z = Complex64::new(0.2, -0.3);
        let jet = k.jet(z).unwrap();
        let d1 = k.differentiate(1).unwrap().evaluate(z).unwrap();
        let d2 = k.differentiate(2).unwrap().evaluate(z).unwrap();
        assert!((jet.d1 - d1).norm() < 1e-13);
        assert!((jet.d2 - d2).norm() < 1e-12);
    }

    #[test]
    fn integrate_inverts_differentiate() {
        let l = TruncatedSeries::generator(Generator::HalfPlaneL, 12).unwrap();
        let back = l.differentiate(1).unwrap().integrate();
        assert_eq!(back.order(), l.order());
        assert!(back.max_abs_diff(&l) < 1e-15);
    }

    #[test]
    fn too_short_rejected() {
        assert!(TruncatedSeries::new(vec![c(1.0)]).is_err());
    }
}
