//! Exact coefficient laws and the closed-form evaluators they induce.
//!
//! Every analytic part in the catalog has Taylor coefficients of the shape
//!
//! ```text
//! c_n = Q(n) + lambda / n + e_n        (lambda term for n >= 1 only)
//! ```
//!
//! with `Q` a polynomial in `n` and `e` a finite correction sequence.
//! Such laws are closed under sums, differentiation, integration (when
//! `lambda = 0`), multiplication by `z`, partial sums and Hadamard products
//! (when at most one factor carries `lambda`). The generating function is
//!
//! ```text
//! sum_j beta_j z^j / (1-z)^(j+1)  -  lambda log(1-z)  +  sum_n e_n z^n
//! ```
//!
//! where `beta_j` are the forward differences of `Q` at 0, so an exact law
//! evaluates anywhere in the disk without truncation.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::series::{check_disk, Jet, TruncatedSeries};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Polynomial in the coefficient index `n`, monomial basis.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct IndexPoly {
    coeffs: Vec<Complex64>,
}

impl IndexPoly {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.last().is_some_and(|c| *c == ZERO) {
            coeffs.pop();
        }
        IndexPoly { coeffs }
    }

    pub fn zero() -> Self {
        IndexPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(vec![c])
    }

    /// `a + b n`.
    pub fn linear(a: Complex64, b: Complex64) -> Self {
        Self::new(vec![a, b])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn eval(&self, n: f64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, c| acc * n + c)
    }

    pub fn add(&self, other: &IndexPoly) -> IndexPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            (0..len)
                .map(|i| {
                    self.coeffs.get(i).copied().unwrap_or(ZERO)
                        + other.coeffs.get(i).copied().unwrap_or(ZERO)
                })
                .collect(),
        )
    }

    pub fn scale(&self, s: Complex64) -> IndexPoly {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, other: &IndexPoly) -> IndexPoly {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// `(P(n) - P(0)) / n`, an exact division.
    pub fn div_index(&self) -> IndexPoly {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::new(self.coeffs[1..].to_vec())
    }

    /// `P(n + shift)` for an integer shift.
    pub fn shifted(&self, shift: i64) -> IndexPoly {
        if self.is_zero() {
            return Self::zero();
        }
        let values: Vec<Complex64> = (0..=self.degree())
            .map(|k| self.eval(k as f64 + shift as f64))
            .collect();
        Self::interpolate(&values)
    }

    /// `sum_{k=0}^{n} P(k)`, one degree higher.
    pub fn prefix_sum(&self) -> IndexPoly {
        if self.is_zero() {
            return Self::zero();
        }
        let mut acc = ZERO;
        let values: Vec<Complex64> = (0..=self.degree() + 1)
            .map(|k| {
                acc += self.eval(k as f64);
                acc
            })
            .collect();
        Self::interpolate(&values)
    }

    /// Forward differences `Delta^j P(0)`, i.e. the coefficients of `P` in
    /// the binomial basis `C(n, j)`.
    pub fn newton_coeffs(&self) -> Vec<Complex64> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut table: Vec<Complex64> = (0..=self.degree()).map(|k| self.eval(k as f64)).collect();
        forward_differences(&mut table);
        table
    }

    /// Unique polynomial of degree `< values.len()` through `(k, values[k])`.
    pub fn interpolate(values: &[Complex64]) -> IndexPoly {
        let mut newton = values.to_vec();
        forward_differences(&mut newton);
        // expand sum_j beta_j C(n, j) into monomials
        let mut out = vec![ZERO; values.len()];
        let mut falling = vec![ONE]; // n (n-1) ... (n-j+1) / j!
        for (j, beta) in newton.iter().enumerate() {
            if j > 0 {
                let mut next = vec![ZERO; falling.len() + 1];
                let back = (j - 1) as f64;
                for (i, c) in falling.iter().enumerate() {
                    next[i + 1] += c / j as f64;
                    next[i] -= c * back / j as f64;
                }
                falling = next;
            }
            for (i, c) in falling.iter().enumerate() {
                out[i] += beta * c;
            }
        }
        Self::new(out)
    }
}

fn forward_differences(table: &mut [Complex64]) {
    let len = table.len();
    for j in 1..len {
        for k in (j..len).rev() {
            table[k] = table[k] - table[k - 1];
        }
    }
}

/// Exact coefficient law `c_n = Q(n) + lambda/n + e_n`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CoefficientLaw {
    poly: IndexPoly,
    harmonic: Complex64,
    corrections: Vec<Complex64>,
}

impl CoefficientLaw {
    pub fn new(poly: IndexPoly, harmonic: Complex64, corrections: Vec<Complex64>) -> Self {
        CoefficientLaw {
            poly,
            harmonic,
            corrections,
        }
    }

    /// Law of a polynomial with the given coefficients.
    pub fn polynomial(coeffs: &[Complex64]) -> Self {
        Self::new(IndexPoly::zero(), ZERO, coeffs.to_vec())
    }

    /// `c_0 = 0`, `c_n = Q(n)` for `n >= 1`.
    pub fn from_index_poly(poly: IndexPoly) -> Self {
        let c0 = poly.eval(0.0);
        Self::new(poly, ZERO, vec![-c0])
    }

    pub fn half_plane() -> Self {
        Self::from_index_poly(IndexPoly::constant(ONE))
    }

    pub fn koebe() -> Self {
        Self::from_index_poly(IndexPoly::linear(ZERO, ONE))
    }

    pub fn log_one_minus_z() -> Self {
        Self::new(IndexPoly::zero(), -ONE, Vec::new())
    }

    pub fn identity() -> Self {
        Self::polynomial(&[ZERO, ONE])
    }

    pub fn poly(&self) -> &IndexPoly {
        &self.poly
    }

    /// Coefficient of `1/n` in the law.
    pub fn harmonic(&self) -> Complex64 {
        self.harmonic
    }

    pub fn corrections(&self) -> &[Complex64] {
        &self.corrections
    }

    fn law_part(&self, n: usize) -> Complex64 {
        let mut c = self.poly.eval(n as f64);
        if n >= 1 {
            c += self.harmonic / n as f64;
        }
        c
    }

    pub fn coefficient(&self, n: usize) -> Complex64 {
        self.law_part(n) + self.corrections.get(n).copied().unwrap_or(ZERO)
    }

    pub fn to_series(&self, order: usize) -> Result<TruncatedSeries> {
        TruncatedSeries::from_fn(order, |n| self.coefficient(n))
    }

    pub fn add(&self, other: &CoefficientLaw) -> CoefficientLaw {
        let len = self.corrections.len().max(other.corrections.len());
        let corrections = (0..len)
            .map(|n| {
                self.corrections.get(n).copied().unwrap_or(ZERO)
                    + other.corrections.get(n).copied().unwrap_or(ZERO)
            })
            .collect();
        Self::new(
            self.poly.add(&other.poly),
            self.harmonic + other.harmonic,
            corrections,
        )
    }

    pub fn scale(&self, s: Complex64) -> CoefficientLaw {
        Self::new(
            self.poly.scale(s),
            self.harmonic * s,
            self.corrections.iter().map(|c| c * s).collect(),
        )
    }

    pub fn sub(&self, other: &CoefficientLaw) -> CoefficientLaw {
        self.add(&other.scale(-ONE))
    }

    /// Law of the derivative: `c_n -> (n+1) c_{n+1}`.
    pub fn derivative(&self) -> CoefficientLaw {
        let n_plus_one = IndexPoly::linear(ONE, ONE);
        let poly = n_plus_one
            .mul(&self.poly.shifted(1))
            .add(&IndexPoly::constant(self.harmonic));
        let corrections = self
            .corrections
            .iter()
            .enumerate()
            .skip(1)
            .map(|(n, c)| c * n as f64)
            .collect();
        Self::new(poly, ZERO, corrections)
    }

    /// Antiderivative vanishing at 0: `c_n -> c_{n-1}/n`, `c_0 = 0`.
    pub fn integral(&self) -> Result<CoefficientLaw> {
        if self.harmonic != ZERO {
            return Err(Error::NotRepresentable("integral of a law with a 1/n term"));
        }
        // Q(n-1)/n = (P(n) - P(0))/n + P(0)/n with P(n) = Q(n-1)
        let shifted = self.poly.shifted(-1);
        let harmonic = shifted.eval(0.0);
        let poly = shifted.div_index();
        let mut corrections = vec![-poly.eval(0.0)];
        corrections.extend(
            self.corrections
                .iter()
                .enumerate()
                .map(|(k, c)| c / (k as f64 + 1.0)),
        );
        Ok(Self::new(poly, harmonic, corrections))
    }

    /// Multiplication by `z`: `c_n -> c_{n-1}`, `c_0 = 0`.
    pub fn times_z(&self) -> Result<CoefficientLaw> {
        if self.harmonic != ZERO {
            return Err(Error::NotRepresentable("z times a law with a 1/n term"));
        }
        let poly = self.poly.shifted(-1);
        let mut corrections = vec![-poly.eval(0.0)];
        corrections.extend_from_slice(&self.corrections);
        Ok(Self::new(poly, ZERO, corrections))
    }

    /// Multiplication by `1/(1-z)`: `c_n -> c_0 + ... + c_n`.
    pub fn partial_sums(&self) -> Result<CoefficientLaw> {
        if self.harmonic != ZERO {
            return Err(Error::NotRepresentable("partial sums of a law with a 1/n term"));
        }
        let total: Complex64 = self.corrections.iter().sum();
        let poly = self.poly.prefix_sum().add(&IndexPoly::constant(total));
        let mut running = ZERO;
        let corrections = self
            .corrections
            .iter()
            .map(|c| {
                running += c;
                running - total
            })
            .collect();
        Ok(Self::new(poly, ZERO, corrections))
    }

    /// Coefficientwise product of two laws.
    pub fn hadamard(&self, other: &CoefficientLaw) -> Result<CoefficientLaw> {
        if self.harmonic != ZERO && other.harmonic != ZERO {
            return Err(Error::NotRepresentable("Hadamard product of two 1/n laws"));
        }
        // (Q1 + l1/n)(Q2 + l2/n) = Q1 Q2 + l1 (Q2 - Q2(0))/n + l2 (Q1 - Q1(0))/n
        //                         + (l1 Q2(0) + l2 Q1(0))/n
        let poly = self
            .poly
            .mul(&other.poly)
            .add(&other.poly.div_index().scale(self.harmonic))
            .add(&self.poly.div_index().scale(other.harmonic));
        let harmonic = self.harmonic * other.poly.eval(0.0) + other.harmonic * self.poly.eval(0.0);
        let mut law = Self::new(poly, harmonic, Vec::new());
        let len = self.corrections.len().max(other.corrections.len()).max(1);
        law.corrections = (0..len)
            .map(|n| self.coefficient(n) * other.coefficient(n) - law.law_part(n))
            .collect();
        Ok(law)
    }

    /// Value of the generating function at `z`, `|z| < 1`.
    pub fn value(&self, z: Complex64) -> Result<Complex64> {
        check_disk(z)?;
        Ok(self.value_unchecked(z, &self.poly.newton_coeffs()))
    }

    fn value_unchecked(&self, z: Complex64, newton: &[Complex64]) -> Complex64 {
        let q = ONE / (ONE - z);
        let t = z * q;
        let rational = newton.iter().rev().fold(ZERO, |acc, b| acc * t + b) * q;
        let log_part = if self.harmonic == ZERO {
            ZERO
        } else {
            -self.harmonic * (ONE - z).ln()
        };
        let finite = self.corrections.iter().rev().fold(ZERO, |acc, c| acc * z + c);
        rational + log_part + finite
    }

    /// Caches the derivative laws for repeated jet evaluation.
    pub fn evaluator(&self) -> LawEvaluator {
        let d1 = self.derivative();
        let d2 = d1.derivative();
        let newton = [
            self.poly.newton_coeffs(),
            d1.poly.newton_coeffs(),
            d2.poly.newton_coeffs(),
        ];
        LawEvaluator {
            laws: [self.clone(), d1, d2],
            newton,
        }
    }
}

/// Closed-form evaluator of an analytic function and its first two derivatives.
#[derive(Debug, Clone, PartialEq)]
pub struct LawEvaluator {
    laws: [CoefficientLaw; 3],
    newton: [Vec<Complex64>; 3],
}

impl LawEvaluator {
    pub fn law(&self) -> &CoefficientLaw {
        &self.laws[0]
    }

    pub fn jet(&self, z: Complex64) -> Result<Jet> {
        check_disk(z)?;
        Ok(self.jet_unchecked(z))
    }

    pub(crate) fn jet_unchecked(&self, z: Complex64) -> Jet {
        Jet::new(
            self.laws[0].value_unchecked(z, &self.newton[0]),
            self.laws[1].value_unchecked(z, &self.newton[1]),
            self.laws[2].value_unchecked(z, &self.newton[2]),
        )
    }
}
