//! Harmonic maps `f = h + conj(g)` on the unit disk.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::closed_form::{CoefficientLaw, LawEvaluator};
use crate::error::{Error, Result};
use crate::series::{check_disk, Jet, TruncatedSeries};
use crate::tolerance;

/// Which representation answers a point evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Route {
    /// Closed forms above the switch radius, series below it.
    #[default]
    Auto,
    /// Always the truncated series.
    Series,
    /// Closed forms whenever the map has them.
    ExactPreferred,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExactParts {
    pub h: LawEvaluator,
    pub g: LawEvaluator,
}

/// `f = h + conj(g)` with `h(0) = 0`, `h'(0) = 1`; `g` is stored analytic.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicMap {
    h: TruncatedSeries,
    g: TruncatedSeries,
    exact: Option<Arc<ExactParts>>,
    label: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridNode {
    pub r: f64,
    pub theta: f64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SensePreservingReport {
    pub passed: bool,
    pub r_max: f64,
    pub grid: (usize, usize),
    pub min_jacobian: f64,
    pub first_violation: Option<GridNode>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InjectivityReport {
    pub n_samples: usize,
    pub min_separation: f64,
    pub min_image_distance: f64,
    pub closest_pair: Option<(Complex64, Complex64)>,
    /// Two well-separated preimages share an image (within `COLLISION_TOL`).
    pub collision: bool,
}

/// Image distance below which two samples count as the same point.
pub const COLLISION_TOL: f64 = 1e-9;

/// Default minimum preimage separation for the injectivity sampler.
pub const DEFAULT_SEPARATION: f64 = 0.05;

const MAX_INJECTIVITY_SAMPLES: usize = 2000;

impl HarmonicMap {
    pub fn new(label: impl Into<String>, h: TruncatedSeries, g: TruncatedSeries) -> Result<Self> {
        let (c0, c1) = (h.coeff(0), h.coeff(1));
        if c0.norm() > 1e-12 || (c1 - 1.0).norm() > 1e-12 {
            return Err(Error::Normalization(format!(
                "need h(0)=0 and h'(0)=1, got h(0)={c0}, h'(0)={c1}"
            )));
        }
        if g.coeff(0).norm() > 1e-12 {
            return Err(Error::Normalization(format!("need g(0)=0, got {}", g.coeff(0))));
        }
        Ok(HarmonicMap {
            h,
            g,
            exact: None,
            label: label.into(),
        })
    }

    /// Builds series and closed-form evaluators from two exact laws.
    pub fn from_laws(
        label: impl Into<String>,
        h: &CoefficientLaw,
        g: &CoefficientLaw,
        order: usize,
    ) -> Result<Self> {
        Self::new(label, h.to_series(order)?, g.to_series(order)?)?.with_exact(h, g)
    }

    /// Attaches closed forms after checking them against the series at 20
    /// pseudo-random points of `|z| <= 0.5`. The allowed gap is
    /// `EXACT_VS_SERIES` plus the truncated tail of the law at that point.
    pub fn with_exact(mut self, h: &CoefficientLaw, g: &CoefficientLaw) -> Result<Self> {
        let parts = ExactParts {
            h: h.evaluator(),
            g: g.evaluator(),
        };
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..20 {
            let z = Complex64::from_polar(0.5 * rng.gen::<f64>().sqrt(), rng.gen_range(0.0..2.0 * PI));
            for (law, ev, series) in [(h, &parts.h, &self.h), (g, &parts.g, &self.g)] {
                let residual = (ev.jet_unchecked(z).value - series.eval_unchecked(z)).norm();
                let tail: f64 = (series.order() + 1..series.order() + 400)
                    .map(|n| law.coefficient(n).norm() * z.norm().powi(n as i32))
                    .sum();
                if residual > tolerance::EXACT_VS_SERIES + tail {
                    return Err(Error::ExactMismatch { z, residual });
                }
            }
        }
        self.exact = Some(Arc::new(parts));
        Ok(self)
    }

    pub fn without_exact(mut self) -> Self {
        self.exact = None;
        self
    }

    pub fn relabel(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn h(&self) -> &TruncatedSeries {
        &self.h
    }

    pub fn g(&self) -> &TruncatedSeries {
        &self.g
    }

    pub fn exact(&self) -> Option<&ExactParts> {
        self.exact.as_deref()
    }

    pub fn order(&self) -> usize {
        self.h.order().min(self.g.order())
    }

    /// Jets of `h` and `g` at `z` through the requested route.
    pub fn jets(&self, z: Complex64, route: Route) -> Result<(Jet, Jet)> {
        check_disk(z)?;
        let use_exact = match route {
            Route::Series => false,
            Route::ExactPreferred => true,
            Route::Auto => z.norm() > tolerance::EXACT_SWITCH_RADIUS,
        };
        Ok(match (&self.exact, use_exact) {
            (Some(ex), true) => (ex.h.jet_unchecked(z), ex.g.jet_unchecked(z)),
            _ => (self.h.jet_unchecked(z), self.g.jet_unchecked(z)),
        })
    }

    pub fn evaluate_f(&self, z: Complex64) -> Result<Complex64> {
        self.evaluate_f_via(z, Route::Auto)
    }

    pub fn evaluate_f_via(&self, z: Complex64, route: Route) -> Result<Complex64> {
        let (h, g) = self.jets(z, route)?;
        Ok(h.value + g.value.conj())
    }

    /// `w = g'/h'`.
    pub fn dilatation(&self, z: Complex64) -> Result<Complex64> {
        self.dilatation_via(z, Route::Auto)
    }

    pub fn dilatation_via(&self, z: Complex64, route: Route) -> Result<Complex64> {
        let (h, g) = self.jets(z, route)?;
        if h.d1.norm() == 0.0 {
            return Err(Error::SingularPoint { z });
        }
        Ok(g.d1 / h.d1)
    }

    /// `|h'|^2 - |g'|^2`.
    pub fn jacobian(&self, z: Complex64) -> Result<f64> {
        let (h, g) = self.jets(z, Route::Auto)?;
        Ok(h.d1.norm_sqr() - g.d1.norm_sqr())
    }

    /// First and second derivative of `theta -> f(r e^{i theta})`.
    pub fn angular_derivatives(&self, r: f64, theta: f64) -> Result<(Complex64, Complex64)> {
        self.angular_derivatives_via(r, theta, Route::Auto)
    }

    pub fn angular_derivatives_via(
        &self,
        r: f64,
        theta: f64,
        route: Route,
    ) -> Result<(Complex64, Complex64)> {
        if !(r > 0.0 && r < 1.0) {
            return Err(Error::InvalidParameter(format!("radius {r} not in (0,1)")));
        }
        let z = Complex64::from_polar(r, theta);
        let (h, g) = self.jets(z, route)?;
        Ok(angular_from_jets(z, &h, &g))
    }

    /// Jacobian sign on the polar grid `r_j = r_max j / n_r`, `theta_k = 2 pi k / n_theta`.
    pub fn sense_preserving_check(&self, r_max: f64, grid: (usize, usize)) -> Result<SensePreservingReport> {
        let (n_r, n_theta) = grid;
        if !(r_max > 0.0 && r_max < 1.0) || n_r < 8 || n_theta < 8 {
            return Err(Error::InvalidParameter(format!(
                "sense-preserving grid needs 0 < r_max < 1 and dims >= 8, got {r_max}, {grid:?}"
            )));
        }
        let mut min_jacobian = f64::INFINITY;
        let mut first_violation = None;
        for j in 1..=n_r {
            let r = r_max * j as f64 / n_r as f64;
            for k in 0..n_theta {
                let theta = 2.0 * PI * k as f64 / n_theta as f64;
                let jac = self.jacobian(Complex64::from_polar(r, theta))?;
                min_jacobian = min_jacobian.min(jac);
                if jac <= 0.0 && first_violation.is_none() {
                    first_violation = Some(GridNode { r, theta, value: jac });
                }
            }
        }
        Ok(SensePreservingReport {
            passed: first_violation.is_none(),
            r_max,
            grid,
            min_jacobian,
            first_violation,
        })
    }

    /// Sunflower sample of `|z| <= r_max`; see [`HarmonicMap::injectivity_check`].
    pub fn injectivity_sample_check(&self, r_max: f64, n_samples: usize) -> Result<InjectivityReport> {
        self.injectivity_check(&sunflower(r_max, n_samples), DEFAULT_SEPARATION)
    }

    /// Smallest image distance over sample pairs at least `min_separation`
    /// apart. A collision disproves univalence; its absence proves nothing.
    pub fn injectivity_check(&self, samples: &[Complex64], min_separation: f64) -> Result<InjectivityReport> {
        if samples.len() > MAX_INJECTIVITY_SAMPLES {
            return Err(Error::InvalidParameter(format!(
                "at most {MAX_INJECTIVITY_SAMPLES} samples, got {}",
                samples.len()
            )));
        }
        let images = samples
            .iter()
            .map(|&z| self.evaluate_f(z))
            .collect::<Result<Vec<_>>>()?;
        let mut best = f64::INFINITY;
        let mut pair = None;
        for i in 0..samples.len() {
            for j in i + 1..samples.len() {
                if (samples[i] - samples[j]).norm() < min_separation {
                    continue;
                }
                let d = (images[i] - images[j]).norm();
                if d < best {
                    best = d;
                    pair = Some((samples[i], samples[j]));
                }
            }
        }
        Ok(InjectivityReport {
            n_samples: samples.len(),
            min_separation,
            min_image_distance: best,
            closest_pair: pair,
            collision: best < COLLISION_TOL,
        })
    }
}

/// `(d/dtheta f, d^2/dtheta^2 f)` at `z = r e^{i theta}` from the jets of `h` and `g`.
pub fn angular_from_jets(z: Complex64, h: &Jet, g: &Jet) -> (Complex64, Complex64) {
    let i = Complex64::i();
    let zh = z * h.d1;
    let zg = z * g.d1;
    let d1 = i * (zh - zg.conj());
    let d2 = -(zh + z * z * h.d2) - (zg + z * z * g.d2).conj();
    (d1, d2)
}

/// Quasi-uniform points in `|z| <= r_max` (Vogel spiral).
pub fn sunflower(r_max: f64, n: usize) -> Vec<Complex64> {
    let golden = PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|k| {
            let rho = r_max * ((k as f64 + 0.5) / n as f64).sqrt();
            Complex64::from_polar(rho, golden * k as f64)
        })
        .collect()
}
