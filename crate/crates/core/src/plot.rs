//! Images of concentric circles and radial segments, as CSV or SVG.
//!
//! Output is a pure function of the spec: fixed sampling, fixed ordering
//! and reals printed with [`format_real`].

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use num_complex::Complex64;

use crate::catalog::FunctionExpr;
use crate::error::{Error, Result};
use crate::harmonic_map::HarmonicMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Svg,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "svg" => Ok(OutputFormat::Svg),
            "csv" => Ok(OutputFormat::Csv),
            _ => Err(Error::Unknown {
                what: "output format",
                name: s.to_string(),
            }),
        }
    }
}

impl OutputFormat {
    /// Guesses the format from a file extension, defaulting to SVG.
    pub fn from_path(path: &Path) -> OutputFormat {
        match path.extension().and_then(|e| e.to_str()) {
            Some("csv") => OutputFormat::Csv,
            _ => OutputFormat::Svg,
        }
    }
}

pub const MIN_SAMPLES: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct PlotSpec {
    pub function: FunctionExpr,
    /// Circles drawn explicitly; the largest also bounds the rays and the
    /// equally spaced circles.
    pub radii: Vec<f64>,
    pub n_rays: usize,
    /// Extra circles at `r_max k / n_circles`, `k = 1..=n_circles`.
    pub n_circles: usize,
    pub samples_per_curve: usize,
    pub output_format: OutputFormat,
}

impl PlotSpec {
    pub fn new(function: FunctionExpr, radii: Vec<f64>) -> Self {
        PlotSpec {
            function,
            radii,
            n_rays: 12,
            n_circles: 0,
            samples_per_curve: 256,
            output_format: OutputFormat::Svg,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.radii.is_empty() {
            return Err(Error::InvalidParameter("at least one radius is required".into()));
        }
        if let Some(r) = self.radii.iter().find(|r| !(**r > 0.0 && **r < 1.0)) {
            return Err(Error::InvalidParameter(format!("radius {r} not in (0,1)")));
        }
        if self.samples_per_curve < MIN_SAMPLES {
            return Err(Error::InvalidParameter(format!(
                "samples_per_curve must be at least {MIN_SAMPLES}, got {}",
                self.samples_per_curve
            )));
        }
        Ok(())
    }

    pub fn r_max(&self) -> f64 {
        self.radii.iter().copied().fold(0.0, f64::max)
    }

    /// Sorted, de-duplicated circle radii.
    pub fn circle_radii(&self) -> Vec<f64> {
        let r_max = self.r_max();
        let mut all: Vec<f64> = self.radii.clone();
        all.extend((1..=self.n_circles).map(|k| r_max * k as f64 / self.n_circles as f64));
        all.sort_by(f64::total_cmp);
        all.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
        all
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveKind {
    Circle,
    Ray,
}

impl CurveKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CurveKind::Circle => "circle",
            CurveKind::Ray => "ray",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    pub id: usize,
    pub kind: CurveKind,
    /// Radius of a circle or angle of a ray.
    pub param: f64,
    /// `(t, f(z(t)))`: `t` is the angle on a circle and the modulus on a ray.
    pub points: Vec<(f64, Complex64)>,
}

/// Samples the image curves of `map`; circles first, then rays.
pub fn sample_curves(spec: &PlotSpec, map: &HarmonicMap) -> Result<Vec<Curve>> {
    spec.validate()?;
    let s = spec.samples_per_curve;
    let mut curves = Vec::new();
    for r in spec.circle_radii() {
        let points = (0..s)
            .map(|k| {
                let t = 2.0 * PI * k as f64 / (s - 1) as f64;
                Ok((t, map.evaluate_f(Complex64::from_polar(r, t))?))
            })
            .collect::<Result<Vec<_>>>()?;
        curves.push(Curve {
            id: curves.len(),
            kind: CurveKind::Circle,
            param: r,
            points,
        });
    }
    let r_max = spec.r_max();
    for j in 0..spec.n_rays {
        let angle = 2.0 * PI * j as f64 / spec.n_rays as f64;
        let points = (0..s)
            .map(|k| {
                let t = r_max * k as f64 / (s - 1) as f64;
                Ok((t, map.evaluate_f(Complex64::from_polar(t, angle))?))
            })
            .collect::<Result<Vec<_>>>()?;
        curves.push(Curve {
            id: curves.len(),
            kind: CurveKind::Ray,
            param: angle,
            points,
        });
    }
    for c in &curves {
        if let Some((_, w)) = c.points.iter().find(|(_, w)| !(w.re.is_finite() && w.im.is_finite())) {
            return Err(Error::InvalidParameter(format!("non-finite image point {w} on curve {}", c.id)));
        }
    }
    Ok(curves)
}

/// Rounds to 12 significant digits and prints the shortest decimal that
/// reads back to the rounded value. Never uses exponent notation.
pub fn format_real(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let rounded: f64 = format!("{x:.11e}").parse().unwrap_or(x);
    format!("{rounded}")
}

pub const CSV_HEADER: &str = "curve_id,kind,param,t,u,v";

pub fn to_csv(curves: &[Curve]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for c in curves {
        for (t, w) in &c.points {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                c.id,
                c.kind.as_str(),
                format_real(c.param),
                format_real(*t),
                format_real(w.re),
                format_real(w.im)
            );
        }
    }
    out
}

pub fn to_svg(curves: &[Curve]) -> String {
    let (mut lo_u, mut hi_u, mut lo_v, mut hi_v) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for (_, w) in curves.iter().flat_map(|c| c.points.iter()) {
        lo_u = lo_u.min(w.re);
        hi_u = hi_u.max(w.re);
        lo_v = lo_v.min(w.im);
        hi_v = hi_v.max(w.im);
    }
    if !lo_u.is_finite() {
        (lo_u, hi_u, lo_v, hi_v) = (-1.0, 1.0, -1.0, 1.0);
    }
    let span = (hi_u - lo_u).max(hi_v - lo_v).max(1e-12);
    let margin = 0.05 * span;
    // SVG y grows downwards, so v is negated
    let (x0, y0) = (lo_u - margin, -hi_v - margin);
    let (w, h) = (hi_u - lo_u + 2.0 * margin, hi_v - lo_v + 2.0 * margin);
    let stroke = span / 400.0;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" width="800" height="{}">"#,
        format_real(x0),
        format_real(y0),
        format_real(w),
        format_real(h),
        format_real((800.0 * h / w).round())
    );
    for c in curves {
        let colour = match c.kind {
            CurveKind::Circle => "#1f4e9c",
            CurveKind::Ray => "#9c3d1f",
        };
        let pts: Vec<String> = c
            .points
            .iter()
            .map(|(_, p)| format!("{},{}", format_real(p.re), format_real(-p.im)))
            .collect();
        let _ = writeln!(
            out,
            r#"<polyline data-curve="{}" data-kind="{}" fill="none" stroke="{colour}" stroke-width="{}" points="{}"/>"#,
            c.id,
            c.kind.as_str(),
            format_real(stroke),
            pts.join(" ")
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Builds the map at `order`, samples it and renders in the spec's format.
pub fn render(spec: &PlotSpec, order: usize) -> Result<String> {
    let map = spec.function.build(order)?;
    let curves = sample_curves(spec, &map)?;
    Ok(match spec.output_format {
        OutputFormat::Csv => to_csv(&curves),
        OutputFormat::Svg => to_svg(&curves),
    })
}

pub fn plot_command(spec: &PlotSpec, order: usize, out: &Path) -> Result<()> {
    let text = render(spec, order)?;
    std::fs::write(out, text)?;
    Ok(())
}
