//! The `hmap` command line.
//!
//! Exit status: 0 success, 1 a check failed (or a computation errored),
//! 2 usage error. `HMAP_TRUNC_ORDER` overrides the truncation order.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use crate::catalog::FunctionExpr;
use crate::classifiers::{
    self, epsilon_sweep, kaplan_scan, lemma13_orders, m_alpha_check, theorem2_classify, thm31_bounds_check,
    CoefficientPower,
};
use crate::convolution::hadamard;
use crate::error::{Error, Result};
use crate::plot::{self, OutputFormat, PlotSpec};
use crate::radius_analysis::{radius_search, RadiusKind};
use crate::tolerance;
use crate::verify::{run_suite, Suite};

pub const ORDER_ENV: &str = "HMAP_TRUNC_ORDER";

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "hmap", about = "Harmonic mappings: plots, classifiers, radii and convolutions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Images of concentric circles and radial segments.
    Plot {
        #[arg(long)]
        function: String,
        /// Comma-separated radii in (0,1).
        #[arg(long, value_delimiter = ',', required = true)]
        radii: Vec<f64>,
        #[arg(long, default_value_t = 12)]
        rays: usize,
        #[arg(long, default_value_t = 0)]
        circles: usize,
        #[arg(long, default_value_t = 256)]
        samples: usize,
        /// Defaults to the extension of `--out`.
        #[arg(long)]
        format: Option<Format>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a classifier on a function.
    Classify {
        #[arg(long)]
        function: String,
        #[arg(long, value_enum)]
        check: Check,
        /// `re,im`; defaults to the alpha of catalog families.
        #[arg(long)]
        alpha: Option<String>,
        /// Coefficient power for `--check power-sum`.
        #[arg(long, default_value_t = 2)]
        power: u8,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Bracket the radius of convexity or starlikeness.
    Radius {
        #[arg(long)]
        function: String,
        #[arg(long)]
        kind: String,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long, default_value_t = tolerance::DEFAULT_THETA_GRID)]
        grid: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Hadamard product of two functions.
    Convolve {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long, value_enum, default_value_t = Emit::Report)]
        emit: Emit,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite; exits 1 if any record fails.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Svg,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Check {
    /// `sum n(|a_n|+|b_n|)` and `sum n^2(|a_n|+|b_n|)` with starlike/convex orders.
    WeightedSums,
    /// `sum n^p |a_n| <= 1` for `g' = alpha z h'` (use `--power`).
    PowerSum,
    MAlpha,
    Bounds,
    Kaplan,
    SensePreserving,
    Injectivity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Coeffs,
    Report,
}

/// Truncation order from `HMAP_TRUNC_ORDER`, or the default.
pub fn order_from_env() -> Result<usize> {
    match std::env::var(ORDER_ENV) {
        Ok(v) => {
            let order = v
                .trim()
                .parse::<usize>()
                .map_err(|e| Error::Parse(format!("{ORDER_ENV}={v}: {e}")))?;
            if order < 8 {
                return Err(Error::OrderTooSmall { min: 8, got: order });
            }
            Ok(order)
        }
        Err(_) => Ok(tolerance::DEFAULT_ORDER),
    }
}

/// Parses `argv`, runs the command and returns the exit status.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let outcome = order_from_env().and_then(|order| dispatch(cli.command, order, stdout));
    match outcome {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_CHECK_FAILED,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            if is_usage_error(&e) {
                EXIT_USAGE
            } else {
                EXIT_CHECK_FAILED
            }
        }
    }
}

fn is_usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Parse(_) | Error::Unknown { .. } | Error::InvalidParameter(_) | Error::OrderTooSmall { .. }
    )
}

fn parse_alpha(s: &str) -> Result<Complex64> {
    let (re, im) = s
        .split_once(',')
        .ok_or_else(|| Error::Parse(format!("alpha must be <re>,<im>, got `{s}`")))?;
    let num = |t: &str| {
        t.trim()
            .parse::<f64>()
            .map_err(|e| Error::Parse(format!("bad number `{t}`: {e}")))
    };
    Ok(Complex64::new(num(re)?, num(im)?))
}

fn emit(text: &str, out: Option<&PathBuf>, stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

/// Runs one command; `Ok(false)` means a check ran and failed.
pub fn dispatch(command: Command, order: usize, stdout: &mut dyn Write) -> Result<bool> {
    match command {
        Command::Plot {
            function,
            radii,
            rays,
            circles,
            samples,
            format,
            out,
        } => {
            let spec = PlotSpec {
                function: function.parse()?,
                radii,
                n_rays: rays,
                n_circles: circles,
                samples_per_curve: samples,
                output_format: match format {
                    Some(Format::Svg) => OutputFormat::Svg,
                    Some(Format::Csv) => OutputFormat::Csv,
                    None => OutputFormat::from_path(&out),
                },
            };
            plot::plot_command(&spec, order, &out)?;
            writeln!(
                stdout,
                "wrote {} ({} circles, {} rays) to {}",
                spec.function,
                spec.circle_radii().len(),
                spec.n_rays,
                out.display()
            )?;
            Ok(true)
        }
        Command::Classify {
            function,
            check,
            alpha,
            power,
            out,
        } => {
            let expr: FunctionExpr = function.parse()?;
            let alpha = match alpha {
                Some(a) => Some(parse_alpha(&a)?),
                None => expr.alpha(),
            };
            let need_alpha = || {
                alpha.ok_or_else(|| Error::InvalidParameter(format!("`{expr}` has no known alpha; pass --alpha")))
            };
            let f = expr.build(order)?;
            let (text, passed) = match check {
                Check::WeightedSums => {
                    let (i, ii) = lemma13_orders(&f)?;
                    let passed = i.passed || ii.passed;
                    (json(&[i, ii]), passed)
                }
                Check::PowerSum => {
                    let power = match power {
                        2 => CoefficientPower::Two,
                        3 => CoefficientPower::Three,
                        p => return Err(Error::InvalidParameter(format!("--power must be 2 or 3, got {p}"))),
                    };
                    let rep = theorem2_classify(f.h(), need_alpha()?, power);
                    let passed = rep.passed;
                    (json(&rep), passed)
                }
                Check::MAlpha => {
                    let rep = m_alpha_check(
                        &f,
                        need_alpha()?,
                        classifiers::M_ALPHA_R_MAX,
                        classifiers::M_ALPHA_GRID,
                    )?;
                    let passed = rep.passed;
                    (json(&rep), passed)
                }
                Check::Bounds => {
                    let rep = thm31_bounds_check(&f, need_alpha()?, 10_000)?;
                    let passed = rep.passed;
                    (json(&rep), passed)
                }
                Check::Kaplan => {
                    let scans = epsilon_sweep()
                        .into_iter()
                        .flat_map(|eps| [0.5, 0.9].map(|r| (eps, r)))
                        .map(|(eps, r)| kaplan_scan(&f, eps, r, 64))
                        .collect::<Result<Vec<_>>>()?;
                    let passed = scans.iter().all(|s| s.passed);
                    (json(&scans), passed)
                }
                Check::SensePreserving => {
                    let rep = f.sense_preserving_check(0.95, (64, 256))?;
                    let passed = rep.passed;
                    (json(&rep), passed)
                }
                Check::Injectivity => {
                    let rep = f.injectivity_sample_check(0.95, 2000)?;
                    let passed = !rep.collision;
                    (json(&rep), passed)
                }
            };
            emit(&text, out.as_ref(), stdout)?;
            writeln!(stdout, "{expr}: {check:?} {}", if passed { "passed" } else { "failed" })?;
            Ok(passed)
        }
        Command::Radius {
            function,
            kind,
            tol,
            grid,
            out,
        } => {
            let expr: FunctionExpr = function.parse()?;
            let kind: RadiusKind = kind.parse()?;
            let f = expr.build(order)?;
            let res = radius_search(&f, kind, tol, grid)?;
            if let Some(path) = out.as_ref() {
                std::fs::write(path, json(&res))?;
            } else {
                stdout.write_all(json(&res).as_bytes())?;
            }
            if res.reached_upper_limit {
                writeln!(stdout, "{expr} {kind}: passes up to r = {} (search limit)", res.r_lo)?;
            } else {
                writeln!(stdout, "{expr} {kind}: radius in [{:.9}, {:.9}]", res.r_lo, res.r_hi)?;
            }
            Ok(true)
        }
        Command::Convolve {
            left,
            right,
            emit: what,
            out,
        } => {
            let a: FunctionExpr = left.parse()?;
            let b: FunctionExpr = right.parse()?;
            let res = hadamard(&a.build(order)?, &b.build(order)?)?;
            let p = &res.product;
            let text = match what {
                Emit::Coeffs => {
                    let mut s = String::from("n,a_re,a_im,b_re,b_im\n");
                    for n in 0..=p.order() {
                        let (an, bn) = (p.h().coeff(n), p.g().coeff(n));
                        s.push_str(&format!(
                            "{n},{},{},{},{}\n",
                            plot::format_real(an.re),
                            plot::format_real(an.im),
                            plot::format_real(bn.re),
                            plot::format_real(bn.im)
                        ));
                    }
                    s
                }
                Emit::Report => {
                    #[derive(Serialize)]
                    struct Report<'a> {
                        label: &'a str,
                        left: &'a str,
                        right: &'a str,
                        truncation_order: usize,
                        exact_evaluator: bool,
                        sense_preserving: crate::harmonic_map::SensePreservingReport,
                        injectivity: crate::harmonic_map::InjectivityReport,
                    }
                    json(&Report {
                        label: p.label(),
                        left: &res.left_label,
                        right: &res.right_label,
                        truncation_order: p.order(),
                        exact_evaluator: p.exact().is_some(),
                        sense_preserving: p.sense_preserving_check(0.95, (32, 128))?,
                        injectivity: p.injectivity_sample_check(0.95, 2000)?,
                    })
                }
            };
            emit(&text, out.as_ref(), stdout)?;
            Ok(true)
        }
        Command::Verify { suite, out } => {
            let suite: Suite = suite.parse()?;
            let report = run_suite(suite, order)?;
            if let Some(path) = out.as_ref() {
                std::fs::write(path, report.to_json())?;
            }
            stdout.write_all(report.summary().as_bytes())?;
            Ok(report.passed)
        }
    }
}
