//! Tolerances shared across the crate.
//!
//! Every threshold a check compares against lives here so that reports,
//! tests and the verification suite agree on one number.

/// Default truncation degree for catalog constructions.
pub const DEFAULT_ORDER: usize = 64;

/// Absolute tolerance for coefficient-level series identities.
pub const SERIES_IDENTITY: f64 = 1e-9;

/// Radius above which closed-form evaluators replace truncated series.
pub const EXACT_SWITCH_RADIUS: f64 = 0.7;

/// Agreement required between exact evaluators and series on |z| <= 0.5.
pub const EXACT_VS_SERIES: f64 = 1e-8;

/// Coefficient relation `(n+1) b_{n+1} = n alpha a_n`.
pub const COEFF_RELATION: f64 = 1e-10;

/// Slack allowed in the coefficient bounds `|a_n| <= (n+1)/2`, `|b_n| <= (n-1)|alpha|/2`.
pub const COEFF_BOUND: f64 = 1e-12;

/// Slack allowed in the growth bound.
pub const GROWTH_BOUND: f64 = 1e-9;

/// A minimum angular derivative at or above `-ANGULAR_MIN` counts as non-negative.
pub const ANGULAR_MIN: f64 = 1e-9;

/// Total turning of a closed curve must equal 2 pi within this.
pub const TOTAL_TURNING: f64 = 1e-3;

/// Kaplan arc integrals must stay above `-pi - KAPLAN_SLACK`.
pub const KAPLAN_SLACK: f64 = 1e-6;

/// Residual threshold for the tangent-derivative polynomial identities.
pub const TANGENT_IDENTITY: f64 = 1e-5;

/// Default theta resolution for radius tests.
pub const DEFAULT_THETA_GRID: usize = 4096;

/// Upper end of every radius scan.
pub const RADIUS_SEARCH_LIMIT: f64 = 0.999;

/// Lower end of every radius scan; the test must pass here.
pub const RADIUS_SEARCH_START: f64 = 0.01;
