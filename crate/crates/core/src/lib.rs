pub mod catalog;
pub mod cli;
pub mod classifiers;
pub mod closed_form;
pub mod convolution;
pub mod error;
pub mod harmonic_map;
pub mod numeric;
pub mod plot;
pub mod radius_analysis;
pub mod series;
pub mod tolerance;
pub mod verify;
