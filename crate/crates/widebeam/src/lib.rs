//! Beamwidth-widening toolkit for patch antennas.
//!
//! The crate covers the design loop of widening a patch antenna's beam with
//! parasitic elements driven as a small nonuniformly excited array:
//!
//! * [`synthesis`] — array factors of uniform linear arrays, Fourier
//!   synthesis of excitation coefficients against a target factor (typically
//!   the inverse of the element pattern), Fejer tapering, and the composite
//!   element-times-factor pattern.
//! * [`patch`] — rectangular-patch geometry, a transmission-line resonance
//!   estimator, and equivalent-magnetic-current far-field models for the two
//!   resonant modes over an infinite ground plane.
//! * [`metrics`] — half-power beamwidth (superlevel-set definition),
//!   directivity, peak direction, and measured-vs-modeled cut comparison.
//! * [`pattern`] / [`grid`] — far-field containers, Ludwig-3 decomposition
//!   with a y-directed co-polarization reference, angular grids.
//! * [`io`] — CSV/JSON file formats shared with the `widebeam` binary.
//!
//! All functions are pure and safe for concurrent use; results are
//! deterministic for fixed inputs.

pub mod bessel;
pub mod cli;
pub mod error;
pub mod grid;
pub mod io;
pub mod metrics;
pub mod patch;
pub mod pattern;
pub mod quad;
pub mod synthesis;

pub use error::{Error, Result};
