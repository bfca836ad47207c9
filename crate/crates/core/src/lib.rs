//! Fractional Chern insulator construction on the square lattice.
//!
//! The crate covers the classical ground states of a finite-range
//! repulsive interaction on periodic tori, the Hatsugai-Kohmoto two-band
//! hopping model with three independent Chern-number routes, the sector
//! construction that yields an averaged Chern number of 1/2 (or 1 for the
//! charge-density-wave variant), and exact diagonalization on small tori.
//!
//! Module map:
//! - [`lattice`]: torus geometry and displacement sets
//! - [`classical`]: pair counts, exhaustive and transfer-matrix ground states
//! - [`hk`]: Bloch and real-space Hatsugai-Kohmoto Hamiltonians
//! - [`chern`]: plaquette, loop-integral and closed-form Chern numbers
//! - [`composite`]: four-sector assembly and phase classification
//! - [`ed`]: many-body Hamiltonians, spectra, twisted-boundary Chern numbers
//! - [`cli`]: the `fci` command-line front end

pub mod chern;
pub mod classical;
pub mod cli;
pub mod composite;
pub mod ed;
pub mod error;
pub mod hk;
pub mod lattice;
pub mod output;

pub use error::{Error, Result};
