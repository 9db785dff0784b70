//! Bounds for the Perron-Frobenius degree of Perron numbers.
//!
//! The Perron-Frobenius degree `d_PF(λ)` of a Perron number `λ` is the
//! smallest size of a non-negative, integral, aperiodic matrix whose spectral
//! radius is `λ`. This crate provides
//!
//! - exact polynomial and number-field arithmetic with certified complex
//!   roots ([`algebra`]),
//! - classification of algebraic integers and the angle lower bound
//!   `d_PF ≥ 2π/(3η)` ([`classify`]),
//! - upper bounds and certificates: quadratic closed forms, bounded
//!   exhaustive search, trace obstructions and lattice-point realizations
//!   inside the companion space ([`realize`]),
//! - planar geometry of polygons invariant under complex multiplication
//!   ([`geometry`]),
//! - generators for cubic and bi-Perron families with arbitrarily large
//!   lower bounds ([`families`]).
//!
//! [`verify`] bundles the end-to-end checks that the `pfdeg verify`
//! subcommand and the acceptance test target run.

pub mod algebra;
pub mod classify;
mod error;
pub mod families;
pub mod geometry;
pub mod realize;
pub mod verify;

pub use error::{Error, Result};

/// Default target tolerance for root refinement.
pub const DEFAULT_TOL: f64 = 1e-10;
