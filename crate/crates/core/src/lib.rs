//! Exact computation of local positivity invariants on polyhedral cone models.
//!
//! Given intersection-theory data for a projective variety `X` (its positive
//! cones, pairing, negative curves, volume chambers) and for the blow-ups of
//! `X` at marked point types, this crate computes the four local positivity
//! invariants
//!
//! * `s_x(L)` — the Seshadri constant of a nef divisor class,
//! * `n_x(L)` — the Nakayama constant of a pseudo-effective divisor class,
//! * `N_x(a)` — the Nakayama constant of a pseudo-effective curve class,
//! * `S_x(a)` — the Seshadri constant of a movable curve class,
//!
//! each by two independent routes (a cone-exit computation on the blow-up and
//! a polar transform of the divisor-side invariant), together with the
//! volume-type functions `vol-hat` and `M` on curve classes, Zariski
//! decompositions on surfaces, and a suite of theorem-level consistency
//! checks, all in exact rational arithmetic.

pub mod catalog;
pub mod cones;
pub mod error;
pub mod exactnum;
pub mod geomodel;
pub mod hconc;
pub mod invariants;
pub mod poly;
pub mod report;
pub mod sampling;

pub use error::Error;
pub use exactnum::{Rational, RationalMatrix, RationalVector};

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
