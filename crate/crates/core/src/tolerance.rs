//! Absolute tolerances shared by every predicate in the crate.
//!
//! All inputs are exact user parameters rather than measured data, so the
//! bands are tight: anything wider would hide formula errors.

/// Band on `|m|^2 - n(n+1)` inside which a state still counts as physical.
pub const EPS_PHYS: f64 = 1e-9;

/// Band on `n - |m|` (and on `|m_c| - n`) reported as the classical boundary.
pub const EPS_CLS: f64 = 1e-9;

/// Band around zero inside which a witness value is reported as `Boundary`.
pub const EPS_WITNESS: f64 = 1e-9;

/// Smallest eigenvalue still accepted as non-negative for a truncated density.
pub const EPS_EIG: f64 = 1e-8;

/// Largest trace deficit for which a truncated density counts as converged.
pub const EPS_TRACE: f64 = 1e-6;

/// Cutoffs tried, in order, when the oracle has to decide physicality.
pub const CUTOFF_SCHEDULE: [usize; 3] = [15, 25, 40];
