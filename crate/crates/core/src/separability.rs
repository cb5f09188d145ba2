//! Analytic separability criteria for the EPR, beam-splitter and general
//! correlated families, Werner-state thresholds, and the oracle-backed
//! two-mode physicality check.
//!
//! Boundaries count as separable: every criterion here is a non-strict `<=`.

use serde::Serialize;

use crate::error::{invalid, require_finite, Error, Result};
use crate::fock::kernel_density_unchecked;
use crate::state::{OneModeGaussian, TwoModeGaussian};
use crate::tolerance::{CUTOFF_SCHEDULE, EPS_CLS, EPS_EIG, EPS_PHYS};

/// Mixed EPR state is entangled iff `|m_c| > n`.
pub fn epr_is_entangled(n: f64, mc_abs: f64) -> Result<bool> {
    require_finite("n", n)?;
    require_finite("m_c", mc_abs)?;
    if n < 0.0 || mc_abs < 0.0 {
        return Err(invalid("n", "photon number and |m_c| must be >= 0"));
    }
    if mc_abs * mc_abs > n * (n + 1.0) + EPS_PHYS {
        return Err(Error::Nonphysical(format!(
            "|m_c|^2 = {} exceeds n(n+1) = {}",
            mc_abs * mc_abs,
            n * (n + 1.0)
        )));
    }
    Ok(mc_abs > n + EPS_CLS)
}

/// Left-hand side `|m|² + |sin lambda| |m|` of the beam-splitter criterion.
pub fn bs_separability_lhs(m_abs: f64, lambda: f64) -> f64 {
    m_abs * m_abs + lambda.sin().abs() * m_abs
}

/// Output of the beam splitter fed with two copies of `(n, m)` is separable
/// iff `|m|² + sqrt((1 - cos 2lambda)/2) |m| <= n(n+1)`.
pub fn bs_output_is_separable(n: f64, m_abs: f64, lambda: f64) -> bool {
    bs_separability_lhs(m_abs, lambda) <= n * (n + 1.0) + EPS_PHYS
}

/// Smallest photon number for which the beam-splitter output of `|m|` at
/// phase `lambda` is still separable: `sqrt(|m|² + s|m| + 1/4) - 1/2`,
/// `s = |sin lambda|`.
pub fn bs_separability_min_photon_number(m_abs: f64, lambda: f64) -> f64 {
    (bs_separability_lhs(m_abs, lambda) + 0.25).sqrt() - 0.5
}

/// Left-hand side `m² + m_c² + |m_c| sqrt(1 + 2(1 + cos(l1 + l2)) m²)` of the
/// general correlated-state criterion.
pub fn general_separability_lhs(m: f64, m_c: f64, lambda1: f64, lambda2: f64) -> f64 {
    let root = (1.0 + 2.0 * (1.0 + (lambda1 + lambda2).cos()) * m * m).sqrt();
    m * m + m_c * m_c + m_c.abs() * root
}

/// Separability of [`TwoModeGaussian::correlated`]`(n, m, m_c, lambda1, lambda2)`.
pub fn general_is_separable(n: f64, m: f64, m_c: f64, lambda1: f64, lambda2: f64) -> bool {
    general_separability_lhs(m, m_c, lambda1, lambda2) <= n * (n + 1.0) + EPS_PHYS
}

fn require_positive(n: f64) -> Result<()> {
    require_finite("n", n)?;
    if n <= 0.0 {
        return Err(invalid("n", format!("must be > 0, got {n}")));
    }
    Ok(())
}

/// Mixing weight above which the HBT witness detects a Werner state with a
/// pure EPR component: `n/(n+1)`.
pub fn werner_hbt_threshold(n: f64) -> Result<f64> {
    require_positive(n)?;
    Ok(n / (n + 1.0))
}

/// Mixing weight above which the partial transpose of the Werner state has a
/// negative eigenvalue:
/// `(1 + sqrt((1+n)/n) (1+2n²)² / (n (1+2n) (1+n²)))⁻¹`.
pub fn werner_ppt_threshold(n: f64) -> Result<f64> {
    require_positive(n)?;
    let k = ((1.0 + n) / n).sqrt() * (1.0 + 2.0 * n * n).powi(2) / (n * (1.0 + 2.0 * n) * (1.0 + n * n));
    Ok(1.0 / (1.0 + k))
}

/// Which Werner threshold lies lower (detects entanglement at smaller `p`)
/// over a photon-number grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdOrdering {
    pub points: usize,
    /// Grid points where the PPT threshold is strictly below the HBT one.
    pub ppt_lower: usize,
    pub hbt_lower: usize,
    /// Sign changes of `hbt - ppt` along the grid.
    pub crossings: usize,
    pub min_gap: f64,
    pub max_gap: f64,
}

pub fn werner_threshold_ordering(ns: &[f64]) -> Result<ThresholdOrdering> {
    let mut gaps = Vec::with_capacity(ns.len());
    for &n in ns {
        gaps.push(werner_hbt_threshold(n)? - werner_ppt_threshold(n)?);
    }
    let crossings = gaps.windows(2).filter(|w| w[0].signum() != w[1].signum()).count();
    Ok(ThresholdOrdering {
        points: ns.len(),
        ppt_lower: gaps.iter().filter(|&&g| g > 0.0).count(),
        hbt_lower: gaps.iter().filter(|&&g| g < 0.0).count(),
        crossings,
        min_gap: gaps.iter().copied().fold(f64::INFINITY, f64::min),
        max_gap: gaps.iter().copied().fold(f64::NEG_INFINITY, f64::max),
    })
}

/// Physicality of a two-mode Gaussian parameter set, decided on its
/// truncated Fock density over the cutoff schedule.
///
/// A truncated density is a principal submatrix of the full operator, so a
/// negative eigenvalue at any cutoff proves nonphysicality; a positive
/// answer needs the trace deficit to have converged.
pub fn is_physical_two_mode(state: &TwoModeGaussian) -> Result<bool> {
    let mut last = (0, f64::NAN);
    for &cutoff in CUTOFF_SCHEDULE.iter() {
        let rho = match kernel_density_unchecked(state, cutoff) {
            Ok(rho) => rho,
            Err(Error::Nonphysical(_)) => return Ok(false),
            Err(e) => return Err(e),
        };
        if rho.min_eigenvalue()? < -EPS_EIG {
            return Ok(false);
        }
        if rho.is_converged() {
            return Ok(true);
        }
        last = (cutoff, rho.trace_deficit());
    }
    Err(Error::Inconclusive {
        cutoff: last.0,
        deficit: last.1,
    })
}

/// One-mode counterpart, for symmetry with [`is_physical_two_mode`].
pub fn is_physical_one_mode(s: &OneModeGaussian) -> bool {
    s.is_physical()
}
