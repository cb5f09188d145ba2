use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parameter `{name}` is invalid: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("state is not physical: {0}")]
    Nonphysical(String),

    #[error("state is not P-representable (n = {n}, |m| = {m_abs})")]
    NotPRepresentable { n: f64, m_abs: f64 },

    #[error("quantity undefined at zero photon number: {0}")]
    ZeroPhotonNumber(&'static str),

    #[error("operator word is not normally ordered: {0}")]
    NotNormallyOrdered(String),

    #[error("rotated quadrature formula needs a real squeezing parameter, got arg(m) = {0}")]
    UnsupportedPhase(f64),

    #[error("{samples} samples cannot determine {parameters} fringe parameters")]
    Underdetermined { samples: usize, parameters: usize },

    #[error("fringe design matrix is ill-conditioned (condition number {0:.3e})")]
    IllConditioned(f64),

    #[error("Fock truncation did not converge at cutoff {cutoff}: trace deficit {deficit:.3e}")]
    Convergence { cutoff: usize, deficit: f64 },

    #[error("physicality inconclusive up to cutoff {cutoff}: trace deficit {deficit:.3e}")]
    Inconclusive { cutoff: usize, deficit: f64 },

    #[error("word of length {len} is unsafe at cutoff {cutoff}")]
    TruncationUnsafe { len: usize, cutoff: usize },

    #[error("eigen-decomposition failed: {0}")]
    EigenSolver(String),

    #[error("malformed density dump: {0}")]
    Dump(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}

pub(crate) fn require_finite(name: &'static str, x: f64) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(invalid(name, format!("must be finite, got {x}")))
    }
}
