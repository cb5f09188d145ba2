//! Witness operators: `W2 = 3 - a†a†aa/<a†a>²` certifies nonclassicality of
//! one mode, `W_HBT = 1/2 - (2a†b†ab + b†²a² + a†²b²)/<:(I_a+I_b)²:>`
//! certifies entanglement of two modes. Both normalizations are evaluated on
//! the same state as the numerator.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::interference::intensity_normalization;
use crate::state::{OneModeGaussian, TwoModeState};
use crate::tolerance::{EPS_PHYS, EPS_WITNESS};
use crate::wick::{NormalPolynomial, OperatorWord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum WitnessKind {
    W2,
    WHBT,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    ClassicalOrSeparable,
    Boundary,
    QuantumOrEntangled,
}

impl Verdict {
    pub fn from_value(value: f64) -> Self {
        if value > EPS_WITNESS {
            Verdict::ClassicalOrSeparable
        } else if value < -EPS_WITNESS {
            Verdict::QuantumOrEntangled
        } else {
            Verdict::Boundary
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WitnessReport {
    pub value: f64,
    pub verdict: Verdict,
    pub witness_kind: WitnessKind,
}

impl WitnessReport {
    pub fn new(kind: WitnessKind, value: f64) -> Self {
        WitnessReport {
            value,
            verdict: Verdict::from_value(value),
            witness_kind: kind,
        }
    }
}

/// `<W2>` through the moment engine: `3 - <a†²a²>/n²`.
pub fn w2_expectation(s: &OneModeGaussian) -> Result<WitnessReport> {
    s.ensure_physical()?;
    if s.n() == 0.0 {
        return Err(Error::ZeroPhotonNumber("W2"));
    }
    let g2_num = s.moment(&OperatorWord::monomial(2, 0, 2, 0))?.re;
    Ok(WitnessReport::new(WitnessKind::W2, 3.0 - g2_num / (s.n() * s.n())))
}

/// `(n² - |m|²)/n²`.
pub fn w2_closed_form(n: f64, m_abs: f64) -> Result<f64> {
    if n == 0.0 {
        return Err(Error::ZeroPhotonNumber("W2"));
    }
    Ok((n * n - m_abs * m_abs) / (n * n))
}

/// Numerator `2a†b†ab + b†²a² + a†²b²` of the HBT witness.
pub fn whbt_numerator() -> NormalPolynomial {
    let w = |s: &str| s.parse::<OperatorWord>().expect("valid word");
    NormalPolynomial::new()
        .with(2.0, w("a+ b+ a b"))
        .with(1.0, w("b+^2 a^2"))
        .with(1.0, w("a+^2 b^2"))
}

/// `<W_HBT>` with the intensity normalization taken from the state itself.
pub fn whbt_expectation<S: TwoModeState + ?Sized>(state: &S) -> Result<WitnessReport> {
    state.check_physical()?;
    let norm = intensity_normalization(state);
    if norm <= EPS_WITNESS {
        return Err(invalid("state", "vacuum has no intensity correlations"));
    }
    whbt_expectation_with_normalization(state, norm)
}

/// `<W_HBT>` with a caller-fixed normalization. With the normalization held
/// fixed the witness is a genuine linear functional, hence affine in the
/// weights of a mixture.
pub fn whbt_expectation_with_normalization<S: TwoModeState + ?Sized>(state: &S, norm: f64) -> Result<WitnessReport> {
    if !(norm.is_finite() && norm > 0.0) {
        return Err(invalid("norm", format!("normalization must be positive, got {norm}")));
    }
    let num: Complex64 = whbt_numerator().expect(state);
    Ok(WitnessReport::new(WitnessKind::WHBT, 0.5 - num.re / norm))
}

fn family_whbt(n: f64, c2: f64) -> Result<f64> {
    let den = 2.0 * (3.0 * n * n + c2);
    if den == 0.0 {
        return Err(invalid("n", "vacuum has no intensity correlations"));
    }
    Ok((n * n - c2) / den)
}

/// Two independent copies of `(n, m)` (zero relative phase).
pub fn whbt_uncorrelated(n: f64, m_abs: f64) -> Result<f64> {
    family_whbt(n, m_abs * m_abs)
}

pub fn whbt_epr(n: f64, mc_abs: f64) -> Result<f64> {
    family_whbt(n, mc_abs * mc_abs)
}

pub fn whbt_werner(n: f64, mc_abs: f64, p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(invalid("p", format!("mixing weight must lie in [0, 1], got {p}")));
    }
    if mc_abs * mc_abs > n * (n + 1.0) + EPS_PHYS {
        return Err(Error::Nonphysical(format!("|m_c| = {mc_abs} too large for n = {n}")));
    }
    family_whbt(n, p * mc_abs * mc_abs)
}
