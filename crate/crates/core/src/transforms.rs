//! State-producing maps: the two-stage amplifier, phase shifts, the 50/50
//! beam splitter, quadrature rotation and Werner mixing.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{invalid, require_finite, Error, Result};
use crate::state::{GaussianMixture, OneModeGaussian, SecondMoments, TwoModeGaussian, STRUCTURAL_ZERO};

/// Gains of a phase-sensitive amplifier (`g`) followed by a
/// phase-insensitive one (`h`), both fed with vacuum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AmplifierGains {
    g: f64,
    h: f64,
}

impl AmplifierGains {
    pub fn new(g: f64, h: f64) -> Result<Self> {
        for (name, v) in [("G", g), ("H", h)] {
            require_finite(name, v)?;
            if v < 1.0 {
                return Err(invalid(name, format!("gain must be >= 1, got {v}")));
            }
        }
        Ok(AmplifierGains { g, h })
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    pub fn h(&self) -> f64 {
        self.h
    }
}

/// Output state of the amplifier chain with real, non-negative `m`.
pub fn amplifier_output(gains: AmplifierGains) -> OneModeGaussian {
    let AmplifierGains { g, h } = gains;
    let n = 0.5 * (1.0 / g + g) * (h - 0.5) - 0.5;
    let m = 0.5 * (g - 1.0 / g) * (h - 0.5);
    // n can dip below zero by rounding at G = H = 1
    OneModeGaussian::real(n.max(0.0), m).expect("amplifier output is finite for finite gains")
}

/// `H >= (G+1)/2`, equivalent to `n >= |m|` for the amplifier output.
pub fn is_classical_threshold(gains: AmplifierGains) -> bool {
    gains.h >= 0.5 * (gains.g + 1.0)
}

/// Relabels `a -> a e^{i lambda}`, i.e. `m -> m e^{2 i lambda}`.
pub fn phase_shift(s: &OneModeGaussian, lambda: f64) -> Result<OneModeGaussian> {
    require_finite("lambda", lambda)?;
    OneModeGaussian::new(s.n(), s.m() * Complex64::from_polar(1.0, 2.0 * lambda))
}

/// Second moments after the 50/50 beam splitter
/// `c = (a + b e^{i lambda})/√2`, `d = (a - b e^{i lambda})/√2`.
/// The input may be correlated; the output modes are returned as `(c, d)`.
pub fn beam_splitter_moments(input: &SecondMoments, lambda: f64) -> SecondMoments {
    let e = Complex64::from_polar(1.0, lambda);
    let SecondMoments { n_a, n_b, aa, bb, ab, adag_b } = *input;
    let ex = e * adag_b;
    SecondMoments {
        n_a: 0.5 * (n_a + n_b) + ex.re,
        n_b: 0.5 * (n_a + n_b) - ex.re,
        aa: 0.5 * (aa + 2.0 * e * ab + e * e * bb),
        bb: 0.5 * (aa - 2.0 * e * ab + e * e * bb),
        ab: 0.5 * (aa - e * e * bb),
        adag_b: Complex64::new(0.5 * (n_a - n_b), -ex.im),
    }
}

/// Inverse of [`beam_splitter_moments`] at the same `lambda`.
pub fn inverse_beam_splitter_moments(output: &SecondMoments, lambda: f64) -> SecondMoments {
    let e = Complex64::from_polar(1.0, -lambda);
    let SecondMoments { n_a: nc, n_b: nd, aa: cc, bb: dd, ab: cd, adag_b: x } = *output;
    SecondMoments {
        n_a: 0.5 * (nc + nd) + x.re,
        n_b: 0.5 * (nc + nd) - x.re,
        aa: 0.5 * (cc + 2.0 * cd + dd),
        bb: 0.5 * e * e * (cc - 2.0 * cd + dd),
        ab: 0.5 * e * (cc - dd),
        adag_b: 0.5 * e * Complex64::new(nc - nd, -2.0 * x.im),
    }
}

/// 50/50 beam splitter acting on two independent one-mode states with a
/// phase `lambda` on mode `b` before the splitter.
pub fn beam_splitter(sa: &OneModeGaussian, sb: &OneModeGaussian, lambda: f64) -> Result<TwoModeGaussian> {
    require_finite("lambda", lambda)?;
    sa.ensure_physical()?;
    sb.ensure_physical()?;
    let out = beam_splitter_moments(&SecondMoments::product(sa, sb), lambda);
    TwoModeGaussian::from_second_moments(&out)
}

/// Writes `state` as the `lambda` beam-splitter image of two independent
/// one-mode states, if it is one.
pub fn beam_splitter_inputs(state: &TwoModeGaussian, lambda: f64) -> Option<(OneModeGaussian, OneModeGaussian)> {
    let input = inverse_beam_splitter_moments(&state.second_moments(), lambda);
    if !input.is_product() || input.n_a < -STRUCTURAL_ZERO || input.n_b < -STRUCTURAL_ZERO {
        return None;
    }
    let a = OneModeGaussian::new(input.n_a.max(0.0), -input.aa).ok()?;
    let b = OneModeGaussian::new(input.n_b.max(0.0), -input.bb).ok()?;
    Some((a, b))
}

/// `n + 1/2 - m cos(theta - 2 lambda)` for a state with real `m` after a
/// `b -> b e^{i lambda}` phase, measured along quadrature angle `theta`.
pub fn rotated_quadrature_variance(s: &OneModeGaussian, lambda: f64, theta: f64) -> Result<f64> {
    require_finite("lambda", lambda)?;
    require_finite("theta", theta)?;
    s.ensure_physical()?;
    let m = s.m();
    if m.im.abs() > STRUCTURAL_ZERO {
        return Err(Error::UnsupportedPhase(m.arg()));
    }
    Ok(s.n() + 0.5 - m.re * (theta - 2.0 * lambda).cos())
}

/// `p * epr + (1 - p) * thermal ⊗ thermal`, the thermal modes carrying the
/// same photon number as the EPR modes.
pub fn werner_mix(epr: &TwoModeGaussian, p: f64) -> Result<GaussianMixture> {
    require_finite("p", p)?;
    if !(0.0..=1.0).contains(&p) {
        return Err(invalid("p", format!("mixing weight must lie in [0, 1], got {p}")));
    }
    if !epr.is_epr_family() {
        return Err(invalid("epr", "Werner mixing needs a state without single-mode squeezing"));
    }
    use crate::state::TwoModeState;
    epr.check_physical()?;
    let thermal = TwoModeGaussian::thermal_pair(epr.n())?;
    if p == 1.0 {
        Ok(GaussianMixture::single(*epr))
    } else if p == 0.0 {
        Ok(GaussianMixture::single(thermal))
    } else {
        GaussianMixture::new(vec![(p, *epr), (1.0 - p, thermal)])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::Classicality;
    use approx::assert_relative_eq;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, SQRT_2};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn amplifier_examples() {
        let s = amplifier_output(AmplifierGains::new(1.0, 1.0).unwrap());
        assert_eq!((s.n(), s.m_abs()), (0.0, 0.0));
        let s = amplifier_output(AmplifierGains::new(1.65, 1.05).unwrap());
        assert!((s.n() - 0.120).abs() < 0.005);
        assert!((s.m_abs() - 0.287).abs() < 0.005);
        assert_relative_eq!(s.purity().unwrap(), 1.0 / 1.1, epsilon = 1e-12);
        let s = amplifier_output(AmplifierGains::new(1.0, 2.0).unwrap());
        assert_relative_eq!(s.n(), 1.0);
        assert_eq!(s.m_abs(), 0.0);
        assert!(AmplifierGains::new(0.9, 1.0).is_err());
        assert!(AmplifierGains::new(1.0, f64::NAN).is_err());
    }

    #[test]
    fn amplifier_threshold_examples() {
        assert!(!is_classical_threshold(AmplifierGains::new(1.65, 1.05).unwrap()));
        assert!(is_classical_threshold(AmplifierGains::new(1.0, 1.0).unwrap()));
        let eq = AmplifierGains::new(2.0, 1.5).unwrap();
        assert!(is_classical_threshold(eq));
        assert_eq!(amplifier_output(eq).classify().unwrap(), Classicality::Boundary);
    }

    #[test]
    fn amplifier_pure_only_without_phase_insensitive_gain() {
        assert!(amplifier_output(AmplifierGains::new(3.0, 1.0).unwrap()).is_pure());
        assert!(!amplifier_output(AmplifierGains::new(3.0, 1.2).unwrap()).is_pure());
    }

    #[test]
    fn phase_shift_examples() {
        let s = OneModeGaussian::real(1.0, 1.0).unwrap();
        assert_eq!(phase_shift(&s, 0.0).unwrap(), s);
        let r = phase_shift(&s, FRAC_PI_2).unwrap().m();
        assert_relative_eq!(r.re, -1.0, epsilon = 1e-15);
        let r = phase_shift(&s, FRAC_PI_4).unwrap().m();
        assert_relative_eq!(r.re, 0.0, epsilon = 1e-15);
        assert_relative_eq!(r.im, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn beam_splitter_equal_inputs() {
        let s = OneModeGaussian::real(1.0, SQRT_2).unwrap();
        let out = beam_splitter(&s, &s, 0.0).unwrap();
        assert_relative_eq!(out.m_c().norm(), 0.0, epsilon = 1e-15);
        assert_relative_eq!(out.m_a().re, SQRT_2, epsilon = 1e-15);

        let out = beam_splitter(&s, &s, FRAC_PI_2).unwrap();
        assert!(out.is_epr_family());
        assert_relative_eq!(out.m_c().re, SQRT_2, epsilon = 1e-15);

        let out = beam_splitter(&s, &s, FRAC_PI_4).unwrap();
        let h = 0.5 * SQRT_2;
        assert_relative_eq!(out.m_a().re, h, epsilon = 1e-15);
        assert_relative_eq!(out.m_a().im, h, epsilon = 1e-15);
        assert_relative_eq!(out.m_b().im, h, epsilon = 1e-15);
        assert_relative_eq!(out.m_c().re, h, epsilon = 1e-15);
        assert_relative_eq!(out.m_c().im, -h, epsilon = 1e-15);
        assert_eq!(out.m_x(), c(0.0, 0.0));
    }

    #[test]
    fn beam_splitter_unequal_inputs_create_mode_coherence() {
        let a = OneModeGaussian::real(1.2, 0.3).unwrap();
        let b = OneModeGaussian::thermal(0.4).unwrap();
        let out = beam_splitter(&a, &b, 0.7).unwrap();
        assert_relative_eq!(out.n(), 0.8, epsilon = 1e-15);
        assert_relative_eq!(out.m_x().re, 0.4, epsilon = 1e-15);
        let (ra, rb) = beam_splitter_inputs(&out, 0.7).unwrap();
        assert_relative_eq!(ra.n(), 1.2, epsilon = 1e-14);
        assert_relative_eq!(rb.n(), 0.4, epsilon = 1e-14);
        assert_relative_eq!(ra.m().re, 0.3, epsilon = 1e-14);
    }

    #[test]
    fn epr_state_is_beam_splitter_image() {
        let epr = TwoModeGaussian::epr(1.0, 1.2).unwrap();
        let (a, b) = beam_splitter_inputs(&epr, FRAC_PI_2).unwrap();
        assert_relative_eq!(a.m().re, 1.2, epsilon = 1e-14);
        assert_relative_eq!(b.m().re, 1.2, epsilon = 1e-14);
        let (a, b) = beam_splitter_inputs(&epr, 0.0).unwrap();
        assert_relative_eq!(a.m().re, 1.2, epsilon = 1e-14);
        assert_relative_eq!(b.m().re, -1.2, epsilon = 1e-14);
        let general = TwoModeGaussian::correlated(1.0, 0.3, 0.5, 0.0, FRAC_PI_2).unwrap();
        assert!(beam_splitter_inputs(&general, 0.0).is_none());
    }

    #[test]
    fn rotated_quadrature_examples() {
        let s = OneModeGaussian::real(1.0, SQRT_2).unwrap();
        assert_relative_eq!(rotated_quadrature_variance(&s, FRAC_PI_4, 0.0).unwrap(), 1.5, epsilon = 1e-15);
        assert_relative_eq!(rotated_quadrature_variance(&s, 0.3, 0.6).unwrap(), 1.5 - SQRT_2, epsilon = 1e-15);
        assert_relative_eq!(rotated_quadrature_variance(&s, 0.3, 0.6 + FRAC_PI_2).unwrap(), 1.5, epsilon = 1e-15);
        let z = OneModeGaussian::new(1.0, c(0.5, 0.5)).unwrap();
        assert!(matches!(rotated_quadrature_variance(&z, 0.0, 0.0), Err(Error::UnsupportedPhase(_))));
    }

    #[test]
    fn werner_examples() {
        let epr = TwoModeGaussian::epr(1.0, SQRT_2).unwrap();
        let w = werner_mix(&epr, 1.0).unwrap();
        assert_eq!(w.components(), &[(1.0, epr)]);
        let w = werner_mix(&epr, 0.0).unwrap();
        assert!(w.components()[0].1.is_uncorrelated());
        let w = werner_mix(&epr, 0.6).unwrap();
        assert_eq!(w.components().len(), 2);
        assert!(werner_mix(&epr, 1.1).is_err());
        assert!(werner_mix(&TwoModeGaussian::epr(1.0, 1.5).unwrap(), 0.5).is_err());
        let sq = TwoModeGaussian::correlated(1.0, 0.3, 0.3, 0.0, 0.0).unwrap();
        assert!(werner_mix(&sq, 0.5).is_err());
    }
}
