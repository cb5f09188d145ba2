//! Zero-mean Gaussian states and their physicality / classicality predicates.
//!
//! Conventions: `<a†a> = n`, `<aa> = -m`, `<bb> = -m_b`, `<ab> = -m_c`,
//! `<a†b> = m_x`. Displacements are never modeled.

use std::f64::consts::PI;

use nalgebra::{Matrix2, Matrix4};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{invalid, require_finite, Error, Result};
use crate::tolerance::{EPS_CLS, EPS_PHYS};
use crate::wick::{wick_moment, OperatorWord};

/// Tolerance used to recognize structurally zero moments (family detection).
pub(crate) const STRUCTURAL_ZERO: f64 = 1e-12;

fn require_finite_complex(name: &'static str, z: Complex64) -> Result<Complex64> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(invalid(name, format!("must be finite, got {z}")))
    }
}

fn require_photon_number(name: &'static str, n: f64) -> Result<f64> {
    require_finite(name, n)?;
    if n < 0.0 {
        return Err(invalid(name, format!("mean photon number must be >= 0, got {n}")));
    }
    Ok(n)
}

/// P-representability verdict of a one-mode state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Classicality {
    /// `n > |m|`: a regular Glauber P-function exists.
    Classical,
    /// `n = |m|` within tolerance.
    Boundary,
    /// `n < |m|`: squeezed below the vacuum level, no P-function.
    Quantum,
}

/// Single-mode zero-mean Gaussian state with `<a†a> = n` and `<aa> = -m`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OneModeGaussian {
    n: f64,
    m: Complex64,
}

impl OneModeGaussian {
    /// Builds a state value. Physicality is *not* enforced here so that
    /// unphysical parameter sets can still be reported on; see
    /// [`OneModeGaussian::is_physical`].
    pub fn new(n: f64, m: Complex64) -> Result<Self> {
        Ok(OneModeGaussian {
            n: require_photon_number("n", n)?,
            m: require_finite_complex("m", m)?,
        })
    }

    pub fn real(n: f64, m: f64) -> Result<Self> {
        Self::new(n, Complex64::from(m))
    }

    pub fn from_polar(n: f64, m_abs: f64, phase: f64) -> Result<Self> {
        require_finite("phase", phase)?;
        if m_abs < 0.0 {
            return Err(invalid("m_abs", "modulus must be >= 0"));
        }
        Self::new(n, Complex64::from_polar(m_abs, phase))
    }

    pub fn vacuum() -> Self {
        OneModeGaussian {
            n: 0.0,
            m: Complex64::from(0.0),
        }
    }

    pub fn thermal(n: f64) -> Result<Self> {
        Self::real(n, 0.0)
    }

    /// Pure squeezed vacuum with `|m|^2 = n(n+1)` and the given phase of `m`.
    pub fn squeezed_vacuum(n: f64, phase: f64) -> Result<Self> {
        require_photon_number("n", n)?;
        Self::from_polar(n, (n * (n + 1.0)).sqrt(), phase)
    }

    pub fn n(&self) -> f64 {
        self.n
    }

    pub fn m(&self) -> Complex64 {
        self.m
    }

    pub fn m_abs(&self) -> f64 {
        self.m.norm()
    }

    /// `n(n+1) - |m|^2`; non-negative for physical states, zero for pure ones.
    pub fn positivity_margin(&self) -> f64 {
        self.n * (self.n + 1.0) - self.m.norm_sqr()
    }

    pub fn is_physical(&self) -> bool {
        self.positivity_margin() >= -EPS_PHYS
    }

    pub fn is_pure(&self) -> bool {
        self.positivity_margin().abs() <= EPS_PHYS
    }

    pub fn ensure_physical(&self) -> Result<()> {
        if self.is_physical() {
            Ok(())
        } else {
            Err(Error::Nonphysical(format!(
                "|m|^2 = {} exceeds n(n+1) = {}",
                self.m.norm_sqr(),
                self.n * (self.n + 1.0)
            )))
        }
    }

    /// `D = (n+1)^2 - |m|^2`, the normalization of the normally ordered density.
    pub fn d_upper(&self) -> f64 {
        (self.n + 1.0).powi(2) - self.m.norm_sqr()
    }

    /// `d = n^2 - |m|^2`, positive exactly for P-representable states.
    pub fn d_lower(&self) -> f64 {
        self.n * self.n - self.m.norm_sqr()
    }

    pub fn classify(&self) -> Result<Classicality> {
        self.ensure_physical()?;
        let gap = self.n - self.m_abs();
        Ok(if gap > EPS_CLS {
            Classicality::Classical
        } else if gap < -EPS_CLS {
            Classicality::Quantum
        } else {
            Classicality::Boundary
        })
    }

    /// Glauber P-function of a classical state.
    pub fn p_function(&self) -> Result<PFunction> {
        match self.classify()? {
            Classicality::Classical => {
                let d = self.d_lower();
                Ok(PFunction {
                    d,
                    coeff_nn: -self.n / d,
                    coeff_sq: -self.m / (2.0 * d),
                })
            }
            _ => Err(Error::NotPRepresentable {
                n: self.n,
                m_abs: self.m_abs(),
            }),
        }
    }

    /// 2x2 covariance matrix `[[n+1/2, m], [m*, n+1/2]]` of the Weyl
    /// characteristic function.
    pub fn covariance(&self) -> Matrix2<Complex64> {
        let diag = Complex64::from(self.n + 0.5);
        Matrix2::new(diag, self.m, self.m.conj(), diag)
    }

    /// `Tr{D(alpha) rho} = exp(-1/2 (alpha*, alpha) C (alpha, alpha*)^T)`.
    pub fn weyl_characteristic(&self, alpha: Complex64) -> Result<Complex64> {
        self.ensure_physical()?;
        require_finite_complex("alpha", alpha)?;
        let row = nalgebra::RowVector2::new(alpha.conj(), alpha);
        let col = nalgebra::Vector2::new(alpha, alpha.conj());
        let quad = (row * self.covariance() * col)[(0, 0)];
        Ok((-0.5 * quad).exp())
    }

    /// Variances of `X1 = (a+a†)/√2` and `X2 = (a-a†)/(√2 i)`.
    pub fn quadrature_variances(&self) -> Result<(f64, f64)> {
        self.ensure_physical()?;
        let base = self.n + 0.5;
        Ok((base - self.m.re, base + self.m.re))
    }

    /// Normalized second-order degree of coherence `2 + |m|^2/n^2`.
    pub fn g2(&self) -> Result<f64> {
        if self.n == 0.0 {
            return Err(Error::ZeroPhotonNumber("g2"));
        }
        Ok(2.0 + self.m.norm_sqr() / (self.n * self.n))
    }

    /// `Tr rho^2 = 1 / (2 sqrt((n+1/2)^2 - |m|^2))`.
    pub fn purity(&self) -> Result<f64> {
        self.ensure_physical()?;
        let det = (self.n + 0.5).powi(2) - self.m.norm_sqr();
        Ok((0.5 / det.sqrt()).min(1.0))
    }

    /// Second moments of this state on mode `a` with mode `b` in vacuum.
    pub fn second_moments(&self) -> SecondMoments {
        SecondMoments::product(self, &OneModeGaussian::vacuum())
    }

    /// Normally ordered moment of a word that acts on mode `a` only.
    pub fn moment(&self, word: &OperatorWord) -> Result<Complex64> {
        if word.involves(crate::wick::Mode::B) {
            return Err(invalid("word", format!("`{word}` acts on mode b of a one-mode state")));
        }
        Ok(wick_moment(&self.second_moments(), word))
    }
}

/// Gaussian P-function `P(alpha) = exp(coeff_nn |alpha|^2 + coeff_sq alpha*^2 + c.c.) / (pi sqrt d)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PFunction {
    pub d: f64,
    pub coeff_nn: f64,
    pub coeff_sq: Complex64,
}

impl PFunction {
    pub fn density(&self, alpha: Complex64) -> f64 {
        let exponent = self.coeff_nn * alpha.norm_sqr() + 2.0 * (self.coeff_sq * alpha.conj().powi(2)).re;
        exponent.exp() / (PI * self.d.sqrt())
    }
}

/// General two-mode second moments (the moments themselves, not the
/// sign-flipped parameters). Used wherever modes may carry unequal photon
/// numbers, e.g. beam-splitter inputs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SecondMoments {
    pub n_a: f64,
    pub n_b: f64,
    /// `<aa>`
    pub aa: Complex64,
    /// `<bb>`
    pub bb: Complex64,
    /// `<ab>`
    pub ab: Complex64,
    /// `<a†b>`
    pub adag_b: Complex64,
}

impl SecondMoments {
    pub fn product(a: &OneModeGaussian, b: &OneModeGaussian) -> Self {
        SecondMoments {
            n_a: a.n,
            n_b: b.n,
            aa: -a.m,
            bb: -b.m,
            ab: Complex64::from(0.0),
            adag_b: Complex64::from(0.0),
        }
    }

    /// Complex covariance `sigma_ij = <{xi_i, xi_j†}>/2` in the ordering
    /// `xi = (a, b, a†, b†)`.
    pub fn covariance(&self) -> Matrix4<Complex64> {
        let c = Complex64::from;
        let (aa, bb, ab, x) = (self.aa, self.bb, self.ab, self.adag_b);
        Matrix4::new(
            c(self.n_a + 0.5), x.conj(), aa, ab,
            x, c(self.n_b + 0.5), ab, bb,
            aa.conj(), ab.conj(), c(self.n_a + 0.5), x,
            ab.conj(), bb.conj(), x.conj(), c(self.n_b + 0.5),
        )
    }

    /// Smallest eigenvalue of `<xi xi†>` (the uncertainty-relation matrix);
    /// negative exactly when no quantum state has these moments.
    pub fn uncertainty_margin(&self) -> f64 {
        let mut m = self.covariance();
        for i in 0..2 {
            m[(i, i)] += 0.5;
            m[(i + 2, i + 2)] -= 0.5;
        }
        m.symmetric_eigenvalues().min()
    }

    /// `Tr rho^2 = det(2 sigma)^{-1/2}`.
    pub fn purity(&self) -> f64 {
        let det = (self.covariance() * Complex64::from(2.0)).determinant().re;
        (1.0 / det.sqrt()).min(1.0)
    }

    /// `Tr(rho_1 rho_2) = det(sigma_1 + sigma_2)^{-1/2}` for zero-mean Gaussians.
    pub fn overlap(&self, other: &SecondMoments) -> f64 {
        1.0 / (self.covariance() + other.covariance()).determinant().re.sqrt()
    }

    pub fn is_product(&self) -> bool {
        self.ab.norm() <= STRUCTURAL_ZERO && self.adag_b.norm() <= STRUCTURAL_ZERO
    }

    pub fn marginal_a(&self) -> Result<OneModeGaussian> {
        OneModeGaussian::new(self.n_a, -self.aa)
    }

    pub fn marginal_b(&self) -> Result<OneModeGaussian> {
        OneModeGaussian::new(self.n_b, -self.bb)
    }

    /// Moments after `a -> a e^{i theta_a}`, `b -> b e^{i theta_b}`.
    pub fn local_phase_shift(&self, theta_a: f64, theta_b: f64) -> Self {
        let e = |t: f64| Complex64::from_polar(1.0, t);
        SecondMoments {
            aa: self.aa * e(2.0 * theta_a),
            bb: self.bb * e(2.0 * theta_b),
            ab: self.ab * e(theta_a + theta_b),
            adag_b: self.adag_b * e(theta_b - theta_a),
            ..*self
        }
    }
}

/// Anything that answers normally ordered moment queries on modes `a`, `b`.
pub trait TwoModeState {
    fn expect(&self, word: &OperatorWord) -> Complex64;

    /// Cheap necessary-and-sufficient physicality check for Gaussian
    /// moments (the Robertson–Schrödinger uncertainty relation).
    fn check_physical(&self) -> Result<()>;
}

impl TwoModeState for SecondMoments {
    fn expect(&self, word: &OperatorWord) -> Complex64 {
        wick_moment(self, word)
    }

    fn check_physical(&self) -> Result<()> {
        if self.n_a < 0.0 || self.n_b < 0.0 {
            return Err(Error::Nonphysical("negative photon number".into()));
        }
        let margin = self.uncertainty_margin();
        if margin >= -EPS_PHYS {
            Ok(())
        } else {
            Err(Error::Nonphysical(format!(
                "uncertainty relation violated (smallest eigenvalue {margin:.3e})"
            )))
        }
    }
}

/// Two-mode zero-mean Gaussian state with equal mean photon number `n` per
/// mode: `<aa> = -m_a`, `<bb> = -m_b`, `<ab> = -m_c`, `<a†b> = m_x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwoModeGaussian {
    n: f64,
    m_a: Complex64,
    m_b: Complex64,
    m_c: Complex64,
    m_x: Complex64,
}

impl TwoModeGaussian {
    pub fn new(n: f64, m_a: Complex64, m_b: Complex64, m_c: Complex64, m_x: Complex64) -> Result<Self> {
        Ok(TwoModeGaussian {
            n: require_photon_number("n", n)?,
            m_a: require_finite_complex("m_a", m_a)?,
            m_b: require_finite_complex("m_b", m_b)?,
            m_c: require_finite_complex("m_c", m_c)?,
            m_x: require_finite_complex("m_x", m_x)?,
        })
    }

    /// Mixed EPR state: no single-mode squeezing, cross-correlation `m_c`.
    pub fn epr(n: f64, m_c: impl Into<Complex64>) -> Result<Self> {
        let zero = Complex64::from(0.0);
        Self::new(n, zero, zero, m_c.into(), zero)
    }

    pub fn thermal_pair(n: f64) -> Result<Self> {
        Self::epr(n, 0.0)
    }

    /// Product of two one-mode states with the same photon number.
    pub fn uncorrelated(a: &OneModeGaussian, b: &OneModeGaussian) -> Result<Self> {
        if (a.n - b.n).abs() > STRUCTURAL_ZERO {
            return Err(invalid(
                "b",
                format!("modes must share the photon number ({} vs {})", a.n, b.n),
            ));
        }
        let zero = Complex64::from(0.0);
        Self::new(a.n, a.m, b.m, zero, zero)
    }

    /// Two independent copies of `s`, the second one carrying the extra
    /// phase `<bb> = -m e^{i lambda}` (the HBT phase convention, which is
    /// half the phase a `b -> b e^{i lambda}` relabeling would produce).
    pub fn uncorrelated_pair(s: &OneModeGaussian, lambda: f64) -> Result<Self> {
        require_finite("lambda", lambda)?;
        let b = OneModeGaussian::new(s.n, s.m * Complex64::from_polar(1.0, lambda))?;
        Self::uncorrelated(s, &b)
    }

    /// Correlated squeezed state with real `m`, `m_c`:
    /// `<aa> = -m e^{i lambda1}`, `<bb> = -m e^{i lambda2}`, `<ab> = -m_c`.
    pub fn correlated(n: f64, m: f64, m_c: f64, lambda1: f64, lambda2: f64) -> Result<Self> {
        require_finite("m", m)?;
        require_finite("lambda1", lambda1)?;
        require_finite("lambda2", lambda2)?;
        Self::new(
            n,
            Complex64::from_polar(m, lambda1),
            Complex64::from_polar(m, lambda2),
            Complex64::from(m_c),
            Complex64::from(0.0),
        )
    }

    pub fn from_second_moments(m: &SecondMoments) -> Result<Self> {
        if (m.n_a - m.n_b).abs() > STRUCTURAL_ZERO {
            return Err(invalid(
                "moments",
                format!("photon numbers differ ({} vs {})", m.n_a, m.n_b),
            ));
        }
        Self::new(0.5 * (m.n_a + m.n_b), -m.aa, -m.bb, -m.ab, m.adag_b)
    }

    pub fn n(&self) -> f64 {
        self.n
    }
    pub fn m_a(&self) -> Complex64 {
        self.m_a
    }
    pub fn m_b(&self) -> Complex64 {
        self.m_b
    }
    pub fn m_c(&self) -> Complex64 {
        self.m_c
    }
    pub fn m_x(&self) -> Complex64 {
        self.m_x
    }

    pub fn second_moments(&self) -> SecondMoments {
        SecondMoments {
            n_a: self.n,
            n_b: self.n,
            aa: -self.m_a,
            bb: -self.m_b,
            ab: -self.m_c,
            adag_b: self.m_x,
        }
    }

    /// No single-mode squeezing and no `a†b` coherence.
    pub fn is_epr_family(&self) -> bool {
        self.m_a.norm() <= STRUCTURAL_ZERO
            && self.m_b.norm() <= STRUCTURAL_ZERO
            && self.m_x.norm() <= STRUCTURAL_ZERO
    }

    pub fn is_uncorrelated(&self) -> bool {
        self.second_moments().is_product()
    }

    /// Splits an uncorrelated state into its two one-mode factors.
    pub fn factorize(&self) -> Option<(OneModeGaussian, OneModeGaussian)> {
        if !self.is_uncorrelated() {
            return None;
        }
        let a = OneModeGaussian { n: self.n, m: self.m_a };
        let b = OneModeGaussian { n: self.n, m: self.m_b };
        Some((a, b))
    }

    pub fn uncertainty_margin(&self) -> f64 {
        self.second_moments().uncertainty_margin()
    }

    pub fn satisfies_uncertainty_relation(&self) -> bool {
        self.check_physical().is_ok()
    }

    pub fn purity(&self) -> Result<f64> {
        self.check_physical()?;
        Ok(self.second_moments().purity())
    }

    pub fn local_phase_shift(&self, theta_a: f64, theta_b: f64) -> Result<Self> {
        Self::from_second_moments(&self.second_moments().local_phase_shift(theta_a, theta_b))
    }
}

impl TwoModeState for TwoModeGaussian {
    fn expect(&self, word: &OperatorWord) -> Complex64 {
        wick_moment(&self.second_moments(), word)
    }

    fn check_physical(&self) -> Result<()> {
        self.second_moments().check_physical()
    }
}

/// Finite convex combination of two-mode Gaussian states.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GaussianMixture {
    components: Vec<(f64, TwoModeGaussian)>,
}

impl GaussianMixture {
    /// Weights must lie in `(0, 1]` and sum to one within `1e-12`.
    pub fn new(components: Vec<(f64, TwoModeGaussian)>) -> Result<Self> {
        if components.is_empty() {
            return Err(invalid("components", "mixture needs at least one component"));
        }
        for &(w, _) in &components {
            if !(w > 0.0 && w <= 1.0) {
                return Err(invalid("weight", format!("must lie in (0, 1], got {w}")));
            }
        }
        let total: f64 = components.iter().map(|(w, _)| w).sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(invalid("weight", format!("weights sum to {total}, not 1")));
        }
        Ok(GaussianMixture { components })
    }

    pub fn single(state: TwoModeGaussian) -> Self {
        GaussianMixture {
            components: vec![(1.0, state)],
        }
    }

    pub fn components(&self) -> &[(f64, TwoModeGaussian)] {
        &self.components
    }

    /// `Tr rho² = Σ w_i w_j Tr(rho_i rho_j)`.
    pub fn purity(&self) -> Result<f64> {
        self.check_physical()?;
        let moments: Vec<SecondMoments> = self.components.iter().map(|(_, s)| s.second_moments()).collect();
        let mut total = 0.0;
        for (i, (wi, _)) in self.components.iter().enumerate() {
            for (j, (wj, _)) in self.components.iter().enumerate() {
                total += wi * wj * moments[i].overlap(&moments[j]);
            }
        }
        Ok(total)
    }
}

impl TwoModeState for GaussianMixture {
    fn expect(&self, word: &OperatorWord) -> Complex64 {
        self.components
            .iter()
            .map(|(w, s)| *w * s.expect(word))
            .sum()
    }

    fn check_physical(&self) -> Result<()> {
        self.components.iter().try_for_each(|(_, s)| s.check_physical())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::SQRT_2;

    #[test]
    fn physicality_examples() {
        assert!(OneModeGaussian::real(1.0, SQRT_2).unwrap().is_physical());
        assert!(OneModeGaussian::real(1.0, SQRT_2).unwrap().is_pure());
        assert!(OneModeGaussian::vacuum().is_physical());
        assert!(!OneModeGaussian::real(0.5, 1.0).unwrap().is_physical());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(OneModeGaussian::real(-0.1, 0.0).is_err());
        assert!(OneModeGaussian::real(f64::NAN, 0.0).is_err());
        assert!(OneModeGaussian::new(1.0, Complex64::new(0.0, f64::INFINITY)).is_err());
    }

    #[test]
    fn classification_examples() {
        let c = |n: f64, m: f64| OneModeGaussian::real(n, m).unwrap().classify().unwrap();
        assert_eq!(c(1.0, 0.5), Classicality::Classical);
        assert_eq!(c(1.0, 1.0), Classicality::Boundary);
        assert_eq!(c(0.12, 0.29), Classicality::Quantum);
        assert!(OneModeGaussian::real(0.5, 1.0).unwrap().classify().is_err());
    }

    #[test]
    fn p_function_examples() {
        let p = OneModeGaussian::thermal(1.0).unwrap().p_function().unwrap();
        assert_eq!(p.d, 1.0);
        assert_eq!(p.coeff_nn, -1.0);
        let p = OneModeGaussian::real(2.0, 1.0).unwrap().p_function().unwrap();
        assert_eq!(p.d, 3.0);
        let err = OneModeGaussian::real(0.12, 0.29).unwrap().p_function().unwrap_err();
        assert!(matches!(err, Error::NotPRepresentable { .. }));
        assert!(OneModeGaussian::real(1.0, 1.0).unwrap().p_function().is_err());
    }

    /// Midpoint quadrature of the P-function: normalization and the second
    /// moments it has to reproduce.
    #[test]
    fn p_function_integrates_to_state_moments() {
        let s = OneModeGaussian::new(1.3, Complex64::from_polar(0.6, 0.7)).unwrap();
        let p = s.p_function().unwrap();
        let (half, steps) = (12.0, 600);
        let h = 2.0 * half / steps as f64;
        let (mut norm, mut nn, mut sq) = (0.0, 0.0, Complex64::from(0.0));
        for i in 0..steps {
            for j in 0..steps {
                let alpha = Complex64::new(-half + (i as f64 + 0.5) * h, -half + (j as f64 + 0.5) * h);
                let w = p.density(alpha) * h * h;
                norm += w;
                nn += w * alpha.norm_sqr();
                sq += w * alpha * alpha;
            }
        }
        assert_relative_eq!(norm, 1.0, epsilon = 1e-8);
        assert_relative_eq!(nn, 1.3, epsilon = 1e-8);
        assert_relative_eq!(sq.re, -s.m().re, epsilon = 1e-8);
        assert_relative_eq!(sq.im, -s.m().im, epsilon = 1e-8);
    }

    #[test]
    fn weyl_characteristic_closed_form() {
        let s = OneModeGaussian::real(1.0, 1.0).unwrap();
        assert_eq!(s.weyl_characteristic(Complex64::from(0.0)).unwrap(), Complex64::from(1.0));
        let v = OneModeGaussian::vacuum().weyl_characteristic(Complex64::from(1.0)).unwrap();
        assert_relative_eq!(v.re, (-0.5f64).exp(), epsilon = 1e-15);
        // exp(-(n+1/2)|alpha|^2 - Re(m alpha*^2)) at n = m = alpha = 1
        let v = s.weyl_characteristic(Complex64::from(1.0)).unwrap();
        assert_relative_eq!(v.re, (-2.5f64).exp(), epsilon = 1e-15);
        assert_relative_eq!(v.im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn quadrature_examples() {
        assert_eq!(OneModeGaussian::vacuum().quadrature_variances().unwrap(), (0.5, 0.5));
        assert_eq!(OneModeGaussian::real(1.0, 1.0).unwrap().quadrature_variances().unwrap(), (0.5, 2.5));
        let (x1, x2) = OneModeGaussian::real(1.0, SQRT_2).unwrap().quadrature_variances().unwrap();
        assert_relative_eq!(x1, 1.5 - SQRT_2, epsilon = 1e-15);
        assert_relative_eq!(x2, 1.5 + SQRT_2, epsilon = 1e-15);
        assert!(x1 < 0.5);
    }

    #[test]
    fn g2_examples() {
        assert_eq!(OneModeGaussian::thermal(1.0).unwrap().g2().unwrap(), 2.0);
        assert_eq!(OneModeGaussian::real(1.0, 1.0).unwrap().g2().unwrap(), 3.0);
        // amplifier output at G = 1.65, H = 1.05; the two-digit rounding
        // (0.12, 0.29) would give 7.84
        let g = OneModeGaussian::real(0.120417, 0.287083).unwrap().g2().unwrap();
        assert!((g - 7.68).abs() < 0.01, "g2 = {g}");
        assert_eq!(OneModeGaussian::vacuum().g2(), Err(Error::ZeroPhotonNumber("g2")));
    }

    #[test]
    fn purity_examples() {
        assert_eq!(OneModeGaussian::vacuum().purity().unwrap(), 1.0);
        assert_relative_eq!(OneModeGaussian::thermal(1.0).unwrap().purity().unwrap(), 1.0 / 3.0, epsilon = 1e-15);
        assert_relative_eq!(OneModeGaussian::real(1.0, SQRT_2).unwrap().purity().unwrap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn one_mode_moment_rejects_mode_b() {
        let s = OneModeGaussian::thermal(1.0).unwrap();
        assert!(s.moment(&"b+ b".parse().unwrap()).is_err());
        assert_eq!(s.moment(&"a+ a".parse().unwrap()).unwrap(), Complex64::from(1.0));
    }

    #[test]
    fn two_mode_purity_matches_product_of_marginals() {
        let a = OneModeGaussian::from_polar(0.8, 0.5, 0.3).unwrap();
        let b = OneModeGaussian::from_polar(0.8, 0.7, -1.1).unwrap();
        let s = TwoModeGaussian::uncorrelated(&a, &b).unwrap();
        assert_relative_eq!(
            s.purity().unwrap(),
            a.purity().unwrap() * b.purity().unwrap(),
            epsilon = 1e-13
        );
        // pure EPR state
        assert_relative_eq!(TwoModeGaussian::epr(1.0, SQRT_2).unwrap().purity().unwrap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn uncertainty_relation_on_epr_family() {
        // physical iff |m_c|^2 <= n(n+1)
        assert!(TwoModeGaussian::epr(1.0, SQRT_2).unwrap().satisfies_uncertainty_relation());
        assert!(TwoModeGaussian::epr(1.0, 1.2).unwrap().satisfies_uncertainty_relation());
        assert!(!TwoModeGaussian::epr(1.0, 1.5).unwrap().satisfies_uncertainty_relation());
        assert!(!TwoModeGaussian::epr(1.0, 1.42).unwrap().satisfies_uncertainty_relation());
    }

    #[test]
    fn uncertainty_margin_one_mode_agrees_with_positivity() {
        for &(n, m) in &[(0.5, 0.8), (0.5, 0.9), (1.0, 1.4), (1.0, 1.42), (0.0, 0.0), (0.2, 0.1)] {
            let s = OneModeGaussian::real(n, m).unwrap();
            assert_eq!(s.second_moments().check_physical().is_ok(), s.is_physical(), "n={n} m={m}");
        }
    }

    #[test]
    fn mixture_validation() {
        let s = TwoModeGaussian::thermal_pair(1.0).unwrap();
        assert!(GaussianMixture::new(vec![]).is_err());
        assert!(GaussianMixture::new(vec![(0.5, s), (0.4, s)]).is_err());
        assert!(GaussianMixture::new(vec![(0.0, s), (1.0, s)]).is_err());
        assert!(GaussianMixture::new(vec![(0.25, s), (0.75, s)]).is_ok());
    }

    #[test]
    fn mixture_moments_are_weighted_averages() {
        let e = TwoModeGaussian::epr(1.0, 1.2).unwrap();
        let t = TwoModeGaussian::thermal_pair(1.0).unwrap();
        let mix = GaussianMixture::new(vec![(0.3, e), (0.7, t)]).unwrap();
        let w = OperatorWord::monomial(1, 1, 1, 1);
        let expected = 0.3 * e.expect(&w) + 0.7 * t.expect(&w);
        assert_relative_eq!(mix.expect(&w).re, expected.re, epsilon = 1e-15);
    }

    #[test]
    fn mixture_purity() {
        let e = TwoModeGaussian::epr(1.0, SQRT_2).unwrap();
        assert_relative_eq!(GaussianMixture::single(e).purity().unwrap(), 1.0, epsilon = 1e-12);
        let t = TwoModeGaussian::thermal_pair(1.0).unwrap();
        // thermal pair: (1/3)^2; cross term: det(sigma_e + sigma_t)^{-1/2}
        let mix = GaussianMixture::new(vec![(0.5, e), (0.5, t)]).unwrap();
        let cross = e.second_moments().overlap(&t.second_moments());
        assert_relative_eq!(
            mix.purity().unwrap(),
            0.25 * (1.0 + 1.0 / 9.0 + 2.0 * cross),
            epsilon = 1e-12
        );
        assert_relative_eq!(t.second_moments().overlap(&t.second_moments()), 1.0 / 9.0, epsilon = 1e-12);
    }

    #[test]
    fn local_phase_shift_moves_phases() {
        let s = TwoModeGaussian::correlated(1.0, 0.3, 0.5, 0.0, 0.0).unwrap();
        let r = s.local_phase_shift(0.0, PI / 4.0).unwrap();
        assert_relative_eq!(r.m_b().im, 0.3, epsilon = 1e-15);
        assert_relative_eq!(r.m_c().arg(), PI / 4.0, epsilon = 1e-15);
        assert_relative_eq!(r.purity().unwrap(), s.purity().unwrap(), epsilon = 1e-12);
    }
}
