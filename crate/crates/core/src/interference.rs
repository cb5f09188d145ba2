//! HBT intensity-correlation fringes, closed-form visibilities for every
//! state family, and visibility extraction from sampled fringes.
//!
//! Detector `i` sees `E_i = (a + b e^{i phi_i})/√2` and the fringe is
//! `<:I(phi1) I(phi2):> = <E1† E2† E2 E1>`. Written out,
//!
//! ```text
//! F(phi1, phi2) = c0 [1 + v_minus cos(phi1 - phi2) + v_plus cos(phi1 + phi2 + offset)
//!                  + v_m (cos(phi1 - l1) + cos(phi1 + l2) + cos(phi2 - l1) + cos(phi2 + l2))]
//! ```
//!
//! with `c0 = <:(I_a + I_b)^2:>/4`.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{invalid, require_finite, Error, Result};
use crate::state::{OneModeGaussian, TwoModeGaussian, TwoModeState};
use crate::tolerance::{EPS_PHYS, EPS_WITNESS};
use crate::wick::{Ladder, NormalPolynomial, OperatorWord};

/// Largest accepted condition number of a fringe-fit design matrix.
pub const MAX_CONDITION: f64 = 1e6;

/// Normalized decomposition of an HBT fringe.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VisibilityRecord {
    /// Amplitude of `cos(phi1 - phi2)`.
    pub v_minus: f64,
    /// Amplitude of `cos(phi1 + phi2 + phase_offset_plus)`.
    pub v_plus: f64,
    /// Amplitude of each of the four single-phase cosines.
    pub v_m: f64,
    pub phase_offset_plus: f64,
    /// `(l1, l2)` inside the single-phase cosines.
    pub mixed_phases: (f64, f64),
}

impl VisibilityRecord {
    fn two(v_minus: f64, v_plus: f64) -> Self {
        VisibilityRecord {
            v_minus,
            v_plus,
            v_m: 0.0,
            phase_offset_plus: 0.0,
            mixed_phases: (0.0, 0.0),
        }
    }

    /// `F / c0` at the given detector phases.
    pub fn fringe(&self, phi1: f64, phi2: f64) -> f64 {
        let (l1, l2) = self.mixed_phases;
        1.0 + self.v_minus * (phi1 - phi2).cos()
            + self.v_plus * (phi1 + phi2 + self.phase_offset_plus).cos()
            + self.v_m
                * ((phi1 - l1).cos() + (phi1 + l2).cos() + (phi2 - l1).cos() + (phi2 + l2).cos())
    }

    /// Complex harmonic amplitudes carried by this record.
    pub fn harmonics(&self) -> FringeHarmonics {
        let (l1, l2) = self.mixed_phases;
        let single = self.v_m * (Complex64::from_polar(1.0, -l1) + Complex64::from_polar(1.0, l2));
        FringeHarmonics {
            minus: Complex64::from(self.v_minus),
            plus: Complex64::from_polar(self.v_plus, self.phase_offset_plus),
            phi1: single,
            phi2: single,
        }
    }
}

/// Fringe as `1 + Re(minus e^{i(phi1-phi2)}) + Re(plus e^{i(phi1+phi2)})
/// + Re(phi1 e^{i phi1}) + Re(phi2 e^{i phi2})`, relative to `c0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FringeHarmonics {
    pub minus: Complex64,
    pub plus: Complex64,
    pub phi1: Complex64,
    pub phi2: Complex64,
}

impl FringeHarmonics {
    /// Canonical record: `v_m` and its phases are chosen so that
    /// `l2 = -l1`, which is all the single-phase harmonic can determine.
    pub fn to_record(&self) -> VisibilityRecord {
        let single = 0.5 * (self.phi1 + self.phi2);
        let psi = single.arg();
        VisibilityRecord {
            v_minus: self.minus.norm(),
            v_plus: self.plus.norm(),
            v_m: 0.5 * single.norm(),
            phase_offset_plus: if self.plus.norm() == 0.0 { 0.0 } else { self.plus.arg() },
            mixed_phases: (-psi, psi),
        }
    }

    /// Largest modulus difference over the four harmonics.
    pub fn max_difference(&self, other: &FringeHarmonics) -> f64 {
        [
            self.minus - other.minus,
            self.plus - other.plus,
            self.phi1 - other.phi1,
            self.phi2 - other.phi2,
        ]
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
    }
}

fn detector_factor(phi: f64, dagger: bool, use_b: bool) -> (Complex64, Ladder) {
    match (use_b, dagger) {
        (false, false) => (Complex64::from(1.0), Ladder::A),
        (false, true) => (Complex64::from(1.0), Ladder::A_DAG),
        (true, false) => (Complex64::from_polar(1.0, phi), Ladder::B),
        (true, true) => (Complex64::from_polar(1.0, -phi), Ladder::B_DAG),
    }
}

/// The operator `:I(phi1) I(phi2):` as a sum of sixteen normally ordered words.
pub fn hbt_operator(phi1: f64, phi2: f64) -> NormalPolynomial {
    let mut poly = NormalPolynomial::new();
    for choice in 0..16u8 {
        let bit = |k: u8| choice & (1 << k) != 0;
        let factors = [
            detector_factor(phi1, true, bit(0)),
            detector_factor(phi2, true, bit(1)),
            detector_factor(phi2, false, bit(2)),
            detector_factor(phi1, false, bit(3)),
        ];
        let coefficient = factors.iter().fold(Complex64::from(0.25), |c, f| c * f.0);
        let word = OperatorWord::new(factors.iter().map(|f| f.1).collect())
            .expect("daggered factors precede undaggered ones");
        poly.push(coefficient, word);
    }
    poly
}

/// `<:(I_a + I_b)^2:> = <a†²a²> + <b†²b²> + 2<a†b†ab>`.
pub fn intensity_normalization<S: TwoModeState + ?Sized>(state: &S) -> f64 {
    let w = |p, q, r, s| state.expect(&OperatorWord::monomial(p, q, r, s)).re;
    w(2, 0, 2, 0) + w(0, 2, 0, 2) + 2.0 * w(1, 1, 1, 1)
}

/// The constant term `c0` of the fringe, `<:(I_a + I_b)^2:>/4`.
pub fn fringe_prefactor<S: TwoModeState + ?Sized>(state: &S) -> Result<f64> {
    state.check_physical()?;
    Ok(0.25 * intensity_normalization(state))
}

/// `<:I(phi1) I(phi2):>` evaluated term by term through the moment engine.
pub fn hbt_correlation<S: TwoModeState + ?Sized>(state: &S, phi1: f64, phi2: f64) -> Result<f64> {
    require_finite("phi1", phi1)?;
    require_finite("phi2", phi2)?;
    state.check_physical()?;
    Ok(hbt_operator(phi1, phi2).expect(state).re)
}

/// Harmonic content of the fringe, read off from the moments that multiply
/// each phase factor.
pub fn fringe_harmonics<S: TwoModeState + ?Sized>(state: &S) -> Result<FringeHarmonics> {
    state.check_physical()?;
    let norm = intensity_normalization(state);
    if norm <= EPS_WITNESS {
        return Err(invalid("state", "vacuum input produces no fringe"));
    }
    let w = |s: &str| state.expect(&s.parse::<OperatorWord>().expect("valid word"));
    // 2 c_k / c0 with c_k = <...>/4 and c0 = norm/4
    let scale = 2.0 / norm;
    Ok(FringeHarmonics {
        minus: scale * w("a+ b+ a b"),
        plus: scale * w("a+ a+ b b"),
        phi1: scale * (w("a+ a+ a b") + w("a+ b+ b b")),
        phi2: scale * (w("a+ a+ b a") + w("b+ a+ b b")),
    })
}

/// Visibilities of any state (or mixture) through its fringe harmonics.
pub fn visibilities<S: TwoModeState + ?Sized>(state: &S) -> Result<VisibilityRecord> {
    Ok(fringe_harmonics(state)?.to_record())
}

fn check_one_mode(n: f64, m_abs: f64) -> Result<()> {
    require_finite("n", n)?;
    require_finite("m", m_abs)?;
    if n < 0.0 || m_abs < 0.0 {
        return Err(invalid("n", "photon number and squeezing modulus must be >= 0"));
    }
    if n == 0.0 && m_abs == 0.0 {
        return Err(invalid("n", "vacuum input produces no fringe"));
    }
    Ok(())
}

/// Two independent copies of a one-mode state: `v_minus = n²/(3n²+|m|²)`,
/// `v_plus = |m|²/(3n²+|m|²)`.
pub fn visibilities_uncorrelated(n: f64, m_abs: f64) -> Result<VisibilityRecord> {
    check_one_mode(n, m_abs)?;
    OneModeGaussian::real(n, m_abs)?.ensure_physical()?;
    let (n2, m2) = (n * n, m_abs * m_abs);
    let den = 3.0 * n2 + m2;
    Ok(VisibilityRecord::two(n2 / den, m2 / den))
}

/// Mixed EPR state: `v_minus = (n²+|m_c|²)/(3n²+|m_c|²)`.
pub fn visibility_epr(n: f64, mc_abs: f64) -> Result<VisibilityRecord> {
    visibility_werner(n, mc_abs, 1.0)
}

/// Werner mixture: `v_minus = (n²+p|m_c|²)/(3n²+p|m_c|²)`.
pub fn visibility_werner(n: f64, mc_abs: f64, p: f64) -> Result<VisibilityRecord> {
    check_one_mode(n, mc_abs)?;
    require_finite("p", p)?;
    if !(0.0..=1.0).contains(&p) {
        return Err(invalid("p", format!("mixing weight must lie in [0, 1], got {p}")));
    }
    if mc_abs * mc_abs > n * (n + 1.0) + EPS_PHYS {
        return Err(Error::Nonphysical(format!(
            "|m_c|^2 = {} exceeds n(n+1) = {}",
            mc_abs * mc_abs,
            n * (n + 1.0)
        )));
    }
    let (n2, c2) = (n * n, p * mc_abs * mc_abs);
    Ok(VisibilityRecord::two((n2 + c2) / (3.0 * n2 + c2), 0.0))
}

/// Beam-splitter output for two equal inputs `(n, m)` with phase `lambda`.
/// Evaluated for any parameters; callers decide what to do with
/// nonphysical ones.
pub fn visibilities_bs_output(n: f64, m_abs: f64, lambda: f64) -> Result<VisibilityRecord> {
    check_one_mode(n, m_abs)?;
    require_finite("lambda", lambda)?;
    let (n2, m2, c) = (n * n, m_abs * m_abs, (2.0 * lambda).cos());
    let den = 3.0 * n2 + m2;
    Ok(VisibilityRecord::two(
        (n2 + 0.5 * (1.0 - c) * m2) / den,
        0.5 * (1.0 + c) * m2 / den,
    ))
}

/// Correlated squeezed state with real `m`, `m_c` and local squeezing
/// phases `lambda1`, `lambda2` (see [`TwoModeGaussian::correlated`]).
pub fn visibilities_general(n: f64, m: f64, m_c: f64, lambda1: f64, lambda2: f64) -> Result<VisibilityRecord> {
    let state = TwoModeGaussian::correlated(n, m, m_c, lambda1, lambda2)?;
    state.check_physical()?;
    let (n2, m2, c2) = (n * n, m * m, m_c * m_c);
    let den = 3.0 * n2 + m2 + c2;
    if den == 0.0 {
        return Err(invalid("n", "vacuum input produces no fringe"));
    }
    Ok(VisibilityRecord {
        v_minus: (n2 + c2) / den,
        v_plus: m2 / den,
        v_m: m * m_c / den,
        phase_offset_plus: lambda2 - lambda1,
        mixed_phases: (lambda1, lambda2),
    })
}

/// Which set of classical bounds applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum InequalityContext {
    /// Two independent one-mode states: `1/4 <= v_minus <= 1/3`.
    UncorrelatedPair,
    /// Beam-splitter output of classical inputs: `1/4 <= v_minus <= 1/2`.
    BeamSplitterOutput,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundCheck {
    pub quantity: &'static str,
    pub value: f64,
    pub lower: f64,
    pub upper: f64,
    pub satisfied: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityReport {
    pub context: InequalityContext,
    pub bounds: Vec<BoundCheck>,
}

impl InequalityReport {
    /// True when every bound holds: the fringe is compatible with a
    /// classical (P-representable) source.
    pub fn is_classical(&self) -> bool {
        self.bounds.iter().all(|b| b.satisfied)
    }

    pub fn violated(&self) -> impl Iterator<Item = &BoundCheck> {
        self.bounds.iter().filter(|b| !b.satisfied)
    }
}

/// Checks the visibilities against the bounds obeyed by classical sources.
pub fn classical_inequality_report(v: &VisibilityRecord, context: InequalityContext) -> InequalityReport {
    let upper_minus = match context {
        InequalityContext::UncorrelatedPair => 1.0 / 3.0,
        InequalityContext::BeamSplitterOutput => 0.5,
    };
    let check = |quantity, value: f64, lower: f64, upper: f64| BoundCheck {
        quantity,
        value,
        lower,
        upper,
        satisfied: value >= lower - EPS_WITNESS && value <= upper + EPS_WITNESS,
    };
    InequalityReport {
        context,
        bounds: vec![
            check("v_minus", v.v_minus, 0.25, upper_minus),
            check("v_plus", v.v_plus, 0.0, 0.25),
            check("v_minus + v_plus", v.v_minus + v.v_plus, 0.0, 0.5),
        ],
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FringeSample {
    pub phi1: f64,
    pub phi2: f64,
    pub value: f64,
}

/// Harmonic basis used by [`fit_visibilities`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FringeModel {
    /// `1, cos(phi1-phi2), sin(phi1-phi2)`
    InPhaseOnly,
    /// adds `cos(phi1+phi2), sin(phi1+phi2)`
    InOut,
    /// adds `cos phi1, sin phi1, cos phi2, sin phi2`
    General,
}

impl FringeModel {
    pub fn parameters(self) -> usize {
        match self {
            FringeModel::InPhaseOnly => 3,
            FringeModel::InOut => 5,
            FringeModel::General => 9,
        }
    }

    fn row(self, phi1: f64, phi2: f64) -> Vec<f64> {
        let (d, s) = (phi1 - phi2, phi1 + phi2);
        let mut row = vec![1.0, d.cos(), d.sin()];
        if self != FringeModel::InPhaseOnly {
            row.extend([s.cos(), s.sin()]);
        }
        if self == FringeModel::General {
            row.extend([phi1.cos(), phi1.sin(), phi2.cos(), phi2.sin()]);
        }
        row
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FringeFit {
    pub record: VisibilityRecord,
    pub harmonics: FringeHarmonics,
    /// Constant term of the fitted fringe.
    pub prefactor: f64,
    /// Root-mean-square residual in the units of the samples.
    pub residual: f64,
    pub condition_number: f64,
}

/// Ordinary least squares of the samples on the model's cosine basis.
pub fn fit_visibilities(samples: &[FringeSample], model: FringeModel) -> Result<FringeFit> {
    let k = model.parameters();
    if samples.len() < 2 * k {
        return Err(Error::Underdetermined {
            samples: samples.len(),
            parameters: k,
        });
    }
    for s in samples {
        require_finite("phi1", s.phi1)?;
        require_finite("phi2", s.phi2)?;
        require_finite("value", s.value)?;
    }
    let rows: Vec<f64> = samples.iter().flat_map(|s| model.row(s.phi1, s.phi2)).collect();
    let design = DMatrix::from_row_slice(samples.len(), k, &rows);
    let target = DVector::from_iterator(samples.len(), samples.iter().map(|s| s.value));

    let svd = design.clone().svd(true, true);
    let (smax, smin) = (svd.singular_values.max(), svd.singular_values.min());
    let condition = if smin > 0.0 { smax / smin } else { f64::INFINITY };
    if condition > MAX_CONDITION {
        return Err(Error::IllConditioned(condition));
    }
    let beta = svd.solve(&target, 0.0).map_err(|e| Error::EigenSolver(e.to_string()))?;
    let residual = ((&design * &beta - &target).norm_squared() / samples.len() as f64).sqrt();

    let c0 = beta[0];
    if c0 <= EPS_WITNESS {
        return Err(invalid("samples", "fringe has no positive constant term"));
    }
    // a cos x + b sin x = Re((a - i b) e^{ix})
    let amp = |i: usize| Complex64::new(beta[i], -beta[i + 1]) / c0;
    let zero = Complex64::from(0.0);
    let harmonics = FringeHarmonics {
        minus: amp(1),
        plus: if k >= 5 { amp(3) } else { zero },
        phi1: if k == 9 { amp(5) } else { zero },
        phi2: if k == 9 { amp(7) } else { zero },
    };
    Ok(FringeFit {
        record: harmonics.to_record(),
        harmonics,
        prefactor: c0,
        residual,
        condition_number: condition,
    })
}

/// `hbt_correlation` on the `k x k` grid `phi_j = 2 pi j / k`.
pub fn sample_fringe_grid<S: TwoModeState + ?Sized>(state: &S, k: usize) -> Result<Vec<FringeSample>> {
    state.check_physical()?;
    let phases: Vec<f64> = (0..k).map(|j| 2.0 * PI * j as f64 / k as f64).collect();
    let mut out = Vec::with_capacity(k * k);
    for &phi1 in &phases {
        for &phi2 in &phases {
            let value = hbt_operator(phi1, phi2).expect(state).re;
            out.push(FringeSample { phi1, phi2, value });
        }
    }
    Ok(out)
}
