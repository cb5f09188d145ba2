//! State families selectable on the command line and their analytic and
//! oracle reports.

use std::f64::consts::PI;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::Subcommand;
use gsswit_core::fock::{mixture_density, one_mode_density, FockDensity};
use gsswit_core::interference::{
    classical_inequality_report, visibilities_bs_output, visibilities_general, visibilities_uncorrelated,
    visibility_epr, visibility_werner, InequalityContext, VisibilityRecord,
};
use gsswit_core::separability::{
    bs_output_is_separable, epr_is_entangled, general_is_separable, werner_hbt_threshold, werner_ppt_threshold,
};
use gsswit_core::transforms::{beam_splitter, werner_mix};
use gsswit_core::witness::{w2_expectation, whbt_expectation, whbt_werner, Verdict, WitnessKind};
use gsswit_core::{GaussianMixture, OneModeGaussian, TwoModeGaussian};

use crate::table::Value;
use crate::OracleDisagreement;

/// Relative tolerance for closed form vs Fock oracle comparisons.
pub const ORACLE_TOL: f64 = 1e-4;

#[derive(Debug, Clone, Subcommand)]
pub enum StateSpec {
    /// One mode with <a†a> = n and <aa> = -m e^{i phase}.
    #[command(allow_negative_numbers = true)]
    OneMode {
        #[arg(long)]
        n: f64,
        #[arg(long)]
        m: f64,
        #[arg(long, default_value_t = 0.0)]
        phase: f64,
    },
    /// Mixed EPR state: <a†a> = <b†b> = n, <ab> = -m_c.
    #[command(allow_negative_numbers = true)]
    Epr {
        #[arg(long)]
        n: f64,
        #[arg(long)]
        mc: f64,
    },
    /// p * EPR(n, m_c) + (1 - p) * thermal pair.
    #[command(allow_negative_numbers = true)]
    Werner {
        #[arg(long)]
        n: f64,
        #[arg(long)]
        mc: f64,
        #[arg(long)]
        p: f64,
    },
    /// 50/50 beam-splitter output of two copies of (n, m), phase lambda on input b.
    #[command(allow_negative_numbers = true)]
    Bs {
        #[arg(long)]
        n: f64,
        #[arg(long)]
        m: f64,
        #[arg(long)]
        lambda: f64,
    },
    /// Correlated state with <aa> = -m e^{i lambda1}, <bb> = -m e^{i lambda2}, <ab> = -m_c.
    #[command(allow_negative_numbers = true)]
    General {
        #[arg(long)]
        n: f64,
        #[arg(long)]
        m: f64,
        #[arg(long)]
        mc: f64,
        #[arg(long)]
        lambda1: f64,
        #[arg(long)]
        lambda2: f64,
    },
}

/// Angle conversion: command-line angles are in units of pi unless
/// `--radians` is given.
#[derive(Debug, Clone, Copy)]
pub struct Angles {
    pub radians: bool,
}

impl Angles {
    pub fn to_rad(self, x: f64) -> f64 {
        if self.radians {
            x
        } else {
            x * PI
        }
    }

    pub fn express(self, x: f64) -> f64 {
        if self.radians {
            x
        } else {
            x / PI
        }
    }

    pub fn column(self, name: &str) -> String {
        if self.radians {
            name.to_string()
        } else {
            format!("{name}_over_pi")
        }
    }
}

pub enum Built {
    One(OneModeGaussian),
    Two(GaussianMixture),
}

impl StateSpec {
    pub fn family(&self) -> &'static str {
        match self {
            StateSpec::OneMode { .. } => "one-mode",
            StateSpec::Epr { .. } => "epr",
            StateSpec::Werner { .. } => "werner",
            StateSpec::Bs { .. } => "bs",
            StateSpec::General { .. } => "general",
        }
    }

    /// Mutable access to a named parameter, for sweeps.
    pub fn parameter_mut(&mut self, name: &str) -> Option<&mut f64> {
        match (self, name) {
            (StateSpec::OneMode { n, .. }, "n")
            | (StateSpec::Epr { n, .. }, "n")
            | (StateSpec::Werner { n, .. }, "n")
            | (StateSpec::Bs { n, .. }, "n")
            | (StateSpec::General { n, .. }, "n") => Some(n),
            (StateSpec::OneMode { m, .. }, "m") | (StateSpec::Bs { m, .. }, "m") | (StateSpec::General { m, .. }, "m") => {
                Some(m)
            }
            (StateSpec::OneMode { phase, .. }, "phase") => Some(phase),
            (StateSpec::Epr { mc, .. }, "mc") | (StateSpec::Werner { mc, .. }, "mc") | (StateSpec::General { mc, .. }, "mc") => {
                Some(mc)
            }
            (StateSpec::Werner { p, .. }, "p") => Some(p),
            (StateSpec::Bs { lambda, .. }, "lambda") => Some(lambda),
            (StateSpec::General { lambda1, .. }, "lambda1") => Some(lambda1),
            (StateSpec::General { lambda2, .. }, "lambda2") => Some(lambda2),
            _ => None,
        }
    }

    pub fn is_angle(name: &str) -> bool {
        matches!(name, "phase" | "lambda" | "lambda1" | "lambda2")
    }

    pub fn build(&self, angles: Angles) -> Result<Built> {
        Ok(match *self {
            StateSpec::OneMode { n, m, phase } => {
                let s = OneModeGaussian::from_polar(n, m, angles.to_rad(phase))?;
                s.ensure_physical()?;
                Built::One(s)
            }
            StateSpec::Epr { n, mc } => Built::Two(GaussianMixture::single(TwoModeGaussian::epr(n, mc)?)),
            StateSpec::Werner { n, mc, p } => Built::Two(werner_mix(&TwoModeGaussian::epr(n, mc)?, p)?),
            StateSpec::Bs { n, m, lambda } => {
                let s = OneModeGaussian::real(n, m)?;
                s.ensure_physical()?;
                Built::Two(GaussianMixture::single(beam_splitter(&s, &s, angles.to_rad(lambda))?))
            }
            StateSpec::General {
                n,
                m,
                mc,
                lambda1,
                lambda2,
            } => Built::Two(GaussianMixture::single(TwoModeGaussian::correlated(
                n,
                m,
                mc,
                angles.to_rad(lambda1),
                angles.to_rad(lambda2),
            )?)),
        })
    }

    /// Closed-form visibilities; for a one-mode state, those of two
    /// independent copies.
    pub fn visibilities(&self, angles: Angles) -> Result<(VisibilityRecord, Option<InequalityContext>)> {
        Ok(match *self {
            StateSpec::OneMode { n, m, .. } => (visibilities_uncorrelated(n, m)?, Some(InequalityContext::UncorrelatedPair)),
            StateSpec::Epr { n, mc } => (visibility_epr(n, mc)?, None),
            StateSpec::Werner { n, mc, p } => (visibility_werner(n, mc, p)?, None),
            StateSpec::Bs { n, m, lambda } => {
                OneModeGaussian::real(n, m)?.ensure_physical()?;
                (
                    visibilities_bs_output(n, m, angles.to_rad(lambda))?,
                    Some(InequalityContext::BeamSplitterOutput),
                )
            }
            StateSpec::General {
                n,
                m,
                mc,
                lambda1,
                lambda2,
            } => (visibilities_general(n, m, mc, angles.to_rad(lambda1), angles.to_rad(lambda2))?, None),
        })
    }

    /// Witness appropriate to the family: W2 for one mode, W_HBT otherwise.
    pub fn witness(&self, built: &Built) -> Result<(WitnessKind, f64)> {
        Ok(match (self, built) {
            (_, Built::One(s)) => (WitnessKind::W2, w2_expectation(s)?.value),
            (StateSpec::Werner { n, mc, p }, _) => (WitnessKind::WHBT, whbt_werner(*n, *mc, *p)?),
            (_, Built::Two(mix)) => (WitnessKind::WHBT, whbt_expectation(mix)?.value),
        })
    }

    /// Separability verdict for two-mode families.
    fn separability(&self, angles: Angles, whbt: f64) -> Result<&'static str> {
        let verdict = |separable: bool| if separable { "separable" } else { "entangled" };
        Ok(match *self {
            StateSpec::OneMode { .. } => unreachable!("one-mode states have no separability verdict"),
            StateSpec::Epr { n, mc } => verdict(!epr_is_entangled(n, mc)?),
            StateSpec::Werner { n, mc, p } => {
                let pure = (mc * mc - n * (n + 1.0)).abs() < 1e-9;
                if whbt < 0.0 || (pure && n > 0.0 && p > werner_ppt_threshold(n)?) {
                    "entangled"
                } else {
                    "undetermined"
                }
            }
            StateSpec::Bs { n, m, lambda } => verdict(bs_output_is_separable(n, m, angles.to_rad(lambda))),
            StateSpec::General {
                n,
                m,
                mc,
                lambda1,
                lambda2,
            } => verdict(general_is_separable(n, m, mc, angles.to_rad(lambda1), angles.to_rad(lambda2))),
        })
    }
}

pub fn witness_name(kind: WitnessKind) -> &'static str {
    match kind {
        WitnessKind::W2 => "W2",
        WitnessKind::WHBT => "W_HBT",
    }
}

pub fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::ClassicalOrSeparable => "classical-or-separable",
        Verdict::Boundary => "boundary",
        Verdict::QuantumOrEntangled => "quantum-or-entangled",
    }
}

pub type Fields = Vec<(String, Value)>;

fn field(name: &str, v: impl Into<Value>) -> (String, Value) {
    (name.to_string(), v.into())
}

pub fn parameter_fields(spec: &StateSpec, angles: Angles) -> Fields {
    let mut f = vec![field("family", spec.family())];
    match *spec {
        StateSpec::OneMode { n, m, phase } => f.extend([field("n", n), field("m", m), field(&angles.column("phase"), phase)]),
        StateSpec::Epr { n, mc } => f.extend([field("n", n), field("mc", mc)]),
        StateSpec::Werner { n, mc, p } => f.extend([field("n", n), field("mc", mc), field("p", p)]),
        StateSpec::Bs { n, m, lambda } => f.extend([field("n", n), field("m", m), field(&angles.column("lambda"), lambda)]),
        StateSpec::General {
            n,
            m,
            mc,
            lambda1,
            lambda2,
        } => f.extend([
            field("n", n),
            field("m", m),
            field("mc", mc),
            field(&angles.column("lambda1"), lambda1),
            field(&angles.column("lambda2"), lambda2),
        ]),
    }
    f
}

/// Physicality, classicality or separability, purity, witness and
/// visibilities from the closed forms.
pub fn analytic_fields(spec: &StateSpec, angles: Angles) -> Result<Fields> {
    let built = spec.build(angles)?;
    let mut f = vec![field("physical", true)];
    let (kind, w) = spec.witness(&built)?;
    match &built {
        Built::One(s) => {
            f.push(field("classicality", format!("{:?}", s.classify()?).to_lowercase()));
            f.push(field("purity", s.purity()?));
            f.push(field("g2", s.g2()?));
        }
        Built::Two(mix) => {
            f.push(field("separability", spec.separability(angles, w)?));
            f.push(field("purity", mix.purity()?));
        }
    }
    f.push(field(witness_name(kind), w));
    f.push(field("witness_verdict", verdict_name(Verdict::from_value(w))));
    if let Built::One(s) = &built {
        let pair = TwoModeGaussian::uncorrelated(s, s)?;
        f.push(field("pair_W_HBT", whbt_expectation(&pair)?.value));
    }
    let (v, context) = spec.visibilities(angles)?;
    f.push(field("v_minus", v.v_minus));
    f.push(field("v_plus", v.v_plus));
    f.push(field("v_m", v.v_m));
    if let Some(ctx) = context {
        f.push(field("classical_inequalities_hold", classical_inequality_report(&v, ctx).is_classical()));
    }
    if let StateSpec::Werner { n, .. } = *spec {
        f.push(field("p_threshold_hbt", werner_hbt_threshold(n)?));
        f.push(field("p_threshold_ppt", werner_ppt_threshold(n)?));
    }
    Ok(f)
}

fn relative(a: f64, b: f64) -> f64 {
    (a - b).abs() / (1.0 + b.abs())
}

pub struct OracleReport {
    pub fields: Fields,
    pub density: FockDensity,
    pub disagreements: Vec<String>,
}

/// Fock-oracle values and their deviation from the closed forms.
pub fn oracle_fields(spec: &StateSpec, angles: Angles, cutoff: usize) -> Result<OracleReport> {
    let built = spec.build(angles)?;
    let (kind, w) = spec.witness(&built)?;
    let (rho, purity) = match &built {
        Built::One(s) => (one_mode_density(s, cutoff)?, s.purity()?),
        Built::Two(mix) => (mixture_density(mix, cutoff)?, mix.purity()?),
    };
    let mut disagreements = Vec::new();
    let mut f = vec![field("oracle_cutoff", cutoff as f64), field("oracle_trace_deficit", rho.trace_deficit())];

    let w_oracle = rho.expectation_of_witness(kind)?;
    let dw = relative(w_oracle, w);
    f.push(field(&format!("oracle_{}", witness_name(kind)), w_oracle));
    f.push(field(&format!("delta_{}", witness_name(kind)), dw));
    if dw > ORACLE_TOL {
        disagreements.push(format!("{} differs by {dw:.3e}", witness_name(kind)));
    }
    let dp = relative(rho.purity(), purity);
    f.push(field("oracle_purity", rho.purity()));
    f.push(field("delta_purity", dp));
    if dp > ORACLE_TOL {
        disagreements.push(format!("purity differs by {dp:.3e}"));
    }
    f.push(field("oracle_min_eigenvalue", rho.min_eigenvalue()?));
    if let Built::Two(mix) = &built {
        let ppt = rho.ppt_min_eigenvalue()?;
        f.push(field("oracle_ppt_min_eigenvalue", ppt));
        let gaussian = mix.components().len() == 1;
        if gaussian && ppt.abs() > 1e-6 {
            let analytic_entangled = spec.separability(angles, w)? == "entangled";
            if analytic_entangled != (ppt < 0.0) {
                disagreements.push(format!("PPT minimum eigenvalue {ppt:.3e} contradicts the analytic verdict"));
            }
        }
    }
    Ok(OracleReport {
        fields: f,
        density: rho,
        disagreements,
    })
}

pub fn write_dump(density: &FockDensity, path: &PathBuf) -> Result<()> {
    let file = std::fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
    density.write_dump(std::io::BufWriter::new(file))?;
    Ok(())
}

pub fn check_oracle(report: &OracleReport) -> Result<()> {
    if report.disagreements.is_empty() {
        Ok(())
    } else {
        bail!(OracleDisagreement(report.disagreements.join("; ")))
    }
}
