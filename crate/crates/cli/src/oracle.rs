//! Concordance suite between the closed forms and the Fock oracle.

use anyhow::Result;
use gsswit_core::fock::{mixture_density, two_mode_density};
use gsswit_core::transforms::{beam_splitter, werner_mix};
use gsswit_core::witness::{whbt_expectation, WitnessKind};
use gsswit_core::{Complex64, GaussianMixture, OneModeGaussian, OperatorWord, TwoModeGaussian, TwoModeState};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::states::ORACLE_TOL;
use crate::table::Table;

#[derive(Debug, Clone, Copy)]
pub struct SuiteOptions {
    pub states: usize,
    pub seed: u64,
    pub n_max: f64,
    pub max_len: usize,
    pub cutoff: usize,
}

const FAMILIES: [&str; 5] = ["uncorrelated", "epr", "bs", "general", "werner"];

fn one_mode(rng: &mut ChaCha8Rng, n_max: f64) -> OneModeGaussian {
    let n = rng.gen_range(0.05..n_max);
    let m = rng.gen_range(0.0..=(n * (n + 1.0)).sqrt());
    OneModeGaussian::from_polar(n, m, rng.gen_range(0.0..std::f64::consts::TAU)).expect("sampled inside the physical region")
}

fn sample(rng: &mut ChaCha8Rng, family: &str, n_max: f64) -> Result<(String, GaussianMixture)> {
    let tau = std::f64::consts::TAU;
    Ok(match family {
        "uncorrelated" => {
            let a = one_mode(rng, n_max);
            let m_b = rng.gen_range(0.0..=(a.n() * (a.n() + 1.0)).sqrt());
            let b = OneModeGaussian::from_polar(a.n(), m_b, rng.gen_range(0.0..tau))?;
            let label = format!("n={:.4} m_a={:.4} m_b={:.4}", a.n(), a.m_abs(), b.m_abs());
            (label, GaussianMixture::single(TwoModeGaussian::uncorrelated(&a, &b)?))
        }
        "epr" => {
            let n = rng.gen_range(0.05..n_max);
            let mc = rng.gen_range(0.0..=(n * (n + 1.0)).sqrt());
            let st = TwoModeGaussian::epr(n, Complex64::from_polar(mc, rng.gen_range(0.0..tau)))?;
            (format!("n={n:.4} mc={mc:.4}"), GaussianMixture::single(st))
        }
        "bs" => {
            let s = one_mode(rng, n_max);
            let s = OneModeGaussian::real(s.n(), s.m_abs())?;
            let lambda = rng.gen_range(0.0..std::f64::consts::PI);
            let label = format!("n={:.4} m={:.4} lambda={lambda:.4}", s.n(), s.m_abs());
            (label, GaussianMixture::single(beam_splitter(&s, &s, lambda)?))
        }
        "general" => loop {
            let n = rng.gen_range(0.05..n_max);
            let top = (n * (n + 1.0)).sqrt();
            let (m, mc) = (rng.gen_range(0.0..top), rng.gen_range(0.0..top));
            let (l1, l2) = (rng.gen_range(0.0..tau), rng.gen_range(0.0..tau));
            if let Ok(st) = TwoModeGaussian::correlated(n, m, mc, l1, l2) {
                if st.check_physical().is_ok() {
                    let label = format!("n={n:.4} m={m:.4} mc={mc:.4} lambda1={l1:.4} lambda2={l2:.4}");
                    break (label, GaussianMixture::single(st));
                }
            }
        },
        _ => {
            let n = rng.gen_range(0.05..n_max);
            let mc = rng.gen_range(0.0..=(n * (n + 1.0)).sqrt());
            let p = rng.gen_range(0.0..=1.0);
            (format!("n={n:.4} mc={mc:.4} p={p:.4}"), werner_mix(&TwoModeGaussian::epr(n, mc)?, p)?)
        }
    })
}

fn relative(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / (1.0 + b.norm())
}

/// Runs the suite; the returned table has one row per check and the flag is
/// true when every check passed.
pub fn run(opt: SuiteOptions) -> Result<(Table, bool)> {
    let mut rng = ChaCha8Rng::seed_from_u64(opt.seed);
    let max_len = opt.max_len.min(opt.cutoff / 2);
    let words = OperatorWord::monomials_up_to(max_len);
    let mut t = Table::new(
        format!(
            "relative deviation |oracle - closed form|/(1 + |closed form|) at cutoff {}, tolerance {ORACLE_TOL}",
            opt.cutoff
        ),
        &["check", "family", "state", "max_deviation", "pass"],
    );
    let mut all = true;
    let mut record = |t: &mut Table, check: &str, family: &str, state: &str, dev: f64, pass: bool| {
        all &= pass;
        t.push(vec![check.into(), family.into(), state.into(), dev.into(), pass.into()]);
    };

    for k in 0..opt.states {
        let family = FAMILIES[k % FAMILIES.len()];
        let (label, mix) = sample(&mut rng, family, opt.n_max)?;
        let rho = mixture_density(&mix, opt.cutoff)?;
        let mut dev: f64 = 0.0;
        for w in &words {
            dev = dev.max(relative(rho.moment(w)?, mix.expect(w)));
        }
        record(&mut t, &format!("moments up to length {max_len}"), family, &label, dev, dev < ORACLE_TOL);
        let w = relative(
            rho.expectation_of_witness(WitnessKind::WHBT)?.into(),
            whbt_expectation(&mix)?.value.into(),
        );
        record(&mut t, "W_HBT", family, &label, w, w < ORACLE_TOL);
        let p = relative(rho.purity().into(), mix.purity()?.into());
        record(&mut t, "purity", family, &label, p, p < ORACLE_TOL);
    }

    for n in [0.5, 1.0] {
        let flip = epr_ppt_flip(n, opt.cutoff)?;
        let dev = (flip - n).abs();
        record(&mut t, "EPR PPT sign change at m_c = n", "epr", &format!("n={n}"), dev, dev <= 0.02);
    }
    Ok((t, all))
}

/// Bisects the EPR correlation at which the partial transpose first has a
/// negative eigenvalue.
fn epr_ppt_flip(n: f64, cutoff: usize) -> Result<f64> {
    let negative = |mc: f64| -> Result<bool> {
        let rho = two_mode_density(&TwoModeGaussian::epr(n, mc)?, cutoff)?;
        Ok(rho.ppt_min_eigenvalue()? < -1e-9)
    };
    let (mut lo, mut hi) = (0.5 * n, (n * (n + 1.0)).sqrt());
    for _ in 0..10 {
        let mid = 0.5 * (lo + hi);
        if negative(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
