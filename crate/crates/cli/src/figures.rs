//! Parameter grids behind each published plot, one CSV row per grid point.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4, PI, SQRT_2};

use anyhow::{bail, Result};
use gsswit_core::interference::{
    visibilities_bs_output, visibilities_general, visibilities_uncorrelated, visibility_epr,
};
use gsswit_core::separability::{
    bs_output_is_separable, bs_separability_min_photon_number, epr_is_entangled, general_is_separable,
    werner_hbt_threshold, werner_ppt_threshold,
};
use gsswit_core::OneModeGaussian;

use crate::states::Angles;
use crate::table::{sig12, Table, Value};

pub const FIGURE_IDS: [&str; 9] = ["1", "3", "4", "5", "6", "8", "8.1", "10", "11"];

#[derive(Debug, Clone, Copy)]
pub struct FigureOptions {
    pub points: usize,
    /// Squeezing of the beam-splitter inputs for the visibility-vs-phase plot.
    pub m: Option<f64>,
    pub angles: Angles,
}

/// `points` evenly spaced values on `[a, b]` merged with the landmark
/// abscissae, sorted, duplicates removed.
fn grid(a: f64, b: f64, points: usize, landmarks: &[f64]) -> Vec<f64> {
    let k = points.max(2);
    let mut xs: Vec<f64> = (0..k).map(|i| a + (b - a) * i as f64 / (k - 1) as f64).collect();
    xs.extend(landmarks.iter().copied().filter(|x| (a..=b).contains(x)));
    xs.sort_by(f64::total_cmp);
    xs.dedup_by(|x, y| (*x - *y).abs() < 1e-12 * (1.0 + y.abs()));
    xs
}

pub fn figure(id: &str, opt: FigureOptions) -> Result<Table> {
    let ang = opt.angles;
    let lambda_col = ang.column("lambda");
    Ok(match id {
        "1" => {
            let mut t = Table::new(
                "one-mode states: physical iff |m|^2 <= n(n+1); P-representable iff |m| <= n",
                &["n", "m_abs_physical_max", "m_abs_classical_max"],
            );
            for n in grid(0.0, 3.0, opt.points, &[1.0]) {
                t.push(vec![n.into(), (n * (n + 1.0)).sqrt().into(), n.into()]);
            }
            t
        }
        "3" | "4" => {
            let formula = "two independent copies, n = 1: v_minus = n^2/(3n^2+|m|^2), v_plus = |m|^2/(3n^2+|m|^2)";
            let mut t = if id == "3" {
                Table::new(formula, &["m_abs", "v_minus", "v_plus", "quantum"])
            } else {
                Table::new(formula, &["m_abs", "v_sum", "quantum"])
            };
            for m in grid(0.0, SQRT_2, opt.points, &[1.0, SQRT_2]) {
                let v = visibilities_uncorrelated(1.0, m)?;
                let quantum = OneModeGaussian::real(1.0, m)?.classify()? == gsswit_core::Classicality::Quantum;
                if id == "3" {
                    t.push(vec![m.into(), v.v_minus.into(), v.v_plus.into(), quantum.into()]);
                } else {
                    t.push(vec![m.into(), (v.v_minus + v.v_plus).into(), quantum.into()]);
                }
            }
            t
        }
        "5" => {
            let mut t = Table::new(
                "mixed EPR state, n = 1: v_minus = (n^2+|m_c|^2)/(3n^2+|m_c|^2); entangled iff |m_c| > n",
                &["mc", "v_minus", "entangled"],
            );
            for mc in grid(0.0, SQRT_2, opt.points, &[1.0, SQRT_2]) {
                t.push(vec![mc.into(), visibility_epr(1.0, mc)?.v_minus.into(), epr_is_entangled(1.0, mc)?.into()]);
            }
            t
        }
        "6" => {
            let mut t = Table::new(
                "Werner mixture thresholds: p_hbt = n/(n+1); p_ppt = 1/(1 + sqrt((1+n)/n) (1+2n^2)^2/(n(1+2n)(1+n^2)))",
                &["n", "p_threshold_hbt", "p_threshold_ppt"],
            );
            for n in grid(0.05, 5.0, opt.points, &[1.0]) {
                t.push(vec![n.into(), werner_hbt_threshold(n)?.into(), werner_ppt_threshold(n)?.into()]);
            }
            t
        }
        "8" => {
            let mut t = Table::new(
                "beam-splitter output separable iff n >= sqrt(|m|^2 + |sin lambda| |m| + 1/4) - 1/2",
                &["m_abs", "n_min_lambda_0", "n_min_lambda_quarter_pi", "n_min_lambda_half_pi"],
            );
            for m in grid(0.0, 3.0, opt.points, &[1.0]) {
                t.push(vec![
                    m.into(),
                    bs_separability_min_photon_number(m, 0.0).into(),
                    bs_separability_min_photon_number(m, FRAC_PI_4).into(),
                    bs_separability_min_photon_number(m, FRAC_PI_2).into(),
                ]);
            }
            t
        }
        "8.1" => {
            let mut t = Table::new(
                "beam-splitter output, n = 1: v_minus = (n^2 + (1-cos 2lambda)|m|^2/2)/(3n^2+|m|^2) for |m| = sqrt 2, 1, 1/2",
                &[
                    &lambda_col,
                    "v_minus_quantum",
                    "v_minus_boundary",
                    "v_minus_classical",
                    "entangled_quantum",
                ],
            );
            for l in grid(0.0, PI, opt.points, &[FRAC_PI_4, FRAC_PI_2]) {
                t.push(vec![
                    ang.express(l).into(),
                    visibilities_bs_output(1.0, SQRT_2, l)?.v_minus.into(),
                    visibilities_bs_output(1.0, 1.0, l)?.v_minus.into(),
                    visibilities_bs_output(1.0, 0.5, l)?.v_minus.into(),
                    (!bs_output_is_separable(1.0, SQRT_2, l)).into(),
                ]);
            }
            t
        }
        "10" => {
            let m = opt.m.unwrap_or(SQRT_2);
            let physical = OneModeGaussian::real(1.0, m)?.is_physical();
            if !physical {
                eprintln!("warning: |m| = {m} exceeds sqrt(n(n+1)) at n = 1; the input state is not physical");
            }
            let mut t = Table::new(
                format!(
                    "beam-splitter output, n = 1, |m| = {}: v_minus = (n^2 + (1-cos 2lambda)|m|^2/2)/(3n^2+|m|^2), \
                     v_plus = (1+cos 2lambda)|m|^2/2/(3n^2+|m|^2)",
                    sig12(m)
                ),
                &[&lambda_col, "v_minus", "v_plus", "physical", "entangled"],
            );
            for l in grid(0.0, PI, opt.points, &[FRAC_PI_4, FRAC_PI_2]) {
                let v = visibilities_bs_output(1.0, m, l)?;
                let entangled = if physical {
                    Value::Bool(!bs_output_is_separable(1.0, m, l))
                } else {
                    Value::Empty
                };
                t.push(vec![ang.express(l).into(), v.v_minus.into(), v.v_plus.into(), physical.into(), entangled]);
            }
            t
        }
        "11" => {
            let mut t = Table::new(
                "correlated state, n = 1, m = sqrt 2 - m_c, lambda1 = 0, lambda2 = pi/2: \
                 v_minus = (n^2+m_c^2)/D, v_plus = m^2/D, v_m = m m_c/D, D = 3n^2+m_c^2+m^2",
                &["mc", "m", "v_minus", "v_plus", "v_m", "separable"],
            );
            for mc in grid(0.0, SQRT_2, opt.points, &[FRAC_1_SQRT_2, 1.0, SQRT_2]) {
                let m = (SQRT_2 - mc).max(0.0);
                let v = visibilities_general(1.0, m, mc, 0.0, FRAC_PI_2)?;
                t.push(vec![
                    mc.into(),
                    m.into(),
                    v.v_minus.into(),
                    v.v_plus.into(),
                    v.v_m.into(),
                    general_is_separable(1.0, m, mc, 0.0, FRAC_PI_2).into(),
                ]);
            }
            t
        }
        other => bail!(crate::InvalidInput(format!(
            "unknown figure `{other}`; expected one of {}",
            FIGURE_IDS.join(", ")
        ))),
    })
}
