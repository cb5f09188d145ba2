//! Browser bindings: HBT fringe maps, beam-splitter visibility curves and a
//! separability map for the correlated squeezed-state family.
//!
//! Every state here is [`TwoModeGaussian::correlated`]: `<a†a> = <b†b> = n`,
//! `<aa> = -m e^{i lambda1}`, `<bb> = -m e^{i lambda2}`, `<ab> = -m_c`.
//! `m_c = 0` gives two independent squeezed beams, `m = 0` the mixed EPR
//! state. Angles are in radians.

use std::f64::consts::PI;

use gsswit_core::interference::{fringe_prefactor, hbt_correlation, visibilities_bs_output, visibilities_general};
use gsswit_core::separability::{bs_output_is_separable, general_is_separable};
use gsswit_core::witness::whbt_expectation;
use gsswit_core::{OneModeGaussian, Result, TwoModeGaussian, TwoModeState};
use wasm_bindgen::prelude::*;

/// Cell codes of [`separability_map`].
pub const NONPHYSICAL: u8 = 0;
pub const SEPARABLE: u8 = 1;
pub const ENTANGLED: u8 = 2;

fn correlated(n: f64, m: f64, mc: f64, lambda1: f64, lambda2: f64) -> Result<TwoModeGaussian> {
    let s = TwoModeGaussian::correlated(n, m, mc, lambda1, lambda2)?;
    s.check_physical()?;
    Ok(s)
}

fn js(e: gsswit_core::Error) -> JsError {
    JsError::new(&e.to_string())
}

/// Normalized fringe `F(phi1, phi2)/c0` on a `k`×`k` grid over `[0, 2pi)²`,
/// row-major with `phi1` along rows.
pub fn fringe_values(n: f64, m: f64, mc: f64, lambda1: f64, lambda2: f64, k: usize) -> Result<Vec<f64>> {
    let s = correlated(n, m, mc, lambda1, lambda2)?;
    let c0 = fringe_prefactor(&s)?;
    let step = 2.0 * PI / k as f64;
    let mut out = Vec::with_capacity(k * k);
    for i in 0..k {
        for j in 0..k {
            out.push(hbt_correlation(&s, i as f64 * step, j as f64 * step)? / c0);
        }
    }
    Ok(out)
}

#[wasm_bindgen]
pub fn fringe_grid(n: f64, m: f64, mc: f64, lambda1: f64, lambda2: f64, k: usize) -> std::result::Result<Vec<f64>, JsError> {
    fringe_values(n, m, mc, lambda1, lambda2, k).map_err(js)
}

/// Beam-splitter output of two copies of `(n, m)` against the input phase
/// `lambda` on `[0, pi]`: `points` triples `(v_minus, v_plus, entangled)`,
/// flattened. The flag is 1 for entangled outputs.
pub fn bs_curve_values(n: f64, m: f64, points: usize) -> Result<Vec<f64>> {
    OneModeGaussian::real(n, m)?.ensure_physical()?;
    let mut out = Vec::with_capacity(3 * points);
    for i in 0..points {
        let lambda = PI * i as f64 / (points.max(2) - 1) as f64;
        let v = visibilities_bs_output(n, m, lambda)?;
        out.extend([v.v_minus, v.v_plus, f64::from(u8::from(!bs_output_is_separable(n, m, lambda)))]);
    }
    Ok(out)
}

#[wasm_bindgen]
pub fn visibility_curves(n: f64, m: f64, points: usize) -> std::result::Result<Vec<f64>, JsError> {
    bs_curve_values(n, m, points).map_err(js)
}

/// Separability over the `(m, m_c)` square `[0, m_max]²` at fixed `n` and
/// phase sum, `res`×`res` cells with `m` along rows.
#[wasm_bindgen]
pub fn separability_map(n: f64, lambda_sum: f64, m_max: f64, res: usize) -> Vec<u8> {
    let mut out = Vec::with_capacity(res * res);
    let step = m_max / (res.max(2) - 1) as f64;
    for i in 0..res {
        for j in 0..res {
            let (m, mc) = (i as f64 * step, j as f64 * step);
            out.push(match correlated(n, m, mc, 0.0, lambda_sum) {
                Err(_) => NONPHYSICAL,
                Ok(_) if general_is_separable(n, m, mc, 0.0, lambda_sum) => SEPARABLE,
                Ok(_) => ENTANGLED,
            });
        }
    }
    out
}

/// Closed-form summary of one correlated state.
#[wasm_bindgen]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub v_minus: f64,
    pub v_plus: f64,
    pub v_m: f64,
    pub w_hbt: f64,
    pub separable: bool,
    pub purity: f64,
}

pub fn summary(n: f64, m: f64, mc: f64, lambda1: f64, lambda2: f64) -> Result<Summary> {
    let s = correlated(n, m, mc, lambda1, lambda2)?;
    let v = visibilities_general(n, m, mc, lambda1, lambda2)?;
    Ok(Summary {
        v_minus: v.v_minus,
        v_plus: v.v_plus,
        v_m: v.v_m,
        w_hbt: whbt_expectation(&s)?.value,
        separable: general_is_separable(n, m, mc, lambda1, lambda2),
        purity: s.purity()?,
    })
}

#[wasm_bindgen]
pub fn classify(n: f64, m: f64, mc: f64, lambda1: f64, lambda2: f64) -> std::result::Result<Summary, JsError> {
    summary(n, m, mc, lambda1, lambda2).map_err(js)
}
