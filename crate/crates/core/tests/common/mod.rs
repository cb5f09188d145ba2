#![allow(dead_code)]

use std::f64::consts::PI;

use gsswit_core::transforms::{beam_splitter, werner_mix};
use gsswit_core::{Complex64, GaussianMixture, OneModeGaussian, TwoModeGaussian, TwoModeState};
use rand::Rng;

pub const N_MAX: f64 = 1.5;

/// Physical one-mode state with `n <= n_max`, squeezing fraction uniform in
/// `[0, 1]` of the pure-state value and a uniform phase.
pub fn one_mode<R: Rng>(rng: &mut R, n_max: f64) -> OneModeGaussian {
    let n = rng.gen_range(0.02..n_max);
    let frac: f64 = rng.gen_range(0.0..1.0);
    OneModeGaussian::from_polar(n, frac * (n * (n + 1.0)).sqrt(), rng.gen_range(0.0..2.0 * PI)).unwrap()
}

pub fn classical_one_mode<R: Rng>(rng: &mut R, n_max: f64) -> OneModeGaussian {
    let n = rng.gen_range(0.02..n_max);
    OneModeGaussian::from_polar(n, rng.gen_range(0.0..1.0) * n, rng.gen_range(0.0..2.0 * PI)).unwrap()
}

pub fn epr<R: Rng>(rng: &mut R, n_max: f64) -> TwoModeGaussian {
    let n = rng.gen_range(0.02..n_max);
    let mc = rng.gen_range(0.0..1.0) * (n * (n + 1.0)).sqrt();
    TwoModeGaussian::epr(n, Complex64::from_polar(mc, rng.gen_range(0.0..2.0 * PI))).unwrap()
}

pub fn uncorrelated<R: Rng>(rng: &mut R, n_max: f64) -> TwoModeGaussian {
    let a = one_mode(rng, n_max);
    let frac: f64 = rng.gen_range(0.0..1.0);
    let b = OneModeGaussian::from_polar(a.n(), frac * (a.n() * (a.n() + 1.0)).sqrt(), rng.gen_range(0.0..2.0 * PI)).unwrap();
    TwoModeGaussian::uncorrelated(&a, &b).unwrap()
}

pub fn bs_output<R: Rng>(rng: &mut R, n_max: f64) -> TwoModeGaussian {
    let s = one_mode(rng, n_max);
    beam_splitter(&s, &s, rng.gen_range(0.0..PI)).unwrap()
}

/// Correlated state with real `m`, `m_c` and random local phases, drawn by
/// rejection until it satisfies the uncertainty relation.
pub fn correlated<R: Rng>(rng: &mut R, n_max: f64) -> TwoModeGaussian {
    loop {
        let n: f64 = rng.gen_range(0.02..n_max);
        let top = (n * (n + 1.0)).sqrt();
        let st = TwoModeGaussian::correlated(
            n,
            rng.gen_range(0.0..top),
            rng.gen_range(0.0..top),
            rng.gen_range(0.0..2.0 * PI),
            rng.gen_range(0.0..2.0 * PI),
        )
        .unwrap();
        if st.check_physical().is_ok() {
            return st;
        }
    }
}

pub fn werner<R: Rng>(rng: &mut R, n_max: f64) -> GaussianMixture {
    let e = epr(rng, n_max);
    werner_mix(&e, rng.gen_range(0.0..1.0)).unwrap()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Uncorrelated,
    Epr,
    BeamSplitter,
    Correlated,
    Werner,
}

pub const FAMILIES: [Family; 5] = [
    Family::Uncorrelated,
    Family::Epr,
    Family::BeamSplitter,
    Family::Correlated,
    Family::Werner,
];

pub fn two_mode<R: Rng>(rng: &mut R, family: Family, n_max: f64) -> GaussianMixture {
    match family {
        Family::Uncorrelated => GaussianMixture::single(uncorrelated(rng, n_max)),
        Family::Epr => GaussianMixture::single(epr(rng, n_max)),
        Family::BeamSplitter => GaussianMixture::single(bs_output(rng, n_max)),
        Family::Correlated => GaussianMixture::single(correlated(rng, n_max)),
        Family::Werner => werner(rng, n_max),
    }
}
