use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI, SQRT_2};

use gsswit_wasm::{bs_curve_values, fringe_values, separability_map, summary, ENTANGLED, NONPHYSICAL, SEPARABLE};

#[test]
fn fringe_grid_matches_visibilities() {
    let (n, m, mc, l1, l2) = (1.0, 0.4, 0.6, 0.3, 1.1);
    let k = 16;
    let grid = fringe_values(n, m, mc, l1, l2, k).unwrap();
    let s = summary(n, m, mc, l1, l2).unwrap();
    let step = 2.0 * PI / k as f64;
    for i in 0..k {
        for j in 0..k {
            let (p1, p2) = (i as f64 * step, j as f64 * step);
            let f = 1.0
                + s.v_minus * (p1 - p2).cos()
                + s.v_plus * (p1 + p2 + l2 - l1).cos()
                + s.v_m * ((p1 - l1).cos() + (p1 + l2).cos() + (p2 - l1).cos() + (p2 + l2).cos());
            assert!((grid[i * k + j] - f).abs() < 1e-12);
        }
    }
}

#[test]
fn beam_splitter_curve_landmarks() {
    let v = bs_curve_values(1.0, SQRT_2, 3).unwrap();
    assert!((v[0] - 0.2).abs() < 1e-12 && (v[1] - 0.4).abs() < 1e-12 && v[2] == 0.0);
    assert!((v[3] - 0.6).abs() < 1e-12 && v[4].abs() < 1e-12 && v[5] == 1.0);
    assert!(bs_curve_values(1.0, 2.0, 3).is_err());
}

#[test]
fn separability_map_codes() {
    let res = 41;
    let map = separability_map(1.0, FRAC_PI_2, SQRT_2, res);
    assert_eq!(map.len(), res * res);
    assert_eq!(map[0], SEPARABLE);
    assert_eq!(map[res * res - 1], NONPHYSICAL);
    assert!(map.contains(&ENTANGLED));
    let s = summary(1.0, SQRT_2 - FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0, FRAC_PI_2).unwrap();
    assert!(s.separable);
    assert!((s.v_minus - 0.375).abs() < 1e-12 && (s.v_plus - 0.125).abs() < 1e-12 && (s.v_m - 0.125).abs() < 1e-12);
}
