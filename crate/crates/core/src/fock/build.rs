//! Construction routes for truncated Fock-basis densities.

use nalgebra::{DMatrix, Matrix2};
use num_complex::Complex64;

use super::linalg::unitary_from_hermitian;
use super::FockDensity;
use crate::error::{invalid, Error, Result};
use crate::state::{GaussianMixture, OneModeGaussian, SecondMoments, TwoModeGaussian, TwoModeState};
use crate::transforms::beam_splitter_inputs;

fn check_cutoff(cutoff: usize) -> Result<()> {
    if cutoff < 2 {
        return Err(invalid("cutoff", format!("must be >= 2, got {cutoff}")));
    }
    Ok(())
}

/// Working dimension for exponentials whose truncation error must stay
/// clear of the retained `cutoff x cutoff` block.
fn working_dim(cutoff: usize) -> usize {
    2 * cutoff + 20
}

fn lowering(dim: usize) -> DMatrix<Complex64> {
    DMatrix::from_fn(dim, dim, |i, j| {
        if j == i + 1 {
            Complex64::from((j as f64).sqrt())
        } else {
            Complex64::from(0.0)
        }
    })
}

/// `exp((xi* a² - xi a†²)/2)` on the first `dim` Fock states.
pub fn squeeze_unitary(xi: Complex64, dim: usize) -> Result<DMatrix<Complex64>> {
    let a = lowering(dim);
    let a2 = &a * &a;
    let a2_dag = a2.adjoint();
    // exp(K) = exp(-i H) with H = i K Hermitian
    let i = Complex64::i();
    let h = (a2 * xi.conj() - a2_dag * xi) * (0.5 * i);
    unitary_from_hermitian(h)
}

/// Squeezed-thermal parameters `(n_thermal, r)` with
/// `n + 1/2 = (n_thermal + 1/2) cosh 2r` and `|m| = (n_thermal + 1/2) sinh 2r`.
fn squeezed_thermal(n: f64, m_abs: f64) -> (f64, f64) {
    let nu = ((n + 0.5).powi(2) - m_abs * m_abs).max(0.25).sqrt();
    let r = 0.5 * ((n + 0.5) / nu).max(1.0).acosh();
    (nu - 0.5, r)
}

fn thermal_weights(n_thermal: f64, dim: usize) -> Vec<f64> {
    if n_thermal <= 0.0 {
        let mut w = vec![0.0; dim];
        w[0] = 1.0;
        return w;
    }
    let q = n_thermal / (n_thermal + 1.0);
    (0..dim).map(|k| (1.0 - q) * q.powi(k as i32)).collect()
}

fn hermitize(m: &mut DMatrix<Complex64>) {
    let sym = (&*m + m.adjoint()) * Complex64::from(0.5);
    *m = sym;
}

fn one_mode_entries(s: &OneModeGaussian, cutoff: usize) -> Result<DMatrix<Complex64>> {
    let (n_th, r) = squeezed_thermal(s.n(), s.m_abs());
    let xi = Complex64::from_polar(r, s.m().arg());
    let dim = working_dim(cutoff);
    let u = squeeze_unitary(xi, dim)?;
    let p = thermal_weights(n_th, dim);
    // S diag(p) S† restricted to the retained rows
    let rows = u.rows(0, cutoff);
    let weighted = DMatrix::from_fn(cutoff, dim, |i, k| rows[(i, k)] * p[k]);
    let mut rho = weighted * rows.adjoint();
    hermitize(&mut rho);
    Ok(rho)
}

/// Squeezed thermal state `S(xi) rho_th S(xi)†` with the squeeze unitary
/// evaluated by matrix exponential in a padded space, then truncated.
pub fn one_mode_density(s: &OneModeGaussian, cutoff: usize) -> Result<FockDensity> {
    check_cutoff(cutoff)?;
    s.ensure_physical()?;
    FockDensity::new(1, cutoff, one_mode_entries(s, cutoff)?)
}

/// How a two-mode density is constructed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwoModeRoute {
    /// Two-mode squeeze of a thermal pair (no single-mode squeezing, no `a†b`).
    TwoModeSqueezedThermal,
    /// Tensor product of the two one-mode densities.
    Product,
    /// Independent one-mode inputs sent through a 50/50 beam splitter.
    BeamSplitter,
    /// Closed-form Gaussian kernel recurrence from the covariance matrix.
    GaussianKernel,
}

/// Picks the cheapest construction that applies to `state`.
pub fn default_route(state: &TwoModeGaussian) -> TwoModeRoute {
    if state.is_epr_family() {
        TwoModeRoute::TwoModeSqueezedThermal
    } else if state.is_uncorrelated() {
        TwoModeRoute::Product
    } else if beam_splitter_inputs(state, 0.0).is_some() {
        TwoModeRoute::BeamSplitter
    } else {
        TwoModeRoute::GaussianKernel
    }
}

/// Truncated density of a physical two-mode state, using [`default_route`].
pub fn two_mode_density(state: &TwoModeGaussian, cutoff: usize) -> Result<FockDensity> {
    two_mode_density_via(state, cutoff, default_route(state))
}

/// Weighted sum of the component densities.
pub fn mixture_density(mix: &GaussianMixture, cutoff: usize) -> Result<FockDensity> {
    let dim = cutoff * cutoff;
    let mut acc = DMatrix::zeros(dim, dim);
    for (w, s) in mix.components() {
        acc += two_mode_density(s, cutoff)?.entries() * Complex64::from(*w);
    }
    FockDensity::new(2, cutoff, acc)
}

pub fn two_mode_density_via(state: &TwoModeGaussian, cutoff: usize, route: TwoModeRoute) -> Result<FockDensity> {
    check_cutoff(cutoff)?;
    state.check_physical()?;
    let entries = match route {
        TwoModeRoute::TwoModeSqueezedThermal => {
            if !state.is_epr_family() {
                return Err(invalid("route", "state carries single-mode squeezing or a†b coherence"));
            }
            epr_entries(state.n(), state.m_c(), cutoff)?
        }
        TwoModeRoute::Product => {
            let (a, b) = state
                .factorize()
                .ok_or_else(|| invalid("route", "state is correlated"))?;
            let (ra, rb) = (one_mode_entries(&a, cutoff)?, one_mode_entries(&b, cutoff)?);
            ra.kronecker(&rb)
        }
        TwoModeRoute::BeamSplitter => {
            let (a, b) = beam_splitter_inputs(state, 0.0)
                .ok_or_else(|| invalid("route", "state is not a beam-splitter image of independent inputs"))?;
            beam_splitter_entries(&a, &b, 0.0, cutoff)?
        }
        TwoModeRoute::GaussianKernel => {
            gaussian_kernel(&moments_covariance(&state.second_moments()), cutoff)?
        }
    };
    FockDensity::new(2, cutoff, entries)
}

/// Beam-splitter output density built from the truncated input densities.
pub fn beam_splitter_density(sa: &OneModeGaussian, sb: &OneModeGaussian, lambda: f64, cutoff: usize) -> Result<FockDensity> {
    check_cutoff(cutoff)?;
    sa.ensure_physical()?;
    sb.ensure_physical()?;
    FockDensity::new(2, cutoff, beam_splitter_entries(sa, sb, lambda, cutoff)?)
}

fn epr_entries(n: f64, m_c: Complex64, cutoff: usize) -> Result<DMatrix<Complex64>> {
    let (n_th, r) = squeezed_thermal(n, m_c.norm());
    let zeta = Complex64::from_polar(r, m_c.arg());
    let p = thermal_weights(n_th, working_dim(cutoff) + cutoff);
    let c = cutoff;
    let mut rho = DMatrix::zeros(c * c, c * c);
    let i = Complex64::i();
    // photon-number difference d = n_a - n_b is conserved; each sector is a
    // chain |t + d_a, t + d_b>, t = 0, 1, ...
    for d in -(c as isize - 1)..=(c as isize - 1) {
        let (da, db) = if d >= 0 { (d as usize, 0) } else { (0, (-d) as usize) };
        let kept = c - d.unsigned_abs();
        let len = kept + working_dim(cutoff) / 2;
        // H = i (zeta* ab - zeta a†b†) on the chain
        let mut h = DMatrix::zeros(len, len);
        for t in 1..len {
            let amp = (((t + da) * (t + db)) as f64).sqrt();
            // <t-1| ab |t> = amp
            h[(t - 1, t)] = i * zeta.conj() * amp;
            h[(t, t - 1)] = -i * zeta * amp;
        }
        let u = unitary_from_hermitian(h)?;
        let w: Vec<f64> = (0..len).map(|t| p[t + da] * p[t + db]).collect();
        let rows = u.rows(0, kept);
        let weighted = DMatrix::from_fn(kept, len, |x, t| rows[(x, t)] * w[t]);
        let block = weighted * rows.adjoint();
        for x in 0..kept {
            for y in 0..kept {
                rho[((x + da) * c + x + db, (y + da) * c + y + db)] = block[(x, y)];
            }
        }
    }
    hermitize(&mut rho);
    Ok(rho)
}

/// Mode matrix `M` of the splitter: `U† (a, b)ᵀ U = M (a, b)ᵀ`.
fn splitter_matrix(lambda: f64) -> Matrix2<Complex64> {
    let s = Complex64::from(std::f64::consts::FRAC_1_SQRT_2);
    let e = Complex64::from_polar(1.0, lambda);
    Matrix2::new(s, s * e, s, -s * e)
}

/// The generator `A = Σ H_ij a_i† a_j` on the `N`-photon sector, basis
/// `|N - j, j>`, where `exp(-iH) = M`.
fn splitter_generator(lambda: f64, total: usize) -> DMatrix<Complex64> {
    let schur = splitter_matrix(lambda).schur();
    let (q, t) = schur.unpack();
    let angles = Matrix2::from_diagonal(&nalgebra::Vector2::new(
        Complex64::from(-t[(0, 0)].arg()),
        Complex64::from(-t[(1, 1)].arg()),
    ));
    let hm = q * angles * q.adjoint();
    let mut a = DMatrix::zeros(total + 1, total + 1);
    for j in 0..=total {
        let (na, nb) = ((total - j) as f64, j as f64);
        a[(j, j)] = hm[(0, 0)] * na + hm[(1, 1)] * nb;
        if j > 0 {
            // a†b: |na, nb> -> |na+1, nb-1>
            a[(j - 1, j)] = hm[(0, 1)] * ((na + 1.0) * nb).sqrt();
        }
        if j < total {
            // b†a: |na, nb> -> |na-1, nb+1>
            a[(j + 1, j)] = hm[(1, 0)] * (na * (nb + 1.0)).sqrt();
        }
    }
    a
}

/// Beam-splitter unitary restricted to the `N`-photon sector.
pub fn beam_splitter_sector(lambda: f64, total: usize) -> Result<DMatrix<Complex64>> {
    unitary_from_hermitian(splitter_generator(lambda, total))
}

/// Beam-splitter unitary on the `cutoff²` two-mode space (index `i*cutoff + j`).
/// Sectors whose photon number reaches past the cutoff are cut, so only the
/// sectors with `N < cutoff` are exactly unitary.
pub fn beam_splitter_unitary(lambda: f64, cutoff: usize) -> Result<DMatrix<Complex64>> {
    let c = cutoff;
    let mut u = DMatrix::zeros(c * c, c * c);
    for total in 0..=(2 * c - 2) {
        let sector = beam_splitter_sector(lambda, total)?;
        let valid: Vec<usize> = (0..=total).filter(|&j| j < c && total - j < c).collect();
        for &x in &valid {
            for &y in &valid {
                u[((total - x) * c + x, (total - y) * c + y)] = sector[(x, y)];
            }
        }
    }
    Ok(u)
}

fn beam_splitter_entries(sa: &OneModeGaussian, sb: &OneModeGaussian, lambda: f64, cutoff: usize) -> Result<DMatrix<Complex64>> {
    let c = cutoff;
    let max_total = 2 * c - 2;
    // every input pair with at most max_total photons is needed exactly
    let ci = max_total + 1;
    let (ra, rb) = (one_mode_entries(sa, ci)?, one_mode_entries(sb, ci)?);
    let sectors: Vec<DMatrix<Complex64>> = (0..=max_total)
        .map(|n| beam_splitter_sector(lambda, n))
        .collect::<Result<_>>()?;
    let kept: Vec<Vec<usize>> = (0..=max_total)
        .map(|n| (0..=n).filter(|&j| j < c && n - j < c).collect())
        .collect();
    // U_N restricted to the retained output rows
    let rows: Vec<DMatrix<Complex64>> = (0..=max_total)
        .map(|n| DMatrix::from_fn(kept[n].len(), n + 1, |x, k| sectors[n][(kept[n][x], k)]))
        .collect();

    let mut rho = DMatrix::zeros(c * c, c * c);
    for n1 in 0..=max_total {
        for n2 in 0..=max_total {
            // zero-mean Gaussian inputs only couple photon numbers of equal parity
            if (n1 + n2) % 2 == 1 {
                continue;
            }
            let block = DMatrix::from_fn(n1 + 1, n2 + 1, |j1, j2| ra[(n1 - j1, n2 - j2)] * rb[(j1, j2)]);
            let out = &rows[n1] * block * rows[n2].adjoint();
            for (x, &j1) in kept[n1].iter().enumerate() {
                for (y, &j2) in kept[n2].iter().enumerate() {
                    rho[((n1 - j1) * c + j1, (n2 - j2) * c + j2)] = out[(x, y)];
                }
            }
        }
    }
    hermitize(&mut rho);
    Ok(rho)
}

/// Complex covariance of the one-mode state in the ordering `(a, a†)`.
pub fn one_mode_covariance(s: &OneModeGaussian) -> DMatrix<Complex64> {
    let d = Complex64::from(s.n() + 0.5);
    let aa = -s.m();
    DMatrix::from_row_slice(2, 2, &[d, aa, aa.conj(), d])
}

/// Complex covariance in the ordering `(a, b, a†, b†)`.
pub fn moments_covariance(m: &SecondMoments) -> DMatrix<Complex64> {
    let c = m.covariance();
    DMatrix::from_fn(4, 4, |i, j| c[(i, j)])
}

/// Density entries `<k|rho|l>` of the zero-mean Gaussian operator with
/// complex covariance `sigma` (ordering `(a_1..a_M, a_1†..a_M†)`), from the
/// recurrence of its generating function. The entries are exact for every
/// index below the cutoff; nothing is truncated except the index range.
/// Works for any `sigma` with `sigma + 1/2` positive definite, physical or
/// not, which makes it usable as a physicality probe.
pub fn gaussian_kernel(sigma: &DMatrix<Complex64>, cutoff: usize) -> Result<DMatrix<Complex64>> {
    check_cutoff(cutoff)?;
    let d = sigma.nrows();
    if d % 2 != 0 || d != sigma.ncols() || d == 0 {
        return Err(invalid("sigma", "covariance must be square with even dimension"));
    }
    let modes = d / 2;
    let q = sigma + DMatrix::identity(d, d) * Complex64::from(0.5);
    let chol = q
        .clone()
        .cholesky()
        .ok_or_else(|| Error::Nonphysical("covariance + 1/2 is not positive definite".into()))?;
    let det: f64 = chol.l().diagonal().iter().map(|z| z.norm_sqr()).product();
    let q_inv = chol.inverse();
    let swap = DMatrix::from_fn(d, d, |i, j| {
        if (i + modes) % d == j {
            Complex64::from(1.0)
        } else {
            Complex64::from(0.0)
        }
    });
    let a = swap * (DMatrix::identity(d, d) - q_inv).map(|z| z.conj());

    let total = cutoff.pow(d as u32);
    let strides: Vec<usize> = (0..d).map(|i| cutoff.pow((d - 1 - i) as u32)).collect();
    let sqrt: Vec<f64> = (0..=cutoff).map(|k| (k as f64).sqrt()).collect();
    let mut g = vec![Complex64::from(0.0); total];
    g[0] = Complex64::from(1.0 / det.sqrt());
    let mut digits = vec![0usize; d];
    for flat in 1..total {
        // increment the little-endian-by-stride digit counter
        let mut pos = d - 1;
        loop {
            digits[pos] += 1;
            if digits[pos] < cutoff {
                break;
            }
            digits[pos] = 0;
            pos -= 1;
        }
        let i = digits.iter().position(|&k| k > 0).expect("flat > 0");
        let base = flat - strides[i];
        let mut acc = Complex64::from(0.0);
        for j in 0..d {
            let kj = if j == i { digits[j] - 1 } else { digits[j] };
            if kj > 0 {
                acc += a[(i, j)] * sqrt[kj] * g[base - strides[j]];
            }
        }
        g[flat] = acc / sqrt[digits[i]];
    }
    let dim = cutoff.pow(modes as u32);
    Ok(DMatrix::from_row_slice(dim, dim, &g))
}

/// Density of `state` from the Gaussian kernel, without any physicality
/// pre-check.
pub(crate) fn kernel_density_unchecked(state: &TwoModeGaussian, cutoff: usize) -> Result<FockDensity> {
    let mut rho = gaussian_kernel(&moments_covariance(&state.second_moments()), cutoff)?;
    hermitize(&mut rho);
    FockDensity::new(2, cutoff, rho)
}
