//! Truncated Fock-basis oracle.
//!
//! Densities are dense `cutoff^modes` square matrices; the two-mode basis
//! index of `|i>_a |j>_b` is `i * cutoff + j`. Nothing here uses a Gaussian
//! closed form for moments: every expectation is a trace against explicit
//! ladder-operator action.

mod build;
mod linalg;

use std::io::{Read, Write};

use nalgebra::DMatrix;
use num_complex::Complex64;

pub use build::{
    beam_splitter_density, beam_splitter_sector, beam_splitter_unitary, default_route, gaussian_kernel,
    mixture_density, moments_covariance, one_mode_covariance, one_mode_density, squeeze_unitary,
    two_mode_density, two_mode_density_via, TwoModeRoute,
};
pub(crate) use build::kernel_density_unchecked;

use crate::error::{invalid, Error, Result};
use crate::tolerance::{EPS_TRACE, EPS_WITNESS};
use crate::witness::WitnessKind;
use crate::wick::{Mode, OperatorWord};

const HERMITIAN_TOL: f64 = 1e-12;

/// Truncated density matrix with its trace deficit `1 - Tr rho`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockDensity {
    modes: usize,
    cutoff: usize,
    entries: DMatrix<Complex64>,
    trace_deficit: f64,
}

impl FockDensity {
    pub fn new(modes: usize, cutoff: usize, entries: DMatrix<Complex64>) -> Result<Self> {
        if !(1..=2).contains(&modes) {
            return Err(invalid("modes", format!("must be 1 or 2, got {modes}")));
        }
        if cutoff < 2 {
            return Err(invalid("cutoff", format!("must be >= 2, got {cutoff}")));
        }
        let dim = cutoff.pow(modes as u32);
        if entries.nrows() != dim || entries.ncols() != dim {
            return Err(invalid(
                "entries",
                format!("expected {dim}x{dim}, got {}x{}", entries.nrows(), entries.ncols()),
            ));
        }
        let scale = entries.iter().map(|z| z.norm()).fold(1.0, f64::max);
        let skew = (&entries - entries.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        if skew > HERMITIAN_TOL * scale {
            return Err(invalid("entries", format!("not Hermitian (max deviation {skew:.3e})")));
        }
        let trace_deficit = 1.0 - entries.trace().re;
        Ok(FockDensity {
            modes,
            cutoff,
            entries,
            trace_deficit,
        })
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn trace(&self) -> f64 {
        self.entries.trace().re
    }

    pub fn trace_deficit(&self) -> f64 {
        self.trace_deficit
    }

    pub fn is_converged(&self) -> bool {
        self.trace_deficit.abs() < EPS_TRACE
    }

    pub fn ensure_converged(&self) -> Result<()> {
        if self.is_converged() {
            Ok(())
        } else {
            Err(Error::Convergence {
                cutoff: self.cutoff,
                deficit: self.trace_deficit,
            })
        }
    }

    /// Entries divided by the trace.
    pub fn normalized_entries(&self) -> DMatrix<Complex64> {
        &self.entries / Complex64::from(self.trace())
    }

    /// `Tr rho² / (Tr rho)²`.
    pub fn purity(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>() / self.trace().powi(2)
    }

    pub fn max_abs_difference(&self, other: &FockDensity) -> Result<f64> {
        if self.dim() != other.dim() {
            return Err(invalid("other", "densities have different dimensions"));
        }
        Ok((&self.entries - &other.entries).iter().map(|z| z.norm()).fold(0.0, f64::max))
    }

    /// Smallest eigenvalue of the trace-normalized density.
    pub fn min_eigenvalue(&self) -> Result<f64> {
        linalg::min_eigenvalue_blocked(&self.normalized_entries())
    }

    /// Partial transpose on mode `b` of the trace-normalized density:
    /// `rho^{T_B}[(i,j),(k,l)] = rho[(i,l),(k,j)]`.
    pub fn partial_transpose(&self) -> Result<DMatrix<Complex64>> {
        if self.modes != 2 {
            return Err(invalid("rho", "partial transpose needs a two-mode density"));
        }
        let c = self.cutoff;
        let rho = self.normalized_entries();
        Ok(DMatrix::from_fn(c * c, c * c, |r, s| {
            let (i, j, k, l) = (r / c, r % c, s / c, s % c);
            rho[(i * c + l, k * c + j)]
        }))
    }

    /// Smallest eigenvalue of the partial transpose; negative values certify
    /// entanglement.
    pub fn ppt_min_eigenvalue(&self) -> Result<f64> {
        linalg::min_eigenvalue_blocked(&self.partial_transpose()?)
    }

    /// Normally ordered moment `Tr(rho W) / Tr rho` with `W` applied as
    /// truncated ladder operators.
    pub fn moment(&self, word: &OperatorWord) -> Result<Complex64> {
        if 2 * word.len() > self.cutoff {
            return Err(Error::TruncationUnsafe {
                len: word.len(),
                cutoff: self.cutoff,
            });
        }
        if self.modes == 1 && word.involves(Mode::B) {
            return Err(invalid("word", format!("`{word}` acts on mode b of a one-mode density")));
        }
        let c = self.cutoff;
        let mut acc = Complex64::from(0.0);
        for y in 0..self.dim() {
            let mut occ = if self.modes == 1 { [y, 0] } else { [y / c, y % c] };
            let mut coef = 1.0;
            let mut alive = true;
            for t in word.tokens().iter().rev() {
                let slot = &mut occ[if t.mode == Mode::A { 0 } else { 1 }];
                if t.dagger {
                    if *slot + 1 >= c {
                        alive = false;
                        break;
                    }
                    *slot += 1;
                    coef *= (*slot as f64).sqrt();
                } else {
                    if *slot == 0 {
                        alive = false;
                        break;
                    }
                    coef *= (*slot as f64).sqrt();
                    *slot -= 1;
                }
            }
            if alive {
                let x = if self.modes == 1 { occ[0] } else { occ[0] * c + occ[1] };
                // W|y> = coef |x>, so <y| rho W |y> = coef rho[y, x]
                acc += self.entries[(y, x)] * coef;
            }
        }
        Ok(acc / self.trace())
    }

    fn moment_str(&self, word: &str) -> Result<Complex64> {
        self.moment(&word.parse()?)
    }

    /// Witness expectation with numerator and normalization both taken from
    /// this density's own moments.
    pub fn expectation_of_witness(&self, kind: WitnessKind) -> Result<f64> {
        match kind {
            WitnessKind::W2 => {
                let n = self.moment_str("a+ a")?.re;
                if n <= EPS_WITNESS {
                    return Err(Error::ZeroPhotonNumber("W2"));
                }
                Ok(3.0 - self.moment_str("a+^2 a^2")?.re / (n * n))
            }
            WitnessKind::WHBT => {
                if self.modes != 2 {
                    return Err(invalid("rho", "W_HBT needs a two-mode density"));
                }
                let ab = self.moment_str("a+ b+ a b")?.re;
                let norm = self.moment_str("a+^2 a^2")?.re + self.moment_str("b+^2 b^2")?.re + 2.0 * ab;
                if norm <= EPS_WITNESS {
                    return Err(invalid("rho", "vacuum has no intensity correlations"));
                }
                let num = 2.0 * ab + self.moment_str("b+^2 a^2")?.re + self.moment_str("a+^2 b^2")?.re;
                Ok(0.5 - num / norm)
            }
        }
    }

    /// Binary dump: 16-byte header (`u32` modes, `u32` cutoff, two reserved
    /// `u32`), then row-major `(re, im)` pairs, all little-endian.
    pub fn write_dump<W: Write>(&self, mut w: W) -> Result<()> {
        let io = |e: std::io::Error| Error::Dump(e.to_string());
        for v in [self.modes as u32, self.cutoff as u32, 0, 0] {
            w.write_all(&v.to_le_bytes()).map_err(io)?;
        }
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let z = self.entries[(i, j)];
                w.write_all(&z.re.to_le_bytes()).map_err(io)?;
                w.write_all(&z.im.to_le_bytes()).map_err(io)?;
            }
        }
        Ok(())
    }

    pub fn read_dump<R: Read>(mut r: R) -> Result<Self> {
        let io = |e: std::io::Error| Error::Dump(e.to_string());
        let mut header = [0u8; 16];
        r.read_exact(&mut header).map_err(io)?;
        let word = |k: usize| u32::from_le_bytes(header[4 * k..4 * k + 4].try_into().expect("4 bytes")) as usize;
        let (modes, cutoff) = (word(0), word(1));
        if !(1..=2).contains(&modes) || !(2..=60).contains(&cutoff) {
            return Err(Error::Dump(format!("bad header: modes {modes}, cutoff {cutoff}")));
        }
        let dim = cutoff.pow(modes as u32);
        let mut raw = vec![0u8; dim * dim * 16];
        r.read_exact(&mut raw).map_err(io)?;
        let f = |k: usize| f64::from_le_bytes(raw[8 * k..8 * k + 8].try_into().expect("8 bytes"));
        let entries = DMatrix::from_fn(dim, dim, |i, j| {
            let k = 2 * (i * dim + j);
            Complex64::new(f(k), f(k + 1))
        });
        FockDensity::new(modes, cutoff, entries)
    }
}
