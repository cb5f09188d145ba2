//! Verification toolkit for zero-mean Gaussian squeezed states of light.
//!
//! The crate classifies one- and two-mode states as classical, quantum or
//! entangled, evaluates Hanbury-Brown–Twiss (HBT) intensity-correlation
//! fringes and the witness operators built from them, and checks every
//! closed form against a brute-force truncated Fock-space oracle.
//!
//! Layout:
//! - [`state`]: state types, physicality and classicality predicates.
//! - [`wick`]: normally ordered operator words and the pairing engine.
//! - [`transforms`]: amplifier, phase shift, 50/50 beam splitter, Werner mixing.
//! - [`interference`]: HBT correlation, closed-form visibilities, fringe fitting.
//! - [`witness`]: `W2` and `W_HBT` expectation values.
//! - [`separability`]: analytic separability criteria and physicality checks.
//! - [`fock`]: the truncated Fock-basis oracle.

pub mod error;
pub mod fock;
pub mod interference;
pub mod separability;
pub mod state;
pub mod tolerance;
pub mod transforms;
pub mod wick;
pub mod witness;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use state::{
    Classicality, GaussianMixture, OneModeGaussian, PFunction, SecondMoments, TwoModeGaussian,
    TwoModeState,
};
pub use wick::{Ladder, Mode, NormalPolynomial, OperatorWord};

/// Complex field amplitude or second moment. Stored values are always finite.
pub type ComplexValue = Complex64;
