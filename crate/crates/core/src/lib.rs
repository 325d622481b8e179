//! Quaternion-valued signal processing on cyclic 2-D grids: the left
//! quaternion Fourier transform, classical and Mustard convolutions, the
//! finite expansions rewriting each convolution through the other, and the
//! spectra of convolution and correlation.
//!
//! Everything is exact algebra up to floating-point rounding, which is why
//! the crate ships a seeded identity harness ([`verify`]) asserting the
//! whole stack to near machine precision.

pub mod conv;
mod error;
pub mod expansion;
pub mod field;
pub mod io;
pub mod qft;
pub mod quat;
pub mod sample;
mod threads;
pub mod verify;

pub use conv::{
    classical_convolve, classical_via_mustard_equal, classical_via_mustard_general,
    classical_via_mustard_perp, convolution_spectrum, correlation_spectrum, cross_correlate,
    mustard_convolve, mustard_via_classical, MustardEval,
};
pub use error::{Error, Result};
pub use field::{QField, ReflectionIndex};
pub use qft::{dft_left, fast_qft, idft_left, Direction};
pub use quat::{
    anticommutator, anticommuting_part, commuting_part, commuting_split, Quaternion, Root, RootPair,
};
