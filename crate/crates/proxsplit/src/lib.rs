//! Parallel proximal splitting for sums of convex potentials.
//!
//! This crate implements a decomposition solver for problems of the form
//! `minimize f_1(x) + ... + f_m(x)` over a real Hilbert space, where each
//! potential enters only through its proximity operator, together with the
//! catalog of proximity operators and projectors needed for constrained
//! signal and image recovery.
//!
//! The pieces:
//!
//! * [`array`], [`fft`], [`linop`], [`gradient`], [`frame`] — dense arrays,
//!   Fourier machinery, circulant convolution, discrete gradients and tight
//!   wavelet frames.
//! * [`prox`] — proximity operators and projectors, each with a testable
//!   optimality certificate.
//! * [`solver`] — Douglas-Rachford iteration, its diagonal-subspace
//!   specialization, and the parallel proximal algorithm built on it.
//! * [`oracle`] — brute-force references used by the test suites.
//! * [`experiments`] — three reconstruction experiments driven by JSON
//!   configs, exposed through the `proxsplit` binary.
//!
//! The narrative guide in `book/` walks through the same material chapter by
//! chapter; its code listings compile and run as doc-tests of this crate.

pub mod array;
pub mod error;
pub mod experiments;
pub mod fft;
pub mod frame;
pub mod gradient;
pub mod linop;
pub mod oracle;
pub mod prox;
pub mod solver;

pub use array::{RealArray, Shape, Spectrum};
pub use error::{Error, Result};
pub use fft::{dft, idft};

#[cfg(doctest)]
mod book {
    //! Compile and run the code listings of the mdbook guide.
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/arrays-and-transforms.md")]
    mod arrays_and_transforms {}
    #[doc = include_str!("../../../book/src/proximity-operators.md")]
    mod proximity_operators {}
    #[doc = include_str!("../../../book/src/splitting.md")]
    mod splitting {}
    #[doc = include_str!("../../../book/src/frames-and-tv.md")]
    mod frames_and_tv {}
    #[doc = include_str!("../../../book/src/experiments.md")]
    mod experiments {}
}
