//! Margulis-Smilga invariants for affine actions of `PSL(n, R)` on its Lie
//! algebra `sl(n, R)` through the adjoint representation.
//!
//! The crate is split into four layers:
//!
//! * [`linalg`]: dense matrices, characteristic polynomials and eigendata,
//!   evaluated in `f64`, double-double or exact rational arithmetic.
//! * [`liegroup`]: the split model `PSL(n, R)` acting on `sl(n, R)`, with
//!   loxodromy tests, Jordan frames, restricted weights and the zero-weight
//!   projection.
//! * [`invariant`]: the unit-eigenspace projector built from the deflated
//!   shifted characteristic polynomial, the Margulis-Smilga invariant (by a
//!   Jordan-frame route and a polynomial-projector route), the Killing form
//!   and the frame-free quadratic value of the invariant.
//! * [`spectrum`]: free-group words, marked spectra, spectrum comparison,
//!   coboundary recovery and conjugacy certification.

pub mod error;
pub mod invariant;
pub mod liegroup;
pub mod linalg;
pub mod spectrum;

pub use error::{Error, Result};


pub use invariant::{AffineElement, InvariantForm, Tolerances};
pub use liegroup::{GroupElement, JordanFrame, ModelSpec, VElement, WeightTable};
pub use linalg::{EigenData, Poly, RealMatrix, RealVector};
pub use spectrum::{AffineRep, CompareReport, FreeWord, MarkedSpectrum, Verdict};

