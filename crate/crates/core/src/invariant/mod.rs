//! Margulis-Smilga invariant of an affine element with loxodromic linear
//! part, computed two independent ways:
//!
//! * through a Jordan frame `h` of `g`: `M(g, X) = pi0(Ad_h^-1 X)`;
//! * through the polynomial projector `Pi_g = P_g(0)^-1 P_g(R_e - Ad_g)`,
//!   which needs no eigenvectors of `Ad_g`; only the final `pi0(Ad_h^-1 .)`
//!   step uses the frame.
//!
//! The quadratic value `Q = B(M, M)` of the Killing form is computed without
//! any frame at all.

mod affine;
mod form;
mod projector;
mod refine;

use nalgebra::DVector;

pub use affine::AffineElement;
pub use form::{invariant_form, InvariantForm};
pub use projector::{
    deflated_poly, deflated_poly_exact, shifted_char_poly, shifted_char_poly_exact,
    unit_projector, PolynomialProjector,
};
pub use refine::{refine_frame, refined_invariant, RefinedFrame};

use crate::error::Result;
use crate::liegroup::{jordan_decompose, pi0, JordanFrame, ModelSpec, VElement};

/// Numerical thresholds shared by the invariant computations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Minimum gap between sorted eigenvalue log-moduli.
    pub loxodromy: f64,
    /// Relative size below which the low coefficients of `CP_g` count as zero.
    pub deflation: f64,
    /// `|P_g(0)|` at or below this fraction of `max|coeff P_g|` is degenerate.
    pub degenerate: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            loxodromy: 1e-6,
            deflation: 1e-9,
            degenerate: 1e-10,
        }
    }
}

/// `pi0(Ad_h^-1 X)` for the frame's `h`.
pub fn invariant_in_frame(frame: &JordanFrame, x: &VElement) -> DVector<f64> {
    pi0(&frame.h().act_inverse(x))
}

/// Margulis-Smilga invariant through the Jordan frame of the linear part.
pub fn margulis_invariant(a: &AffineElement, tol: &Tolerances) -> Result<DVector<f64>> {
    let frame = jordan_decompose(a.linear(), tol.loxodromy)?;
    Ok(invariant_in_frame(&frame, a.translation()))
}

/// Margulis-Smilga invariant through the polynomial projector:
/// `pi0(Ad_h^-1 Pi_g X)`.
pub fn margulis_invariant_via_projector(
    a: &AffineElement,
    tol: &Tolerances,
) -> Result<DVector<f64>> {
    let projector = PolynomialProjector::new(a.linear(), tol)?;
    let frame = jordan_decompose(a.linear(), tol.loxodromy)?;
    Ok(invariant_in_frame(&frame, &projector.project(a.translation())))
}

/// `Q = B(M, M)` computed frame-free as `B(v, v) / P_g(0)^2` with
/// `v = P_g(R_e - Ad_g) X`. Valid because `B` is `Ad`-invariant.
pub fn invariant_q(a: &AffineElement, tol: &Tolerances) -> Result<f64> {
    let projector = PolynomialProjector::new(a.linear(), tol)?;
    let form = invariant_form(&ModelSpec::adjoint_sl(a.n())?);
    Ok(q_with(&projector, &form, a.translation()))
}

/// `B(v, v) / P_g(0)^2` for an already built projector.
pub fn q_with(projector: &PolynomialProjector, form: &InvariantForm, x: &VElement) -> f64 {
    let v = projector.apply_unnormalized(x);
    let p0 = projector.at_zero_dd();
    (form.quadratic_dd(&v) / (p0 * p0)).to_f64()
}
