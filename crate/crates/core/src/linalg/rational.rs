//! Exact evaluation path. Every finite `f64` is a dyadic rational, so real
//! input converts without loss and the results carry zero rounding error.

use nalgebra::DMatrix;
pub use num_rational::BigRational;

use super::poly::{char_poly_hessenberg_in, poly_apply_in, poly_deflate_in, Poly};
use super::scalar::lift;
use crate::error::Result;

pub type RationalMatrix = DMatrix<BigRational>;

pub fn from_real(a: &DMatrix<f64>) -> RationalMatrix {
    lift(a)
}

pub fn char_poly(a: &RationalMatrix) -> Poly<BigRational> {
    char_poly_hessenberg_in(a)
}

/// Exact deflation: the `k` lowest coefficients must vanish identically.
pub fn poly_deflate(p: &Poly<BigRational>, k: usize) -> Result<Poly<BigRational>> {
    poly_deflate_in(p, k, 0.0)
}

pub fn poly_apply(p: &Poly<BigRational>, a: &RationalMatrix) -> RationalMatrix {
    poly_apply_in(p, a)
}

pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}
