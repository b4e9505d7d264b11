//! Dense linear algebra and polynomial arithmetic.
//!
//! Floating-point work uses `nalgebra` matrices. Characteristic polynomials
//! and polynomial evaluation are generic over [`Field`], which lets the same
//! code run in `f64`, double-double, or exact rational arithmetic.

mod dd;
mod eigen;
mod hqr;
mod poly;
pub mod rational;
mod scalar;
mod solve;

pub use eigen::{eigen_decompose, eigenvalues, real_eigenvector, Complex64, EigenData};
pub use poly::{
    char_poly, char_poly_hessenberg_in, char_poly_in, poly_apply, poly_apply_in, poly_apply_vec_in, poly_deflate,
    poly_deflate_in, Poly,
};
pub use scalar::{determinant, identity, inverse, lift, round, trace, Field};
pub use solve::{min_norm_solve, LeastSquares};

pub use dd::DoubleDouble;

pub type RealMatrix = nalgebra::DMatrix<f64>;
pub type RealVector = nalgebra::DVector<f64>;
