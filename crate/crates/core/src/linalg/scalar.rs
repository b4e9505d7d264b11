use std::fmt::Debug;
use std::ops::{Div, Neg};

use nalgebra::{ClosedAddAssign, ClosedMulAssign, ClosedSubAssign, DMatrix};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use super::dd::DoubleDouble;

/// Scalars the polynomial machinery can run over.
///
/// Three instances are provided: `f64`, [`DoubleDouble`] (double-double, roughly
/// 32 significant digits) and [`BigRational`] (exact).
pub trait Field:
    nalgebra::Scalar
    + Zero
    + One
    + ClosedAddAssign
    + ClosedSubAssign
    + ClosedMulAssign
    + Neg<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
    + Debug
{
    /// Exact embedding of a finite `f64`.
    fn from_f64(x: f64) -> Self;

    fn to_f64(&self) -> f64;

    fn from_usize(k: usize) -> Self {
        Self::from_f64(k as f64)
    }

    /// Absolute value as an `f64`, used for pivoting and tolerance tests.
    fn magnitude(&self) -> f64 {
        self.to_f64().abs()
    }
}

impl Field for f64 {
    fn from_f64(x: f64) -> Self {
        x
    }

    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Field for DoubleDouble {
    fn from_f64(x: f64) -> Self {
        DoubleDouble::new(x)
    }

    fn to_f64(&self) -> f64 {
        DoubleDouble::to_f64(*self)
    }
}

impl Field for BigRational {
    fn from_f64(x: f64) -> Self {
        BigRational::from_float(x).expect("finite f64 has an exact rational value")
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn from_usize(k: usize) -> Self {
        BigRational::from_integer(k.into())
    }

    fn magnitude(&self) -> f64 {
        ToPrimitive::to_f64(&self.abs()).unwrap_or(f64::INFINITY)
    }
}

/// Converts an `f64` matrix into another scalar field entry by entry.
pub fn lift<S: Field>(a: &DMatrix<f64>) -> DMatrix<S> {
    a.map(S::from_f64)
}

/// Rounds a matrix over any field back to `f64`.
pub fn round<S: Field>(a: &DMatrix<S>) -> DMatrix<f64> {
    a.map(|x| x.to_f64())
}

pub fn identity<S: Field>(n: usize) -> DMatrix<S> {
    DMatrix::from_fn(n, n, |i, j| if i == j { S::one() } else { S::zero() })
}

pub fn trace<S: Field>(a: &DMatrix<S>) -> S {
    let mut t = S::zero();
    for i in 0..a.nrows().min(a.ncols()) {
        t += a[(i, i)].clone();
    }
    t
}

/// Determinant by Gaussian elimination with partial pivoting on magnitude.
pub fn determinant<S: Field>(a: &DMatrix<S>) -> S {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "determinant of a non-square matrix");
    let mut work = a.clone();
    let mut det = S::one();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&r, &s| {
                work[(r, col)]
                    .magnitude()
                    .total_cmp(&work[(s, col)].magnitude())
            })
            .unwrap();
        if work[(pivot, col)].is_zero() {
            return S::zero();
        }
        if pivot != col {
            work.swap_rows(pivot, col);
            det = -det;
        }
        let p = work[(col, col)].clone();
        det *= p.clone();
        for r in col + 1..n {
            if work[(r, col)].is_zero() {
                continue;
            }
            let f = work[(r, col)].clone() / p.clone();
            for j in col..n {
                let w = work[(col, j)].clone() * f.clone();
                work[(r, j)] -= w;
            }
        }
    }
    det
}

/// Gauss-Jordan inverse with partial pivoting on magnitude. Returns `None`
/// when a pivot vanishes exactly.
pub fn inverse<S: Field>(a: &DMatrix<S>) -> Option<DMatrix<S>> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "inverse of a non-square matrix");
    let mut work = a.clone();
    let mut inv = identity::<S>(n);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&r, &s| {
                work[(r, col)]
                    .magnitude()
                    .total_cmp(&work[(s, col)].magnitude())
            })
            .unwrap();
        if work[(pivot, col)].is_zero() {
            return None;
        }
        work.swap_rows(pivot, col);
        inv.swap_rows(pivot, col);
        let p = work[(col, col)].clone();
        for j in 0..n {
            work[(col, j)] = work[(col, j)].clone() / p.clone();
            inv[(col, j)] = inv[(col, j)].clone() / p.clone();
        }
        for r in 0..n {
            if r == col || work[(r, col)].is_zero() {
                continue;
            }
            let f = work[(r, col)].clone();
            for j in 0..n {
                let w = work[(col, j)].clone() * f.clone();
                work[(r, j)] -= w;
                let v = inv[(col, j)].clone() * f.clone();
                inv[(r, j)] -= v;
            }
        }
    }
    Some(inv)
}
