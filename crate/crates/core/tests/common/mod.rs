//! Independent oracles shared by the integration tests. None of them go
//! through the trace recurrence or the polynomial projector.

#![allow(dead_code)]

use margulis_core::linalg::{eigen_decompose, rational::BigRational, Complex64};
use margulis_core::GroupElement;
use nalgebra::{DMatrix, DVector};
use num_traits::{One, Signed, Zero};

/// Determinant by fraction-exact Gaussian elimination.
pub fn det_exact(m: &DMatrix<BigRational>) -> BigRational {
    let n = m.nrows();
    let mut a = m.clone();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[(r, col)].is_zero()) else {
            return BigRational::zero();
        };
        if p != col {
            a.swap_rows(p, col);
            det = -det;
        }
        let pivot = a[(col, col)].clone();
        det *= pivot.clone();
        for r in col + 1..n {
            if a[(r, col)].is_zero() {
                continue;
            }
            let f = a[(r, col)].clone() / pivot.clone();
            for j in col..n {
                let v = a[(col, j)].clone() * f.clone();
                a[(r, j)] -= v;
            }
        }
    }
    det
}

/// Coefficients (ascending) of `det(x I - A)` from its values at
/// `x = 0, 1, ..., dim`, by Lagrange interpolation in exact arithmetic.
pub fn char_poly_by_interpolation(a: &DMatrix<BigRational>) -> Vec<BigRational> {
    let m = a.nrows();
    let nodes: Vec<BigRational> = (0..=m).map(|i| BigRational::from_integer((i as i64).into())).collect();
    let values: Vec<BigRational> = nodes
        .iter()
        .map(|x| {
            let shifted = DMatrix::from_fn(m, m, |i, j| {
                let d = if i == j { x.clone() } else { BigRational::zero() };
                d - a[(i, j)].clone()
            });
            det_exact(&shifted)
        })
        .collect();
    let mut coeffs = vec![BigRational::zero(); m + 1];
    for (i, xi) in nodes.iter().enumerate() {
        // basis polynomial prod_{j != i} (x - x_j) / (x_i - x_j)
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (j, xj) in nodes.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                next[k + 1] += c.clone();
                next[k] -= c.clone() * xj.clone();
            }
            basis = next;
            denom *= xi.clone() - xj.clone();
        }
        let scale = values[i].clone() / denom;
        for (k, c) in basis.iter().enumerate() {
            coeffs[k] += c.clone() * scale.clone();
        }
    }
    coeffs
}

/// `P_g(0)` for diagonal `g` as the product of `1 - d_i / d_j` over the
/// nonzero weights, i.e. over the eigenvalues of `I - Ad_g` on the
/// off-diagonal basis.
pub fn weight_product(d: &[f64]) -> f64 {
    let mut p = 1.0;
    for i in 0..d.len() {
        for j in 0..d.len() {
            if i != j {
                p *= 1.0 - d[i] / d[j];
            }
        }
    }
    p
}

/// Projection onto the unit eigenspace of `ad` along the other eigenspaces,
/// from a full eigendecomposition.
pub fn eigen_unit_projector(ad: &DMatrix<f64>) -> DMatrix<f64> {
    let m = ad.nrows();
    let eig = eigen_decompose(ad, 1e-9).expect("diagonalizable");
    let v = DMatrix::from_fn(m, m, |i, j| eig.vectors[j][i]);
    let keep = DMatrix::from_diagonal(&DVector::from_fn(m, |j, _| {
        if (eig.values[j] - Complex64::new(1.0, 0.0)).norm() < 1e-6 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    }));
    let v_inv = v.clone().try_inverse().expect("eigenbasis");
    (v * keep * v_inv).map(|z| z.re)
}

/// Coefficients (ascending) of `prod (x - r)` in complex arithmetic.
pub fn expand_roots(roots: &[Complex64]) -> Vec<Complex64> {
    let mut c = vec![Complex64::new(1.0, 0.0)];
    for r in roots {
        let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
        for (k, v) in c.iter().enumerate() {
            next[k + 1] += v;
            next[k] -= v * r;
        }
        c = next;
    }
    c
}

pub fn max_abs(v: &[BigRational]) -> BigRational {
    v.iter().map(|x| x.abs()).fold(BigRational::zero(), |a, b| if b > a { b } else { a })
}

/// Element `u diag(d) u^-1` with the given `u` (not necessarily unimodular).
pub fn conjugate_diagonal(u: &DMatrix<f64>, d: &[f64]) -> GroupElement {
    let m = u * DMatrix::from_diagonal(&DVector::from_column_slice(d)) * u.clone().try_inverse().unwrap();
    GroupElement::normalized(m).unwrap()
}

/// Matrix with rows given as slices.
pub fn mat(rows: &[&[f64]]) -> DMatrix<f64> {
    let n = rows.len();
    DMatrix::from_fn(n, rows[0].len(), |i, j| rows[i][j])
}
