use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::linalg::Field;

const DET_TOL: f64 = 1e-9;

/// Element of `PSL(n, R)` stored as a unimodular `n x n` matrix.
///
/// For even `n` the stored matrix is one of the two lifts `+-g`; the adjoint
/// image does not depend on the choice.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupElement {
    mat: DMatrix<f64>,
}

impl GroupElement {
    /// Accepts a finite square matrix with `|det - 1| <= 1e-9`.
    pub fn new(mat: DMatrix<f64>) -> Result<Self> {
        check_square_finite(&mat)?;
        let det = mat.determinant();
        if (det - 1.0).abs() > DET_TOL {
            return Err(Error::InvalidInput(format!(
                "group element has determinant {det}, expected 1"
            )));
        }
        Ok(Self { mat })
    }

    /// Rescales a matrix with nonzero determinant to determinant `+1`.
    ///
    /// Odd `n` absorbs a negative determinant into the sign of the scale.
    /// For even `n` a negative determinant has no real unimodular rescaling
    /// and is rejected.
    pub fn normalized(mat: DMatrix<f64>) -> Result<Self> {
        check_square_finite(&mat)?;
        let n = mat.nrows();
        let det = mat.determinant();
        if det == 0.0 || !det.is_finite() {
            return Err(Error::InvalidInput("singular matrix".into()));
        }
        if det < 0.0 && n.is_multiple_of(2) {
            return Err(Error::InvalidInput(format!(
                "determinant {det} is negative and n = {n} is even"
            )));
        }
        let scale = det.signum() * det.abs().powf(-1.0 / n as f64);
        Self::new(mat * scale)
    }

    pub fn identity(n: usize) -> Self {
        Self {
            mat: DMatrix::identity(n, n),
        }
    }

    /// Diagonal element; the entries must multiply to 1 within `1e-9`.
    pub fn diagonal(entries: &[f64]) -> Result<Self> {
        Self::new(DMatrix::from_diagonal(&DVector::from_column_slice(entries)))
    }

    pub fn n(&self) -> usize {
        self.mat.nrows()
    }

    pub fn mat(&self) -> &DMatrix<f64> {
        &self.mat
    }

    pub fn into_mat(self) -> DMatrix<f64> {
        self.mat
    }

    pub fn inverse(&self) -> Self {
        let inv = self
            .mat
            .clone()
            .try_inverse()
            .expect("unimodular matrix is invertible");
        Self { mat: inv }
    }

    /// `Ad_g X = g X g^-1`.
    pub fn act(&self, x: &VElement) -> VElement {
        let inv = self.inverse();
        VElement::project(&self.mat * x.mat() * inv.mat())
    }

    /// `Ad_g^-1 X = g^-1 X g`.
    pub fn act_inverse(&self, x: &VElement) -> VElement {
        let inv = self.inverse();
        VElement::project(inv.mat() * x.mat() * &self.mat)
    }

    pub fn distance(&self, other: &Self) -> f64 {
        (&self.mat - &other.mat).norm()
    }
}

impl Mul for &GroupElement {
    type Output = GroupElement;

    fn mul(self, rhs: &GroupElement) -> GroupElement {
        GroupElement {
            mat: &self.mat * &rhs.mat,
        }
    }
}

/// Element of `V = sl(n, R)`.
///
/// The fixed coordinate basis is `E_ij` for `i != j` in row-major order,
/// followed by `H_k = E_kk - E_{k+1,k+1}` for `k = 1..n-1`.
#[derive(Debug, Clone, PartialEq)]
pub struct VElement {
    mat: DMatrix<f64>,
}

impl VElement {
    /// Accepts a finite square matrix with `|trace| <= 1e-10 |X|`.
    pub fn new(mat: DMatrix<f64>) -> Result<Self> {
        check_square_finite(&mat)?;
        let tr = mat.trace();
        if tr.abs() > 1e-10 * mat.norm() {
            return Err(Error::InvalidInput(format!(
                "translation has trace {tr}, expected 0"
            )));
        }
        Ok(Self::project(mat))
    }

    /// Removes the trace part of `mat`.
    pub fn project(mut mat: DMatrix<f64>) -> Self {
        let n = mat.nrows();
        let shift = mat.trace() / n as f64;
        if shift != 0.0 {
            for i in 0..n {
                mat[(i, i)] -= shift;
            }
        }
        Self { mat }
    }

    pub fn zero(n: usize) -> Self {
        Self {
            mat: DMatrix::zeros(n, n),
        }
    }

    /// The `index`-th element of the fixed basis.
    pub fn basis(n: usize, index: usize) -> Self {
        let mut coords = DVector::zeros(n * n - 1);
        coords[index] = 1.0;
        Self::from_coords(n, &coords)
    }

    /// `E_ij` with zero-based indices.
    pub fn e(n: usize, i: usize, j: usize) -> Self {
        assert!(i != j && i < n && j < n);
        let mut mat = DMatrix::zeros(n, n);
        mat[(i, j)] = 1.0;
        Self { mat }
    }

    /// `H_k = E_kk - E_{k+1,k+1}` with zero-based `k`.
    pub fn h(n: usize, k: usize) -> Self {
        assert!(k + 1 < n);
        let mut mat = DMatrix::zeros(n, n);
        mat[(k, k)] = 1.0;
        mat[(k + 1, k + 1)] = -1.0;
        Self { mat }
    }

    pub fn from_coords(n: usize, coords: &DVector<f64>) -> Self {
        Self {
            mat: mat_from_coords(n, coords.as_slice()),
        }
    }

    pub fn n(&self) -> usize {
        self.mat.nrows()
    }

    pub fn mat(&self) -> &DMatrix<f64> {
        &self.mat
    }

    pub fn coords(&self) -> DVector<f64> {
        DVector::from_vec(coords_of(&self.mat))
    }

    pub fn norm(&self) -> f64 {
        self.coords().norm()
    }

    pub fn is_zero(&self) -> bool {
        self.mat.iter().all(|&x| x == 0.0)
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            mat: &self.mat * s,
        }
    }
}

impl Add for &VElement {
    type Output = VElement;

    fn add(self, rhs: &VElement) -> VElement {
        VElement {
            mat: &self.mat + &rhs.mat,
        }
    }
}

impl Sub for &VElement {
    type Output = VElement;

    fn sub(self, rhs: &VElement) -> VElement {
        VElement {
            mat: &self.mat - &rhs.mat,
        }
    }
}

impl Neg for &VElement {
    type Output = VElement;

    fn neg(self) -> VElement {
        VElement { mat: -&self.mat }
    }
}

/// Position of `E_ij` in the fixed basis.
pub fn offdiag_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i != j);
    i * (n - 1) + if j < i { j } else { j - 1 }
}

/// Coordinates of a (traceless) matrix over any field in the fixed basis.
///
/// The `H_k` coordinate is the prefix sum of the first `k` diagonal entries,
/// which inverts `diag = (c_1, c_2 - c_1, ..., -c_{n-1})`.
pub fn coords_of<S: Field>(mat: &DMatrix<S>) -> Vec<S> {
    let n = mat.nrows();
    let mut out = Vec::with_capacity(n * n - 1);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                out.push(mat[(i, j)].clone());
            }
        }
    }
    let mut acc = S::zero();
    for k in 0..n - 1 {
        acc += mat[(k, k)].clone();
        out.push(acc.clone());
    }
    out
}

pub fn mat_from_coords<S: Field>(n: usize, coords: &[S]) -> DMatrix<S> {
    assert_eq!(coords.len(), n * n - 1, "coordinate vector length");
    let mut mat = DMatrix::<S>::zeros(n, n);
    let mut it = coords.iter();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                mat[(i, j)] = it.next().unwrap().clone();
            }
        }
    }
    let h = &coords[n * (n - 1)..];
    for k in 0..n {
        let mut d = S::zero();
        if k < n - 1 {
            d += h[k].clone();
        }
        if k > 0 {
            d -= h[k - 1].clone();
        }
        mat[(k, k)] = d;
    }
    mat
}

fn check_square_finite(mat: &DMatrix<f64>) -> Result<()> {
    if mat.nrows() != mat.ncols() {
        return Err(Error::DimensionMismatch {
            expected: mat.nrows(),
            found: mat.ncols(),
        });
    }
    if mat.nrows() < 2 {
        return Err(Error::InvalidInput("matrix size must be at least 2".into()));
    }
    if mat.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidInput("matrix has non-finite entries".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_order_is_offdiagonal_then_cartan() {
        let n = 3;
        assert_eq!(VElement::basis(n, 0), VElement::e(n, 0, 1));
        assert_eq!(VElement::basis(n, 1), VElement::e(n, 0, 2));
        assert_eq!(VElement::basis(n, 2), VElement::e(n, 1, 0));
        assert_eq!(VElement::basis(n, 5), VElement::e(n, 2, 1));
        assert_eq!(VElement::basis(n, 6), VElement::h(n, 0));
        assert_eq!(VElement::basis(n, 7), VElement::h(n, 1));
        assert_eq!(offdiag_index(n, 2, 1), 5);
        assert_eq!(offdiag_index(n, 1, 2), 3);
    }

    #[test]
    fn coords_roundtrip() {
        let n = 4;
        let c = DVector::from_fn(15, |i, _| (i as f64).sin());
        let x = VElement::from_coords(n, &c);
        assert!(x.mat().trace().abs() < 1e-15);
        assert!((x.coords() - c).norm() < 1e-15);
    }

    #[test]
    fn normalization_fixes_determinant() {
        let g = GroupElement::normalized(DMatrix::from_row_slice(2, 2, &[2.0, 0.0, 0.0, 2.0])).unwrap();
        assert!((g.mat().determinant() - 1.0).abs() < 1e-12);
        let odd = GroupElement::normalized(-DMatrix::identity(3, 3)).unwrap();
        assert_eq!(odd, GroupElement::identity(3));
        let even = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        assert!(GroupElement::normalized(even).is_err());
    }

    #[test]
    fn validation_rejects_bad_input() {
        assert!(GroupElement::new(DMatrix::identity(2, 2) * 2.0).is_err());
        let nan = DMatrix::from_row_slice(2, 2, &[f64::NAN, 0.0, 0.0, 1.0]);
        assert!(GroupElement::new(nan.clone()).is_err());
        assert!(VElement::new(nan).is_err());
        assert!(VElement::new(DMatrix::identity(2, 2)).is_err());
    }
}
