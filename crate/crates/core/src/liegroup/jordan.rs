use nalgebra::{DMatrix, DVector};

use super::element::GroupElement;
use crate::error::{Error, Result};
use crate::linalg::{eigenvalues, real_eigenvector, RealMatrix};

/// Residual tolerance for the eigenvectors forming a Jordan frame.
const EIGEN_TOL: f64 = 1e-9;

/// Log-moduli of the eigenvalues, sorted in decreasing order.
fn log_moduli(g: &GroupElement) -> Vec<f64> {
    let Ok(values) = eigenvalues(g.mat()) else {
        return vec![f64::NAN; g.n()];
    };
    let mut logs: Vec<f64> = values.iter().map(|v| v.norm().ln()).collect();
    logs.sort_by(|a, b| b.total_cmp(a));
    logs
}

/// True when the eigenvalue moduli are pairwise separated: every gap between
/// consecutive sorted log-moduli exceeds `tol`.
pub fn is_loxodromic(g: &GroupElement, tol: f64) -> bool {
    let logs = log_moduli(g);
    logs.iter().all(|x| x.is_finite()) && logs.windows(2).all(|w| w[0] - w[1] > tol)
}

/// The Jordan projection: sorted log-moduli of the eigenvalues.
pub fn jordan_projection(g: &GroupElement) -> Vec<f64> {
    log_moduli(g)
}

/// `exp(diag(t))` for `t` summing to zero.
pub fn exp_diagonal(t: &[f64]) -> Result<GroupElement> {
    let entries: Vec<f64> = t.iter().map(|x| x.exp()).collect();
    GroupElement::diagonal(&entries)
}

/// Decomposition `g = h m exp(jd) h^-1` of a loxodromic element: `h` is an
/// eigenbasis ordered by decreasing eigenvalue modulus, `m` the diagonal
/// sign matrix and `jd` the Jordan projection.
#[derive(Debug, Clone, PartialEq)]
pub struct JordanFrame {
    h: GroupElement,
    signs: Vec<i8>,
    jd: Vec<f64>,
}

impl JordanFrame {
    pub fn h(&self) -> &GroupElement {
        &self.h
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn jd(&self) -> &[f64] {
        &self.jd
    }

    /// `h m exp(jd) h^-1`.
    pub fn reconstruct(&self) -> RealMatrix {
        let d = DVector::from_iterator(
            self.jd.len(),
            self.signs
                .iter()
                .zip(&self.jd)
                .map(|(&s, &t)| f64::from(s) * t.exp()),
        );
        self.h.mat() * DMatrix::from_diagonal(&d) * self.h.inverse().mat()
    }

    /// Builds a frame for `g` from a candidate eigenbasis.
    ///
    /// The last column is divided by `det(basis)` so that `h` is unimodular,
    /// then signs and Jordan projection are read off the diagonal of
    /// `h^-1 g h`. Fails unless that matrix is diagonal to `1e-8` relative
    /// with strictly decreasing log-moduli.
    pub fn from_basis(g: &GroupElement, mut basis: DMatrix<f64>) -> Result<Self> {
        let n = g.n();
        let det = basis.determinant();
        if det == 0.0 || !det.is_finite() {
            return Err(Error::InvalidInput("frame basis is singular".into()));
        }
        let mut last = basis.column_mut(n - 1);
        last /= det;
        let h = GroupElement::new(basis)?;
        let c = h.inverse().mat() * g.mat() * h.mat();
        let diag_norm = c.diagonal().norm();
        let off = (&c - DMatrix::from_diagonal(&c.diagonal())).norm();
        if off > 1e-8 * diag_norm {
            return Err(Error::InvalidInput(format!(
                "basis does not diagonalize the element (off-diagonal {off:e})"
            )));
        }
        let signs: Vec<i8> = c.diagonal().iter().map(|&x| if x < 0.0 { -1 } else { 1 }).collect();
        let jd: Vec<f64> = c.diagonal().iter().map(|x| x.abs().ln()).collect();
        if jd.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::InvalidInput(
                "frame columns are not ordered by decreasing modulus".into(),
            ));
        }
        Ok(Self { h, signs, jd })
    }

    /// Frame with `h` replaced by `h diag(scales)`, renormalized to
    /// determinant one. Represents the same element up to the `MA`
    /// ambiguity.
    pub fn rescaled(&self, g: &GroupElement, scales: &[f64]) -> Result<Self> {
        assert_eq!(scales.len(), self.signs.len());
        if scales.iter().any(|&s| s == 0.0 || !s.is_finite()) {
            return Err(Error::InvalidInput("frame scales must be nonzero".into()));
        }
        let d = DMatrix::from_diagonal(&DVector::from_column_slice(scales));
        Self::from_basis(g, self.h.mat() * d)
    }
}

/// Jordan frame of a loxodromic element.
///
/// Columns of `h` are real eigenvectors ordered by decreasing eigenvalue
/// modulus, scaled to unit norm with first nonzero entry positive; the last
/// column is then rescaled so `det h = 1`.
pub fn jordan_decompose(g: &GroupElement, tol: f64) -> Result<JordanFrame> {
    if !is_loxodromic(g, tol) {
        return Err(Error::NotLoxodromic { tol });
    }
    let n = g.n();
    let mut values = eigenvalues(g.mat())?;
    for value in &values {
        if value.im.abs() > tol * value.norm() {
            return Err(Error::ComplexEigendata { imag: value.im });
        }
    }
    values.sort_by(|a, b| b.norm().total_cmp(&a.norm()));

    // The moduli are separated, so each eigenvector is computed on its own.
    // A clustering radius relative to |g| would merge the small eigenvalues
    // of long words.
    let mut basis = DMatrix::zeros(n, n);
    let mut signs = Vec::with_capacity(n);
    let mut jd = Vec::with_capacity(n);
    for (col, value) in values.iter().enumerate() {
        let vector = real_eigenvector(g.mat(), value.re, EIGEN_TOL)?;
        basis.set_column(col, &real_direction(vector));
        signs.push(if value.re < 0.0 { -1 } else { 1 });
        jd.push(value.norm().ln());
    }
    let det = basis.determinant();
    let mut last = basis.column_mut(n - 1);
    last /= det;
    let h = GroupElement::new(basis)?;
    Ok(JordanFrame { h, signs, jd })
}

/// Unit vector with first nonzero entry positive.
fn real_direction(mut r: DVector<f64>) -> DVector<f64> {
    r /= r.norm();
    let max = r.amax();
    if let Some(first) = r.iter().copied().find(|x| x.abs() > 1e-12 * max) {
        if first < 0.0 {
            r.neg_mut();
        }
    }
    r
}
