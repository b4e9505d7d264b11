use nalgebra::{Complex, DMatrix, DVector};

use super::hqr::eigenvalues_hqr;
use crate::error::{Error, Result};

pub type Complex64 = Complex<f64>;

/// Eigenpairs of a real square matrix, counted with multiplicity.
///
/// Every pair satisfies `|A v - lambda v| <= tol |A| |v|` for the tolerance
/// the decomposition was computed with. Vectors have unit Euclidean norm.
#[derive(Debug, Clone)]
pub struct EigenData {
    pub values: Vec<Complex64>,
    pub vectors: Vec<DVector<Complex64>>,
}

impl EigenData {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Number of eigenvalues within `radius` of `target`.
    pub fn count_near(&self, target: Complex64, radius: f64) -> usize {
        self.values
            .iter()
            .filter(|v| (*v - target).norm() <= radius)
            .count()
    }
}

/// Eigenvalues by Hessenberg QR iteration. Fails when some eigenvalue does
/// not converge within a bounded number of iterations.
pub fn eigenvalues(a: &DMatrix<f64>) -> Result<Vec<Complex64>> {
    check_square_finite(a)?;
    eigenvalues_hqr(a).ok_or(Error::NonConvergence)
}

/// Full eigendecomposition of a diagonalizable real matrix.
///
/// Eigenvalues come from [`eigenvalues`]. Eigenvalues closer than
/// `tol * |A|` are grouped into a cluster, and an orthonormal basis of each
/// cluster's eigenspace is read off the smallest right singular vectors of
/// `A - mu I`. Defective clusters fail the residual test and are reported as
/// [`Error::NonConvergence`].
pub fn eigen_decompose(a: &DMatrix<f64>, tol: f64) -> Result<EigenData> {
    let n = a.nrows();
    let mut values = eigenvalues(a)?;
    values.sort_by(|x, y| {
        y.norm()
            .total_cmp(&x.norm())
            .then(y.re.total_cmp(&x.re))
            .then(y.im.total_cmp(&x.im))
    });
    let scale = a.norm().max(f64::MIN_POSITIVE);
    let radius = tol * scale;

    let mut clusters: Vec<Vec<Complex64>> = Vec::new();
    for v in values {
        match clusters
            .iter_mut()
            .find(|c| c.iter().any(|w| (w - v).norm() <= radius))
        {
            Some(c) => c.push(v),
            None => clusters.push(vec![v]),
        }
    }

    let ac = a.map(|x| Complex64::new(x, 0.0));
    let mut out = EigenData {
        values: Vec::with_capacity(n),
        vectors: Vec::with_capacity(n),
    };
    for cluster in clusters {
        let m = cluster.len();
        let mu = cluster.iter().sum::<Complex64>() / m as f64;
        let basis = null_basis(&ac, mu, m);
        for (value, vector) in cluster.into_iter().zip(basis) {
            let residual = (&ac * &vector - &vector * value).norm();
            if residual > tol * scale * vector.norm() {
                return Err(Error::NonConvergence);
            }
            out.values.push(value);
            out.vectors.push(vector);
        }
    }
    Ok(out)
}

/// Unit eigenvector for a simple real eigenvalue `lambda`: the right
/// singular vector of `A - lambda I` with the smallest singular value. Fails
/// when its residual exceeds `tol * |A|`.
pub fn real_eigenvector(a: &DMatrix<f64>, lambda: f64, tol: f64) -> Result<DVector<f64>> {
    check_square_finite(a)?;
    let n = a.nrows();
    let shifted = a - DMatrix::identity(n, n) * lambda;
    let svd = shifted.svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let k = smallest(&svd.singular_values, 1)[0];
    let v = v_t.row(k).transpose();
    if (a * &v - &v * lambda).norm() > tol * a.norm() {
        return Err(Error::NonConvergence);
    }
    Ok(v)
}

/// The `m` right singular vectors of `A - mu I` with the smallest singular
/// values. Real shifts keep the computation real.
fn null_basis(a: &DMatrix<Complex64>, mu: Complex64, m: usize) -> Vec<DVector<Complex64>> {
    let n = a.nrows();
    if mu.im == 0.0 {
        let shifted = DMatrix::from_fn(n, n, |i, j| a[(i, j)].re - if i == j { mu.re } else { 0.0 });
        let svd = shifted.svd(false, true);
        let v_t = svd.v_t.expect("requested V^T");
        smallest(&svd.singular_values, m)
            .into_iter()
            .map(|k| v_t.row(k).transpose().map(|x| Complex64::new(x, 0.0)))
            .collect()
    } else {
        let shifted = a - DMatrix::<Complex64>::identity(n, n) * mu;
        let svd = shifted.svd(false, true);
        let v_t = svd.v_t.expect("requested V^H");
        smallest(&svd.singular_values, m)
            .into_iter()
            .map(|k| v_t.row(k).adjoint())
            .collect()
    }
}

fn smallest(sigma: &DVector<f64>, m: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..sigma.len()).collect();
    idx.sort_by(|&i, &j| sigma[i].total_cmp(&sigma[j]));
    idx.truncate(m);
    idx
}

fn check_square_finite(a: &DMatrix<f64>) -> Result<()> {
    if a.nrows() != a.ncols() {
        return Err(Error::DimensionMismatch {
            expected: a.nrows(),
            found: a.ncols(),
        });
    }
    if a.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidInput("matrix has non-finite entries".into()));
    }
    Ok(())
}
