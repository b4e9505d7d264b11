use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct LeastSquares {
    pub solution: DVector<f64>,
    /// Euclidean norm of the stacked residual `A x - b`.
    pub residual: f64,
    /// Euclidean norm of the stacked right-hand side.
    pub rhs_norm: f64,
    pub rank: usize,
}

/// Minimum-norm least-squares solution of the system obtained by stacking
/// every `(A_i, b_i)` block vertically.
///
/// Singular values at most `rcond * sigma_max` are treated as zero.
pub fn min_norm_solve(blocks: &[(DMatrix<f64>, DVector<f64>)], rcond: f64) -> Result<LeastSquares> {
    let cols = blocks
        .first()
        .map(|(a, _)| a.ncols())
        .ok_or_else(|| Error::InvalidInput("no constraint blocks".into()))?;
    let mut rows = 0;
    for (a, b) in blocks {
        if a.ncols() != cols {
            return Err(Error::DimensionMismatch {
                expected: cols,
                found: a.ncols(),
            });
        }
        if b.len() != a.nrows() {
            return Err(Error::DimensionMismatch {
                expected: a.nrows(),
                found: b.len(),
            });
        }
        rows += a.nrows();
    }

    let mut stacked = DMatrix::zeros(rows, cols);
    let mut rhs = DVector::zeros(rows);
    let mut at = 0;
    for (a, b) in blocks {
        stacked.view_mut((at, 0), (a.nrows(), cols)).copy_from(a);
        rhs.rows_mut(at, b.len()).copy_from(b);
        at += a.nrows();
    }

    let svd = stacked.clone().svd(true, true);
    let sigma_max = svd.singular_values.max();
    let cutoff = rcond * sigma_max;
    let rank = svd.singular_values.iter().filter(|&&s| s > cutoff).count();
    let solution = if sigma_max == 0.0 {
        DVector::zeros(cols)
    } else {
        svd.solve(&rhs, cutoff).map_err(|e| Error::InvalidInput(e.into()))?
    };
    let residual = (&stacked * &solution - &rhs).norm();
    Ok(LeastSquares {
        solution,
        residual,
        rhs_norm: rhs.norm(),
        rank,
    })
}
