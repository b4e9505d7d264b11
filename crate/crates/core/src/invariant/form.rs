use nalgebra::{DMatrix, DVector};

use crate::liegroup::{adjoint_rep, GroupElement, ModelSpec, VElement};
use crate::linalg::{DoubleDouble, RealMatrix};

/// Killing form `B(X, Y) = 2n tr(XY)` on `sl(n)`, stored as its Gram matrix
/// in the fixed basis.
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantForm {
    n: usize,
    gram: RealMatrix,
}

impl InvariantForm {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gram(&self) -> &RealMatrix {
        &self.gram
    }

    pub fn pair(&self, x: &VElement, y: &VElement) -> f64 {
        self.pair_coords(&x.coords(), &y.coords())
    }

    pub fn pair_coords(&self, x: &DVector<f64>, y: &DVector<f64>) -> f64 {
        x.dot(&(&self.gram * y))
    }

    /// `B(v, v)` evaluated in double-double.
    pub fn quadratic_dd(&self, v: &DVector<DoubleDouble>) -> DoubleDouble {
        let mut acc = DoubleDouble::ZERO;
        for a in 0..v.len() {
            for b in 0..v.len() {
                let g = self.gram[(a, b)];
                if g != 0.0 {
                    acc += DoubleDouble::new(g) * v[a] * v[b];
                }
            }
        }
        acc
    }

    /// Gram matrix of the restriction to `V^0` in the `H_k` basis.
    pub fn zero_weight_block(&self) -> RealMatrix {
        let off = self.n * (self.n - 1);
        self.gram.view((off, off), (self.n - 1, self.n - 1)).into_owned()
    }

    /// `B(M, M)` for a vector of `H_k` coordinates.
    pub fn zero_weight_quadratic(&self, m: &DVector<f64>) -> f64 {
        m.dot(&(self.zero_weight_block() * m))
    }

    /// `|Ad_g^T B Ad_g - B| / |B|`.
    pub fn invariance_residual(&self, g: &GroupElement) -> f64 {
        let ad = adjoint_rep(g);
        (ad.transpose() * &self.gram * &ad - &self.gram).norm() / self.gram.norm()
    }
}

pub fn invariant_form(model: &ModelSpec) -> InvariantForm {
    let n = model.n();
    let dim = model.rep_dim();
    let basis: Vec<VElement> = (0..dim).map(|b| VElement::basis(n, b)).collect();
    let scale = 2.0 * n as f64;
    let gram = DMatrix::from_fn(dim, dim, |a, b| scale * (basis[a].mat() * basis[b].mat()).trace());
    InvariantForm { n, gram }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_values() {
        let form = invariant_form(&ModelSpec::adjoint_sl(2).unwrap());
        let (e, f, h) = (VElement::e(2, 0, 1), VElement::e(2, 1, 0), VElement::h(2, 0));
        assert_eq!(form.pair(&h, &h), 8.0);
        assert_eq!(form.pair(&e, &f), 4.0);
        assert_eq!(form.pair(&e, &e), 0.0);
    }

    #[test]
    fn sl3_zero_weight_block() {
        let form = invariant_form(&ModelSpec::adjoint_sl(3).unwrap());
        let expected = DMatrix::from_row_slice(2, 2, &[12.0, -6.0, -6.0, 12.0]);
        assert_eq!(form.zero_weight_block(), expected);
    }

    #[test]
    fn gram_is_symmetric() {
        let form = invariant_form(&ModelSpec::adjoint_sl(4).unwrap());
        assert_eq!(form.gram(), &form.gram().transpose());
    }
}
