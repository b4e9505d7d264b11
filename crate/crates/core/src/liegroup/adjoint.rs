use nalgebra::{DMatrix, DVector};

use super::element::{coords_of, GroupElement, VElement};
use crate::linalg::{inverse, lift, DoubleDouble, Field, RealMatrix};

/// Matrix of `X -> g X g^-1` in the fixed basis of `sl(n)`.
pub fn adjoint_rep(g: &GroupElement) -> RealMatrix {
    adjoint_rep_in(g.mat(), g.inverse().mat())
}

/// Adjoint matrix with `g^-1` computed and applied in double-double.
pub fn adjoint_rep_dd(g: &GroupElement) -> DMatrix<DoubleDouble> {
    let gd = lift::<DoubleDouble>(g.mat());
    let inv = inverse(&gd).expect("unimodular matrix is invertible");
    adjoint_rep_in(&gd, &inv)
}

/// Adjoint matrix over any field, given `g` and its inverse.
///
/// `g` need not be unimodular: conjugation by any invertible matrix preserves
/// `sl(n)`.
pub fn adjoint_rep_in<S: Field>(g: &DMatrix<S>, g_inv: &DMatrix<S>) -> DMatrix<S> {
    let n = g.nrows();
    let dim = n * n - 1;
    let outer = |i: usize, j: usize| -> DMatrix<S> { g.column(i) * g_inv.row(j) };
    let mut ad = DMatrix::<S>::zeros(dim, dim);
    let mut col = 0;
    let write = |ad: &mut DMatrix<S>, y: DMatrix<S>, col: usize| {
        for (r, c) in coords_of(&y).into_iter().enumerate() {
            ad[(r, col)] = c;
        }
    };
    for i in 0..n {
        for j in 0..n {
            if i != j {
                write(&mut ad, outer(i, j), col);
                col += 1;
            }
        }
    }
    for k in 0..n - 1 {
        write(&mut ad, outer(k, k) - outer(k + 1, k + 1), col);
        col += 1;
    }
    ad
}

/// Projection onto `V^0` along the nonzero weight spaces, in `H_k`
/// coordinates. For the adjoint model this reads off the diagonal.
pub fn pi0(x: &VElement) -> DVector<f64> {
    let n = x.n();
    let mut out = DVector::zeros(n - 1);
    let mut acc = 0.0;
    for k in 0..n - 1 {
        acc += x.mat()[(k, k)];
        out[k] = acc;
    }
    out
}

/// Embeds `H_k` coordinates back into `V`.
pub fn from_zero_weight(n: usize, m: &DVector<f64>) -> VElement {
    let mut coords = DVector::zeros(n * n - 1);
    coords.rows_mut(n * (n - 1), n - 1).copy_from(m);
    VElement::from_coords(n, &coords)
}

/// Matrix of `ad(a): X -> aX - Xa` in the fixed basis.
pub fn ad_matrix(a: &VElement) -> RealMatrix {
    let n = a.n();
    let dim = n * n - 1;
    let mut out = DMatrix::zeros(dim, dim);
    for b in 0..dim {
        let x = VElement::basis(n, b);
        let y = a.mat() * x.mat() - x.mat() * a.mat();
        out.set_column(b, &DVector::from_vec(coords_of(&y)));
    }
    out
}
