use nalgebra::{DMatrix, DVector};
use num_rational::BigRational;
use num_traits::Zero;

use super::Tolerances;
use crate::error::{Error, Result};
use crate::liegroup::{adjoint_rep_dd, adjoint_rep_in, is_loxodromic, GroupElement, VElement};
use crate::linalg::{
    char_poly_hessenberg_in, char_poly_in, identity, inverse, lift, poly_apply_in, poly_apply_vec_in, poly_deflate_in,
    round, DoubleDouble, Field, Poly, RealMatrix,
};

/// `R_e - Ad_g` in double-double.
fn shifted_operator(g: &GroupElement) -> DMatrix<DoubleDouble> {
    let ad = adjoint_rep_dd(g);
    identity::<DoubleDouble>(ad.nrows()) - ad
}

/// `CP_g(x) = det(x R_e - (R_e - Ad_g))`, monic of degree `n^2 - 1`.
pub fn shifted_char_poly(g: &GroupElement) -> Poly<f64> {
    char_poly_in(&shifted_operator(g)).to_f64()
}

/// `CP_g` in exact rational arithmetic.
pub fn shifted_char_poly_exact(g: &GroupElement) -> Poly<BigRational> {
    let gq = lift::<BigRational>(g.mat());
    let inv = inverse(&gq).expect("unimodular matrix is invertible");
    let ad = adjoint_rep_in(&gq, &inv);
    char_poly_hessenberg_in(&(identity::<BigRational>(ad.nrows()) - ad))
}

/// `P_g = CP_g / x^(n-1)` and `P_g(0)`, computed exactly. The lowest `n - 1`
/// coefficients of `CP_g` must vanish identically.
pub fn deflated_poly_exact(g: &GroupElement) -> Result<(Poly<BigRational>, BigRational)> {
    let cp = shifted_char_poly_exact(g);
    let p = poly_deflate_in(&cp, g.n() - 1, 0.0)?;
    let at_zero = p.coeff(0);
    Ok((p, at_zero))
}

/// `P_g = CP_g / x^(n-1)` and `P_g(0)` for a loxodromic `g`.
pub fn deflated_poly(g: &GroupElement, tol: &Tolerances) -> Result<(Poly<f64>, f64)> {
    let proj = PolynomialProjector::new(g, tol)?;
    Ok((proj.deflated_poly(), proj.at_zero()))
}

/// `Pi_g = P_g(0)^-1 P_g(R_e - Ad_g)`, the projection onto the unit
/// eigenspace of `Ad_g` along the other eigenspaces.
pub fn unit_projector(g: &GroupElement, tol: &Tolerances) -> Result<RealMatrix> {
    Ok(PolynomialProjector::new(g, tol)?.matrix())
}

/// Unit-eigenspace projector of a loxodromic element, held in double-double
/// so it can be applied to many vectors.
#[derive(Debug, Clone)]
pub struct PolynomialProjector {
    n: usize,
    shifted: DMatrix<DoubleDouble>,
    deflated: Poly<DoubleDouble>,
    at_zero: DoubleDouble,
}

impl PolynomialProjector {
    pub fn new(g: &GroupElement, tol: &Tolerances) -> Result<Self> {
        if !is_loxodromic(g, tol.loxodromy) {
            return Err(Error::NotLoxodromic { tol: tol.loxodromy });
        }
        let shifted = shifted_operator(g);
        let cp = char_poly_in(&shifted);
        let deflated = poly_deflate_in(&cp, g.n() - 1, tol.deflation)?;
        let at_zero = deflated.coeff(0);
        let threshold = tol.degenerate * deflated.max_abs_coeff();
        if at_zero.is_zero() || at_zero.magnitude() <= threshold {
            return Err(Error::Degenerate {
                value: at_zero.to_f64(),
                threshold,
            });
        }
        Ok(Self {
            n: g.n(),
            shifted,
            deflated,
            at_zero,
        })
    }

    pub fn deflated_poly(&self) -> Poly<f64> {
        self.deflated.to_f64()
    }

    pub fn at_zero(&self) -> f64 {
        self.at_zero.to_f64()
    }

    /// `R_e - Ad_g`, rounded.
    pub fn shifted(&self) -> RealMatrix {
        round(&self.shifted)
    }

    /// `P_g(R_e - Ad_g) X` without the `P_g(0)` normalization.
    pub fn apply_unnormalized(&self, x: &VElement) -> DVector<DoubleDouble> {
        let xv = x.coords().map(DoubleDouble::new);
        poly_apply_vec_in(&self.deflated, &self.shifted, &xv)
    }

    /// `Pi_g X`.
    pub fn project(&self, x: &VElement) -> VElement {
        let v = self.apply_unnormalized(x).map(|c| (c / self.at_zero).to_f64());
        VElement::from_coords(self.n, &v)
    }

    /// `P_g(R_e - Ad_g)`, rounded.
    pub fn unnormalized_matrix(&self) -> RealMatrix {
        round(&poly_apply_in(&self.deflated, &self.shifted))
    }

    /// `Pi_g` as a matrix.
    pub fn matrix(&self) -> RealMatrix {
        let p = poly_apply_in(&self.deflated, &self.shifted);
        round(&p.map(|c| c / self.at_zero))
    }

    /// `(R_e - Ad_g) P_g(R_e - Ad_g)`, which vanishes for loxodromic `g`.
    pub fn annihilator(&self) -> RealMatrix {
        round(&(&self.shifted * poly_apply_in(&self.deflated, &self.shifted)))
    }

    pub fn at_zero_dd(&self) -> DoubleDouble {
        self.at_zero
    }
}
