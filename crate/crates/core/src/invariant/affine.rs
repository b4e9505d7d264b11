use std::ops::Mul;

use crate::error::{Error, Result};
use crate::liegroup::{GroupElement, VElement};

/// Element `(g, X)` of `G x_Ad V` with product `(g, X)(h, Y) = (gh, X + Ad_g Y)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineElement {
    linear: GroupElement,
    translation: VElement,
}

impl AffineElement {
    pub fn new(linear: GroupElement, translation: VElement) -> Result<Self> {
        if linear.n() != translation.n() {
            return Err(Error::DimensionMismatch {
                expected: linear.n(),
                found: translation.n(),
            });
        }
        Ok(Self {
            linear,
            translation,
        })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            linear: GroupElement::identity(n),
            translation: VElement::zero(n),
        }
    }

    /// `(e, Y)`.
    pub fn translation_by(y: VElement) -> Self {
        Self {
            linear: GroupElement::identity(y.n()),
            translation: y,
        }
    }

    pub fn linear(&self) -> &GroupElement {
        &self.linear
    }

    pub fn translation(&self) -> &VElement {
        &self.translation
    }

    pub fn n(&self) -> usize {
        self.linear.n()
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self {
            linear: &self.linear * &other.linear,
            translation: &self.translation + &self.linear.act(&other.translation),
        }
    }

    /// `(g, X)^-1 = (g^-1, -Ad_{g^-1} X)`.
    pub fn inverse(&self) -> Self {
        let inv = self.linear.inverse();
        let translation = -&inv.act(&self.translation);
        Self {
            linear: inv,
            translation,
        }
    }

    /// Affine action `Y -> Ad_g Y + X`.
    pub fn act(&self, y: &VElement) -> VElement {
        &self.linear.act(y) + &self.translation
    }

    /// `c (g, X) c^-1`.
    pub fn conjugated_by(&self, c: &Self) -> Self {
        c.compose(self).compose(&c.inverse())
    }

    /// Sum of Frobenius distances of the linear and translation parts.
    pub fn distance(&self, other: &Self) -> f64 {
        self.linear.distance(&other.linear) + (&self.translation - &other.translation).norm()
    }
}

impl Mul for &AffineElement {
    type Output = AffineElement;

    fn mul(self, rhs: &AffineElement) -> AffineElement {
        self.compose(rhs)
    }
}
