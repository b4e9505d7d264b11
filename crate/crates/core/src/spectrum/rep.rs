use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::invariant::AffineElement;
use crate::liegroup::{is_loxodromic, ModelSpec, VElement};
use crate::linalg::{identity, inverse, lift, DoubleDouble};

use super::word::FreeWord;

/// Affine representation of the free group on `k` generators into
/// `PSL(n, R) x_Ad sl(n, R)`, given by the images of the generators.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineRep {
    model: ModelSpec,
    generators: Vec<AffineElement>,
}

impl AffineRep {
    /// Every generator must have a loxodromic linear part at `loxodromy_tol`.
    pub fn new(model: ModelSpec, generators: Vec<AffineElement>, loxodromy_tol: f64) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvalidInput("representation needs at least one generator".into()));
        }
        for (i, g) in generators.iter().enumerate() {
            if g.n() != model.n() {
                return Err(Error::DimensionMismatch {
                    expected: model.n(),
                    found: g.n(),
                });
            }
            if !is_loxodromic(g.linear(), loxodromy_tol) {
                return Err(Error::InvalidInput(format!(
                    "generator {} is not loxodromic",
                    i + 1
                )));
            }
        }
        Ok(Self { model, generators })
    }

    pub fn model(&self) -> &ModelSpec {
        &self.model
    }

    pub fn n(&self) -> usize {
        self.model.n()
    }

    pub fn k(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[AffineElement] {
        &self.generators
    }

    /// Same linear parts, new translations.
    pub fn with_translations(&self, translations: Vec<VElement>) -> Result<Self> {
        if translations.len() != self.k() {
            return Err(Error::DimensionMismatch {
                expected: self.k(),
                found: translations.len(),
            });
        }
        let generators = self
            .generators
            .iter()
            .zip(translations)
            .map(|(g, x)| AffineElement::new(g.linear().clone(), x))
            .collect::<Result<_>>()?;
        Ok(Self {
            model: self.model,
            generators,
        })
    }

    /// Image of a word: left-to-right product under the semidirect law.
    pub fn evaluate(&self, w: &FreeWord) -> AffineElement {
        assert!(
            w.max_generator() <= self.k(),
            "word {w} uses a generator beyond {}",
            self.k()
        );
        let mut acc = AffineElement::identity(self.n());
        for &l in w.letters() {
            let g = &self.generators[l.unsigned_abs() as usize - 1];
            acc = if l > 0 {
                acc.compose(g)
            } else {
                acc.compose(&g.inverse())
            };
        }
        acc
    }
}

/// Generator-wise conjugation `c g_i c^-1`.
pub fn conjugate_rep(rep: &AffineRep, c: &AffineElement) -> AffineRep {
    AffineRep {
        model: rep.model,
        generators: rep.generators.iter().map(|g| g.conjugated_by(c)).collect(),
    }
}

type Dd = DoubleDouble;

/// Letter data `(g, g^-1, X)` in double-double.
#[derive(Debug, Clone)]
struct Letter {
    g: DMatrix<Dd>,
    g_inv: DMatrix<Dd>,
    x: DMatrix<Dd>,
}

/// Word evaluation in double-double, for long words whose f64 images lose
/// the small components of the translation.
#[derive(Debug, Clone)]
pub struct PreciseWords {
    n: usize,
    forward: Vec<Letter>,
    backward: Vec<Letter>,
}

impl PreciseWords {
    pub fn new(rep: &AffineRep) -> Self {
        let mut forward = Vec::new();
        let mut backward = Vec::new();
        for a in rep.generators() {
            let g = lift::<Dd>(a.linear().mat());
            let g_inv = inverse(&g).expect("unimodular matrix is invertible");
            let x = lift::<Dd>(a.translation().mat());
            let x_inv = -(&g_inv * &x * &g);
            backward.push(Letter {
                g: g_inv.clone(),
                g_inv: g.clone(),
                x: x_inv,
            });
            forward.push(Letter { g, g_inv, x });
        }
        Self {
            n: rep.n(),
            forward,
            backward,
        }
    }

    /// Linear part and translation matrix of the image of `w`.
    pub fn evaluate(&self, w: &FreeWord) -> (DMatrix<Dd>, DMatrix<Dd>) {
        let mut p = identity::<Dd>(self.n);
        let mut p_inv = identity::<Dd>(self.n);
        let mut x = DMatrix::<Dd>::zeros(self.n, self.n);
        for &l in w.letters() {
            let i = l.unsigned_abs() as usize - 1;
            let letter = if l > 0 { &self.forward[i] } else { &self.backward[i] };
            x += &p * &letter.x * &p_inv;
            p *= &letter.g;
            p_inv = &letter.g_inv * p_inv;
        }
        (p, x)
    }
}
