use nalgebra::DMatrix;

use super::rep::{conjugate_rep, AffineRep};
use super::word::{words_of_length, words_up_to};
use crate::error::Result;
use crate::invariant::AffineElement;
use crate::liegroup::{adjoint_rep, GroupElement, VElement};
use crate::linalg::min_norm_solve;

/// Singular values below this fraction of the largest are dropped.
const RCOND: f64 = 1e-12;

/// Least-squares fit of `(R_e - Ad_{g_i}) Y = X_i` over all generators.
#[derive(Debug, Clone)]
pub struct CoboundaryFit {
    pub y: VElement,
    /// Largest per-generator residual `|(R_e - Ad_{g_i}) Y - X_i|`.
    pub generator_residual: f64,
    /// Largest residual of the same relation over all words of length 2.
    pub word_residual: f64,
    /// `tol * (1 + max |X|)` over generators and length-2 words.
    pub threshold: f64,
    pub rank: usize,
}

impl CoboundaryFit {
    pub fn accepted(&self) -> bool {
        self.generator_residual <= self.threshold && self.word_residual <= self.threshold
    }
}

fn relation_residual(a: &AffineElement, y: &VElement) -> f64 {
    (&(y - &a.linear().act(y)) - a.translation()).norm()
}

pub fn coboundary_fit(rep: &AffineRep, tol: f64) -> Result<CoboundaryFit> {
    let n = rep.n();
    let dim = rep.model().rep_dim();
    let blocks: Vec<_> = rep
        .generators()
        .iter()
        .map(|g| {
            (
                DMatrix::identity(dim, dim) - adjoint_rep(g.linear()),
                g.translation().coords(),
            )
        })
        .collect();
    let ls = min_norm_solve(&blocks, RCOND)?;
    let y = VElement::from_coords(n, &ls.solution);

    let mut max_x = 0.0f64;
    let mut generator_residual = 0.0f64;
    for g in rep.generators() {
        max_x = max_x.max(g.translation().norm());
        generator_residual = generator_residual.max(relation_residual(g, &y));
    }
    let mut word_residual = 0.0f64;
    for w in words_of_length(rep.k(), 2) {
        let a = rep.evaluate(&w);
        max_x = max_x.max(a.translation().norm());
        word_residual = word_residual.max(relation_residual(&a, &y));
    }
    Ok(CoboundaryFit {
        y,
        generator_residual,
        word_residual,
        threshold: tol * (1.0 + max_x),
        rank: ls.rank,
    })
}

/// `Y` with `X_i = Y - Ad_{g_i} Y` for every generator, if one exists at
/// tolerance `tol`.
pub fn coboundary_solve(rep: &AffineRep, tol: f64) -> Option<VElement> {
    coboundary_fit(rep, tol).ok().filter(CoboundaryFit::accepted).map(|f| f.y)
}

/// Conjugator found by [`certify_conjugacy`].
#[derive(Debug, Clone)]
pub struct Certificate {
    /// `(e, Y)` with `c rho_2(w) c^-1 = rho_1(w)`.
    pub conjugator: AffineElement,
    /// Largest translation mismatch `|X_w - X'_w| / (1 + |X_w|)` over the
    /// checked words.
    pub reconstruction_error: f64,
}

/// Generator-wise equality of linear parts in `PSL(n)`: for even `n` the
/// lifts `g` and `-g` are identified.
pub fn linear_parts_match(rep1: &AffineRep, rep2: &AffineRep, tol: f64) -> bool {
    rep1.model() == rep2.model()
        && rep1.k() == rep2.k()
        && rep1
            .generators()
            .iter()
            .zip(rep2.generators())
            .all(|(a, b)| same_projective(a.linear(), b.linear(), tol))
}

fn same_projective(g: &GroupElement, h: &GroupElement, tol: f64) -> bool {
    let bound = tol * (1.0 + g.mat().norm());
    let direct = (g.mat() - h.mat()).norm();
    let flipped = if g.n().is_multiple_of(2) {
        (g.mat() + h.mat()).norm()
    } else {
        f64::INFINITY
    };
    direct.min(flipped) <= bound
}

/// Recovers a translation conjugator between two representations with the
/// same linear parts.
///
/// The difference `(L, T_1 - T_2)` is a representation whose translation
/// part is a coboundary exactly when the two are conjugate by some `(e, Y)`.
/// The recovered conjugator is checked on every reduced word of length at
/// most `max_len`.
pub fn certify_conjugacy(
    rep1: &AffineRep,
    rep2: &AffineRep,
    max_len: usize,
    tol: f64,
) -> Option<Certificate> {
    if !linear_parts_match(rep1, rep2, tol) {
        return None;
    }
    let diff: Vec<VElement> = rep1
        .generators()
        .iter()
        .zip(rep2.generators())
        .map(|(a, b)| a.translation() - b.translation())
        .collect();
    let difference = rep1.with_translations(diff).ok()?;
    let y = coboundary_solve(&difference, tol)?;
    let conjugator = AffineElement::translation_by(y);
    let conjugated = conjugate_rep(rep2, &conjugator);

    let mut reconstruction_error = 0.0f64;
    for w in words_up_to(rep1.k(), max_len.max(1)) {
        let a = rep1.evaluate(&w);
        let b = conjugated.evaluate(&w);
        let err = (a.translation() - b.translation()).norm() / (1.0 + a.translation().norm());
        if err > tol {
            return None;
        }
        reconstruction_error = reconstruction_error.max(err);
    }
    Some(Certificate {
        conjugator,
        reconstruction_error,
    })
}
