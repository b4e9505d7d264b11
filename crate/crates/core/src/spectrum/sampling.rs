//! Seeded random fixtures: group elements, translations and loxodromic
//! representations.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::rep::AffineRep;
use super::word::words_up_to;
use crate::error::{Error, Result};
use crate::invariant::AffineElement;
use crate::liegroup::{is_loxodromic, GroupElement, ModelSpec, VElement};

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn uniform_matrix<R: Rng>(rng: &mut R, n: usize, scale: f64) -> DMatrix<f64> {
    DMatrix::from_fn(n, n, |_, _| rng.random_range(-scale..=scale))
}

/// Unimodular matrix from `base`, flipping the first column when the
/// determinant is negative. `None` when `base` is close to singular.
fn unimodular(mut base: DMatrix<f64>) -> Option<GroupElement> {
    let det = base.determinant();
    if det.abs() < 1e-3 {
        return None;
    }
    if det < 0.0 {
        let mut c = base.column_mut(0);
        c.neg_mut();
    }
    GroupElement::normalized(base).ok()
}

/// Group element with entries drawn uniformly from `[-1, 1]`, rescaled to
/// determinant one.
pub fn random_group_element<R: Rng>(rng: &mut R, n: usize) -> GroupElement {
    loop {
        if let Some(g) = unimodular(uniform_matrix(rng, n, 1.0)) {
            return g;
        }
    }
}

/// Perturbation of the identity, `I + U` with `U` uniform in `[-scale, scale]`.
pub fn random_near_identity<R: Rng>(rng: &mut R, n: usize, scale: f64) -> GroupElement {
    loop {
        let base = DMatrix::identity(n, n) + uniform_matrix(rng, n, scale);
        if let Some(g) = unimodular(base) {
            return g;
        }
    }
}

/// Translation with coordinates uniform in `[-scale, scale]`.
pub fn random_velement<R: Rng>(rng: &mut R, n: usize, scale: f64) -> VElement {
    let c = DVector::from_fn(n * n - 1, |_, _| rng.random_range(-scale..=scale));
    VElement::from_coords(n, &c)
}

/// Diagonal element of `MA`: random signs with product `+1` and positive
/// moduli drawn from `exp([-1, 1])`, rescaled to determinant one.
pub fn random_ma<R: Rng>(rng: &mut R, n: usize) -> GroupElement {
    let mut signs: Vec<f64> = (0..n).map(|_| if rng.random::<bool>() { 1.0 } else { -1.0 }).collect();
    if signs.iter().product::<f64>() < 0.0 {
        signs[n - 1] = -signs[n - 1];
    }
    let logs: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..=1.0)).collect();
    let mean = logs.iter().sum::<f64>() / n as f64;
    let d: Vec<f64> = signs
        .iter()
        .zip(&logs)
        .map(|(s, t)| s * (t - mean).exp())
        .collect();
    GroupElement::diagonal(&d).expect("entries multiply to one")
}

/// Conjugates `u m exp(t) u^-1` of dominant diagonal elements.
///
/// The log-moduli `t` have consecutive gaps drawn uniformly from
/// `[min_gap, max_gap]`; `m` carries random signs; `u` is a perturbation of
/// the identity of size `conj_scale`.
#[derive(Debug, Clone, Copy)]
pub struct LoxodromicSampler {
    pub min_gap: f64,
    pub max_gap: f64,
    pub conj_scale: f64,
}

impl Default for LoxodromicSampler {
    fn default() -> Self {
        Self {
            min_gap: 0.3,
            max_gap: 1.0,
            conj_scale: 0.5,
        }
    }
}

impl LoxodromicSampler {
    /// Log-moduli with the sampler's gaps, centered to sum to zero.
    pub fn jordan_projection<R: Rng>(&self, rng: &mut R, n: usize) -> Vec<f64> {
        let mut t = vec![0.0; n];
        for i in 1..n {
            t[i] = t[i - 1] - rng.random_range(self.min_gap..=self.max_gap);
        }
        let mean = t.iter().sum::<f64>() / n as f64;
        t.iter().map(|x| x - mean).collect()
    }

    /// Returns the element together with the conjugator `u` and the
    /// diagonal part `m exp(t)`.
    pub fn sample_with_frame<R: Rng>(&self, rng: &mut R, n: usize) -> (GroupElement, GroupElement, GroupElement) {
        let c = self.sample_diagonal(rng, n);
        let u = random_near_identity(rng, n, self.conj_scale);
        let g = &(&u * &c) * &u.inverse();
        (g, u, c)
    }

    /// The diagonal part `m exp(t)` alone.
    pub fn sample_diagonal<R: Rng>(&self, rng: &mut R, n: usize) -> GroupElement {
        let t = self.jordan_projection(rng, n);
        let mut signs: Vec<f64> = (0..n).map(|_| if rng.random::<bool>() { 1.0 } else { -1.0 }).collect();
        if signs.iter().product::<f64>() < 0.0 {
            signs[n - 1] = -signs[n - 1];
        }
        let d: Vec<f64> = signs.iter().zip(&t).map(|(s, x)| s * x.exp()).collect();
        GroupElement::diagonal(&d).expect("entries multiply to one")
    }

    pub fn sample<R: Rng>(&self, rng: &mut R, n: usize) -> GroupElement {
        self.sample_with_frame(rng, n).0
    }
}

/// Loxodromic affine element with translation uniform in `[-1, 1]`.
pub fn random_loxodromic_affine<R: Rng>(rng: &mut R, n: usize) -> AffineElement {
    let g = LoxodromicSampler::default().sample(rng, n);
    let x = random_velement(rng, n, 1.0);
    AffineElement::new(g, x).expect("dimensions agree")
}

/// Rotation `exp(K)` with `K` the skew part of a uniform matrix of size
/// `scale`.
pub fn random_small_rotation<R: Rng>(rng: &mut R, n: usize, scale: f64) -> DMatrix<f64> {
    let a = uniform_matrix(rng, n, 1.0);
    ((&a - a.transpose()) * (0.5 * scale)).exp()
}

/// Haar-distributed rotation from the QR factor of a Gaussian-like matrix.
pub fn random_rotation<R: Rng>(rng: &mut R, n: usize) -> DMatrix<f64> {
    loop {
        let a = uniform_matrix(rng, n, 1.0);
        if a.determinant().abs() < 1e-3 {
            continue;
        }
        let qr = a.qr();
        let mut q = qr.q();
        let r = qr.r();
        for j in 0..n {
            if r[(j, j)] < 0.0 {
                q.column_mut(j).neg_mut();
            }
        }
        if q.determinant() < 0.0 {
            q.column_mut(0).neg_mut();
        }
        return q;
    }
}

/// Orthonormal cosine transform, sign-adjusted to determinant one. Its
/// columns are in general position with respect to both coordinate flags.
fn cosine_frame(n: usize) -> DMatrix<f64> {
    let nf = n as f64;
    let mut m = DMatrix::from_fn(n, n, |i, j| {
        let c = if j == 0 { (1.0 / nf).sqrt() } else { (2.0 / nf).sqrt() };
        c * (std::f64::consts::PI * (i as f64 + 0.5) * j as f64 / nf).cos()
    });
    if m.determinant() < 0.0 {
        m.column_mut(n - 1).neg_mut();
    }
    m
}

fn planar_rotation(angle: f64) -> DMatrix<f64> {
    let (s, c) = angle.sin_cos();
    DMatrix::from_row_slice(2, 2, &[c, -s, s, c])
}

const GENERATION_ATTEMPTS: usize = 512;

/// Deterministic random representation whose every reduced word of length
/// at most `max_len` has loxodromic image at tolerance `1e-6`.
///
/// Generator `i` is `o_i m exp(t) o_i^T` with `o_i` a small rotation of a
/// base frame: the identity, then the cosine frame, further ones Haar. For
/// `n = 2` the base frames are rotations by `i pi / 2k`, spreading the fixed
/// points evenly over the projective line. Orthogonal frames keep `|Ad_w|`
/// close to its spectral radius. Consecutive log-gaps grow with `k`. Translations are uniform in `[-translation_scale,
/// translation_scale]`. Candidates are rejected until the word condition
/// holds, up to a fixed budget.
pub fn random_loxodromic_rep(
    model: &ModelSpec,
    k: usize,
    max_len: usize,
    seed: u64,
    translation_scale: f64,
) -> Result<AffineRep> {
    if k < 2 {
        return Err(Error::InvalidInput(format!("need at least 2 generators, got {k}")));
    }
    let n = model.n();
    // Axes through a common point with 2k evenly spread endpoints play
    // ping-pong in H^2 once the translation length exceeds
    // 2 ln cot(pi / 4k); the minimal gap grows with that threshold from 1
    // at k = 2.
    let ping_pong = |k: usize| 2.0 * (1.0 / (std::f64::consts::PI / (4 * k) as f64).tan()).ln();
    let min_gap = 1.0 + ping_pong(k) - ping_pong(2);
    let sampler = LoxodromicSampler {
        min_gap,
        max_gap: min_gap + 1.0,
        ..LoxodromicSampler::default()
    };
    let mut rng = rng_from_seed(seed);
    let words = words_up_to(k, max_len);
    for _ in 0..GENERATION_ATTEMPTS {
        let generators: Vec<AffineElement> = (0..k)
            .map(|i| {
                let base = match (n, i) {
                    (2, _) => planar_rotation(i as f64 * std::f64::consts::PI / (2 * k) as f64),
                    (_, 0) => DMatrix::identity(n, n),
                    (_, 1) => cosine_frame(n),
                    _ => random_rotation(&mut rng, n),
                };
                let o = base * random_small_rotation(&mut rng, n, 0.6 / k as f64);
                let c = sampler.sample_diagonal(&mut rng, n);
                let g = GroupElement::normalized(&o * c.mat() * o.transpose())
                    .expect("orthogonal conjugate of a unimodular matrix");
                let x = random_velement(&mut rng, n, translation_scale);
                AffineElement::new(g, x).expect("dimensions agree")
            })
            .collect();
        let Ok(rep) = AffineRep::new(*model, generators, 1e-6) else {
            continue;
        };
        if words
            .iter()
            .all(|w| is_loxodromic(rep.evaluate(w).linear(), 1e-6))
        {
            return Ok(rep);
        }
    }
    Err(Error::GenerationFailed {
        attempts: GENERATION_ATTEMPTS,
    })
}
