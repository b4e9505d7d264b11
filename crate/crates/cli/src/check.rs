//! Numerical property suite run by `margulis check`.

use margulis_core::invariant::{
    invariant_in_frame, margulis_invariant, margulis_invariant_via_projector,
    shifted_char_poly, shifted_char_poly_exact, AffineElement, PolynomialProjector, Tolerances,
};
use margulis_core::liegroup::{adjoint_rep, jordan_decompose, pi0};
use margulis_core::spectrum::sampling::{random_group_element, random_velement, rng_from_seed};
use margulis_core::spectrum::{compare_spectra, conjugate_rep, marked_spectrum, words_up_to};
use margulis_core::{AffineRep, FreeWord};
use rand::Rng;
use serde::Serialize;

/// Longest words on which the frame-based single-element checks run.
pub const ELEMENT_WORD_LEN: usize = 2;

/// Longest words on which the polynomial-route checks run. Its error grows
/// like `eps |Ad_w|^(n^2 - 1)`, which at `n = 4` already swamps `P_w(0)`
/// for products of two generators.
pub const POLYNOMIAL_WORD_LEN: usize = 1;

const FRAME_RESCALES: usize = 5;

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub residual: f64,
    pub bound: f64,
    pub samples: usize,
    pub passed: bool,
}

impl CheckResult {
    fn new(name: &'static str, residual: f64, bound: f64, samples: usize) -> Self {
        Self {
            name,
            residual,
            bound,
            samples,
            passed: residual <= bound,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub checks: Vec<CheckResult>,
    pub element_words: usize,
    pub skipped_words: Vec<String>,
    pub max_word_len: usize,
    pub seed: u64,
    pub passed: bool,
    pub first_failure: Option<&'static str>,
}

struct Sample {
    a: AffineElement,
    /// `None` outside the polynomial-route word range, `Some(Err)` when the
    /// projector could not be built.
    projector: Option<Result<PolynomialProjector, margulis_core::Error>>,
}

/// Runs every check. Polynomial-route checks use the words of length at most
/// [`POLYNOMIAL_WORD_LEN`], frame-based ones those up to
/// [`ELEMENT_WORD_LEN`]; conjugation invariance compares whole spectra up to
/// `max_len` at tolerance `tol`.
pub fn run_checks(rep: &AffineRep, max_len: usize, tol: f64, seed: u64, rational: bool) -> CheckReport {
    let tols = Tolerances::default();
    let mut rng = rng_from_seed(seed);
    let n = rep.n();
    let dim = rep.model().rep_dim();

    let mut samples = Vec::new();
    let mut skipped = Vec::new();
    for w in words_up_to(rep.k(), ELEMENT_WORD_LEN.min(max_len.max(1))) {
        let a = rep.evaluate(&w);
        if jordan_decompose(a.linear(), tols.loxodromy).is_err() {
            skipped.push(w.render());
            continue;
        }
        let projector = (w.len() <= POLYNOMIAL_WORD_LEN).then(|| PolynomialProjector::new(a.linear(), &tols));
        samples.push(Sample { a, projector });
    }
    let count = samples.len();
    let poly_count = samples.iter().filter(|s| s.projector.is_some()).count();

    let mut annihilation = 0.0f64;
    let mut laws = 0.0f64;
    let mut agreement = 0.0f64;
    let mut frames = 0.0f64;
    let mut displacement = 0.0f64;
    for s in &samples {
        let x = s.a.translation();
        let scale = 1.0 + x.norm();
        match &s.projector {
            None => {}
            Some(Err(_)) => {
                annihilation = f64::INFINITY;
                laws = f64::INFINITY;
                agreement = f64::INFINITY;
            }
            Some(Ok(p)) => {
                let ad = adjoint_rep(s.a.linear());
                annihilation = annihilation.max(p.annihilator().norm() / ad.norm().powi(dim as i32));
                let pi = p.matrix();
                laws = laws
                    .max((&pi * &pi - &pi).norm())
                    .max((pi.trace() - (n - 1) as f64).abs())
                    .max((&pi * &ad - &ad * &pi).norm());
                agreement = agreement.max(match (
                    margulis_invariant(&s.a, &tols),
                    margulis_invariant_via_projector(&s.a, &tols),
                ) {
                    (Ok(m_a), Ok(m_b)) => (&m_a - &m_b).amax() / m_a.amax().max(x.norm()).max(f64::MIN_POSITIVE),
                    _ => f64::INFINITY,
                });
            }
        }

        let Ok(m_a) = margulis_invariant(&s.a, &tols) else {
            frames = f64::INFINITY;
            displacement = f64::INFINITY;
            continue;
        };
        let frame = jordan_decompose(s.a.linear(), tols.loxodromy).expect("checked above");
        for _ in 0..FRAME_RESCALES {
            let scales: Vec<f64> = (0..n)
                .map(|_| {
                    let v: f64 = rng.random_range(0.2..=5.0);
                    if rng.random::<bool>() { v } else { -v }
                })
                .collect();
            let drift = match frame.rescaled(s.a.linear(), &scales) {
                Ok(other) => (invariant_in_frame(&other, x) - &m_a).amax() / scale,
                Err(_) => f64::INFINITY,
            };
            frames = frames.max(drift);
        }

        let y = random_velement(&mut rng, n, 1.0);
        let moved = &s.a.act(&y) - &y;
        let lhs = pi0(&frame.h().act_inverse(&moved));
        displacement = displacement.max((lhs - &m_a).amax() / (scale + y.norm()));
    }

    let conj = {
        let c = AffineElement::new(random_group_element(&mut rng, n), random_velement(&mut rng, n, 1.0))
            .expect("dimensions agree");
        let s1 = marked_spectrum(rep, max_len, &tols);
        let s2 = marked_spectrum(&conjugate_rep(rep, &c), max_len, &tols);
        spectrum_drift(&s1, &s2, tol)
    };

    let mut checks = vec![
        CheckResult::new("annihilation", annihilation, 1e-8, poly_count),
        CheckResult::new("projector_laws", laws, 1e-8, poly_count),
        CheckResult::new("algorithm_agreement", agreement, 1e-8, poly_count),
        CheckResult::new("frame_ambiguity", frames, 1e-9, count * FRAME_RESCALES),
        CheckResult::new("displacement", displacement, 1e-9, count),
        CheckResult::new("conjugation_invariance", conj.0, tol, conj.1),
    ];
    if rational {
        checks.push(exact_char_poly(rep));
    }
    let first_failure = checks.iter().find(|c| !c.passed).map(|c| c.name);
    CheckReport {
        passed: first_failure.is_none(),
        first_failure,
        checks,
        element_words: count,
        skipped_words: skipped,
        max_word_len: max_len,
        seed,
    }
}

/// Largest scaled discrepancy between two spectra under the comparison
/// rule: invariants relative to `s`, `Q` relative to `s^2`. Words present
/// in only one spectrum count as infinite.
fn spectrum_drift(
    s1: &margulis_core::MarkedSpectrum,
    s2: &margulis_core::MarkedSpectrum,
    tol: f64,
) -> (f64, usize) {
    let words: Vec<&FreeWord> = s1.entries.keys().collect();
    if compare_spectra(s1, s2, tol).is_err() || s1.entries.len() != s2.entries.len() {
        return (f64::INFINITY, words.len());
    }
    let scale = s1.scale().max(s2.scale());
    let mut worst = 0.0f64;
    for w in &words {
        let Some(e2) = s2.get(w) else {
            return (f64::INFINITY, words.len());
        };
        let e1 = &s1.entries[*w];
        worst = worst
            .max((&e1.invariant - &e2.invariant).amax() / scale)
            .max((e1.q - e2.q).abs() / (scale * scale));
    }
    (worst, words.len())
}

/// Shifted characteristic polynomials of the generators against exact
/// rational arithmetic on the same floating-point entries.
fn exact_char_poly(rep: &AffineRep) -> CheckResult {
    let mut worst = 0.0f64;
    for a in rep.generators() {
        let float = shifted_char_poly(a.linear());
        let exact = shifted_char_poly_exact(a.linear()).to_f64();
        let scale = float.max_abs_coeff().max(f64::MIN_POSITIVE);
        for (k, &c) in exact.coeffs().iter().enumerate() {
            worst = worst.max((float.coeff(k) - c).abs() / scale);
        }
    }
    CheckResult::new("exact_char_poly", worst, 1e-12, rep.k())
}
