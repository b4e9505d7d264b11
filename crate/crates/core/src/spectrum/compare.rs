use std::fmt;

use super::marked::MarkedSpectrum;
use super::word::FreeWord;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// Every invariant vector agrees.
    Equal,
    /// Quadratic values agree but some invariant vector does not.
    QEqualOnly,
    /// Some quadratic value differs.
    Differ,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Equal => "EQUAL",
            Verdict::QEqualOnly => "Q_EQUAL_ONLY",
            Verdict::Differ => "DIFFER",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// First word (in word order) at which two spectra disagree. `magnitude` is
/// `None` when the word is present in one spectrum and skipped in the other.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub word: FreeWord,
    pub magnitude: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompareReport {
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub tol: f64,
}

/// Compares two marked spectra word by word.
///
/// Invariant vectors are compared in the max norm against `tol * s`, and
/// quadratic values against `tol * s^2`, where `s` is the larger of the two
/// spectra's [`MarkedSpectrum::scale`]. `DIFFER` carries the first word whose
/// quadratic value differs; `Q_EQUAL_ONLY` the first word whose invariant
/// vector differs.
pub fn compare_spectra(s1: &MarkedSpectrum, s2: &MarkedSpectrum, tol: f64) -> Result<CompareReport> {
    if s1.model != s2.model {
        return Err(Error::LengthMismatch(format!(
            "models differ: n = {} vs n = {}",
            s1.model.n(),
            s2.model.n()
        )));
    }
    if s1.max_len != s2.max_len || s1.k != s2.k {
        return Err(Error::LengthMismatch(format!(
            "spectra cover (k = {}, max_len = {}) vs (k = {}, max_len = {})",
            s1.k, s1.max_len, s2.k, s2.max_len
        )));
    }
    let scale = s1.scale().max(s2.scale());
    let vec_tol = tol * scale;
    let q_tol = tol * scale * scale;

    let mut vector_witness: Option<Witness> = None;
    let mut words: Vec<&FreeWord> = s1.entries.keys().chain(s2.entries.keys()).collect();
    words.sort();
    words.dedup();
    for w in words {
        let (e1, e2) = match (s1.get(w), s2.get(w)) {
            (Some(a), Some(b)) => (a, b),
            _ => {
                return Ok(CompareReport {
                    verdict: Verdict::Differ,
                    witness: Some(Witness {
                        word: w.clone(),
                        magnitude: None,
                    }),
                    tol,
                })
            }
        };
        let dq = (e1.q - e2.q).abs();
        if dq > q_tol || dq.is_nan() {
            return Ok(CompareReport {
                verdict: Verdict::Differ,
                witness: Some(Witness {
                    word: w.clone(),
                    magnitude: Some(dq),
                }),
                tol,
            });
        }
        let dm = (&e1.invariant - &e2.invariant).amax();
        if vector_witness.is_none() && dm > vec_tol {
            vector_witness = Some(Witness {
                word: w.clone(),
                magnitude: Some(dm),
            });
        }
    }
    let verdict = if vector_witness.is_some() {
        Verdict::QEqualOnly
    } else {
        Verdict::Equal
    };
    Ok(CompareReport {
        verdict,
        witness: vector_witness,
        tol,
    })
}
