use std::collections::BTreeMap;

use nalgebra::DVector;
use rayon::prelude::*;

use super::rep::{AffineRep, PreciseWords};
use super::word::{words_up_to, FreeWord};
use crate::error::Result;
use crate::invariant::{invariant_form, refine_frame, refined_invariant, InvariantForm, Tolerances};
use crate::liegroup::{jordan_decompose, ModelSpec};

/// Invariant data of one word.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumEntry {
    /// Margulis-Smilga invariant in `H_k` coordinates.
    pub invariant: DVector<f64>,
    /// Quadratic value `B(M, M)` on the zero-weight block.
    pub q: f64,
    /// Jordan projection of the linear part.
    pub jd: Vec<f64>,
}

/// Marked Margulis-Smilga spectrum on the reduced words of length
/// `1..=max_len`. Words whose image fails loxodromy are listed in `skipped`
/// instead.
#[derive(Debug, Clone, PartialEq)]
pub struct MarkedSpectrum {
    pub model: ModelSpec,
    pub k: usize,
    pub max_len: usize,
    pub entries: BTreeMap<FreeWord, SpectrumEntry>,
    pub skipped: Vec<FreeWord>,
}

impl MarkedSpectrum {
    pub fn get(&self, w: &FreeWord) -> Option<&SpectrumEntry> {
        self.entries.get(w)
    }

    /// `1 + max sqrt|Q|` over the spectrum; the unit for absolute comparisons.
    pub fn scale(&self) -> f64 {
        1.0 + self
            .entries
            .values()
            .map(|e| e.q.abs().sqrt())
            .fold(0.0, f64::max)
    }

    /// Largest `|M|_inf` over the spectrum.
    pub fn max_invariant(&self) -> f64 {
        self.entries
            .values()
            .map(|e| e.invariant.amax())
            .fold(0.0, f64::max)
    }

    pub fn max_abs_q(&self) -> f64 {
        self.entries.values().map(|e| e.q.abs()).fold(0.0, f64::max)
    }
}

/// Invariant, `Q` and Jordan projection of the image of `w`.
///
/// Everything comes from the Jordan frame, refined in double-double. The
/// frame-free polynomial route loses accuracy once `|Ad_w|` grows with word
/// length, so it is kept for checking single elements rather than whole
/// spectra.
pub fn spectrum_entry(
    rep: &AffineRep,
    precise: &PreciseWords,
    form: &InvariantForm,
    w: &FreeWord,
    tol: &Tolerances,
) -> Result<SpectrumEntry> {
    let a = rep.evaluate(w);
    let frame = jordan_decompose(a.linear(), tol.loxodromy)?;
    let (g, x) = precise.evaluate(w);
    let refined = refine_frame(&g, &frame);
    let invariant = refined_invariant(&x, &refined);
    Ok(SpectrumEntry {
        q: form.zero_weight_quadratic(&invariant),
        invariant,
        jd: refined.jd(),
    })
}

/// Computes the marked spectrum. Words are evaluated in parallel; the result
/// does not depend on scheduling.
pub fn marked_spectrum(rep: &AffineRep, max_len: usize, tol: &Tolerances) -> MarkedSpectrum {
    let form = invariant_form(rep.model());
    let precise = PreciseWords::new(rep);
    let words = words_up_to(rep.k(), max_len);
    let results: Vec<(FreeWord, Result<SpectrumEntry>)> = words
        .into_par_iter()
        .map(|w| {
            let entry = spectrum_entry(rep, &precise, &form, &w, tol);
            (w, entry)
        })
        .collect();

    let mut entries = BTreeMap::new();
    let mut skipped = Vec::new();
    for (w, r) in results {
        match r {
            Ok(e) => {
                entries.insert(w, e);
            }
            Err(_) => skipped.push(w),
        }
    }
    MarkedSpectrum {
        model: *rep.model(),
        k: rep.k(),
        max_len,
        entries,
        skipped,
    }
}
