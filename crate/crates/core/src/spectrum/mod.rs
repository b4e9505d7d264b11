//! Free-group words, marked spectra, spectrum comparison, coboundary
//! recovery and conjugacy certification.

mod coboundary;
mod compare;
mod marked;
mod orbit;
mod rep;
pub mod sampling;
mod word;

pub use coboundary::{
    certify_conjugacy, coboundary_fit, coboundary_solve, linear_parts_match, Certificate,
    CoboundaryFit,
};
pub use compare::{compare_spectra, CompareReport, Verdict, Witness};
pub use marked::{marked_spectrum, spectrum_entry, MarkedSpectrum, SpectrumEntry};
pub use orbit::orbit_span_check;
pub use rep::{conjugate_rep, AffineRep, PreciseWords};
pub use sampling::random_loxodromic_rep;
pub use word::{reduce_word, word_count, words_of_length, words_up_to, FreeWord};
