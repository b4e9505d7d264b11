use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("eigenvalue iteration did not converge to the requested tolerance")]
    NonConvergence,

    #[error("polynomial is not divisible by x^{k}: coefficient {index} has magnitude {magnitude:e}")]
    NotDivisible {
        k: usize,
        index: usize,
        magnitude: f64,
    },

    #[error("linear part is not loxodromic at tolerance {tol:e}")]
    NotLoxodromic { tol: f64 },

    #[error("eigenvalue with imaginary part {imag:e} in a loxodromic element")]
    ComplexEigendata { imag: f64 },

    #[error("|P_g(0)| = {value:e} is below the degeneracy threshold {threshold:e}")]
    Degenerate { value: f64, threshold: f64 },

    #[error("spectra are not comparable: {0}")]
    LengthMismatch(String),

    #[error("input vector is zero")]
    ZeroInput,

    #[error("no admissible representation after {attempts} attempts")]
    GenerationFailed { attempts: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}
