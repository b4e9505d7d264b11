use crate::error::{Error, Result};

/// The only supported family: `PSL(n, R)` acting on `sl(n, R)` by the
/// adjoint representation.
pub const ADJOINT_SL: &str = "adjoint_sl";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModelSpec {
    n: usize,
}

impl ModelSpec {
    pub fn adjoint_sl(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInput(format!(
                "adjoint_sl needs n >= 2, got {n}"
            )));
        }
        Ok(Self { n })
    }

    pub fn family(&self) -> &'static str {
        ADJOINT_SL
    }

    /// Matrix size of group elements.
    pub fn n(&self) -> usize {
        self.n
    }

    /// `dim V = n^2 - 1`.
    pub fn rep_dim(&self) -> usize {
        self.n * self.n - 1
    }

    /// `dim V^0 = n - 1`, the traceless diagonal matrices.
    pub fn zero_weight_dim(&self) -> usize {
        self.n - 1
    }
}
