use nalgebra::DMatrix;

use super::sampling::{random_group_element, rng_from_seed};
use crate::error::{Error, Result};
use crate::liegroup::{ModelSpec, VElement};

/// Whether `samples` random images `Ad_{g_j} X` span all of `V`, judged by
/// numerical rank at relative tolerance `1e-8`. For an irreducible
/// representation and nonzero `X`, enough generic samples always do.
pub fn orbit_span_check(model: &ModelSpec, x: &VElement, samples: usize, seed: u64) -> Result<bool> {
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    let n = model.n();
    let dim = model.rep_dim();
    if samples < dim {
        return Ok(false);
    }
    let mut rng = rng_from_seed(seed);
    let mut cols = DMatrix::zeros(dim, samples);
    for j in 0..samples {
        let g = random_group_element(&mut rng, n);
        cols.set_column(j, &g.act(x).coords());
    }
    let sigma = cols.singular_values();
    let max = sigma.max();
    let rank = sigma.iter().filter(|&&s| s > 1e-8 * max).count();
    Ok(rank == dim)
}
