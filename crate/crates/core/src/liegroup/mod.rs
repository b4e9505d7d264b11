//! The split model `PSL(n, R)` acting on `V = sl(n, R)` by conjugation.
//!
//! Here the maximal split torus is the positive diagonal group, `M` is the
//! group of diagonal sign matrices, the zero-weight space `V^0` is the
//! traceless diagonals, and `pi0` extracts the diagonal.

mod adjoint;
mod element;
mod jordan;
mod model;
mod weights;

pub use adjoint::{ad_matrix, adjoint_rep, adjoint_rep_dd, adjoint_rep_in, from_zero_weight, pi0};
pub use element::{coords_of, mat_from_coords, offdiag_index, GroupElement, VElement};
pub use jordan::{exp_diagonal, is_loxodromic, jordan_decompose, jordan_projection, JordanFrame};
pub use model::{ModelSpec, ADJOINT_SL};
pub use weights::{weight_table, RestrictedWeight, WeightTable};
