use super::element::offdiag_index;
use super::model::ModelSpec;

/// Nonzero restricted weight `a -> a_i - a_j` on traceless diagonals, whose
/// weight space is spanned by `E_ij`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RestrictedWeight {
    pub i: usize,
    pub j: usize,
}

impl RestrictedWeight {
    pub fn eval(&self, a: &[f64]) -> f64 {
        a[self.i] - a[self.j]
    }
}

/// Weight decomposition `V = V^0 + sum V^lambda` of the adjoint model.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightTable {
    n: usize,
    nonzero: Vec<RestrictedWeight>,
    zero_multiplicity: usize,
}

impl WeightTable {
    pub fn nonzero(&self) -> &[RestrictedWeight] {
        &self.nonzero
    }

    pub fn zero_multiplicity(&self) -> usize {
        self.zero_multiplicity
    }

    pub fn total_dim(&self) -> usize {
        self.nonzero.len() + self.zero_multiplicity
    }

    /// Weight value of every basis element, in basis order.
    pub fn basis_values(&self, a: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.total_dim()];
        for w in &self.nonzero {
            out[offdiag_index(self.n, w.i, w.j)] = w.eval(a);
        }
        out
    }
}

pub fn weight_table(model: &ModelSpec) -> WeightTable {
    let n = model.n();
    let nonzero = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| RestrictedWeight { i, j }))
        .collect();
    WeightTable {
        n,
        nonzero,
        zero_multiplicity: model.zero_weight_dim(),
    }
}
