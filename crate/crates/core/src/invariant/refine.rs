//! Margulis-Smilga invariants of long words in double-double precision.
//!
//! For a word whose linear part spreads eigenvalue moduli over many orders of
//! magnitude, `X_w` carries components of size `e^(jd_1 - jd_n) |X|` while
//! `M` stays of order one. Evaluating the word and reading off `M` in f64
//! loses `e^(jd_1 - jd_n)` ulps, so both steps are redone in double-double
//! here, starting from an f64 Jordan frame.

use nalgebra::{DMatrix, DVector};

use crate::liegroup::JordanFrame;
use num_traits::Zero;

use crate::linalg::{identity, inverse, lift, DoubleDouble};

type Dd = DoubleDouble;

const FIXED_SHIFT_STEPS: usize = 3;
const RAYLEIGH_STEPS: usize = 3;

fn rayleigh(g: &DMatrix<Dd>, v: &DVector<Dd>) -> Dd {
    let gv = g * v;
    v.dot(&gv) / v.dot(v)
}

fn normalize(v: &mut DVector<Dd>) {
    let scale = v
        .iter()
        .map(|x| x.abs())
        .fold(Dd::ZERO, |a, b| if b.hi() > a.hi() { b } else { a });
    if !scale.is_zero() {
        v.iter_mut().for_each(|x| *x = *x / scale);
    }
}

/// Eigenvectors and eigenvalues of `g` to double-double accuracy.
#[derive(Debug, Clone)]
pub struct RefinedFrame {
    /// Eigenvectors as columns, in the order of the f64 frame. Their scale
    /// is irrelevant to `pi0(h^-1 X h)`.
    pub h: DMatrix<Dd>,
    pub eigenvalues: Vec<Dd>,
}

impl RefinedFrame {
    /// `log |lambda_i|`, decreasing.
    pub fn jd(&self) -> Vec<f64> {
        self.eigenvalues.iter().map(|l| l.to_f64().abs().ln()).collect()
    }
}

/// Shifted inverse iteration from the columns of `frame.h`.
///
/// The f64 eigenvalue `sign_i exp(jd_i)` is accurate to `eps |g|` in
/// absolute terms, far inside the gap to its neighbours, so it serves as a
/// fixed shift until the vector has converged; the f64 eigenvector itself
/// can be poor for small eigenvalues. Rayleigh quotients then finish.
pub fn refine_frame(g: &DMatrix<Dd>, frame: &JordanFrame) -> RefinedFrame {
    let n = g.nrows();
    let h = lift::<Dd>(frame.h().mat());
    let mut out = h.clone();
    let mut eigenvalues = Vec::with_capacity(n);
    for i in 0..n {
        let mut v: DVector<Dd> = h.column(i).into_owned();
        let mut lambda = Dd::from(f64::from(frame.signs()[i]) * frame.jd()[i].exp());
        for step in 0..FIXED_SHIFT_STEPS + RAYLEIGH_STEPS {
            let shifted = g - identity::<Dd>(n) * lambda;
            let Some(inv) = inverse(&shifted) else {
                break;
            };
            v = inv * &v;
            normalize(&mut v);
            if step + 1 >= FIXED_SHIFT_STEPS {
                lambda = rayleigh(g, &v);
            }
        }
        out.set_column(i, &v);
        eigenvalues.push(lambda);
    }
    RefinedFrame { h: out, eigenvalues }
}

/// `pi0(h^-1 x h)` in `H_k` coordinates, evaluated in double-double.
pub fn refined_invariant(x: &DMatrix<Dd>, frame: &RefinedFrame) -> DVector<f64> {
    let n = x.nrows();
    let h_inv = inverse(&frame.h).expect("eigenvectors of a loxodromic element are independent");
    let y = h_inv * x * &frame.h;
    let mut out = DVector::zeros(n - 1);
    let mut acc = Dd::ZERO;
    for k in 0..n - 1 {
        acc += y[(k, k)];
        out[k] = acc.to_f64();
    }
    out
}
