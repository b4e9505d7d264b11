use nalgebra::{DMatrix, DVector};
use super::dd::DoubleDouble;

use super::scalar::{identity, lift, trace, Field};
use crate::error::{Error, Result};

/// Univariate polynomial with coefficients in ascending degree.
///
/// Trailing zero coefficients are trimmed on construction, so the leading
/// coefficient is nonzero unless the polynomial is identically zero.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly<S = f64> {
    coeffs: Vec<S>,
}

impl<S: Field> Poly<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![S::zero(); k + 1];
        coeffs[k] = S::one();
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, k: usize) -> S {
        self.coeffs.get(k).cloned().unwrap_or_else(S::zero)
    }

    pub fn leading(&self) -> S {
        self.coeffs.last().cloned().unwrap_or_else(S::zero)
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(Field::magnitude).fold(0.0, f64::max)
    }

    pub fn eval(&self, x: &S) -> S {
        let mut acc = S::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![S::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a.clone() * b.clone();
            }
        }
        Self::new(out)
    }

    /// Product of the linear factors `x - r` over the given roots.
    pub fn from_roots(roots: &[S]) -> Self {
        roots.iter().fold(Self::new(vec![S::one()]), |acc, r| {
            acc.mul(&Self::new(vec![-r.clone(), S::one()]))
        })
    }

    pub fn map<T: Field>(&self, f: impl Fn(&S) -> T) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn to_f64(&self) -> Poly<f64> {
        self.map(Field::to_f64)
    }
}

impl Poly<f64> {
    pub fn to_double_double(&self) -> Poly<DoubleDouble> {
        self.map(|&c| DoubleDouble::new(c))
    }
}

/// Characteristic polynomial `det(xI - A)` by the Faddeev-LeVerrier trace
/// recurrence. The only divisions are by the integers `1..=dim`, so the
/// coefficients stay polynomial in the entries and the rational instance is
/// exact.
pub fn char_poly_in<S: Field>(a: &DMatrix<S>) -> Poly<S> {
    let m = a.nrows();
    assert_eq!(m, a.ncols(), "characteristic polynomial of a non-square matrix");
    let mut coeffs = vec![S::zero(); m + 1];
    coeffs[m] = S::one();
    let id = identity::<S>(m);
    let mut aux = DMatrix::<S>::zeros(m, m);
    for k in 1..=m {
        aux = a * &aux + &id * coeffs[m - k + 1].clone();
        let t = trace(&(a * &aux));
        coeffs[m - k] = -t / S::from_usize(k);
    }
    Poly::new(coeffs)
}

/// Characteristic polynomial through a similarity reduction to upper
/// Hessenberg form by Gaussian elimination, followed by the Hessenberg
/// determinant recurrence. `O(dim^3)` field operations against the
/// `O(dim^4)` of the trace recurrence; meant for exact fields, where the
/// unpivoted-in-norm elimination costs nothing in accuracy.
pub fn char_poly_hessenberg_in<S: Field>(a: &DMatrix<S>) -> Poly<S> {
    let m = a.nrows();
    assert_eq!(m, a.ncols(), "characteristic polynomial of a non-square matrix");
    let mut h = a.clone();
    for k in 0..m.saturating_sub(2) {
        let Some(pivot) = (k + 1..m).find(|&r| !h[(r, k)].is_zero()) else {
            continue;
        };
        if pivot != k + 1 {
            h.swap_rows(pivot, k + 1);
            h.swap_columns(pivot, k + 1);
        }
        let p = h[(k + 1, k)].clone();
        for i in k + 2..m {
            if h[(i, k)].is_zero() {
                continue;
            }
            let f = h[(i, k)].clone() / p.clone();
            for j in k..m {
                let w = h[(k + 1, j)].clone() * f.clone();
                h[(i, j)] -= w;
            }
            for r in 0..m {
                let w = h[(r, i)].clone() * f.clone();
                h[(r, k + 1)] += w;
            }
        }
    }

    // p_k = det(x I - H[..k, ..k]), coefficients in increasing degree.
    let mut ps: Vec<Vec<S>> = vec![vec![S::one()]];
    for k in 0..m {
        let prev = &ps[k];
        let mut next = vec![S::zero(); k + 2];
        for (d, c) in prev.iter().enumerate() {
            next[d + 1] += c.clone();
            next[d] -= h[(k, k)].clone() * c.clone();
        }
        let mut sub = S::one();
        for i in (0..k).rev() {
            sub *= h[(i + 1, i)].clone();
            if sub.is_zero() {
                break;
            }
            let f = h[(i, k)].clone() * sub.clone();
            if f.is_zero() {
                continue;
            }
            for (d, c) in ps[i].iter().enumerate() {
                next[d] -= f.clone() * c.clone();
            }
        }
        ps.push(next);
    }
    Poly::new(ps.pop().expect("at least the constant polynomial"))
}

/// Characteristic polynomial of a real matrix. The recurrence runs in
/// double-double arithmetic and the coefficients are rounded once at the end.
pub fn char_poly(a: &DMatrix<f64>) -> Poly<f64> {
    char_poly_in(&lift::<DoubleDouble>(a)).to_f64()
}

/// Divides `p` by `x^k` after checking that the `k` lowest coefficients are
/// negligible: magnitude at most `tol * max|coeff|`, or exactly zero when
/// `tol == 0`.
pub fn poly_deflate_in<S: Field>(p: &Poly<S>, k: usize, tol: f64) -> Result<Poly<S>> {
    let scale = p.max_abs_coeff();
    for index in 0..k {
        let c = p.coeff(index);
        let negligible = if tol == 0.0 {
            c.is_zero()
        } else {
            c.magnitude() <= tol * scale
        };
        if !negligible {
            return Err(Error::NotDivisible {
                k,
                index,
                magnitude: c.magnitude(),
            });
        }
    }
    if !p.is_zero() && k > p.degree() {
        return Err(Error::NotDivisible {
            k,
            index: p.degree(),
            magnitude: p.leading().magnitude(),
        });
    }
    Ok(Poly::new(p.coeffs.iter().skip(k).cloned().collect()))
}

pub fn poly_deflate(p: &Poly<f64>, k: usize, tol: f64) -> Result<Poly<f64>> {
    poly_deflate_in(p, k, tol)
}

/// `sum_k coeffs[k] * A^k` by Horner's scheme.
pub fn poly_apply_in<S: Field>(p: &Poly<S>, a: &DMatrix<S>) -> DMatrix<S> {
    let m = a.nrows();
    let id = identity::<S>(m);
    let mut acc = DMatrix::<S>::zeros(m, m);
    for c in p.coeffs.iter().rev() {
        acc = &acc * a + &id * c.clone();
    }
    acc
}

pub fn poly_apply(p: &Poly<f64>, a: &DMatrix<f64>) -> DMatrix<f64> {
    poly_apply_in(p, a)
}

/// `p(A) x` by Horner's scheme on vectors, without forming `p(A)`.
pub fn poly_apply_vec_in<S: Field>(p: &Poly<S>, a: &DMatrix<S>, x: &DVector<S>) -> DVector<S> {
    let mut acc = DVector::<S>::zeros(x.len());
    for c in p.coeffs.iter().rev() {
        acc = a * &acc + x * c.clone();
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn char_poly_small_cases() {
        assert_eq!(char_poly(&DMatrix::identity(2, 2)).coeffs(), &[1.0, -2.0, 1.0]);
        assert_eq!(char_poly(&DMatrix::zeros(2, 2)).coeffs(), &[0.0, 0.0, 1.0]);
        let d = DMatrix::from_diagonal(&DVector::from_vec(vec![2.0, 0.5]));
        assert_eq!(char_poly(&d).coeffs(), &[1.0, -2.5, 1.0]);
    }

    #[test]
    fn deflate_examples() {
        let p = Poly::new(vec![0.0, 0.0, 2.0, 1.0]);
        assert_eq!(poly_deflate(&p, 2, 1e-9).unwrap().coeffs(), &[2.0, 1.0]);
        let p = Poly::new(vec![0.0, 0.0, 1.0]);
        assert_eq!(poly_deflate(&p, 0, 1e-9).unwrap(), p);
    }

    #[test]
    fn deflate_rejects_large_low_coefficient() {
        let p = Poly::new(vec![1e-3, 0.0, 1.0]);
        assert!(matches!(
            poly_deflate(&p, 1, 1e-9),
            Err(Error::NotDivisible { index: 0, .. })
        ));
        // exact mode tolerates nothing
        let p = Poly::new(vec![q(1, 1 << 40), q(1, 1)]);
        assert!(poly_deflate_in(&p, 1, 0.0).is_err());
    }

    #[test]
    fn deflate_beyond_degree_fails() {
        let p = Poly::new(vec![0.0, 1.0]);
        assert!(poly_deflate(&p, 3, 1e-9).is_err());
    }

    #[test]
    fn deflate_x_times_quadratic() {
        // x (x + 3)(x - 3/4) in exact arithmetic
        let p = Poly::from_roots(&[q(0, 1), q(-3, 1), q(3, 4)]);
        let d = poly_deflate_in(&p, 1, 0.0).unwrap();
        assert_eq!(d.coeffs(), &[q(-9, 4), q(9, 4), q(1, 1)]);
    }

    #[test]
    fn apply_examples() {
        let a = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(poly_apply(&Poly::monomial(1), &a), a);
        assert_eq!(poly_apply(&Poly::new(vec![1.0]), &a), DMatrix::identity(2, 2));
        let p = Poly::new(vec![1.0, 2.0, 1.0]);
        assert_eq!(
            poly_apply(&p, &DMatrix::identity(3, 3)),
            DMatrix::identity(3, 3) * 4.0
        );
    }

    #[test]
    fn vector_horner_matches_matrix_horner() {
        let a = DMatrix::from_fn(4, 4, |i, j| ((i * 3 + j * 5) % 7) as f64 / 7.0 - 0.4);
        let x = DVector::from_fn(4, |i, _| i as f64 - 1.5);
        let p = Poly::new(vec![0.5, -1.0, 2.0, 0.25]);
        let lhs = poly_apply(&p, &a) * &x;
        let rhs = poly_apply_vec_in(&p, &a, &x);
        assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn hessenberg_route_matches_trace_recurrence() {
        let cases: Vec<DMatrix<BigRational>> = vec![
            DMatrix::from_fn(5, 5, |i, j| q(((3 * i + 7 * j) % 11) as i64 - 5, 1 + (i + j) as i64 % 3)),
            DMatrix::from_fn(4, 4, |i, j| if i <= j { q(1 + i as i64, 1) } else { q(0, 1) }),
            DMatrix::from_fn(4, 4, |i, j| if (i + 1) % 4 == j { q(1, 1) } else { q(0, 1) }),
            DMatrix::from_fn(6, 6, |i, j| if j == 0 || i == 5 { q((i * j) as i64 + 1, 2) } else { q(0, 1) }),
            DMatrix::from_element(1, 1, q(3, 7)),
        ];
        for a in cases {
            assert_eq!(char_poly_hessenberg_in(&a), char_poly_in(&a));
        }
    }
}
