//! Eigenvalues of a real matrix by balancing, Householder reduction to
//! Hessenberg form and the Francis double-shift QR iteration with
//! exceptional shifts (the EISPACK `balanc`/`hqr` scheme).
//!
//! nalgebra's Schur iteration stalls on a sizeable fraction of adjoint
//! matrices, whose unit eigenvalue is repeated and whose spectrum is closed
//! under inversion; the exceptional shifts here break those cycles.

use nalgebra::DMatrix;

use super::eigen::Complex64;

const RADIX: f64 = 2.0;

/// Iterations allowed per eigenvalue before giving up.
const MAX_ITS: usize = 60;

/// Diagonal similarity by powers of two making row and column norms
/// comparable. Eigenvalues are unchanged and no rounding is introduced.
fn balance(a: &mut DMatrix<f64>) {
    let n = a.nrows();
    let sqrdx = RADIX * RADIX;
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += a[(j, i)].abs();
                    r += a[(i, j)].abs();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / RADIX;
            while c < g {
                f *= RADIX;
                c *= sqrdx;
            }
            g = r * RADIX;
            while c > g {
                f /= RADIX;
                c /= sqrdx;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                for j in 0..n {
                    a[(i, j)] /= f;
                    a[(j, i)] *= f;
                }
            }
        }
    }
}

/// Eigenvalues of `a`, or `None` when some eigenvalue needs more than
/// `MAX_ITS` iterations.
pub(crate) fn eigenvalues_hqr(a: &DMatrix<f64>) -> Option<Vec<Complex64>> {
    let n = a.nrows();
    if n == 0 {
        return Some(Vec::new());
    }
    let mut b = a.clone();
    balance(&mut b);
    let h = b.hessenberg().h();

    // One-based working copy keeps the index arithmetic of the classical
    // formulation.
    let mut m = vec![vec![0.0f64; n + 1]; n + 1];
    for i in 0..n {
        for j in 0..n {
            if i <= j + 1 {
                m[i + 1][j + 1] = h[(i, j)];
            }
        }
    }
    let mut wr = vec![0.0; n + 1];
    let mut wi = vec![0.0; n + 1];

    let mut anorm = 0.0;
    for i in 1..=n {
        for j in i.saturating_sub(1).max(1)..=n {
            anorm += m[i][j].abs();
        }
    }

    let mut nn = n;
    let mut t = 0.0;
    let (mut p, mut q, mut r, mut x, mut y, mut z, mut w);
    while nn >= 1 {
        let mut its = 0;
        loop {
            let mut l = nn;
            while l >= 2 {
                let mut s = m[l - 1][l - 1].abs() + m[l][l].abs();
                if s == 0.0 {
                    s = anorm;
                }
                if m[l][l - 1].abs() + s == s {
                    m[l][l - 1] = 0.0;
                    break;
                }
                l -= 1;
            }
            x = m[nn][nn];
            if l == nn {
                wr[nn] = x + t;
                wi[nn] = 0.0;
                nn -= 1;
            } else {
                y = m[nn - 1][nn - 1];
                w = m[nn][nn - 1] * m[nn - 1][nn];
                if l == nn - 1 {
                    p = 0.5 * (y - x);
                    q = p * p + w;
                    z = q.abs().sqrt();
                    x += t;
                    if q >= 0.0 {
                        z = p + z.copysign(p);
                        wr[nn - 1] = x + z;
                        wr[nn] = x + z;
                        if z != 0.0 {
                            wr[nn] = x - w / z;
                        }
                        wi[nn - 1] = 0.0;
                        wi[nn] = 0.0;
                    } else {
                        wr[nn - 1] = x + p;
                        wr[nn] = x + p;
                        wi[nn - 1] = -z;
                        wi[nn] = z;
                    }
                    nn -= 2;
                } else {
                    if its == MAX_ITS {
                        return None;
                    }
                    if its > 0 && its % 10 == 0 {
                        // exceptional shift
                        t += x;
                        for (i, row) in m.iter_mut().enumerate().take(nn + 1).skip(1) {
                            row[i] -= x;
                        }
                        let s = m[nn][nn - 1].abs() + m[nn - 1][nn - 2].abs();
                        x = 0.75 * s;
                        y = x;
                        w = -0.4375 * s * s;
                    }
                    its += 1;
                    let mut mm = nn - 2;
                    loop {
                        z = m[mm][mm];
                        r = x - z;
                        let s0 = y - z;
                        p = (r * s0 - w) / m[mm + 1][mm] + m[mm][mm + 1];
                        q = m[mm + 1][mm + 1] - z - r - s0;
                        r = m[mm + 2][mm + 1];
                        let s = p.abs() + q.abs() + r.abs();
                        p /= s;
                        q /= s;
                        r /= s;
                        if mm == l {
                            break;
                        }
                        let u = m[mm][mm - 1].abs() * (q.abs() + r.abs());
                        let v = p.abs() * (m[mm - 1][mm - 1].abs() + z.abs() + m[mm + 1][mm + 1].abs());
                        if u + v == v {
                            break;
                        }
                        mm -= 1;
                    }
                    for i in mm + 2..=nn {
                        m[i][i - 2] = 0.0;
                        if i != mm + 2 {
                            m[i][i - 3] = 0.0;
                        }
                    }
                    let mut k = mm;
                    while k < nn {
                        if k != mm {
                            p = m[k][k - 1];
                            q = m[k + 1][k - 1];
                            r = 0.0;
                            if k != nn - 1 {
                                r = m[k + 2][k - 1];
                            }
                            x = p.abs() + q.abs() + r.abs();
                            if x != 0.0 {
                                p /= x;
                                q /= x;
                                r /= x;
                            }
                        }
                        let s = (p * p + q * q + r * r).sqrt().copysign(p);
                        if s != 0.0 {
                            if k == mm {
                                if l != mm {
                                    m[k][k - 1] = -m[k][k - 1];
                                }
                            } else {
                                m[k][k - 1] = -s * x;
                            }
                            p += s;
                            x = p / s;
                            y = q / s;
                            z = r / s;
                            q /= p;
                            r /= p;
                            for j in k..=nn {
                                p = m[k][j] + q * m[k + 1][j];
                                if k != nn - 1 {
                                    p += r * m[k + 2][j];
                                    m[k + 2][j] -= p * z;
                                }
                                m[k + 1][j] -= p * y;
                                m[k][j] -= p * x;
                            }
                            let mmin = nn.min(k + 3);
                            for row in m.iter_mut().take(mmin + 1).skip(l) {
                                p = x * row[k] + y * row[k + 1];
                                if k != nn - 1 {
                                    p += z * row[k + 2];
                                    row[k + 2] -= p * r;
                                }
                                row[k + 1] -= p * q;
                                row[k] -= p;
                            }
                        }
                        k += 1;
                    }
                }
            }
            if nn < 1 || l + 1 >= nn {
                break;
            }
        }
    }
    Some(
        (1..=n)
            .map(|i| Complex64::new(wr[i], wi[i]))
            .collect(),
    )
}
