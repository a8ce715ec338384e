//! Dense symmetric eigensolvers: cyclic Jacobi for small matrices,
//! Householder tridiagonalisation followed by implicit QL otherwise.

use super::matrix::{norm, Matrix};
use crate::error::{Error, Result};
use alloc::vec::Vec;
use libm::{hypot, sqrt};

/// Largest max |A − Aᵀ| accepted.
pub const SYMMETRY_TOL: f64 = 1e-12;
/// Per-pair bound on ‖Av − λv‖ relative to ‖A‖_F.
pub const RESIDUAL_TOL: f64 = 1e-9;
/// Matrices up to this size go to the Jacobi solver.
pub const JACOBI_MAX: usize = 64;

const JACOBI_SWEEPS: usize = 100;
const QL_ITERS_PER_VALUE: usize = 60;

/// Eigenvalues in descending order; column `k` of `vectors` belongs to `values[k]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigensystem {
    pub values: Vec<f64>,
    pub vectors: Matrix,
}

impl Eigensystem {
    pub fn vector(&self, k: usize) -> Vec<f64> {
        self.vectors.column(k)
    }
}

/// Full spectral decomposition of a symmetric matrix, with the residual of
/// every pair checked.
pub fn eigensystem(a: &Matrix) -> Result<Eigensystem> {
    let asym = a.asymmetry();
    if !(asym <= SYMMETRY_TOL) {
        return Err(Error::NotSymmetric(asym));
    }
    let n = a.rows();
    let (values, vectors) = if n == 0 {
        (Vec::new(), Matrix::zeros(0, 0))
    } else if n <= JACOBI_MAX {
        jacobi(a)?
    } else {
        let (mut d, mut e, mut v) = tred2(a);
        tql2(&mut d, &mut e, &mut v)?;
        (d, v)
    };
    let sys = sort_descending(values, vectors);
    check_residuals(a, &sys)?;
    Ok(sys)
}

/// Eigenvalues only, descending.
pub fn eigenvalues(a: &Matrix) -> Result<Vec<f64>> {
    Ok(eigensystem(a)?.values)
}

fn sort_descending(values: Vec<f64>, vectors: Matrix) -> Eigensystem {
    let n = values.len();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| values[j].total_cmp(&values[i]));
    let sorted = idx.iter().map(|&i| values[i]).collect();
    let v = Matrix::from_fn(n, n, |r, c| vectors[(r, idx[c])]);
    Eigensystem { values: sorted, vectors: v }
}

fn check_residuals(a: &Matrix, sys: &Eigensystem) -> Result<()> {
    let tolerance = RESIDUAL_TOL * a.frobenius_norm().max(f64::MIN_POSITIVE);
    for (k, &lambda) in sys.values.iter().enumerate() {
        let v = sys.vector(k);
        let av = a.mul_vec(&v);
        let r: Vec<f64> = av.iter().zip(&v).map(|(x, y)| x - lambda * y).collect();
        let residual = norm(&r);
        if !(residual <= tolerance) {
            return Err(Error::EigenResidual { residual, tolerance });
        }
    }
    Ok(())
}

fn off_diagonal_norm(a: &Matrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)] * a[(i, j)];
            }
        }
    }
    sqrt(s)
}

fn jacobi(input: &Matrix) -> Result<(Vec<f64>, Matrix)> {
    let n = input.rows();
    let mut a = input.clone();
    let mut v = Matrix::identity(n);
    let scale = a.frobenius_norm();
    if scale == 0.0 {
        return Ok((alloc::vec![0.0; n], v));
    }
    for _ in 0..JACOBI_SWEEPS {
        if off_diagonal_norm(&a) <= 1e-15 * scale {
            let d = (0..n).map(|i| a[(i, i)]).collect();
            return Ok((d, v));
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let app = a[(p, p)];
                let aqq = a[(q, q)];
                let theta = 0.5 * (aqq - app) / apq;
                let t = theta.signum() / (theta.abs() + hypot(theta, 1.0));
                let c = 1.0 / hypot(t, 1.0);
                let s = t * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                a[(p, q)] = 0.0;
                a[(q, p)] = 0.0;
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    if off_diagonal_norm(&a) <= 1e-14 * scale {
        let d = (0..n).map(|i| a[(i, i)]).collect();
        return Ok((d, v));
    }
    Err(Error::NoConvergence(JACOBI_SWEEPS))
}

// Householder reduction to tridiagonal form (diagonal d, subdiagonal e in
// e[1..]), accumulating the orthogonal transform in v.
fn tred2(a: &Matrix) -> (Vec<f64>, Vec<f64>, Matrix) {
    let n = a.rows();
    let mut v = a.clone();
    let mut d: Vec<f64> = (0..n).map(|j| v[(n - 1, j)]).collect();
    let mut e = alloc::vec![0.0; n];

    for i in (1..n).rev() {
        let mut scale = 0.0;
        let mut h = 0.0;
        for dk in d.iter().take(i) {
            scale += dk.abs();
        }
        if scale == 0.0 {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v[(i - 1, j)];
                v[(i, j)] = 0.0;
                v[(j, i)] = 0.0;
            }
        } else {
            for dk in d.iter_mut().take(i) {
                *dk /= scale;
                h += *dk * *dk;
            }
            let mut f = d[i - 1];
            let mut g = sqrt(h);
            if f > 0.0 {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for ej in e.iter_mut().take(i) {
                *ej = 0.0;
            }
            for j in 0..i {
                f = d[j];
                v[(j, i)] = f;
                g = e[j] + v[(j, j)] * f;
                for k in j + 1..i {
                    g += v[(k, j)] * d[k];
                    e[k] += v[(k, j)] * f;
                }
                e[j] = g;
            }
            f = 0.0;
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                f = d[j];
                g = e[j];
                for k in j..i {
                    v[(k, j)] -= f * e[k] + g * d[k];
                }
                d[j] = v[(i - 1, j)];
                v[(i, j)] = 0.0;
            }
        }
        d[i] = h;
    }

    for i in 0..n.saturating_sub(1) {
        v[(n - 1, i)] = v[(i, i)];
        v[(i, i)] = 1.0;
        let h = d[i + 1];
        if h != 0.0 {
            for k in 0..=i {
                d[k] = v[(k, i + 1)] / h;
            }
            for j in 0..=i {
                let mut g = 0.0;
                for k in 0..=i {
                    g += v[(k, i + 1)] * v[(k, j)];
                }
                for k in 0..=i {
                    v[(k, j)] -= g * d[k];
                }
            }
        }
        for k in 0..=i {
            v[(k, i + 1)] = 0.0;
        }
    }
    for j in 0..n {
        d[j] = v[(n - 1, j)];
        v[(n - 1, j)] = 0.0;
    }
    v[(n - 1, n - 1)] = 1.0;
    e[0] = 0.0;
    (d, e, v)
}

// Implicit QL on the tridiagonal (d, e), rotating the columns of v.
fn tql2(d: &mut [f64], e: &mut [f64], v: &mut Matrix) -> Result<()> {
    let n = d.len();
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;

    let mut f = 0.0;
    let mut tst1 = 0.0_f64;
    let eps = f64::EPSILON;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 && e[m].abs() > eps * tst1 {
            m += 1;
        }
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > QL_ITERS_PER_VALUE {
                    return Err(Error::NoConvergence(QL_ITERS_PER_VALUE));
                }
                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = hypot(p, 1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().skip(l + 2) {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = hypot(p, e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    for k in 0..n {
                        h = v[(k, i + 1)];
                        v[(k, i + 1)] = s * v[(k, i)] + c * h;
                        v[(k, i)] = c * v[(k, i)] - s * h;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(())
}
