//! Singular value decomposition for small dense complex matrices.
//!
//! Tall inputs are first compressed with a Householder QR so the one-sided
//! Jacobi sweeps only ever see a square triangular factor.

use num_complex::Complex64;

use super::matrix::{ComplexMatrix, ZERO};

const MAX_SWEEPS: usize = 80;

/// Rectangular complex matrix, row-major. Only used as SVD input.
#[derive(Debug, Clone, PartialEq)]
pub struct RectMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Complex64>,
}

impl RectMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![ZERO; rows * cols] }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<Complex64>]) -> Self {
        let rows = cols.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, z) in c.iter().enumerate() {
                m.data[i * cols.len() + j] = *z;
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, z: Complex64) {
        self.data[i * self.cols + j] = z;
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }
}

impl From<&ComplexMatrix> for RectMatrix {
    fn from(m: &ComplexMatrix) -> Self {
        Self { rows: m.dim(), cols: m.dim(), data: m.as_slice().to_vec() }
    }
}

/// Thin SVD `A = U diag(s) V^*` with singular values in descending order.
///
/// `u` holds `min(rows, cols)` left singular vectors, `v` holds all `cols`
/// right singular vectors (the trailing ones span the nullspace).
#[derive(Debug, Clone)]
pub struct Svd {
    pub singular_values: Vec<f64>,
    pub u: Vec<Vec<Complex64>>,
    pub v: Vec<Vec<Complex64>>,
}

impl Svd {
    pub fn max(&self) -> f64 {
        self.singular_values.first().copied().unwrap_or(0.0)
    }

    /// Ratio of largest to smallest singular value over the first
    /// `min(rows, cols)` values; infinite when rank deficient.
    pub fn condition(&self) -> f64 {
        let k = self.u.len();
        if k == 0 {
            return f64::INFINITY;
        }
        let smallest = self.singular_values[k - 1];
        if smallest == 0.0 {
            f64::INFINITY
        } else {
            self.max() / smallest
        }
    }
}

pub fn svd(a: &RectMatrix) -> Svd {
    if a.rows > a.cols {
        let (q, r) = householder_qr(a);
        let inner = jacobi_svd(&r);
        // U = Q * U_r
        let u = inner
            .u
            .iter()
            .map(|ur| {
                (0..a.rows)
                    .map(|i| (0..a.cols).map(|k| q[k][i] * ur[k]).sum())
                    .collect()
            })
            .collect();
        Svd { singular_values: inner.singular_values, u, v: inner.v }
    } else {
        jacobi_svd(a)
    }
}

pub fn singular_values(a: &RectMatrix) -> Vec<f64> {
    svd(a).singular_values
}

/// Householder QR of a tall matrix; returns the first `cols` columns of `Q`
/// (as column vectors) and the square upper-triangular `R`.
fn householder_qr(a: &RectMatrix) -> (Vec<Vec<Complex64>>, RectMatrix) {
    let (m, n) = (a.rows, a.cols);
    let mut w = a.clone();
    let mut reflectors: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    for k in 0..n {
        let xnorm = (k..m).map(|i| w.get(i, k).norm_sqr()).sum::<f64>().sqrt();
        let mut v = vec![ZERO; m];
        if xnorm > 0.0 {
            let x0 = w.get(k, k);
            let phase = if x0.norm() > 0.0 { x0 / x0.norm() } else { Complex64::new(1.0, 0.0) };
            let alpha = -phase * xnorm;
            for i in k..m {
                v[i] = w.get(i, k);
            }
            v[k] -= alpha;
            let vn = norm_tail(&v, k);
            if vn > 0.0 {
                for z in &mut v[k..] {
                    *z /= vn;
                }
                apply_reflector_left(&mut w, &v, k, k);
            }
        }
        reflectors.push(v);
    }
    let mut r = RectMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            r.set(i, j, w.get(i, j));
        }
    }
    // Q e_j = H_0 H_1 ... H_{n-1} e_j
    let mut q = Vec::with_capacity(n);
    for j in 0..n {
        let mut col = vec![ZERO; m];
        col[j] = Complex64::new(1.0, 0.0);
        for (k, v) in reflectors.iter().enumerate().rev() {
            let dot: Complex64 = (k..m).map(|i| v[i].conj() * col[i]).sum();
            if dot != ZERO {
                for i in k..m {
                    col[i] -= v[i] * (dot * 2.0);
                }
            }
        }
        q.push(col);
    }
    (q, r)
}

fn norm_tail(v: &[Complex64], from: usize) -> f64 {
    v[from..].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn apply_reflector_left(w: &mut RectMatrix, v: &[Complex64], row0: usize, col0: usize) {
    for j in col0..w.cols {
        let dot: Complex64 = (row0..w.rows).map(|i| v[i].conj() * w.get(i, j)).sum();
        if dot == ZERO {
            continue;
        }
        for i in row0..w.rows {
            let z = w.get(i, j) - v[i] * (dot * 2.0);
            w.set(i, j, z);
        }
    }
}

/// One-sided (Hestenes) Jacobi SVD, any shape.
fn jacobi_svd(a: &RectMatrix) -> Svd {
    let (m, n) = (a.rows, a.cols);
    // column-major working copies
    let mut cols: Vec<Vec<Complex64>> = (0..n).map(|j| (0..m).map(|i| a.get(i, j)).collect()).collect();
    let mut v: Vec<Vec<Complex64>> = (0..n)
        .map(|j| {
            let mut e = vec![ZERO; n];
            e[j] = Complex64::new(1.0, 0.0);
            e
        })
        .collect();
    let eps = f64::EPSILON;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha: f64 = cols[p].iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = cols[q].iter().map(|z| z.norm_sqr()).sum();
                let gamma: Complex64 = cols[p].iter().zip(&cols[q]).map(|(x, y)| x.conj() * y).sum();
                let g = gamma.norm();
                if g == 0.0 || g <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let t = if zeta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate(&mut cols, p, q, phase, c, s);
                rotate(&mut v, p, q, phase, c, s);
            }
        }
        if !rotated {
            break;
        }
    }
    let mut order: Vec<(usize, f64)> = cols
        .iter()
        .enumerate()
        .map(|(j, c)| (j, c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()))
        .collect();
    order.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    let k = m.min(n);
    let singular_values: Vec<f64> = order.iter().map(|&(_, s)| s).collect();
    let u = order
        .iter()
        .take(k)
        .map(|&(j, s)| {
            if s > 0.0 {
                cols[j].iter().map(|z| z / s).collect()
            } else {
                vec![ZERO; m]
            }
        })
        .collect();
    let v = order.iter().map(|&(j, _)| v[j].clone()).collect();
    Svd { singular_values, u, v }
}

// Rotates columns p, q: q is first rotated by conj(phase) so the pair's
// Gram entry becomes real, then a real Givens rotation zeroes it.
fn rotate(cols: &mut [Vec<Complex64>], p: usize, q: usize, phase: Complex64, c: f64, s: f64) {
    let (left, right) = cols.split_at_mut(q);
    let cp = &mut left[p];
    let cq = &mut right[0];
    for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
        let yq = *y * phase.conj();
        let nx = *x * c - yq * s;
        let ny = *x * s + yq * c;
        *x = nx;
        *y = ny;
    }
}

/// Numerical rank: singular values above `tol * s_max`.
pub fn numerical_rank(a: &RectMatrix, tol: f64) -> usize {
    let s = singular_values(a);
    let top = s.first().copied().unwrap_or(0.0);
    if top == 0.0 {
        return 0;
    }
    s.iter().filter(|&&x| x > tol * top).count()
}

/// Right singular vectors whose singular values are at most `tol * s_max`,
/// ordered from smallest singular value upward. Includes the structural
/// nullspace of wide matrices.
pub fn nullspace(a: &RectMatrix, tol: f64) -> Vec<Vec<Complex64>> {
    let d = svd(a);
    let top = d.max();
    let mut out: Vec<(f64, Vec<Complex64>)> = d
        .singular_values
        .iter()
        .zip(&d.v)
        .filter(|(s, _)| **s <= tol * top || top == 0.0)
        .map(|(s, v)| (*s, v.clone()))
        .collect();
    out.sort_by(|a, b| a.0.total_cmp(&b.0));
    out.into_iter().map(|(_, v)| v).collect()
}

/// Moore-Penrose pseudo-inverse of an `rows x cols` matrix with full column
/// rank; returns `cols x rows`, whose rows are the dual functionals of the
/// input columns.
pub fn pseudo_inverse(a: &RectMatrix) -> RectMatrix {
    let d = svd(a);
    let k = d.u.len();
    let mut out = RectMatrix::zeros(a.cols, a.rows);
    let top = d.max();
    for t in 0..k {
        let s = d.singular_values[t];
        if s <= f64::EPSILON * top * (a.rows.max(a.cols) as f64) || s == 0.0 {
            continue;
        }
        for i in 0..a.cols {
            for j in 0..a.rows {
                let z = out.get(i, j) + d.v[t][i] * d.u[t][j].conj() / s;
                out.set(i, j, z);
            }
        }
    }
    out
}
