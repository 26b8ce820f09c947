//! Eigenvalues of dense complex matrices.
//!
//! Householder reduction to upper Hessenberg form followed by single-shift
//! complex QR sweeps (Wilkinson shift, Givens rotations) with deflation on
//! negligible subdiagonal entries.

use num_complex::Complex64;

use super::matrix::{ComplexMatrix, ZERO};
use crate::error::{Error, Result};

/// Sweeps allowed per unit of dimension.
pub const SWEEPS_PER_DIM: usize = 100;

/// All `n` eigenvalues with algebraic multiplicity, in deflation order.
pub fn eigenvalues(a: &ComplexMatrix) -> Result<Vec<Complex64>> {
    let n = a.dim();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut h: Vec<Complex64> = a.as_slice().to_vec();
    reduce_to_hessenberg(&mut h, n);
    hessenberg_qr(&mut h, n)
}

fn reduce_to_hessenberg(h: &mut [Complex64], n: usize) {
    if n < 3 {
        return;
    }
    let mut v = vec![ZERO; n];
    for k in 0..n - 2 {
        let xnorm = (k + 1..n).map(|i| h[i * n + k].norm_sqr()).sum::<f64>().sqrt();
        if xnorm == 0.0 {
            continue;
        }
        let x0 = h[(k + 1) * n + k];
        let phase = if x0.norm() > 0.0 { x0 / x0.norm() } else { Complex64::new(1.0, 0.0) };
        let alpha = -phase * xnorm;
        v.iter_mut().for_each(|z| *z = ZERO);
        for i in k + 1..n {
            v[i] = h[i * n + k];
        }
        v[k + 1] -= alpha;
        let vn = v[k + 1..].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vn == 0.0 {
            continue;
        }
        for z in &mut v[k + 1..] {
            *z /= vn;
        }
        // H <- (I - 2vv*) H
        for j in 0..n {
            let dot: Complex64 = (k + 1..n).map(|i| v[i].conj() * h[i * n + j]).sum();
            if dot != ZERO {
                for i in k + 1..n {
                    h[i * n + j] -= v[i] * dot * 2.0;
                }
            }
        }
        // H <- H (I - 2vv*)
        for i in 0..n {
            let dot: Complex64 = (k + 1..n).map(|j| h[i * n + j] * v[j]).sum();
            if dot != ZERO {
                for j in k + 1..n {
                    h[i * n + j] -= dot * v[j].conj() * 2.0;
                }
            }
        }
        h[(k + 1) * n + k] = alpha;
        for i in k + 2..n {
            h[i * n + k] = ZERO;
        }
    }
}

// Rotation [c s; -conj(s) c] with real c mapping (a, b) to (r, 0).
fn givens(a: Complex64, b: Complex64) -> (f64, Complex64) {
    if b == ZERO {
        return (1.0, ZERO);
    }
    if a == ZERO {
        return (0.0, Complex64::new(1.0, 0.0));
    }
    let an = a.norm();
    let nrm = an.hypot(b.norm());
    (an / nrm, (a / an) * b.conj() / nrm)
}

fn hessenberg_qr(h: &mut [Complex64], n: usize) -> Result<Vec<Complex64>> {
    let eps = f64::EPSILON;
    let cap = SWEEPS_PER_DIM * n;
    let norm = h.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let mut eig = vec![ZERO; n];
    if norm == 0.0 {
        return Ok(eig);
    }
    let mut hi = n - 1;
    let mut its = 0usize;
    let mut total = 0usize;
    let mut rot: Vec<(f64, Complex64)> = Vec::with_capacity(n);
    loop {
        // find the start of the active unreduced block
        let mut lo = hi;
        while lo > 0 {
            let sub = h[lo * n + lo - 1].norm();
            let mut s = h[(lo - 1) * n + lo - 1].norm() + h[lo * n + lo].norm();
            if s == 0.0 {
                s = norm;
            }
            if sub <= eps * s || sub <= f64::MIN_POSITIVE {
                h[lo * n + lo - 1] = ZERO;
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            eig[hi] = h[hi * n + hi];
            its = 0;
            if hi == 0 {
                break;
            }
            hi -= 1;
            continue;
        }
        if total >= cap {
            return Err(Error::NoConvergence(total));
        }
        total += 1;
        its += 1;

        let shift = if its % 11 == 10 {
            // exceptional shift to break cycles
            h[hi * n + hi] + Complex64::new(0.75, 0.5) * h[hi * n + hi - 1].norm()
        } else {
            wilkinson_shift(
                h[(hi - 1) * n + hi - 1],
                h[(hi - 1) * n + hi],
                h[hi * n + hi - 1],
                h[hi * n + hi],
            )
        };

        for i in lo..=hi {
            h[i * n + i] -= shift;
        }
        rot.clear();
        for k in lo..hi {
            let (c, s) = givens(h[k * n + k], h[(k + 1) * n + k]);
            rot.push((c, s));
            for j in k..=hi {
                let x = h[k * n + j];
                let y = h[(k + 1) * n + j];
                h[k * n + j] = x * c + s * y;
                h[(k + 1) * n + j] = -s.conj() * x + y * c;
            }
            h[(k + 1) * n + k] = ZERO;
        }
        for (idx, &(c, s)) in rot.iter().enumerate() {
            let k = lo + idx;
            for i in lo..=(k + 2).min(hi) {
                let x = h[i * n + k];
                let y = h[i * n + k + 1];
                h[i * n + k] = x * c + y * s.conj();
                h[i * n + k + 1] = -x * s + y * c;
            }
        }
        for i in lo..=hi {
            h[i * n + i] += shift;
        }
    }
    Ok(eig)
}

// Eigenvalue of the trailing 2x2 block closer to its last diagonal entry.
fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let m1 = (a + d) * 0.5 + disc;
    let m2 = (a + d) * 0.5 - disc;
    if (m1 - d).norm() <= (m2 - d).norm() {
        m1
    } else {
        m2
    }
}
