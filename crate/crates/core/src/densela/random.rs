//! Seeded random matrices and vectors.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::matrix::{inner, norm, ComplexMatrix, ZERO};
use super::svd::{svd, RectMatrix};

/// Standard complex Gaussian: real and imaginary parts each `N(0, 1/2)`.
pub fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn gaussian_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Complex64> {
    (0..n).map(|_| gaussian(rng)).collect()
}

pub fn unit_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Complex64> {
    loop {
        let v = gaussian_vector(rng, n);
        let nv = norm(&v);
        if nv > 1e-8 {
            return v.into_iter().map(|z| z / nv).collect();
        }
    }
}

pub fn gaussian_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, |_, _| gaussian(rng))
}

/// Haar-ish unitary from Gram-Schmidt on Gaussian columns.
pub fn unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    loop {
        let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
        let mut ok = true;
        for _ in 0..n {
            let mut v = gaussian_vector(rng, n);
            for _ in 0..2 {
                for q in &cols {
                    let d = inner(&v, q);
                    v.iter_mut().zip(q).for_each(|(a, b)| *a -= d * b);
                }
            }
            let nv = norm(&v);
            if nv < 1e-6 {
                ok = false;
                break;
            }
            cols.push(v.into_iter().map(|z| z / nv).collect());
        }
        if ok {
            return ComplexMatrix::from_fn(n, |i, j| cols[j][i]);
        }
    }
}

/// Random invertible matrix `U diag(d) V` with `d` in `[1, cond]`.
pub fn invertible<R: Rng + ?Sized>(rng: &mut R, n: usize, cond: f64) -> ComplexMatrix {
    let u = unitary(rng, n);
    let v = unitary(rng, n);
    let d: Vec<f64> = (0..n)
        .map(|i| if i == 0 { 1.0 } else if i == 1 { cond } else { rng.random_range(1.0..=cond) })
        .collect();
    let d = if n == 1 { vec![1.0] } else { d };
    let mid = ComplexMatrix::real_diag(&d);
    &(&u * &mid) * &v
}

/// Random matrix of exact rank `k` with singular values in `[1, 4]`.
pub fn with_rank<R: Rng + ?Sized>(rng: &mut R, n: usize, k: usize) -> ComplexMatrix {
    assert!(k <= n);
    let u = unitary(rng, n);
    let v = unitary(rng, n);
    let d: Vec<f64> = (0..n).map(|i| if i < k { rng.random_range(1.0..4.0) } else { 0.0 }).collect();
    &(&u * &ComplexMatrix::real_diag(&d)) * &v
}

/// Condition number in the spectral norm.
pub fn condition_number(a: &ComplexMatrix) -> f64 {
    svd(&RectMatrix::from(a)).condition()
}

/// Random Hermitian matrix.
pub fn hermitian<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    let g = gaussian_matrix(rng, n);
    let h = &g + &g.adjoint();
    h.scale(Complex64::new(0.5, 0.0))
}

/// Rank-at-most-two matrix `x1 f1^t + x2 f2^t` with Gaussian factors.
pub fn rank_two<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    let a = ComplexMatrix::outer(&gaussian_vector(rng, n), &gaussian_vector(rng, n));
    let b = ComplexMatrix::outer(&gaussian_vector(rng, n), &gaussian_vector(rng, n));
    &a + &b
}

/// Covector `f` with `f(x) = 0` exactly up to rounding, for degenerate
/// rank-one pairings.
pub fn annihilating_covector<R: Rng + ?Sized>(rng: &mut R, x: &[Complex64]) -> Vec<Complex64> {
    let n = x.len();
    let mut f = gaussian_vector(rng, n);
    // remove the component along conj(x), which is what the pairing sees
    let xc: Vec<Complex64> = x.iter().map(|z| z.conj()).collect();
    let d = inner(&f, &xc) / inner(&xc, &xc);
    f.iter_mut().zip(&xc).for_each(|(a, b)| *a -= d * b);
    if f.iter().all(|z| *z == ZERO) {
        f[0] = Complex64::new(1.0, 0.0);
    }
    f
}
