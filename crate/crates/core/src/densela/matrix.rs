use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub(crate) const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
pub(crate) const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// Dense square complex matrix, row-major. Entries are always finite.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    n: usize,
    data: Vec<Complex64>,
}

/// Wire form: `{"n": int, "data": [[re, im], ...]}`, row-major, length `n*n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub data: Vec<[f64; 2]>,
}

impl ComplexMatrix {
    pub fn new(n: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries for n={}, got {}",
                n * n,
                n,
                data.len()
            )));
        }
        if let Some(i) = data.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(Self { n, data })
    }

    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![ZERO; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { ONE } else { ZERO })
    }

    /// Builds a matrix from an entry function. Panics if it produces a
    /// non-finite value.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let z = f(i, j);
                assert!(z.re.is_finite() && z.im.is_finite(), "non-finite entry ({i},{j})");
                data.push(z);
            }
        }
        Self { n, data }
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let n = rows.len();
        Self::from_fn(n, |i, j| Complex64::new(rows[i][j], 0.0))
    }

    pub fn diag(d: &[Complex64]) -> Self {
        Self::from_fn(d.len(), |i, j| if i == j { d[i] } else { ZERO })
    }

    pub fn real_diag(d: &[f64]) -> Self {
        Self::from_fn(d.len(), |i, j| if i == j { Complex64::new(d[i], 0.0) } else { ZERO })
    }

    /// Matrix unit `E_ij`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n);
        m[(i, j)] = ONE;
        m
    }

    /// Outer product `x f^t`, i.e. the operator `z -> f(z) x`.
    pub fn outer(x: &[Complex64], f: &[Complex64]) -> Self {
        assert_eq!(x.len(), f.len());
        Self::from_fn(x.len(), |i, j| x[i] * f[j])
    }

    /// Block-diagonal embedding `A ⊕ 0` into dimension `n_out`.
    pub fn pad_to(&self, n_out: usize) -> Self {
        assert!(n_out >= self.n);
        Self::from_fn(n_out, |i, j| if i < self.n && j < self.n { self[(i, j)] } else { ZERO })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.n).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)])
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)].conj())
    }

    pub fn conj(&self) -> Self {
        Self { n: self.n, data: self.data.iter().map(|z| z.conj()).collect() }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self { n: self.n, data: self.data.iter().map(|z| z * c).collect() }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|z| *z == ZERO)
    }

    pub fn mat_vec(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.n);
        (0..self.n)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.n != rhs.n {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {0}x{0} by {1}x{1}",
                self.n, rhs.n
            )));
        }
        Ok(self * rhs)
    }

    /// `self^k` by repeated squaring; `self^0 = I`.
    pub fn pow(&self, mut k: usize) -> Self {
        let mut result = Self::identity(self.n);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Inverse by LU with partial pivoting. `None` if a pivot vanishes.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.n;
        let mut a = self.data.clone();
        let mut inv = Self::identity(n).data;
        for col in 0..n {
            let piv = (col..n)
                .max_by(|&x, &y| a[x * n + col].norm().total_cmp(&a[y * n + col].norm()))?;
            if a[piv * n + col].norm() == 0.0 {
                return None;
            }
            if piv != col {
                for j in 0..n {
                    a.swap(piv * n + j, col * n + j);
                    inv.swap(piv * n + j, col * n + j);
                }
            }
            let d = a[col * n + col];
            for j in 0..n {
                a[col * n + j] /= d;
                inv[col * n + j] /= d;
            }
            for i in 0..n {
                if i == col {
                    continue;
                }
                let f = a[i * n + col];
                if f == ZERO {
                    continue;
                }
                for j in 0..n {
                    let (ac, ic) = (a[col * n + j], inv[col * n + j]);
                    a[i * n + j] -= f * ac;
                    inv[i * n + j] -= f * ic;
                }
            }
        }
        Self::new(n, inv).ok()
    }

    /// Entry-wise distance in Frobenius norm.
    pub fn distance(&self, other: &Self) -> f64 {
        assert_eq!(self.n, other.n);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            n: self.n,
            data: self.data.iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn from_json(json: &MatrixJson) -> Result<Self> {
        let data = json.data.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
        Self::new(json.n, data)
    }
}

impl Serialize for ComplexMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let json = MatrixJson::deserialize(d)?;
        Self::from_json(&json).map_err(serde::de::Error::custom)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch in product");
        let n = self.n;
        let mut out = vec![ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                let row = &rhs.data[k * n..(k + 1) * n];
                for (o, b) in out[i * n..(i + 1) * n].iter_mut().zip(row) {
                    *o += a * b;
                }
            }
        }
        ComplexMatrix { n, data: out }
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.n, rhs.n);
        ComplexMatrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.n, rhs.n);
        ComplexMatrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})", self.n, self.n)?;
        for i in 0..self.n {
            let row: Vec<String> = self
                .row(i)
                .iter()
                .map(|z| format!("{:+.4}{:+.4}i", z.re, z.im))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Bilinear pairing `f(x) = sum f_i x_i`.
pub fn pair(x: &[Complex64], f: &[Complex64]) -> Complex64 {
    x.iter().zip(f).map(|(a, b)| a * b).sum()
}

/// Hilbert inner product `<x, y> = sum x_i conj(y_i)`, linear in `x`.
pub fn inner(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    x.iter().zip(y).map(|(a, b)| a * b.conj()).sum()
}

pub fn norm(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rejects_non_finite_and_bad_length() {
        assert_eq!(
            ComplexMatrix::new(2, vec![ZERO, ZERO, c(f64::NAN, 0.0), ZERO]),
            Err(Error::NonFinite(2))
        );
        assert!(matches!(
            ComplexMatrix::new(2, vec![ZERO; 3]),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn inverse_round_trip() {
        let a = ComplexMatrix::new(
            3,
            vec![c(0.0, 1.0), c(2.0, 0.0), c(1.0, -1.0), c(1.0, 0.0), c(0.0, 0.0), c(3.0, 0.5),
                 c(-2.0, 1.0), c(1.0, 1.0), c(0.0, 0.0)],
        )
        .unwrap();
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).distance(&ComplexMatrix::identity(3)) < 1e-12);
        assert!(ComplexMatrix::real_diag(&[1.0, 0.0]).inverse().is_none());
    }

    #[test]
    fn pow_matches_repeated_product() {
        let a = ComplexMatrix::from_fn(3, |i, j| c(i as f64 - j as f64, (i * j) as f64 * 0.1));
        let mut p = ComplexMatrix::identity(3);
        for k in 0..6 {
            assert!(a.pow(k).distance(&p) < 1e-9 * (1.0 + p.frobenius_norm()));
            p = &p * &a;
        }
    }

    #[test]
    fn json_shape() {
        let a = ComplexMatrix::new(1, vec![c(1.5, -2.0)]).unwrap();
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"n":1,"data":[[1.5,-2.0]]}"#);
        let back: ComplexMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
        assert!(serde_json::from_str::<ComplexMatrix>(r#"{"n":2,"data":[[1,0]]}"#).is_err());
    }

    #[test]
    fn outer_product_acts_as_rank_one_operator() {
        let x = [c(1.0, 0.0), c(0.0, 2.0)];
        let f = [c(3.0, 0.0), c(1.0, 1.0)];
        let m = ComplexMatrix::outer(&x, &f);
        let z = [c(0.5, 0.5), c(-1.0, 0.0)];
        let fz = pair(&z, &f);
        let mz = m.mat_vec(&z);
        for i in 0..2 {
            assert!((mz[i] - fz * x[i]).norm() < 1e-14);
        }
    }
}
