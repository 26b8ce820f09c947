use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::densela::{random, ComplexMatrix, ONE, ZERO};

pub(crate) const NEG_ONE: Complex64 = Complex64 { re: -1.0, im: 0.0 };
use crate::error::{Error, Result};

/// A linear map `M_{n_in} -> M_{n_out}` stored as the images of the matrix
/// units `E_ij`, row-major over `(i, j)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TableJson", into = "TableJson")]
pub struct LinearMapTable {
    n_in: usize,
    n_out: usize,
    images: Vec<ComplexMatrix>,
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    n_in: usize,
    n_out: usize,
    images: Vec<ComplexMatrix>,
}

impl TryFrom<TableJson> for LinearMapTable {
    type Error = Error;
    fn try_from(t: TableJson) -> Result<Self> {
        LinearMapTable::new(t.n_in, t.n_out, t.images)
    }
}

impl From<LinearMapTable> for TableJson {
    fn from(t: LinearMapTable) -> Self {
        TableJson { n_in: t.n_in, n_out: t.n_out, images: t.images }
    }
}

/// Number of random probes used by [`LinearMapTable::from_fn`] to confirm
/// that a callback is linear.
const LINEARITY_PROBES: usize = 4;

impl LinearMapTable {
    pub fn new(n_in: usize, n_out: usize, images: Vec<ComplexMatrix>) -> Result<Self> {
        if n_in == 0 || n_out == 0 {
            return Err(Error::DimensionMismatch("map dimensions must be positive".into()));
        }
        if images.len() != n_in * n_in {
            return Err(Error::DimensionMismatch(format!(
                "a map on {n_in}x{n_in} matrices needs {} images, got {}",
                n_in * n_in,
                images.len()
            )));
        }
        if let Some((idx, bad)) = images.iter().enumerate().find(|(_, m)| m.dim() != n_out) {
            return Err(Error::DimensionMismatch(format!(
                "image {idx} is {0}x{0}, expected {n_out}x{n_out}",
                bad.dim()
            )));
        }
        Ok(Self { n_in, n_out, images })
    }

    /// Tabulates a callback on the matrix units, then checks it against the
    /// table on a few seeded random matrices.
    pub fn from_fn(n_in: usize, n_out: usize, f: impl Fn(&ComplexMatrix) -> ComplexMatrix) -> Result<Self> {
        let mut images = Vec::with_capacity(n_in * n_in);
        for i in 0..n_in {
            for j in 0..n_in {
                images.push(f(&ComplexMatrix::unit(n_in, i, j)));
            }
        }
        let table = Self::new(n_in, n_out, images)?;
        let mut rng = ChaCha8Rng::seed_from_u64(0x11ea);
        for _ in 0..LINEARITY_PROBES {
            let a = random::gaussian_matrix(&mut rng, n_in);
            let direct = f(&a);
            if direct.dim() != n_out {
                return Err(Error::NotLinearConsistent);
            }
            let tabulated = table.apply(&a)?;
            let scale = 1.0 + direct.frobenius_norm().max(tabulated.frobenius_norm());
            if direct.distance(&tabulated) > 1e-9 * scale {
                return Err(Error::NotLinearConsistent);
            }
        }
        Ok(table)
    }

    /// `A -> λ T A T^{-1}`.
    pub fn similarity(t: &ComplexMatrix, lambda: Complex64) -> Result<Self> {
        let tinv = invert(t)?;
        Self::from_fn(t.dim(), t.dim(), |a| (&(t * a) * &tinv).scale(lambda))
    }

    /// `A -> λ T A^t T^{-1}`.
    pub fn transpose_similarity(t: &ComplexMatrix, lambda: Complex64) -> Result<Self> {
        let tinv = invert(t)?;
        Self::from_fn(t.dim(), t.dim(), |a| (&(t * &a.transpose()) * &tinv).scale(lambda))
    }

    /// `A -> c U A U^*`.
    pub fn unitary_similarity(u: &ComplexMatrix, c: f64) -> Result<Self> {
        let ua = u.adjoint();
        Self::from_fn(u.dim(), u.dim(), |a| (&(u * a) * &ua).scale(Complex64::new(c, 0.0)))
    }

    /// `A -> c U A^t U^*`.
    pub fn unitary_transpose_similarity(u: &ComplexMatrix, c: f64) -> Result<Self> {
        let ua = u.adjoint();
        Self::from_fn(u.dim(), u.dim(), |a| (&(u * &a.transpose()) * &ua).scale(Complex64::new(c, 0.0)))
    }

    /// `A -> A ⊕ 0`, embedding `M_{n_in}` in the top-left corner of
    /// `M_{n_out}`.
    pub fn corner_embedding(n_in: usize, n_out: usize) -> Result<Self> {
        if n_out < n_in {
            return Err(Error::DimensionMismatch(format!(
                "cannot embed {n_in}x{n_in} matrices into {n_out}x{n_out}"
            )));
        }
        Self::from_fn(n_in, n_out, |a| a.pad_to(n_out))
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |a| a.clone()).expect("identity is linear")
    }

    pub fn n_in(&self) -> usize {
        self.n_in
    }

    pub fn n_out(&self) -> usize {
        self.n_out
    }

    pub fn images(&self) -> &[ComplexMatrix] {
        &self.images
    }

    /// `Φ(E_ij)`.
    pub fn image(&self, i: usize, j: usize) -> &ComplexMatrix {
        &self.images[i * self.n_in + j]
    }

    /// `Φ(A) = Σ a_ij Φ(E_ij)`.
    pub fn apply(&self, a: &ComplexMatrix) -> Result<ComplexMatrix> {
        if a.dim() != self.n_in {
            return Err(Error::DimensionMismatch(format!(
                "map expects {0}x{0} input, got {1}x{1}",
                self.n_in,
                a.dim()
            )));
        }
        let mut out = ComplexMatrix::zeros(self.n_out);
        for (idx, &coef) in a.as_slice().iter().enumerate() {
            if coef == ZERO {
                continue;
            }
            let img = &self.images[idx];
            for r in 0..self.n_out {
                for c in 0..self.n_out {
                    out[(r, c)] += coef * img[(r, c)];
                }
            }
        }
        Ok(out)
    }

    /// Largest `|Φ(E_ij)|_F`.
    pub fn scale(&self) -> f64 {
        self.images.iter().map(|m| m.frobenius_norm()).fold(0.0, f64::max)
    }
}

fn invert(t: &ComplexMatrix) -> Result<ComplexMatrix> {
    t.inverse()
        .ok_or_else(|| Error::InvalidConfig("transform is singular".into()))
}

/// `exp(2πi k/m)`, with the real roots `±1` returned exactly.
pub fn root_of_unity(m: usize, k: usize) -> Complex64 {
    let k = k % m;
    if k == 0 {
        ONE
    } else if 2 * k == m {
        NEG_ONE
    } else {
        Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / m as f64)
    }
}
