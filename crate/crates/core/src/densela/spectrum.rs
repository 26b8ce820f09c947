use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::eigen::eigenvalues;
use super::matrix::{pair, ComplexMatrix, ZERO};
use super::svd::{numerical_rank, RectMatrix};
use crate::error::{Error, Result};

/// Default relative tolerance.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Absolute floor below which a spectral radius counts as zero, relative to
/// `max(1, |A|_F)`.
pub const ABS_FLOOR: f64 = 1e-12;
/// A matrix `A` with `|(A/|A|_F)^n|_F` below this is treated as nilpotent.
/// Eigenvalues of nilpotent matrices are only resolved to roughly
/// `eps^(1/n)`, so the power test decides instead.
pub const NILPOTENT_TOL: f64 = 1e-11;

/// The eigenvalues of maximal modulus, as a set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeripheralSpectrum {
    points: Vec<Complex64>,
    radius: f64,
    tol: f64,
}

impl PeripheralSpectrum {
    /// `{0}` with radius 0.
    pub fn zero(tol: f64) -> Self {
        Self { points: vec![ZERO], radius: 0.0, tol }
    }

    /// Builds a spectrum from candidate eigenvalues: keeps those within
    /// `tol * max(1, r)` of the largest modulus `r` and merges clusters.
    pub fn from_eigenvalues(eigs: &[Complex64], tol: f64) -> Self {
        let radius = eigs.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if radius == 0.0 {
            return Self::zero(tol);
        }
        let band = tol * radius.max(1.0);
        let mut candidates: Vec<Complex64> =
            eigs.iter().copied().filter(|z| (z.norm() - radius).abs() <= band).collect();
        candidates.sort_by(|a, b| a.arg().total_cmp(&b.arg()));
        Self { points: cluster(&candidates, band), radius, tol }
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn is_singleton(&self) -> bool {
        self.points.len() == 1
    }

    /// Whether some point lies within `tol * max(1, radius)` of `z`.
    pub fn contains(&self, z: Complex64, tol: f64) -> bool {
        let thr = tol * self.radius.max(1.0);
        self.points.iter().any(|p| (p - z).norm() <= thr)
    }

    /// Points as `[re, im]` pairs.
    pub fn to_pairs(&self) -> Vec<[f64; 2]> {
        self.points.iter().map(|z| [z.re, z.im]).collect()
    }
}

// Single-linkage clustering within `thr`; each cluster is replaced by its
// centroid.
fn cluster(points: &[Complex64], thr: f64) -> Vec<Complex64> {
    let n = points.len();
    let mut label: Vec<usize> = (0..n).collect();
    fn find(label: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while label[r] != r {
            r = label[r];
        }
        label[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if (points[i] - points[j]).norm() <= thr {
                let (a, b) = (find(&mut label, i), find(&mut label, j));
                if a != b {
                    label[b.max(a)] = a.min(b);
                }
            }
        }
    }
    let mut out: Vec<(usize, Complex64, usize)> = Vec::new();
    for i in 0..n {
        let root = find(&mut label, i);
        match out.iter_mut().find(|(r, _, _)| *r == root) {
            Some(entry) => {
                entry.1 += points[i];
                entry.2 += 1;
            }
            None => out.push((root, points[i], 1)),
        }
    }
    out.into_iter().map(|(_, sum, k)| sum / k as f64).collect()
}

/// Whether `a` is numerically nilpotent: `|(a / |a|_F)^n|_F <= NILPOTENT_TOL`.
pub fn is_numerically_nilpotent(a: &ComplexMatrix) -> bool {
    let f = a.frobenius_norm();
    if f == 0.0 {
        return true;
    }
    let scaled = a.scale(Complex64::new(1.0 / f, 0.0));
    scaled.pow(a.dim().max(1)).frobenius_norm() <= NILPOTENT_TOL
}

pub fn peripheral_spectrum(a: &ComplexMatrix, tol: f64) -> Result<PeripheralSpectrum> {
    if a.is_zero() || is_numerically_nilpotent(a) {
        return Ok(PeripheralSpectrum::zero(tol));
    }
    let eigs = eigenvalues(a)?;
    let radius = eigs.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if radius <= ABS_FLOOR * a.frobenius_norm().max(1.0) {
        return Ok(PeripheralSpectrum::zero(tol));
    }
    Ok(PeripheralSpectrum::from_eigenvalues(&eigs, tol))
}

/// Spectral radius `max |z|` over the eigenvalues.
pub fn spectral_radius(a: &ComplexMatrix) -> Result<f64> {
    Ok(eigenvalues(a)?.iter().map(|z| z.norm()).fold(0.0, f64::max))
}

/// Set equality up to `tol * max(1, larger radius)`, decided by a perfect
/// matching between the two point sets.
pub fn spectra_equal(s1: &PeripheralSpectrum, s2: &PeripheralSpectrum, tol: f64) -> bool {
    if s1.len() != s2.len() {
        return false;
    }
    let thr = tol * s1.radius.max(s2.radius).max(1.0);
    let n = s1.len();
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| (s1.points[i] - s2.points[j]).norm() <= thr).collect())
        .collect();
    // greedy seed
    let mut match_right: Vec<Option<usize>> = vec![None; n];
    let mut match_left: Vec<Option<usize>> = vec![None; n];
    for i in 0..n {
        if let Some(&j) = adj[i].iter().find(|&&j| match_right[j].is_none()) {
            match_right[j] = Some(i);
            match_left[i] = Some(j);
        }
    }
    // augmenting paths for whatever greedy left unmatched
    for i in 0..n {
        if match_left[i].is_some() {
            continue;
        }
        let mut seen = vec![false; n];
        if !augment(i, &adj, &mut seen, &mut match_right) {
            return false;
        }
    }
    true
}

fn augment(i: usize, adj: &[Vec<usize>], seen: &mut [bool], match_right: &mut [Option<usize>]) -> bool {
    for &j in &adj[i] {
        if seen[j] {
            continue;
        }
        seen[j] = true;
        let free = match match_right[j] {
            None => true,
            Some(other) => augment(other, adj, seen, match_right),
        };
        if free {
            match_right[j] = Some(i);
            return true;
        }
    }
    false
}

/// Numerical rank with threshold `tol * s_max`.
pub fn rank(a: &ComplexMatrix, tol: f64) -> usize {
    numerical_rank(&RectMatrix::from(a), tol)
}

/// The operator `z -> f(z) x`.
#[derive(Debug, Clone, PartialEq)]
pub struct RankOneOperator {
    x: Vec<Complex64>,
    f: Vec<Complex64>,
}

impl RankOneOperator {
    pub fn new(x: Vec<Complex64>, f: Vec<Complex64>) -> Result<Self> {
        if x.len() != f.len() {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} paired with covector of length {}",
                x.len(),
                f.len()
            )));
        }
        if x.iter().all(|z| *z == ZERO) || f.iter().all(|z| *z == ZERO) {
            return Err(Error::ZeroOperator);
        }
        Ok(Self { x, f })
    }

    pub fn x(&self) -> &[Complex64] {
        &self.x
    }

    pub fn f(&self) -> &[Complex64] {
        &self.f
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }

    /// `<x, f> = f(x)`.
    pub fn pairing(&self) -> Complex64 {
        pair(&self.x, &self.f)
    }

    pub fn to_matrix(&self) -> ComplexMatrix {
        ComplexMatrix::outer(&self.x, &self.f)
    }
}
