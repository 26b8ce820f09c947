//! Rank-one detection through peripheral spectra.
//!
//! A nonzero matrix `A` has rank one exactly when `σ_π(B^r A B^s)` is a
//! singleton for every `B` of rank at most two. When `A` has rank at least
//! two, [`construct_witness`] builds an explicit `B` with a two-point
//! peripheral spectrum. Two vectors `x1, x2` with independent images are
//! fixed and the construction branches on `dim span{x1, x2, Ax1, Ax2}`:
//!
//! - 4: dual functionals `f1..f4`, `g1 = f1 + f3`, `g2 = α f2 + f4` with
//!   `|α| = 1`; the spectrum is `{1, α^(r+s-1)}`.
//! - 3: `x2 = λ1 x1 + λ2 Ax1 + λ3 Ax2`, `g1 = f1 + f3`, `g2 = α f4`, with `α`
//!   scaled so that the second eigenvalue `λ` has modulus one. Six subcases
//!   by `(r, s)` give `λ` and the coefficient `β` of the eigenvector.
//! - 2: `span{x1, x2}` is invariant; a `2x2` block `B1` is chosen on it so
//!   that `B1^(r+s) A1` has zero trace and nonzero determinant, which forces
//!   eigenvalues `±μ`.
//!
//! Every candidate is re-checked with the eigensolver before it is returned.

use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::densela::svd::{pseudo_inverse, singular_values, svd};
use crate::densela::{
    norm, peripheral_spectrum, random, rank, ComplexMatrix, PeripheralSpectrum, RectMatrix, ONE,
    ZERO,
};
use crate::error::{Error, Result};

/// Relative threshold for "images of `x1, x2` are independent".
pub const PAIR_TOL: f64 = 1e-9;
/// Singular values of the normalized `[x1 x2 Ax1 Ax2]` above this count
/// toward the span dimension.
const DIM_HI: f64 = 1e-6;
/// ... and those below this count as zero. Pairs falling in between are
/// skipped as ambiguous.
const DIM_LO: f64 = 1e-10;
/// Minimum distance from 1 for the second predicted point.
const ALPHA_GAP: f64 = 0.5;
/// Default tolerance when re-checking a witness with the eigensolver.
pub const WITNESS_TOL: f64 = 1e-8;
/// Default cap on construction attempts.
pub const MAX_RETRIES: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseTag {
    /// `dim = 4`, `r + s >= 2`.
    Case1,
    /// `dim = 3`, with the subcase number 1 through 6.
    Case2(u8),
    /// `dim = 2`.
    Case3,
    /// `r + s = 1` with `dim = 4`, where the `dim = 4` functionals would give a
    /// repeated eigenvalue.
    FirstOrder,
    /// Random two-dimensional compression, used once every structured
    /// attempt has failed numerically.
    RandomizedFallback,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseTag::Case1 => write!(f, "Case1"),
            CaseTag::Case2(k) => write!(f, "Case2.Subcase{k}"),
            CaseTag::Case3 => write!(f, "Case3"),
            CaseTag::FirstOrder => write!(f, "FirstOrder"),
            CaseTag::RandomizedFallback => write!(f, "randomized-fallback"),
        }
    }
}

impl Serialize for CaseTag {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A verified rank-at-most-two witness.
#[derive(Debug, Clone)]
pub struct WitnessResult {
    pub found: bool,
    pub witness: ComplexMatrix,
    /// `σ_π(B^r A B^s)` recomputed by the eigensolver.
    pub spectrum: PeripheralSpectrum,
    pub case: CaseTag,
    /// Points the construction predicts; all are contained in `spectrum`.
    pub predicted: Vec<Complex64>,
    pub alpha: Option<Complex64>,
}

#[derive(Debug, Clone, Copy)]
pub struct WitnessConfig {
    pub tol: f64,
    pub seed: u64,
    pub max_retries: usize,
}

impl Default for WitnessConfig {
    fn default() -> Self {
        Self { tol: WITNESS_TOL, seed: 0x5eed, max_retries: MAX_RETRIES }
    }
}

/// Outcome of the rank-one criterion.
#[derive(Debug, Clone)]
pub struct CriterionReport {
    pub rank_one: bool,
    /// Set when the answer is `false` by construction.
    pub witness: Option<WitnessResult>,
    /// Set when a random sample produced a non-singleton spectrum.
    pub sampled_counterexample: Option<ComplexMatrix>,
    pub samples_checked: usize,
}

/// `B^r A B^s`.
pub fn sandwich(b: &ComplexMatrix, a: &ComplexMatrix, r: usize, s: usize) -> ComplexMatrix {
    &(&b.pow(r) * a) * &b.pow(s)
}

pub fn construct_witness(a: &ComplexMatrix, r: usize, s: usize) -> Result<WitnessResult> {
    construct_witness_with(a, r, s, &WitnessConfig::default())
}

pub fn construct_witness_with(
    a: &ComplexMatrix,
    r: usize,
    s: usize,
    cfg: &WitnessConfig,
) -> Result<WitnessResult> {
    if r + s == 0 {
        return Err(Error::InvalidConfig("r + s must be at least 1".into()));
    }
    let n = a.dim();
    let top = singular_values(&RectMatrix::from(a)).first().copied().unwrap_or(0.0);
    if top == 0.0 || n < 2 {
        return Err(Error::RankTooLow);
    }
    let basis_pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| independent_images(&a.column(i), &a.column(j), top))
        .collect();
    if basis_pairs.is_empty() {
        return Err(Error::RankTooLow);
    }
    let builder = Builder { a, r, s, tol: cfg.tol };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut attempts = 0usize;

    for &(i, j) in &basis_pairs {
        if attempts >= cfg.max_retries {
            break;
        }
        attempts += 1;
        let (x1, x2) = (unit_basis(n, i), unit_basis(n, j));
        if let Some(w) = builder.try_pair(&x1, &x2, &mut rng) {
            return Ok(w);
        }
    }
    // random pairs through the same case analysis, alternating with the
    // random compression fallback
    while attempts < cfg.max_retries {
        attempts += 1;
        let x1 = random::unit_vector(&mut rng, n);
        let x2 = random::unit_vector(&mut rng, n);
        if attempts.is_multiple_of(2) {
            if !independent_images(&a.mat_vec(&x1), &a.mat_vec(&x2), top) {
                continue;
            }
            if let Some(w) = builder.try_pair(&x1, &x2, &mut rng) {
                return Ok(w);
            }
        } else if let Some(w) = builder.compressed(&[x1, x2], &mut rng, CaseTag::RandomizedFallback) {
            return Ok(w);
        }
    }
    Err(Error::ConstructionFailed(format!(
        "no verified witness after {attempts} attempts"
    )))
}

fn unit_basis(n: usize, i: usize) -> Vec<Complex64> {
    let mut e = vec![ZERO; n];
    e[i] = ONE;
    e
}

fn independent_images(y1: &[Complex64], y2: &[Complex64], top: f64) -> bool {
    let s = singular_values(&RectMatrix::from_columns(&[y1.to_vec(), y2.to_vec()]));
    s.len() > 1 && s[1] > PAIR_TOL * top
}

fn normalized(v: &[Complex64]) -> Vec<Complex64> {
    let nv = norm(v);
    v.iter().map(|z| z / nv).collect()
}

/// Dimension of the span of the given vectors when it is numerically
/// unambiguous.
fn span_dimension(vectors: &[&[Complex64]]) -> Option<usize> {
    let cols: Vec<Vec<Complex64>> = vectors.iter().map(|v| normalized(v)).collect();
    let sv = singular_values(&RectMatrix::from_columns(&cols));
    let dim = sv.iter().filter(|&&x| x > DIM_HI).count();
    if sv.iter().any(|x| (DIM_LO..=DIM_HI).contains(x)) {
        None
    } else {
        Some(dim)
    }
}

fn add_scaled(acc: &mut [Complex64], c: Complex64, v: &[Complex64]) {
    acc.iter_mut().zip(v).for_each(|(a, b)| *a += c * b);
}

fn row(m: &RectMatrix, i: usize) -> Vec<Complex64> {
    (0..m.cols).map(|j| m.get(i, j)).collect()
}

fn two_term(x1: &[Complex64], g1: &[Complex64], x2: &[Complex64], g2: &[Complex64]) -> ComplexMatrix {
    &ComplexMatrix::outer(x1, g1) + &ComplexMatrix::outer(x2, g2)
}

/// Roots of unity `exp(2πi j/q)`, `q = 2, 3, ...`, `gcd(j, q) = 1`.
fn phase_candidates() -> impl Iterator<Item = Complex64> {
    (2u32..=24).flat_map(|q| {
        (1..q).filter(move |&j| gcd(j, q) == 1).map(move |j| {
            Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / q as f64)
        })
    })
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn far_from_one(z: Complex64) -> bool {
    (z - ONE).norm() >= ALPHA_GAP
}

/// Subcase data for `dim = 3`: the modulus equation for `α` and the
/// closed forms of `λ` and `β`, as functions of `α` and `λ3`.
#[derive(Debug, Clone, Copy)]
struct Subcase {
    number: u8,
    r: usize,
    s: usize,
}

impl Subcase {
    fn select(r: usize, s: usize) -> Self {
        let number = if s == 0 {
            1
        } else if r == 0 {
            2
        } else if r == 1 && s == 1 {
            3
        } else if r == 1 {
            4
        } else if s == 1 {
            5
        } else {
            6
        };
        Self { number, r, s }
    }

    /// `|α|` solving the subcase's modulus equation.
    fn alpha_modulus(&self, lambda3: Complex64) -> f64 {
        let l = lambda3.norm();
        let (r, s) = (self.r as f64, self.s as f64);
        match self.number {
            1 => l.powf((1.0 - r) / r),
            2 => l.powf((1.0 - s) / s),
            3 => l.powf(-0.5),
            4 => l.powf(-s / (s + 1.0)),
            5 => l.powf(-r / (r + 1.0)),
            _ => l.powf((1.0 - r - s) / (r + s)),
        }
    }

    /// The second eigenvalue `λ`.
    fn lambda(&self, alpha: Complex64, lambda3: Complex64) -> Complex64 {
        let (r, s) = (self.r as u32, self.s as u32);
        match self.number {
            1 => alpha.powu(r) * lambda3.powu(r - 1),
            2 => alpha.powu(s) * lambda3.powu(s - 1),
            3 => alpha * alpha * lambda3,
            4 => alpha.powu(s + 1) * lambda3.powu(s),
            5 => alpha.powu(r + 1) * lambda3.powu(r),
            _ => (alpha * lambda3).powu(r + s - 1) * alpha,
        }
    }

    /// Coefficient `β` with `B^r A B^s x2 = (λ1+λ2) β x1 + λ x2` (or the
    /// analogue on `Ax1, Ax2` when `r = 0`).
    fn beta(&self, alpha: Complex64, lambda3: Complex64) -> Complex64 {
        let mu = alpha * lambda3;
        let (r, s) = (self.r as i32, self.s as i32);
        let sum = |from: i32, to: i32, f: &dyn Fn(i32) -> Complex64| -> Complex64 {
            (from..=to).map(f).sum()
        };
        match self.number {
            1 => sum(2, r, &|i| mu.powi(i - 2) * alpha),
            2 => sum(2, s, &|i| mu.powi(i - 2) * alpha),
            3 => ONE,
            4 => ONE + sum(2, s, &|i| mu.powi(i - 1)),
            5 => ONE + sum(2, r, &|i| mu.powi(i - 1) * alpha),
            _ => ONE + sum(2, s, &|j| mu.powi(j - 1)) + sum(2, r, &|i| mu.powi(i + s - 2) * alpha),
        }
    }
}

struct Builder<'a> {
    a: &'a ComplexMatrix,
    r: usize,
    s: usize,
    tol: f64,
}

impl Builder<'_> {
    fn order(&self) -> usize {
        self.r + self.s
    }

    fn try_pair(&self, x1: &[Complex64], x2: &[Complex64], rng: &mut ChaCha8Rng) -> Option<WitnessResult> {
        let x3 = self.a.mat_vec(x1);
        let x4 = self.a.mat_vec(x2);
        if span_dimension(&[x1, x2])? != 2 {
            return None;
        }
        match span_dimension(&[x1, x2, &x3, &x4])? {
            4 if self.order() == 1 => self.first_order(x1, x2, &x3, &x4),
            4 => self.case1(x1, x2, &x3, &x4),
            3 => self
                .case2(x1, x2, &x3, &x4)
                .or_else(|| self.case2(x2, x1, &x4, &x3)),
            2 => self.compressed(&[x1.to_vec(), x2.to_vec()], rng, CaseTag::Case3),
            _ => None,
        }
    }

    fn case1(&self, x1: &[Complex64], x2: &[Complex64], x3: &[Complex64], x4: &[Complex64]) -> Option<WitnessResult> {
        let dual = pseudo_inverse(&RectMatrix::from_columns(&[
            x1.to_vec(),
            x2.to_vec(),
            x3.to_vec(),
            x4.to_vec(),
        ]));
        let f: Vec<Vec<Complex64>> = (0..4).map(|i| row(&dual, i)).collect();
        let power = (self.order() - 1) as u32;
        let alpha = phase_candidates().find(|a| far_from_one(a.powu(power)))?;
        let g1: Vec<Complex64> = f[0].iter().zip(&f[2]).map(|(a, b)| a + b).collect();
        let g2: Vec<Complex64> = f[1].iter().zip(&f[3]).map(|(a, b)| alpha * a + b).collect();
        let b = two_term(x1, &g1, x2, &g2);
        self.verify(b, CaseTag::Case1, vec![ONE, alpha.powu(power)], Some(alpha), None)
    }

    fn first_order(&self, x1: &[Complex64], x2: &[Complex64], x3: &[Complex64], x4: &[Complex64]) -> Option<WitnessResult> {
        let dual = pseudo_inverse(&RectMatrix::from_columns(&[x3.to_vec(), x4.to_vec()]));
        let alpha = Complex64::new(-1.0, 0.0);
        let h2: Vec<Complex64> = row(&dual, 1).iter().map(|z| alpha * z).collect();
        let b = two_term(x1, &row(&dual, 0), x2, &h2);
        self.verify(b, CaseTag::FirstOrder, vec![ONE, alpha], Some(alpha), None)
    }

    fn case2(&self, x1: &[Complex64], x2: &[Complex64], x3: &[Complex64], x4: &[Complex64]) -> Option<WitnessResult> {
        if span_dimension(&[x1, x3, x4])? != 3 {
            return None;
        }
        let dual = pseudo_inverse(&RectMatrix::from_columns(&[x1.to_vec(), x3.to_vec(), x4.to_vec()]));
        let (f1, f3, f4) = (row(&dual, 0), row(&dual, 1), row(&dual, 2));
        let coeff = |f: &[Complex64]| -> Complex64 { f.iter().zip(x2).map(|(a, b)| a * b).sum() };
        let (l1, l2, l3) = (coeff(&f1), coeff(&f3), coeff(&f4));
        // x2 must lie in span{x1, x3, x4} with a genuine x4 component
        let mut recon = vec![ZERO; x1.len()];
        add_scaled(&mut recon, l1, x1);
        add_scaled(&mut recon, l2, x3);
        add_scaled(&mut recon, l3, x4);
        let miss: f64 = recon.iter().zip(x2).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt();
        if miss > DIM_HI * norm(x2) || l3.norm() * norm(x4) <= DIM_HI * norm(x2) {
            return None;
        }

        let sub = Subcase::select(self.r, self.s);
        let modulus = sub.alpha_modulus(l3);
        let (alpha, lambda) = phase_candidates()
            .map(|ph| ph * modulus)
            .map(|a| (a, sub.lambda(a, l3)))
            .find(|&(_, lam)| far_from_one(lam) && (lam.norm() - 1.0).abs() < 1e-9)?;
        let beta = sub.beta(alpha, l3);
        let c = l1 + l2;
        let small = |z: Complex64, scale: f64| z.norm() <= 1e-12 * scale.max(1.0);
        let (g1c, g2c) = if small(c, l1.norm() + l2.norm()) || small(beta, 1.0) {
            (ZERO, ONE)
        } else {
            (ONE, (lambda - ONE) / (c * beta))
        };

        let g1: Vec<Complex64> = f1.iter().zip(&f3).map(|(a, b)| a + b).collect();
        let g2: Vec<Complex64> = f4.iter().map(|z| alpha * z).collect();
        let b = two_term(x1, &g1, x2, &g2);

        let (u, v) = if self.r == 0 { (x3, x4) } else { (x1, x2) };
        let mut eigvec = vec![ZERO; x1.len()];
        add_scaled(&mut eigvec, g1c, u);
        add_scaled(&mut eigvec, g2c, v);
        self.verify(
            b,
            CaseTag::Case2(sub.number),
            vec![ONE, lambda],
            Some(alpha),
            Some((eigvec, lambda)),
        )
    }

    /// Works on `X = [v1 v2]` and a left inverse `P`: picks an invertible
    /// `B1` with `tr(B1^(r+s) P A X) = 0` and sets `B = X B1 P`.
    fn compressed(&self, basis: &[Vec<Complex64>], rng: &mut ChaCha8Rng, tag: CaseTag) -> Option<WitnessResult> {
        let x = RectMatrix::from_columns(basis);
        let p = pseudo_inverse(&x);
        let n = self.a.dim();
        let ax: Vec<Vec<Complex64>> = basis.iter().map(|v| self.a.mat_vec(v)).collect();
        // C = P A X (2x2)
        let c = ComplexMatrix::from_fn(2, |i, j| (0..n).map(|t| p.get(i, t) * ax[j][t]).sum());
        let c_sv = svd(&RectMatrix::from(&c));
        if c_sv.condition() > 1e8 {
            return None;
        }
        for _ in 0..8 {
            let cond = 1.0 + 3.0 * rng.random::<f64>();
            let sm = random::invertible(rng, 2, cond);
            let sinv = sm.inverse()?;
            let cp = &(&sinv * &c) * &sm;
            let (c11, c22) = (cp[(0, 0)], cp[(1, 1)]);
            let scale = c.frobenius_norm();
            if c11.norm() < 1e-3 * scale || c22.norm() < 1e-3 * scale {
                continue;
            }
            let target = -c11 / c22;
            let omega = Complex64::from_polar(
                target.norm().powf(1.0 / self.order() as f64),
                target.arg() / self.order() as f64,
            );
            let b1 = &(&sm * &ComplexMatrix::diag(&[ONE, omega])) * &sinv;
            // B = X B1 P
            let xb1: Vec<Vec<Complex64>> = (0..2)
                .map(|j| (0..n).map(|t| basis[0][t] * b1[(0, j)] + basis[1][t] * b1[(1, j)]).collect())
                .collect();
            let b = two_term(&xb1[0], &row(&p, 0), &xb1[1], &row(&p, 1));
            // B1^N C has trace 0, so its eigenvalues are ±sqrt(-det)
            let det = omega.powu(self.order() as u32) * (c[(0, 0)] * c[(1, 1)] - c[(0, 1)] * c[(1, 0)]);
            let mu = (-det).sqrt();
            if let Some(w) = self.verify(b, tag, vec![mu, -mu], None, None) {
                return Some(w);
            }
        }
        None
    }

    fn verify(
        &self,
        b: ComplexMatrix,
        case: CaseTag,
        predicted: Vec<Complex64>,
        alpha: Option<Complex64>,
        eigenpair: Option<(Vec<Complex64>, Complex64)>,
    ) -> Option<WitnessResult> {
        if rank(&b, PAIR_TOL) > 2 {
            return None;
        }
        let prod = sandwich(&b, self.a, self.r, self.s);
        if let Some((v, lam)) = eigenpair {
            let pv = prod.mat_vec(&v);
            let res: f64 = pv.iter().zip(&v).map(|(p, x)| (p - lam * x).norm_sqr()).sum::<f64>().sqrt();
            if res > self.tol * prod.frobenius_norm().max(1.0) * norm(&v) {
                return None;
            }
        }
        let spectrum = peripheral_spectrum(&prod, self.tol).ok()?;
        if spectrum.len() < 2 || !predicted.iter().all(|&z| spectrum.contains(z, self.tol)) {
            return None;
        }
        Some(WitnessResult { found: true, witness: b, spectrum, case, predicted, alpha })
    }
}

/// Decides rank-one-ness of `A` (or `A^*` when `skew`) by the peripheral
/// criterion: random rank-two samples plus the deterministic witness.
pub fn is_rank_one_by_criterion(
    a: &ComplexMatrix,
    r: usize,
    s: usize,
    skew: bool,
    sample_budget: usize,
) -> Result<bool> {
    Ok(rank_one_criterion(a, r, s, skew, sample_budget, &WitnessConfig::default())?.rank_one)
}

pub fn rank_one_criterion(
    a: &ComplexMatrix,
    r: usize,
    s: usize,
    skew: bool,
    sample_budget: usize,
    cfg: &WitnessConfig,
) -> Result<CriterionReport> {
    if a.is_zero() {
        return Err(Error::ZeroOperator);
    }
    if r + s == 0 {
        return Err(Error::InvalidConfig("r + s must be at least 1".into()));
    }
    let target = if skew { a.adjoint() } else { a.clone() };
    match construct_witness_with(&target, r, s, cfg) {
        Ok(w) => {
            return Ok(CriterionReport {
                rank_one: false,
                witness: Some(w),
                sampled_counterexample: None,
                samples_checked: 0,
            })
        }
        Err(Error::RankTooLow) => {}
        Err(e) => return Err(e),
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x9e37_79b9_7f4a_7c15);
    let n = a.dim();
    for k in 0..sample_budget {
        let b = random::rank_two(&mut rng, n);
        let sp = peripheral_spectrum(&sandwich(&b, &target, r, s), cfg.tol)?;
        if sp.len() >= 2 {
            return Ok(CriterionReport {
                rank_one: false,
                witness: None,
                sampled_counterexample: Some(b),
                samples_checked: k + 1,
            });
        }
    }
    Ok(CriterionReport {
        rank_one: true,
        witness: None,
        sampled_counterexample: None,
        samples_checked: sample_budget,
    })
}
