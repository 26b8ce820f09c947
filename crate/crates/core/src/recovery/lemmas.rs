use std::collections::VecDeque;

use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::densela::svd::{numerical_rank, pseudo_inverse};
use crate::densela::{inner, random, ComplexMatrix, RectMatrix, ONE};
use crate::error::{Error, Result};

/// Result of the scalar-power check with both halves exposed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScalarPowerOutcome {
    pub holds: bool,
    /// Largest `|<Ax,x> - <Bx,x>^n|` over the sampled unit vectors.
    pub sampled_defect: f64,
    /// `c = tr(B)/dim` when `B = cI` and `A = c^n I`.
    pub scalar: Option<Complex64>,
}

/// `<Ax,x> = <Bx,x>^n` for all unit `x` holds exactly when `B = cI` and
/// `A = c^n I`. Checks both sides and reports their common answer.
pub fn scalar_power_test<R: Rng + ?Sized>(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    n_exp: usize,
    trials: usize,
    tol: f64,
    rng: &mut R,
) -> Result<bool> {
    Ok(scalar_power_outcome(a, b, n_exp, trials, tol, rng)?.holds)
}

pub fn scalar_power_outcome<R: Rng + ?Sized>(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    n_exp: usize,
    trials: usize,
    tol: f64,
    rng: &mut R,
) -> Result<ScalarPowerOutcome> {
    if n_exp < 2 {
        return Err(Error::InvalidConfig(format!("exponent must be at least 2, got {n_exp}")));
    }
    if trials == 0 {
        return Err(Error::InvalidConfig("trials must be at least 1".into()));
    }
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(format!("{}x{0} against {}x{1}", a.dim(), b.dim())));
    }
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroOperator);
    }
    let n = a.dim();
    let e = n_exp as u32;
    let scale = 1.0f64.max(a.frobenius_norm()).max(b.frobenius_norm().powi(n_exp as i32));

    let mut sampled_defect: f64 = 0.0;
    for _ in 0..trials {
        let x = random::unit_vector(rng, n);
        let lhs = inner(&a.mat_vec(&x), &x);
        let rhs = inner(&b.mat_vec(&x), &x).powu(e);
        sampled_defect = sampled_defect.max((lhs - rhs).norm());
    }
    let sampled = sampled_defect <= tol * scale;

    let c = b.trace() / n as f64;
    let id = ComplexMatrix::identity(n);
    let b_scalar = b.distance(&id.scale(c)) <= tol * b.frobenius_norm().max(1.0);
    let a_scalar = a.distance(&id.scale(c.powu(e))) <= tol * scale;
    let closed = b_scalar && a_scalar;

    if sampled != closed {
        return Err(Error::InconsistentWithLemma(format!(
            "sampled check says {sampled} (defect {sampled_defect:e}), scalar form says {closed}"
        )));
    }
    Ok(ScalarPowerOutcome { holds: closed, sampled_defect, scalar: closed.then_some(c) })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WignerKind {
    Unitary,
    Antiunitary,
    Neither,
}

/// Overlaps below this are not used to propagate phases.
const PHASE_LINK: f64 = 1e-6;

/// Given pairs `(x_j, T x_j)` of unit vectors with the `x_j` spanning, decides
/// whether `T` agrees, up to a phase on each vector, with a unitary `U`
/// (`T x = U x`) or an antiunitary map (`T x = U conj(x)`).
pub fn wigner_check(pairs: &[(Vec<Complex64>, Vec<Complex64>)], tol: f64) -> Result<WignerKind> {
    let n = pairs.first().map(|p| p.0.len()).ok_or(Error::SpanDeficient)?;
    if pairs.iter().any(|(x, y)| x.len() != n || y.len() != n) {
        return Err(Error::DimensionMismatch("all vectors must have the same length".into()));
    }
    let xs: Vec<Vec<Complex64>> = pairs.iter().map(|p| p.0.clone()).collect();
    let ys: Vec<Vec<Complex64>> = pairs.iter().map(|p| p.1.clone()).collect();
    if numerical_rank(&RectMatrix::from_columns(&xs), 1e-10) < n {
        return Err(Error::SpanDeficient);
    }
    let k = pairs.len();
    let gx = gram(&xs);
    let gy = gram(&ys);
    for i in 0..k {
        for j in 0..k {
            if (gx[i][j].norm() - gy[i][j].norm()).abs() > tol {
                return Ok(WignerKind::Neither);
            }
        }
    }
    if realizable(&xs, &ys, tol) {
        return Ok(WignerKind::Unitary);
    }
    let conj: Vec<Vec<Complex64>> = xs.iter().map(|x| x.iter().map(|z| z.conj()).collect()).collect();
    if realizable(&conj, &ys, tol) {
        return Ok(WignerKind::Antiunitary);
    }
    Ok(WignerKind::Neither)
}

fn gram(vs: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
    vs.iter().map(|a| vs.iter().map(|b| inner(a, b)).collect()).collect()
}

// Looks for phases φ_j and a unitary U with U x_j = φ_j y_j. Phases are
// fixed along a breadth-first tree of non-orthogonal pairs, since
// <x_i, x_j> = φ_i conj(φ_j) <y_i, y_j> must hold.
fn realizable(xs: &[Vec<Complex64>], ys: &[Vec<Complex64>], tol: f64) -> bool {
    let k = xs.len();
    let n = xs[0].len();
    let mut phase: Vec<Option<Complex64>> = vec![None; k];
    for root in 0..k {
        if phase[root].is_some() {
            continue;
        }
        phase[root] = Some(ONE);
        let mut queue = VecDeque::from([root]);
        while let Some(i) = queue.pop_front() {
            let pi = phase[i].expect("queued vertices have phases");
            for j in 0..k {
                if phase[j].is_some() {
                    continue;
                }
                let gy = inner(&ys[i], &ys[j]);
                if gy.norm() <= PHASE_LINK {
                    continue;
                }
                let cj = inner(&xs[i], &xs[j]) / (pi * gy);
                phase[j] = Some(cj.conj() / cj.norm());
                queue.push_back(j);
            }
        }
    }
    let zs: Vec<Vec<Complex64>> = ys
        .iter()
        .zip(&phase)
        .map(|(y, p)| y.iter().map(|z| z * p.unwrap_or(ONE)).collect())
        .collect();
    // U = Z X^+
    let xp = pseudo_inverse(&RectMatrix::from_columns(xs));
    let u = ComplexMatrix::from_fn(n, |r, c| (0..k).map(|t| zs[t][r] * xp.get(t, c)).sum());
    let fits = xs.iter().zip(&zs).all(|(x, z)| {
        let ux = u.mat_vec(x);
        ux.iter().zip(z).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt() <= tol.max(1e-12) * 10.0
    });
    let defect = (&(&u * &u.adjoint()) - &ComplexMatrix::identity(n)).frobenius_norm();
    fits && defect <= tol.max(1e-12) * 10.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::densela::ZERO;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn probe_set(n: usize) -> Vec<Vec<Complex64>> {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let mut xs: Vec<Vec<Complex64>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { ONE } else { ZERO }).collect())
            .collect();
        for i in 0..n - 1 {
            let mut v = vec![ZERO; n];
            v[i] = c(s, 0.0);
            v[i + 1] = c(s, 0.0);
            xs.push(v.clone());
            v[i + 1] = c(0.0, s);
            xs.push(v);
        }
        xs
    }

    #[test]
    fn lemma_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let cc = Complex64::from_polar(1.0, std::f64::consts::PI / 5.0);
        let b = ComplexMatrix::identity(3).scale(cc);
        let a = ComplexMatrix::identity(3).scale(cc.powu(3));
        assert!(scalar_power_test(&a, &b, 3, 20, 1e-9, &mut rng).unwrap());

        let a = ComplexMatrix::real_diag(&[1.0, 2.0]);
        assert!(!scalar_power_test(&a, &ComplexMatrix::identity(2), 2, 20, 1e-9, &mut rng).unwrap());

        let z = ComplexMatrix::zeros(2);
        assert_eq!(scalar_power_test(&z, &z, 2, 5, 1e-9, &mut rng), Err(Error::ZeroOperator));
        assert!(scalar_power_test(&a, &a, 1, 5, 1e-9, &mut rng).is_err());
    }

    #[test]
    fn scalar_b_with_nilpotent_part_in_a_fails_both_ways() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let b = ComplexMatrix::identity(2).scale(c(0.0, 1.0));
        let mut a = ComplexMatrix::identity(2).scale(c(0.0, 1.0).powu(2));
        a[(0, 1)] = ONE;
        let out = scalar_power_outcome(&a, &b, 2, 30, 1e-9, &mut rng).unwrap();
        assert!(!out.holds && out.sampled_defect > 1e-3);
    }

    #[test]
    fn wigner_unitary_and_antiunitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let u = random::unitary(&mut rng, 3);
        let xs = probe_set(3);

        let pairs: Vec<_> = xs.iter().map(|x| (x.clone(), u.mat_vec(x))).collect();
        assert_eq!(wigner_check(&pairs, 1e-9).unwrap(), WignerKind::Unitary);

        // arbitrary phases on each image do not matter
        let pairs: Vec<_> = xs
            .iter()
            .enumerate()
            .map(|(i, x)| {
                let ph = Complex64::from_polar(1.0, 0.7 * i as f64);
                (x.clone(), u.mat_vec(x).iter().map(|z| z * ph).collect())
            })
            .collect();
        assert_eq!(wigner_check(&pairs, 1e-9).unwrap(), WignerKind::Unitary);

        let pairs: Vec<_> = xs
            .iter()
            .map(|x| {
                let xc: Vec<Complex64> = x.iter().map(|z| z.conj()).collect();
                (x.clone(), u.mat_vec(&xc))
            })
            .collect();
        assert_eq!(wigner_check(&pairs, 1e-9).unwrap(), WignerKind::Antiunitary);
    }

    #[test]
    fn wigner_rejects_scaling_and_deficient_spans() {
        let xs = probe_set(2);
        let pairs: Vec<_> = xs
            .iter()
            .enumerate()
            .map(|(i, x)| (x.clone(), if i == 0 { x.iter().map(|z| z * 2.0).collect() } else { x.clone() }))
            .collect();
        assert_eq!(wigner_check(&pairs, 1e-9).unwrap(), WignerKind::Neither);

        let e1 = vec![ONE, ZERO];
        assert_eq!(wigner_check(&[(e1.clone(), e1)], 1e-9), Err(Error::SpanDeficient));
    }
}
