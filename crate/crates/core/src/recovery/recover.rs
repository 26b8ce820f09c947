use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::table::NEG_ONE;
use super::{root_of_unity, LinearMapTable};
use crate::densela::svd::{nullspace, svd};
use crate::densela::{random, ComplexMatrix, RectMatrix, ONE, ZERO};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Form {
    Similarity,
    TransposeSimilarity,
    UnitarySimilarity,
    UnitaryTransposeSimilarity,
    NonStandard,
}

/// A named condition checked during recovery. `passed` is `None` for
/// conditions that are reported but cannot be checked from the map alone.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Constraint {
    pub name: String,
    pub passed: Option<bool>,
}

impl Constraint {
    fn check(name: &str, ok: bool) -> Self {
        Self { name: name.into(), passed: Some(ok) }
    }

    fn note(name: &str) -> Self {
        Self { name: name.into(), passed: None }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RecoveryReport {
    pub form: Form,
    /// `λ` (Banach model) or `c` (Hilbert model). Absent when nothing fits.
    pub scalar: Option<Complex64>,
    /// Index `k` with `λ = exp(2πi k/m)`; in the Hilbert model, 0 for `c = 1`
    /// and 1 for `c = -1`.
    pub root_index: Option<usize>,
    /// `T`, or `U` in the Hilbert model.
    pub transform: Option<ComplexMatrix>,
    /// `max |Φ(E_ij) - predicted(E_ij)|_F` for the reported hypothesis.
    pub residual: Option<f64>,
    pub checked_constraints: Vec<Constraint>,
    /// How many `(scalar, form)` hypotheses fit. More than one means the
    /// table is ambiguous.
    pub accepted_hypotheses: usize,
}

impl RecoveryReport {
    fn non_standard(constraints: Vec<Constraint>) -> Self {
        Self {
            form: Form::NonStandard,
            scalar: None,
            root_index: None,
            transform: None,
            residual: None,
            checked_constraints: constraints,
            accepted_hypotheses: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Shape {
    Plain,
    Transposed,
}

#[derive(Debug, Clone)]
struct Fit {
    index: usize,
    scalar: Complex64,
    shape: Shape,
    transform: ComplexMatrix,
    residual: f64,
    condition: f64,
}

// Solves Φ(E) T = λ T E (or λ T E^t) over all matrix units, returning the
// best-conditioned nullspace element.
fn solve_hypothesis(phi: &LinearMapTable, lambda: Complex64, shape: Shape, tol: f64) -> Option<(ComplexMatrix, f64)> {
    let n = phi.n_in();
    let nn = n * n;
    let mut sys = RectMatrix::zeros(nn * nn, nn);
    for i in 0..n {
        for j in 0..n {
            let img = phi.image(i, j);
            let block = (i * n + j) * nn;
            for a in 0..n {
                for b in 0..n {
                    let row = block + a * n + b;
                    // (Φ(E) T)[a,b] = Σ_c Φ(E)[a,c] T[c,b]
                    for c in 0..n {
                        sys.set(row, c * n + b, img[(a, c)]);
                    }
                    // (T E_ij)[a,b] = T[a,i] δ_{jb};  (T E_ji)[a,b] = T[a,j] δ_{ib}
                    let hit = match shape {
                        Shape::Plain => (b == j).then_some(i),
                        Shape::Transposed => (b == i).then_some(j),
                    };
                    if let Some(col) = hit {
                        let at = a * n + col;
                        sys.set(row, at, sys.get(row, at) - lambda);
                    }
                }
            }
        }
    }
    let null = nullspace(&sys, tol);
    let candidate = match null.len() {
        0 => return None,
        1 => null[0].clone(),
        _ => {
            // several solutions: a seeded generic combination is invertible
            // whenever any element is
            let mut rng = ChaCha8Rng::seed_from_u64(0x7a11);
            let w = random::gaussian_vector(&mut rng, null.len());
            (0..nn).map(|u| null.iter().zip(&w).map(|(v, c)| v[u] * c).sum()).collect()
        }
    };
    let t = ComplexMatrix::new(n, candidate).ok()?;
    let cond = svd(&RectMatrix::from(&t)).condition();
    Some((normalize(&t), cond))
}

/// Unit Frobenius norm, first entry of non-negligible size made positive real.
fn normalize(t: &ComplexMatrix) -> ComplexMatrix {
    let f = t.frobenius_norm();
    if f == 0.0 {
        return t.clone();
    }
    let lead = t
        .as_slice()
        .iter()
        .copied()
        .find(|z| z.norm() > 1e-8 * f)
        .unwrap_or(ONE);
    let phase = lead.conj() / lead.norm();
    t.scale(phase / f)
}

fn predicted(t: &ComplexMatrix, tinv: &ComplexMatrix, lambda: Complex64, e: &ComplexMatrix, shape: Shape) -> ComplexMatrix {
    let arg = match shape {
        Shape::Plain => e.clone(),
        Shape::Transposed => e.transpose(),
    };
    (&(t * &arg) * tinv).scale(lambda)
}

fn residual(phi: &LinearMapTable, t: &ComplexMatrix, tinv: &ComplexMatrix, lambda: Complex64, shape: Shape) -> f64 {
    let n = phi.n_in();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let want = predicted(t, tinv, lambda, &ComplexMatrix::unit(n, i, j), shape);
            worst = worst.max(phi.image(i, j).distance(&want));
        }
    }
    worst
}

// Evaluates every (root, shape) hypothesis; returns all fits that pass the
// conditioning and residual tests, in enumeration order, plus the best
// residual seen among invertible candidates.
fn fit_all(phi: &LinearMapTable, roots: &[(usize, Complex64)], tol: f64) -> (Vec<Fit>, Option<f64>) {
    let bound = tol * phi.scale().max(1.0);
    let mut fits = Vec::new();
    let mut best: Option<f64> = None;
    for &(index, scalar) in roots {
        for shape in [Shape::Plain, Shape::Transposed] {
            let Some((t, condition)) = solve_hypothesis(phi, scalar, shape, tol) else {
                continue;
            };
            if condition.is_nan() || condition >= 1.0 / tol {
                continue;
            }
            let Some(tinv) = t.inverse() else { continue };
            let res = residual(phi, &t, &tinv, scalar, shape);
            best = Some(best.map_or(res, |b: f64| b.min(res)));
            if res <= bound {
                fits.push(Fit { index, scalar, shape, transform: t, residual: res, condition });
            }
        }
    }
    (fits, best)
}

fn preflight(phi: &LinearMapTable, m: usize, tol: f64) -> Result<Option<RecoveryReport>> {
    if m < 2 {
        return Err(Error::InvalidConfig(format!("m must be at least 2, got {m}")));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidConfig("tol must be positive".into()));
    }
    if phi.n_in() != phi.n_out() {
        return Ok(Some(RecoveryReport::non_standard(vec![Constraint::check("n_in = n_out", false)])));
    }
    Ok(None)
}

/// Fits `Φ(A) = λ T A T^{-1}` or `Φ(A) = λ T A^t T^{-1}` with `λ^m = 1`.
pub fn recover_banach_form(phi: &LinearMapTable, m: usize, tol: f64) -> Result<RecoveryReport> {
    if let Some(r) = preflight(phi, m, tol)? {
        return Ok(r);
    }
    let roots: Vec<(usize, Complex64)> = (0..m).map(|k| (k, root_of_unity(m, k))).collect();
    let (fits, best) = fit_all(phi, &roots, tol);
    let mut constraints = vec![Constraint::check("n_in = n_out", true)];
    let Some(fit) = fits.first() else {
        constraints.push(Constraint::check("residual <= tol for some λ with λ^m = 1", false));
        let mut r = RecoveryReport::non_standard(constraints);
        r.residual = best;
        return Ok(r);
    };
    constraints.push(Constraint::check("λ^m = 1", true));
    constraints.push(Constraint::check("T invertible (cond < 1/tol)", fit.condition < 1.0 / tol));
    constraints.push(Constraint::check("residual <= tol", true));
    let form = match fit.shape {
        Shape::Plain => Form::Similarity,
        Shape::Transposed => {
            constraints.push(Constraint::note("quasi-semi-Jordan required"));
            Form::TransposeSimilarity
        }
    };
    Ok(RecoveryReport {
        form,
        scalar: Some(fit.scalar),
        root_index: Some(fit.index),
        transform: Some(fit.transform.clone()),
        residual: Some(fit.residual),
        checked_constraints: constraints,
        accepted_hypotheses: fits.len(),
    })
}

/// Fits `Φ(A) = c U A U^*` or `Φ(A) = c U A^t U^*` with `c ∈ {1, -1}` and `U`
/// unitary. `c = -1` with odd `m` is reported as non-standard.
pub fn recover_hilbert_form(phi: &LinearMapTable, m: usize, tol: f64) -> Result<RecoveryReport> {
    if let Some(r) = preflight(phi, m, tol)? {
        return Ok(r);
    }
    let roots = [(0, ONE), (1, NEG_ONE)];
    let (fits, best) = fit_all(phi, &roots, tol);
    let mut constraints = vec![Constraint::check("n_in = n_out", true)];
    let Some(fit) = fits.first() else {
        constraints.push(Constraint::check("residual <= tol for some c in {1, -1}", false));
        let mut r = RecoveryReport::non_standard(constraints);
        r.residual = best;
        return Ok(r);
    };
    constraints.push(Constraint::check("residual <= tol", true));

    // T/|T|_2 must be unitary
    let top = svd(&RectMatrix::from(&fit.transform)).max();
    let u = normalize_phase_only(&fit.transform.scale(Complex64::new(1.0 / top, 0.0)));
    let n = u.dim();
    let defect = (&(&u * &u.adjoint()) - &ComplexMatrix::identity(n)).frobenius_norm();
    let unitary = defect <= tol * (n as f64).sqrt().max(1.0);
    constraints.push(Constraint::check("U U^* = I", unitary));
    let parity_ok = !(m % 2 == 1 && fit.scalar == NEG_ONE);
    constraints.push(Constraint::check("c=1 whenever m is odd", parity_ok));

    let form = match (unitary && parity_ok, fit.shape) {
        (false, _) => Form::NonStandard,
        (true, Shape::Plain) => Form::UnitarySimilarity,
        (true, Shape::Transposed) => {
            constraints.push(Constraint::note("quasi-semi-Jordan required"));
            Form::UnitaryTransposeSimilarity
        }
    };
    Ok(RecoveryReport {
        form,
        scalar: Some(fit.scalar),
        root_index: Some(fit.index),
        transform: Some(u),
        residual: Some(fit.residual),
        checked_constraints: constraints,
        accepted_hypotheses: fits.len(),
    })
}

// Keeps the norm, fixes the phase of the leading entry.
fn normalize_phase_only(t: &ComplexMatrix) -> ComplexMatrix {
    let f = t.frobenius_norm();
    match t.as_slice().iter().copied().find(|z| z.norm() > 1e-8 * f) {
        Some(lead) if lead != ZERO => t.scale(lead.conj() / lead.norm()),
        _ => t.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    #[test]
    fn diagonal_similarity_round_trip() {
        let t = ComplexMatrix::real_diag(&[1.0, 2.0]);
        let phi = LinearMapTable::similarity(&t, ONE).unwrap();
        let rep = recover_banach_form(&phi, 3, 1e-9).unwrap();
        assert_eq!(rep.form, Form::Similarity);
        assert_eq!(rep.scalar, Some(ONE));
        assert!(rep.residual.unwrap() < 1e-10);
        let got = rep.transform.unwrap();
        assert!(got.distance(&normalize(&t)) < 1e-10, "{got:?}");
        assert_eq!(rep.accepted_hypotheses, 1);
    }

    #[test]
    fn transpose_with_cube_root() {
        let omega = root_of_unity(3, 1);
        let phi = LinearMapTable::transpose_similarity(&ComplexMatrix::identity(3), omega).unwrap();
        let rep = recover_banach_form(&phi, 3, 1e-9).unwrap();
        assert_eq!(rep.form, Form::TransposeSimilarity);
        assert_eq!(rep.scalar, Some(omega));
        assert_eq!(rep.root_index, Some(1));
    }

    #[test]
    fn embedding_is_non_standard() {
        let phi = LinearMapTable::corner_embedding(2, 3).unwrap();
        for rep in [recover_banach_form(&phi, 3, 1e-9).unwrap(), recover_hilbert_form(&phi, 3, 1e-9).unwrap()] {
            assert_eq!(rep.form, Form::NonStandard);
            assert_eq!(rep.checked_constraints[0], Constraint::check("n_in = n_out", false));
        }
    }

    #[test]
    fn wrong_root_order_is_non_standard() {
        // λ = i is not a cube root of unity
        let phi = LinearMapTable::similarity(&ComplexMatrix::identity(2), Complex64::new(0.0, 1.0)).unwrap();
        let rep = recover_banach_form(&phi, 3, 1e-9).unwrap();
        assert_eq!(rep.form, Form::NonStandard);
        assert!(recover_banach_form(&phi, 4, 1e-9).unwrap().form == Form::Similarity);
    }

    #[test]
    fn random_round_trips_are_exclusive() {
        let mut r = rng(9);
        for trial in 0..20 {
            let n = 2 + trial % 4;
            let m = 2 + trial % 4;
            let k = trial % m;
            let t = random::invertible(&mut r, n, 20.0);
            let transpose = trial % 3 == 0;
            let phi = if transpose {
                LinearMapTable::transpose_similarity(&t, root_of_unity(m, k)).unwrap()
            } else {
                LinearMapTable::similarity(&t, root_of_unity(m, k)).unwrap()
            };
            let rep = recover_banach_form(&phi, m, 1e-9).unwrap();
            let want = if transpose { Form::TransposeSimilarity } else { Form::Similarity };
            assert_eq!(rep.form, want, "trial {trial}");
            assert_eq!(rep.root_index, Some(k));
            assert_eq!(rep.accepted_hypotheses, 1, "trial {trial}");
            assert!(rep.transform.unwrap().distance(&normalize(&t)) < 1e-8);
        }
    }

    #[test]
    fn hilbert_forms_and_parity() {
        let mut r = rng(4);
        let u = random::unitary(&mut r, 3);
        let rep = recover_hilbert_form(&LinearMapTable::unitary_similarity(&u, 1.0).unwrap(), 3, 1e-9).unwrap();
        assert_eq!(rep.form, Form::UnitarySimilarity);
        assert_eq!(rep.scalar, Some(ONE));
        let got = rep.transform.unwrap();
        assert!((&(&got * &got.adjoint()) - &ComplexMatrix::identity(3)).frobenius_norm() < 1e-9);

        let neg_t = LinearMapTable::unitary_transpose_similarity(&u, -1.0).unwrap();
        let rep = recover_hilbert_form(&neg_t, 4, 1e-9).unwrap();
        assert_eq!(rep.form, Form::UnitaryTransposeSimilarity);
        assert_eq!(rep.scalar, Some(NEG_ONE));

        let neg = LinearMapTable::unitary_similarity(&u, -1.0).unwrap();
        let rep = recover_hilbert_form(&neg, 3, 1e-9).unwrap();
        assert_eq!(rep.form, Form::NonStandard);
        assert!(rep
            .checked_constraints
            .contains(&Constraint::check("c=1 whenever m is odd", false)));
    }

    #[test]
    fn non_unitary_similarity_fails_hilbert() {
        let t = ComplexMatrix::real_diag(&[1.0, 3.0]);
        let rep = recover_hilbert_form(&LinearMapTable::similarity(&t, ONE).unwrap(), 2, 1e-9).unwrap();
        assert_eq!(rep.form, Form::NonStandard);
        assert!(rep.checked_constraints.contains(&Constraint::check("U U^* = I", false)));
    }

    #[test]
    fn bad_m_rejected() {
        assert!(recover_banach_form(&LinearMapTable::identity(2), 1, 1e-9).is_err());
    }
}
