use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::LinearMapTable;
use crate::densela::{peripheral_spectrum, random, spectra_equal, ComplexMatrix, PeripheralSpectrum};
use crate::error::{Error, Result};
use crate::products;
use crate::seqdesc::ProductDescriptor;

/// Kinds of operand tuples, cycled by trial index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TupleKind {
    Gaussian,
    MatrixUnits,
    RankOne,
    IdentityPadded,
}

impl TupleKind {
    fn for_trial(t: usize) -> Self {
        match t % 4 {
            0 => TupleKind::Gaussian,
            1 => TupleKind::MatrixUnits,
            2 => TupleKind::RankOne,
            _ => TupleKind::IdentityPadded,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Counterexample {
    pub trial: usize,
    pub kind: TupleKind,
    pub operands: Vec<ComplexMatrix>,
    /// `σ_π` of the product of the images.
    pub image_spectrum: PeripheralSpectrum,
    /// `σ_π` of the product of the operands.
    pub spectrum: PeripheralSpectrum,
}

#[derive(Debug, Clone, Serialize)]
pub struct PreservationOutcome {
    pub preserved: bool,
    pub trials_run: usize,
    pub counterexample: Option<Counterexample>,
}

/// Random `k`-tuple of `n x n` operands of the given kind.
pub fn sample_tuple<R: Rng + ?Sized>(rng: &mut R, kind: TupleKind, k: usize, n: usize) -> Vec<ComplexMatrix> {
    match kind {
        TupleKind::Gaussian => (0..k).map(|_| random::gaussian_matrix(rng, n)).collect(),
        TupleKind::MatrixUnits => (0..k)
            .map(|_| ComplexMatrix::unit(n, rng.random_range(0..n), rng.random_range(0..n)))
            .collect(),
        TupleKind::RankOne => (0..k)
            .map(|_| ComplexMatrix::outer(&random::gaussian_vector(rng, n), &random::gaussian_vector(rng, n)))
            .collect(),
        TupleKind::IdentityPadded => {
            let keep = rng.random_range(0..k);
            (0..k)
                .map(|i| {
                    if i == keep || rng.random_bool(0.5) {
                        random::gaussian_matrix(rng, n)
                    } else {
                        ComplexMatrix::identity(n)
                    }
                })
                .collect()
        }
    }
}

/// Samples `trials` operand tuples and checks
/// `σ_π(Φ(A_1) * ... * Φ(A_k)) = σ_π(A_1 * ... * A_k)` for the product shape
/// `d`, plain or skew. Stops at the first violation.
pub fn verify_preservation(
    phi: &LinearMapTable,
    d: &ProductDescriptor,
    trials: usize,
    skew: bool,
    tol: f64,
    seed: u64,
) -> Result<PreservationOutcome> {
    if trials == 0 {
        return Err(Error::InvalidConfig("trials must be at least 1".into()));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidConfig("tol must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let eval = |ops: &[ComplexMatrix]| {
        if skew {
            products::evaluate_skew(d, ops)
        } else {
            products::evaluate(d, ops)
        }
    };
    for t in 0..trials {
        let kind = TupleKind::for_trial(t);
        let ops = sample_tuple(&mut rng, kind, d.k(), phi.n_in());
        let images = ops.iter().map(|a| phi.apply(a)).collect::<Result<Vec<_>>>()?;
        let spectrum = peripheral_spectrum(&eval(&ops)?, tol)?;
        let image_spectrum = peripheral_spectrum(&eval(&images)?, tol)?;
        if !spectra_equal(&image_spectrum, &spectrum, tol) {
            return Ok(PreservationOutcome {
                preserved: false,
                trials_run: t + 1,
                counterexample: Some(Counterexample { trial: t, kind, operands: ops, image_spectrum, spectrum }),
            });
        }
    }
    Ok(PreservationOutcome { preserved: true, trials_run: trials, counterexample: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recovery::root_of_unity;
    use crate::seqdesc::validate;

    #[test]
    fn identity_map_preserves_everything() {
        let phi = LinearMapTable::identity(3);
        let d = validate(3, &[1, 2, 3, 2, 2]).unwrap();
        assert!(verify_preservation(&phi, &d, 40, false, 1e-8, 1).unwrap().preserved);
        assert!(verify_preservation(&phi, &d, 40, true, 1e-8, 1).unwrap().preserved);
    }

    #[test]
    fn similarity_preserves_jordan_triple() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let t = random::invertible(&mut rng, 3, 10.0);
        let phi = LinearMapTable::similarity(&t, root_of_unity(3, 1)).unwrap();
        let d = validate(2, &[2, 1, 2]).unwrap();
        assert!(verify_preservation(&phi, &d, 100, false, 1e-8, 2).unwrap().preserved);
    }

    #[test]
    fn transpose_breaks_non_quasi_semi_jordan() {
        let phi = LinearMapTable::transpose_similarity(&ComplexMatrix::identity(3), root_of_unity(1, 0)).unwrap();
        let d = validate(3, &[1, 2, 3, 2, 2]).unwrap();
        assert!(!d.is_quasi_semi_jordan());
        let out = verify_preservation(&phi, &d, 200, false, 1e-8, 3).unwrap();
        assert!(!out.preserved);
        let ce = out.counterexample.unwrap();
        // replay the counterexample by hand
        let images: Vec<ComplexMatrix> = ce.operands.iter().map(|a| a.transpose()).collect();
        let lhs = peripheral_spectrum(&products::evaluate(&d, &images).unwrap(), 1e-8).unwrap();
        let rhs = peripheral_spectrum(&products::evaluate(&d, &ce.operands).unwrap(), 1e-8).unwrap();
        assert!(!spectra_equal(&lhs, &rhs, 1e-8));
    }

    #[test]
    fn zero_trials_rejected_and_degenerate_tables_run() {
        let phi = LinearMapTable::identity(2);
        let bad = LinearMapTable::new(2, 2, vec![ComplexMatrix::identity(2); 4]).unwrap();
        let d = validate(2, &[1, 2]).unwrap();
        assert!(verify_preservation(&phi, &d, 0, false, 1e-8, 0).is_err());
        // a valid but non-preserving table still runs
        assert!(verify_preservation(&bad, &d, 8, false, 1e-8, 0).is_ok());
    }
}
