//! Generalized products, skew generalized products, and the closed form for
//! the peripheral spectrum of a rank-one sandwich `(x⊗f)^r A (x⊗f)^s`.

use num_complex::Complex64;

use crate::densela::{
    norm, pair, peripheral_spectrum, ComplexMatrix, PeripheralSpectrum, RankOneOperator,
};
use crate::error::{Error, Result};
use crate::seqdesc::ProductDescriptor;

/// A descriptor together with one operand per slot.
#[derive(Debug, Clone)]
pub struct ProductInstance {
    descriptor: ProductDescriptor,
    operands: Vec<ComplexMatrix>,
}

impl ProductInstance {
    pub fn new(descriptor: ProductDescriptor, operands: Vec<ComplexMatrix>) -> Result<Self> {
        check_operands(&descriptor, &operands)?;
        Ok(Self { descriptor, operands })
    }

    pub fn descriptor(&self) -> &ProductDescriptor {
        &self.descriptor
    }

    pub fn operands(&self) -> &[ComplexMatrix] {
        &self.operands
    }

    pub fn dim(&self) -> usize {
        self.operands[0].dim()
    }

    pub fn evaluate(&self) -> ComplexMatrix {
        product(&self.descriptor, &self.operands, false)
    }

    pub fn evaluate_skew(&self) -> ComplexMatrix {
        product(&self.descriptor, &self.operands, true)
    }
}

fn check_operands(d: &ProductDescriptor, ops: &[ComplexMatrix]) -> Result<()> {
    if ops.len() != d.k() {
        return Err(Error::DimensionMismatch(format!(
            "descriptor has {} slots but {} operands were given",
            d.k(),
            ops.len()
        )));
    }
    let n = ops[0].dim();
    if let Some(bad) = ops.iter().find(|m| m.dim() != n) {
        return Err(Error::DimensionMismatch(format!(
            "operands mix dimensions {} and {}",
            n,
            bad.dim()
        )));
    }
    Ok(())
}

// Left-to-right product; with `skew`, the factor at the distinguished
// position is replaced by its conjugate transpose.
fn product(d: &ProductDescriptor, ops: &[ComplexMatrix], skew: bool) -> ComplexMatrix {
    let mut acc: Option<ComplexMatrix> = None;
    for (pos, &slot) in d.seq().iter().enumerate() {
        let adjoint;
        let factor = if skew && pos == d.p() {
            adjoint = ops[slot - 1].adjoint();
            &adjoint
        } else {
            &ops[slot - 1]
        };
        acc = Some(match acc {
            None => factor.clone(),
            Some(left) => &left * factor,
        });
    }
    acc.expect("descriptor is nonempty")
}

/// `T_{i_1} ... T_{i_m}`.
pub fn evaluate(d: &ProductDescriptor, ops: &[ComplexMatrix]) -> Result<ComplexMatrix> {
    check_operands(d, ops)?;
    Ok(product(d, ops, false))
}

/// `T_{i_1} ... T_{i_p}^* ... T_{i_m}`.
pub fn evaluate_skew(d: &ProductDescriptor, ops: &[ComplexMatrix]) -> Result<ComplexMatrix> {
    check_operands(d, ops)?;
    Ok(product(d, ops, true))
}

/// The only eigenvalue of `(x⊗f)^r A (x⊗f)^s` that can be nonzero:
/// `<x,f>^(r+s-1) <Ax,f>`, which is also the trace of the product.
pub fn sandwich_eigenvalue(op: &RankOneOperator, a: &ComplexMatrix, r: usize, s: usize) -> Result<Complex64> {
    if r + s == 0 {
        return Err(Error::InvalidConfig("r + s must be at least 1".into()));
    }
    if op.dim() != a.dim() {
        return Err(Error::DimensionMismatch(format!(
            "rank-one operator on C^{} applied with a {}x{} matrix",
            op.dim(),
            a.dim(),
            a.dim()
        )));
    }
    let xf = op.pairing();
    let axf = pair(&a.mat_vec(op.x()), op.f());
    Ok(xf.powu((r + s - 1) as u32) * axf)
}

/// Peripheral spectrum of `(x⊗f)^r A (x⊗f)^s` from the closed form: `{τ}`
/// when `τ` is nonzero, `{0}` otherwise. `τ` counts as zero when
/// `|τ| <= tol * (1 + |A|_F |x| |f|)`.
pub fn sandwich_peripheral(
    op: &RankOneOperator,
    a: &ComplexMatrix,
    r: usize,
    s: usize,
    tol: f64,
) -> Result<PeripheralSpectrum> {
    let tau = sandwich_eigenvalue(op, a, r, s)?;
    let scale = 1.0 + a.frobenius_norm() * norm(op.x()) * norm(op.f());
    if tau.norm() <= tol * scale {
        Ok(PeripheralSpectrum::zero(tol))
    } else {
        Ok(PeripheralSpectrum::from_eigenvalues(&[tau], tol))
    }
}

/// Same spectrum computed the long way: form the product and run the
/// eigensolver.
pub fn sandwich_peripheral_by_eigensolver(
    op: &RankOneOperator,
    a: &ComplexMatrix,
    r: usize,
    s: usize,
    tol: f64,
) -> Result<PeripheralSpectrum> {
    let m = op.to_matrix();
    let prod = &(&m.pow(r) * a) * &m.pow(s);
    peripheral_spectrum(&prod, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::densela::{random, spectra_equal, DEFAULT_TOL};
    use crate::seqdesc::validate;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identities_multiply_to_identity() {
        let d = validate(3, &[2, 3, 3, 1, 3, 3, 2]).unwrap();
        let ops = vec![ComplexMatrix::identity(3); 3];
        assert_eq!(evaluate(&d, &ops).unwrap(), ComplexMatrix::identity(3));
    }

    #[test]
    fn jordan_triple_and_skew_triple() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = random::gaussian_matrix(&mut rng, 3);
        let b = random::gaussian_matrix(&mut rng, 3);
        let d = validate(2, &[2, 1, 2]).unwrap();
        let ops = vec![a.clone(), b.clone()];
        assert!(evaluate(&d, &ops).unwrap().distance(&(&(&b * &a) * &b)) < 1e-12);
        let skew = evaluate_skew(&d, &ops).unwrap();
        assert!(skew.distance(&(&(&b * &a.adjoint()) * &b)) < 1e-12);
    }

    #[test]
    fn skew_usual_product_of_identities() {
        let d = validate(2, &[1, 2]).unwrap();
        assert_eq!(d.p(), 0);
        let ops = vec![ComplexMatrix::identity(2); 2];
        assert_eq!(evaluate_skew(&d, &ops).unwrap(), ComplexMatrix::identity(2));
    }

    #[test]
    fn hermitian_distinguished_factor_makes_skew_trivial() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let d = validate(3, &[2, 1, 3, 2]).unwrap();
        let ops = vec![
            random::hermitian(&mut rng, 4),
            random::gaussian_matrix(&mut rng, 4),
            random::gaussian_matrix(&mut rng, 4),
        ];
        let plain = evaluate(&d, &ops).unwrap();
        let skew = evaluate_skew(&d, &ops).unwrap();
        assert!(plain.distance(&skew) < 1e-12 * plain.frobenius_norm());
    }

    #[test]
    fn sandwich_descriptor_matches_power_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for r in 0..4 {
            for s in 0..4 {
                if r + s == 0 {
                    continue;
                }
                let a = random::gaussian_matrix(&mut rng, 4);
                let b = random::gaussian_matrix(&mut rng, 4);
                let d = ProductDescriptor::sandwich(r, s);
                let got = evaluate(&d, &[a.clone(), b.clone()]).unwrap();
                // repeated squaring, then two multiplications
                let want = &(&b.pow(r) * &a) * &b.pow(s);
                assert!(got.distance(&want) <= 1e-10 * want.frobenius_norm(), "r={r} s={s}");
            }
        }
    }

    #[test]
    fn commuting_operands_reduce_to_powers() {
        let d = validate(3, &[3, 1, 3, 2, 2, 3]).unwrap();
        let ops = vec![
            ComplexMatrix::diag(&[c(1.0, 1.0), c(2.0, 0.0)]),
            ComplexMatrix::diag(&[c(0.5, 0.0), c(0.0, -1.0)]),
            ComplexMatrix::diag(&[c(-1.0, 0.0), c(1.5, 0.5)]),
        ];
        let want = &(&ops[0] * &ops[1].pow(2)) * &ops[2].pow(3);
        assert!(evaluate(&d, &ops).unwrap().distance(&want) < 1e-12);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let d = validate(2, &[1, 2]).unwrap();
        let ops = vec![ComplexMatrix::identity(2), ComplexMatrix::identity(3)];
        assert!(matches!(evaluate(&d, &ops), Err(Error::DimensionMismatch(_))));
        assert!(matches!(evaluate(&d, &ops[..1]), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn sandwich_closed_form_examples() {
        let x = vec![c(1.0, 0.0), c(0.0, 0.0)];
        let f = vec![c(1.0, 0.0), c(3.0, 0.0)];
        let op = RankOneOperator::new(x, f).unwrap();
        assert_eq!(op.pairing(), c(1.0, 0.0));
        let s = sandwich_peripheral(&op, &ComplexMatrix::identity(2), 1, 1, DEFAULT_TOL).unwrap();
        assert_eq!(s.points(), &[c(1.0, 0.0)]);

        let x = vec![c(1.0, 0.0), c(1.0, 0.0)];
        let f = vec![c(1.0, 0.0), c(-1.0, 0.0)];
        let op = RankOneOperator::new(x, f).unwrap();
        let a = ComplexMatrix::from_real_rows(&[&[1.0, 2.0], &[3.0, 4.0]]);
        for (r, s) in [(1, 1), (2, 0), (0, 2), (2, 3)] {
            let sp = sandwich_peripheral(&op, &a, r, s, DEFAULT_TOL).unwrap();
            assert_eq!(sp.points(), &[c(0.0, 0.0)]);
            assert_eq!(sp.radius(), 0.0);
        }
    }

    #[test]
    fn sandwich_closed_form_matches_eigensolver() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let op = RankOneOperator::new(
            random::gaussian_vector(&mut rng, 5),
            random::gaussian_vector(&mut rng, 5),
        )
        .unwrap();
        let a = random::gaussian_matrix(&mut rng, 5);
        let closed = sandwich_peripheral(&op, &a, 2, 1, DEFAULT_TOL).unwrap();
        let full = sandwich_peripheral_by_eigensolver(&op, &a, 2, 1, DEFAULT_TOL).unwrap();
        assert!(spectra_equal(&closed, &full, 1e-8), "{closed:?} vs {full:?}");
        // trace identity
        let m = op.to_matrix();
        let tr = (&(&m.pow(2) * &a) * &m).trace();
        assert!((tr - sandwich_eigenvalue(&op, &a, 2, 1).unwrap()).norm() < 1e-10 * (1.0 + tr.norm()));
    }
}
