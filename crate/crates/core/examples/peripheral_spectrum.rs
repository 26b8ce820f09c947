//! Peripheral spectra of a few matrices, and σ_π(AB) = σ_π(BA).

use periph::densela::{eigenvalues, peripheral_spectrum, random, spectra_equal, ComplexMatrix, DEFAULT_TOL};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> periph::Result<()> {
    let rotation = ComplexMatrix::from_real_rows(&[&[0.0, -1.0], &[1.0, 0.0]]);
    let diag = ComplexMatrix::real_diag(&[2.0, -2.0, 1.0]);
    let nilpotent = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
    for (name, m) in [("rotation", &rotation), ("diag(2,-2,1)", &diag), ("nilpotent", &nilpotent)] {
        let sp = peripheral_spectrum(m, DEFAULT_TOL)?;
        println!("{name:<14} eigenvalues={:?}", eigenvalues(m)?);
        println!("{:<14} peripheral={:?} radius={}", "", sp.to_pairs(), sp.radius());
    }

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let a = random::gaussian_matrix(&mut rng, 5);
    let b = random::gaussian_matrix(&mut rng, 5);
    let ab = peripheral_spectrum(&(&a * &b), 1e-8)?;
    let ba = peripheral_spectrum(&(&b * &a), 1e-8)?;
    println!("σ_π(AB) = {:?}", ab.to_pairs());
    println!("σ_π(BA) = {:?}", ba.to_pairs());
    println!("equal: {}", spectra_equal(&ab, &ba, 1e-8));
    Ok(())
}
