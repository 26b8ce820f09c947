//! Generalized and skew generalized products, and the closed form for the
//! peripheral spectrum of `(x⊗f)^r A (x⊗f)^s`.

use periph::densela::{peripheral_spectrum, random, ComplexMatrix, RankOneOperator, DEFAULT_TOL};
use periph::products::{evaluate, evaluate_skew, sandwich_eigenvalue, sandwich_peripheral_by_eigensolver};
use periph::seqdesc::validate;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> periph::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let d = validate(3, &[2, 3, 3, 1, 3, 3, 2])?;
    let ops: Vec<ComplexMatrix> = (0..3).map(|_| random::gaussian_matrix(&mut rng, 3)).collect();

    let plain = evaluate(&d, &ops)?;
    let skew = evaluate_skew(&d, &ops)?;
    println!("descriptor {:?}, distinguished slot at position {}", d.seq(), d.p_one_based());
    println!("σ_π(product)      = {:?}", peripheral_spectrum(&plain, DEFAULT_TOL)?.to_pairs());
    println!("σ_π(skew product) = {:?}", peripheral_spectrum(&skew, DEFAULT_TOL)?.to_pairs());

    let op = RankOneOperator::new(random::gaussian_vector(&mut rng, 4), random::gaussian_vector(&mut rng, 4))?;
    let a = random::gaussian_matrix(&mut rng, 4);
    for (r, s) in [(1, 0), (1, 1), (2, 1), (3, 2)] {
        let tau = sandwich_eigenvalue(&op, &a, r, s)?;
        let full = sandwich_peripheral_by_eigensolver(&op, &a, r, s, 1e-8)?;
        println!("r={r} s={s}: <x,f>^(r+s-1) <Ax,f> = {tau:.6}, eigensolver {:?}", full.to_pairs());
    }
    Ok(())
}
