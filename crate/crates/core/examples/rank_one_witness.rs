//! Rank-one detection through peripheral spectra, with the witness for each
//! branch of the construction.

use periph::densela::{random, ComplexMatrix};
use periph::fixtures::named_matrices;
use periph::rankoracle::{construct_witness, is_rank_one_by_criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> periph::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut cases: Vec<(&str, ComplexMatrix, usize, usize)> =
        named_matrices().into_iter().map(|(name, m)| (name, m, 1, 1)).collect();
    cases.push(("gaussian_3x3", random::gaussian_matrix(&mut rng, 3), 2, 1));
    cases.push(("gaussian_5x5", random::gaussian_matrix(&mut rng, 5), 1, 0));

    for (name, a, r, s) in cases {
        let rank_one = is_rank_one_by_criterion(&a, r, s, false, 16)?;
        print!("{name:<18} r={r} s={s} rank_one={rank_one}");
        match construct_witness(&a, r, s) {
            Ok(w) => println!("  case={} σ_π(B^r A B^s)={:?}", w.case, w.spectrum.to_pairs()),
            Err(e) => println!("  ({e})"),
        }
    }
    Ok(())
}
