//! `A -> -UAU^*` preserves peripheral spectra of skew products of even width
//! only.

use periph::densela::random;
use periph::fuzz::sandwich_of_width;
use periph::recovery::{recover_hilbert_form, verify_preservation, LinearMapTable};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> periph::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let u = random::unitary(&mut rng, 3);
    let phi = LinearMapTable::unitary_similarity(&u, -1.0)?;
    for m in 2..=5 {
        let d = sandwich_of_width(m);
        let out = verify_preservation(&phi, &d, 100, true, 1e-8, m as u64)?;
        let rep = recover_hilbert_form(&phi, m, 1e-9)?;
        println!(
            "m={m} seq={:?} preserved={} after {} trials; recovered form {:?}",
            d.seq(),
            out.preserved,
            out.trials_run,
            rep.form
        );
    }
    Ok(())
}
