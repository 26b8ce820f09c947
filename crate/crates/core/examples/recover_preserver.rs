//! Build preserver maps from known transforms and recover their standard
//! forms from the tabulated images of the matrix units.

use periph::densela::random;
use periph::recovery::{recover_banach_form, recover_hilbert_form, root_of_unity, LinearMapTable};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> periph::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let t = random::invertible(&mut rng, 3, 5.0);
    let omega = root_of_unity(3, 1);

    let sim = LinearMapTable::similarity(&t, omega)?;
    let rep = recover_banach_form(&sim, 3, 1e-9)?;
    println!("λTAT⁻¹:   form={:?} λ={:?} residual={:e}", rep.form, rep.scalar, rep.residual.unwrap());

    let tr = LinearMapTable::transpose_similarity(&t, omega)?;
    let rep = recover_banach_form(&tr, 3, 1e-9)?;
    println!("λTA^tT⁻¹: form={:?} λ={:?} residual={:e}", rep.form, rep.scalar, rep.residual.unwrap());

    let u = random::unitary(&mut rng, 3);
    let rep = recover_hilbert_form(&LinearMapTable::unitary_transpose_similarity(&u, -1.0)?, 4, 1e-9)?;
    println!("-UA^tU^*: form={:?} c={:?}", rep.form, rep.scalar);
    println!("{}", periph::io::to_pretty(&rep.checked_constraints));
    Ok(())
}
