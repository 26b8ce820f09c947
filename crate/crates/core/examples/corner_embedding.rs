//! `A -> A ⊕ 0` from `M_2` into `M_3` preserves every peripheral spectrum of
//! products but is not surjective, so no standard form fits.

use periph::fixtures::corner_embedding;
use periph::recovery::{recover_banach_form, verify_preservation};
use periph::seqdesc::enumerate;

fn main() -> periph::Result<()> {
    let phi = corner_embedding();
    let shapes = enumerate(3, 5);
    let mut preserved = 0;
    for (i, d) in shapes.iter().enumerate() {
        preserved += verify_preservation(&phi, d, 100, false, 1e-8, i as u64)?.preserved as usize;
    }
    println!("preserved on {preserved}/{} descriptors", shapes.len());
    let rep = recover_banach_form(&phi, 3, 1e-9)?;
    println!("recovery: {}", periph::io::to_line(&rep));
    Ok(())
}
