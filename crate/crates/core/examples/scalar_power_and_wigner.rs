//! The quadratic-form identity `<Ax,x> = <Bx,x>^n` forces `B = cI`,
//! `A = c^n I`; and phase alignment decides whether a modulus-preserving map
//! on vectors is unitary or antiunitary.

use num_complex::Complex64;
use periph::densela::{random, ComplexMatrix};
use periph::recovery::{scalar_power_outcome, wigner_check};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> periph::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let c = Complex64::from_polar(1.0, std::f64::consts::PI / 5.0);
    let id = ComplexMatrix::identity(3);
    let scalar = scalar_power_outcome(&id.scale(c.powu(3)), &id.scale(c), 3, 20, 1e-9, &mut rng)?;
    let generic = scalar_power_outcome(&ComplexMatrix::real_diag(&[1.0, 2.0, 3.0]), &id, 3, 20, 1e-9, &mut rng)?;
    println!("scalar pair:  {scalar:?}");
    println!("diag(1,2,3):  {generic:?}");

    let u = random::unitary(&mut rng, 2);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let xs = [
        vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
        vec![Complex64::new(h, 0.0), Complex64::new(h, 0.0)],
        vec![Complex64::new(h, 0.0), Complex64::new(0.0, h)],
    ];
    let unitary: Vec<_> = xs.iter().map(|x| (x.clone(), u.mat_vec(x))).collect();
    let anti: Vec<_> = xs
        .iter()
        .map(|x| (x.clone(), u.mat_vec(&x.iter().map(|z| z.conj()).collect::<Vec<_>>())))
        .collect();
    println!("x -> Ux:        {:?}", wigner_check(&unitary, 1e-9)?);
    println!("x -> U conj(x): {:?}", wigner_check(&anti, 1e-9)?);
    Ok(())
}
