//! Classify product shapes and count the quasi-semi-Jordan ones.

use periph::fixtures::named_descriptors;
use periph::seqdesc::enumerate;

fn main() {
    for (name, d) in named_descriptors() {
        let c = d.classify();
        println!(
            "{name:<22} seq={:?} p={} semi={} quasi={}",
            d.seq(),
            d.p_one_based(),
            c.is_semi_jordan,
            c.is_quasi_semi_jordan
        );
    }

    let all = enumerate(3, 6);
    let quasi = all.iter().filter(|d| d.is_quasi_semi_jordan()).count();
    let semi = all.iter().filter(|d| d.is_semi_jordan()).count();
    println!("k <= 3, m <= 6: {} descriptors, {quasi} quasi-semi-Jordan, {semi} semi-Jordan", all.len());
}
