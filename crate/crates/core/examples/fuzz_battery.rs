//! Run the seeded property battery and print its summary.

use periph::fuzz::{run, RunConfig};

fn main() -> periph::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    let summary = run(&RunConfig { seed, trials: 30, max_dim: 5, ..RunConfig::default() })?;
    for p in &summary.properties {
        println!("{:<22} {}/{} passed, max residual {:?}", p.name, p.checked - p.failed, p.checked, p.max_residual);
    }
    println!("all passed: {}", summary.all_passed);
    Ok(())
}
