//! Seeded property battery behind the `fuzz` subcommand.
//!
//! Each property draws from its own ChaCha stream of the run seed, so adding
//! trials to one property never shifts the inputs of another, and the
//! summary is byte-identical for identical configurations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::densela::{peripheral_spectrum, random, rank, spectra_equal, ComplexMatrix, PeripheralSpectrum};
use crate::error::{Error, Result};
use crate::rankoracle::{construct_witness_with, rank_one_criterion, sandwich, WitnessConfig};
use crate::recovery::{recover_banach_form, root_of_unity, verify_preservation, Form, LinearMapTable};
use crate::seqdesc::ProductDescriptor;

/// Below this tolerance double precision cannot certify the properties, and
/// failures are reported as tolerance-induced.
pub const ATTAINABLE_TOL: f64 = 1e-13;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub seed: u64,
    pub tol: f64,
    pub trials: usize,
    pub max_dim: usize,
    pub output_path: Option<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self { seed: 0, tol: 1e-9, trials: 50, max_dim: 5, output_path: None }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::InvalidConfig(format!("tol must be positive and finite, got {}", self.tol)));
        }
        if self.trials < 1 {
            return Err(Error::InvalidConfig("trials must be at least 1".into()));
        }
        if self.max_dim < 2 {
            return Err(Error::InvalidConfig(format!("max_dim must be at least 2, got {}", self.max_dim)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Failure {
    pub trial: usize,
    pub detail: String,
    pub inputs: Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct PropertySummary {
    pub name: &'static str,
    pub checked: usize,
    pub failed: usize,
    /// Largest numerical discrepancy seen; absent for yes/no properties.
    pub max_residual: Option<f64>,
    pub first_failure: Option<Failure>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FuzzSummary {
    pub config: RunConfig,
    pub properties: Vec<PropertySummary>,
    pub all_passed: bool,
    pub tolerance_induced: bool,
}

type Check = fn(&mut ChaCha8Rng, &RunConfig) -> Outcome;

struct Outcome {
    ok: bool,
    residual: Option<f64>,
    detail: String,
    inputs: Value,
}

impl Outcome {
    fn pass(residual: Option<f64>) -> Self {
        Self { ok: true, residual, detail: String::new(), inputs: Value::Null }
    }

    fn fail(residual: Option<f64>, detail: impl Into<String>, inputs: Value) -> Self {
        Self { ok: false, residual, detail: detail.into(), inputs }
    }
}

const PROPERTIES: [(&str, Check); 6] = [
    ("commutation", commutation),
    ("similarity_invariance", similarity_invariance),
    ("rank_one_criterion", rank_one_agreement),
    ("witness_soundness", witness_soundness),
    ("round_trip_recovery", round_trip_recovery),
    ("parity_rule", parity_rule),
];

pub fn run(cfg: &RunConfig) -> Result<FuzzSummary> {
    cfg.validate()?;
    let mut properties = Vec::with_capacity(PROPERTIES.len());
    for (stream, (name, check)) in PROPERTIES.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(stream as u64);
        let mut summary = PropertySummary { name, checked: 0, failed: 0, max_residual: None, first_failure: None };
        for trial in 0..cfg.trials {
            let out = check(&mut rng, cfg);
            summary.checked += 1;
            if let Some(r) = out.residual {
                summary.max_residual = Some(summary.max_residual.map_or(r, |m: f64| m.max(r)));
            }
            if !out.ok {
                summary.failed += 1;
                if summary.first_failure.is_none() {
                    summary.first_failure = Some(Failure { trial, detail: out.detail, inputs: out.inputs });
                }
            }
        }
        properties.push(summary);
    }
    let all_passed = properties.iter().all(|p| p.failed == 0);
    Ok(FuzzSummary {
        config: cfg.clone(),
        properties,
        all_passed,
        tolerance_induced: !all_passed && cfg.tol < ATTAINABLE_TOL,
    })
}

fn dim(rng: &mut ChaCha8Rng, cfg: &RunConfig) -> usize {
    rng.random_range(2..=cfg.max_dim)
}

/// Largest distance from a point of one set to the nearest point of the
/// other, relative to `max(1, radius)`.
fn set_distance(a: &PeripheralSpectrum, b: &PeripheralSpectrum) -> f64 {
    let one_way = |x: &PeripheralSpectrum, y: &PeripheralSpectrum| {
        x.points()
            .iter()
            .map(|p| y.points().iter().map(|q| (p - q).norm()).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    };
    one_way(a, b).max(one_way(b, a)) / a.radius().max(b.radius()).max(1.0)
}

fn compare(lhs: &ComplexMatrix, rhs: &ComplexMatrix, tol: f64, inputs: impl FnOnce() -> Value) -> Outcome {
    let (s1, s2) = match (peripheral_spectrum(lhs, tol), peripheral_spectrum(rhs, tol)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return Outcome::fail(None, e.to_string(), inputs()),
    };
    let d = set_distance(&s1, &s2);
    if spectra_equal(&s1, &s2, tol) {
        Outcome::pass(Some(d))
    } else {
        Outcome::fail(Some(d), format!("{:?} vs {:?}", s1.to_pairs(), s2.to_pairs()), inputs())
    }
}

fn commutation(rng: &mut ChaCha8Rng, cfg: &RunConfig) -> Outcome {
    let n = dim(rng, cfg);
    let a = random::gaussian_matrix(rng, n);
    let b = random::gaussian_matrix(rng, n);
    compare(&(&a * &b), &(&b * &a), cfg.tol, || json!({ "a": a, "b": b }))
}

fn similarity_invariance(rng: &mut ChaCha8Rng, cfg: &RunConfig) -> Outcome {
    let n = dim(rng, cfg);
    let a = random::gaussian_matrix(rng, n);
    let t = random::invertible(rng, n, 10.0);
    let Some(tinv) = t.inverse() else {
        return Outcome::fail(None, "generated transform is singular", json!({ "t": t }));
    };
    compare(&(&(&t * &a) * &tinv), &a, cfg.tol, || json!({ "a": a, "t": t }))
}

fn random_exponents(rng: &mut ChaCha8Rng) -> (usize, usize) {
    loop {
        let r = rng.random_range(0..=3);
        let s = rng.random_range(0..=3);
        if (1..=5).contains(&(r + s)) {
            return (r, s);
        }
    }
}

fn rank_one_agreement(rng: &mut ChaCha8Rng, cfg: &RunConfig) -> Outcome {
    let n = dim(rng, cfg);
    let k = rng.random_range(1..=n);
    let a = random::with_rank(rng, n, k);
    let (r, s) = random_exponents(rng);
    let skew = rng.random_bool(0.5);
    let wcfg = WitnessConfig { tol: cfg.tol, seed: rng.random(), ..WitnessConfig::default() };
    let inputs = || json!({ "a": a, "r": r, "s": s, "skew": skew, "rank": k });
    match rank_one_criterion(&a, r, s, skew, 4, &wcfg) {
        Ok(rep) if rep.rank_one == (k == 1) => Outcome::pass(None),
        Ok(rep) => Outcome::fail(None, format!("criterion says rank_one={} for rank {k}", rep.rank_one), inputs()),
        Err(e) => Outcome::fail(None, e.to_string(), inputs()),
    }
}

fn witness_soundness(rng: &mut ChaCha8Rng, cfg: &RunConfig) -> Outcome {
    let n = dim(rng, cfg);
    let k = rng.random_range(2..=n);
    let a = random::with_rank(rng, n, k);
    let (r, s) = random_exponents(rng);
    let wcfg = WitnessConfig { tol: cfg.tol, seed: rng.random(), ..WitnessConfig::default() };
    let inputs = || json!({ "a": a, "r": r, "s": s });
    let w = match construct_witness_with(&a, r, s, &wcfg) {
        Ok(w) => w,
        Err(e) => return Outcome::fail(None, e.to_string(), inputs()),
    };
    let sp = match peripheral_spectrum(&sandwich(&w.witness, &a, r, s), cfg.tol) {
        Ok(sp) => sp,
        Err(e) => return Outcome::fail(None, e.to_string(), inputs()),
    };
    let miss = w
        .predicted
        .iter()
        .map(|z| sp.points().iter().map(|p| (p - z).norm()).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max)
        / sp.radius().max(1.0);
    let ok = rank(&w.witness, 1e-9) <= 2 && sp.len() >= 2 && miss <= cfg.tol;
    if ok {
        Outcome::pass(Some(miss))
    } else {
        Outcome::fail(Some(miss), format!("case {} gave {:?}", w.case, sp.to_pairs()), inputs())
    }
}

fn round_trip_recovery(rng: &mut ChaCha8Rng, cfg: &RunConfig) -> Outcome {
    let n = rng.random_range(2..=cfg.max_dim.min(6));
    let m = rng.random_range(2..=5);
    let k = rng.random_range(0..m);
    let lambda = root_of_unity(m, k);
    let t = random::invertible(rng, n, 10.0);
    let transpose = rng.random_bool(0.5);
    let built = if transpose {
        LinearMapTable::transpose_similarity(&t, lambda)
    } else {
        LinearMapTable::similarity(&t, lambda)
    };
    let inputs = || json!({ "t": t, "m": m, "root_index": k, "transpose": transpose });
    let phi = match built {
        Ok(p) => p,
        Err(e) => return Outcome::fail(None, e.to_string(), inputs()),
    };
    let rep = match recover_banach_form(&phi, m, cfg.tol) {
        Ok(r) => r,
        Err(e) => return Outcome::fail(None, e.to_string(), inputs()),
    };
    let want = if transpose { Form::TransposeSimilarity } else { Form::Similarity };
    if rep.form == want && rep.root_index == Some(k) {
        Outcome::pass(rep.residual)
    } else {
        Outcome::fail(rep.residual, format!("recovered {:?} with root {:?}", rep.form, rep.root_index), inputs())
    }
}

/// Descriptor `B^r A B^s` of width `m`.
pub fn sandwich_of_width(m: usize) -> ProductDescriptor {
    let s = (m - 1) / 2;
    ProductDescriptor::sandwich(m - 1 - s, s)
}

fn parity_rule(rng: &mut ChaCha8Rng, cfg: &RunConfig) -> Outcome {
    let n = dim(rng, cfg);
    let m = rng.random_range(2..=5);
    let u = random::unitary(rng, n);
    let seed: u64 = rng.random();
    let inputs = || json!({ "u": u, "m": m });
    let phi = match LinearMapTable::unitary_similarity(&u, -1.0) {
        Ok(p) => p,
        Err(e) => return Outcome::fail(None, e.to_string(), inputs()),
    };
    match verify_preservation(&phi, &sandwich_of_width(m), 8, true, cfg.tol, seed) {
        Ok(out) if out.preserved == (m % 2 == 0) => Outcome::pass(None),
        Ok(out) => Outcome::fail(None, format!("preserved={} for m={m}", out.preserved), inputs()),
        Err(e) => Outcome::fail(None, e.to_string(), inputs()),
    }
}
