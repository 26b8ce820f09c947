//! Acceptance suite. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line; exits nonzero if any fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use periph::densela::svd::numerical_rank;
use periph::densela::{
    peripheral_spectrum, random, rank, spectra_equal, ComplexMatrix, RankOneOperator, RectMatrix,
};
use periph::fuzz::sandwich_of_width;
use periph::products::{sandwich_peripheral, sandwich_peripheral_by_eigensolver};
use periph::rankoracle::{construct_witness, is_rank_one_by_criterion, sandwich, CaseTag};
use periph::recovery::{
    recover_banach_form, recover_hilbert_form, root_of_unity, scalar_power_outcome, verify_preservation, Form,
    LinearMapTable,
};
use periph::seqdesc::enumerate;
use periph::Error;

const BUDGET: Duration = Duration::from_secs(60);

struct Verdict {
    passed: usize,
    total: usize,
    note: String,
}

impl Verdict {
    fn ok(&self) -> bool {
        self.passed == self.total
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn commutation() -> Verdict {
    let mut r = rng(101);
    let tol = 1e-8;
    let total = 500;
    let passed = (0..total)
        .filter(|_| {
            let n = r.random_range(2..=8);
            let a = random::gaussian_matrix(&mut r, n);
            let b = random::gaussian_matrix(&mut r, n);
            let ab = peripheral_spectrum(&(&a * &b), tol).unwrap();
            let ba = peripheral_spectrum(&(&b * &a), tol).unwrap();
            spectra_equal(&ab, &ba, tol)
        })
        .count();
    Verdict { passed, total, note: "random complex pairs, n in 2..=8".into() }
}

fn rank_one_equivalence() -> Verdict {
    let mut r = rng(202);
    let exps = [(1, 0), (0, 1), (1, 1), (2, 1), (2, 2), (3, 2)];
    let mut passed = 0;
    let mut total = 0;
    let mut by_rank: BTreeMap<usize, usize> = BTreeMap::new();
    for t in 0..500 {
        let n = r.random_range(2..=6);
        let k = r.random_range(0..=n);
        let a = random::with_rank(&mut r, n, k);
        let oracle = numerical_rank(&RectMatrix::from(&a), 1e-9);
        *by_rank.entry(oracle).or_default() += 1;
        for &(rr, ss) in &exps {
            total += 1;
            let skew = t % 2 == 1;
            let agrees = match is_rank_one_by_criterion(&a, rr, ss, skew, 16) {
                Ok(v) => v == (oracle == 1),
                // the criterion is only defined for nonzero operators
                Err(Error::ZeroOperator) => oracle == 0,
                Err(_) => false,
            };
            passed += agrees as usize;
        }
    }
    Verdict { passed, total, note: format!("500 matrices x 6 exponent pairs, ranks seen {by_rank:?}") }
}

fn witness_soundness() -> Verdict {
    let mut r = rng(303);
    let exps = [(1, 0), (0, 1), (1, 1), (2, 1), (1, 2), (2, 2), (3, 2)];
    let mut passed = 0;
    let mut cases: BTreeMap<String, usize> = BTreeMap::new();
    let total = 200;
    for t in 0..total {
        let n = r.random_range(2..=8);
        let k = r.random_range(2..=n);
        let a = random::with_rank(&mut r, n, k);
        let (rr, ss) = exps[t % exps.len()];
        let Ok(w) = construct_witness(&a, rr, ss) else { continue };
        *cases.entry(w.case.to_string()).or_default() += 1;
        let sp = peripheral_spectrum(&sandwich(&w.witness, &a, rr, ss), 1e-8).unwrap();
        let mut ok = rank(&w.witness, 1e-9) <= 2 && sp.len() >= 2;
        if w.case == CaseTag::Case1 {
            let alpha = w.alpha.unwrap();
            let want = [Complex64::new(1.0, 0.0), alpha.powu((rr + ss - 1) as u32)];
            ok &= sp.len() == 2 && want.iter().all(|z| sp.contains(*z, 1e-8));
        }
        passed += ok as usize;
    }
    Verdict { passed, total, note: format!("cases {cases:?}") }
}

// Distance from `got` to the closest scalar multiple of `want`.
fn distance_up_to_scalar(got: &ComplexMatrix, want: &ComplexMatrix) -> f64 {
    let dot: Complex64 = got.as_slice().iter().zip(want.as_slice()).map(|(g, w)| g * w.conj()).sum();
    let c = dot / want.frobenius_norm().powi(2);
    got.distance(&want.scale(c)) / got.frobenius_norm()
}

fn round_trip() -> Verdict {
    let mut r = rng(404);
    let mut passed = 0;
    let mut total = 0;
    for t in 0..100 {
        let n = r.random_range(2..=6);
        let m = r.random_range(2..=5);
        let k = r.random_range(0..m);
        let tm = random::invertible(&mut r, n, 20.0);
        let transpose = t % 2 == 1;
        let (phi, want) = if transpose {
            (LinearMapTable::transpose_similarity(&tm, root_of_unity(m, k)).unwrap(), Form::TransposeSimilarity)
        } else {
            (LinearMapTable::similarity(&tm, root_of_unity(m, k)).unwrap(), Form::Similarity)
        };
        let rep = recover_banach_form(&phi, m, 1e-9).unwrap();
        total += 1;
        passed += (rep.form == want
            && rep.scalar == Some(root_of_unity(m, k))
            && rep.residual.unwrap() <= 1e-8
            && distance_up_to_scalar(rep.transform.as_ref().unwrap(), &tm) <= 1e-8) as usize;
    }
    for t in 0..100 {
        let n = r.random_range(2..=6);
        let m = r.random_range(2..=5);
        let c = if m % 2 == 0 && r.random_bool(0.5) { -1.0 } else { 1.0 };
        let u = random::unitary(&mut r, n);
        let transpose = t % 2 == 1;
        let (phi, want) = if transpose {
            (LinearMapTable::unitary_transpose_similarity(&u, c).unwrap(), Form::UnitaryTransposeSimilarity)
        } else {
            (LinearMapTable::unitary_similarity(&u, c).unwrap(), Form::UnitarySimilarity)
        };
        let rep = recover_hilbert_form(&phi, m, 1e-9).unwrap();
        total += 1;
        passed += (rep.form == want
            && rep.scalar == Some(Complex64::new(c, 0.0))
            && rep.residual.unwrap() <= 1e-8
            && distance_up_to_scalar(rep.transform.as_ref().unwrap(), &u) <= 1e-8) as usize;
    }
    Verdict { passed, total, note: "100 similarity + 100 unitary tables".into() }
}

fn dichotomy() -> Verdict {
    let mut r = rng(505);
    let n = 3;
    let tol = 1e-8;
    let mut passed = 0;
    let mut total = 0;
    let (mut quasi, mut other, mut max_samples) = (0, 0, 0);
    for d in enumerate(3, 6) {
        let m = d.width();
        let lambda = root_of_unity(m, r.random_range(0..m));
        let t = random::invertible(&mut r, n, 10.0);
        let seed: u64 = r.random();
        total += 1;
        if d.is_quasi_semi_jordan() {
            quasi += 1;
            let sim = LinearMapTable::similarity(&t, lambda).unwrap();
            let tr = LinearMapTable::transpose_similarity(&t, lambda).unwrap();
            let ok = verify_preservation(&sim, &d, 200, false, tol, seed).unwrap().preserved
                && verify_preservation(&tr, &d, 200, false, tol, seed ^ 1).unwrap().preserved;
            passed += ok as usize;
        } else {
            other += 1;
            let tr = LinearMapTable::transpose_similarity(&t, lambda).unwrap();
            let out = verify_preservation(&tr, &d, 10_000, false, tol, seed).unwrap();
            if !out.preserved {
                max_samples = max_samples.max(out.trials_run);
                passed += 1;
            }
        }
    }
    Verdict {
        passed,
        total,
        note: format!("{quasi} quasi-semi-Jordan, {other} others, counterexamples within {max_samples} samples"),
    }
}

fn parity() -> Verdict {
    let mut r = rng(606);
    let mut passed = 0;
    let mut total = 0;
    for _ in 0..50 {
        let n = r.random_range(2..=5);
        let u = random::unitary(&mut r, n);
        let phi = LinearMapTable::unitary_similarity(&u, -1.0).unwrap();
        for m in 2..=5 {
            let out = verify_preservation(&phi, &sandwich_of_width(m), 200, true, 1e-8, r.random()).unwrap();
            total += 1;
            passed += (out.preserved == (m % 2 == 0)) as usize;
        }
    }
    Verdict { passed, total, note: "Φ(A) = -UAU^*, skew products B^r A B^s of width m".into() }
}

fn scalar_power() -> Verdict {
    let mut r = rng(707);
    let total = 1000;
    let mut passed = 0;
    let mut inconsistent = 0;
    let mut holds = 0;
    for t in 0..total {
        let n = r.random_range(1..=5);
        let e = r.random_range(2..=4);
        let c = Complex64::from_polar(r.random_range(0.3..1.5), r.random_range(0.0..std::f64::consts::TAU));
        let id = ComplexMatrix::identity(n);
        let (a, b) = match t % 5 {
            0 => (id.scale(c.powu(e as u32)), id.scale(c)),
            1 => (random::gaussian_matrix(&mut r, n), random::gaussian_matrix(&mut r, n)),
            2 => {
                // scalar B, A off by a random perturbation
                let p = random::gaussian_matrix(&mut r, n).scale(Complex64::new(1e-2, 0.0));
                (&id.scale(c.powu(e as u32)) + &p, id.scale(c))
            }
            3 => {
                // scalar form up to rounding-level noise
                let p = random::gaussian_matrix(&mut r, n).scale(Complex64::new(1e-14, 0.0));
                (&id.scale(c.powu(e as u32)) + &p, id.scale(c))
            }
            _ => (id.scale(c.powu(e as u32)), random::hermitian(&mut r, n)),
        };
        match scalar_power_outcome(&a, &b, e, 24, 1e-9, &mut r) {
            Ok(o) => {
                passed += 1;
                holds += o.holds as usize;
            }
            Err(Error::InconsistentWithLemma(_)) => inconsistent += 1,
            Err(_) => {}
        }
    }
    Verdict { passed, total, note: format!("{holds} scalar-form instances, {inconsistent} inconsistencies") }
}

fn embedding() -> Verdict {
    let phi = LinearMapTable::corner_embedding(2, 3).unwrap();
    let mut passed = 0;
    let mut total = 0;
    for (i, d) in enumerate(3, 5).iter().enumerate() {
        for skew in [false, true] {
            total += 1;
            passed += verify_preservation(&phi, d, 200, skew, 1e-8, i as u64).unwrap().preserved as usize;
        }
    }
    for m in 2..=5 {
        total += 2;
        passed += (recover_banach_form(&phi, m, 1e-9).unwrap().form == Form::NonStandard) as usize;
        passed += (recover_hilbert_form(&phi, m, 1e-9).unwrap().form == Form::NonStandard) as usize;
    }
    Verdict { passed, total, note: "A -> A ⊕ 0 from M_2 to M_3, plain and skew".into() }
}

fn closed_form() -> Verdict {
    let mut r = rng(909);
    let tol = 1e-8;
    let total = 500;
    let mut passed = 0;
    let mut degenerate = 0;
    for t in 0..total {
        let n = r.random_range(2..=6);
        let (rr, ss) = loop {
            let rr = r.random_range(0..=5);
            let ss = r.random_range(0..=5);
            if (1..=5).contains(&(rr + ss)) {
                break (rr, ss);
            }
        };
        let x = random::gaussian_vector(&mut r, n);
        let f = if t % 4 == 0 {
            degenerate += 1;
            random::annihilating_covector(&mut r, &x)
        } else {
            random::gaussian_vector(&mut r, n)
        };
        let op = RankOneOperator::new(x, f).unwrap();
        let a = random::gaussian_matrix(&mut r, n);
        let closed = sandwich_peripheral(&op, &a, rr, ss, tol).unwrap();
        let full = sandwich_peripheral_by_eigensolver(&op, &a, rr, ss, tol).unwrap();
        passed += spectra_equal(&closed, &full, tol) as usize;
    }
    Verdict { passed, total, note: format!("{degenerate} with <x,f> = 0") }
}

fn main() -> ExitCode {
    let criteria: [(u8, &str, fn() -> Verdict); 9] = [
        (1, "commutation identity", commutation),
        (2, "rank-one criterion vs SVD rank", rank_one_equivalence),
        (3, "witness soundness", witness_soundness),
        (4, "round-trip recovery", round_trip),
        (5, "quasi-semi-Jordan dichotomy", dichotomy),
        (6, "parity rule", parity),
        (7, "scalar power consistency", scalar_power),
        (8, "corner embedding", embedding),
        (9, "rank-one sandwich closed form", closed_form),
    ];
    let mut failed = 0;
    for (id, name, run) in criteria {
        let start = Instant::now();
        let v = run();
        let took = start.elapsed();
        let ok = v.ok() && took < BUDGET;
        failed += (!ok) as usize;
        println!(
            "criterion {id} {}: {name}: {}/{} in {:.2}s; {}",
            if ok { "PASS" } else { "FAIL" },
            v.passed,
            v.total,
            took.as_secs_f64(),
            v.note
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
