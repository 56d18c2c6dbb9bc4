//! Acceptance suite: one test per criterion, each printing a PASS line with
//! its timing (run with `cargo test --test acceptance -- --nocapture` to see
//! them). Criteria that specify command-line behavior drive the actual
//! binary; the rest call the library directly. All checks are exact.

use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use nilrank_core::{
    det_a, pair_count, pfaffian, soundness_sweep, subgroup_n3, theorem_a_construct, GroupElement,
    SweepSpec,
};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_nilrank"))
}

fn nonzero(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> i64 {
    loop {
        let x = rng.random_range(lo..=hi);
        if x != 0 {
            return x;
        }
    }
}

#[test]
fn criterion_1_theorem_a_bulk() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xA);
    for _ in 0..1000 {
        let (a1, a2, a3) = (
            nonzero(&mut rng, -50, 50),
            nonzero(&mut rng, -50, 50),
            nonzero(&mut rng, -50, 50),
        );
        let (b1, b2, b3) = (BigInt::from(a1), BigInt::from(a2), BigInt::from(a3));
        let w = theorem_a_construct(&b1, &b2, &b3)
            .unwrap_or_else(|e| panic!("construction failed for ({a1},{a2},{a3}): {e}"));

        let minors = w.alpha1.commutator_exponents(&w.alpha2);
        assert_eq!(
            minors,
            vec![b1.clone(), b3.clone(), b2.clone()],
            "minors for ({a1},{a2},{a3})"
        );

        let c = subgroup_n3(&b1, &b2, &b3).unwrap();
        assert_eq!(
            c.membership_exponent(&w.alpha1.commutator(&w.alpha2)),
            Some(BigInt::from(1)),
            "l for ({a1},{a2},{a3})"
        );
        assert_eq!(w.l, BigInt::from(1));
        assert_eq!(w.kernel.kernel_rank, 0, "kernel for ({a1},{a2},{a3})");
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed < Duration::from_secs(5),
        "took {elapsed:?}, budget 5 s"
    );
    println!(
        "acceptance criterion 1: PASS — 1000 random triples constructed exactly ({elapsed:?})"
    );
}

#[test]
fn criterion_2_paper_golden_case() {
    let start = Instant::now();

    let check = bin()
        .args(["check", "--n", "4", "--a", "1,1,1,-1,1,-1"])
        .output()
        .expect("run nilrank check");
    assert_eq!(check.status.code(), Some(1), "check must exit 1 (violated)");
    let report: serde_json::Value =
        serde_json::from_slice(&check.stdout).expect("check emits JSON");
    assert_eq!(report["verdict"], "condition-violated");
    assert_eq!(report["result"]["all_hold"], serde_json::Value::Bool(false));

    let search = bin()
        .args([
            "search",
            "--n",
            "4",
            "--a",
            "1,1,1,-1,1,-1",
            "--bound",
            "3",
            "--require-rank2",
        ])
        .output()
        .expect("run nilrank search");
    assert_eq!(
        search.status.code(),
        Some(1),
        "search must exit 1 (nothing in box)"
    );
    let report: serde_json::Value =
        serde_json::from_slice(&search.stdout).expect("search emits JSON");
    assert_eq!(report["verdict"], "no-witness-in-box");
    assert!(report["result"]["witness"].is_null() || report["result"].get("witness").is_none());

    let elapsed = start.elapsed();
    assert!(
        elapsed < Duration::from_secs(60),
        "took {elapsed:?}, budget 60 s"
    );
    println!("acceptance criterion 2: PASS — golden case violated and witness-free at bound 3 ({elapsed:?})");
}

#[test]
fn criterion_3_pfaffian_identity() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xB);
    for _ in 0..1000 {
        let a: [BigInt; 6] = std::array::from_fn(|_| BigInt::from(nonzero(&mut rng, -100, 100)));
        let pf = pfaffian(&a);
        assert_eq!(det_a(&a).unwrap(), &pf * &pf, "det != pf^2 for {a:?}");
    }
    let elapsed = start.elapsed();
    println!(
        "acceptance criterion 3: PASS — det(A) = pfaffian^2 on 1000 random vectors ({elapsed:?})"
    );
}

#[test]
fn criterion_4_soundness_sweep() {
    let start = Instant::now();
    let report = soundness_sweep(&SweepSpec {
        n: 4,
        bound: 2,
        trials: 100,
        seed: 0xC,
    })
    .expect("valid sweep spec");
    assert_eq!(report.trials, 100);
    assert!(
        report.violations.is_empty(),
        "soundness violations found: {:?}",
        report.violations
    );
    let elapsed = start.elapsed();
    assert!(
        elapsed < Duration::from_secs(120),
        "took {elapsed:?}, budget 120 s"
    );
    println!(
        "acceptance criterion 4: PASS — 100 trials, {} witnesses, 0 violations ({elapsed:?})",
        report.witness_found
    );
}

#[test]
fn criterion_5_witness_round_trip() {
    let start = Instant::now();
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("witness.json");

    let search = bin()
        .args([
            "search",
            "--n",
            "4",
            "--a",
            "1,1,1,1,2,1",
            "--bound",
            "2",
            "--require-rank2",
        ])
        .output()
        .expect("run nilrank search");
    assert_eq!(
        search.status.code(),
        Some(0),
        "search must find a witness at bound 2"
    );
    std::fs::write(&path, &search.stdout).expect("store the report");

    let verify = bin()
        .arg("verify")
        .arg(&path)
        .output()
        .expect("run nilrank verify");
    assert_eq!(
        verify.status.code(),
        Some(0),
        "verify must reproduce every field: {}",
        String::from_utf8_lossy(&verify.stdout)
    );
    let report: serde_json::Value =
        serde_json::from_slice(&verify.stdout).expect("verify emits JSON");
    assert_eq!(report["verdict"], "verified");
    let checks = report["result"]["checks"].as_array().expect("checks array");
    assert_eq!(checks.len(), 4);
    assert!(checks
        .iter()
        .all(|c| c["ok"] == serde_json::Value::Bool(true)));

    let elapsed = start.elapsed();
    println!("acceptance criterion 5: PASS — search witness verified field by field ({elapsed:?})");
}

#[test]
fn criterion_6_commutator_form_consistency() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xD);
    let random_element = |rng: &mut ChaCha8Rng, n: usize| {
        let gen = (0..n)
            .map(|_| BigInt::from(rng.random_range(-5..=5)))
            .collect();
        let comm = (0..pair_count(n))
            .map(|_| BigInt::from(rng.random_range(-5..=5)))
            .collect();
        GroupElement::new(n, gen, comm).unwrap()
    };
    for _ in 0..500 {
        let n = rng.random_range(1..=5usize);
        let u = random_element(&mut rng, n);
        let v = random_element(&mut rng, n);
        let w = random_element(&mut rng, n);

        // minor formula equals the mul/inv expansion
        let d = u.commutator_exponents(&v);
        let expanded = u.inv().mul(&v.inv()).mul(&u.mul(&v));
        assert!(expanded.is_central());
        assert_eq!(expanded.comm_exps(), &d[..]);

        // bilinearity and antisymmetry
        let dw = w.commutator_exponents(&v);
        let sum: Vec<BigInt> = d.iter().zip(&dw).map(|(x, y)| x + y).collect();
        assert_eq!(u.mul(&w).commutator_exponents(&v), sum);
        let neg: Vec<BigInt> = v.commutator_exponents(&u).iter().map(|x| -x).collect();
        assert_eq!(d, neg);
    }
    let elapsed = start.elapsed();
    println!("acceptance criterion 6: PASS — 500 random pairs consistent ({elapsed:?})");
}

#[test]
fn criterion_7_selftest_determinism() {
    let start = Instant::now();
    let run = || {
        bin()
            .args(["selftest", "--trials", "40", "--seed", "1"])
            .output()
            .expect("run nilrank selftest")
    };
    let first = run();
    let second = run();
    assert_eq!(first.status.code(), Some(0), "selftest must pass");
    assert_eq!(second.status.code(), Some(0));
    assert_eq!(
        first.stdout, second.stdout,
        "same seed must give byte-identical JSON"
    );
    assert!(!first.stdout.is_empty());
    let elapsed = start.elapsed();
    println!(
        "acceptance criterion 7: PASS — identical seeds, byte-identical reports ({elapsed:?})"
    );
}
