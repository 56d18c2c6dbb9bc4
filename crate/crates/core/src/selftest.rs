//! Seeded, fully deterministic property suites over every module, runnable
//! from the command line. Two runs with the same trial count and seed visit
//! exactly the same cases and produce identical reports.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::diophantine::{gcd_many, kernel_rank, solve_linear_2var};
use crate::error::Error;
use crate::group::{pair_count, CyclicCentralSubgroup, GroupElement};
use crate::search::{
    brute_force_witness_search, soundness_sweep, SearchSpec, SweepReport, SweepSpec,
};
use crate::theorems::{det_a, pfaffian, theorem_a_construct, theorem_b_condition};

/// Outcome of one named suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: u64,
    pub failures: u64,
    pub first_failure: Option<String>,
}

/// Outcome of a full selftest run.
#[derive(Clone, Debug)]
pub struct SelftestReport {
    pub trials: u64,
    pub seed: u64,
    pub suites: Vec<SuiteResult>,
    pub sweep_spec: SweepSpec,
    pub sweep: SweepReport,
    pub total_failures: u64,
}

struct Suite {
    name: &'static str,
    cases: u64,
    failures: u64,
    first_failure: Option<String>,
}

impl Suite {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            cases: 0,
            failures: 0,
            first_failure: None,
        }
    }

    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(detail());
            }
        }
    }

    fn finish(self) -> SuiteResult {
        SuiteResult {
            name: self.name,
            cases: self.cases,
            failures: self.failures,
            first_failure: self.first_failure,
        }
    }
}

fn suite_rng(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(salt))
}

fn random_nonzero(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> BigInt {
    let mut x = 0i64;
    while x == 0 {
        x = rng.random_range(lo..=hi);
    }
    BigInt::from(x)
}

fn random_element(rng: &mut ChaCha8Rng, n: usize) -> GroupElement {
    let gen = (0..n)
        .map(|_| BigInt::from(rng.random_range(-5..=5i64)))
        .collect();
    let comm = (0..pair_count(n))
        .map(|_| BigInt::from(rng.random_range(-5..=5i64)))
        .collect();
    GroupElement::new(n, gen, comm).expect("shapes valid")
}

fn random_nonzero_vector(rng: &mut ChaCha8Rng, len: usize, lo: i64, hi: i64) -> Vec<BigInt> {
    (0..len).map(|_| random_nonzero(rng, lo, hi)).collect()
}

fn group_laws(trials: u64, seed: u64) -> SuiteResult {
    let mut s = Suite::new("group-laws");
    let mut rng = suite_rng(seed, 1);
    for _ in 0..trials {
        let n = rng.random_range(1..=5usize);
        let id = GroupElement::identity(n).expect("n >= 1");
        let u = random_element(&mut rng, n);
        let v = random_element(&mut rng, n);
        let w = random_element(&mut rng, n);
        s.check(u.mul(&v).mul(&w) == u.mul(&v.mul(&w)), || {
            format!("associativity: {u}, {v}, {w}")
        });
        s.check(u.mul(&id) == u && id.mul(&u) == u, || {
            format!("identity law: {u}")
        });
        s.check(
            u.mul(&u.inv()).is_identity() && u.inv().mul(&u).is_identity(),
            || format!("inverse law: {u}"),
        );
        s.check(u.inv().inv() == u, || format!("inverse involution: {u}"));
    }
    s.finish()
}

fn commutator_form(trials: u64, seed: u64) -> SuiteResult {
    let mut s = Suite::new("commutator-form");
    let mut rng = suite_rng(seed, 2);
    for _ in 0..trials {
        let n = rng.random_range(1..=5usize);
        let u = random_element(&mut rng, n);
        let v = random_element(&mut rng, n);
        let w = random_element(&mut rng, n);

        let duv = u.commutator_exponents(&v);
        let dwv = w.commutator_exponents(&v);
        let dsum: Vec<BigInt> = duv.iter().zip(&dwv).map(|(a, b)| a + b).collect();
        s.check(u.mul(&w).commutator_exponents(&v) == dsum, || {
            format!("bilinearity: {u}, {w} vs {v}")
        });

        let dvu: Vec<BigInt> = v.commutator_exponents(&u).iter().map(|x| -x).collect();
        s.check(duv == dvu, || format!("antisymmetry: {u}, {v}"));
        s.check(u.commutator_exponents(&u).iter().all(Zero::is_zero), || {
            format!("alternating: {u}")
        });

        // the minor formula must agree with the word u^-1 v^-1 u v
        let expanded = u.inv().mul(&v.inv()).mul(&u.mul(&v));
        s.check(
            expanded.is_central() && expanded.comm_exps() == &duv[..],
            || format!("mul/inv expansion: {u}, {v}"),
        );
    }
    s.finish()
}

fn power_law(trials: u64, seed: u64) -> SuiteResult {
    let mut s = Suite::new("power-law");
    let mut rng = suite_rng(seed, 3);
    for _ in 0..trials {
        let n = rng.random_range(1..=5usize);
        let u = random_element(&mut rng, n);
        let mut acc = GroupElement::identity(n).expect("n >= 1");
        let mut ok = true;
        for k in 0..=6i64 {
            ok &= u.pow(&BigInt::from(k)) == acc;
            ok &= u.pow(&BigInt::from(-k)) == acc.inv();
            acc = acc.mul(&u);
        }
        s.check(ok, || format!("pow vs repeated mul: {u}"));
    }
    s.finish()
}

fn membership_and_centrality(trials: u64, seed: u64) -> SuiteResult {
    let mut s = Suite::new("membership");
    let mut rng = suite_rng(seed, 4);
    for _ in 0..trials {
        let n = rng.random_range(2..=5usize);
        let m = pair_count(n);
        // entries may be zero, the whole vector may not
        let mut a = vec![BigInt::zero(); m];
        while a.iter().all(Zero::is_zero) {
            a = (0..m)
                .map(|_| BigInt::from(rng.random_range(-5..=5i64)))
                .collect();
        }
        let c = CyclicCentralSubgroup::new(n, a).expect("nonzero vector");
        let z = c.generator();

        let l = BigInt::from(rng.random_range(-9..=9i64));
        s.check(c.membership_exponent(&z.pow(&l)) == Some(l.clone()), || {
            format!("membership of z^{l} in {c}")
        });

        // an element with a nontrivial generator part is never a member
        let mut g = random_element(&mut rng, n);
        while g.is_central() {
            g = random_element(&mut rng, n);
        }
        s.check(c.membership_exponent(&g).is_none(), || {
            format!("non-member: {g}")
        });

        // centrality is blind to central factors
        let central = c.is_central_mod_c(&g);
        let shifted = g.mul(&z.pow(&BigInt::from(rng.random_range(-3..=3i64))));
        s.check(c.is_central_mod_c(&shifted) == central, || {
            format!("centrality after multiplying by a member of C: {g}")
        });
        let pure = GroupElement::from_comm_exps(
            n,
            (0..m)
                .map(|_| BigInt::from(rng.random_range(-5..=5i64)))
                .collect(),
        )
        .expect("shape");
        s.check(c.is_central_mod_c(&g.mul(&pure)) == central, || {
            format!("centrality after multiplying by a commutator word: {g}")
        });
        s.check(c.is_central_mod_c(&z), || {
            format!("generator of {c} central")
        });
    }
    s.finish()
}

fn diophantine_exhaustive() -> SuiteResult {
    let mut s = Suite::new("diophantine-solver");
    for p in -20..=20i64 {
        for q in -20..=20i64 {
            for r in -20..=20i64 {
                let (bp, bq, br) = (BigInt::from(p), BigInt::from(q), BigInt::from(r));
                if p == 0 && q == 0 {
                    s.check(
                        matches!(
                            solve_linear_2var(&bp, &bq, &br),
                            Err(Error::ZeroCoefficients { .. })
                        ),
                        || format!("(0,0,{r}) must be rejected"),
                    );
                    continue;
                }
                let g = gcd_many(&[bp.clone(), bq.clone()]).expect("not both zero");
                let solvable = (&br % &g).is_zero();
                match solve_linear_2var(&bp, &bq, &br).expect("valid input") {
                    Some(sol) => {
                        let exact = &bp * &sol.x + &bq * &sol.y == br;
                        let canonical = if p != 0 && q != 0 {
                            let modulus = (&bq / &g).abs();
                            sol.x.is_positive() && sol.x <= modulus
                        } else {
                            true
                        };
                        s.check(solvable && exact && canonical, || {
                            format!("({p},{q},{r}) -> ({}, {})", sol.x, sol.y)
                        });
                    }
                    None => {
                        s.check(!solvable, || format!("({p},{q},{r}) wrongly unsolved"));
                    }
                }
            }
        }
    }
    s.finish()
}

fn theorem_a_bulk(trials: u64, seed: u64) -> SuiteResult {
    let mut s = Suite::new("theorem-a");
    let mut rng = suite_rng(seed, 5);
    for _ in 0..trials {
        let a1 = random_nonzero(&mut rng, -50, 50);
        let a2 = random_nonzero(&mut rng, -50, 50);
        let a3 = random_nonzero(&mut rng, -50, 50);
        match theorem_a_construct(&a1, &a2, &a3) {
            Ok(w) => {
                let minors = w.alpha1.commutator_exponents(&w.alpha2);
                let ok = minors == vec![a1.clone(), a3.clone(), a2.clone()]
                    && w.l.is_one()
                    && w.kernel.kernel_rank == 0;
                s.check(ok, || {
                    format!("({a1}, {a2}, {a3}): minors {minors:?}, l {}", w.l)
                });
            }
            Err(e) => s.check(false, || format!("({a1}, {a2}, {a3}): {e}")),
        }
    }
    s.finish()
}

fn pfaffian_identity(trials: u64, seed: u64) -> SuiteResult {
    let mut s = Suite::new("pfaffian-identity");
    let mut rng = suite_rng(seed, 6);
    for _ in 0..trials {
        let a: [BigInt; 6] = std::array::from_fn(|_| random_nonzero(&mut rng, -100, 100));
        let det = det_a(&a).expect("entries nonzero");
        let pf = pfaffian(&a);
        s.check(det == &pf * &pf, || format!("det {det} != pf^2 for {a:?}"));

        // the sum-of-squares-plus-cross-terms expansion of det(A)
        let [a12, a13, a14, a23, a24, a34] = &a;
        let squares = (a12 * a34).pow(2) + (a13 * a24).pow(2) + (a14 * a23).pow(2);
        let cross = a12 * a14 * a23 * a34 - a13 * a14 * a23 * a24 - a12 * a13 * a24 * a34;
        s.check(det == squares + BigInt::from(2) * cross, || {
            format!("expansion mismatch for {a:?}")
        });
    }
    s.finish()
}

fn condition_forms(trials: u64, seed: u64) -> SuiteResult {
    let mut s = Suite::new("condition-forms");
    let mut rng = suite_rng(seed, 7);
    for _ in 0..trials {
        let a: [BigInt; 6] = std::array::from_fn(|_| random_nonzero(&mut rng, -9, 9));
        let report = theorem_b_condition(&a).expect("entries nonzero");

        // reciprocal form with exact rationals:
        // eps(1/(a14 a23) + 1/(a12 a34)) > eps(1/(a13 a24))
        let [a12, a13, a14, a23, a24, a34] = &a;
        let eps = BigRational::from(BigInt::from(report.epsilon));
        let inv = |x: BigInt| BigRational::new(BigInt::one(), x);
        let lhs = &eps * (inv(a14 * a23) + inv(a12 * a34));
        let rhs = &eps * inv(a13 * a24);
        s.check(report.holds == (lhs > rhs), || {
            format!("integer vs reciprocal form disagree on {a:?}")
        });

        // verdict is invariant under global scaling
        let c = random_nonzero(&mut rng, -5, 5);
        let scaled: [BigInt; 6] = std::array::from_fn(|i| &a[i] * &c);
        let scaled_report = theorem_b_condition(&scaled).expect("entries nonzero");
        s.check(report.holds == scaled_report.holds, || {
            format!("scaling by {c} changed the verdict on {a:?}")
        });
    }
    s.finish()
}

fn kernel_invariance(trials: u64, seed: u64) -> SuiteResult {
    let mut s = Suite::new("kernel-invariance");
    let mut rng = suite_rng(seed, 8);
    for _ in 0..trials {
        let n = rng.random_range(3..=4usize);
        let a = random_nonzero_vector(&mut rng, pair_count(n), -4, 4);
        let c = CyclicCentralSubgroup::new(n, a).expect("nonzero");
        let gen = |rng: &mut ChaCha8Rng| {
            GroupElement::from_gen_exps(
                n,
                (0..n)
                    .map(|_| BigInt::from(rng.random_range(-3..=3i64)))
                    .collect(),
            )
            .expect("shape")
        };
        let alpha1 = gen(&mut rng);
        let alpha2 = gen(&mut rng);

        let k12 = kernel_rank(&alpha1, &alpha2, &c);
        let k21 = kernel_rank(&alpha2, &alpha1, &c);
        s.check(k12.kernel_rank == k21.kernel_rank, || {
            format!("swap changed rank: {alpha1}, {alpha2}")
        });

        let shifted = alpha1.mul(
            &c.generator()
                .pow(&BigInt::from(rng.random_range(-3..=3i64))),
        );
        let ks = kernel_rank(&shifted, &alpha2, &c);
        s.check(k12.kernel_rank == ks.kernel_rank, || {
            format!("central shift changed rank: {alpha1}, {alpha2}")
        });

        let kd = kernel_rank(&alpha1, &alpha1, &c);
        s.check(kd.kernel_rank >= 1, || {
            format!("kernel({alpha1}, {alpha1}) empty")
        });

        let ok = k12.basis.iter().all(|pair| {
            let g = alpha1.pow(&pair[0]).mul(&alpha2.pow(&pair[1]));
            c.is_central_mod_c(&g)
        });
        s.check(ok, || format!("basis pair not central: {alpha1}, {alpha2}"));
    }
    s.finish()
}

fn search_reverify(trials: u64, seed: u64) -> SuiteResult {
    let mut s = Suite::new("search-small");
    let mut rng = suite_rng(seed, 9);
    for trial in 0..trials.min(20) {
        let n = if trial % 2 == 0 { 3 } else { 4 };
        let a = random_nonzero_vector(&mut rng, pair_count(n), -2, 2);
        let c = CyclicCentralSubgroup::new(n, a).expect("nonzero");
        let spec1 = SearchSpec::new(c.clone(), 1, true, false).expect("bound 1");
        let spec2 = SearchSpec::new(c.clone(), 2, true, false).expect("bound 2");
        let w1 = brute_force_witness_search(&spec1).expect("valid spec");
        let w2 = brute_force_witness_search(&spec2).expect("valid spec");

        if let Some(w) = &w1 {
            let commutator = w.alpha1.commutator(&w.alpha2);
            let ok = c.membership_exponent(&commutator) == Some(w.l.clone())
                && !w.l.is_zero()
                && kernel_rank(&w.alpha1, &w.alpha2, &c) == w.kernel
                && c.membership_exponent(&w.alpha2.commutator(&w.alpha1)) == Some(-&w.l);
            s.check(ok, || format!("witness fails re-verification for C = {c}"));

            // monotone in the bound: the bound-2 scan sees the bound-1 grid
            match &w2 {
                Some(w2) => {
                    let key = |w: &crate::theorems::WitnessPair| {
                        (w.alpha1.gen_exps().to_vec(), w.alpha2.gen_exps().to_vec())
                    };
                    s.check(key(w2) <= key(w), || {
                        "bound-2 witness later than bound-1".into()
                    });
                }
                None => s.check(false, || format!("witness lost when bound grew: {c}")),
            }
        }
    }
    s.finish()
}

/// Runs every suite plus a soundness sweep. Fully deterministic in
/// `(trials, seed)`; `trials` must be at least 1.
pub fn run(trials: u64, seed: u64) -> Result<SelftestReport, Error> {
    if trials == 0 {
        return Err(Error::ZeroTrials);
    }
    let mut suites = vec![
        group_laws(trials, seed),
        commutator_form(trials, seed),
        power_law(trials, seed),
        membership_and_centrality(trials, seed),
        diophantine_exhaustive(),
        theorem_a_bulk(trials, seed),
        pfaffian_identity(trials, seed),
        condition_forms(trials, seed),
        kernel_invariance(trials, seed),
        search_reverify(trials, seed),
    ];

    let sweep_spec = SweepSpec {
        n: 4,
        bound: 2,
        trials: trials.min(100),
        seed: seed.wrapping_add(10),
    };
    let sweep = soundness_sweep(&sweep_spec)?;
    let mut sweep_suite = Suite::new("soundness-sweep");
    sweep_suite.check(sweep.violations.is_empty(), || {
        format!("{} soundness violation(s)", sweep.violations.len())
    });
    sweep_suite.cases = sweep.trials;
    suites.push(sweep_suite.finish());

    let total_failures = suites.iter().map(|s| s.failures).sum();
    Ok(SelftestReport {
        trials,
        seed,
        suites,
        sweep_spec,
        sweep,
        total_failures,
    })
}
