//! Independent brute-force oracle: bounded exhaustive enumeration of
//! candidate witness pairs over a box of generator exponents.
//!
//! The enumeration is the empirical counterpart of the theorems: a pair
//! qualifies when its commutator minors are an integer multiple of the
//! subgroup exponents (`d_ij = l·a_ij`), optionally with a trivial
//! centrality kernel. Work is partitioned over the outer `α_1` grid for
//! parallel execution; the returned witness is the lexicographically first
//! qualifying pair regardless of thread scheduling.

use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::diophantine::{centrality_kernel, kernel_rank, CentralityKernel};
use crate::error::Error;
use crate::group::{pair_count, CyclicCentralSubgroup, GroupElement};
use crate::theorems::{theorem_c_check, WitnessPair};

/// Parameters of one bounded search.
#[derive(Clone, Debug)]
pub struct SearchSpec {
    pub c: CyclicCentralSubgroup,
    /// Generator exponents range over `[-bound, bound]`.
    pub bound: u32,
    /// Demand a trivial centrality kernel (a genuine rank-2 witness).
    pub require_rank2: bool,
    /// Count pairs whose commutator is the identity (`l = 0`).
    pub allow_trivial_l: bool,
}

impl SearchSpec {
    pub fn new(
        c: CyclicCentralSubgroup,
        bound: u32,
        require_rank2: bool,
        allow_trivial_l: bool,
    ) -> Result<Self, Error> {
        if bound == 0 {
            return Err(Error::ZeroBound);
        }
        Ok(Self {
            c,
            bound,
            require_rank2,
            allow_trivial_l,
        })
    }

    /// Number of raw exponent-grid pairs, `(2·bound+1)^(2n)`.
    pub fn space_size(&self) -> BigInt {
        BigInt::from(2 * u64::from(self.bound) + 1).pow(2 * self.c.n() as u32)
    }
}

/// Cumulative enumeration progress, in canonical candidate pairs.
#[derive(Clone, Copy, Debug)]
pub struct SearchProgress {
    pub scanned: u64,
    pub total: u64,
}

/// Callback receiving progress events; invoked once before enumeration and
/// once per completed outer-grid block, possibly from worker threads.
pub type ProgressSink<'a> = &'a (dyn Fn(SearchProgress) + Sync);

fn grid_len(n: usize, bound: u32) -> Result<u64, Error> {
    let side = 2 * u64::from(bound) + 1;
    let mut total = 1u64;
    for _ in 0..n {
        total = total.checked_mul(side).ok_or_else(|| {
            Error::SearchSpaceTooLarge(format!("(2·{bound}+1)^{n} does not fit in 64 bits"))
        })?;
    }
    Ok(total)
}

/// Exponent vector at position `idx` of the lexicographic grid over
/// `[-bound, bound]^n` (last coordinate fastest).
fn decode(idx: u64, n: usize, bound: u32) -> Vec<i64> {
    let side = 2 * u64::from(bound) + 1;
    let mut v = vec![0i64; n];
    let mut rest = idx;
    for slot in v.iter_mut().rev() {
        *slot = (rest % side) as i64 - i64::from(bound);
        rest /= side;
    }
    v
}

/// Advances to the next grid vector in place; false after the last one.
fn next_vec(v: &mut [i64], bound: i64) -> bool {
    for slot in v.iter_mut().rev() {
        if *slot < bound {
            *slot += 1;
            return true;
        }
        *slot = -bound;
    }
    false
}

/// The multiplier `l` with `d(u, v) = l·a`, if the minors of the pair are an
/// exact integer multiple of `a`. Aborts on the first inconsistent minor.
fn pair_multiplier<T>(u: &[i64], v: &[i64], a: &[T]) -> Option<T>
where
    T: Integer + From<i64> + Clone,
{
    let n = u.len();
    let mut l: Option<T> = None;
    let mut t = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            let d = T::from(u[i]) * T::from(v[j]) - T::from(v[i]) * T::from(u[j]);
            match &l {
                None => {
                    if a[t].is_zero() {
                        if !d.is_zero() {
                            return None;
                        }
                    } else {
                        if !d.is_multiple_of(&a[t]) {
                            return None;
                        }
                        l = Some(d.div_floor(&a[t]));
                    }
                }
                Some(l0) => {
                    if d != l0.clone() * a[t].clone() {
                        return None;
                    }
                }
            }
            t += 1;
        }
    }
    l
}

/// The subgroup exponents, downcast to `i128` when every intermediate
/// product provably fits; otherwise kept exact.
enum Exponents {
    Small(Vec<i128>),
    Big(Vec<BigInt>),
}

fn exponent_mode(c: &CyclicCentralSubgroup) -> Exponents {
    // |d| <= 2·bound^2 < 2^63 and |l·a| <= |d|·max|a|/min|a| stays far below
    // i128::MAX as long as the exponents themselves are below 2^60.
    let limit = BigInt::from(1i128 << 60);
    if c.exponents().iter().all(|x| x.abs() < limit) {
        Exponents::Small(
            c.exponents()
                .iter()
                .map(|x| x.to_i128().expect("below 2^60"))
                .collect(),
        )
    } else {
        Exponents::Big(c.exponents().to_vec())
    }
}

fn witness_from_grid(spec: &SearchSpec, u: &[i64], v: &[i64], l: BigInt) -> Option<WitnessPair> {
    let n = spec.c.n();
    let to_elem = |w: &[i64]| {
        GroupElement::from_gen_exps(n, w.iter().map(|&x| BigInt::from(x)).collect())
            .expect("grid vector has length n")
    };
    let alpha1 = to_elem(u);
    let alpha2 = to_elem(v);
    let kernel = kernel_rank(&alpha1, &alpha2, &spec.c);
    if spec.require_rank2 && kernel.kernel_rank != 0 {
        return None;
    }
    Some(WitnessPair {
        alpha1,
        alpha2,
        l,
        kernel,
    })
}

/// Scans the block with fixed `α_1 = decode(i1)`, `α_2` ranging from the same
/// position upward (pairs with `α_1 > α_2` are the mirror images of already
/// scanned ones, and all-zero vectors never qualify).
fn scan_block(spec: &SearchSpec, exps: &Exponents, i1: u64) -> Option<WitnessPair> {
    let n = spec.c.n();
    let bound = i64::from(spec.bound);
    let u = decode(i1, n, spec.bound);
    if u.iter().all(|&x| x == 0) {
        return None;
    }
    let mut v = u.clone();
    loop {
        if !v.iter().all(|&x| x == 0) {
            let l: Option<BigInt> = match exps {
                Exponents::Small(a) => pair_multiplier::<i128>(&u, &v, a).map(BigInt::from),
                Exponents::Big(a) => pair_multiplier::<BigInt>(&u, &v, a),
            };
            if let Some(l) = l {
                if !l.is_zero() || spec.allow_trivial_l {
                    if let Some(w) = witness_from_grid(spec, &u, &v, l) {
                        return Some(w);
                    }
                }
            }
        }
        if !next_vec(&mut v, bound) {
            return None;
        }
    }
}

/// Deterministically enumerates candidate pairs in lexicographic order and
/// returns the first one whose commutator minors equal `l·a` (with `l ≠ 0`
/// unless the spec allows it), and, when `require_rank2` is set, whose
/// centrality kernel is trivial. `None` when the box holds no such pair.
///
/// The result is independent of the degree of parallelism.
pub fn brute_force_witness_search(spec: &SearchSpec) -> Result<Option<WitnessPair>, Error> {
    brute_force_witness_search_with_progress(spec, None)
}

/// [`brute_force_witness_search`] with a progress sink.
pub fn brute_force_witness_search_with_progress(
    spec: &SearchSpec,
    sink: Option<ProgressSink<'_>>,
) -> Result<Option<WitnessPair>, Error> {
    let n = spec.c.n();
    let grid = grid_len(n, spec.bound)?;
    let total_wide = u128::from(grid) * (u128::from(grid) + 1) / 2;
    let total = u64::try_from(total_wide).map_err(|_| {
        Error::SearchSpaceTooLarge("canonical pair count does not fit in 64 bits".into())
    })?;
    let exps = exponent_mode(&spec.c);

    if let Some(sink) = sink {
        sink(SearchProgress { scanned: 0, total });
    }
    let counter = AtomicU64::new(0);
    let found = (0..grid).into_par_iter().find_map_first(|i1| {
        let hit = scan_block(spec, &exps, i1);
        if let Some(sink) = sink {
            let block = grid - i1;
            let scanned = counter.fetch_add(block, Ordering::Relaxed) + block;
            sink(SearchProgress { scanned, total });
        }
        hit
    });
    Ok(found)
}

/// Three elements pairwise commuting modulo `C`, with the multipliers of the
/// three commutators and the joint centrality kernel. A trivial kernel would
/// exhibit an abelian subgroup of rank 3 over the center.
#[derive(Clone, Debug)]
pub struct TripleWitness {
    pub alphas: [GroupElement; 3],
    /// Multipliers of `[α_1,α_2]`, `[α_1,α_3]`, `[α_2,α_3]`.
    pub ls: [BigInt; 3],
    pub kernel: CentralityKernel,
}

/// Exploratory probe: the first triple (in lexicographic order, `α_1 ≤ α_2
/// ≤ α_3`) whose three pairwise commutators all lie in `C` and whose joint
/// centrality kernel is trivial. No such triple is expected for `n = 3`;
/// nothing is asserted either way.
pub fn brute_force_triple_search(spec: &SearchSpec) -> Result<Option<TripleWitness>, Error> {
    let n = spec.c.n();
    let grid = grid_len(n, spec.bound)?;
    let exps = exponent_mode(&spec.c);
    let found = (0..grid)
        .into_par_iter()
        .find_map_first(|i1| scan_triple_block(spec, &exps, grid, i1));
    Ok(found)
}

fn scan_triple_block(
    spec: &SearchSpec,
    exps: &Exponents,
    grid: u64,
    i1: u64,
) -> Option<TripleWitness> {
    let n = spec.c.n();
    let u = decode(i1, n, spec.bound);
    if u.iter().all(|&x| x == 0) {
        return None;
    }
    let multiplier = |x: &[i64], y: &[i64]| -> Option<BigInt> {
        match exps {
            Exponents::Small(a) => pair_multiplier::<i128>(x, y, a).map(BigInt::from),
            Exponents::Big(a) => pair_multiplier::<BigInt>(x, y, a),
        }
    };
    for i2 in i1..grid {
        let v = decode(i2, n, spec.bound);
        if v.iter().all(|&x| x == 0) {
            continue;
        }
        let Some(l12) = multiplier(&u, &v) else {
            continue;
        };
        for i3 in i2..grid {
            let w = decode(i3, n, spec.bound);
            if w.iter().all(|&x| x == 0) {
                continue;
            }
            let Some(l13) = multiplier(&u, &w) else {
                continue;
            };
            let Some(l23) = multiplier(&v, &w) else {
                continue;
            };
            let to_elem = |x: &[i64]| {
                GroupElement::from_gen_exps(n, x.iter().map(|&e| BigInt::from(e)).collect())
                    .expect("grid vector has length n")
            };
            let alphas = [to_elem(&u), to_elem(&v), to_elem(&w)];
            let kernel = centrality_kernel(&alphas, &spec.c);
            if kernel.rank == 0 {
                return Some(TripleWitness {
                    alphas,
                    ls: [l12, l13, l23],
                    kernel,
                });
            }
        }
    }
    None
}

/// How one sampled exponent vector relates the search oracle to the
/// necessary condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepOutcome {
    WitnessConditionHolds,
    /// A rank-2 witness exists but the condition is violated — a soundness
    /// violation falsifying either the implementation or the theorem.
    WitnessConditionViolated,
    NoWitnessConditionHolds,
    NoWitnessConditionViolated,
}

/// Classifies one exponent vector: runs the bounded rank-2 witness search
/// and evaluates the per-quadruple condition.
pub fn sweep_outcome(
    n: usize,
    a: &[BigInt],
    bound: u32,
) -> Result<(SweepOutcome, Option<WitnessPair>), Error> {
    let reports = theorem_c_check(n, a)?;
    let holds = reports.iter().all(|r| r.holds);
    let c = CyclicCentralSubgroup::new(n, a.to_vec())?;
    let spec = SearchSpec::new(c, bound, true, false)?;
    let witness = brute_force_witness_search(&spec)?;
    let outcome = match (witness.is_some(), holds) {
        (true, true) => SweepOutcome::WitnessConditionHolds,
        (true, false) => SweepOutcome::WitnessConditionViolated,
        (false, true) => SweepOutcome::NoWitnessConditionHolds,
        (false, false) => SweepOutcome::NoWitnessConditionViolated,
    };
    Ok((outcome, witness))
}

/// Parameters of a randomized soundness sweep.
#[derive(Clone, Copy, Debug)]
pub struct SweepSpec {
    pub n: usize,
    pub bound: u32,
    pub trials: u64,
    pub seed: u64,
}

/// A sampled vector where a rank-2 witness was found although the condition
/// is violated. An empty list is the expected outcome of every sweep.
#[derive(Clone, Debug)]
pub struct SweepViolation {
    pub a: Vec<BigInt>,
    pub witness: WitnessPair,
}

#[derive(Clone, Debug, Default)]
pub struct SweepReport {
    pub trials: u64,
    pub witness_found: u64,
    pub no_witness: u64,
    pub condition_held: u64,
    pub condition_violated: u64,
    pub violations: Vec<SweepViolation>,
}

/// Samples `trials` random exponent vectors (entries nonzero, in `[-5, 5]`)
/// and classifies each; counts per outcome and records any soundness
/// violations. Deterministic for a fixed seed.
pub fn soundness_sweep(spec: &SweepSpec) -> Result<SweepReport, Error> {
    if spec.n < 4 {
        return Err(Error::RankBelowFour { n: spec.n });
    }
    if spec.trials == 0 {
        return Err(Error::ZeroTrials);
    }
    if spec.bound == 0 {
        return Err(Error::ZeroBound);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let m = pair_count(spec.n);
    let mut report = SweepReport {
        trials: spec.trials,
        ..SweepReport::default()
    };
    for _ in 0..spec.trials {
        let a: Vec<BigInt> = (0..m)
            .map(|_| {
                let mut x = 0i64;
                while x == 0 {
                    x = rng.random_range(-5..=5);
                }
                BigInt::from(x)
            })
            .collect();
        let (outcome, witness) = sweep_outcome(spec.n, &a, spec.bound)?;
        match outcome {
            SweepOutcome::WitnessConditionHolds => {
                report.witness_found += 1;
                report.condition_held += 1;
            }
            SweepOutcome::WitnessConditionViolated => {
                report.witness_found += 1;
                report.condition_violated += 1;
                report.violations.push(SweepViolation {
                    a,
                    witness: witness.expect("witness present in this outcome"),
                });
            }
            SweepOutcome::NoWitnessConditionHolds => {
                report.no_witness += 1;
                report.condition_held += 1;
            }
            SweepOutcome::NoWitnessConditionViolated => {
                report.no_witness += 1;
                report.condition_violated += 1;
            }
        }
    }
    Ok(report)
}
