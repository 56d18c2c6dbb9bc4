//! Exact commutator calculus in free class-2 nilpotent groups `F_n`, and
//! decision/construction of rank-over-center witnesses for quotients of
//! `F_n` by a cyclic central subgroup `C`.
//!
//! The crate has four layers:
//!
//! - [`group`] — normal-form arithmetic in `F_n` and membership/centrality
//!   tests modulo `C`, all over arbitrary-precision integers;
//! - [`diophantine`] — gcds, the two-variable linear Diophantine solver, and
//!   the rational kernel rank certifying rank 2 over the center;
//! - [`theorems`] — the constructive three-generator witness, the
//!   four-generator necessary condition, and its per-quadruple form for
//!   `n ≥ 4`, with the `det(A)` / Pfaffian identity;
//! - [`search`] — an independent brute-force enumeration oracle and a
//!   randomized soundness sweep validating the condition against it.
//!
//! [`selftest`] packages the whole property surface as deterministic seeded
//! suites for the command-line front end.

pub mod diophantine;
pub mod error;
pub mod group;
pub mod search;
pub mod selftest;
pub mod theorems;

pub use diophantine::{
    centrality_kernel, gcd_many, kernel_rank, solve_linear_2var, CentralityKernel,
    DiophantineSolution, KernelReport,
};
pub use error::Error;
pub use group::{pair_at, pair_count, pair_index, CyclicCentralSubgroup, GroupElement};
pub use search::{
    brute_force_triple_search, brute_force_witness_search,
    brute_force_witness_search_with_progress, soundness_sweep, sweep_outcome, SearchProgress,
    SearchSpec, SweepOutcome, SweepReport, SweepSpec, SweepViolation, TripleWitness,
};
pub use theorems::{
    det_a, pfaffian, subgroup_n3, theorem_a_construct, theorem_b_condition, theorem_c_check,
    ConditionReport, WitnessPair,
};
