//! `nilrank` — construct, check, search, and verify rank-over-center
//! witnesses for quotients of free class-2 nilpotent groups by a cyclic
//! central subgroup.
//!
//! Exit codes are uniform across subcommands: 0 affirmative (witness found,
//! condition holds, verification passed), 1 negative (violated, nothing in
//! the box, mismatch), 2 usage or input error.

mod report;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Mutex;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use nilrank_core::{
    brute_force_triple_search, brute_force_witness_search_with_progress, kernel_rank, selftest,
    subgroup_n3, theorem_a_construct, theorem_c_check, CyclicCentralSubgroup, Error,
    SearchProgress, SearchSpec,
};

use report::{
    CheckInputs, CheckResult, ConstructDeterminants, ConstructInputs, ConstructResult, JsonInt,
    JsonReport, QuadrupleDto, SearchInputs, SearchResult, SelftestInputs, SelftestResult, SuiteDto,
    SweepDto, TripleDto, TripleSearchResult, VerifyCheck, VerifyInputs, VerifyResult, WitnessDto,
};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Parser)]
#[command(
    name = "nilrank",
    version,
    about = "Rank-over-center witnesses for quotients of free class-2 nilpotent groups \
             by a cyclic central subgroup",
    long_about = "Exact-arithmetic calculator for the free class-2 nilpotent group F_n and \
                  the quotients F_n/C, where C is the cyclic central subgroup generated by \
                  prod [x_i,x_j]^{a_ij}.\n\n\
                  Exponent vectors are given in lexicographic pair order \
                  (1,2),(1,3),...,(1,n),(2,3),...,(n-1,n), except `construct`, which takes \
                  the three-generator presentation order (a1, a2, a3) of \
                  [x1,x2]^a1 [x2,x3]^a2 [x1,x3]^a3. Integers are arbitrary precision; \
                  scientific notation is rejected.\n\n\
                  Exit codes: 0 affirmative, 1 negative/violated/not-found, 2 usage or \
                  input error."
)]
struct Cli {
    /// Output format on stdout (diagnostics always go to stderr)
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct the three-generator rank-2 witness pair for nonzero (a1, a2, a3)
    Construct {
        /// Exponents of [x1,x2]^a1 [x2,x3]^a2 [x1,x3]^a3, presentation order
        #[arg(long, value_name = "A1,A2,A3", allow_hyphen_values = true)]
        a: String,
    },

    /// Evaluate the necessary condition on every quadruple of generators (n >= 4)
    Check {
        /// Rank of the ambient free nilpotent group
        #[arg(long)]
        n: usize,

        /// Exponents a_ij, lexicographic pair order, all nonzero
        #[arg(long, value_name = "A12,A13,...", allow_hyphen_values = true)]
        a: String,
    },

    /// Exhaustively search a bounded exponent box for a witness pair
    Search {
        /// Rank of the ambient free nilpotent group
        #[arg(long)]
        n: usize,

        /// Exponents a_ij, lexicographic pair order (zeros allowed, not all zero)
        #[arg(long, value_name = "A12,A13,...", allow_hyphen_values = true)]
        a: String,

        /// Generator exponents range over [-bound, bound]
        #[arg(long, default_value_t = 2)]
        bound: u32,

        /// Keep only pairs with a trivial centrality kernel (genuine rank-2 witnesses)
        #[arg(long)]
        require_rank2: bool,

        /// Also accept pairs whose commutator is the identity (l = 0)
        #[arg(long)]
        allow_trivial_l: bool,

        /// Emit a JSON status line on stderr about every N candidate pairs
        #[arg(long, value_name = "N")]
        progress: Option<u64>,

        /// Experimental: search for three pairwise-commuting elements with a
        /// trivial joint kernel (a rank-3 configuration) instead of a pair
        #[arg(long)]
        triples: bool,
    },

    /// Re-derive every claim in a stored witness report from scratch
    Verify {
        /// JSON report produced by `construct` or `search`
        file: PathBuf,
    },

    /// Run the deterministic property suites plus the soundness sweep
    Selftest {
        /// Trials per randomized suite
        #[arg(long, default_value_t = 100)]
        trials: u64,

        /// RNG seed; identical seeds give byte-identical reports
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.command {
        Command::Construct { a } => cmd_construct(&a, cli.format),
        Command::Check { n, a } => cmd_check(n, &a, cli.format),
        Command::Search {
            n,
            a,
            bound,
            require_rank2,
            allow_trivial_l,
            progress,
            triples,
        } => cmd_search(
            n,
            &a,
            bound,
            require_rank2,
            allow_trivial_l,
            progress,
            triples,
            cli.format,
        ),
        Command::Verify { file } => cmd_verify(&file, cli.format),
        Command::Selftest { trials, seed } => cmd_selftest(trials, seed, cli.format),
    }
}

fn parse_int_list(s: &str) -> Result<Vec<BigInt>, String> {
    s.split(',')
        .map(|tok| {
            let t = tok.trim();
            if t.is_empty() {
                return Err("empty entry in integer list".to_string());
            }
            t.parse::<BigInt>().map_err(|_| {
                format!("not an integer: '{t}' (floats and scientific notation are rejected)")
            })
        })
        .collect()
}

fn emit(format: Format, json: String, text: String) {
    match format {
        Format::Json => println!("{json}"),
        Format::Text => println!("{text}"),
    }
}

fn cmd_construct(a: &str, format: Format) -> Result<u8, String> {
    let v = parse_int_list(a)?;
    if v.len() != 3 {
        return Err(format!(
            "construct needs exactly 3 exponents, got {}",
            v.len()
        ));
    }
    let witness = theorem_a_construct(&v[0], &v[1], &v[2]).map_err(|e| e.to_string())?;
    let c = subgroup_n3(&v[0], &v[1], &v[2]).map_err(|e| e.to_string())?;

    let dto = WitnessDto::from_parts(&c, &witness);
    let minors = witness.alpha1.commutator_exponents(&witness.alpha2);
    let result = ConstructResult {
        witness: dto,
        determinants: ConstructDeterminants {
            d12: JsonInt(minors[0].clone()),
            d23: JsonInt(minors[2].clone()),
            d13: JsonInt(minors[1].clone()),
        },
    };
    let inputs = ConstructInputs {
        a1: JsonInt(v[0].clone()),
        a2: JsonInt(v[1].clone()),
        a3: JsonInt(v[2].clone()),
    };
    let report = JsonReport::new("construct", inputs, result, "rank2-witness");

    let text = format!(
        "alpha1 = {}\nalpha2 = {}\n[alpha1, alpha2] = z^{} for the generator z of C = {}\n\
         determinants: d12 = {}, d23 = {}, d13 = {}\nkernel rank: {}\nverdict: rank2-witness",
        witness.alpha1,
        witness.alpha2,
        witness.l,
        c,
        minors[0],
        minors[2],
        minors[1],
        witness.kernel.kernel_rank,
    );
    emit(format, report.to_json(), text);
    Ok(0)
}

fn cmd_check(n: usize, a: &str, format: Format) -> Result<u8, String> {
    let v = parse_int_list(a)?;
    let reports = theorem_c_check(n, &v).map_err(|e| match e {
        Error::RankBelowFour { .. } => {
            format!("{e}; run `nilrank construct` instead")
        }
        other => other.to_string(),
    })?;

    let all_hold = reports.iter().all(|r| r.holds);
    let verdict = if all_hold {
        "condition-holds"
    } else {
        "condition-violated"
    };
    let result = CheckResult {
        all_hold,
        quadruples: reports.iter().map(QuadrupleDto::from).collect(),
    };
    let inputs = CheckInputs {
        n,
        a: v.iter().cloned().map(JsonInt).collect(),
    };
    let report = JsonReport::new("check", inputs, result, verdict);

    let mut lines: Vec<String> = reports
        .iter()
        .map(|r| {
            format!(
                "quadruple ({},{},{},{}): lhs {}, rhs {}, epsilon {:+}, pfaffian {} -> {}",
                r.quadruple[0],
                r.quadruple[1],
                r.quadruple[2],
                r.quadruple[3],
                r.lhs_term,
                r.rhs_term,
                r.epsilon,
                r.pfaffian,
                if r.holds { "holds" } else { "violated" },
            )
        })
        .collect();
    let violated = reports.iter().filter(|r| !r.holds).count();
    lines.push(format!(
        "verdict: {verdict} ({violated} of {} quadruples violated)",
        reports.len()
    ));
    emit(format, report.to_json(), lines.join("\n"));

    Ok(if all_hold { 0 } else { 1 })
}

#[allow(clippy::too_many_arguments)]
fn cmd_search(
    n: usize,
    a: &str,
    bound: u32,
    require_rank2: bool,
    allow_trivial_l: bool,
    progress: Option<u64>,
    triples: bool,
    format: Format,
) -> Result<u8, String> {
    let v = parse_int_list(a)?;
    let c = CyclicCentralSubgroup::new(n, v.clone()).map_err(|e| e.to_string())?;
    let spec = SearchSpec::new(c.clone(), bound, require_rank2, allow_trivial_l)
        .map_err(|e| e.to_string())?;
    let space_size = spec.space_size();
    let inputs = SearchInputs {
        n,
        a: v.iter().cloned().map(JsonInt).collect(),
        bound,
        require_rank2,
        allow_trivial_l,
        triples,
    };

    if triples {
        let found = brute_force_triple_search(&spec).map_err(|e| e.to_string())?;
        let verdict = if found.is_some() {
            "rank3-triple-found"
        } else {
            "no-rank3-triple-in-box"
        };
        let text = match &found {
            Some(t) => format!(
                "alpha1 = {}\nalpha2 = {}\nalpha3 = {}\nmultipliers: {}, {}, {}\nkernel rank: {}\nverdict: {verdict}",
                t.alphas[0], t.alphas[1], t.alphas[2], t.ls[0], t.ls[1], t.ls[2], t.kernel.rank,
            ),
            None => format!("no rank-3 triple within bound {bound}\nverdict: {verdict}"),
        };
        let result = TripleSearchResult {
            space_size: JsonInt(space_size),
            triple: found.map(|t| TripleDto {
                c: (&c).into(),
                alpha1: (&t.alphas[0]).into(),
                alpha2: (&t.alphas[1]).into(),
                alpha3: (&t.alphas[2]).into(),
                ls: [
                    JsonInt(t.ls[0].clone()),
                    JsonInt(t.ls[1].clone()),
                    JsonInt(t.ls[2].clone()),
                ],
                kernel_rank: t.kernel.rank,
            }),
        };
        let code = u8::from(result.triple.is_none());
        let report = JsonReport::new("search", inputs, result, verdict);
        emit(format, report.to_json(), text);
        return Ok(code);
    }

    // progress stream: one JSON object per line on stderr
    let every = progress.unwrap_or(0).max(1);
    let last_emitted = Mutex::new(None::<u64>);
    let sink = |p: SearchProgress| {
        let mut last = last_emitted.lock().expect("progress mutex");
        let due = match *last {
            None => true,
            Some(prev) => p.scanned.saturating_sub(prev) >= every || p.scanned == p.total,
        };
        if due && last.is_none_or(|prev| p.scanned > prev || p.scanned == 0) {
            *last = Some(p.scanned);
            eprintln!(
                "{}",
                serde_json::json!({
                    "type": "search-progress",
                    "scanned": p.scanned,
                    "total": p.total,
                })
            );
        }
    };
    // the space size is reported up front, before any enumeration
    let side = BigInt::from(2 * u64::from(bound) + 1);
    let grid = side.pow(n as u32);
    let pairs = (&grid * (&grid + 1u32)) / 2u32;
    eprintln!(
        "{}",
        serde_json::json!({
            "type": "search-start",
            "space_size": JsonInt(space_size.clone()),
            "candidate_pairs": JsonInt(pairs),
        })
    );
    let found = if progress.is_some() {
        brute_force_witness_search_with_progress(&spec, Some(&sink))
    } else {
        brute_force_witness_search_with_progress(&spec, None)
    }
    .map_err(|e| e.to_string())?;

    let verdict = if found.is_some() {
        "witness-found"
    } else {
        "no-witness-in-box"
    };
    let text = match &found {
        Some(w) => format!(
            "space size: {space_size}\nalpha1 = {}\nalpha2 = {}\nl = {}\nkernel rank: {}\nverdict: {verdict}",
            w.alpha1, w.alpha2, w.l, w.kernel.kernel_rank,
        ),
        None => format!("space size: {space_size}\nno witness within bound {bound}\nverdict: {verdict}"),
    };
    let result = SearchResult {
        space_size: JsonInt(space_size),
        witness: found.as_ref().map(|w| WitnessDto::from_parts(&c, w)),
    };
    let code = u8::from(result.witness.is_none());
    let report = JsonReport::new("search", inputs, result, verdict);
    emit(format, report.to_json(), text);
    Ok(code)
}

fn cmd_verify(file: &PathBuf, format: Format) -> Result<u8, String> {
    let text =
        fs::read_to_string(file).map_err(|e| format!("cannot read {}: {e}", file.display()))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| format!("malformed JSON: {e}"))?;
    let witness_value = value
        .get("result")
        .and_then(|r| r.get("witness"))
        .filter(|w| !w.is_null())
        .ok_or("no result.witness object in the file")?;
    let dto: WitnessDto = serde_json::from_value(witness_value.clone())
        .map_err(|e| format!("malformed witness payload: {e}"))?;

    let c = dto
        .c
        .to_subgroup()
        .map_err(|e| format!("bad subgroup in witness: {e}"))?;
    let alpha1 = dto
        .alpha1
        .to_element()
        .map_err(|e| format!("bad alpha1 in witness: {e}"))?;
    let alpha2 = dto
        .alpha2
        .to_element()
        .map_err(|e| format!("bad alpha2 in witness: {e}"))?;
    if alpha1.n() != c.n() || alpha2.n() != c.n() {
        return Err(format!(
            "rank mismatch inside witness: subgroup has n = {}, elements have n = {}, {}",
            c.n(),
            alpha1.n(),
            alpha2.n()
        ));
    }
    if dto.minors.len() != c.exponents().len() {
        return Err(format!(
            "minors vector has length {}, expected {}",
            dto.minors.len(),
            c.exponents().len()
        ));
    }

    let mut checks = Vec::new();

    let derived_minors = alpha1.commutator_exponents(&alpha2);
    let recorded_minors: Vec<BigInt> = dto.minors.iter().map(|x| x.0.clone()).collect();
    checks.push(if derived_minors == recorded_minors {
        VerifyCheck::pass("minors")
    } else {
        VerifyCheck::fail(
            "minors",
            join_ints(&derived_minors),
            join_ints(&recorded_minors),
        )
    });

    let derived_l = c.membership_exponent(&alpha1.commutator(&alpha2));
    checks.push(match &derived_l {
        Some(l) if *l == dto.l.0 => VerifyCheck::pass("l"),
        Some(l) => VerifyCheck::fail("l", l, &dto.l.0),
        None => VerifyCheck::fail("l", "a commutator inside C", "not a member of C"),
    });

    let kernel = kernel_rank(&alpha1, &alpha2, &c);
    checks.push(if kernel.kernel_rank == dto.kernel_rank {
        VerifyCheck::pass("kernel_rank")
    } else {
        VerifyCheck::fail("kernel_rank", kernel.kernel_rank, dto.kernel_rank)
    });

    let recorded_basis: Vec<[BigInt; 2]> = dto
        .kernel_basis
        .iter()
        .map(|p| [p[0].0.clone(), p[1].0.clone()])
        .collect();
    checks.push(if kernel.basis == recorded_basis {
        VerifyCheck::pass("kernel_basis")
    } else {
        VerifyCheck::fail(
            "kernel_basis",
            format!("{:?}", kernel.basis),
            format!("{recorded_basis:?}"),
        )
    });

    let ok = checks.iter().all(|ch| ch.ok);
    let verdict = if ok { "verified" } else { "mismatch" };
    let lines: Vec<String> = checks
        .iter()
        .map(|ch| match (&ch.expected, &ch.actual) {
            (Some(e), Some(a)) if !ch.ok => {
                format!("{}: MISMATCH (derived {e}, recorded {a})", ch.field)
            }
            _ => format!("{}: ok", ch.field),
        })
        .chain([format!("verdict: {verdict}")])
        .collect();

    let inputs = VerifyInputs {
        file: file.display().to_string(),
    };
    let report = JsonReport::new("verify", inputs, VerifyResult { checks }, verdict);
    emit(format, report.to_json(), lines.join("\n"));
    Ok(u8::from(!ok))
}

fn join_ints(v: &[BigInt]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn cmd_selftest(trials: u64, seed: u64, format: Format) -> Result<u8, String> {
    let outcome = selftest::run(trials, seed).map_err(|e| e.to_string())?;
    let result = SelftestResult {
        suites: outcome
            .suites
            .iter()
            .map(|s| SuiteDto {
                name: s.name.to_string(),
                cases: s.cases,
                failures: s.failures,
                first_failure: s.first_failure.clone(),
            })
            .collect(),
        sweep: SweepDto::from_report(
            outcome.sweep_spec.n,
            outcome.sweep_spec.bound,
            &outcome.sweep,
        ),
        total_failures: outcome.total_failures,
    };
    let ok = outcome.total_failures == 0;
    let verdict = if ok { "pass" } else { "fail" };

    let mut lines: Vec<String> = outcome
        .suites
        .iter()
        .map(|s| match &s.first_failure {
            Some(first) => {
                format!(
                    "{}: {} cases, {} failures (first: {first})",
                    s.name, s.cases, s.failures
                )
            }
            None => format!("{}: {} cases, {} failures", s.name, s.cases, s.failures),
        })
        .collect();
    lines.push(format!(
        "sweep: {} trials, {} witnesses, {} condition violations, {} soundness violations",
        outcome.sweep.trials,
        outcome.sweep.witness_found,
        outcome.sweep.condition_violated,
        outcome.sweep.violations.len()
    ));
    lines.push(format!("verdict: {verdict}"));

    let report = JsonReport::new("selftest", SelftestInputs { trials, seed }, result, verdict);
    emit(format, report.to_json(), lines.join("\n"));
    Ok(u8::from(!ok))
}
