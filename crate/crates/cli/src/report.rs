//! JSON report types shared by every subcommand, plus the wire encoding of
//! group elements as pairs of integer arrays.
//!
//! Integers are serialized as plain JSON numbers of unbounded size (the
//! `arbitrary_precision` feature keeps every digit); on input only the exact
//! integer grammar `-?[0-9]+` is accepted — floats and scientific notation
//! are rejected.

use num_bigint::BigInt;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use nilrank_core::{CyclicCentralSubgroup, GroupElement, WitnessPair};

pub const SCHEMA_VERSION: u32 = 1;

/// An arbitrary-precision integer carried as a JSON number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JsonInt(pub BigInt);

impl From<BigInt> for JsonInt {
    fn from(v: BigInt) -> Self {
        JsonInt(v)
    }
}

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let n: serde_json::Number = self
            .0
            .to_string()
            .parse()
            .map_err(serde::ser::Error::custom)?;
        n.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let n = serde_json::Number::deserialize(deserializer)?;
        let s = n.to_string();
        let digits = match s.strip_prefix('-') {
            Some(rest) => rest,
            None => &s,
        };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(D::Error::custom(format!("not a plain integer: {s}")));
        }
        s.parse::<BigInt>()
            .map(JsonInt)
            .map_err(|e| D::Error::custom(format!("bad integer {s}: {e}")))
    }
}

fn ints(v: &[BigInt]) -> Vec<JsonInt> {
    v.iter().cloned().map(JsonInt).collect()
}

/// A group element as a pair of integer arrays.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementDto {
    pub n: usize,
    pub gen_exps: Vec<JsonInt>,
    pub comm_exps: Vec<JsonInt>,
}

impl From<&GroupElement> for ElementDto {
    fn from(g: &GroupElement) -> Self {
        ElementDto {
            n: g.n(),
            gen_exps: ints(g.gen_exps()),
            comm_exps: ints(g.comm_exps()),
        }
    }
}

impl ElementDto {
    pub fn to_element(&self) -> Result<GroupElement, String> {
        GroupElement::new(
            self.n,
            self.gen_exps.iter().map(|x| x.0.clone()).collect(),
            self.comm_exps.iter().map(|x| x.0.clone()).collect(),
        )
        .map_err(|e| e.to_string())
    }
}

/// The cyclic central subgroup as rank plus exponent vector (lexicographic
/// pair order).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupDto {
    pub n: usize,
    pub a: Vec<JsonInt>,
}

impl From<&CyclicCentralSubgroup> for SubgroupDto {
    fn from(c: &CyclicCentralSubgroup) -> Self {
        SubgroupDto {
            n: c.n(),
            a: ints(c.exponents()),
        }
    }
}

impl SubgroupDto {
    pub fn to_subgroup(&self) -> Result<CyclicCentralSubgroup, String> {
        CyclicCentralSubgroup::new(self.n, self.a.iter().map(|x| x.0.clone()).collect())
            .map_err(|e| e.to_string())
    }
}

/// A witness certificate: the subgroup, the pair, the commutator multiplier,
/// the minors (lexicographic order), and the kernel report. This is the
/// payload `verify` re-derives from scratch.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDto {
    pub c: SubgroupDto,
    pub alpha1: ElementDto,
    pub alpha2: ElementDto,
    pub l: JsonInt,
    pub minors: Vec<JsonInt>,
    pub kernel_rank: usize,
    pub kernel_basis: Vec<[JsonInt; 2]>,
}

impl WitnessDto {
    pub fn from_parts(c: &CyclicCentralSubgroup, w: &WitnessPair) -> Self {
        WitnessDto {
            c: c.into(),
            alpha1: (&w.alpha1).into(),
            alpha2: (&w.alpha2).into(),
            l: JsonInt(w.l.clone()),
            minors: ints(&w.alpha1.commutator_exponents(&w.alpha2)),
            kernel_rank: w.kernel.kernel_rank,
            kernel_basis: w
                .kernel
                .basis
                .iter()
                .map(|p| [JsonInt(p[0].clone()), JsonInt(p[1].clone())])
                .collect(),
        }
    }
}

/// Per-quadruple condition evaluation.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuadrupleDto {
    pub quadruple: [usize; 4],
    pub lhs_term: JsonInt,
    pub rhs_term: JsonInt,
    pub epsilon: i8,
    pub holds: bool,
    pub pfaffian: JsonInt,
}

impl From<&nilrank_core::ConditionReport> for QuadrupleDto {
    fn from(r: &nilrank_core::ConditionReport) -> Self {
        QuadrupleDto {
            quadruple: r.quadruple,
            lhs_term: JsonInt(r.lhs_term.clone()),
            rhs_term: JsonInt(r.rhs_term.clone()),
            epsilon: r.epsilon,
            holds: r.holds,
            pfaffian: JsonInt(r.pfaffian.clone()),
        }
    }
}

/// Envelope common to every command.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct JsonReport<I, R> {
    pub schema_version: u32,
    pub command: String,
    pub inputs: I,
    pub result: R,
    pub verdict: String,
}

impl<I: Serialize, R: Serialize> JsonReport<I, R> {
    pub fn new(command: &str, inputs: I, result: R, verdict: impl Into<String>) -> Self {
        JsonReport {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            inputs,
            result,
            verdict: verdict.into(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConstructInputs {
    pub a1: JsonInt,
    pub a2: JsonInt,
    pub a3: JsonInt,
}

/// The three determinants of the construction, keyed by pair to avoid any
/// ordering ambiguity: `d12 = a1`, `d23 = a2`, `d13 = a3`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConstructDeterminants {
    pub d12: JsonInt,
    pub d23: JsonInt,
    pub d13: JsonInt,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConstructResult {
    pub witness: WitnessDto,
    pub determinants: ConstructDeterminants,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckInputs {
    pub n: usize,
    pub a: Vec<JsonInt>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckResult {
    pub all_hold: bool,
    pub quadruples: Vec<QuadrupleDto>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SearchInputs {
    pub n: usize,
    pub a: Vec<JsonInt>,
    pub bound: u32,
    pub require_rank2: bool,
    pub allow_trivial_l: bool,
    pub triples: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SearchResult {
    pub space_size: JsonInt,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessDto>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TripleDto {
    pub c: SubgroupDto,
    pub alpha1: ElementDto,
    pub alpha2: ElementDto,
    pub alpha3: ElementDto,
    /// Multipliers of `[α1,α2]`, `[α1,α3]`, `[α2,α3]`.
    pub ls: [JsonInt; 3],
    pub kernel_rank: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TripleSearchResult {
    pub space_size: JsonInt,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub triple: Option<TripleDto>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyInputs {
    pub file: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyCheck {
    pub field: String,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub actual: Option<String>,
}

impl VerifyCheck {
    pub fn pass(field: &str) -> Self {
        VerifyCheck {
            field: field.to_string(),
            ok: true,
            expected: None,
            actual: None,
        }
    }

    pub fn fail(field: &str, expected: impl ToString, actual: impl ToString) -> Self {
        VerifyCheck {
            field: field.to_string(),
            ok: false,
            expected: Some(expected.to_string()),
            actual: Some(actual.to_string()),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyResult {
    pub checks: Vec<VerifyCheck>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SelftestInputs {
    pub trials: u64,
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteDto {
    pub name: String,
    pub cases: u64,
    pub failures: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepDto {
    pub n: usize,
    pub bound: u32,
    pub trials: u64,
    pub witness_found: u64,
    pub no_witness: u64,
    pub condition_held: u64,
    pub condition_violated: u64,
    pub violations: Vec<SweepViolationDto>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepViolationDto {
    pub a: Vec<JsonInt>,
    pub alpha1_gen_exps: Vec<JsonInt>,
    pub alpha2_gen_exps: Vec<JsonInt>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SelftestResult {
    pub suites: Vec<SuiteDto>,
    pub sweep: SweepDto,
    pub total_failures: u64,
}

impl SweepDto {
    pub fn from_report(n: usize, bound: u32, report: &nilrank_core::SweepReport) -> Self {
        SweepDto {
            n,
            bound,
            trials: report.trials,
            witness_found: report.witness_found,
            no_witness: report.no_witness,
            condition_held: report.condition_held,
            condition_violated: report.condition_violated,
            violations: report
                .violations
                .iter()
                .map(|v| SweepViolationDto {
                    a: ints(&v.a),
                    alpha1_gen_exps: ints(v.witness.alpha1.gen_exps()),
                    alpha2_gen_exps: ints(v.witness.alpha2.gen_exps()),
                })
                .collect(),
        }
    }
}
