//! Classification and Hamiltonian-cycle construction for connected Cayley
//! graphs of groups of order `2·3·p·q` (four distinct primes).
//!
//! The pipeline, in order:
//!
//! 1. **Validate** the group and the generating set, and reduce the set to
//!    a minimal one (classification reports redundancy as an error instead).
//! 2. **Normalize** the presentation: normal-part primes the action fixes
//!    move into the point part, so the remaining normal part is exactly the
//!    derived subgroup.
//! 3. **Classify** into a case family from the structure of the derived
//!    subgroup, the set size, and which primes the small rotation subgroups
//!    centralize; several configurations are delegated to classical results
//!    instead of being constructed here.
//! 4. **Match** the labels against the tabulated case catalog
//!    ([`frames`]), producing an arrangement (slot order, inversions, a
//!    conjugation witness) and a plan.
//! 5. **Execute** the plan: lift tabulated quotient cycles through the
//!    cyclic kernel, run a seeded edge-flip lift, assemble a direct
//!    product, or reduce a normal-part generator — always re-verifying the
//!    resulting word on the full graph.
//!
//! Nothing is ever reported as verified on the strength of theory alone:
//! every cycle in an outcome has been traced and checked by the
//! independent verifier in [`crate::walks`].

mod frames;
pub(crate) mod present;
mod templates;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::time::Instant;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::arith::{is_prime, prime_factors};
use crate::group::{GroupElement, GroupError, GroupSpec, QuotientMap, SubgroupOfGammaPart};
use crate::lifting::{cor52_lift, fgl_lift, reduce_generator_lift, voltage, ReduceOptions};
use crate::walks::{
    build_graph, cartesian_product_hc, search_hamiltonian_seeded, verify_hamiltonian_cycle_elements,
    FactorKind, GenSet, SearchMode, Step, WalkWord,
};

use frames::{match_case, Frame, MatchEnv, Plan};
use present::{primes_of, subgroup_presentation, Presentation};

/// Errors of classification and construction that concern the *inputs*;
/// downstream difficulties are reported inside [`ConstructionReport`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("the generating set is empty")]
    EmptyGeneratingSet,
    #[error("label {0} lies outside the group")]
    LabelOutsideGroup(GroupElement),
    #[error("the labels generate a subgroup of order {got}, not the full group of order {want}")]
    NotGenerating { got: u64, want: u64 },
    #[error("label #{index} is redundant: the set still generates without it")]
    NotMinimal { index: usize },
    #[error("group order {order} is not 2·3·p·q with distinct primes p, q > 3")]
    UnsupportedOrder { order: u64 },
    #[error("{0} generators, but minimal generating sets here have at most 4")]
    TooManyGenerators(usize),
    #[error("the word pair fits no tabulated criterion form: {0}")]
    CriterionOutsideForms(String),
    #[error("invalid criterion instance: {0}")]
    CriterionBadModuli(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

// ---------------------------------------------------------------------------
// tags

/// Structure of the derived subgroup (after normalization) together with
/// the two construction-relevant primes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "shape", rename_all = "kebab-case")]
pub enum GPrimeShape {
    /// Derived subgroup `C_p × C_q`, point part `C_6`.
    Pq { p: u64, q: u64 },
    /// Derived subgroup `C_3 × C_p`, point part `C_{2q}`.
    ThreeP { p: u64, q: u64 },
}

/// Top-level case families of the construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    IA,
    IB,
    IIAaI,
    IIAaII,
    IIAbI,
    IIAbII,
    IIAbIII,
    IIB,
    III,
}

impl Family {
    pub fn label(&self) -> &'static str {
        match self {
            Family::IA => "I.A",
            Family::IB => "I.B",
            Family::IIAaI => "II.A.a.i",
            Family::IIAaII => "II.A.a.ii",
            Family::IIAbI => "II.A.b.i",
            Family::IIAbII => "II.A.b.ii",
            Family::IIAbIII => "II.A.b.iii",
            Family::IIB => "II.B",
            Family::III => "III",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A leaf of the case outline: family plus optional case and sub-case
/// numbers (`0` means "not refined at that depth").
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LeafTag {
    pub family: Family,
    pub case: u8,
    pub sub: u8,
}

impl fmt::Display for LeafTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.family)?;
        if self.case > 0 {
            write!(f, ".{}", self.case)?;
            if self.sub > 0 {
                write!(f, ".{}", self.sub)?;
            }
        }
        Ok(())
    }
}

impl Serialize for LeafTag {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Which classical result an instance is handed to instead of running the
/// template machinery.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DelegationTag {
    /// One of the two large primes is at most 7.
    SmallPrimes { p: u64, q: u64 },
    /// The group is abelian (hence cyclic here).
    Abelian,
    /// The derived subgroup has prime order.
    PrimeDerivedSubgroup,
    /// The group is dihedral.
    DihedralFull { order: u64 },
    /// The group splits as dihedral × cyclic.
    DihedralCyclicProduct { dihedral: u64, cyclic: u64 },
    /// The image of the generating set stays minimal in the quotient by
    /// the given normal subgroup.
    MinimalQuotientImage { modulus: u64 },
}

impl DelegationTag {
    fn kind(&self) -> &'static str {
        match self {
            DelegationTag::SmallPrimes { .. } => "small-primes",
            DelegationTag::Abelian => "abelian",
            DelegationTag::PrimeDerivedSubgroup => "prime-derived-subgroup",
            DelegationTag::DihedralFull { .. } => "dihedral-full",
            DelegationTag::DihedralCyclicProduct { .. } => "dihedral-cyclic-product",
            DelegationTag::MinimalQuotientImage { .. } => "minimal-quotient-image",
        }
    }

    /// A one-line structural explanation of why the instance is known to
    /// be Hamiltonian without running the template machinery.
    pub fn describe(&self) -> String {
        match self {
            DelegationTag::SmallPrimes { p, q } => format!(
                "a large prime is at most 7 (p={p}, q={q}); orders with such small factors \
                 fall to exhaustive search and the classical small-order results"
            ),
            DelegationTag::Abelian => "the group is abelian, and every connected Cayley graph \
                 of an abelian group with at least three vertices is Hamiltonian (Chen–Quimpo)"
                .to_string(),
            DelegationTag::PrimeDerivedSubgroup => "the derived subgroup has prime order, \
                 the setting of the Keating–Witte theorem"
                .to_string(),
            DelegationTag::DihedralFull { order } => format!(
                "the group is dihedral of order {order}; connected Cayley graphs of \
                 dihedral groups of order divisible by four times an odd number this small \
                 are covered by Alspach's results on generalized dihedral groups"
            ),
            DelegationTag::DihedralCyclicProduct { dihedral, cyclic } => format!(
                "the group is the direct product of a dihedral group of order {dihedral} \
                 and a cyclic group of order {cyclic}; covered by product results for \
                 such factors"
            ),
            DelegationTag::MinimalQuotientImage { modulus } => format!(
                "the generating set stays minimal in the quotient by the order-{modulus} \
                 normal subgroup, so the instance reduces to the smaller quotient group"
            ),
        }
    }
}

impl fmt::Display for DelegationTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "delegated.{}", self.kind())
    }
}

/// Where an instance landed in the case analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseTag {
    /// A constructive leaf of the outline.
    Leaf(LeafTag),
    /// A generator lies in the normal part: the cycle is built by removing
    /// it in the quotient and re-inserting it along combs.
    NormalPartReduction,
    /// Handed to a classical result.
    Delegated(DelegationTag),
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseTag::Leaf(l) => l.fmt(f),
            CaseTag::NormalPartReduction => f.write_str("reduce.normal-generator"),
            CaseTag::Delegated(d) => d.fmt(f),
        }
    }
}

impl Serialize for CaseTag {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

// ---------------------------------------------------------------------------
// candidates, outcomes, reports

/// A quotient cycle proposed for lifting: the word is indexed against the
/// (reduced) input labels, and `kernel` is the order of the cyclic normal
/// subgroup being factored out.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientCandidate {
    pub kernel: u64,
    pub word: WalkWord,
    pub note: String,
}

/// What happened to one candidate during execution.
#[derive(Debug, Clone, Serialize)]
pub struct CandidateRecord {
    pub kernel: u64,
    pub word: WalkWord,
    pub voltage: Option<GroupElement>,
    pub voltage_order: Option<u64>,
    pub chosen: bool,
    pub note: String,
}

/// Final result of a construction run.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Outcome {
    /// A cycle was constructed and re-verified on the full graph.
    Verified { cycle: WalkWord },
    /// The instance is covered by a classical result; a concrete cycle is
    /// attached when the fallback search found one.
    Delegated {
        tag: DelegationTag,
        fallback_cycle: Option<WalkWord>,
    },
    /// The tabulated machinery did not produce a cycle.
    Failed {
        reason: String,
        fallback_cycle: Option<WalkWord>,
    },
}

/// Full, serializable account of one construction run.
#[derive(Debug, Clone, Serialize)]
pub struct ConstructionReport {
    pub spec: GroupSpec,
    pub generators: Vec<GroupElement>,
    /// Present when redundant labels were dropped.
    pub reduced_generators: Option<Vec<GroupElement>>,
    pub set_size: usize,
    pub gprime_shape: Option<GPrimeShape>,
    pub case: CaseTag,
    /// Human-readable trail: reductions, arrangement, measurements.
    pub canonicalization: Vec<String>,
    pub candidates: Vec<CandidateRecord>,
    pub outcome: Outcome,
    /// True iff the report carries a concretely verified cycle
    /// (either the constructed one or a fallback).
    pub verified: bool,
    pub wall_time_ms: u64,
}

/// Knobs for [`construct`].
#[derive(Debug, Clone)]
pub struct ConstructOptions {
    /// Attach an independently searched cycle to delegated/failed outcomes.
    pub allow_fallback: bool,
    /// Node budget for each backtracking search the fallback machinery runs.
    pub oracle_budget: u64,
    /// How many shuffled restarts the fallback machinery tries.
    pub oracle_seeds: u64,
}

impl Default for ConstructOptions {
    fn default() -> Self {
        ConstructOptions {
            allow_fallback: true,
            oracle_budget: 30_000_000,
            oracle_seeds: 6,
        }
    }
}

// ---------------------------------------------------------------------------
// two-generator generation criterion

/// The three families of the tabulated two-word generation test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CriterionFamily {
    /// `C_6 ⋉ (C_p × C_q)` where the order-3 rotations centralize `C_q`
    /// (the action inverts it) but not `C_p`.
    CentralizerQ,
    /// `C_6 ⋉ (C_p × C_q)` where the squared action fixes neither prime.
    CentralizerTrivial,
    /// `C_{2q} ⋉ (C_3 × C_p)` with odd part `C_q` acting on `C_p` only.
    OddComplement,
}

impl CriterionFamily {
    pub fn label(&self) -> &'static str {
        match self {
            CriterionFamily::CentralizerQ => "centralizer-q",
            CriterionFamily::CentralizerTrivial => "centralizer-trivial",
            CriterionFamily::OddComplement => "odd-complement",
        }
    }
}

/// A word in the standard generators, recorded by exponents: the order-2
/// point generator (`e2`), the order-3 point generator (`e3`), the order-q
/// generator (`eq`), and the order-p normal generator (`ep`). Exponents
/// are reduced residues for their generator's order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CriterionWord {
    pub e2: u64,
    pub e3: u64,
    pub eq: u64,
    pub ep: u64,
}

/// One instance of the tabulated criterion: does the pair
/// `{first, second}` generate the whole group?
#[derive(Debug, Clone)]
pub struct GenerationCriterionInstance {
    pub family: CriterionFamily,
    pub spec: GroupSpec,
    pub p: u64,
    pub q: u64,
    pub first: CriterionWord,
    pub second: CriterionWord,
}

impl GenerationCriterionInstance {
    /// The standard generators of the instance's group, in the order the
    /// exponents of [`CriterionWord`] refer to them.
    pub fn standard_generators(&self) -> [GroupElement; 4] {
        match self.family {
            CriterionFamily::CentralizerQ | CriterionFamily::CentralizerTrivial => [
                GroupElement { i: 3, j: 0 },
                GroupElement { i: 2, j: 0 },
                GroupElement { i: 0, j: self.p },
                GroupElement { i: 0, j: self.q },
            ],
            CriterionFamily::OddComplement => [
                GroupElement { i: self.q, j: 0 },
                GroupElement { i: 0, j: self.p },
                GroupElement { i: 2, j: 0 },
                GroupElement { i: 0, j: 3 },
            ],
        }
    }

    /// Evaluate a [`CriterionWord`] to a concrete group element.
    pub fn element(&self, w: &CriterionWord) -> GroupElement {
        let [a2, a3, aq, gp] = self.standard_generators();
        let spec = &self.spec;
        let exps = match self.family {
            CriterionFamily::CentralizerQ | CriterionFamily::CentralizerTrivial => {
                [(a2, w.e2), (a3, w.e3), (aq, w.eq), (gp, w.ep)]
            }
            // standard order: point generators first, then the normal part
            CriterionFamily::OddComplement => [(a2, w.e2), (aq, w.eq), (a3, w.e3), (gp, w.ep)],
        };
        let mut acc = spec.identity();
        for (g, e) in exps {
            acc = spec.multiply(acc, spec.power(g, e as i64));
        }
        acc
    }
}

fn form(w: &CriterionWord, e2: u64, e3: u64, eq: u64, ep: u64) -> bool {
    w.e2 == e2 && w.e3 == e3 && w.eq == eq && w.ep == ep
}

/// Decide generation for a tabulated two-word form.
///
/// Tri-state: `Ok(true)` — the pair provably generates; `Ok(false)` — the
/// words fit a tabulated form but fail its side condition, so the table
/// makes no positive claim; `Err(CriterionOutsideForms)` — the words fit
/// no tabulated form at all.
pub fn generation_criterion(inst: &GenerationCriterionInstance) -> Result<bool, ConstructError> {
    let spec = &inst.spec;
    spec.validate()?;
    let (p, q) = (inst.p, inst.q);
    if !is_prime(p) || !is_prime(q) || p <= 3 || q <= 3 || p == q {
        return Err(ConstructError::CriterionBadModuli(format!(
            "p={p} and q={q} must be distinct primes greater than 3"
        )));
    }
    match inst.family {
        CriterionFamily::CentralizerQ => {
            if spec.n != 6 || spec.m != p * q {
                return Err(ConstructError::CriterionBadModuli(format!(
                    "expected C6 ⋉ C_{}, got ({}, {})",
                    p * q,
                    spec.n,
                    spec.m
                )));
            }
            if spec.tau % q != q - 1 {
                return Err(ConstructError::CriterionBadModuli(
                    "the action must invert the order-q component".into(),
                ));
            }
            if spec.tau_pow(2) % p == 1 {
                return Err(ConstructError::CriterionBadModuli(
                    "the squared action must move the order-p component".into(),
                ));
            }
        }
        CriterionFamily::CentralizerTrivial => {
            if spec.n != 6 || spec.m != p * q {
                return Err(ConstructError::CriterionBadModuli(format!(
                    "expected C6 ⋉ C_{}, got ({}, {})",
                    p * q,
                    spec.n,
                    spec.m
                )));
            }
            if spec.tau_pow(2) % p == 1 || spec.tau_pow(2) % q == 1 {
                return Err(ConstructError::CriterionBadModuli(
                    "the squared action must move both large components".into(),
                ));
            }
        }
        CriterionFamily::OddComplement => {
            if spec.n != 2 * q || spec.m != 3 * p {
                return Err(ConstructError::CriterionBadModuli(format!(
                    "expected C_{} ⋉ C_{}, got ({}, {})",
                    2 * q,
                    3 * p,
                    spec.n,
                    spec.m
                )));
            }
            if spec.tau_pow(q) % 3 != 2 || spec.tau_pow(2) % 3 != 1 {
                return Err(ConstructError::CriterionBadModuli(
                    "the involution must invert the order-3 component and the odd part fix it"
                        .into(),
                ));
            }
            if spec.tau_pow(2) % p == 1 {
                return Err(ConstructError::CriterionBadModuli(
                    "the odd part must move the order-p component".into(),
                ));
            }
        }
    }
    for (w1, w2) in [(&inst.first, &inst.second), (&inst.second, &inst.first)] {
        if let Some(ans) = criterion_items(inst.family, w1, w2, p, q) {
            return Ok(ans);
        }
    }
    Err(ConstructError::CriterionOutsideForms(
        "the pair matches no tabulated two-word form".into(),
    ))
}

fn criterion_items(
    family: CriterionFamily,
    w1: &CriterionWord,
    w2: &CriterionWord,
    _p: u64,
    q: u64,
) -> Option<bool> {
    match family {
        CriterionFamily::CentralizerQ => {
            if form(w1, 0, 1, 1, 0) && w2.e2 == 1 && w2.ep == 1 {
                return Some(true);
            }
            if form(w1, 1, 1, 0, 0) && w2.e2 == 0 && w2.ep == 1 {
                return Some(w2.eq % q != 0);
            }
            if form(w1, 1, 1, 1, 0) && w2.e2 == 0 && w2.ep == 1 {
                return Some(w2.eq % q != 0);
            }
            if form(w1, 1, 1, 1, 0) && w2.e2 == 1 && w2.ep == 1 {
                return Some(w2.eq % q != 1);
            }
            None
        }
        CriterionFamily::CentralizerTrivial => {
            if form(w1, 1, 1, 0, 0) && w2.ep == 1 {
                return Some(w2.eq % q != 0);
            }
            if form(w1, 0, 1, 1, 0) && w2.e2 == 1 && w2.eq == 0 && w2.ep == 1 {
                return Some(w2.e3 % 3 != 0);
            }
            if form(w1, 0, 1, 0, 0) && w2.e2 == 1 && w2.ep == 1 {
                return Some(w2.eq % q != 0);
            }
            if form(w1, 1, 1, 1, 0) && w2.eq == 0 && w2.ep == 1 {
                return Some(w2.e3 % 3 != 0);
            }
            None
        }
        CriterionFamily::OddComplement => {
            if form(w1, 1, 0, 1, 0) && w2.ep == 1 {
                return Some(w2.e3 % 3 != 0);
            }
            if form(w1, 0, 1, 1, 0) && w2.e2 == 1 && w2.ep == 1 {
                return Some(true);
            }
            if w1.e3 == 1 && w1.ep == 0 && w2.e2 == 1 && w2.e3 == 0 && w2.ep == 1 {
                return Some(w1.eq % q != 0);
            }
            None
        }
    }
}

// ---------------------------------------------------------------------------
// classification

struct Analysis {
    reduced: Vec<GroupElement>,
    reduction_log: Vec<String>,
    pres: Presentation,
    shape: Option<GPrimeShape>,
    tag: CaseTag,
    roles: (u64, u64),
    reduce_index: Option<usize>,
}

fn analyze(
    spec: &GroupSpec,
    gens: &[GroupElement],
    auto_reduce: bool,
) -> Result<Analysis, ConstructError> {
    spec.validate()?;
    if gens.is_empty() {
        return Err(ConstructError::EmptyGeneratingSet);
    }
    for &g in gens {
        if !spec.contains(g) {
            return Err(ConstructError::LabelOutsideGroup(g));
        }
    }
    let order = spec.order();
    let got = spec.closure_order(gens);
    if got != order {
        return Err(ConstructError::NotGenerating { got, want: order });
    }

    let mut reduced: Vec<GroupElement> = gens.to_vec();
    let mut original: Vec<usize> = (0..gens.len()).collect();
    let mut reduction_log = Vec::new();
    'reduce: while reduced.len() > 1 {
        for k in 0..reduced.len() {
            let mut rest = reduced.clone();
            rest.remove(k);
            if spec.closure_order(&rest) == order {
                if !auto_reduce {
                    return Err(ConstructError::NotMinimal { index: original[k] });
                }
                reduction_log.push(format!(
                    "dropped redundant label #{} ({}): the set still generates without it",
                    original[k], reduced[k]
                ));
                reduced.remove(k);
                original.remove(k);
                continue 'reduce;
            }
        }
        break;
    }

    let primes = prime_factors(order);
    if primes.len() != 4 || primes[0] != 2 || primes[1] != 3 {
        return Err(ConstructError::UnsupportedOrder { order });
    }
    let (p_small, q_big) = (primes[2], primes[3]);

    let pres = Presentation::new(spec);
    let k = reduced.len();
    let done = |tag, shape, roles, reduce_index, reduced, reduction_log, pres| {
        Ok(Analysis {
            reduced,
            reduction_log,
            pres,
            shape,
            tag,
            roles,
            reduce_index,
        })
    };

    if k > 4 {
        return Err(ConstructError::TooManyGenerators(k));
    }
    if k == 4 {
        let tag = CaseTag::Leaf(LeafTag {
            family: Family::III,
            case: 0,
            sub: 0,
        });
        return done(tag, None, (p_small, q_big), None, reduced, reduction_log, pres);
    }
    if p_small <= 7 {
        let tag = CaseTag::Delegated(DelegationTag::SmallPrimes {
            p: p_small,
            q: q_big,
        });
        return done(tag, None, (p_small, q_big), None, reduced, reduction_log, pres);
    }
    if spec.m <= 1 || spec.tau == 1 {
        let tag = CaseTag::Delegated(DelegationTag::Abelian);
        return done(tag, None, (p_small, q_big), None, reduced, reduction_log, pres);
    }

    // In normalized coordinates no remaining normal-part prime is fixed by
    // the action, so the normal part *is* the derived subgroup.
    let mstar = pres.spec.m;
    let nstar = pres.spec.n;
    let dprimes = primes_of(mstar);
    match dprimes.len() {
        0 => {
            // every prime was centrally acted on: abelian (caught above,
            // kept as a defensive branch)
            let tag = CaseTag::Delegated(DelegationTag::Abelian);
            return done(tag, None, (p_small, q_big), None, reduced, reduction_log, pres);
        }
        1 => {
            let tag = CaseTag::Delegated(DelegationTag::PrimeDerivedSubgroup);
            return done(tag, None, (p_small, q_big), None, reduced, reduction_log, pres);
        }
        3 => {
            let tag = CaseTag::Delegated(DelegationTag::DihedralFull { order });
            return done(tag, None, (p_small, q_big), None, reduced, reduction_log, pres);
        }
        2 => {}
        _ => {
            return Err(ConstructError::Internal(format!(
                "derived subgroup of impossible order {mstar}"
            )))
        }
    }
    let shape = if dprimes.contains(&3) {
        let big = dprimes.iter().copied().find(|&r| r != 3).expect("two primes");
        GPrimeShape::ThreeP {
            p: big,
            q: nstar / 2,
        }
    } else {
        GPrimeShape::Pq {
            p: dprimes[0],
            q: dprimes[1],
        }
    };

    let presented: Vec<GroupElement> = reduced.iter().map(|&g| pres.forward(g)).collect();
    if let Some(idx) = presented.iter().position(|g| g.i == 0) {
        return done(
            CaseTag::NormalPartReduction,
            Some(shape),
            (p_small, q_big),
            Some(idx),
            reduced,
            reduction_log,
            pres,
        );
    }

    if pres.spec.tau_pow(2) % mstar == 1 {
        let tag = CaseTag::Delegated(DelegationTag::DihedralCyclicProduct {
            dihedral: 2 * mstar,
            cyclic: nstar / 2,
        });
        return done(tag, Some(shape), (p_small, q_big), None, reduced, reduction_log, pres);
    }

    let leaf = |family, roles| {
        (
            CaseTag::Leaf(LeafTag {
                family,
                case: 0,
                sub: 0,
            }),
            roles,
        )
    };
    let (tag, roles) = match (k, shape) {
        (2, GPrimeShape::Pq { p, q }) => leaf(Family::IA, (p, q)),
        (2, GPrimeShape::ThreeP { p, q }) => leaf(Family::IB, (p, q)),
        (3, GPrimeShape::Pq { p, q }) => {
            let central3: Vec<u64> = [p, q]
                .into_iter()
                .filter(|&r| pres.spec.tau_pow(2) % r == 1)
                .collect();
            if central3.len() == 1 {
                let rq = central3[0];
                let rp = if rq == p { q } else { p };
                if minimal_image(&pres.spec, &presented, rp) {
                    (
                        CaseTag::Delegated(DelegationTag::MinimalQuotientImage { modulus: rp }),
                        (rp, rq),
                    )
                } else {
                    leaf(Family::IIAaI, (rp, rq))
                }
            } else if let Some(r) = [p, q]
                .into_iter()
                .find(|&r| minimal_image(&pres.spec, &presented, r))
            {
                leaf(Family::IIAaII, (r, if r == p { q } else { p }))
            } else {
                let central2: Vec<u64> = [p, q]
                    .into_iter()
                    .filter(|&r| pres.spec.tau_pow(3) % r == 1)
                    .collect();
                match central2.len() {
                    2 => leaf(Family::IIAbI, (p, q)),
                    1 => {
                        let rq = central2[0];
                        leaf(Family::IIAbII, (if rq == p { q } else { p }, rq))
                    }
                    _ => leaf(Family::IIAbIII, (p, q)),
                }
            }
        }
        (3, GPrimeShape::ThreeP { p, q }) => {
            if minimal_image(&pres.spec, &presented, p) {
                (
                    CaseTag::Delegated(DelegationTag::MinimalQuotientImage { modulus: p }),
                    (p, q),
                )
            } else {
                leaf(Family::IIB, (p, q))
            }
        }
        _ => {
            return Err(ConstructError::Internal(format!(
                "a {k}-element minimal generating set cannot occur in a nonabelian group here"
            )))
        }
    };
    done(tag, Some(shape), roles, None, reduced, reduction_log, pres)
}

/// Does the image of `labels` in the quotient by the order-`kernel` normal
/// subgroup stay minimal?  Minimality here means no proper subset of the
/// labels projects onto a generating set of the quotient; in particular two
/// labels with equal projections make the image redundant, because dropping
/// one of them changes nothing downstairs.
fn minimal_image(spec: &GroupSpec, labels: &[GroupElement], kernel: u64) -> bool {
    let Ok(map) = spec.quotient_spec(SubgroupOfGammaPart { d: kernel }) else {
        return false;
    };
    let target = map.quotient.order();
    (0..labels.len()).all(|drop| {
        let subset: Vec<GroupElement> = labels
            .iter()
            .enumerate()
            .filter(|&(t, _)| t != drop)
            .map(|(_, &g)| map.project(g))
            .collect();
        map.quotient.closure_order(&subset) < target
    })
}

/// Classify an instance without constructing anything.
///
/// Unlike [`construct`], a redundant generating set is reported as
/// [`ConstructError::NotMinimal`] instead of being reduced.
pub fn classify(spec: &GroupSpec, gens: &[GroupElement]) -> Result<CaseTag, ConstructError> {
    analyze(spec, gens, false).map(|a| a.tag)
}

/// A generating set rewritten into the tabulated arrangement.
#[derive(Debug, Clone, Serialize)]
pub struct CanonicalizedSet {
    /// Labels in slot order, inverted where the arrangement asks for it
    /// (original coordinates).
    pub labels: Vec<GroupElement>,
    pub case: CaseTag,
    pub log: Vec<String>,
}

/// Reduce the set, classify, and (for constructive leaves) arrange the
/// labels into the slot order the templates expect.
pub fn canonicalize_genset(
    spec: &GroupSpec,
    gens: &[GroupElement],
) -> Result<CanonicalizedSet, ConstructError> {
    let analysis = analyze(spec, gens, true)?;
    let mut log = analysis.reduction_log.clone();
    let mut labels = analysis.reduced.clone();
    let mut case = analysis.tag;
    if let CaseTag::Leaf(leaf) = analysis.tag {
        if leaf.family != Family::III {
            let presented: Vec<GroupElement> = analysis
                .reduced
                .iter()
                .map(|&g| analysis.pres.forward(g))
                .collect();
            let env = MatchEnv {
                pres: &analysis.pres,
                labels: &presented,
            };
            match match_case(&env, leaf.family, analysis.roles) {
                Ok(cm) => {
                    case = CaseTag::Leaf(cm.tag);
                    labels = cm
                        .frame
                        .perm
                        .iter()
                        .zip(&cm.frame.invert)
                        .map(|(&kk, &inv)| {
                            let g = analysis.reduced[kk];
                            if inv {
                                spec.inverse(g)
                            } else {
                                g
                            }
                        })
                        .collect();
                    log.extend(cm.log);
                }
                Err(diag) => log.push(format!("no tabulated arrangement: {diag}")),
            }
        }
    }
    Ok(CanonicalizedSet { labels, case, log })
}

/// The quotient-cycle candidates the tabulated machinery would try, in
/// order, indexed against the reduced input labels. Empty for delegations,
/// reductions, products, and plans that search instead of lifting tables.
pub fn candidate_cycles(
    spec: &GroupSpec,
    gens: &[GroupElement],
) -> Result<Vec<QuotientCandidate>, ConstructError> {
    let analysis = analyze(spec, gens, true)?;
    let CaseTag::Leaf(leaf) = analysis.tag else {
        return Ok(Vec::new());
    };
    if leaf.family == Family::III {
        return Ok(Vec::new());
    }
    let presented: Vec<GroupElement> = analysis
        .reduced
        .iter()
        .map(|&g| analysis.pres.forward(g))
        .collect();
    let env = MatchEnv {
        pres: &analysis.pres,
        labels: &presented,
    };
    let Ok(cm) = match_case(&env, leaf.family, analysis.roles) else {
        return Ok(Vec::new());
    };
    let Plan::Templates { candidates, .. } = cm.plan else {
        return Ok(Vec::new());
    };
    let transported: Vec<QuotientCandidate> = candidates
        .iter()
        .map(|c| QuotientCandidate {
            kernel: c.kernel,
            word: transport_word(&cm.frame, &c.word),
            note: c.note.clone(),
        })
        .collect();
    Ok(expand_battery(analysis.reduced.len(), &transported))
}

// ---------------------------------------------------------------------------
// word plumbing

/// Rewrite a slot-indexed tabulated word against the input labels: slots
/// map through the arrangement's permutation, and slots entered inverted
/// flip the sign of their exponents.
fn transport_word(frame: &Frame, w: &WalkWord) -> WalkWord {
    WalkWord::new(
        w.steps
            .iter()
            .map(|s| Step {
                gen: frame.perm[s.gen],
                exp: if frame.invert[s.gen] { -s.exp } else { s.exp },
            })
            .collect(),
    )
}

fn flip_signs(w: &WalkWord, mask: u32) -> WalkWord {
    WalkWord::new(
        w.steps
            .iter()
            .map(|s| Step {
                gen: s.gen,
                exp: if mask >> s.gen & 1 == 1 { -s.exp } else { s.exp },
            })
            .collect(),
    )
}

/// Negate a single letter: the first one using `gen`.
fn flip_first_letter(w: &WalkWord, gen: usize) -> WalkWord {
    let mut out = WalkWord::default();
    let mut done = false;
    for s in &w.steps {
        if !done && s.gen == gen {
            let unit = if s.exp > 0 { 1 } else { -1 };
            out.push_run(s.gen, -unit);
            out.push_run(s.gen, s.exp - unit);
            done = true;
        } else {
            out.push_run(s.gen, s.exp);
        }
    }
    out
}

/// All primary candidates first, then every per-label sign-flip variant of
/// each primary, deduplicated keeping the first occurrence.
fn expand_battery(set_size: usize, primaries: &[QuotientCandidate]) -> Vec<QuotientCandidate> {
    let mut out: Vec<QuotientCandidate> = Vec::new();
    let mut seen: BTreeSet<(u64, Vec<(usize, i64)>)> = BTreeSet::new();
    let mut push = |c: QuotientCandidate, out: &mut Vec<QuotientCandidate>| {
        let key = (
            c.kernel,
            c.word.steps.iter().map(|s| (s.gen, s.exp)).collect::<Vec<_>>(),
        );
        if seen.insert(key) {
            out.push(c);
        }
    };
    for c in primaries {
        push(c.clone(), &mut out);
    }
    for c in primaries {
        for mask in 1u32..(1 << set_size) {
            let flipped: Vec<String> = (0..set_size)
                .filter(|&s| mask >> s & 1 == 1)
                .map(|s| format!("#{s}"))
                .collect();
            push(
                QuotientCandidate {
                    kernel: c.kernel,
                    word: flip_signs(&c.word, mask),
                    note: format!("{} — labels {} inverted", c.note, flipped.join(", ")),
                },
                &mut out,
            );
        }
    }
    out
}

// ---------------------------------------------------------------------------
// plan executors

fn quotient_projections(
    spec: &GroupSpec,
    labels: &[GroupElement],
    kernel: u64,
) -> Result<(QuotientMap, Vec<GroupElement>), String> {
    let map = spec
        .quotient_spec(SubgroupOfGammaPart { d: kernel })
        .map_err(|e| e.to_string())?;
    let proj = labels.iter().map(|&g| map.project(g)).collect();
    Ok((map, proj))
}

fn run_templates(
    spec: &GroupSpec,
    reduced: &[GroupElement],
    genset: &GenSet,
    battery: &[QuotientCandidate],
    records: &mut Vec<CandidateRecord>,
) -> Result<WalkWord, String> {
    let mut passing: BTreeMap<u64, Vec<WalkWord>> = BTreeMap::new();
    for cand in battery {
        let (map, proj) = match quotient_projections(spec, reduced, cand.kernel) {
            Ok(x) => x,
            Err(e) => {
                records.push(CandidateRecord {
                    kernel: cand.kernel,
                    word: cand.word.clone(),
                    voltage: None,
                    voltage_order: None,
                    chosen: false,
                    note: format!("{} — bad kernel: {e}", cand.note),
                });
                continue;
            }
        };
        if verify_hamiltonian_cycle_elements(&map.quotient, &proj, &cand.word).is_err() {
            records.push(CandidateRecord {
                kernel: cand.kernel,
                word: cand.word.clone(),
                voltage: None,
                voltage_order: None,
                chosen: false,
                note: format!("{} — not a Hamiltonian cycle of the quotient", cand.note),
            });
            continue;
        }
        let vr = voltage(spec, genset, &cand.word, &map).ok();
        let (velem, vord, vgen) = match &vr {
            Some(v) => (Some(v.element), Some(v.order_in_kernel), v.generates_kernel),
            None => (None, None, false),
        };
        match fgl_lift(spec, genset, &map, &cand.word) {
            Ok(lift) => {
                records.push(CandidateRecord {
                    kernel: cand.kernel,
                    word: cand.word.clone(),
                    voltage: velem,
                    voltage_order: vord,
                    chosen: true,
                    note: format!("{} — voltage generates the kernel; lifted", cand.note),
                });
                return Ok(lift);
            }
            Err(e) => {
                records.push(CandidateRecord {
                    kernel: cand.kernel,
                    word: cand.word.clone(),
                    voltage: velem,
                    voltage_order: vord,
                    chosen: false,
                    note: format!(
                        "{} — quotient cycle but no direct lift ({}{e})",
                        cand.note,
                        if vgen { "" } else { "voltage does not generate; " }
                    ),
                });
                passing.entry(cand.kernel).or_default().push(cand.word.clone());
            }
        }
    }
    // stacked pass: combine quotient cycles over the same prime kernel
    for (&kernel, words) in &passing {
        if !is_prime(kernel) || words.len() < 2 {
            continue;
        }
        let Ok((map, _)) = quotient_projections(spec, reduced, kernel) else {
            continue;
        };
        if let Ok(lift) = cor52_lift(spec, genset, &map, words) {
            records.push(CandidateRecord {
                kernel,
                word: words[0].clone(),
                voltage: None,
                voltage_order: None,
                chosen: true,
                note: "stacked combination of the passing quotient cycles".into(),
            });
            return Ok(lift);
        }
    }
    Err("no tabulated candidate lifts to a verified cycle".into())
}

fn run_edge_flip(
    spec: &GroupSpec,
    reduced: &[GroupElement],
    genset: &GenSet,
    kernel: u64,
    flip_idx: usize,
    opts: &ConstructOptions,
    records: &mut Vec<CandidateRecord>,
) -> Result<WalkWord, String> {
    let (map, proj) = quotient_projections(spec, reduced, kernel)?;
    let identity = GroupElement { i: 0, j: 0 };
    let mut classes: Vec<GroupElement> = Vec::new();
    let mut reps: Vec<usize> = Vec::new();
    // the flip label is processed first so its class keeps it as
    // representative: flipping must act on that exact label
    for idx in std::iter::once(flip_idx).chain((0..reduced.len()).filter(|&t| t != flip_idx)) {
        let h = proj[idx];
        if h == identity || classes.contains(&h) {
            continue;
        }
        classes.push(h);
        reps.push(idx);
    }
    let flip_cls = classes
        .iter()
        .position(|&h| h == proj[flip_idx])
        .ok_or("the flip label projects to the identity")?;
    let qgenset = GenSet::new(&map.quotient, classes.clone()).map_err(|e| e.to_string())?;
    let graph = build_graph(&map.quotient, &qgenset);
    if !graph.is_connected() {
        return Err("the quotient Cayley graph is not connected".into());
    }
    for seed in std::iter::once(None).chain((1..=opts.oracle_seeds).map(Some)) {
        let Some(qw) =
            search_hamiltonian_seeded(&graph, SearchMode::Cycle, opts.oracle_budget, seed).found()
        else {
            continue;
        };
        if !qw.steps.iter().any(|s| s.gen == flip_cls) {
            continue;
        }
        let w_in = WalkWord::new(
            qw.steps
                .iter()
                .map(|s| Step {
                    gen: reps[s.gen],
                    exp: s.exp,
                })
                .collect(),
        );
        let variants: Vec<WalkWord> = [w_in.clone(), flip_first_letter(&w_in, flip_idx)]
            .into_iter()
            .filter(|w| verify_hamiltonian_cycle_elements(&map.quotient, &proj, w).is_ok())
            .collect();
        let seed_note = match seed {
            None => "unshuffled".to_string(),
            Some(s) => format!("seed {s}"),
        };
        match cor52_lift(spec, genset, &map, &variants) {
            Ok(lift) => {
                records.push(CandidateRecord {
                    kernel,
                    word: w_in,
                    voltage: None,
                    voltage_order: None,
                    chosen: true,
                    note: format!("edge-flip quotient cycle ({seed_note}); lifted"),
                });
                return Ok(lift);
            }
            Err(e) => {
                records.push(CandidateRecord {
                    kernel,
                    word: w_in,
                    voltage: None,
                    voltage_order: None,
                    chosen: false,
                    note: format!("edge-flip quotient cycle ({seed_note}) did not lift: {e}"),
                });
            }
        }
    }
    Err("no searched quotient cycle lifted through the edge flip".into())
}

fn run_path_product(
    spec: &GroupSpec,
    reduced: &[GroupElement],
    genset: &GenSet,
    apex_idx: usize,
    opts: &ConstructOptions,
) -> Result<WalkWord, String> {
    let others: Vec<usize> = (0..reduced.len()).filter(|&t| t != apex_idx).collect();
    let sub_labels: Vec<GroupElement> = others.iter().map(|&t| reduced[t]).collect();
    let sub = subgroup_presentation(spec, &sub_labels)
        .ok_or("the complement subgroup admits no clean presentation")?;
    let cycle_a = oracle_cycle(&sub.spec, &sub.labels, opts.oracle_budget, opts.oracle_seeds)
        .ok_or("no Hamiltonian cycle found in the index-2 subgroup")?;
    let word_b = WalkWord::from_runs(&[(0, 1)]);
    cartesian_product_hc(
        spec,
        genset,
        &others,
        &cycle_a,
        &[apex_idx],
        &word_b,
        FactorKind::Path,
    )
    .map_err(|e| e.to_string())
}

fn factor_word(
    spec: &GroupSpec,
    labels: &[GroupElement],
    sub_order: u64,
    opts: &ConstructOptions,
) -> Option<(WalkWord, FactorKind)> {
    if sub_order == 2 && labels.len() == 1 {
        return Some((WalkWord::from_runs(&[(0, 1)]), FactorKind::Path));
    }
    let sub = subgroup_presentation(spec, labels)?;
    let w = oracle_cycle(&sub.spec, &sub.labels, opts.oracle_budget, opts.oracle_seeds)?;
    Some((w, FactorKind::Cycle))
}

fn run_product(
    spec: &GroupSpec,
    reduced: &[GroupElement],
    genset: &GenSet,
    opts: &ConstructOptions,
    log: &mut Vec<String>,
) -> Result<WalkWord, String> {
    let k = reduced.len();
    let order = spec.order();
    for mask in 0u32..(1 << k) {
        if mask & 1 != 0 || mask == 0 {
            continue; // label #0 anchors factor A; factor B must be nonempty
        }
        let a_idx: Vec<usize> = (0..k).filter(|&t| mask >> t & 1 == 0).collect();
        let b_idx: Vec<usize> = (0..k).filter(|&t| mask >> t & 1 == 1).collect();
        let commutes = a_idx.iter().all(|&ai| {
            b_idx.iter().all(|&bi| {
                spec.multiply(reduced[ai], reduced[bi]) == spec.multiply(reduced[bi], reduced[ai])
            })
        });
        if !commutes {
            continue;
        }
        let la: Vec<GroupElement> = a_idx.iter().map(|&t| reduced[t]).collect();
        let lb: Vec<GroupElement> = b_idx.iter().map(|&t| reduced[t]).collect();
        let oa = spec.closure_order(&la);
        let ob = spec.closure_order(&lb);
        if oa.checked_mul(ob) != Some(order) {
            continue;
        }
        let Some((wa, ka)) = factor_word(spec, &la, oa, opts) else {
            continue;
        };
        if ka != FactorKind::Cycle {
            continue; // the anchored factor must contribute a cycle
        }
        let Some((wb, kb)) = factor_word(spec, &lb, ob, opts) else {
            continue;
        };
        match cartesian_product_hc(spec, genset, &a_idx, &wa, &b_idx, &wb, kb) {
            Ok(w) => {
                log.push(format!(
                    "split into commuting factors {{{}}} × {{{}}} of orders {oa} × {ob}",
                    a_idx.iter().map(|t| format!("#{t}")).collect::<Vec<_>>().join(", "),
                    b_idx.iter().map(|t| format!("#{t}")).collect::<Vec<_>>().join(", "),
                ));
                return Ok(w);
            }
            Err(_) => continue,
        }
    }
    Err("no commuting split of the labels assembles a product of factor cycles".into())
}

// ---------------------------------------------------------------------------
// construction driver

/// Construct (or delegate) a Hamiltonian cycle for `Cay(G, S)` and report
/// everything that happened. Input validation failures come back as
/// errors; anything downstream is described in the report.
pub fn construct(
    spec: &GroupSpec,
    gens: &[GroupElement],
    opts: &ConstructOptions,
) -> Result<ConstructionReport, ConstructError> {
    let started = Instant::now();
    let analysis = analyze(spec, gens, true)?;
    let reduced = analysis.reduced.clone();
    let mut canonicalization = analysis.reduction_log.clone();
    let mut records: Vec<CandidateRecord> = Vec::new();
    let genset = GenSet::new(spec, reduced.clone())
        .map_err(|e| ConstructError::Internal(format!("reduced set rejected: {e}")))?;
    let fallback = |records: &mut Vec<CandidateRecord>| {
        let _ = records;
        if opts.allow_fallback {
            oracle_cycle(spec, &reduced, opts.oracle_budget, opts.oracle_seeds)
        } else {
            None
        }
    };

    let (case, outcome) = match analysis.tag {
        CaseTag::Delegated(tag) => (
            CaseTag::Delegated(tag),
            Outcome::Delegated {
                tag,
                fallback_cycle: fallback(&mut records),
            },
        ),
        CaseTag::NormalPartReduction => {
            let idx = analysis
                .reduce_index
                .ok_or_else(|| ConstructError::Internal("reduction without an index".into()))?;
            canonicalization.push(format!(
                "label #{idx} lies in the normal part: remove it in the quotient and re-insert it along combs"
            ));
            let outcome = match reduce_generator_lift(spec, &genset, idx, &ReduceOptions::default())
            {
                Ok(w) => Outcome::Verified { cycle: w },
                Err(e) => Outcome::Failed {
                    reason: format!("normal-part reduction failed: {e}"),
                    fallback_cycle: fallback(&mut records),
                },
            };
            (CaseTag::NormalPartReduction, outcome)
        }
        CaseTag::Leaf(leaf) if leaf.family == Family::III => {
            match run_product(spec, &reduced, &genset, opts, &mut canonicalization) {
                Ok(w) => (
                    CaseTag::Leaf(LeafTag {
                        family: Family::III,
                        case: 1,
                        sub: 0,
                    }),
                    Outcome::Verified { cycle: w },
                ),
                Err(reason) => (
                    CaseTag::Leaf(LeafTag {
                        family: Family::III,
                        case: 2,
                        sub: 0,
                    }),
                    Outcome::Failed {
                        reason,
                        fallback_cycle: fallback(&mut records),
                    },
                ),
            }
        }
        CaseTag::Leaf(leaf) => {
            let presented: Vec<GroupElement> =
                reduced.iter().map(|&g| analysis.pres.forward(g)).collect();
            let env = MatchEnv {
                pres: &analysis.pres,
                labels: &presented,
            };
            match match_case(&env, leaf.family, analysis.roles) {
                Err(diag) => {
                    let tag = if leaf.family == Family::IB {
                        LeafTag {
                            family: Family::IB,
                            case: 4,
                            sub: 0,
                        }
                    } else {
                        leaf
                    };
                    (
                        CaseTag::Leaf(tag),
                        Outcome::Failed {
                            reason: format!("case analysis found no tabulated arrangement: {diag}"),
                            fallback_cycle: fallback(&mut records),
                        },
                    )
                }
                Ok(cm) => {
                    canonicalization.extend(cm.log.clone());
                    let tag = CaseTag::Leaf(cm.tag);
                    let outcome = match cm.plan {
                        Plan::Templates {
                            candidates,
                            edge_flip,
                        } => {
                            let transported: Vec<QuotientCandidate> = candidates
                                .iter()
                                .map(|c| QuotientCandidate {
                                    kernel: c.kernel,
                                    word: transport_word(&cm.frame, &c.word),
                                    note: c.note.clone(),
                                })
                                .collect();
                            let battery = expand_battery(reduced.len(), &transported);
                            match run_templates(spec, &reduced, &genset, &battery, &mut records) {
                                Ok(w) => Outcome::Verified { cycle: w },
                                Err(primary_reason) => {
                                    let flip = edge_flip.and_then(|ef| {
                                        run_edge_flip(
                                            spec,
                                            &reduced,
                                            &genset,
                                            ef.kernel,
                                            cm.frame.perm[ef.slot],
                                            opts,
                                            &mut records,
                                        )
                                        .ok()
                                    });
                                    match flip {
                                        Some(w) => Outcome::Verified { cycle: w },
                                        None => Outcome::Failed {
                                            reason: primary_reason,
                                            fallback_cycle: fallback(&mut records),
                                        },
                                    }
                                }
                            }
                        }
                        Plan::EdgeFlip { kernel, slot } => {
                            match run_edge_flip(
                                spec,
                                &reduced,
                                &genset,
                                kernel,
                                cm.frame.perm[slot],
                                opts,
                                &mut records,
                            ) {
                                Ok(w) => Outcome::Verified { cycle: w },
                                Err(reason) => Outcome::Failed {
                                    reason,
                                    fallback_cycle: fallback(&mut records),
                                },
                            }
                        }
                        Plan::PathProduct { apex_slot } => {
                            match run_path_product(
                                spec,
                                &reduced,
                                &genset,
                                cm.frame.perm[apex_slot],
                                opts,
                            ) {
                                Ok(w) => Outcome::Verified { cycle: w },
                                Err(reason) => Outcome::Failed {
                                    reason,
                                    fallback_cycle: fallback(&mut records),
                                },
                            }
                        }
                        Plan::Dead { pair, note } => {
                            let (i1, i2) = (cm.frame.perm[pair.0], cm.frame.perm[pair.1]);
                            let pair_generates =
                                spec.closure_order(&[reduced[i1], reduced[i2]]) == spec.order();
                            let reason = if pair_generates {
                                format!(
                                    "internal inconsistency: {note} flags labels #{i1} and #{i2} \
                                     as a generating pair, and they do generate — yet the set \
                                     passed the minimality check"
                                )
                            } else {
                                format!(
                                    "the construction tables do not cover this configuration: \
                                     {note} would imply labels #{i1} and #{i2} generate on \
                                     their own, but they do not"
                                )
                            };
                            Outcome::Failed {
                                reason,
                                fallback_cycle: fallback(&mut records),
                            }
                        }
                    };
                    (tag, outcome)
                }
            }
        }
    };

    // belt-and-braces: never emit an unverified "verified" outcome
    let outcome = match outcome {
        Outcome::Verified { cycle } => {
            match verify_hamiltonian_cycle_elements(spec, &reduced, &cycle) {
                Ok(()) => Outcome::Verified { cycle },
                Err(e) => Outcome::Failed {
                    reason: format!("constructed word failed re-verification: {e}"),
                    fallback_cycle: None,
                },
            }
        }
        other => other,
    };
    let verified = match &outcome {
        Outcome::Verified { .. } => true,
        Outcome::Delegated { fallback_cycle, .. } | Outcome::Failed { fallback_cycle, .. } => {
            fallback_cycle.is_some()
        }
    };
    Ok(ConstructionReport {
        spec: *spec,
        generators: gens.to_vec(),
        reduced_generators: (reduced != gens).then(|| reduced.clone()),
        set_size: reduced.len(),
        gprime_shape: analysis.shape,
        case,
        canonicalization,
        candidates: records,
        outcome,
        verified,
        wall_time_ms: started.elapsed().as_millis() as u64,
    })
}

// ---------------------------------------------------------------------------
// independent cycle oracle

/// Search for a Hamiltonian cycle without the case tables: recursive
/// kernel lifting, normal-generator reduction, then direct backtracking.
/// Deterministic for fixed inputs. The result, if any, has been verified.
pub fn oracle_cycle(
    spec: &GroupSpec,
    labels: &[GroupElement],
    budget: u64,
    seeds: u64,
) -> Option<WalkWord> {
    spec.validate().ok()?;
    if labels.is_empty() || labels.iter().any(|&g| !spec.contains(g)) {
        return None;
    }
    if spec.closure_order(labels) != spec.order() {
        return None;
    }
    let w = oracle_rec(spec, labels, budget, seeds)?;
    verify_hamiltonian_cycle_elements(spec, labels, &w).ok()?;
    Some(w)
}

fn oracle_rec(spec: &GroupSpec, labels: &[GroupElement], budget: u64, seeds: u64) -> Option<WalkWord> {
    let order = spec.order();
    if order == 1 {
        return Some(WalkWord::default());
    }
    for (idx, &g) in labels.iter().enumerate() {
        if spec.element_order(g) == order {
            return Some(WalkWord::from_runs(&[(idx, order as i64)]));
        }
    }
    if spec.m > 1 {
        if let Some(w) = oracle_kernel_lift(spec, labels, budget, seeds) {
            return Some(w);
        }
    }
    if let Ok(genset) = GenSet::new(spec, labels.to_vec()) {
        let ropts = ReduceOptions {
            search_budget: budget,
            retry_seeds: seeds as u32,
        };
        for idx in 0..labels.len() {
            if labels[idx].i == 0 {
                if let Ok(w) = reduce_generator_lift(spec, &genset, idx, &ropts) {
                    return Some(w);
                }
            }
        }
    }
    oracle_direct(spec, labels, budget, seeds)
}

fn oracle_kernel_lift(
    spec: &GroupSpec,
    labels: &[GroupElement],
    budget: u64,
    seeds: u64,
) -> Option<WalkWord> {
    let &r = spec.prime_factors_m().last()?;
    let map = spec.quotient_spec(SubgroupOfGammaPart { d: r }).ok()?;
    let identity = GroupElement { i: 0, j: 0 };
    let mut classes: Vec<GroupElement> = Vec::new();
    let mut reps: Vec<usize> = Vec::new();
    for (idx, &g) in labels.iter().enumerate() {
        let h = map.project(g);
        if h == identity || classes.contains(&h) {
            continue;
        }
        classes.push(h);
        reps.push(idx);
    }
    if classes.is_empty() || map.quotient.closure_order(&classes) != map.quotient.order() {
        return None;
    }
    let genset = GenSet::new(spec, labels.to_vec()).ok()?;
    let proj: Vec<GroupElement> = labels.iter().map(|&g| map.project(g)).collect();
    let mut qwords: Vec<WalkWord> = Vec::new();
    if let Some(w) = oracle_rec(&map.quotient, &classes, budget, seeds) {
        qwords.push(w);
    }
    if let Ok(qgenset) = GenSet::new(&map.quotient, classes.clone()) {
        let graph = build_graph(&map.quotient, &qgenset);
        if graph.is_connected() {
            for seed in std::iter::once(None).chain((1..=seeds).map(Some)) {
                if let Some(w) =
                    search_hamiltonian_seeded(&graph, SearchMode::Cycle, budget, seed).found()
                {
                    if !qwords.contains(&w) {
                        qwords.push(w);
                    }
                }
            }
        }
    }
    for qw in &qwords {
        let w_in = WalkWord::new(
            qw.steps
                .iter()
                .map(|s| Step {
                    gen: reps[s.gen],
                    exp: s.exp,
                })
                .collect(),
        );
        if let Ok(lift) = fgl_lift(spec, &genset, &map, &w_in) {
            return Some(lift);
        }
        let mut variants = vec![w_in.clone(), w_in.inverse()];
        let used: BTreeSet<usize> = w_in.steps.iter().map(|s| s.gen).collect();
        for g in used {
            variants.push(flip_first_letter(&w_in, g));
        }
        variants.retain(|w| verify_hamiltonian_cycle_elements(&map.quotient, &proj, w).is_ok());
        variants.dedup();
        if variants.len() > 1 {
            if let Ok(lift) = cor52_lift(spec, &genset, &map, &variants) {
                return Some(lift);
            }
        }
    }
    None
}

fn oracle_direct(
    spec: &GroupSpec,
    labels: &[GroupElement],
    budget: u64,
    seeds: u64,
) -> Option<WalkWord> {
    if spec.order() > 50_000 {
        return None;
    }
    let identity = spec.identity();
    let mut classes: Vec<GroupElement> = Vec::new();
    let mut reps: Vec<usize> = Vec::new();
    for (idx, &g) in labels.iter().enumerate() {
        if g == identity || classes.contains(&g) {
            continue;
        }
        classes.push(g);
        reps.push(idx);
    }
    let genset = GenSet::new(spec, classes).ok()?;
    let graph = build_graph(spec, &genset);
    if !graph.is_connected() {
        return None;
    }
    for seed in std::iter::once(None).chain((1..=seeds).map(Some)) {
        if let Some(w) = search_hamiltonian_seeded(&graph, SearchMode::Cycle, budget, seed).found()
        {
            return Some(WalkWord::new(
                w.steps
                    .iter()
                    .map(|s| Step {
                        gen: reps[s.gen],
                        exp: s.exp,
                    })
                    .collect(),
            ));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walks::verify_hamiltonian_cycle;

    fn spec(n: u64, m: u64, tau: u64) -> GroupSpec {
        GroupSpec::new(n, m, tau).expect("valid spec")
    }

    fn el(i: u64, j: u64) -> GroupElement {
        GroupElement { i, j }
    }

    /// τ = 120 on C_143: order 2 mod 11, order 3 mod 13.
    fn g858() -> GroupSpec {
        spec(6, 143, 120)
    }

    #[test]
    fn classify_rejects_bad_inputs() {
        let s = g858();
        assert!(matches!(
            classify(&s, &[]),
            Err(ConstructError::EmptyGeneratingSet)
        ));
        assert!(matches!(
            classify(&s, &[el(7, 0)]),
            Err(ConstructError::LabelOutsideGroup(_))
        ));
        assert!(matches!(
            classify(&s, &[el(2, 0)]),
            Err(ConstructError::NotGenerating { .. })
        ));
        // redundant: (1,0) alone already gives the point part
        assert!(matches!(
            classify(&s, &[el(1, 0), el(2, 0), el(0, 1)]),
            Err(ConstructError::NotMinimal { .. })
        ));
        // order 30 lacks two primes above 3
        let t = spec(2, 15, 14);
        assert!(matches!(
            classify(&t, &[el(1, 0), el(0, 1)]),
            Err(ConstructError::UnsupportedOrder { order: 30 })
        ));
    }

    #[test]
    fn classify_delegations() {
        // the dihedral-cyclic row avoids normal-part labels: those take
        // the reduction route, which precedes the structural delegation
        let cases = [
            (spec(6, 35, 6), vec![el(1, 0), el(0, 1)], "delegated.small-primes"),
            (spec(6, 143, 1), vec![el(1, 0), el(0, 1)], "delegated.abelian"),
            (
                spec(6, 143, 131),
                vec![el(1, 0), el(0, 1)],
                "delegated.prime-derived-subgroup",
            ),
            (spec(2, 429, 428), vec![el(1, 0), el(0, 1)], "delegated.dihedral-full"),
            (
                spec(6, 143, 142),
                vec![el(1, 0), el(1, 1)],
                "delegated.dihedral-cyclic-product",
            ),
        ];
        for (s, gens, want) in cases {
            let tag = classify(&s, &gens).expect("classifies");
            assert_eq!(tag.to_string(), want, "spec {s:?}");
        }
        let tag = classify(&spec(6, 143, 142), &[el(1, 0), el(1, 1)]).unwrap();
        assert_eq!(
            tag,
            CaseTag::Delegated(DelegationTag::DihedralCyclicProduct {
                dihedral: 286,
                cyclic: 3
            })
        );
        // with a normal-part label the same group goes to the reduction
        let tag = classify(&spec(6, 143, 142), &[el(1, 0), el(0, 1)]).unwrap();
        assert_eq!(tag, CaseTag::NormalPartReduction);
    }

    #[test]
    fn classify_pair_and_reduction() {
        // the order-2 label must carry the 13-part: conjugation cannot
        // move it (τ³ ≡ 1 mod 13), so (3,0)-style labels never generate
        let s = g858();
        let tag = classify(&s, &[el(3, 1), el(2, 1)]).expect("pair classifies");
        assert_eq!(tag.to_string(), "I.A");
        let tag = classify(&s, &[el(3, 0), el(2, 0), el(0, 1)]).expect("triple classifies");
        assert_eq!(tag.to_string(), "reduce.normal-generator");
    }

    #[test]
    fn classify_triple_with_centralized_prime() {
        // b = a3·aq = (2, 13); c = γ_p-type = (2, 11): the order-3
        // centralizer fixes 11, so this is the first triple family.
        let s = g858();
        let tag = classify(&s, &[el(3, 0), el(2, 13), el(2, 11)]).expect("classifies");
        assert_eq!(tag.to_string(), "II.A.a.i");
    }

    #[test]
    fn construct_pair_lifts_a_template() {
        let s = g858();
        let report = construct(&s, &[el(3, 1), el(2, 1)], &ConstructOptions::default())
            .expect("constructs");
        assert!(report.verified);
        let Outcome::Verified { cycle } = &report.outcome else {
            panic!("expected a verified outcome, got {:?}", report.outcome);
        };
        let genset = GenSet::new(&s, vec![el(3, 1), el(2, 1)]).unwrap();
        verify_hamiltonian_cycle(&s, &genset, cycle).expect("independent verification");
        assert_eq!(report.case.to_string(), "I.A.1");
        assert!(report.candidates.iter().any(|c| c.chosen));
    }

    #[test]
    fn construct_triple_first_family() {
        let s = g858();
        let labels = vec![el(3, 0), el(2, 13), el(2, 11)];
        let report = construct(&s, &labels, &ConstructOptions::default()).expect("constructs");
        let Outcome::Verified { cycle } = &report.outcome else {
            panic!("expected a verified outcome: {:?}", report.outcome);
        };
        verify_hamiltonian_cycle_elements(&s, &labels, cycle).expect("re-check");
        assert!(report.case.to_string().starts_with("II.A.a.i"));
    }

    #[test]
    fn construct_normal_part_reduction() {
        let s = g858();
        let labels = vec![el(3, 0), el(2, 0), el(0, 1)];
        let report = construct(&s, &labels, &ConstructOptions::default()).expect("constructs");
        assert_eq!(report.case.to_string(), "reduce.normal-generator");
        let Outcome::Verified { cycle } = &report.outcome else {
            panic!("expected a verified outcome: {:?}", report.outcome);
        };
        verify_hamiltonian_cycle_elements(&s, &labels, cycle).expect("re-check");
    }

    #[test]
    fn construct_four_generator_product() {
        let s = g858();
        let labels = vec![el(3, 0), el(3, 13), el(2, 0), el(2, 11)];
        let report = construct(&s, &labels, &ConstructOptions::default()).expect("constructs");
        assert_eq!(report.case.to_string(), "III.1");
        let Outcome::Verified { cycle } = &report.outcome else {
            panic!("expected a verified outcome: {:?}", report.outcome);
        };
        verify_hamiltonian_cycle_elements(&s, &labels, cycle).expect("re-check");
    }

    #[test]
    fn construct_auto_reduces_redundant_sets() {
        let s = g858();
        let labels = vec![el(1, 0), el(2, 0), el(0, 1)];
        let report = construct(&s, &labels, &ConstructOptions::default()).expect("constructs");
        assert!(report.reduced_generators.is_some());
        assert!(report.set_size < labels.len());
        assert!(!report.canonicalization.is_empty());
    }

    #[test]
    fn construct_is_deterministic() {
        let s = g858();
        let labels = vec![el(3, 1), el(2, 1)];
        let mut a = construct(&s, &labels, &ConstructOptions::default()).unwrap();
        let mut b = construct(&s, &labels, &ConstructOptions::default()).unwrap();
        a.wall_time_ms = 0;
        b.wall_time_ms = 0;
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn criterion_families_evaluate() {
        let s = g858(); // τ ≡ −1 mod 11, τ² ≢ 1 mod 13
        let inst = |first, second| GenerationCriterionInstance {
            family: CriterionFamily::CentralizerQ,
            spec: s,
            p: 13,
            q: 11,
            first,
            second,
        };
        let w = |e2, e3, eq, ep| CriterionWord { e2, e3, eq, ep };
        // unconditional item
        assert_eq!(
            generation_criterion(&inst(w(0, 1, 1, 0), w(1, 1, 0, 1))),
            Ok(true)
        );
        // side condition fails: k ≡ 0
        assert_eq!(
            generation_criterion(&inst(w(1, 1, 0, 0), w(0, 1, 0, 1))),
            Ok(false)
        );
        // side condition holds: k ≠ 0
        assert_eq!(
            generation_criterion(&inst(w(1, 1, 0, 0), w(0, 1, 5, 1))),
            Ok(true)
        );
        // outside every tabulated form
        assert!(matches!(
            generation_criterion(&inst(w(0, 0, 1, 0), w(1, 1, 0, 1))),
            Err(ConstructError::CriterionOutsideForms(_))
        ));
        // wrong moduli
        let bad = GenerationCriterionInstance {
            p: 11,
            q: 13,
            ..inst(w(0, 1, 1, 0), w(1, 1, 0, 1))
        };
        assert!(matches!(
            generation_criterion(&bad),
            Err(ConstructError::CriterionBadModuli(_))
        ));
    }

    #[test]
    fn criterion_positive_verdicts_match_closure() {
        let s = g858();
        let w = |e2, e3, eq, ep| CriterionWord { e2, e3, eq, ep };
        let pairs = [
            (w(0, 1, 1, 0), w(1, 1, 0, 1)),
            (w(1, 1, 0, 0), w(0, 1, 5, 1)),
            (w(1, 1, 1, 0), w(0, 2, 3, 1)),
            (w(1, 1, 1, 0), w(1, 0, 4, 1)),
        ];
        for (first, second) in pairs {
            let inst = GenerationCriterionInstance {
                family: CriterionFamily::CentralizerQ,
                spec: s,
                p: 13,
                q: 11,
                first,
                second,
            };
            if generation_criterion(&inst) == Ok(true) {
                let a = inst.element(&first);
                let b = inst.element(&second);
                assert_eq!(
                    s.closure_order(&[a, b]),
                    s.order(),
                    "criterion said {first:?}, {second:?} generate"
                );
            }
        }
    }

    #[test]
    fn oracle_finds_cycles_small() {
        let s = g858();
        let labels = vec![el(3, 1), el(2, 1)];
        let w = oracle_cycle(&s, &labels, 10_000_000, 3).expect("oracle succeeds");
        verify_hamiltonian_cycle_elements(&s, &labels, &w).expect("verified");
        // abelian instance
        let a = spec(6, 143, 1);
        let labels = vec![el(1, 0), el(0, 1)];
        let w = oracle_cycle(&a, &labels, 10_000_000, 3).expect("oracle on abelian");
        verify_hamiltonian_cycle_elements(&a, &labels, &w).expect("verified");
    }

    #[test]
    fn battery_orders_primaries_before_variants() {
        let primary = QuotientCandidate {
            kernel: 143,
            word: WalkWord::from_runs(&[(0, 1), (1, 2)]),
            note: "w".into(),
        };
        let out = expand_battery(2, &[primary.clone()]);
        assert_eq!(out[0], primary);
        assert_eq!(out.len(), 4); // primary + 3 nonzero sign masks
        for v in &out[1..] {
            assert_eq!(v.kernel, 143);
            assert_ne!(v.word, primary.word);
        }
    }

    #[test]
    fn flip_first_letter_splits_runs() {
        let w = WalkWord::from_runs(&[(0, 3), (1, 1)]);
        let f = flip_first_letter(&w, 0);
        assert_eq!(f.expansion_len(), w.expansion_len());
        assert_eq!(f.steps[0], Step { gen: 0, exp: -1 });
        assert_eq!(f.steps[1], Step { gen: 0, exp: 2 });
        let g = flip_first_letter(&w, 1);
        assert_eq!(g.steps.last(), Some(&Step { gen: 1, exp: -1 }));
    }
}
