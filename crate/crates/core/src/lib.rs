//! Construction and verification of Hamiltonian cycles in Cayley graphs
//! of finite groups of square-free order.
//!
//! The pipeline mirrors one constructive strategy end to end:
//!
//! * [`group`] — exact arithmetic for metacyclic groups `C_n ⋉ C_m`,
//!   quotients, closures, centralizer tables.
//! * [`walks`] — Cayley graphs, walk words, an independent Hamiltonian
//!   verifier, a backtracking search oracle, and Cartesian-product
//!   cycle assembly.
//! * [`lifting`] — voltages of closed quotient walks and the lifting
//!   rules that turn quotient Hamiltonian cycles into full ones.
//! * [`construct`] — the case machinery for orders `6pq`: classify an
//!   instance, canonicalize its generating set, emit candidate quotient
//!   cycles from the template catalog, lift and verify.
//! * [`enumerate`] — isomorphism-class enumeration of group
//!   presentations and generating sets at a given pair of primes.
//! * [`harness`] — batch sweeps, reporting, and DOT export.
//!
//! Every cycle this crate reports has been re-checked by the
//! independent verifier; theory is used only to propose candidates.

pub mod arith;
pub mod construct;
pub mod enumerate;
pub mod group;
pub mod harness;
pub mod lifting;
pub mod walks;

pub use construct::{
    candidate_cycles, canonicalize_genset, classify, construct, generation_criterion,
    oracle_cycle, CandidateRecord, CanonicalizedSet, CaseTag, ConstructError, ConstructOptions,
    ConstructionReport, CriterionFamily, CriterionWord, DelegationTag, Family,
    GPrimeShape, GenerationCriterionInstance, LeafTag, Outcome, QuotientCandidate,
};
pub use enumerate::{
    canonical_label, canonical_labels, element_order_multiset, enumerate_spec_classes, iso_key,
    minimal_pairs, sample_minimal_triples, valid_taus, EnumerateError, SpecClass, TripleSample,
};
pub use group::{
    CanonicalGenerators, CentralizerConfig, GroupElement, GroupError, GroupSpec, QuotientMap,
    SubgroupOfGammaPart,
};
pub use harness::{
    export_dot, run_suite, DotStyle, HarnessError, SweepConfig, SweepOutput, SweepSummary,
};
pub use lifting::{
    cor52_lift, fgl_lift, reduce_generator_lift, voltage, LiftError, ReduceOptions, VoltageResult,
};
pub use walks::{
    build_graph, cartesian_product_hc, search_hamiltonian_seeded, verify_hamiltonian_cycle,
    verify_hamiltonian_cycle_elements, CayleyGraph, FactorKind, GenSet, SearchMode, SearchOutcome,
    Step, WalkError, WalkWord,
};
