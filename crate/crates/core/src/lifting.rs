//! Lifting quotient Hamiltonian cycles to the full group.
//!
//! The central tool: a closed walk in a quotient `G/N` (with `N` a cyclic
//! normal subgroup inside the rotation part) has a *voltage* — the net
//! displacement in `N` accumulated by tracing the walk in `G`. When the
//! voltage generates `N`, repeating the walk `|N|` times yields a
//! Hamiltonian cycle of `G`. When it does not, stacked variants and
//! comb-shaped traversals are tried instead. Every produced word is
//! re-verified from scratch; no lift is trusted on faith.

use crate::group::{GroupElement, GroupError, GroupSpec, QuotientMap, SubgroupOfGammaPart};
use crate::walks::{
    build_graph, search_hamiltonian_seeded, trace_word, verify_hamiltonian_cycle,
    verify_hamiltonian_cycle_elements, GenSet, SearchMode, SearchOutcome, WalkError, WalkWord,
};
use thiserror::Error;

/// Errors from voltage computation and lifting.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiftError {
    #[error("word is not closed in the quotient: endpoint {element} lies outside the kernel")]
    NotInKernel { element: GroupElement },
    #[error("word is not a hamiltonian cycle of the quotient: {source}")]
    QuotientNotHamiltonian {
        #[source]
        source: WalkError,
    },
    #[error("voltage {voltage} has order {order} in the kernel, needs {required}")]
    VoltageNotGenerating {
        voltage: GroupElement,
        order: u64,
        required: u64,
    },
    #[error("lifted word failed verification: {source}")]
    LiftedWordInvalid {
        #[source]
        source: WalkError,
    },
    #[error("no stacked combination of the {variants} variant words verified ({attempts} tried)")]
    NoVariantWorks { variants: usize, attempts: usize },
    #[error("generator {index} does not lie in the rotation part")]
    BadGenerator { index: usize },
    #[error("remaining generators do not generate the quotient")]
    QuotientNotGenerated,
    #[error("no hamiltonian cycle found in the quotient within budget")]
    QuotientSearchFailed,
    #[error("all lift strategies failed for the reduced quotient ({attempts} candidates tried)")]
    ReductionFailed { attempts: usize },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Walk(#[from] WalkError),
}

/// The voltage of a quotient-closed walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VoltageResult {
    /// Net displacement in the full group (an element of the kernel).
    pub element: GroupElement,
    /// Its order inside the (cyclic) kernel.
    pub order_in_kernel: u64,
    /// Whether it generates the kernel.
    pub generates_kernel: bool,
}

/// Trace `word` in the full group from the identity and interpret the
/// endpoint as an element of the kernel of `map`. Errors if the walk is
/// not closed modulo the kernel.
pub fn voltage(
    spec: &GroupSpec,
    genset: &GenSet,
    word: &WalkWord,
    map: &QuotientMap,
) -> Result<VoltageResult, LiftError> {
    let (_, endpoint) = trace_word(spec, genset, word, spec.identity())?;
    if !spec.in_gamma_subgroup(endpoint, map.kernel) {
        return Err(LiftError::NotInKernel { element: endpoint });
    }
    let order = spec.element_order(endpoint);
    debug_assert_eq!(map.kernel.d % order, 0, "kernel is cyclic");
    Ok(VoltageResult {
        element: endpoint,
        order_in_kernel: order,
        generates_kernel: order == map.kernel.d,
    })
}

/// Lift a quotient Hamiltonian cycle by `|kernel|`-fold repetition.
///
/// `quotient_word` is written over the *full-group* generating set; its
/// projection must be a Hamiltonian cycle of the quotient, and its voltage
/// must generate the kernel. The two failure modes are reported
/// distinctly. The returned word is re-verified in the full group.
pub fn fgl_lift(
    spec: &GroupSpec,
    genset: &GenSet,
    map: &QuotientMap,
    quotient_word: &WalkWord,
) -> Result<WalkWord, LiftError> {
    let proj: Vec<GroupElement> = genset.labels().iter().map(|&g| map.project(g)).collect();
    verify_hamiltonian_cycle_elements(&map.quotient, &proj, quotient_word)
        .map_err(|source| LiftError::QuotientNotHamiltonian { source })?;
    let v = voltage(spec, genset, quotient_word, map)?;
    if !v.generates_kernel {
        return Err(LiftError::VoltageNotGenerating {
            voltage: v.element,
            order: v.order_in_kernel,
            required: map.kernel.d,
        });
    }
    let lifted = quotient_word.repeated(map.kernel.d);
    verify_hamiltonian_cycle(spec, genset, &lifted)
        .map_err(|source| LiftError::LiftedWordInvalid { source })?;
    Ok(lifted)
}

/// Lift by stacking copies of *variant* words that all project to
/// Hamiltonian cycles of the quotient.
///
/// For every ordered pair of variants `(A, B)` and every split `j`, the
/// concatenation `A^(d-j) B^j` is traced and verified; the first
/// combination that verifies as a Hamiltonian cycle of the full group
/// wins. (With a single variant this degenerates to [`fgl_lift`] without
/// the voltage precondition — the verifier decides.)
pub fn cor52_lift(
    spec: &GroupSpec,
    genset: &GenSet,
    map: &QuotientMap,
    variants: &[WalkWord],
) -> Result<WalkWord, LiftError> {
    let proj: Vec<GroupElement> = genset.labels().iter().map(|&g| map.project(g)).collect();
    for w in variants {
        verify_hamiltonian_cycle_elements(&map.quotient, &proj, w)
            .map_err(|source| LiftError::QuotientNotHamiltonian { source })?;
    }
    let d = map.kernel.d;
    let mut attempts = 0usize;
    for (ai, a) in variants.iter().enumerate() {
        for (bi, b) in variants.iter().enumerate() {
            for j in 0..=d {
                if ai == bi && j > 0 {
                    continue; // identical to the j = 0 combination
                }
                let mut word = a.repeated(d - j);
                word.extend(&b.repeated(j));
                attempts += 1;
                if verify_hamiltonian_cycle(spec, genset, &word).is_ok() {
                    return Ok(word);
                }
            }
        }
    }
    Err(LiftError::NoVariantWorks {
        variants: variants.len(),
        attempts,
    })
}

/// Options for [`reduce_generator_lift`].
#[derive(Debug, Clone, Copy)]
pub struct ReduceOptions {
    /// Node-expansion budget for each quotient Hamiltonian search.
    pub search_budget: u64,
    /// How many additional shuffled searches to run for alternative
    /// quotient cycles when the first cycle does not lift.
    pub retry_seeds: u32,
}

impl Default for ReduceOptions {
    fn default() -> Self {
        ReduceOptions {
            search_budget: 20_000_000,
            retry_seeds: 6,
        }
    }
}

/// Handle a generating set containing a rotation-part generator `s`:
/// quotient by `⟨s⟩`, find a Hamiltonian cycle of the (small) quotient
/// over the remaining generators, and lift it back.
///
/// Lift strategies, in order: comb traversals that sweep each `⟨s⟩`-coset
/// with runs of `s` between quotient steps (four orientation patterns),
/// then voltage-based stacking over preimage-substituted variants. Every
/// candidate is verified; alternative quotient cycles are tried if the
/// first fails to lift.
pub fn reduce_generator_lift(
    spec: &GroupSpec,
    genset: &GenSet,
    gen_index: usize,
    opts: &ReduceOptions,
) -> Result<WalkWord, LiftError> {
    let labels = genset.labels();
    let s = labels[gen_index];
    if s.i != 0 {
        return Err(LiftError::BadGenerator { index: gen_index });
    }
    let d = spec.element_order(s);
    let map = spec.quotient_spec(SubgroupOfGammaPart { d })?;
    let qspec = map.quotient;

    // Distinct non-identity projections of the remaining generators, with
    // the preimage generator indices behind each.
    let mut qlabels: Vec<GroupElement> = Vec::new();
    let mut preimages: Vec<Vec<usize>> = Vec::new();
    for (k, &g) in labels.iter().enumerate() {
        if k == gen_index {
            continue;
        }
        let p = map.project(g);
        if p == qspec.identity() {
            continue;
        }
        match qlabels.iter().position(|&q| q == p) {
            Some(idx) => preimages[idx].push(k),
            None => {
                qlabels.push(p);
                preimages.push(vec![k]);
            }
        }
    }
    if qspec.closure_order(&qlabels) != qspec.order() {
        return Err(LiftError::QuotientNotGenerated);
    }
    let qgens = GenSet::new(&qspec, qlabels.clone())?;
    let qgraph = build_graph(&qspec, &qgens);

    let mut attempts = 0usize;
    let mut seen_cycles: Vec<WalkWord> = Vec::new();
    let seeds = std::iter::once(None).chain((1..=opts.retry_seeds as u64).map(Some));
    for seed in seeds {
        let qcycle = match search_hamiltonian_seeded(
            &qgraph,
            SearchMode::Cycle,
            opts.search_budget,
            seed,
        ) {
            SearchOutcome::Found(w) => w,
            _ => {
                if seen_cycles.is_empty() && seed.is_none() {
                    return Err(LiftError::QuotientSearchFailed);
                }
                continue;
            }
        };
        if seen_cycles.contains(&qcycle) {
            continue;
        }
        seen_cycles.push(qcycle.clone());
        let qcycle = seen_cycles.last().unwrap();

        // Quotient letters mapped to default preimage generators.
        let base_letters: Vec<(usize, i64)> = qcycle
            .letters()
            .map(|(g, sign)| (preimages[g][0], sign))
            .collect();

        // Comb lifts: sweep each coset with s-runs between quotient steps.
        for &sigma in &[1i64, -1] {
            for &alternating in &[false, true] {
                let mut w = WalkWord::default();
                for (r, &(g, sign)) in base_letters.iter().enumerate() {
                    let dir = if alternating && r % 2 == 1 { -sigma } else { sigma };
                    w.push_run(gen_index, dir * (d as i64 - 1));
                    w.push_run(g, sign);
                }
                attempts += 1;
                if verify_hamiltonian_cycle(spec, genset, &w).is_ok() {
                    return Ok(w);
                }
            }
        }

        // Voltage-based stacking over preimage-substituted variants. Each
        // variant picks one preimage generator per projection class.
        let mut variants: Vec<WalkWord> = vec![WalkWord::from_letters(
            base_letters.iter().copied(),
        )];
        for (class, pres) in preimages.iter().enumerate() {
            if variants.len() >= 16 {
                break;
            }
            for &alt in pres.iter().skip(1) {
                let more: Vec<WalkWord> = variants
                    .iter()
                    .map(|v| {
                        WalkWord::from_letters(qcycle.letters().zip(v.letters()).map(
                            |((qg, _), (og, sign))| {
                                if qg == class {
                                    (alt, sign)
                                } else {
                                    (og, sign)
                                }
                            },
                        ))
                    })
                    .collect();
                variants.extend(more);
            }
        }
        variants.dedup();
        match cor52_lift(spec, genset, &map, &variants) {
            Ok(w) => return Ok(w),
            Err(LiftError::NoVariantWorks {
                attempts: tried, ..
            }) => attempts += tried,
            Err(e) => return Err(e),
        }
    }
    Err(LiftError::ReductionFailed { attempts })
}

/// Combinatorial escape criterion: the word uses the generator
/// `escape_gen` exactly once (in either direction), that generator's
/// rotation exponent is *not* divisible by `rho`, and every other letter's
/// is. A closed walk meeting this criterion has a voltage whose
/// `rho`-component is nonzero, so the order-`rho` part of the kernel is
/// covered regardless of the rest.
pub fn unique_coset_escape_check(
    spec: &GroupSpec,
    genset: &GenSet,
    word: &WalkWord,
    escape_gen: usize,
    rho: u64,
) -> bool {
    debug_assert_eq!(spec.m % rho, 0);
    if word.occurrences(escape_gen) != 1 {
        return false;
    }
    for step in &word.steps {
        let label = genset.labels()[step.gen];
        let escapes = label.j % rho != 0;
        if step.gen == escape_gen {
            if !escapes {
                return false;
            }
        } else if escapes {
            return false;
        }
    }
    true
}
