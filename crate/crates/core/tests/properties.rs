//! Randomized invariants for the group arithmetic, walk, and lifting layers.
//!
//! Specs are drawn from a fixed table of every valid presentation with
//! small order so that shrinking stays meaningful and no generation effort
//! is wasted on invalid `(n, m, τ)` combinations.

use std::sync::OnceLock;

use proptest::prelude::*;

use cayham_core::enumerate::valid_taus;
use cayham_core::group::{GroupElement, GroupSpec};
use cayham_core::lifting::{fgl_lift, voltage, LiftError};
use cayham_core::walks::{
    build_graph, cartesian_product_hc, verify_hamiltonian_cycle, FactorKind, GenSet, WalkWord,
};
use cayham_core::{construct, oracle_cycle, ConstructOptions, Outcome};

/// Every valid spec with `n·m ≤ 200` and `m ≤ 50`.
fn spec_table() -> &'static Vec<GroupSpec> {
    static TABLE: OnceLock<Vec<GroupSpec>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut out = Vec::new();
        for n in 1..=200u64 {
            for m in 1..=50u64 {
                if n * m > 200 {
                    continue;
                }
                for tau in valid_taus(n, m) {
                    if let Ok(spec) = GroupSpec::new(n, m, tau) {
                        out.push(spec);
                    }
                }
            }
        }
        assert!(out.len() > 100, "spec table unexpectedly small");
        out
    })
}

fn arb_spec() -> impl Strategy<Value = GroupSpec> {
    any::<prop::sample::Index>().prop_map(|ix| *ix.get(spec_table()))
}

/// Specs with a nontrivial normal part and a nontrivial point part.
fn arb_spec_nontrivial() -> impl Strategy<Value = GroupSpec> {
    let filtered: Vec<GroupSpec> = spec_table()
        .iter()
        .copied()
        .filter(|s| s.n >= 2 && s.m >= 2)
        .collect();
    any::<prop::sample::Index>().prop_map(move |ix| *ix.get(&filtered))
}

fn element_of(spec: &GroupSpec, ix: prop::sample::Index) -> GroupElement {
    spec.element_at(ix.index(spec.order() as usize))
}

/// Walk a word by group multiplication only (no graph machinery), so walk
/// invariants are checked against arithmetic the walk layer does not own.
fn endpoint(spec: &GroupSpec, labels: &[GroupElement], word: &WalkWord) -> GroupElement {
    let mut acc = spec.identity();
    for (g, s) in word.letters() {
        acc = spec.multiply(acc, spec.power(labels[g], s));
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn group_axioms_hold(
        spec in arb_spec(),
        ia in any::<prop::sample::Index>(),
        ib in any::<prop::sample::Index>(),
        ic in any::<prop::sample::Index>(),
    ) {
        let (g, h, k) = (element_of(&spec, ia), element_of(&spec, ib), element_of(&spec, ic));
        let e = spec.identity();
        // associativity and identity/inverse laws
        prop_assert_eq!(
            spec.multiply(spec.multiply(g, h), k),
            spec.multiply(g, spec.multiply(h, k))
        );
        prop_assert_eq!(spec.multiply(g, e), g);
        prop_assert_eq!(spec.multiply(e, g), g);
        prop_assert_eq!(spec.multiply(g, spec.inverse(g)), e);
        prop_assert_eq!(spec.multiply(spec.inverse(g), g), e);
        // commutator and conjugation definitions agree with raw products
        prop_assert_eq!(
            spec.commutator(g, h),
            spec.multiply(
                spec.multiply(g, h),
                spec.multiply(spec.inverse(g), spec.inverse(h))
            )
        );
        prop_assert_eq!(
            spec.conjugate(h, g),
            spec.multiply(spec.multiply(h, g), spec.inverse(h))
        );
        // conjugation by a fixed element is a homomorphism
        prop_assert_eq!(
            spec.conjugate(k, spec.multiply(g, h)),
            spec.multiply(spec.conjugate(k, g), spec.conjugate(k, h))
        );
    }

    #[test]
    fn powers_and_orders_are_consistent(
        spec in arb_spec(),
        ia in any::<prop::sample::Index>(),
        k in -12i64..=12,
    ) {
        let g = element_of(&spec, ia);
        // power() against iterated multiplication
        let mut acc = spec.identity();
        let step = if k >= 0 { g } else { spec.inverse(g) };
        for _ in 0..k.unsigned_abs() {
            acc = spec.multiply(acc, step);
        }
        prop_assert_eq!(spec.power(g, k), acc);

        let ord = spec.element_order(g);
        prop_assert!(ord >= 1 && spec.order() % ord == 0, "order divides |G|");
        prop_assert_eq!(spec.power(g, ord as i64), spec.identity());
        for r in cayham_core::arith::prime_factors(ord) {
            prop_assert_ne!(spec.power(g, (ord / r) as i64), spec.identity());
        }
    }

    #[test]
    fn quotient_projection_is_a_homomorphism(
        spec in arb_spec_nontrivial(),
        id in any::<prop::sample::Index>(),
        ia in any::<prop::sample::Index>(),
        ib in any::<prop::sample::Index>(),
    ) {
        let divisors: Vec<u64> = cayham_core::arith::divisors(spec.m)
            .into_iter()
            .filter(|&d| d > 1)
            .collect();
        let d = divisors[id.index(divisors.len())];
        let map = spec.quotient_spec(spec.gamma_subgroup(d).unwrap()).unwrap();
        prop_assert_eq!(map.kernel.d, d);
        prop_assert_eq!(map.quotient.order(), spec.order() / d);

        let (g, h) = (element_of(&spec, ia), element_of(&spec, ib));
        prop_assert_eq!(
            map.project(spec.multiply(g, h)),
            map.quotient.multiply(map.project(g), map.project(h))
        );

        // kernel size is exactly d, and the image is all of the quotient
        let mut kernel = 0u64;
        let mut image = std::collections::BTreeSet::new();
        for x in spec.elements() {
            let px = map.project(x);
            if px == map.quotient.identity() {
                kernel += 1;
            }
            image.insert(map.quotient.element_index(px));
        }
        prop_assert_eq!(kernel, d);
        prop_assert_eq!(image.len() as u64, map.quotient.order());
    }

    #[test]
    fn closure_order_matches_enumerated_closure(
        spec in arb_spec(),
        ia in any::<prop::sample::Index>(),
        ib in any::<prop::sample::Index>(),
        ic in any::<prop::sample::Index>(),
        len in 0usize..=3,
    ) {
        let picks = [ia, ib, ic];
        let gens: Vec<GroupElement> = picks[..len]
            .iter()
            .map(|&ix| element_of(&spec, ix))
            .collect();
        prop_assert_eq!(spec.closure_order(&gens), spec.closure(&gens).len() as u64);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(192))]

    #[test]
    fn word_normalization_preserves_endpoint(
        spec in arb_spec_nontrivial(),
        raw in prop::collection::vec((0usize..3, -6i64..=6), 0..12),
    ) {
        // three fixed labels; duplicates among runs exercise run merging
        let labels = [
            spec.element(1, 0),
            spec.element(0, 1),
            spec.element(1, 1),
        ];
        let word = WalkWord::from_runs(&raw);
        // run-length form: no zero runs; adjacent runs on the same generator
        // only with opposite signs (a backtracking walk is still a walk)
        for s in &word.steps {
            prop_assert_ne!(s.exp, 0);
        }
        for pair in word.steps.windows(2) {
            prop_assert!(
                pair[0].gen != pair[1].gen || (pair[0].exp > 0) != (pair[1].exp > 0)
            );
        }
        prop_assert_eq!(
            word.expansion_len(),
            raw.iter().map(|&(_, e)| e.unsigned_abs()).sum::<u64>()
        );
        // normalization must not change the walk's endpoint
        let mut acc = spec.identity();
        for &(g, s) in &raw {
            acc = spec.multiply(acc, spec.power(labels[g], s));
        }
        prop_assert_eq!(endpoint(&spec, &labels, &word), acc);
        // the inverse word walks back
        let mut round = word.clone();
        round.extend(&word.inverse());
        prop_assert_eq!(endpoint(&spec, &labels, &round), spec.identity());
    }

    #[test]
    fn graph_degrees_and_adjacency_are_symmetric(
        spec in arb_spec_nontrivial(),
        ia in any::<prop::sample::Index>(),
        ib in any::<prop::sample::Index>(),
    ) {
        let mut labels = vec![element_of(&spec, ia), element_of(&spec, ib)];
        labels.retain(|&g| g != spec.identity());
        labels.dedup();
        prop_assume!(!labels.is_empty());
        let Ok(genset) = GenSet::new(&spec, labels) else {
            // duplicate labels after reduction; not a graph instance
            return Ok(());
        };
        let degree = genset.connection_set_size(&spec);
        let graph = build_graph(&spec, &genset);
        prop_assert_eq!(graph.vertex_count() as u64, spec.order());
        for v in 0..graph.vertex_count() {
            prop_assert_eq!(graph.degree(v), degree);
            for &u in graph.neighbors(v) {
                prop_assert!(
                    graph.neighbors(u as usize).contains(&(v as u32)),
                    "adjacency must be symmetric"
                );
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn voltage_is_multiplicative_and_inverts(
        spec in arb_spec_nontrivial(),
        raw1 in prop::collection::vec((0usize..2, -5i64..=5), 0..8),
        raw2 in prop::collection::vec((0usize..2, -5i64..=5), 0..8),
        a in any::<prop::sample::Index>(),
    ) {
        // kernel = the whole normal part; quotient is the cyclic point part
        let map = spec
            .quotient_spec(spec.gamma_subgroup(spec.m).unwrap())
            .unwrap();
        let labels = vec![spec.element(1, a.index(spec.m as usize) as u64), spec.element(0, 1)];
        let genset = GenSet::new(&spec, labels.clone()).unwrap();

        // close each word in the quotient by appending a run of the
        // point-part generator
        let close = |raw: &[(usize, i64)]| {
            let mut w = WalkWord::from_runs(raw);
            let disp = map.project(endpoint(&spec, &labels, &w));
            let need = (map.quotient.n - disp.i) % map.quotient.n;
            if need != 0 {
                w.push_run(0, need as i64);
            }
            w
        };
        let w1 = close(&raw1);
        let w2 = close(&raw2);

        let v1 = voltage(&spec, &genset, &w1, &map).unwrap();
        let v2 = voltage(&spec, &genset, &w2, &map).unwrap();
        let mut cat = w1.clone();
        cat.extend(&w2);
        let vc = voltage(&spec, &genset, &cat, &map).unwrap();
        prop_assert_eq!(vc.element, spec.multiply(v1.element, v2.element));

        let vr = voltage(&spec, &genset, &w1.inverse(), &map).unwrap();
        prop_assert_eq!(vr.element, spec.inverse(v1.element));
        prop_assert_eq!(v1.order_in_kernel, spec.element_order(v1.element));
        prop_assert_eq!(v1.generates_kernel, v1.order_in_kernel == map.kernel.d);
    }

    #[test]
    fn fgl_lift_output_always_verifies(
        spec in arb_spec_nontrivial(),
        a in any::<prop::sample::Index>(),
        ir in any::<prop::sample::Index>(),
    ) {
        // {(1, a), (0, 1)} always generates: the second label spans the
        // normal part and the first spans the point part above it
        let labels = vec![spec.element(1, a.index(spec.m as usize) as u64), spec.element(0, 1)];
        prop_assert_eq!(spec.closure_order(&labels), spec.order());
        let genset = GenSet::new(&spec, labels.clone()).unwrap();

        let primes = spec.prime_factors_m();
        let r = primes[ir.index(primes.len())];
        let map = spec.quotient_spec(spec.gamma_subgroup(r).unwrap()).unwrap();
        let proj: Vec<GroupElement> = labels.iter().map(|&g| map.project(g)).collect();
        prop_assume!(map.quotient.closure_order(&proj) == map.quotient.order());

        let Some(qw) = oracle_cycle(&map.quotient, &proj, 4_000_000, 3) else {
            // tiny quotients can be 2-vertex graphs with no cycle
            return Ok(());
        };
        match fgl_lift(&spec, &genset, &map, &qw) {
            Ok(lifted) => {
                // the library's own check is not trusted here: re-verify
                prop_assert!(verify_hamiltonian_cycle(&spec, &genset, &lifted).is_ok());
                prop_assert_eq!(lifted.expansion_len(), spec.order());
            }
            Err(LiftError::VoltageNotGenerating { order, required, .. }) => {
                prop_assert!(required % order == 0 && order < required);
            }
            Err(other) => prop_assert!(false, "unexpected lift failure: {other}"),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn oracle_cycles_verify_and_reverse(
        spec in arb_spec_nontrivial(),
        a in any::<prop::sample::Index>(),
    ) {
        prop_assume!(spec.order() >= 3 && spec.order() <= 120);
        let labels = vec![spec.element(1, a.index(spec.m as usize) as u64), spec.element(0, 1)];
        let genset = GenSet::new(&spec, labels.clone()).unwrap();
        let w = oracle_cycle(&spec, &labels, 8_000_000, 4)
            .expect("connected small instance must yield a cycle");
        prop_assert!(verify_hamiltonian_cycle(&spec, &genset, &w).is_ok());
        // cycle reversal symmetry of the verifier
        prop_assert!(verify_hamiltonian_cycle(&spec, &genset, &w.inverse()).is_ok());
    }

    #[test]
    fn products_of_coprime_cyclic_factors_verify(
        k in 2u64..=7,
        j in 3u64..=7,
    ) {
        prop_assume!(cayham_core::arith::gcd(k, j) == 1);
        prop_assume!(cayham_core::arith::is_square_free(k * j));
        // host: C_k × C_j with the path factor in the point part
        let spec = GroupSpec::new(k, j, 1).unwrap();
        let genset = GenSet::new(&spec, vec![spec.element(0, 1), spec.element(1, 0)]).unwrap();
        let cycle_a = WalkWord::from_runs(&[(0, j as i64)]);
        let path_b = WalkWord::from_runs(&[(0, k as i64 - 1)]);
        let w = cartesian_product_hc(
            &spec,
            &genset,
            &[0],
            &cycle_a,
            &[1],
            &path_b,
            FactorKind::Path,
        )
        .unwrap();
        prop_assert_eq!(w.expansion_len(), k * j);
        prop_assert!(verify_hamiltonian_cycle(&spec, &genset, &w).is_ok());
    }
}

// ---------------------------------------------------------------------------
// plain exhaustive invariants (no randomness needed at these sizes)

#[test]
fn defining_relation_matches_tau() {
    for spec in spec_table().iter().filter(|s| s.n >= 2 && s.m >= 2) {
        let b = spec.element(1, 0);
        let gamma = spec.element(0, 1);
        let lhs = spec.multiply(b, spec.multiply(gamma, spec.power(b, -1)));
        assert_eq!(
            lhs,
            spec.power(gamma, spec.tau as i64),
            "b γ b⁻¹ must equal γ^τ for {spec:?}"
        );
    }
}

#[test]
fn commutator_subgroup_matches_commutator_closure() {
    for spec in spec_table().iter().filter(|s| s.order() <= 120) {
        let mut gens = Vec::new();
        for g in spec.elements() {
            for h in spec.elements() {
                gens.push(spec.commutator(g, h));
            }
        }
        let enumerated = spec.closure(&gens).len() as u64;
        assert_eq!(
            enumerated,
            spec.commutator_subgroup_order(),
            "commutator closure mismatch for {spec:?}"
        );
    }
}

#[test]
fn even_orders_not_divisible_by_four_have_odd_commutator_subgroup() {
    for spec in spec_table().iter().filter(|s| s.order() % 4 == 2) {
        assert_eq!(
            spec.commutator_subgroup_order() % 2,
            1,
            "derived subgroup must have odd order for {spec:?}"
        );
    }
}

#[test]
fn constructed_cycles_verify_against_the_original_generators() {
    // Representative instances from each outcome flavor; the cycle a report
    // carries must verify against the generators the caller handed in
    // (after any logged reduction), not against internal rearrangements.
    let spec = GroupSpec::new(6, 143, 120).unwrap();
    let sets: Vec<Vec<GroupElement>> = vec![
        vec![spec.element(3, 1), spec.element(2, 1)],
        vec![spec.element(3, 0), spec.element(2, 13), spec.element(2, 11)],
        vec![spec.element(3, 1), spec.element(2, 1), spec.element(0, 1)],
    ];
    for gens in sets {
        let report = construct(&spec, &gens, &ConstructOptions::default()).unwrap();
        let effective = report
            .reduced_generators
            .clone()
            .unwrap_or_else(|| report.generators.clone());
        let genset = GenSet::new(&spec, effective).unwrap();
        match &report.outcome {
            Outcome::Verified { cycle } => {
                assert!(verify_hamiltonian_cycle(&spec, &genset, cycle).is_ok());
            }
            Outcome::Delegated { fallback_cycle, .. } | Outcome::Failed { fallback_cycle, .. } => {
                let cycle = fallback_cycle.as_ref().expect("fallback enabled");
                assert!(verify_hamiltonian_cycle(&spec, &genset, cycle).is_ok());
            }
        }
        assert!(report.verified);
    }
}
