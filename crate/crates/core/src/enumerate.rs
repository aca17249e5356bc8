//! Enumeration of group presentations and generating sets at a fixed
//! pair of large primes.
//!
//! Presentations `(n, m, τ)` with `n·m = 2·3·p·q` are grouped into
//! isomorphism classes by a normalized key: primes of the normal part
//! that the action fixes are moved into the point part, and the twist is
//! reduced to the minimum of its power orbit under point-generator
//! changes. Two presentations get the same key exactly when the groups
//! are isomorphic, so each class is emitted once, under its first
//! presentation in scan order.
//!
//! Generating sets are enumerated over *canonical* labels (each label is
//! the smaller of the element and its inverse, by element index), since
//! inverting a label never changes the Cayley graph. Pairs are
//! exhaustive; triples are sampled with a seeded generator so batches
//! are reproducible.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::arith::{divisors, gcd, is_prime};
use crate::construct::present::Presentation;
use crate::group::{GroupElement, GroupSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("p={p} and q={q} must be distinct primes greater than 3")]
    BadPrimes { p: u64, q: u64 },
}

/// All twists `τ` for which `(n, m, τ)` is a valid presentation.
pub fn valid_taus(n: u64, m: u64) -> Vec<u64> {
    (0..m.max(1))
        .filter(|&tau| GroupSpec::new(n, m, tau).is_ok())
        .collect()
}

/// Isomorphism key of a presentation: normalized point order, normalized
/// normal-part order, and the minimal power of the twist over exponents
/// coprime to the point order.
pub fn iso_key(spec: &GroupSpec) -> [u64; 3] {
    let pres = Presentation::new(spec);
    let (nstar, mstar) = (pres.spec.n, pres.spec.m);
    if mstar <= 1 {
        return [nstar, 1, 0];
    }
    let orbit_min = (1..nstar)
        .filter(|&k| gcd(k, nstar) == 1)
        .map(|k| pres.spec.tau_pow(k))
        .min()
        .unwrap_or(pres.spec.tau);
    [nstar, mstar, orbit_min]
}

/// One isomorphism class of groups of order `6pq`: the representative is
/// the first presentation found in scan order over `(n, τ)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpecClass {
    pub spec: GroupSpec,
    pub iso_key: [u64; 3],
    /// Every presentation `(n, m, τ)` landing in this class.
    pub members: Vec<GroupSpec>,
}

/// Enumerate the isomorphism classes of groups of order `2·3·p·q`,
/// keyed and deduplicated, in scan order of their first presentation.
pub fn enumerate_spec_classes(p: u64, q: u64) -> Result<Vec<SpecClass>, EnumerateError> {
    if !is_prime(p) || !is_prime(q) || p <= 3 || q <= 3 || p == q {
        return Err(EnumerateError::BadPrimes { p, q });
    }
    let order = 6 * p * q;
    let mut classes: Vec<SpecClass> = Vec::new();
    let mut index: BTreeMap<[u64; 3], usize> = BTreeMap::new();
    for n in divisors(order) {
        let m = order / n;
        for tau in 0..m.max(1) {
            let Ok(spec) = GroupSpec::new(n, m, tau) else {
                continue;
            };
            let key = iso_key(&spec);
            match index.get(&key) {
                Some(&i) => classes[i].members.push(spec),
                None => {
                    index.insert(key, classes.len());
                    classes.push(SpecClass {
                        spec,
                        iso_key: key,
                        members: vec![spec],
                    });
                }
            }
        }
    }
    Ok(classes)
}

/// How many elements have each order; equal multisets are a necessary
/// condition for isomorphism, used to corroborate key collisions.
pub fn element_order_multiset(spec: &GroupSpec) -> BTreeMap<u64, u64> {
    let mut out = BTreeMap::new();
    for g in spec.elements() {
        *out.entry(spec.element_order(g)).or_insert(0) += 1;
    }
    out
}

/// The canonical representative of `{g, g⁻¹}`: whichever has the smaller
/// element index.
pub fn canonical_label(spec: &GroupSpec, g: GroupElement) -> GroupElement {
    let inv = spec.inverse(g);
    if spec.element_index(inv) < spec.element_index(g) {
        inv
    } else {
        g
    }
}

/// All non-identity canonical labels, in index order.
pub fn canonical_labels(spec: &GroupSpec) -> Vec<GroupElement> {
    spec.elements()
        .filter(|&g| g != spec.identity() && canonical_label(spec, g) == g)
        .collect()
}

/// Every minimal generating pair over canonical labels, in index order.
pub fn minimal_pairs(spec: &GroupSpec) -> Vec<[GroupElement; 2]> {
    let labels = canonical_labels(spec);
    let order = spec.order();
    let mut out = Vec::new();
    for (s, &g) in labels.iter().enumerate() {
        if spec.element_order(g) == order {
            continue; // a one-element set generates: no pair with g is minimal
        }
        for &h in &labels[s + 1..] {
            if spec.element_order(h) == order {
                continue;
            }
            if spec.closure_order(&[g, h]) == order {
                out.push([g, h]);
            }
        }
    }
    out
}

/// A reproducible batch of minimal generating triples.
#[derive(Debug, Clone, Serialize)]
pub struct TripleSample {
    pub triples: Vec<[GroupElement; 3]>,
    pub attempts: u64,
    /// True when the attempt cap ran out before `target` distinct
    /// triples were found.
    pub exhausted: bool,
}

/// Sample up to `target` distinct minimal generating triples over
/// canonical labels, deterministically for a given `seed`.
pub fn sample_minimal_triples(spec: &GroupSpec, target: usize, seed: u64) -> TripleSample {
    let labels = canonical_labels(spec);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen: BTreeSet<[usize; 3]> = BTreeSet::new();
    let mut triples = Vec::new();
    let mut attempts = 0u64;
    let cap = (target as u64).saturating_mul(400).max(4000);
    if labels.len() >= 3 {
        while triples.len() < target && attempts < cap {
            attempts += 1;
            let mut idx = [0usize; 3];
            idx[0] = rng.gen_range(0..labels.len());
            loop {
                idx[1] = rng.gen_range(0..labels.len());
                if idx[1] != idx[0] {
                    break;
                }
            }
            loop {
                idx[2] = rng.gen_range(0..labels.len());
                if idx[2] != idx[0] && idx[2] != idx[1] {
                    break;
                }
            }
            idx.sort_unstable();
            if !seen.insert(idx) {
                continue;
            }
            let set = [labels[idx[0]], labels[idx[1]], labels[idx[2]]];
            if spec.is_minimal_generating(&set) {
                triples.push(set);
            }
        }
    }
    TripleSample {
        exhausted: triples.len() < target,
        triples,
        attempts,
    }
}
