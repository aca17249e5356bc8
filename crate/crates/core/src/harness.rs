//! Batch sweeps over isomorphism classes and their generating sets,
//! with reproducible JSON/CSV artifacts and Graphviz export.
//!
//! A sweep fixes the two large primes, enumerates every isomorphism
//! class of order `6pq`, and runs the constructor on every minimal
//! generating pair plus a seeded sample of minimal triples per class.
//! Artifacts zero out wall-clock fields so identical configurations
//! produce byte-identical output.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::construct::{construct, ConstructOptions, ConstructionReport, Outcome};
use crate::enumerate::{
    enumerate_spec_classes, minimal_pairs, sample_minimal_triples, EnumerateError,
};
use crate::group::{GroupElement, GroupSpec};
use crate::walks::{verify_hamiltonian_cycle_elements, WalkError, WalkWord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Enumerate(#[from] EnumerateError),
    #[error("construction rejected an enumerated generating set: {0}")]
    Construct(String),
}

/// Configuration of one sweep, loadable from JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub p: u64,
    pub q: u64,
    /// Minimal triples sampled per isomorphism class.
    #[serde(default = "default_triple_count")]
    pub triple_count: usize,
    /// Cap on minimal pairs per class; `None` runs them all.
    #[serde(default)]
    pub pair_cap: Option<usize>,
    #[serde(default = "default_seed")]
    pub seed: u64,
    /// Attach searched fallback cycles to delegated/failed outcomes.
    #[serde(default)]
    pub allow_fallback: bool,
    #[serde(default = "default_budget")]
    pub oracle_budget: u64,
    #[serde(default = "default_seeds")]
    pub oracle_seeds: u64,
    /// Artifact paths; the CLI writes them when present.
    #[serde(default)]
    pub json_out: Option<String>,
    #[serde(default)]
    pub csv_out: Option<String>,
}

fn default_triple_count() -> usize {
    500
}
fn default_seed() -> u64 {
    858
}
fn default_budget() -> u64 {
    ConstructOptions::default().oracle_budget
}
fn default_seeds() -> u64 {
    ConstructOptions::default().oracle_seeds
}

impl SweepConfig {
    pub fn new(p: u64, q: u64) -> Self {
        SweepConfig {
            p,
            q,
            triple_count: default_triple_count(),
            pair_cap: None,
            seed: default_seed(),
            allow_fallback: false,
            oracle_budget: default_budget(),
            oracle_seeds: default_seeds(),
            json_out: None,
            csv_out: None,
        }
    }
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct SweepSummary {
    pub instances: u64,
    pub verified: u64,
    pub delegated: u64,
    pub failed: u64,
    pub by_case: BTreeMap<String, u64>,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepOutput {
    pub config: SweepConfig,
    pub classes: u64,
    pub summary: SweepSummary,
    pub reports: Vec<ConstructionReport>,
}

impl SweepOutput {
    /// Zero every wall-clock field so artifacts compare byte-for-byte.
    pub fn normalize_times(&mut self) {
        self.summary.elapsed_ms = 0;
        for r in &mut self.reports {
            r.wall_time_ms = 0;
        }
    }

    /// Normalized, pretty-printed JSON artifact.
    pub fn to_json(&self) -> String {
        let mut copy = self.clone();
        copy.normalize_times();
        let mut s = serde_json::to_string_pretty(&copy).expect("reports serialize");
        s.push('\n');
        s
    }

    /// Normalized CSV artifact: one row per constructed instance.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,m,tau,generators,set_size,case,status,verified,cycle_len\n");
        for r in &self.reports {
            let gens = r
                .generators
                .iter()
                .map(|g| format!("({} {})", g.i, g.j))
                .collect::<Vec<_>>()
                .join("|");
            let (status, cycle_len) = match &r.outcome {
                Outcome::Verified { cycle } => ("verified", cycle.expansion_len()),
                Outcome::Delegated { fallback_cycle, .. } => (
                    "delegated",
                    fallback_cycle.as_ref().map_or(0, |c| c.expansion_len()),
                ),
                Outcome::Failed { fallback_cycle, .. } => (
                    "failed",
                    fallback_cycle.as_ref().map_or(0, |c| c.expansion_len()),
                ),
            };
            writeln!(
                s,
                "{},{},{},{},{},{},{},{},{}",
                r.spec.n,
                r.spec.m,
                r.spec.tau,
                gens,
                r.set_size,
                r.case,
                status,
                r.verified,
                cycle_len
            )
            .expect("string write");
        }
        s
    }
}

/// Stable per-class seed derived from the sweep seed and the class key.
fn mix_seed(seed: u64, key: [u64; 3]) -> u64 {
    let mut x = seed ^ 0x9e37_79b9_7f4a_7c15;
    for part in key {
        x ^= part.wrapping_mul(0xbf58_476d_1ce4_e5b9);
        x = x.rotate_left(27).wrapping_mul(0x94d0_49bb_1331_11eb);
    }
    x
}

fn run_one(
    spec: &GroupSpec,
    gens: &[GroupElement],
    opts: &ConstructOptions,
    summary: &mut SweepSummary,
    reports: &mut Vec<ConstructionReport>,
) -> Result<(), HarnessError> {
    let report =
        construct(spec, gens, opts).map_err(|e| HarnessError::Construct(e.to_string()))?;
    summary.instances += 1;
    match &report.outcome {
        Outcome::Verified { .. } => summary.verified += 1,
        Outcome::Delegated { .. } => summary.delegated += 1,
        Outcome::Failed { .. } => summary.failed += 1,
    }
    *summary.by_case.entry(report.case.to_string()).or_insert(0) += 1;
    reports.push(report);
    Ok(())
}

/// Run the full sweep: every isomorphism class at `(p, q)`, all minimal
/// pairs, and a seeded sample of minimal triples per class.
pub fn run_suite(config: &SweepConfig) -> Result<SweepOutput, HarnessError> {
    let started = std::time::Instant::now();
    let classes = enumerate_spec_classes(config.p, config.q)?;
    let opts = ConstructOptions {
        allow_fallback: config.allow_fallback,
        oracle_budget: config.oracle_budget,
        oracle_seeds: config.oracle_seeds,
    };
    let mut summary = SweepSummary::default();
    let mut reports = Vec::new();
    for class in &classes {
        let pairs = minimal_pairs(&class.spec);
        let cap = config.pair_cap.unwrap_or(pairs.len());
        for pair in pairs.iter().take(cap) {
            run_one(&class.spec, pair, &opts, &mut summary, &mut reports)?;
        }
        let sample = sample_minimal_triples(
            &class.spec,
            config.triple_count,
            mix_seed(config.seed, class.iso_key),
        );
        for triple in &sample.triples {
            run_one(&class.spec, triple, &opts, &mut summary, &mut reports)?;
        }
    }
    summary.elapsed_ms = started.elapsed().as_millis() as u64;
    Ok(SweepOutput {
        config: config.clone(),
        classes: classes.len() as u64,
        summary,
        reports,
    })
}

/// How much of the ambient Cayley graph a DOT export shows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DotStyle {
    /// Only the Hamiltonian cycle edges.
    CycleOnly,
    /// Cycle edges solid, every remaining Cayley edge dashed.
    WithChords,
}

/// Render a verified Hamiltonian cycle as Graphviz DOT. The word is
/// re-verified first; an invalid word is an error, never a bad picture.
pub fn export_dot(
    spec: &GroupSpec,
    labels: &[GroupElement],
    word: &WalkWord,
    style: DotStyle,
) -> Result<String, WalkError> {
    verify_hamiltonian_cycle_elements(spec, labels, word)?;
    let mut order: Vec<GroupElement> = Vec::with_capacity(spec.order() as usize);
    let mut at = spec.identity();
    order.push(at);
    for step in &word.steps {
        let unit = if step.exp >= 0 { 1 } else { -1 };
        for _ in 0..step.exp.unsigned_abs() {
            let lab = labels[step.gen];
            let lab = if unit >= 0 { lab } else { spec.inverse(lab) };
            at = spec.multiply(at, lab);
            order.push(at);
        }
    }
    // last entry closes back to the identity
    order.pop();
    let mut s = String::from("graph cayley_cycle {\n  layout=circo;\n  node [shape=circle, fontsize=9];\n");
    for &g in &order {
        writeln!(
            s,
            "  v{} [label=\"({},{})\"];",
            spec.element_index(g),
            g.i,
            g.j
        )
        .expect("string write");
    }
    let mut cycle_edges = std::collections::BTreeSet::new();
    for k in 0..order.len() {
        let a = spec.element_index(order[k]);
        let b = spec.element_index(order[(k + 1) % order.len()]);
        cycle_edges.insert((a.min(b), a.max(b)));
        writeln!(s, "  v{a} -- v{b};").expect("string write");
    }
    if style == DotStyle::WithChords {
        let mut chords = std::collections::BTreeSet::new();
        for g in spec.elements() {
            for &lab in labels {
                let h = spec.multiply(g, lab);
                if h == g {
                    continue;
                }
                let (a, b) = (spec.element_index(g), spec.element_index(h));
                let key = (a.min(b), a.max(b));
                if !cycle_edges.contains(&key) {
                    chords.insert(key);
                }
            }
        }
        for (a, b) in chords {
            writeln!(s, "  v{a} -- v{b} [style=dashed, color=gray];").expect("string write");
        }
    }
    s.push_str("}\n");
    Ok(s)
}
