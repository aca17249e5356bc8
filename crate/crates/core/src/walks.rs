//! Cayley graphs, walk words, Hamiltonian verification and search.
//!
//! A walk is a run-length-encoded [`WalkWord`] over an ordered generating
//! set: step `(gen, exp)` means "apply generator `gen` `exp` times"
//! (negative `exp` applies the inverse). The verifier re-traces every
//! candidate cycle from scratch; nothing in this crate is trusted from
//! theory alone.

use crate::group::{GroupElement, GroupSpec};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default node-expansion budget for [`search_hamiltonian`].
pub const DEFAULT_SEARCH_BUDGET: u64 = 100_000_000;

/// Errors from generating-set validation, tracing and verification.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WalkError {
    #[error("generator {index} is the identity")]
    IdentityLabel { index: usize },
    #[error("generators {first} and {second} are equal")]
    DuplicateLabel { first: usize, second: usize },
    #[error("generator {index} is out of range for the group")]
    LabelRange { index: usize },
    #[error("walk step references generator {gen}, but only {available} labels exist")]
    BadGenIndex { gen: usize, available: usize },
    #[error("walk has length {length} but the graph has {order} vertices")]
    WrongLength { length: u64, order: u64 },
    #[error("walk revisits {vertex} (steps {first} and {second})")]
    RepeatedVertex {
        vertex: GroupElement,
        first: usize,
        second: usize,
    },
    #[error("walk ends at {endpoint}, not at its start")]
    OpenEndpoint { endpoint: GroupElement },
    #[error("walk ends at {endpoint}, not at the requested target")]
    WrongTarget { endpoint: GroupElement },
    #[error("factors do not commute: labels {a} and {b}")]
    NonCommutingFactors { a: usize, b: usize },
    #[error("factor word is not a hamiltonian {expected} of its subgroup: {source}")]
    BadFactorWord {
        expected: &'static str,
        #[source]
        source: Box<WalkError>,
    },
    #[error("factor index {index} out of range")]
    FactorIndex { index: usize },
    #[error("factor label sets overlap at index {index}")]
    FactorOverlap { index: usize },
}

/// Ordered generating set `S` (labels) of a group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenSet {
    labels: Vec<GroupElement>,
}

impl GenSet {
    /// Validate: labels in range, none the identity, pairwise distinct.
    pub fn new(spec: &GroupSpec, labels: Vec<GroupElement>) -> Result<Self, WalkError> {
        for (k, &g) in labels.iter().enumerate() {
            if !spec.contains(g) {
                return Err(WalkError::LabelRange { index: k });
            }
            if g == spec.identity() {
                return Err(WalkError::IdentityLabel { index: k });
            }
            for (k2, &h) in labels.iter().enumerate().take(k) {
                if g == h {
                    return Err(WalkError::DuplicateLabel { first: k2, second: k });
                }
            }
        }
        Ok(GenSet { labels })
    }

    pub fn labels(&self) -> &[GroupElement] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Size of the symmetric connection set `S ∪ S⁻¹` (as a set of elements).
    pub fn connection_set_size(&self, spec: &GroupSpec) -> usize {
        let mut conn: Vec<GroupElement> = Vec::new();
        for &s in &self.labels {
            for e in [s, spec.inverse(s)] {
                if !conn.contains(&e) {
                    conn.push(e);
                }
            }
        }
        conn.len()
    }
}

/// One run of a walk word: apply generator `gen` `exp` times (`exp != 0`;
/// negative means the inverse generator).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub gen: usize,
    pub exp: i64,
}

/// Run-length-encoded walk word.
///
/// Wire format: JSON array `[{"gen": k, "exp": e}, …]`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WalkWord {
    pub steps: Vec<Step>,
}

impl WalkWord {
    pub fn new(steps: Vec<Step>) -> Self {
        let mut w = WalkWord { steps: Vec::new() };
        for s in steps {
            w.push_run(s.gen, s.exp);
        }
        w
    }

    /// Build from `(gen, exp)` runs, dropping zero runs and merging
    /// adjacent runs of the same generator and sign.
    pub fn from_runs(runs: &[(usize, i64)]) -> Self {
        let mut w = WalkWord { steps: Vec::new() };
        for &(g, e) in runs {
            w.push_run(g, e);
        }
        w
    }

    /// Append one run, merging with the tail when generator and sign match.
    pub fn push_run(&mut self, gen: usize, exp: i64) {
        if exp == 0 {
            return;
        }
        if let Some(last) = self.steps.last_mut() {
            if last.gen == gen && (last.exp > 0) == (exp > 0) {
                last.exp += exp;
                return;
            }
        }
        self.steps.push(Step { gen, exp });
    }

    /// Append all runs of `other`.
    pub fn extend(&mut self, other: &WalkWord) {
        for s in &other.steps {
            self.push_run(s.gen, s.exp);
        }
    }

    /// The word repeated `k` times.
    pub fn repeated(&self, k: u64) -> WalkWord {
        let mut w = WalkWord::default();
        for _ in 0..k {
            w.extend(self);
        }
        w
    }

    /// The inverse walk `(s_1,…,s_k)⁻¹ = (s_k⁻¹,…,s_1⁻¹)`.
    pub fn inverse(&self) -> WalkWord {
        let mut w = WalkWord::default();
        for s in self.steps.iter().rev() {
            w.push_run(s.gen, -s.exp);
        }
        w
    }

    /// Total number of single-generator letters.
    pub fn expansion_len(&self) -> u64 {
        self.steps.iter().map(|s| s.exp.unsigned_abs()).sum()
    }

    /// Iterate the expansion as `(gen, sign)` letters.
    pub fn letters(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.steps
            .iter()
            .flat_map(|s| (0..s.exp.unsigned_abs()).map(move |_| (s.gen, s.exp.signum())))
    }

    /// Number of letters that use generator `gen` (either sign).
    pub fn occurrences(&self, gen: usize) -> u64 {
        self.steps
            .iter()
            .filter(|s| s.gen == gen)
            .map(|s| s.exp.unsigned_abs())
            .sum()
    }

    /// Re-encode a letter sequence as runs.
    pub fn from_letters(letters: impl IntoIterator<Item = (usize, i64)>) -> WalkWord {
        let mut w = WalkWord::default();
        for (g, s) in letters {
            w.push_run(g, s);
        }
        w
    }
}

/// Trace a word over an arbitrary label list (labels may repeat or be the
/// identity — needed for quotient projections). Returns the visited
/// vertex sequence (length `1 + expansion_len`) and the endpoint.
pub fn trace_elements(
    spec: &GroupSpec,
    labels: &[GroupElement],
    word: &WalkWord,
    start: GroupElement,
) -> Result<(Vec<GroupElement>, GroupElement), WalkError> {
    let mut seq = Vec::with_capacity(word.expansion_len() as usize + 1);
    seq.push(start);
    let mut cur = start;
    for step in &word.steps {
        if step.gen >= labels.len() {
            return Err(WalkError::BadGenIndex {
                gen: step.gen,
                available: labels.len(),
            });
        }
        let s = if step.exp > 0 {
            labels[step.gen]
        } else {
            spec.inverse(labels[step.gen])
        };
        for _ in 0..step.exp.unsigned_abs() {
            cur = spec.multiply(cur, s);
            seq.push(cur);
        }
    }
    Ok((seq, cur))
}

/// [`trace_elements`] over a validated generating set.
pub fn trace_word(
    spec: &GroupSpec,
    genset: &GenSet,
    word: &WalkWord,
    start: GroupElement,
) -> Result<(Vec<GroupElement>, GroupElement), WalkError> {
    trace_elements(spec, genset.labels(), word, start)
}

/// Check that `word`, traced from the identity over `labels`, visits every
/// element of the group exactly once and returns to the identity.
///
/// The two-vertex convention holds: in a group of order 2 the word `(a,a)`
/// passes (the trace is e, a, e). A group of order 1 accepts the empty word.
pub fn verify_hamiltonian_cycle_elements(
    spec: &GroupSpec,
    labels: &[GroupElement],
    word: &WalkWord,
) -> Result<(), WalkError> {
    let order = spec.order();
    let length = word.expansion_len();
    // the trivial group's cycle is the empty word
    let want = if order == 1 { 0 } else { order };
    if length != want {
        return Err(WalkError::WrongLength { length, order: want });
    }
    let (seq, endpoint) = trace_elements(spec, labels, word, spec.identity())?;
    if endpoint != spec.identity() {
        return Err(WalkError::OpenEndpoint { endpoint });
    }
    // positions 0..order are e, v_1, …, v_{order-1}, e — interior must be distinct
    let mut first_seen = vec![usize::MAX; order as usize];
    for (pos, &v) in seq.iter().take(order as usize).enumerate() {
        let idx = spec.element_index(v);
        if first_seen[idx] != usize::MAX {
            return Err(WalkError::RepeatedVertex {
                vertex: v,
                first: first_seen[idx],
                second: pos,
            });
        }
        first_seen[idx] = pos;
    }
    Ok(())
}

/// [`verify_hamiltonian_cycle_elements`] over a validated generating set.
pub fn verify_hamiltonian_cycle(
    spec: &GroupSpec,
    genset: &GenSet,
    word: &WalkWord,
) -> Result<(), WalkError> {
    verify_hamiltonian_cycle_elements(spec, genset.labels(), word)
}

/// One labeled arc of the Cayley graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub to: u32,
    pub gen: u16,
    pub dir: i8,
}

/// The Cayley graph `Cay(G; S)`: vertex `k` is the element with index `k`
/// (`i*m + j`), edges join `g` to `g·s` for `s` in the connection set.
#[derive(Debug, Clone)]
pub struct CayleyGraph {
    spec: GroupSpec,
    genset: GenSet,
    /// Deduplicated neighbor lists (simple-graph adjacency), sorted.
    adj: Vec<Vec<u32>>,
    /// All labeled arcs per vertex, in generator order, forward then backward.
    arcs: Vec<Vec<Arc>>,
    connected: bool,
}

/// Build the Cayley graph. Disconnected graphs are permitted and flagged.
pub fn build_graph(spec: &GroupSpec, genset: &GenSet) -> CayleyGraph {
    let order = spec.order() as usize;
    let mut adj = vec![Vec::new(); order];
    let mut arcs = vec![Vec::new(); order];
    for v in 0..order {
        let g = spec.element_at(v);
        for (k, &s) in genset.labels().iter().enumerate() {
            for (dir, target) in [(1i8, s), (-1i8, spec.inverse(s))] {
                let to = spec.element_index(spec.multiply(g, target)) as u32;
                arcs[v].push(Arc {
                    to,
                    gen: k as u16,
                    dir,
                });
                if !adj[v].contains(&to) {
                    adj[v].push(to);
                }
            }
        }
        adj[v].sort_unstable();
    }
    // connectivity by BFS from the identity, cross-checked against closure
    let mut seen = vec![false; order];
    let mut queue = std::collections::VecDeque::from([0u32]);
    seen[0] = true;
    let mut count = 1usize;
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v as usize] {
            if !seen[w as usize] {
                seen[w as usize] = true;
                count += 1;
                queue.push_back(w);
            }
        }
    }
    let connected = count == order;
    debug_assert_eq!(
        connected,
        spec.closure_order(genset.labels()) == spec.order(),
        "graph connectivity must match subgroup closure"
    );
    CayleyGraph {
        spec: *spec,
        genset: genset.clone(),
        adj,
        arcs,
        connected,
    }
}

impl CayleyGraph {
    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn genset(&self) -> &GenSet {
        &self.genset
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn is_connected(&self) -> bool {
        self.connected
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adj[v]
    }

    pub fn arcs(&self, v: usize) -> &[Arc] {
        &self.arcs[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Number of connected components.
    pub fn component_count(&self) -> usize {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut parts = 0;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            parts += 1;
            let mut queue = std::collections::VecDeque::from([s as u32]);
            seen[s] = true;
            while let Some(v) = queue.pop_front() {
                for &w in &self.adj[v as usize] {
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        parts
    }

    /// Rebuild a walk word from a vertex sequence (consecutive vertices must
    /// be adjacent); picks the lowest generator index, forward direction first.
    fn word_from_vertices(&self, verts: &[u32]) -> WalkWord {
        let letters = verts.windows(2).map(|w| {
            let arc = self.arcs[w[0] as usize]
                .iter()
                .find(|a| a.to == w[1])
                .expect("consecutive path vertices must be adjacent");
            (arc.gen as usize, arc.dir as i64)
        });
        WalkWord::from_letters(letters)
    }
}

/// What to search for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    /// A Hamiltonian cycle (based at the identity; the graph is
    /// vertex-transitive, so the base is immaterial).
    Cycle,
    /// A Hamiltonian path from `from` to `to`.
    Path { from: GroupElement, to: GroupElement },
}

/// Result of a Hamiltonian search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    /// A verified word.
    Found(WalkWord),
    /// The search space was exhausted: no such cycle/path exists.
    NoneExists,
    /// The node-expansion budget was hit before an answer was reached.
    Exhausted,
}

impl SearchOutcome {
    pub fn found(self) -> Option<WalkWord> {
        match self {
            SearchOutcome::Found(w) => Some(w),
            _ => None,
        }
    }
}

/// Backtracking Hamiltonian search with lowest-residual-degree branching,
/// degree-2 forcing and connectivity pruning. Deterministic.
pub fn search_hamiltonian(graph: &CayleyGraph, mode: SearchMode, budget: u64) -> SearchOutcome {
    search_hamiltonian_seeded(graph, mode, budget, None)
}

/// [`search_hamiltonian`] with an optional tie-break shuffle seed, used to
/// obtain alternative cycles. `None` gives the canonical deterministic order.
pub fn search_hamiltonian_seeded(
    graph: &CayleyGraph,
    mode: SearchMode,
    budget: u64,
    shuffle_seed: Option<u64>,
) -> SearchOutcome {
    let n = graph.vertex_count();
    let spec = graph.spec();
    let (start, target) = match mode {
        SearchMode::Cycle => (0usize, 0usize),
        SearchMode::Path { from, to } => (spec.element_index(from), spec.element_index(to)),
    };
    let is_cycle = matches!(mode, SearchMode::Cycle);
    if n == 1 {
        return SearchOutcome::Found(WalkWord::default());
    }
    if !graph.is_connected() {
        return SearchOutcome::NoneExists;
    }
    if !is_cycle && start == target {
        // a Hamiltonian path with equal endpoints is a cycle; refuse unless trivial
        return SearchOutcome::NoneExists;
    }

    let mut rng = shuffle_seed.map(ChaCha8Rng::seed_from_u64);
    let mut visited = vec![false; n];
    let mut path: Vec<u32> = Vec::with_capacity(n);
    let mut frames: Vec<(Vec<u32>, usize)> = Vec::with_capacity(n);
    let mut expansions: u64 = 0;

    // scratch buffers for pruning
    let mut reach = vec![0u32; n];
    let mut reach_stamp: u32 = 0;
    let mut bfs: Vec<u32> = Vec::with_capacity(n);

    visited[start] = true;
    path.push(start as u32);

    let candidates = |visited: &[bool],
                      v: usize,
                      depth: usize,
                      rng: &mut Option<ChaCha8Rng>|
     -> Vec<u32> {
        let mut cand: Vec<u32> = graph.adj[v]
            .iter()
            .copied()
            .filter(|&w| {
                let w = w as usize;
                if visited[w] {
                    return false;
                }
                if !is_cycle && w == target && depth + 1 < n {
                    return false; // the target may only be entered last
                }
                true
            })
            .collect();
        if let Some(r) = rng.as_mut() {
            cand.shuffle(r);
        }
        // lowest residual degree first (stable, so shuffled ties stay shuffled)
        cand.sort_by_key(|&w| {
            graph.adj[w as usize]
                .iter()
                .filter(|&&x| !visited[x as usize])
                .count()
        });
        cand
    };

    // Pruning after tentatively extending the path to head:
    // every unvisited vertex must keep degree ≥ 2 (counting adjacency to the
    // head and, in cycle mode, to the start), the unvisited region must be
    // reachable from the head, and in cycle mode some unvisited vertex must
    // still neighbor the start.
    let mut prune_ok = |visited: &[bool], head: usize, remaining: usize| -> bool {
        if remaining == 0 {
            return true;
        }
        reach_stamp += 1;
        bfs.clear();
        let mut reached = 0usize;
        for &w in &graph.adj[head] {
            if !visited[w as usize] && reach[w as usize] != reach_stamp {
                reach[w as usize] = reach_stamp;
                bfs.push(w);
                reached += 1;
            }
        }
        let mut qi = 0usize;
        while qi < bfs.len() {
            let v = bfs[qi] as usize;
            qi += 1;
            for &w in &graph.adj[v] {
                if !visited[w as usize] && reach[w as usize] != reach_stamp {
                    reach[w as usize] = reach_stamp;
                    bfs.push(w);
                    reached += 1;
                }
            }
        }
        if reached != remaining {
            return false;
        }
        let mut start_touch = false;
        for &w in bfs.iter() {
            let w = w as usize;
            let mut deg = 0usize;
            let mut adj_start = false;
            for &x in &graph.adj[w] {
                let x = x as usize;
                if !visited[x] {
                    deg += 1;
                } else if x == head {
                    deg += 1;
                } else if is_cycle && x == start {
                    deg += 1;
                    adj_start = true;
                }
            }
            if adj_start {
                start_touch = true;
            }
            let need = if !is_cycle && w == target { 1 } else { 2 };
            if deg < need {
                return false;
            }
        }
        if is_cycle && !start_touch {
            // no unvisited vertex can re-enter the start: the cycle cannot close
            // (the head itself closing is only possible when remaining == 0)
            return false;
        }
        true
    };

    frames.push((candidates(&visited, start, 1, &mut rng), 0));

    loop {
        let depth = path.len();
        let (cand, next) = match frames.last_mut() {
            Some(f) => f,
            None => return SearchOutcome::NoneExists,
        };
        if *next >= cand.len() {
            frames.pop();
            let v = path.pop().expect("path tracks frames") as usize;
            visited[v] = false;
            if path.is_empty() {
                return SearchOutcome::NoneExists;
            }
            continue;
        }
        let v = cand[*next] as usize;
        *next += 1;
        expansions += 1;
        if expansions > budget {
            return SearchOutcome::Exhausted;
        }
        visited[v] = true;
        path.push(v as u32);
        if depth + 1 == n {
            // complete: close the cycle or hit the target
            let success = if is_cycle {
                graph.adj[v].contains(&(start as u32))
            } else {
                v == target
            };
            if success {
                let mut verts = path.clone();
                if is_cycle {
                    verts.push(start as u32);
                }
                return SearchOutcome::Found(graph.word_from_vertices(&verts));
            }
            visited[v] = false;
            path.pop();
            continue;
        }
        let remaining = n - depth - 1;
        if !prune_ok(&visited, v, remaining) {
            visited[v] = false;
            path.pop();
            continue;
        }
        let c = candidates(&visited, v, depth + 1, &mut rng);
        frames.push((c, 0));
    }
}

/// Which shape the second factor's word has.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorKind {
    Cycle,
    Path,
}

/// Combine a Hamiltonian cycle of the subgroup generated by the labels
/// `factor_a` with a Hamiltonian path or cycle of the subgroup generated by
/// `factor_b` into a Hamiltonian cycle of the (internal direct) product.
///
/// `cycle_a` and `word_b` index into `factor_a` / `factor_b` respectively;
/// the result indexes into the ambient generating set. The factor label
/// sets must commute elementwise and the two subgroups must intersect
/// trivially (checked indirectly: the result is re-verified to visit
/// `|A|·|B|` distinct elements).
pub fn cartesian_product_hc(
    spec: &GroupSpec,
    genset: &GenSet,
    factor_a: &[usize],
    cycle_a: &WalkWord,
    factor_b: &[usize],
    word_b: &WalkWord,
    kind_b: FactorKind,
) -> Result<WalkWord, WalkError> {
    for &k in factor_a.iter().chain(factor_b) {
        if k >= genset.len() {
            return Err(WalkError::FactorIndex { index: k });
        }
    }
    if let Some(&k) = factor_a.iter().find(|k| factor_b.contains(k)) {
        return Err(WalkError::FactorOverlap { index: k });
    }
    for &ka in factor_a {
        for &kb in factor_b {
            let s = genset.labels()[ka];
            let t = genset.labels()[kb];
            if spec.multiply(s, t) != spec.multiply(t, s) {
                return Err(WalkError::NonCommutingFactors { a: ka, b: kb });
            }
        }
    }
    let labels_a: Vec<GroupElement> = factor_a.iter().map(|&k| genset.labels()[k]).collect();
    let labels_b: Vec<GroupElement> = factor_b.iter().map(|&k| genset.labels()[k]).collect();
    let sub_a = spec.closure(&labels_a);
    let sub_b = spec.closure(&labels_b);

    check_factor_word(spec, &labels_a, cycle_a, sub_a.len() as u64, FactorKind::Cycle)
        .map_err(|e| WalkError::BadFactorWord {
            expected: "cycle",
            source: Box::new(e),
        })?;
    check_factor_word(spec, &labels_b, word_b, sub_b.len() as u64, kind_b).map_err(|e| {
        WalkError::BadFactorWord {
            expected: match kind_b {
                FactorKind::Cycle => "cycle",
                FactorKind::Path => "path",
            },
            source: Box::new(e),
        }
    })?;

    // Letters in ambient indexing.
    let alpha: Vec<(usize, i64)> = cycle_a
        .letters()
        .map(|(g, s)| (factor_a[g], s))
        .collect();
    let mut beta: Vec<(usize, i64)> = word_b
        .letters()
        .map(|(g, s)| (factor_b[g], s))
        .collect();
    if kind_b == FactorKind::Cycle {
        beta.pop(); // a Hamiltonian cycle minus its last letter is a Hamiltonian path
    }

    let a = alpha.len(); // |A|
    let l = beta.len(); // |B| - 1
    if a == 0 {
        // trivial first factor: only a cycle in B survives as a cycle
        return match kind_b {
            FactorKind::Cycle => Ok(WalkWord::from_letters(
                word_b.letters().map(|(g, s)| (factor_b[g], s)),
            )),
            FactorKind::Path => Err(WalkError::WrongLength {
                length: word_b.expansion_len(),
                order: sub_b.len() as u64,
            }),
        };
    }
    if l == 0 {
        return Ok(WalkWord::from_letters(alpha));
    }

    // Boustrophedon: snake rows x_1..x_{a-1} across all B-levels, then come
    // home down the reserved column x_0.
    let inv = |(g, s): (usize, i64)| (g, -s);
    let row_fwd: Vec<(usize, i64)> = alpha[1..a - 1].to_vec(); // α_2..α_{a-1}
    let row_back: Vec<(usize, i64)> = row_fwd.iter().rev().map(|&x| inv(x)).collect();

    let mut out: Vec<(usize, i64)> = Vec::with_capacity(a * (l + 1));
    out.push(alpha[0]); // x_0 -> x_1
    out.extend(&row_fwd); // row 0 to x_{a-1}
    for (r, &b_step) in beta.iter().enumerate() {
        out.push(b_step); // up one B-level
        if r % 2 == 0 {
            out.extend(&row_back); // odd rows run backwards, ending at x_1
        } else {
            out.extend(&row_fwd);
        }
    }
    if l % 2 == 0 {
        out.push(alpha[a - 1]); // closing letter x_{a-1} -> x_0
    } else {
        out.push(inv(alpha[0])); // x_1 -> x_0
    }
    for &b_step in beta.iter().rev() {
        out.push(inv(b_step)); // descend column x_0
    }

    let word = WalkWord::from_letters(out);
    // Certify: |A|·|B| distinct vertices, closed.
    let expected = (sub_a.len() * sub_b.len()) as u64;
    verify_closed_distinct(spec, genset.labels(), &word, expected)?;
    Ok(word)
}

/// Check that a factor word is a Hamiltonian cycle/path of its subgroup.
fn check_factor_word(
    spec: &GroupSpec,
    labels: &[GroupElement],
    word: &WalkWord,
    sub_order: u64,
    kind: FactorKind,
) -> Result<(), WalkError> {
    let want = match kind {
        FactorKind::Cycle if sub_order == 1 => 0,
        FactorKind::Cycle => sub_order,
        FactorKind::Path => sub_order - 1,
    };
    if word.expansion_len() != want {
        return Err(WalkError::WrongLength {
            length: word.expansion_len(),
            order: want,
        });
    }
    let (seq, endpoint) = trace_elements(spec, labels, word, spec.identity())?;
    let interior = match kind {
        FactorKind::Cycle => {
            if endpoint != spec.identity() && sub_order > 1 {
                return Err(WalkError::OpenEndpoint { endpoint });
            }
            &seq[..seq.len() - 1]
        }
        FactorKind::Path => &seq[..],
    };
    let mut seen = std::collections::HashMap::new();
    for (pos, &v) in interior.iter().enumerate() {
        if let Some(&first) = seen.get(&v) {
            return Err(WalkError::RepeatedVertex {
                vertex: v,
                first,
                second: pos,
            });
        }
        seen.insert(v, pos);
    }
    Ok(())
}

/// Check a word visits exactly `expected` distinct vertices, each once, and
/// closes. Used to certify product cycles over subgroups.
fn verify_closed_distinct(
    spec: &GroupSpec,
    labels: &[GroupElement],
    word: &WalkWord,
    expected: u64,
) -> Result<(), WalkError> {
    let want = if expected == 1 { 0 } else { expected };
    if word.expansion_len() != want {
        return Err(WalkError::WrongLength {
            length: word.expansion_len(),
            order: want,
        });
    }
    let (seq, endpoint) = trace_elements(spec, labels, word, spec.identity())?;
    if endpoint != spec.identity() {
        return Err(WalkError::OpenEndpoint { endpoint });
    }
    let mut seen = std::collections::HashMap::new();
    for (pos, &v) in seq.iter().take(expected as usize).enumerate() {
        if let Some(&first) = seen.get(&v) {
            return Err(WalkError::RepeatedVertex {
                vertex: v,
                first,
                second: pos,
            });
        }
        seen.insert(v, pos);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;

    fn d6() -> GroupSpec {
        GroupSpec::new(2, 3, 2).unwrap()
    }

    fn el(i: u64, j: u64) -> GroupElement {
        GroupElement { i, j }
    }

    #[test]
    fn genset_validation() {
        let g = d6();
        assert!(GenSet::new(&g, vec![el(1, 0), el(0, 1)]).is_ok());
        assert!(matches!(
            GenSet::new(&g, vec![el(0, 0)]),
            Err(WalkError::IdentityLabel { .. })
        ));
        assert!(matches!(
            GenSet::new(&g, vec![el(1, 0), el(1, 0)]),
            Err(WalkError::DuplicateLabel { .. })
        ));
        assert!(matches!(
            GenSet::new(&g, vec![el(5, 0)]),
            Err(WalkError::LabelRange { .. })
        ));
    }

    #[test]
    fn word_rle_and_expansion() {
        let w = WalkWord::from_runs(&[(0, 5), (1, 1), (0, -5), (1, -1)]);
        assert_eq!(w.expansion_len(), 12);
        assert_eq!(w.steps.len(), 4);
        let w2 = w.repeated(3);
        assert_eq!(w2.expansion_len(), 36);
        assert_eq!(w.inverse().inverse(), w);
        assert_eq!(w.occurrences(1), 2);
        // merging
        let mut m = WalkWord::default();
        m.push_run(0, 2);
        m.push_run(0, 3);
        m.push_run(0, -1);
        assert_eq!(m.steps, vec![Step { gen: 0, exp: 5 }, Step { gen: 0, exp: -1 }]);
        // serde shape
        let s = serde_json::to_string(&w).unwrap();
        assert!(s.starts_with(r#"[{"gen":0,"exp":5}"#));
        let back: WalkWord = serde_json::from_str(&s).unwrap();
        assert_eq!(back, w);
    }

    #[test]
    fn graph_shape() {
        let g = d6();
        let s = GenSet::new(&g, vec![el(1, 0), el(0, 1)]).unwrap();
        let graph = build_graph(&g, &s);
        assert_eq!(graph.vertex_count(), 6);
        assert!(graph.is_connected());
        // one involution (degree 1) + one order-3 pair (degree 2)
        assert_eq!(s.connection_set_size(&g), 3);
        for v in 0..6 {
            assert_eq!(graph.degree(v), 3);
        }
        // adjacency is symmetric
        for v in 0..6 {
            for &w in graph.neighbors(v) {
                assert!(graph.neighbors(w as usize).contains(&(v as u32)));
            }
        }

        let rot_only = GenSet::new(&g, vec![el(0, 1)]).unwrap();
        let graph = build_graph(&g, &rot_only);
        assert!(!graph.is_connected());
        assert_eq!(graph.component_count(), 2);
    }

    #[test]
    fn tracing() {
        let g = d6();
        let s = GenSet::new(&g, vec![el(1, 0), el(0, 1)]).unwrap();
        let (seq, end) = trace_word(&g, &s, &WalkWord::default(), g.identity()).unwrap();
        assert_eq!(seq, vec![g.identity()]);
        assert_eq!(end, g.identity());

        // (r, r, f, r, r, f) with r the rotation, f the flip
        let w = WalkWord::from_runs(&[(1, 2), (0, 1), (1, 2), (0, 1)]);
        let (seq, end) = trace_word(&g, &s, &w, g.identity()).unwrap();
        assert_eq!(end, g.identity());
        assert_eq!(seq.len(), 7);
        let mut interior: Vec<_> = seq[..6].to_vec();
        interior.sort();
        interior.dedup();
        assert_eq!(interior.len(), 6);

        // inverse word endpoint is the inverse of the product
        let w = WalkWord::from_runs(&[(0, 1), (1, 1)]);
        let (_, end) = trace_word(&g, &s, &w, g.identity()).unwrap();
        let (_, end_inv) = trace_word(&g, &s, &w.inverse(), g.identity()).unwrap();
        assert_eq!(g.multiply(end, end_inv), g.identity());

        assert!(matches!(
            trace_word(&g, &s, &WalkWord::from_runs(&[(7, 1)]), g.identity()),
            Err(WalkError::BadGenIndex { .. })
        ));
    }

    #[test]
    fn verification() {
        let g = d6();
        let s = GenSet::new(&g, vec![el(1, 0), el(0, 1)]).unwrap();
        let good = WalkWord::from_runs(&[(1, 2), (0, 1), (1, 2), (0, 1)]);
        assert!(verify_hamiltonian_cycle(&g, &s, &good).is_ok());
        // reversal symmetry
        assert!(verify_hamiltonian_cycle(&g, &s, &good.inverse()).is_ok());

        let bad = WalkWord::from_runs(&[(1, 3)]);
        assert!(matches!(
            verify_hamiltonian_cycle(&g, &s, &bad),
            Err(WalkError::WrongLength { length: 3, order: 6 })
        ));
        let closed_short = WalkWord::from_runs(&[(1, 3), (1, 3)]);
        assert!(matches!(
            verify_hamiltonian_cycle(&g, &s, &closed_short),
            Err(WalkError::RepeatedVertex { .. })
        ));

        // two-vertex convention: (a, a) in the order-2 group
        let c2 = GroupSpec::new(2, 1, 0).unwrap();
        let s2 = GenSet::new(&c2, vec![el(1, 0)]).unwrap();
        let aa = WalkWord::from_runs(&[(0, 2)]);
        assert!(verify_hamiltonian_cycle(&c2, &s2, &aa).is_ok());
    }

    #[test]
    fn search_small_cycles() {
        let g = d6();
        let s = GenSet::new(&g, vec![el(1, 0), el(0, 1)]).unwrap();
        let graph = build_graph(&g, &s);
        let w = search_hamiltonian(&graph, SearchMode::Cycle, 1_000_000)
            .found()
            .expect("hexagonal prism-like graph has a cycle");
        assert!(verify_hamiltonian_cycle(&g, &s, &w).is_ok());

        // abelian C_15 with two generators
        let a = GroupSpec::new(1, 15, 1).unwrap();
        let s = GenSet::new(&a, vec![el(0, 5), el(0, 3)]).unwrap();
        let graph = build_graph(&a, &s);
        let w = search_hamiltonian(&graph, SearchMode::Cycle, 1_000_000)
            .found()
            .unwrap();
        assert!(verify_hamiltonian_cycle(&a, &s, &w).is_ok());
    }

    #[test]
    fn search_path_mode() {
        let a = GroupSpec::new(3, 5, 1).unwrap();
        let s = GenSet::new(&a, vec![el(1, 0), el(0, 1)]).unwrap();
        let graph = build_graph(&a, &s);
        let from = a.identity();
        let to = el(1, 3);
        match search_hamiltonian(&graph, SearchMode::Path { from, to }, 10_000_000) {
            SearchOutcome::Found(w) => {
                assert_eq!(w.expansion_len(), 14);
                let (seq, end) = trace_word(&a, &s, &w, from).unwrap();
                assert_eq!(end, to);
                let mut all: Vec<_> = seq.clone();
                all.sort();
                all.dedup();
                assert_eq!(all.len(), 15);
            }
            other => panic!("expected a path, got {other:?}"),
        }
    }

    #[test]
    fn search_exhaustion_and_impossibility() {
        // C_4-like? stay square-free: a 6-cycle graph from a single order-6 generator
        let c6 = GroupSpec::new(6, 1, 0).unwrap();
        let s = GenSet::new(&c6, vec![el(1, 0)]).unwrap();
        let graph = build_graph(&c6, &s);
        assert!(matches!(
            search_hamiltonian(&graph, SearchMode::Cycle, 1_000_000),
            SearchOutcome::Found(_)
        ));
        // budget 0 exhausts immediately on any nontrivial search
        assert_eq!(
            search_hamiltonian(&graph, SearchMode::Cycle, 0),
            SearchOutcome::Exhausted
        );
        // adjacent endpoints of a 6-cycle admit no spanning path between them
        // unless they are the two ends of the cycle minus one edge
        let from = el(0, 0);
        let to = el(2, 0); // distance 2 around the hexagon: impossible
        assert_eq!(
            search_hamiltonian(&graph, SearchMode::Path { from, to }, 1_000_000),
            SearchOutcome::NoneExists
        );
    }

    #[test]
    fn cartesian_products() {
        // C_3 × P_2 inside C_2 × C_3 (abelian, τ = 1)
        let g = GroupSpec::new(2, 3, 1).unwrap();
        let s = GenSet::new(&g, vec![el(0, 1), el(1, 0)]).unwrap();
        let cyc3 = WalkWord::from_runs(&[(0, 3)]);
        let path2 = WalkWord::from_runs(&[(0, 1)]);
        let w = cartesian_product_hc(
            &g,
            &s,
            &[0],
            &cyc3,
            &[1],
            &path2,
            FactorKind::Path,
        )
        .unwrap();
        assert!(verify_hamiltonian_cycle(&g, &s, &w).is_ok());

        // C_5 × C_3 inside C_15
        let a = GroupSpec::new(1, 15, 1).unwrap();
        let s = GenSet::new(&a, vec![el(0, 3), el(0, 5)]).unwrap();
        let c5 = WalkWord::from_runs(&[(0, 5)]);
        let c3 = WalkWord::from_runs(&[(0, 3)]);
        let w = cartesian_product_hc(&a, &s, &[0], &c5, &[1], &c3, FactorKind::Cycle).unwrap();
        assert!(verify_hamiltonian_cycle(&a, &s, &w).is_ok());
        assert_eq!(w.expansion_len(), 15);

        // non-commuting factors rejected
        let d6 = GroupSpec::new(2, 3, 2).unwrap();
        let s = GenSet::new(&d6, vec![el(0, 1), el(1, 0)]).unwrap();
        let err = cartesian_product_hc(
            &d6,
            &s,
            &[0],
            &cyc3,
            &[1],
            &path2,
            FactorKind::Path,
        );
        assert!(matches!(err, Err(WalkError::NonCommutingFactors { .. })));
    }

    #[test]
    fn product_of_cycle_with_two_vertex_factor() {
        // C_3 × C_2 via the (a,a) convention on the second factor
        let g = GroupSpec::new(2, 3, 1).unwrap();
        let s = GenSet::new(&g, vec![el(0, 1), el(1, 0)]).unwrap();
        let c3 = WalkWord::from_runs(&[(0, 3)]);
        let c2 = WalkWord::from_runs(&[(0, 2)]);
        let w = cartesian_product_hc(&g, &s, &[0], &c3, &[1], &c2, FactorKind::Cycle).unwrap();
        assert!(verify_hamiltonian_cycle(&g, &s, &w).is_ok());
        // and with the roles swapped (cycle of length 2 as factor A)
        let w = cartesian_product_hc(&g, &s, &[1], &c2, &[0], &c3, FactorKind::Cycle).unwrap();
        assert!(verify_hamiltonian_cycle(&g, &s, &w).is_ok());
    }
}
