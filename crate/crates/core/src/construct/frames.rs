//! Case matching: send a minimal generating set (in normalized coordinates)
//! to a construction recipe.
//!
//! A recipe is a [`Frame`] — which input label feeds which tabulated slot,
//! which labels are inverted, and a conjugation witness — together with a
//! [`Plan`]: either a list of quotient-cycle candidates to lift, a seeded
//! edge-flip lift, a direct-product assembly, or a diagnostic dead end.
//!
//! Matching is purely arithmetic on the normalized labels. Conjugation by a
//! rotation-free element is used only to *recognize* a tabulated shape and
//! to read off measurement parameters: whether a word traces a Hamiltonian
//! cycle, and whether its voltage generates the kernel, are invariant under
//! conjugating the whole generating set, so executors always run on the
//! unconjugated inputs.

use crate::arith::mod_inv;
use crate::group::{GroupElement, GroupSpec};
use crate::walks::WalkWord;

use super::present::{additive_order, crt2, Presentation};
use super::templates as tpl;
use super::{CriterionFamily, Family, LeafTag, QuotientCandidate};

/// How a matched case repositions the input labels.
///
/// `perm[slot]` is the input index feeding that slot, `invert[slot]` says
/// whether the label enters inverted, and `conj` is the exponent `e` of a
/// rotation-free witness `(0, e)` conjugating the arranged set onto the
/// tabulated shape. `labels` are the arranged, conjugated labels in
/// normalized coordinates (slot order), kept for logging and debugging.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Frame {
    pub perm: Vec<usize>,
    pub invert: Vec<bool>,
    pub conj: u64,
    pub labels: Vec<GroupElement>,
}

impl Frame {
    fn describe(&self) -> String {
        let slots: Vec<String> = self
            .perm
            .iter()
            .zip(&self.invert)
            .enumerate()
            .map(|(slot, (&input, &inv))| {
                format!(
                    "slot {} <- label #{}{}",
                    (b'a' + slot as u8) as char,
                    input,
                    if inv { " inverted" } else { "" }
                )
            })
            .collect();
        format!("{}; conjugation exponent {}", slots.join(", "), self.conj)
    }
}

/// A seeded edge-flip lift: search the quotient by the order-`kernel`
/// normal subgroup for Hamiltonian cycles through the given slot, then lift
/// via sign-flip variants of that slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct EdgeFlipSpec {
    pub kernel: u64,
    pub slot: usize,
}

/// What to execute for a matched case.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Plan {
    /// Try tabulated quotient-cycle candidates in order; optionally fall
    /// back to an edge-flip lift when all of them fail.
    Templates {
        candidates: Vec<QuotientCandidate>,
        edge_flip: Option<EdgeFlipSpec>,
    },
    /// Pure edge-flip lift (no tabulated candidates exist for the shape).
    EdgeFlip { kernel: u64, slot: usize },
    /// The slot is a central involution: build the cycle as a product of a
    /// cycle in the index-2 subgroup and a 2-vertex path.
    PathProduct { apex_slot: usize },
    /// The tabulated analysis asserts this parameter region cannot occur
    /// for a minimal generating set, because the given pair of slots
    /// already generates. Executors re-check that claim concretely.
    Dead { pair: (usize, usize), note: String },
}

/// A matched case: refined tag, frame, plan, and a human-readable log.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct CaseMatch {
    pub tag: LeafTag,
    pub frame: Frame,
    pub plan: Plan,
    pub log: Vec<String>,
}

/// Matching context: the normalized presentation and the input labels
/// mapped into normalized coordinates (index-aligned with the input).
pub(crate) struct MatchEnv<'a> {
    pub pres: &'a Presentation,
    pub labels: &'a [GroupElement],
}

// ---------------------------------------------------------------------------
// small helpers

fn perms2() -> &'static [[usize; 2]] {
    &[[0, 1], [1, 0]]
}

fn perms3() -> &'static [[usize; 3]] {
    &[
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ]
}

fn masks2() -> &'static [[bool; 2]] {
    &[[false, false], [true, false], [false, true], [true, true]]
}

fn masks3() -> &'static [[bool; 3]] {
    &[
        [false, false, false],
        [true, false, false],
        [false, true, false],
        [true, true, false],
        [false, false, true],
        [true, false, true],
        [false, true, true],
        [true, true, true],
    ]
}

/// Arrange the input labels into slots: permute, then invert the flagged ones.
fn arranged(env: &MatchEnv<'_>, perm: &[usize], mask: &[bool]) -> Vec<GroupElement> {
    perm.iter()
        .zip(mask)
        .map(|(&k, &inv)| {
            let g = env.labels[k];
            if inv {
                env.pres.spec.inverse(g)
            } else {
                g
            }
        })
        .collect()
}

fn conj_by(spec: &GroupSpec, e: u64, g: GroupElement) -> GroupElement {
    spec.conjugate(GroupElement { i: 0, j: e }, g)
}

/// The `r`-component of the normal part of `g` (`0` means trivial).
fn part(g: GroupElement, r: u64) -> u64 {
    g.j % r
}

/// `x / u` in `Z_r` for a unit `u`; `None` when `u` is not a unit.
fn unit_div(x: u64, u: u64, r: u64) -> Option<u64> {
    let inv = mod_inv(u % r, r)?;
    Some((x % r) * inv % r)
}

/// Find the smallest exponent `e` such that conjugating by `(0, e)` zeroes
/// the `r`-component of `g` for every constraint `(g, r)`, with `e ≡ 0` at
/// every prime of the normal part not mentioned.
///
/// The `r`-component of the conjugate of `g = (i, j)` is
/// `j + e·(τ^{-i} − 1) mod r`: one linear congruence per prime. A zero
/// coefficient (the rotation part of `g` acts trivially on `C_r`) forces
/// `j ≡ 0 (mod r)` outright; for tabulated shapes that always holds, since
/// point-group complements over a fixed kernel are conjugate by kernel
/// elements.
fn solve_conj(spec: &GroupSpec, constraints: &[(GroupElement, u64)]) -> Option<u64> {
    let mut e = 0u64;
    let mut modulus = 1u64;
    for r in spec.prime_factors_m() {
        let related: Vec<GroupElement> = constraints
            .iter()
            .filter(|&&(_, rr)| rr == r)
            .map(|&(g, _)| g)
            .collect();
        let mut best = if related.is_empty() { Some(0) } else { None };
        if best.is_none() {
            'cands: for cand in 0..r {
                for &g in &related {
                    let coeff = (spec.tau_pow_neg(g.i) % r + r - 1) % r;
                    if (g.j % r + cand * coeff) % r != 0 {
                        continue 'cands;
                    }
                }
                best = Some(cand);
                break;
            }
        }
        let er = best?;
        e = crt2(e, modulus, er, r);
        modulus *= r;
    }
    for &(g, r) in constraints {
        if part(conj_by(spec, e, g), r) != 0 {
            return None;
        }
    }
    Some(e)
}

fn cand(kernel: u64, word: WalkWord, note: &str) -> QuotientCandidate {
    QuotientCandidate {
        kernel,
        word,
        note: note.to_string(),
    }
}

fn dead_note(family: CriterionFamily, item: u8) -> String {
    format!(
        "two-generator generation test ({} family), item {}",
        family.label(),
        item
    )
}

fn direct_note() -> String {
    "direct subgroup computation in the tabulated analysis".to_string()
}

// ---------------------------------------------------------------------------
// shared pattern machinery for rotation part C6 over a two-prime kernel

/// A slot-shape over `C6 ⋉ (C_p × C_q)`: which of the order-2 / order-3
/// rotation components each of the first two slots carries. After
/// conjugation, slot `a` is normal-part free, slot `b` keeps exactly a
/// `q`-component, and slot `c` must carry the `p`-component.
#[derive(Debug, Clone, Copy)]
struct PatternPq {
    a_two: bool,
    a_three: bool,
    b_two: bool,
    b_three: bool,
    /// Require the order-3 rotation components of `a` and `b` to agree.
    b_match_a3: bool,
}

/// Measured parameters of the third slot relative to the arranged pair:
/// `i` its order-2 rotation component, `j` its order-3 rotation component
/// relative to the pair's, `k` its `q`-component relative to `b`'s.
#[derive(Debug, Clone, Copy)]
struct Meas {
    i: u64,
    j: u64,
    k: u64,
}

fn match_pattern_pq(
    env: &MatchEnv<'_>,
    p: u64,
    q: u64,
    perm: &[usize; 3],
    mask: &[bool; 3],
    pat: &PatternPq,
) -> Option<(Frame, Meas)> {
    let spec = &env.pres.spec;
    let arr = arranged(env, perm, mask);
    let (a, b, c) = (arr[0], arr[1], arr[2]);
    if ((a.i % 2 == 1) != pat.a_two) || ((a.i % 3 != 0) != pat.a_three) {
        return None;
    }
    if ((b.i % 2 == 1) != pat.b_two) || ((b.i % 3 != 0) != pat.b_three) {
        return None;
    }
    if pat.b_match_a3 && a.i % 3 != b.i % 3 {
        return None;
    }
    let e = solve_conj(spec, &[(a, p), (a, q), (b, p)])?;
    let (ca, cb, cc) = (conj_by(spec, e, a), conj_by(spec, e, b), conj_by(spec, e, c));
    if part(ca, p) != 0 || part(ca, q) != 0 || part(cb, p) != 0 {
        return None;
    }
    if part(cb, q) == 0 {
        // the pair must reach the q-component through b
        return None;
    }
    if part(cc, p) == 0 {
        // only c can supply the p-component; without it S cannot generate
        return None;
    }
    let unit3 = if a.i % 3 != 0 { a.i % 3 } else { b.i % 3 };
    let meas = Meas {
        i: c.i % 2,
        j: unit_div(c.i % 3, unit3, 3)?,
        k: unit_div(part(cc, q), part(cb, q), q)?,
    };
    let frame = Frame {
        perm: perm.to_vec(),
        invert: mask.to_vec(),
        conj: e,
        labels: vec![ca, cb, cc],
    };
    Some((frame, meas))
}

type MeasPred = fn(&Meas) -> bool;
type CandBuilder = fn(u64, u64) -> Vec<QuotientCandidate>;

enum PqCellKind {
    Live(CandBuilder),
    Dead {
        pair: (usize, usize),
        family: CriterionFamily,
        item: u8,
    },
    DeadDirect {
        pair: (usize, usize),
    },
}

struct PqCell {
    case: u8,
    sub: u8,
    pat: PatternPq,
    pred: MeasPred,
    kind: PqCellKind,
}

/// Scan cells over role assignments, slot permutations and inversion masks.
/// All live cells are scanned before any dead cell, in table order; within a
/// cell the scan is role-major, then permutation, then mask. First match
/// wins, which makes the whole construction deterministic.
fn scan_pq_cells(
    env: &MatchEnv<'_>,
    family: Family,
    roles: &[(u64, u64)],
    cells: &[PqCell],
) -> Result<CaseMatch, String> {
    let mut attempts = 0usize;
    for live_pass in [true, false] {
        for cell in cells {
            let is_live = matches!(cell.kind, PqCellKind::Live(_));
            if is_live != live_pass {
                continue;
            }
            for &(p, q) in roles {
                for perm in perms3() {
                    for mask in masks3() {
                        attempts += 1;
                        let Some((frame, meas)) = match_pattern_pq(env, p, q, perm, mask, &cell.pat)
                        else {
                            continue;
                        };
                        if !(cell.pred)(&meas) {
                            continue;
                        }
                        let tag = LeafTag {
                            family,
                            case: cell.case,
                            sub: cell.sub,
                        };
                        let log = vec![
                            format!("matched case {tag}"),
                            format!("roles: p={p}, q={q}"),
                            frame.describe(),
                            format!("measurements: i={}, j={}, k={}", meas.i, meas.j, meas.k),
                        ];
                        let plan = match &cell.kind {
                            PqCellKind::Live(build) => Plan::Templates {
                                candidates: build(p, q),
                                edge_flip: None,
                            },
                            PqCellKind::Dead { pair, family, item } => Plan::Dead {
                                pair: *pair,
                                note: dead_note(*family, *item),
                            },
                            PqCellKind::DeadDirect { pair } => Plan::Dead {
                                pair: *pair,
                                note: direct_note(),
                            },
                        };
                        return Ok(CaseMatch {
                            tag,
                            frame,
                            plan,
                            log,
                        });
                    }
                }
            }
        }
    }
    Err(format!(
        "no tabulated {family} configuration matched ({attempts} arrangements tried)"
    ))
}

// Slot-shape shorthands.
const fn pat(a_two: bool, a_three: bool, b_two: bool, b_three: bool, b_match_a3: bool) -> PatternPq {
    PatternPq {
        a_two,
        a_three,
        b_two,
        b_three,
        b_match_a3,
    }
}

// ---------------------------------------------------------------------------
// family II.A.a.i — one kernel prime centralized by the order-3 rotations

fn cells_iiaai() -> Vec<PqCell> {
    use CriterionFamily::CentralizerQ as F;
    use PqCellKind::*;
    let p1 = pat(true, false, false, true, false);
    let p2 = pat(true, false, true, true, false);
    let p4 = pat(true, true, false, true, true);
    let p5 = pat(true, true, true, true, true);
    vec![
        PqCell {
            case: 1,
            sub: 0,
            pat: p1,
            pred: |m| m.i == 0 && m.j == 1,
            kind: Live(|p, q| {
                vec![
                    cand(p * q, tpl::c6_w_abba_c(), "tabulated cycle"),
                    cand(p * q, tpl::c6_w_abba_cc(), "tabulated cycle, doubled third slot"),
                ]
            }),
        },
        PqCell {
            case: 2,
            sub: 1,
            pat: p2,
            pred: |m| m.i == 0 && m.j == 1 && m.k == 0,
            kind: Live(|p, q| {
                vec![
                    cand(
                        p * q,
                        tpl::invert_slot(&tpl::c6_w_bbcb(), 2),
                        "tabulated cycle, third slot inverted",
                    ),
                    cand(p * q, tpl::c6_w_bbcb(), "tabulated cycle"),
                ]
            }),
        },
        PqCell {
            case: 2,
            sub: 2,
            pat: p2,
            pred: |m| m.j == 0 && m.i != 0 && m.k == 1,
            kind: Live(|p, q| vec![cand(p * q, tpl::c6_w_bbc_bb(), "tabulated cycle")]),
        },
        PqCell {
            case: 2,
            sub: 3,
            pat: p2,
            pred: |m| m.i != 0 && m.j == 1 && m.k == 1,
            kind: Live(|p, q| vec![cand(p * q, tpl::c6_w_cabab(), "tabulated cycle")]),
        },
        PqCell {
            case: 4,
            sub: 0,
            pat: p4,
            pred: |m| m.i == 0 && m.j == 1 && m.k == 0,
            kind: Live(|p, q| vec![cand(p * q, tpl::c6_w_cba(), "tabulated cycle")]),
        },
        PqCell {
            case: 5,
            sub: 0,
            pat: p5,
            pred: |m| m.i == 0 && m.j == 1 && m.k == 0,
            kind: Live(|p, q| vec![cand(p * q, tpl::c6_w_acc(), "tabulated cycle")]),
        },
        // dead regions: each implies the flagged pair already generates
        PqCell {
            case: 1,
            sub: 0,
            pat: p1,
            pred: |m| m.i != 0,
            kind: Dead { pair: (1, 2), family: F, item: 1 },
        },
        PqCell {
            case: 2,
            sub: 0,
            pat: p2,
            pred: |m| m.i == 0 && m.k != 0,
            kind: Dead { pair: (1, 2), family: F, item: 3 },
        },
        PqCell {
            case: 2,
            sub: 0,
            pat: p2,
            pred: |m| m.j == 0 && m.k != 1,
            kind: Dead { pair: (1, 2), family: F, item: 4 },
        },
        PqCell {
            case: 2,
            sub: 0,
            pat: p2,
            pred: |m| m.i != 0 && m.j != 0 && m.k != 1,
            kind: Dead { pair: (1, 2), family: F, item: 4 },
        },
        PqCell {
            case: 4,
            sub: 0,
            pat: p4,
            pred: |m| m.i != 0,
            kind: Dead { pair: (1, 2), family: F, item: 1 },
        },
        PqCell {
            case: 4,
            sub: 0,
            pat: p4,
            pred: |m| m.i == 0 && m.k != 0,
            kind: Dead { pair: (0, 2), family: F, item: 2 },
        },
        PqCell {
            case: 5,
            sub: 0,
            pat: p5,
            pred: |m| m.i == 0 && m.k != 0,
            kind: Dead { pair: (1, 2), family: F, item: 3 },
        },
        PqCell {
            case: 5,
            sub: 0,
            pat: p5,
            pred: |m| m.i != 0 && m.k != 1,
            kind: Dead { pair: (1, 2), family: F, item: 4 },
        },
        PqCell {
            case: 5,
            sub: 0,
            pat: p5,
            pred: |m| m.i != 0 && m.k == 1,
            kind: DeadDirect { pair: (0, 2) },
        },
    ]
}

// ---------------------------------------------------------------------------
// family II.A.b.i — order-2 rotations centralize the whole derived subgroup

fn cells_iiabi() -> Vec<PqCell> {
    use CriterionFamily::CentralizerTrivial as F;
    use PqCellKind::*;
    let c1 = pat(false, true, true, false, false);
    let c2 = pat(false, true, true, true, true);
    let c4 = pat(true, true, true, false, false);
    let c5 = pat(true, true, true, true, true);
    vec![
        PqCell {
            case: 1,
            sub: 1,
            pat: c1,
            pred: |m| m.i == 0 && m.j == 1,
            kind: Live(|p, q| {
                vec![
                    cand(p * q, tpl::c6_w_cab(), "tabulated cycle"),
                    cand(p * q, tpl::c6_w_ccb(), "tabulated cycle, doubled third slot"),
                ]
            }),
        },
        PqCell {
            case: 1,
            sub: 2,
            pat: c1,
            pred: |m| m.j == 0 && m.i != 0 && m.k == 0,
            kind: Live(|p, q| vec![cand(p * q, tpl::c6_w_ci_aab(), "tabulated cycle")]),
        },
        PqCell {
            case: 1,
            sub: 3,
            pat: c1,
            pred: |m| m.i != 0 && m.j == 1 && m.k == 0,
            kind: Live(|p, q| vec![cand(p * q, tpl::c6_w_cbac(), "tabulated cycle")]),
        },
        PqCell {
            case: 2,
            sub: 1,
            pat: c2,
            pred: |m| m.i == 0 && m.j == 1 && m.k == 1,
            kind: Live(|p, q| vec![cand(p * q, tpl::c6_w_cbaab(), "tabulated cycle")]),
        },
        PqCell {
            case: 2,
            sub: 2,
            pat: c2,
            pred: |m| m.j == 0 && m.i != 0 && m.k == 0,
            kind: Live(|p, q| vec![cand(p * q, tpl::c6_w_cabb(), "tabulated cycle")]),
        },
        PqCell {
            case: 4,
            sub: 1,
            pat: c4,
            pred: |m| m.i == 0 && m.j == 1 && m.k == 0,
            kind: Live(|p, q| vec![cand(p * q, tpl::c6_w_aabc(), "tabulated cycle")]),
        },
        PqCell {
            case: 4,
            sub: 2,
            pat: c4,
            pred: |m| m.j == 0 && m.i != 0 && m.k == 0,
            kind: Live(|p, q| vec![cand(p * q, tpl::c6_w_ababac(), "tabulated cycle")]),
        },
        PqCell {
            case: 4,
            sub: 3,
            pat: c4,
            pred: |m| m.i != 0 && m.j == 1 && m.k == 0,
            kind: Live(|p, q| vec![cand(p * q, tpl::c6_w_acb(), "tabulated cycle")]),
        },
        // dead regions
        PqCell {
            case: 1,
            sub: 0,
            pat: c1,
            pred: |m| m.i != 0 && m.k != 0,
            kind: Dead { pair: (0, 2), family: F, item: 3 },
        },
        PqCell {
            case: 2,
            sub: 0,
            pat: c2,
            pred: |m| m.i != 0 && m.k != 0,
            kind: Dead { pair: (0, 2), family: F, item: 3 },
        },
        PqCell {
            case: 2,
            sub: 0,
            pat: c2,
            pred: |m| m.i != 0 && m.k == 0 && m.j != 0,
            kind: Dead { pair: (1, 2), family: F, item: 4 },
        },
        PqCell {
            case: 2,
            sub: 0,
            pat: c2,
            pred: |m| m.i == 0 && m.k != 1,
            kind: DeadDirect { pair: (1, 2) },
        },
        PqCell {
            case: 4,
            sub: 0,
            pat: c4,
            pred: |m| m.k != 0,
            kind: Dead { pair: (0, 2), family: F, item: 1 },
        },
        PqCell {
            case: 5,
            sub: 0,
            pat: c5,
            pred: |m| m.k != 0,
            kind: Dead { pair: (0, 2), family: F, item: 1 },
        },
        PqCell {
            case: 5,
            sub: 0,
            pat: c5,
            pred: |m| m.k == 0 && m.j != 0,
            kind: Dead { pair: (1, 2), family: F, item: 4 },
        },
        // the remaining corner of shape c5 (j = 0, k = 0) re-enters the
        // scan as shape c4 under the swapped roles and is caught live there
    ]
}

// ---------------------------------------------------------------------------
// family II.A.b.ii — order-2 rotations centralize exactly one kernel prime

fn cells_iiabii() -> Vec<PqCell> {
    use CriterionFamily::CentralizerTrivial as F;
    use PqCellKind::*;
    let c1 = pat(true, true, true, true, true);
    let c2 = pat(true, true, true, false, false);
    let c3 = pat(true, true, false, true, true);
    let c4 = pat(false, true, true, false, false);
    vec![
        PqCell {
            case: 1,
            sub: 1,
            pat: c1,
            pred: |m| m.i != 0 && m.j == 0 && m.k == 0,
            kind: Live(|p, q| vec![cand(p * q, tpl::c6_w_abc(), "tabulated cycle")]),
        },
        PqCell {
            case: 2,
            sub: 1,
            pat: c2,
            pred: |m| m.i == 0 && m.j == 1 && m.k == 0,
            kind: Live(|p, q| vec![cand(p * q, tpl::c6_w_aabc(), "tabulated cycle")]),
        },
        PqCell {
            case: 2,
            sub: 2,
            pat: c2,
            pred: |m| m.j == 0 && m.i != 0 && m.k == 0,
            kind: Live(|p, q| vec![cand(p * q, tpl::c6_w_ababac(), "tabulated cycle")]),
        },
        PqCell {
            case: 2,
            sub: 3,
            pat: c2,
            pred: |m| m.i != 0 && m.j == 1 && m.k == 0,
            kind: Live(|p, q| vec![cand(p * q, tpl::c6_w_acb(), "tabulated cycle")]),
        },
        PqCell {
            case: 3,
            sub: 1,
            pat: c3,
            pred: |m| m.i == 0 && m.j == 1 && m.k == 0,
            kind: Live(|p, q| vec![cand(p * q, tpl::c6_w_cba(), "tabulated cycle")]),
        },
        PqCell {
            case: 3,
            sub: 2,
            pat: c3,
            pred: |m| m.j == 0 && m.i != 0 && m.k == 0,
            kind: Live(|p, q| vec![cand(p * q, tpl::c6_w_acbab(), "tabulated cycle")]),
        },
        PqCell {
            case: 4,
            sub: 1,
            pat: c4,
            pred: |m| m.i == 0 && m.j == 1,
            kind: Live(|p, q| {
                vec![
                    cand(p * q, tpl::c6_w_cab(), "tabulated cycle"),
                    cand(p * q, tpl::c6_w_ccb(), "tabulated cycle, doubled third slot"),
                ]
            }),
        },
        PqCell {
            case: 4,
            sub: 2,
            pat: c4,
            pred: |m| m.j == 0 && m.i != 0 && m.k == 0,
            kind: Live(|p, q| vec![cand(p * q, tpl::c6_w_ci_aab(), "tabulated cycle")]),
        },
        PqCell {
            case: 4,
            sub: 3,
            pat: c4,
            pred: |m| m.i != 0 && m.j == 1 && m.k == 0,
            kind: Live(|p, q| vec![cand(p * q, tpl::c6_w_cbac(), "tabulated cycle")]),
        },
        // dead regions
        PqCell {
            case: 1,
            sub: 0,
            pat: c1,
            pred: |m| m.k != 0,
            kind: Dead { pair: (0, 2), family: F, item: 1 },
        },
        PqCell {
            case: 1,
            sub: 0,
            pat: c1,
            pred: |m| m.k == 0 && m.j != 0,
            kind: Dead { pair: (1, 2), family: F, item: 4 },
        },
        PqCell {
            case: 2,
            sub: 0,
            pat: c2,
            pred: |m| m.k != 0,
            kind: Dead { pair: (0, 2), family: F, item: 1 },
        },
        PqCell {
            case: 3,
            sub: 0,
            pat: c3,
            pred: |m| m.k != 0,
            kind: Dead { pair: (0, 2), family: F, item: 1 },
        },
        PqCell {
            case: 3,
            sub: 0,
            pat: c3,
            pred: |m| m.i != 0 && m.j != 0 && m.k == 0,
            kind: Dead { pair: (1, 2), family: F, item: 2 },
        },
        PqCell {
            case: 4,
            sub: 0,
            pat: c4,
            pred: |m| m.j == 0 && m.k != 0,
            kind: Dead { pair: (0, 2), family: F, item: 3 },
        },
        PqCell {
            case: 4,
            sub: 0,
            pat: c4,
            pred: |m| m.i != 0 && m.j != 0 && m.k != 0,
            kind: Dead { pair: (0, 2), family: F, item: 3 },
        },
    ]
}

// ---------------------------------------------------------------------------
// family II.A.b.iii — order-2 rotations centralize no kernel prime

fn cells_iiabiii() -> Vec<PqCell> {
    use CriterionFamily::CentralizerTrivial as F;
    use PqCellKind::*;
    let c1 = pat(true, true, true, true, true);
    let c2 = pat(true, true, true, false, false);
    let c3 = pat(true, true, false, true, true);
    let c4 = pat(false, true, true, false, false);
    vec![
        PqCell {
            case: 2,
            sub: 1,
            pat: c2,
            pred: |m| m.j == 0 && m.i != 0 && m.k == 0,
            kind: Live(|p, q| vec![cand(p * q, tpl::c6_w_ababac(), "tabulated cycle")]),
        },
        PqCell {
            case: 3,
            sub: 1,
            pat: c3,
            pred: |m| m.i == 0 && m.j == 1 && m.k == 0,
            kind: Live(|p, q| vec![cand(p * q, tpl::c6_w_cba(), "tabulated cycle")]),
        },
        PqCell {
            case: 4,
            sub: 1,
            pat: c4,
            pred: |m| m.i == 0 && m.j == 1,
            kind: Live(|p, q| {
                vec![
                    cand(p * q, tpl::c6_w_ccib(), "tabulated cycle, doubled third slot inverted"),
                    cand(p * q, tpl::c6_w_ccb(), "tabulated cycle, doubled third slot"),
                ]
            }),
        },
        PqCell {
            case: 4,
            sub: 2,
            pat: c4,
            pred: |m| m.j == 0 && m.i != 0 && m.k == 0,
            kind: Live(|p, q| vec![cand(p * q, tpl::c6_w_aab_c(), "tabulated cycle")]),
        },
        // dead regions
        PqCell {
            case: 1,
            sub: 0,
            pat: c1,
            pred: |m| m.k != 0,
            kind: Dead { pair: (0, 2), family: F, item: 1 },
        },
        PqCell {
            case: 1,
            sub: 0,
            pat: c1,
            pred: |m| m.k == 0 && m.j != 0,
            kind: Dead { pair: (1, 2), family: F, item: 4 },
        },
        PqCell {
            case: 1,
            sub: 0,
            pat: c1,
            pred: |m| m.j == 0 && m.k == 0,
            kind: DeadDirect { pair: (1, 2) },
        },
        PqCell {
            case: 2,
            sub: 0,
            pat: c2,
            pred: |m| m.k != 0,
            kind: Dead { pair: (0, 2), family: F, item: 1 },
        },
        PqCell {
            case: 2,
            sub: 0,
            pat: c2,
            pred: |m| m.k == 0 && m.j != 0,
            kind: DeadDirect { pair: (1, 2) },
        },
        PqCell {
            case: 3,
            sub: 0,
            pat: c3,
            pred: |m| m.k != 0,
            kind: Dead { pair: (0, 2), family: F, item: 1 },
        },
        PqCell {
            case: 3,
            sub: 0,
            pat: c3,
            pred: |m| m.k == 0 && m.i != 0 && m.j != 0,
            kind: Dead { pair: (1, 2), family: F, item: 2 },
        },
        PqCell {
            case: 3,
            sub: 0,
            pat: c3,
            pred: |m| m.j == 0 && m.k == 0,
            kind: DeadDirect { pair: (1, 2) },
        },
        PqCell {
            case: 4,
            sub: 0,
            pat: c4,
            pred: |m| m.j == 0 && m.k != 0,
            kind: Dead { pair: (0, 2), family: F, item: 3 },
        },
        PqCell {
            case: 4,
            sub: 0,
            pat: c4,
            pred: |m| m.i != 0 && m.j != 0 && m.k != 0,
            kind: Dead { pair: (0, 2), family: F, item: 3 },
        },
        PqCell {
            case: 4,
            sub: 0,
            pat: c4,
            pred: |m| m.i != 0 && m.j != 0 && m.k == 0,
            kind: DeadDirect { pair: (1, 2) },
        },
    ]
}

// ---------------------------------------------------------------------------
// family I.A — two generators over a two-prime kernel

fn match_pair_pq(env: &MatchEnv<'_>, p: u64, q: u64) -> Result<CaseMatch, String> {
    let spec = &env.pres.spec;
    // kernel primes centralized by the order-3 rotations: when exactly one
    // exists, the doubled-sweep voltage can die there and the order-6q
    // quotient templates take over for that configuration
    let central3: Vec<u64> = [p, q]
        .into_iter()
        .filter(|&r| spec.tau_pow(2) % r == 1)
        .collect();
    struct PairCell {
        tag: (u8, u8),
        orders: (u64, u64),
        need_equal: bool,
    }
    let cells = [
        PairCell { tag: (1, 0), orders: (2, 3), need_equal: false },
        PairCell { tag: (2, 1), orders: (6, 2), need_equal: false },
        PairCell { tag: (2, 2), orders: (6, 3), need_equal: false },
        PairCell { tag: (2, 3), orders: (6, 6), need_equal: true },
    ];
    for cell in &cells {
        for perm in perms2() {
            for mask in masks2() {
                let arr = arranged(env, perm, mask);
                let (a, b) = (arr[0], arr[1]);
                if additive_order(a.i, 6) != cell.orders.0
                    || additive_order(b.i, 6) != cell.orders.1
                {
                    continue;
                }
                if cell.need_equal && a.i != b.i {
                    continue;
                }
                let candidates = match cell.tag {
                    (1, 0) | (2, 2) => vec![cand(
                        p * q,
                        tpl::c6_commutator_cycle(),
                        "commutator cycle over the six rotation classes",
                    )],
                    (2, 1) => {
                        let mut list = vec![cand(
                            p * q,
                            tpl::c6_double_sweep(),
                            "doubled sweep over the six rotation classes",
                        )];
                        if central3.len() == 1 {
                            let rq = central3[0];
                            let rp = if rq == p { q } else { p };
                            list.push(cand(
                                rp,
                                tpl::c6q_zigzag_block(rq),
                                "zigzag over the order-6q quotient",
                            ));
                            list.push(cand(
                                rp,
                                tpl::c6q_zigzag_block_alt(rq),
                                "zigzag over the order-6q quotient, first block reversed",
                            ));
                        }
                        list
                    }
                    (2, 3) => vec![cand(
                        p * q,
                        tpl::c6_rotation_sweep(),
                        "long sweep over the six rotation classes",
                    )],
                    _ => unreachable!(),
                };
                let tag = LeafTag {
                    family: Family::IA,
                    case: cell.tag.0,
                    sub: cell.tag.1,
                };
                let frame = Frame {
                    perm: perm.to_vec(),
                    invert: mask.to_vec(),
                    conj: 0,
                    labels: arr,
                };
                let log = vec![
                    format!("matched case {tag}"),
                    format!(
                        "rotation image orders: ({}, {})",
                        cell.orders.0, cell.orders.1
                    ),
                    frame.describe(),
                ];
                return Ok(CaseMatch {
                    tag,
                    frame,
                    plan: Plan::Templates {
                        candidates,
                        edge_flip: None,
                    },
                    log,
                });
            }
        }
    }
    Err("rotation images of the pair fit no tabulated order pattern".to_string())
}

// ---------------------------------------------------------------------------
// family I.B — two generators, kernel 3·P, rotation part C_{2Q}

fn match_pair_3p(env: &MatchEnv<'_>, big_p: u64, big_q: u64) -> Result<CaseMatch, String> {
    let spec = &env.pres.spec;
    let n = spec.n; // 2·Q
    let kernel = 3 * big_p;
    let unit = |x: u64| x % 2 == 1 && x % big_q != 0;

    // case 1: both rotation images generate the full rotation part
    for perm in perms2() {
        for mask in masks2() {
            let arr = arranged(env, perm, mask);
            let (a, b) = (arr[0], arr[1]);
            if !unit(a.i) || !unit(b.i) {
                continue;
            }
            let Some(m) = unit_div(b.i, a.i, n) else { continue };
            if m >= big_q {
                continue; // the complementary mask yields the mirrored ratio
            }
            let (sub, candidates) = if m == 1 {
                (1, vec![cand(kernel, tpl::c2q_full_sweep(big_q), "full rotation sweep")])
            } else if m == 3 {
                (2, vec![cand(kernel, tpl::c2q_cube_weave(big_q), "cube-ratio weave")])
            } else {
                (
                    3,
                    vec![cand(
                        kernel,
                        tpl::c2q_general_weave(m, big_q),
                        "general-ratio weave",
                    )],
                )
            };
            let tag = LeafTag { family: Family::IB, case: 1, sub };
            let frame = Frame {
                perm: perm.to_vec(),
                invert: mask.to_vec(),
                conj: 0,
                labels: arr,
            };
            let log = vec![
                format!("matched case {tag}"),
                format!("rotation ratio m={m} (mod {n})"),
                frame.describe(),
            ];
            return Ok(CaseMatch {
                tag,
                frame,
                plan: Plan::Templates { candidates, edge_flip: None },
                log,
            });
        }
    }

    // case 2: one image of even order, the other odd
    for perm in perms2() {
        for mask in masks2() {
            let arr = arranged(env, perm, mask);
            let (a, b) = (arr[0], arr[1]);
            if a.i % 2 != 0 || a.i == 0 || b.i % 2 != 1 {
                continue;
            }
            let mut candidates = vec![cand(
                kernel,
                tpl::c2q_order_q_commutator(big_q),
                "commutator cycle for an order-q rotation image",
            )];
            if big_q % 3 == 1 {
                candidates.push(cand(
                    big_p,
                    tpl::c6q_long_weave_one(big_q),
                    "long cycle over the order-6q quotient",
                ));
                candidates.push(cand(
                    big_p,
                    tpl::c6q_long_weave_two(big_q),
                    "long cycle over the order-6q quotient, second variant",
                ));
            }
            let edge_flip = (spec.element_order(b) == 2 * big_p).then_some(EdgeFlipSpec {
                kernel: big_p,
                slot: 1,
            });
            let tag = LeafTag { family: Family::IB, case: 2, sub: 0 };
            let frame = Frame {
                perm: perm.to_vec(),
                invert: mask.to_vec(),
                conj: 0,
                labels: arr,
            };
            let log = vec![
                format!("matched case {tag}"),
                format!(
                    "rotation images: even {} and odd {}{}",
                    a.i,
                    b.i,
                    if edge_flip.is_some() {
                        "; order-2P second label enables the edge-flip fallback"
                    } else {
                        ""
                    }
                ),
                frame.describe(),
            ];
            return Ok(CaseMatch {
                tag,
                frame,
                plan: Plan::Templates { candidates, edge_flip },
                log,
            });
        }
    }

    // case 3: a unit image paired with the unique order-2 image
    for perm in perms2() {
        for mask in masks2() {
            let arr = arranged(env, perm, mask);
            let (a, b) = (arr[0], arr[1]);
            if !unit(a.i) || b.i != big_q {
                continue;
            }
            let gamma = spec.multiply(spec.power(a, -(big_q as i64)), b);
            if part(gamma, 3) == 0 {
                // provably impossible for a generating pair of this shape
                debug_assert!(false, "involution residue lost its order-3 component");
                continue;
            }
            let candidates = vec![
                cand(
                    big_p,
                    tpl::c6q_involution_comb_one(big_q),
                    "comb over the order-6q quotient",
                ),
                cand(
                    big_p,
                    tpl::c6q_involution_comb_two(big_q),
                    "comb over the order-6q quotient, second variant",
                ),
            ];
            let tag = LeafTag { family: Family::IB, case: 3, sub: 0 };
            let frame = Frame {
                perm: perm.to_vec(),
                invert: mask.to_vec(),
                conj: 0,
                labels: arr,
            };
            let log = vec![
                format!("matched case {tag}"),
                format!("unit rotation image {} with involution image {}", a.i, b.i),
                frame.describe(),
            ];
            return Ok(CaseMatch {
                tag,
                frame,
                plan: Plan::Templates { candidates, edge_flip: None },
                log,
            });
        }
    }

    Err("rotation images of the pair fit no tabulated shape".to_string())
}

// ---------------------------------------------------------------------------
// family II.A.a.ii — trivial order-3 centralizer, minimal image modulo C_p

fn match_triple_minimal_image(
    env: &MatchEnv<'_>,
    p: u64,
    q: u64,
) -> Result<CaseMatch, String> {
    let spec = &env.pres.spec;
    let fixed_by_2 = |r: u64| spec.tau_pow(3) % r == 1 % r;
    let (fp, fq) = (fixed_by_2(p), fixed_by_2(q));
    let identity_frame = |labels: Vec<GroupElement>| Frame {
        perm: vec![0, 1, 2],
        invert: vec![false, false, false],
        conj: 0,
        labels,
    };

    match (fp, fq) {
        (true, true) => {
            // case 1: the involution slot is central; split off a 2-vertex path
            for s in 0..3 {
                let g = env.labels[s];
                if g.i != 3 || part(g, q) != 0 {
                    continue;
                }
                let (sub, plan, what) = if part(g, p) == 0 {
                    (1, Plan::PathProduct { apex_slot: s }, "direct-product split")
                } else {
                    (2, Plan::EdgeFlip { kernel: p, slot: s }, "edge-flip lift")
                };
                let tag = LeafTag { family: Family::IIAaII, case: 1, sub };
                let frame = identity_frame(env.labels.to_vec());
                let log = vec![
                    format!("matched case {tag}"),
                    format!("central involution at label #{s}; {what}"),
                ];
                return Ok(CaseMatch { tag, frame, plan, log });
            }
            Err("no label is a central involution with trivial q-component".to_string())
        }
        (false, true) | (true, false) => {
            // cases 2 and 3, mirror images. `fixed_r` is the prime the
            // order-2 rotations centralize: it survives into the comb's
            // quotient, while `free_r` becomes the comb kernel. The
            // edge-flip always runs over the minimal-image prime `p`.
            let (fixed_r, free_r, case) = if fq { (q, p, 2u8) } else { (p, q, 3u8) };
            for s in 0..3 {
                let g = env.labels[s];
                if g.i != 3 {
                    continue;
                }
                if case == 2 && part(g, fixed_r) != 0 {
                    continue; // this component is conjugation-invariant here
                }
                if part(g, p) != 0 {
                    let tag = LeafTag { family: Family::IIAaII, case, sub: 1 };
                    let frame = identity_frame(env.labels.to_vec());
                    let log = vec![
                        format!("matched case {tag}"),
                        format!("involution at label #{s} keeps its {p}-component; edge-flip lift"),
                    ];
                    return Ok(CaseMatch {
                        tag,
                        frame,
                        plan: Plan::EdgeFlip { kernel: p, slot: s },
                        log,
                    });
                }
                // comb shape: the involution contributes nothing modulo the
                // comb kernel, so the remaining pair must carry the quotient
                let others: Vec<usize> = (0..3).filter(|&t| t != s).collect();
                for &(bi, ci) in &[(others[0], others[1]), (others[1], others[0])] {
                    for &inv_b in &[false, true] {
                        for &inv_c in &[false, true] {
                            let lb = if inv_b {
                                spec.inverse(env.labels[bi])
                            } else {
                                env.labels[bi]
                            };
                            let lc = if inv_c {
                                spec.inverse(env.labels[ci])
                            } else {
                                env.labels[ci]
                            };
                            let mut constraints: Vec<(GroupElement, u64)> =
                                vec![(lb, fixed_r)];
                            if case == 3 {
                                constraints.push((env.labels[s], free_r));
                            }
                            let Some(e) = solve_conj(spec, &constraints) else {
                                continue;
                            };
                            let (cb, cc) = (conj_by(spec, e, lb), conj_by(spec, e, lc));
                            if part(cc, fixed_r) == 0 {
                                continue;
                            }
                            if cb.i % 3 != cc.i % 3 {
                                continue;
                            }
                            let candidates = vec![
                                cand(
                                    free_r,
                                    tpl::c6q_comb_cbb(fixed_r - 1),
                                    "comb over the order-6q quotient",
                                ),
                                cand(
                                    free_r,
                                    tpl::c6q_comb_bcb(fixed_r - 1),
                                    "comb over the order-6q quotient, interleaved variant",
                                ),
                            ];
                            let tag = LeafTag { family: Family::IIAaII, case, sub: 2 };
                            let frame = Frame {
                                perm: vec![s, bi, ci],
                                invert: vec![false, inv_b, inv_c],
                                conj: e,
                                labels: vec![conj_by(spec, e, env.labels[s]), cb, cc],
                            };
                            let log = vec![
                                format!("matched case {tag}"),
                                "plain involution; comb lift over the remaining pair".to_string(),
                                frame.describe(),
                            ];
                            return Ok(CaseMatch {
                                tag,
                                frame,
                                plan: Plan::Templates { candidates, edge_flip: None },
                                log,
                            });
                        }
                    }
                }
            }
            Err("no involution label fits the comb or edge-flip shapes".to_string())
        }
        (false, false) => {
            // case 4: no kernel prime is centralized by the order-2 rotations
            if env
                .labels
                .iter()
                .any(|g| !(2..=4).contains(&g.i))
            {
                return Err(
                    "a rotation image of order 6 appears where only orders 2 and 3 are possible"
                        .to_string(),
                );
            }
            let mut pending_dead: Option<CaseMatch> = None;
            for a_slot in 0..3 {
                let a = env.labels[a_slot];
                if a.i != 3 {
                    continue;
                }
                let Some(e) = solve_conj(spec, &[(a, p), (a, q)]) else {
                    continue;
                };
                let ca = conj_by(spec, e, a);
                let others: Vec<usize> = (0..3).filter(|&t| t != a_slot).collect();
                for &(bi, ci) in &[(others[0], others[1]), (others[1], others[0])] {
                    let (rb, rc) = (env.labels[bi], env.labels[ci]);
                    if rb.i % 3 == 0 {
                        continue; // slot b must carry the order-3 rotation image
                    }
                    if rc.i == 3 {
                        // second involution: commutator-style pair of cycles
                        let (cb, cc) = (conj_by(spec, e, rb), conj_by(spec, e, rc));
                        let gamma = spec.multiply(spec.inverse(ca), cc);
                        let degenerate = part(gamma, p) == 0 || part(gamma, q) == 0;
                        let commuting = spec.multiply(
                            spec.multiply(spec.multiply(spec.inverse(cb), ca), cb),
                            ca,
                        ) == spec.identity();
                        let tag = LeafTag { family: Family::IIAaII, case: 4, sub: 1 };
                        let frame = Frame {
                            perm: vec![a_slot, bi, ci],
                            invert: vec![false, false, false],
                            conj: e,
                            labels: vec![ca, cb, cc],
                        };
                        if degenerate || commuting {
                            let note = direct_note();
                            let m = CaseMatch {
                                tag: LeafTag { family: Family::IIAaII, case: 4, sub: 0 },
                                frame,
                                plan: Plan::Dead { pair: (1, 2), note },
                                log: vec![
                                    "two involutions with a degenerate or central quotient"
                                        .to_string(),
                                ],
                            };
                            pending_dead.get_or_insert(m);
                            continue;
                        }
                        let candidates = vec![
                            cand(p * q, tpl::c6_w_inv_c_first(), "tabulated cycle"),
                            cand(
                                p * q,
                                tpl::c6_w_inv_c_first_alt(),
                                "tabulated cycle, reversed middle",
                            ),
                        ];
                        let log = vec![
                            format!("matched case {tag}"),
                            "two involution slots with independent kernel components".to_string(),
                            frame.describe(),
                        ];
                        return Ok(CaseMatch {
                            tag,
                            frame,
                            plan: Plan::Templates { candidates, edge_flip: None },
                            log,
                        });
                    }
                    // order-3 second slot: orient it to match slot b
                    for &inv_b in &[false, true] {
                        for &inv_c in &[false, true] {
                            let lb = if inv_b { spec.inverse(rb) } else { rb };
                            let lc = if inv_c { spec.inverse(rc) } else { rc };
                            if lb.i % 3 == 0 || lb.i != lc.i {
                                continue;
                            }
                            let (cb, cc) = (conj_by(spec, e, lb), conj_by(spec, e, lc));
                            let gamma = spec.multiply(spec.inverse(cb), cc);
                            let degenerate = part(gamma, p) == 0 || part(gamma, q) == 0;
                            let commuting =
                                spec.multiply(cb, cc) == spec.multiply(cc, cb);
                            let frame = Frame {
                                perm: vec![a_slot, bi, ci],
                                invert: vec![false, inv_b, inv_c],
                                conj: e,
                                labels: vec![ca, cb, cc],
                            };
                            if degenerate || commuting {
                                let m = CaseMatch {
                                    tag: LeafTag {
                                        family: Family::IIAaII,
                                        case: 4,
                                        sub: 0,
                                    },
                                    frame,
                                    plan: Plan::Dead {
                                        pair: (0, 2),
                                        note: direct_note(),
                                    },
                                    log: vec![
                                        "matching order-3 slots with a degenerate or commuting difference"
                                            .to_string(),
                                    ],
                                };
                                pending_dead.get_or_insert(m);
                                continue;
                            }
                            let tag = LeafTag { family: Family::IIAaII, case: 4, sub: 2 };
                            let candidates = vec![
                                cand(p * q, tpl::c6_w_ord3_c_first(), "tabulated cycle"),
                                cand(
                                    p * q,
                                    tpl::c6_w_ord3_c_second(),
                                    "tabulated cycle, companion variant",
                                ),
                            ];
                            let log = vec![
                                format!("matched case {tag}"),
                                "matching order-3 rotation slots".to_string(),
                                frame.describe(),
                            ];
                            return Ok(CaseMatch {
                                tag,
                                frame,
                                plan: Plan::Templates { candidates, edge_flip: None },
                                log,
                            });
                        }
                    }
                }
            }
            pending_dead.ok_or_else(|| {
                "no involution label admits a tabulated pairing".to_string()
            })
        }
    }
}

// ---------------------------------------------------------------------------
// family II.B — three generators, kernel 3·P, rotation part C_{2q}

#[derive(Debug, Clone, Copy)]
struct Meas3 {
    i: u64,
    j: u64,
    k: u64,
    m: u64,
}

fn match_pattern_3p(
    env: &MatchEnv<'_>,
    big_p: u64,
    q: u64,
    case: u8,
    perm: &[usize; 3],
    mask: &[bool; 3],
) -> Option<(Frame, Meas3)> {
    let spec = &env.pres.spec;
    let n = spec.n; // 2·q
    let arr = arranged(env, perm, mask);
    let (a, b, c) = (arr[0], arr[1], arr[2]);
    let shape_ok = match case {
        1 => a.i % 2 == 1 && a.i % q != 0 && b.i % 2 == 1 && b.i % q != 0,
        2 => a.i % 2 == 1 && a.i % q != 0 && b.i == q,
        3 => a.i % 2 == 1 && a.i % q != 0 && b.i % 2 == 0 && b.i != 0 && b.i % q != 0,
        4 => a.i == q && b.i % 2 == 0 && b.i != 0 && b.i % q != 0,
        _ => false,
    };
    if !shape_ok {
        return None;
    }
    let e = solve_conj(spec, &[(a, 3), (a, big_p), (b, big_p)])?;
    let (ca, cb, cc) = (conj_by(spec, e, a), conj_by(spec, e, b), conj_by(spec, e, c));
    if part(ca, 3) != 0 || part(ca, big_p) != 0 || part(cb, big_p) != 0 {
        return None;
    }
    if part(cb, 3) == 0 {
        return None;
    }
    if part(cc, big_p) == 0 {
        return None;
    }
    let unit_q = if case == 4 { b.i % q } else { a.i % q };
    let m = match case {
        1 | 3 => unit_div(b.i, a.i, n)?,
        _ => 0,
    };
    let meas = Meas3 {
        i: c.i % 2,
        j: unit_div(c.i % q, unit_q, q)?,
        k: unit_div(part(cc, 3), part(cb, 3), 3)?,
        m,
    };
    let frame = Frame {
        perm: perm.to_vec(),
        invert: mask.to_vec(),
        conj: e,
        labels: vec![ca, cb, cc],
    };
    Some((frame, meas))
}

fn match_triple_3p(env: &MatchEnv<'_>, big_p: u64, q: u64) -> Result<CaseMatch, String> {
    let kernel = 3 * big_p;
    type Pred3 = fn(&Meas3, u64) -> bool;
    type Build3 = fn(&Meas3, u64, u64) -> Vec<QuotientCandidate>;
    enum Kind3 {
        Live(Build3),
        Dead { pair: (usize, usize), item: u8 },
    }
    struct Cell3 {
        case: u8,
        sub: u8,
        pred: Pred3,
        kind: Kind3,
    }
    let cells = [
        Cell3 {
            case: 1,
            sub: 1,
            pred: |m, _| m.i == 0 && m.k == 0 && m.m == 1,
            kind: Kind3::Live(|_, kernel, q| {
                vec![cand(kernel, tpl::c2q_third_commutator(q), "third-slot commutator cycle")]
            }),
        },
        Cell3 {
            case: 1,
            sub: 2,
            pred: |m, q| m.i == 0 && m.k == 0 && m.m != 1 && m.m < q && m.j == 2,
            kind: Kind3::Live(|m, kernel, q| {
                vec![cand(kernel, tpl::c2q_split_sweep_odd(m.m, q), "split sweep, odd ratio")]
            }),
        },
        Cell3 {
            case: 1,
            sub: 3,
            pred: |m, q| {
                m.i == 0 && m.k == 0 && m.m != 1 && m.m < q && m.j % 2 == 0 && m.j >= 4
            },
            kind: Kind3::Live(|m, kernel, q| {
                vec![cand(kernel, tpl::c2q_double_detour(m.m, m.j, q), "double detour")]
            }),
        },
        Cell3 {
            case: 2,
            sub: 1,
            pred: |m, _| m.i == 0 && m.k == 0 && m.j == 1,
            kind: Kind3::Live(|_, kernel, q| {
                vec![cand(kernel, tpl::c2q_alternating_bc(q), "alternating two-slot sweep")]
            }),
        },
        Cell3 {
            case: 2,
            sub: 2,
            pred: |m, _| m.i == 0 && m.k == 0 && m.j % 2 == 1 && m.j != 1,
            kind: Kind3::Live(|m, kernel, q| {
                vec![cand(kernel, tpl::c2q_detour_weave(m.j, q), "detour weave")]
            }),
        },
        Cell3 {
            case: 2,
            sub: 3,
            pred: |m, _| m.j == 0 && m.i != 0 && m.k == 0,
            kind: Kind3::Live(|_, kernel, q| {
                vec![cand(kernel, tpl::c2q_central_sweep(q), "central third-slot sweep")]
            }),
        },
        Cell3 {
            case: 2,
            sub: 4,
            pred: |m, q| m.i != 0 && m.k == 0 && m.j == q - 1,
            kind: Kind3::Live(|_, kernel, q| {
                vec![cand(kernel, tpl::c2q_tail_zigzag(q), "tail zigzag")]
            }),
        },
        Cell3 {
            case: 2,
            sub: 5,
            pred: |m, q| {
                m.i != 0 && m.k == 0 && m.j % 2 == 0 && m.j != 0 && m.j != q - 1
            },
            kind: Kind3::Live(|m, kernel, q| {
                let mut list = Vec::new();
                if m.j % 3 != 2 {
                    list.push(cand(kernel, tpl::c2q_offset_zigzag(m.j, q), "offset zigzag"));
                }
                if m.j % 3 != 0 {
                    list.push(cand(
                        kernel,
                        tpl::c2q_offset_zigzag_step(m.j, q),
                        "offset zigzag, stepped tail",
                    ));
                }
                list
            }),
        },
        Cell3 {
            case: 3,
            sub: 1,
            pred: |m, q| m.i == 0 && m.k == 0 && m.m % q == m.j,
            kind: Kind3::Live(|_, kernel, q| {
                vec![cand(kernel, tpl::c2q_backward_ladder(q), "backward ladder")]
            }),
        },
        Cell3 {
            case: 3,
            sub: 2,
            pred: |m, q| m.i == 0 && m.k == 0 && m.m % q != m.j && m.j == 2,
            kind: Kind3::Live(|m, kernel, q| {
                vec![cand(kernel, tpl::c2q_split_sweep_even(m.m, q), "split sweep, even ratio")]
            }),
        },
        Cell3 {
            case: 3,
            sub: 3,
            pred: |m, q| {
                m.i == 0 && m.k == 0 && m.m % q != m.j && m.j % 2 == 0 && m.j >= 4
            },
            kind: Kind3::Live(|m, kernel, q| {
                vec![cand(kernel, tpl::c2q_double_detour(m.m, m.j, q), "double detour")]
            }),
        },
        Cell3 {
            case: 4,
            sub: 1,
            pred: |m, _| m.i == 0 && m.j % 2 == 0 && m.j != 0,
            kind: Kind3::Live(|m, kernel, q| {
                let (j, k) = (m.j as i64, m.k as i64);
                let mut list = Vec::new();
                if (k - j + 1).rem_euclid(3) != 0 {
                    list.push(cand(kernel, tpl::c2q_bridge_one(m.j, q), "bridge, first variant"));
                }
                if (k - 2 * j + 1).rem_euclid(3) != 0 {
                    list.push(cand(kernel, tpl::c2q_bridge_two(m.j, q), "bridge, second variant"));
                }
                if (q as i64 + j).rem_euclid(3) != 0 {
                    list.push(cand(kernel, tpl::c2q_bridge_three(m.j, q), "bridge, third variant"));
                }
                list
            }),
        },
        // dead regions
        Cell3 {
            case: 1,
            sub: 0,
            pred: |m, _| m.k != 0,
            kind: Kind3::Dead { pair: (0, 2), item: 1 },
        },
        Cell3 {
            case: 1,
            sub: 0,
            pred: |m, _| m.k == 0 && m.i != 0,
            kind: Kind3::Dead { pair: (1, 2), item: 3 },
        },
        Cell3 {
            case: 2,
            sub: 0,
            pred: |m, _| m.k != 0,
            kind: Kind3::Dead { pair: (0, 2), item: 1 },
        },
        Cell3 {
            case: 3,
            sub: 0,
            pred: |m, _| m.k != 0,
            kind: Kind3::Dead { pair: (0, 2), item: 1 },
        },
        Cell3 {
            case: 3,
            sub: 0,
            pred: |m, _| m.k == 0 && m.i != 0,
            kind: Kind3::Dead { pair: (1, 2), item: 3 },
        },
        Cell3 {
            case: 4,
            sub: 0,
            pred: |m, _| m.i != 0,
            kind: Kind3::Dead { pair: (1, 2), item: 2 },
        },
    ];

    let mut attempts = 0usize;
    for live_pass in [true, false] {
        for cell in &cells {
            let is_live = matches!(cell.kind, Kind3::Live(_));
            if is_live != live_pass {
                continue;
            }
            for perm in perms3() {
                for mask in masks3() {
                    attempts += 1;
                    let Some((frame, meas)) =
                        match_pattern_3p(env, big_p, q, cell.case, perm, mask)
                    else {
                        continue;
                    };
                    if !(cell.pred)(&meas, q) {
                        continue;
                    }
                    let candidates_or_dead = match &cell.kind {
                        Kind3::Live(build) => {
                            let list = build(&meas, kernel, q);
                            if list.is_empty() {
                                continue;
                            }
                            Ok(list)
                        }
                        Kind3::Dead { pair, item } => Err((*pair, *item)),
                    };
                    let tag = LeafTag {
                        family: Family::IIB,
                        case: cell.case,
                        sub: cell.sub,
                    };
                    let log = vec![
                        format!("matched case {tag}"),
                        frame.describe(),
                        format!(
                            "measurements: i={}, j={}, k={}, m={}",
                            meas.i, meas.j, meas.k, meas.m
                        ),
                    ];
                    let plan = match candidates_or_dead {
                        Ok(candidates) => Plan::Templates { candidates, edge_flip: None },
                        Err((pair, item)) => Plan::Dead {
                            pair,
                            note: dead_note(CriterionFamily::OddComplement, item),
                        },
                    };
                    return Ok(CaseMatch { tag, frame, plan, log });
                }
            }
        }
    }
    Err(format!(
        "no tabulated II.B configuration matched ({attempts} arrangements tried)"
    ))
}

// ---------------------------------------------------------------------------
// dispatcher

/// Match the labels of a leaf family against its tabulated cases.
/// `roles = (p, q)` carries the kernel-prime roles chosen by
/// classification; families marked for role scanning try both orders.
pub(crate) fn match_case(
    env: &MatchEnv<'_>,
    family: Family,
    roles: (u64, u64),
) -> Result<CaseMatch, String> {
    let swapped = (roles.1, roles.0);
    match family {
        Family::IA => match_pair_pq(env, roles.0, roles.1),
        Family::IB => match_pair_3p(env, roles.0, roles.1),
        Family::IIAaI => scan_pq_cells(env, family, &[roles], &cells_iiaai()),
        Family::IIAaII => match_triple_minimal_image(env, roles.0, roles.1),
        Family::IIAbI => scan_pq_cells(env, family, &[roles, swapped], &cells_iiabi()),
        Family::IIAbII => scan_pq_cells(env, family, &[roles], &cells_iiabii()),
        Family::IIAbIII => scan_pq_cells(env, family, &[roles, swapped], &cells_iiabiii()),
        Family::IIB => match_triple_3p(env, roles.0, roles.1),
        Family::III => Err("the four-generator product family is assembled structurally".into()),
    }
}
