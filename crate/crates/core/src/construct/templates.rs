//! Quotient-cycle word templates used by the case constructions.
//!
//! Every function here is a pure builder: it takes the numeric parameters of
//! a matched case (residue exponents, prime values) and returns a closed walk
//! word over *canonical slots* `0 = a`, `1 = b`, `2 = c`.  The caller maps
//! slots back to the input generator indices (permutation, inversion) before
//! any verification, so these builders never see group elements.
//!
//! Each word is written as a run list `(slot, signed exponent)`.  Zero runs
//! are dropped by `WalkWord::from_runs`, which keeps degenerate parameter
//! edges harmless: a candidate that collapses to the wrong length simply
//! fails the quotient-cycle check downstream and the next candidate is tried.

use crate::walks::WalkWord;

pub(crate) const A: usize = 0;
pub(crate) const B: usize = 1;
pub(crate) const C: usize = 2;

fn word(runs: &[(usize, i64)]) -> WalkWord {
    WalkWord::from_runs(runs)
}

/// Flip the sign of every run of one slot (replace a generator by its
/// inverse throughout the word).
pub(crate) fn invert_slot(w: &WalkWord, slot: usize) -> WalkWord {
    WalkWord::from_runs(
        &w.steps
            .iter()
            .map(|s| (s.gen, if s.gen == slot { -s.exp } else { s.exp }))
            .collect::<Vec<_>>(),
    )
}

/// Flip the sign of every run (traverse the same closed walk backwards in
/// each generator direction).
#[cfg_attr(not(test), allow(dead_code))]
pub(crate) fn invert_all(w: &WalkWord) -> WalkWord {
    WalkWord::from_runs(
        &w.steps
            .iter()
            .map(|s| (s.gen, -s.exp))
            .collect::<Vec<_>>(),
    )
}

// ---------------------------------------------------------------------------
// Two generators, derived subgroup of order p*q (quotient C6).
// ---------------------------------------------------------------------------

/// `(b^2, a, b^-2, a^-1)` — the commutator cycle for images of orders
/// {2,3} or {6,3} in `C6`.  Its voltage is the commutator `[b^2, a]`.
pub(crate) fn c6_commutator_cycle() -> WalkWord {
    word(&[(B, 2), (A, 1), (B, -2), (A, -1)])
}

/// `(a^2, b, a^-2, b^-1)` for image orders {6,2} in `C6`.
pub(crate) fn c6_double_sweep() -> WalkWord {
    word(&[(A, 2), (B, 1), (A, -2), (B, -1)])
}

/// `(a^5, b)` for image orders {6,6} with `b` oriented to match `a`.
pub(crate) fn c6_rotation_sweep() -> WalkWord {
    word(&[(A, 5), (B, 1)])
}

/// Image-order {6,2} fallback over the order-`6q` quotient when one prime
/// `q` of the derived subgroup is inverted by the full point group:
/// `((a^5, b, a^-5, b)^((q-3)/2), (a^5, b)^3)`.
pub(crate) fn c6q_zigzag_block(q: u64) -> WalkWord {
    let mut runs: Vec<(usize, i64)> = Vec::new();
    for _ in 0..(q - 3) / 2 {
        runs.extend_from_slice(&[(A, 5), (B, 1), (A, -5), (B, 1)]);
    }
    for _ in 0..3 {
        runs.extend_from_slice(&[(A, 5), (B, 1)]);
    }
    word(&runs)
}

/// Same as [`c6q_zigzag_block`] with the first block reversed:
/// `((a^-5, b, a^5, b), (a^5, b, a^-5, b)^((q-5)/2), (a^5, b)^3)`.
pub(crate) fn c6q_zigzag_block_alt(q: u64) -> WalkWord {
    let mut runs: Vec<(usize, i64)> = vec![(A, -5), (B, 1), (A, 5), (B, 1)];
    for _ in 0..(q - 5) / 2 {
        runs.extend_from_slice(&[(A, 5), (B, 1), (A, -5), (B, 1)]);
    }
    for _ in 0..3 {
        runs.extend_from_slice(&[(A, 5), (B, 1)]);
    }
    word(&runs)
}

// ---------------------------------------------------------------------------
// Two generators, derived subgroup of order 3p (quotient C_{2q}).
// ---------------------------------------------------------------------------

/// `(a^(2q-1), b)` when `b` maps to `a` in `C_{2q}`.
pub(crate) fn c2q_full_sweep(q: u64) -> WalkWord {
    word(&[(A, 2 * q as i64 - 1), (B, 1)])
}

/// Weave for `b = a^3` in `C_{2q}`:
/// `(b^2, a^-1, b^-1, a^-1, b^3, a^-2, b, a^(2q-11))`.
pub(crate) fn c2q_cube_weave(q: u64) -> WalkWord {
    word(&[
        (B, 2),
        (A, -1),
        (B, -1),
        (A, -1),
        (B, 3),
        (A, -2),
        (B, 1),
        (A, 2 * q as i64 - 11),
    ])
}

/// Weave for `b = a^m` in `C_{2q}`, `m` odd, `5 <= m <= q-2`:
/// `(b^-2, a^-2, b, a, b, a^-(m-2), b^-1, a^(m-4), b^-1, a^-(2q-2m-3))`.
pub(crate) fn c2q_general_weave(m: u64, q: u64) -> WalkWord {
    let m = m as i64;
    let q = q as i64;
    word(&[
        (B, -2),
        (A, -2),
        (B, 1),
        (A, 1),
        (B, 1),
        (A, -(m - 2)),
        (B, -1),
        (A, m - 4),
        (B, -1),
        (A, -(2 * q - 2 * m - 3)),
    ])
}

/// `(a^(q-1), b, a^-(q-1), b^-1)` when `a` has image order `q`; voltage is
/// the commutator `[a^(q-1), b]`.
pub(crate) fn c2q_order_q_commutator(q: u64) -> WalkWord {
    let q = q as i64;
    word(&[(A, q - 1), (B, 1), (A, -(q - 1)), (B, -1)])
}

/// Long cycle over the order-`6q` quotient, first variant, used when
/// `q ≡ 1 (mod 3)` forces a deeper fallback for the order-`q`-image case.
pub(crate) fn c6q_long_weave_one(q: u64) -> WalkWord {
    let q = q as i64;
    word(&[
        (A, q - 3),
        (B, -1),
        (A, -(q - 2)),
        (B, 1),
        (A, -1),
        (B, -1),
        (A, 1),
        (B, 1),
        (A, q - 2),
        (B, -1),
        (A, -(q - 3)),
        (B, 1),
        (A, q - 2),
        (B, -1),
        (A, 1),
        (B, 1),
        (A, -1),
        (B, -1),
        (A, -(q - 2)),
        (B, 1),
    ])
}

/// Long cycle over the order-`6q` quotient, second variant.
pub(crate) fn c6q_long_weave_two(q: u64) -> WalkWord {
    let q = q as i64;
    word(&[
        (A, q - 1),
        (B, -1),
        (A, -(q - 3)),
        (B, 1),
        (A, -1),
        (B, -1),
        (A, q - 2),
        (B, 1),
        (A, 1),
        (B, -1),
        (A, 2),
        (B, 1),
        (A, q - 4),
        (B, -1),
        (A, -(q - 5)),
        (B, 1),
        (A, q - 4),
        (B, -1),
        (A, 1),
        (B, 1),
        (A, 1),
        (B, -1),
        (A, -1),
        (B, 1),
    ])
}

/// Comb cycle over the order-`6q` quotient for an involution second
/// generator (`b = a^q γ`), first variant; `q >= 5` odd.
pub(crate) fn c6q_involution_comb_one(q: u64) -> WalkWord {
    let mut runs: Vec<(usize, i64)> = Vec::new();
    for _ in 0..(q - 5) / 2 {
        runs.extend_from_slice(&[
            (A, 1),
            (B, 1),
            (A, 1),
            (B, 1),
            (A, -1),
            (B, 1),
            (A, 1),
            (B, 1),
            (A, -1),
            (B, 1),
            (A, 1),
            (B, 1),
        ]);
    }
    runs.extend_from_slice(&[
        (A, 1),
        (B, 1),
        (A, 4),
        (B, 1),
        (A, -3),
        (B, 1),
        (A, -1),
        (B, 1),
        (A, 2),
        (B, 1),
        (A, 2),
        (B, 1),
        (A, -1),
        (B, 1),
        (A, -3),
        (B, 1),
        (A, 4),
        (B, 1),
    ]);
    word(&runs)
}

/// Comb cycle over the order-`6q` quotient for an involution second
/// generator, second variant.
pub(crate) fn c6q_involution_comb_two(q: u64) -> WalkWord {
    let mut runs: Vec<(usize, i64)> = Vec::new();
    for _ in 0..q - 5 {
        runs.extend_from_slice(&[(A, 1), (B, 1), (A, -1), (B, 1), (A, 1), (B, 1)]);
    }
    runs.extend_from_slice(&[
        (A, 3),
        (B, 1),
        (A, 2),
        (B, 1),
        (A, -1),
        (B, 1),
        (A, -3),
        (B, 1),
        (A, 3),
        (B, 1),
        (A, -3),
        (B, 1),
        (A, -1),
        (B, 1),
        (A, 2),
        (B, 1),
        (A, 3),
        (B, 1),
    ]);
    word(&runs)
}

// ---------------------------------------------------------------------------
// Three generators, derived subgroup of order p*q (quotient C6).
// All words below have expansion length 6.
// ---------------------------------------------------------------------------

/// `(a, b^2, a, b^-1, c^-1)`.
pub(crate) fn c6_w_abba_c() -> WalkWord {
    word(&[(A, 1), (B, 2), (A, 1), (B, -1), (C, -1)])
}

/// `(a, b^2, a, c^-2)`.
pub(crate) fn c6_w_abba_cc() -> WalkWord {
    word(&[(A, 1), (B, 2), (A, 1), (C, -2)])
}

/// `(b^2, c, b, c^-1, a)`.
pub(crate) fn c6_w_bbcb() -> WalkWord {
    word(&[(B, 2), (C, 1), (B, 1), (C, -1), (A, 1)])
}

/// `(b^2, c, b^-2, a)`.
pub(crate) fn c6_w_bbc_bb() -> WalkWord {
    word(&[(B, 2), (C, 1), (B, -2), (A, 1)])
}

/// `(c, a, b, a, b, a)`.
pub(crate) fn c6_w_cabab() -> WalkWord {
    word(&[(C, 1), (A, 1), (B, 1), (A, 1), (B, 1), (A, 1)])
}

/// `(c, b, a, b^-2, a^-1)`.
pub(crate) fn c6_w_cba() -> WalkWord {
    word(&[(C, 1), (B, 1), (A, 1), (B, -2), (A, -1)])
}

/// `(a, c^2, b^-1, c^-2)`.
pub(crate) fn c6_w_acc() -> WalkWord {
    word(&[(A, 1), (C, 2), (B, -1), (C, -2)])
}

/// `(c, a, b, a^-2, b)`.
pub(crate) fn c6_w_cab() -> WalkWord {
    word(&[(C, 1), (A, 1), (B, 1), (A, -2), (B, 1)])
}

/// `(c^2, b, a^-2, b)`.
pub(crate) fn c6_w_ccb() -> WalkWord {
    word(&[(C, 2), (B, 1), (A, -2), (B, 1)])
}

/// `(c^-1, a^2, b, a^-2)`.
pub(crate) fn c6_w_ci_aab() -> WalkWord {
    word(&[(C, -1), (A, 2), (B, 1), (A, -2)])
}

/// `(c, b, a, c, a^-1, c)`.
pub(crate) fn c6_w_cbac() -> WalkWord {
    word(&[(C, 1), (B, 1), (A, 1), (C, 1), (A, -1), (C, 1)])
}

/// `(c, b, a^2, b, a)`.
pub(crate) fn c6_w_cbaab() -> WalkWord {
    word(&[(C, 1), (B, 1), (A, 2), (B, 1), (A, 1)])
}

/// `(c, a, b, a^-1, b^2)`.
pub(crate) fn c6_w_cabb() -> WalkWord {
    word(&[(C, 1), (A, 1), (B, 1), (A, -1), (B, 2)])
}

/// `(a^2, b, c, a, c^-1)`.
pub(crate) fn c6_w_aabc() -> WalkWord {
    word(&[(A, 2), (B, 1), (C, 1), (A, 1), (C, -1)])
}

/// `(a, b, a, b, a, c)`.
pub(crate) fn c6_w_ababac() -> WalkWord {
    word(&[(A, 1), (B, 1), (A, 1), (B, 1), (A, 1), (C, 1)])
}

/// `(a, c, b, a^-2, b)`.
pub(crate) fn c6_w_acb() -> WalkWord {
    word(&[(A, 1), (C, 1), (B, 1), (A, -2), (B, 1)])
}

/// `(a, b, c, a^-2, c)`.
pub(crate) fn c6_w_abc() -> WalkWord {
    word(&[(A, 1), (B, 1), (C, 1), (A, -2), (C, 1)])
}

/// `(a, c, b, a, b^-1, a)`.
pub(crate) fn c6_w_acbab() -> WalkWord {
    word(&[(A, 1), (C, 1), (B, 1), (A, 1), (B, -1), (A, 1)])
}

/// `(c^-2, b, a^2, b)`.
pub(crate) fn c6_w_ccib() -> WalkWord {
    word(&[(C, -2), (B, 1), (A, 2), (B, 1)])
}

/// `(a^2, b, a^-2, c)`.
pub(crate) fn c6_w_aab_c() -> WalkWord {
    word(&[(A, 2), (B, 1), (A, -2), (C, 1)])
}

/// `(c^-1, b^-2, a, b^2)` for an involution third generator.
pub(crate) fn c6_w_inv_c_first() -> WalkWord {
    word(&[(C, -1), (B, -2), (A, 1), (B, 2)])
}

/// `(c^-1, b^2, a, b^-2)` — reversed middle variant of
/// [`c6_w_inv_c_first`].
pub(crate) fn c6_w_inv_c_first_alt() -> WalkWord {
    word(&[(C, -1), (B, 2), (A, 1), (B, -2)])
}

/// `(c^-1, b^-1, a^-1, b^2, a)` for an order-3 third generator.
pub(crate) fn c6_w_ord3_c_first() -> WalkWord {
    word(&[(C, -1), (B, -1), (A, -1), (B, 2), (A, 1)])
}

/// `(b, c, a, b^-2, a^-1)` — companion of [`c6_w_ord3_c_first`].
pub(crate) fn c6_w_ord3_c_second() -> WalkWord {
    word(&[(B, 1), (C, 1), (A, 1), (B, -2), (A, -1)])
}

// ---------------------------------------------------------------------------
// Three generators, trivial-centralizer split case: order-6q quotient combs
// around a central involution image.  `reps` is the number of leading
// repetitions (`q - 1` of the respective block).
// ---------------------------------------------------------------------------

/// `L = ((c, b^2)^(reps), c, b)`; the full cycle is `(L, a, L^-1, a)`.
pub(crate) fn c6q_comb_cbb(reps: u64) -> WalkWord {
    let mut runs: Vec<(usize, i64)> = Vec::new();
    for _ in 0..reps {
        runs.extend_from_slice(&[(C, 1), (B, 2)]);
    }
    runs.extend_from_slice(&[(C, 1), (B, 1)]);
    half_comb_to_cycle(&runs)
}

/// `L = ((b, c, b)^(reps), b, c)`; the full cycle is `(L, a, L^-1, a)`.
pub(crate) fn c6q_comb_bcb(reps: u64) -> WalkWord {
    let mut runs: Vec<(usize, i64)> = Vec::new();
    for _ in 0..reps {
        runs.extend_from_slice(&[(B, 1), (C, 1), (B, 1)]);
    }
    runs.extend_from_slice(&[(B, 1), (C, 1)]);
    half_comb_to_cycle(&runs)
}

/// Build `(L, a, L^-1, a)` from a half-walk run list `L`.
fn half_comb_to_cycle(half: &[(usize, i64)]) -> WalkWord {
    let l = word(half);
    let mut w = l.clone();
    w.push_run(A, 1);
    w.extend(&l.inverse());
    w.push_run(A, 1);
    w
}

// ---------------------------------------------------------------------------
// Three generators, derived subgroup of order 3p (quotient C_{2q}).
// All expansion lengths are 2q for in-range parameters; out-of-range
// degenerate parameters are filtered by the quotient-cycle check.
// ---------------------------------------------------------------------------

/// `(c^(q-1), b, c^-(q-1), a^-1)` — third-generator commutator cycle.
pub(crate) fn c2q_third_commutator(q: u64) -> WalkWord {
    let q = q as i64;
    word(&[(C, q - 1), (B, 1), (C, -(q - 1)), (A, -1)])
}

/// `(b, c^-((m-1)/2), a, c^((m-1)/2), a^(2q-m-1))` for odd `m`.
pub(crate) fn c2q_split_sweep_odd(m: u64, q: u64) -> WalkWord {
    let h = ((m - 1) / 2) as i64;
    word(&[
        (B, 1),
        (C, -h),
        (A, 1),
        (C, h),
        (A, (2 * q - m - 1) as i64),
    ])
}

/// `(b, c^-((m-2)/2), a^-1, c^(m/2), a^(2q-m-1))` for even `m`.
pub(crate) fn c2q_split_sweep_even(m: u64, q: u64) -> WalkWord {
    word(&[
        (B, 1),
        (C, -(((m - 2) / 2) as i64)),
        (A, -1),
        (C, (m / 2) as i64),
        (A, (2 * q - m - 1) as i64),
    ])
}

/// `(b, c, a, c^-1, b^-1, a^(m-2), c, a^-(j-3), c, a^(2q-m-j-2))`.
pub(crate) fn c2q_double_detour(m: u64, j: u64, q: u64) -> WalkWord {
    let m = m as i64;
    let j = j as i64;
    let q = q as i64;
    word(&[
        (B, 1),
        (C, 1),
        (A, 1),
        (C, -1),
        (B, -1),
        (A, m - 2),
        (C, 1),
        (A, -(j - 3)),
        (C, 1),
        (A, 2 * q - m - j - 2),
    ])
}

/// `(c^-1, b^-(q-2), a^-1, b^(q-1), a)`.
pub(crate) fn c2q_backward_ladder(q: u64) -> WalkWord {
    let q = q as i64;
    word(&[(C, -1), (B, -(q - 2)), (A, -1), (B, q - 1), (A, 1)])
}

/// `(c, a^-1, b, a^2, b, c^-1, a^(j-3), b, a^-(q-4), b, a^(q-j-2))` for odd
/// `j >= 3`.
pub(crate) fn c2q_detour_weave(j: u64, q: u64) -> WalkWord {
    let j = j as i64;
    let q = q as i64;
    word(&[
        (C, 1),
        (A, -1),
        (B, 1),
        (A, 2),
        (B, 1),
        (C, -1),
        (A, j - 3),
        (B, 1),
        (A, -(q - 4)),
        (B, 1),
        (A, q - j - 2),
    ])
}

/// `((b, c)^(q-1), b, a)`.
pub(crate) fn c2q_alternating_bc(q: u64) -> WalkWord {
    let mut runs: Vec<(usize, i64)> = Vec::new();
    for _ in 0..q - 1 {
        runs.extend_from_slice(&[(B, 1), (C, 1)]);
    }
    runs.extend_from_slice(&[(B, 1), (A, 1)]);
    word(&runs)
}

/// `(c, a^(q-1), b, a^-(q-1))`.
pub(crate) fn c2q_central_sweep(q: u64) -> WalkWord {
    let q = q as i64;
    word(&[(C, 1), (A, q - 1), (B, 1), (A, -(q - 1))])
}

/// `(c, b, (a^-1, b)^(q-1))`.
pub(crate) fn c2q_tail_zigzag(q: u64) -> WalkWord {
    let mut runs: Vec<(usize, i64)> = vec![(C, 1), (B, 1)];
    for _ in 0..q - 1 {
        runs.extend_from_slice(&[(A, -1), (B, 1)]);
    }
    word(&runs)
}

/// `(c, a^(q-j-1), b, a^-(q-j-1), (a^-1, b)^j)`.
pub(crate) fn c2q_offset_zigzag(j: u64, q: u64) -> WalkWord {
    let ji = j as i64;
    let q = q as i64;
    let mut runs: Vec<(usize, i64)> = vec![(C, 1), (A, q - ji - 1), (B, 1), (A, -(q - ji - 1))];
    for _ in 0..j {
        runs.extend_from_slice(&[(A, -1), (B, 1)]);
    }
    word(&runs)
}

/// `(c, a^(q-j-2), b, a^-(q-j-2), (a^-1, b)^(j-1), a^-2, b, a)`.
pub(crate) fn c2q_offset_zigzag_step(j: u64, q: u64) -> WalkWord {
    let ji = j as i64;
    let q = q as i64;
    let mut runs: Vec<(usize, i64)> = vec![(C, 1), (A, q - ji - 2), (B, 1), (A, -(q - ji - 2))];
    for _ in 0..j - 1 {
        runs.extend_from_slice(&[(A, -1), (B, 1)]);
    }
    runs.extend_from_slice(&[(A, -2), (B, 1), (A, 1)]);
    word(&runs)
}

/// `(c, b^(q-j-1), c, b^-(j-2), a, b^(q-1), a)`.
pub(crate) fn c2q_bridge_one(j: u64, q: u64) -> WalkWord {
    let j = j as i64;
    let q = q as i64;
    word(&[
        (C, 1),
        (B, q - j - 1),
        (C, 1),
        (B, -(j - 2)),
        (A, 1),
        (B, q - 1),
        (A, 1),
    ])
}

/// `(c, a, (b, a)^(q-j-1), b^j, a, b^-(j-1))`.
pub(crate) fn c2q_bridge_two(j: u64, q: u64) -> WalkWord {
    let ji = j as i64;
    let mut runs: Vec<(usize, i64)> = vec![(C, 1), (A, 1)];
    for _ in 0..q - j - 1 {
        runs.extend_from_slice(&[(B, 1), (A, 1)]);
    }
    runs.extend_from_slice(&[(B, ji), (A, 1), (B, -(ji - 1))]);
    word(&runs)
}

/// `(c, a, b^(q-j-1), a, b^-(q-j-2), c^-1, b^(j-2), a, b^-(j-1), a)`.
pub(crate) fn c2q_bridge_three(j: u64, q: u64) -> WalkWord {
    let j = j as i64;
    let q = q as i64;
    word(&[
        (C, 1),
        (A, 1),
        (B, q - j - 1),
        (A, 1),
        (B, -(q - j - 2)),
        (C, -1),
        (B, j - 2),
        (A, 1),
        (B, -(j - 1)),
        (A, 1),
    ])
}
