//! Presentation normalization and subgroup re-presentation.
//!
//! A metacyclic presentation `(n, m, tau)` may park centrally-acted primes
//! inside the normal part. [`Presentation`] moves every prime on which the
//! action is trivial into the point part, producing an isomorphic spec whose
//! normal part is exactly the derived subgroup. All downstream structure
//! analysis runs on the normalized spec; because the rewrite is an
//! isomorphism applied to the generator *labels* only, walk words never
//! change shape and can be verified directly against the original instance.
//!
//! [`subgroup_presentation`] does the same job for a subgroup generated by a
//! subset of labels: it exhibits the subgroup as a standalone metacyclic
//! spec together with the images of the generating labels, so cycle searches
//! can run in the small group and the resulting words transfer back
//! verbatim.

use crate::arith::{mod_inv, mul_mod, prime_factors};
use crate::group::{GroupElement, GroupSpec};

/// Combine residues `x ≡ a (mod r)`, `x ≡ b (mod s)` for coprime `r, s`.
pub(crate) fn crt2(a: u64, r: u64, b: u64, s: u64) -> u64 {
    if r == 1 {
        return b % s.max(1);
    }
    if s == 1 {
        return a % r;
    }
    let inv = mod_inv(r % s, s).expect("crt moduli must be coprime");
    let a = a % r;
    let diff = (b % s + s - a % s) % s;
    let k = mul_mod(diff, inv, s);
    a + r * k
}

/// An isomorphism from a validated spec onto its normalized form, in which
/// the normal part carries only primes the action moves.
#[derive(Debug, Clone)]
pub(crate) struct Presentation {
    pub original: GroupSpec,
    pub spec: GroupSpec,
    /// Product of the normal-part primes that were centrally acted on and
    /// moved into the point part (`1` when nothing moved).
    pub lifted: u64,
}

impl Presentation {
    pub fn new(original: &GroupSpec) -> Presentation {
        let mut z = 1u64;
        for r in original.prime_factors_m() {
            if original.m > 1 && original.tau % r == 1 {
                z *= r;
            }
        }
        let m2 = original.m / z;
        let spec = GroupSpec {
            n: original.n * z,
            m: m2,
            tau: if m2 == 1 { 0 } else { original.tau % m2 },
        };
        debug_assert!(spec.validate().is_ok());
        debug_assert!(spec.is_hall_normalized());
        Presentation {
            original: *original,
            spec,
            lifted: z,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.lifted == 1
    }

    /// Map an element of the original group to normalized coordinates.
    pub fn forward(&self, g: GroupElement) -> GroupElement {
        if self.is_trivial() {
            return g;
        }
        let (n, m) = (self.original.n, self.original.m);
        let (z, m2) = (self.lifted, self.spec.m);
        // i' ≡ i (mod n) and m2·i' ≡ j (mod z); then j' recovers the rest.
        let target = mul_mod(g.j % z, mod_inv(m2 % z, z).expect("coprime"), z);
        let i2 = crt2(g.i, n, target, z);
        let rest = (g.j % m + m - mul_mod(m2 % m, i2 % m, m)) % m;
        debug_assert_eq!(rest % z, 0);
        let j2 = if m2 == 1 {
            0
        } else {
            mul_mod((rest / z) % m2, 1, m2)
        };
        GroupElement { i: i2, j: j2 }
    }

    /// Map normalized coordinates back to the original group.
    #[cfg_attr(not(test), allow(dead_code))]
    pub fn backward(&self, g: GroupElement) -> GroupElement {
        if self.is_trivial() {
            return g;
        }
        let (n, m) = (self.original.n, self.original.m);
        let (z, m2) = (self.lifted, self.spec.m);
        debug_assert!(g.i < self.spec.n && g.j < m2.max(1));
        let j = (mul_mod(m2 % m, g.i % m, m) + mul_mod(z % m, g.j % m, m)) % m;
        GroupElement { i: g.i % n, j }
    }
}

/// A subgroup of a metacyclic group, re-presented as a standalone spec.
#[derive(Debug, Clone)]
pub(crate) struct SubgroupPresentation {
    pub spec: GroupSpec,
    /// Images of the requested generators, in order.
    pub labels: Vec<GroupElement>,
}

/// Present `⟨gens⟩ ≤ G` as its own metacyclic spec. Returns `None` when no
/// clean point-part generator exists (cannot happen for square-free orders,
/// but kept total for safety).
pub(crate) fn subgroup_presentation(
    spec: &GroupSpec,
    gens: &[GroupElement],
) -> Option<SubgroupPresentation> {
    let elems = spec.closure(gens);
    let h = elems.len() as u64;
    let d = elems.iter().filter(|g| g.i == 0).count() as u64;
    let r = h / d;
    debug_assert_eq!(r * d, h);
    if r == 1 {
        // Pure rotation subgroup: cyclic of order d.
        let step = spec.m / d;
        let sub = GroupSpec {
            n: 1,
            m: d,
            tau: if d == 1 { 0 } else { 1 },
        };
        let labels = gens
            .iter()
            .map(|g| GroupElement {
                i: 0,
                j: g.j / step,
            })
            .collect();
        return Some(SubgroupPresentation { spec: sub, labels });
    }
    // Find an element of order r whose i-coordinate also has additive
    // order r; it generates a complement to the rotation intersection.
    let stride_n = spec.n / r;
    let base = elems.iter().copied().find(|&g| {
        g.i != 0 && g.i % stride_n == 0 && additive_order(g.i, spec.n) == r && spec.element_order(g) == r
    })?;
    let step_m = spec.m / d;
    let sigma = if d == 1 {
        0
    } else {
        spec.tau_pow(base.i) % d
    };
    let sub = GroupSpec {
        n: r,
        m: d,
        tau: sigma,
    };
    sub.validate().ok()?;
    let unit = mod_inv((base.i / stride_n) % r, r)?;
    let labels = gens
        .iter()
        .map(|&g| {
            let k = mul_mod((g.i / stride_n) % r, unit, r);
            let t = spec.multiply(spec.power(base, -(k as i64)), g);
            debug_assert_eq!(t.i, 0);
            debug_assert_eq!(t.j % step_m, 0);
            GroupElement {
                i: k,
                j: t.j / step_m,
            }
        })
        .collect();
    Some(SubgroupPresentation { spec: sub, labels })
}

fn gcd_u(a: u64, b: u64) -> u64 {
    crate::arith::gcd(a, b)
}

/// Additive order of `x` in `Z_n`.
pub(crate) fn additive_order(x: u64, n: u64) -> u64 {
    n / gcd_u(x, n)
}

/// Distinct primes of `x`, ascending (thin wrapper for call-site clarity).
pub(crate) fn primes_of(x: u64) -> Vec<u64> {
    prime_factors(x)
}
