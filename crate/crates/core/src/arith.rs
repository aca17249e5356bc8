//! Modular arithmetic on `u64` with `u128` intermediates.
//!
//! Group orders in this crate stay far below 2^32, so widening every
//! product to `u128` rules out overflow without big-integer support.

/// Greatest common divisor; `gcd(0, b) = b`.
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// `(a * b) mod modulus` without overflow. `modulus` must be nonzero.
pub fn mul_mod(a: u64, b: u64, modulus: u64) -> u64 {
    ((a as u128 * b as u128) % modulus as u128) as u64
}

/// `base^exp mod modulus` by square-and-multiply. `modulus` must be nonzero;
/// a modulus of 1 maps everything to 0.
pub fn mod_exp(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    assert!(modulus != 0, "zero modulus");
    if modulus == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, modulus);
        }
        base = mul_mod(base, base, modulus);
        exp >>= 1;
    }
    acc
}

/// Multiplicative inverse of `a` modulo `modulus`, when `gcd(a, modulus) = 1`.
pub fn mod_inv(a: u64, modulus: u64) -> Option<u64> {
    if modulus == 0 {
        return None;
    }
    if modulus == 1 {
        return Some(0);
    }
    let (mut r0, mut r1) = (modulus as i128, (a % modulus) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(modulus as i128) as u64)
}

/// Primality by trial division; intended for inputs below ~10^12.
pub fn is_prime(x: u64) -> bool {
    if x < 2 {
        return false;
    }
    if x % 2 == 0 {
        return x == 2;
    }
    let mut d = 3u64;
    while d * d <= x {
        if x % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors of `x`, sorted ascending. `prime_factors(1) = []`.
pub fn prime_factors(mut x: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= x {
        if x % d == 0 {
            out.push(d);
            while x % d == 0 {
                x /= d;
            }
        }
        d += 1;
    }
    if x > 1 {
        out.push(x);
    }
    out
}

/// True if no prime square divides `x`.
pub fn is_square_free(x: u64) -> bool {
    if x == 0 {
        return false;
    }
    let mut x = x;
    let mut d = 2u64;
    while d * d <= x {
        if x % d == 0 {
            x /= d;
            if x % d == 0 {
                return false;
            }
        }
        d += 1;
    }
    true
}

/// All positive divisors of `x`, sorted ascending.
pub fn divisors(x: u64) -> Vec<u64> {
    assert!(x > 0, "divisors of zero");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= x {
        if x % d == 0 {
            small.push(d);
            if d != x / d {
                large.push(x / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Multiplicative order of `a` modulo `modulus` (requires `gcd(a, modulus) = 1`).
pub fn multiplicative_order(a: u64, modulus: u64) -> u64 {
    assert!(modulus > 0);
    if modulus == 1 {
        return 1;
    }
    assert!(gcd(a % modulus, modulus) == 1, "not a unit");
    // The order divides the Carmichael function; for the small square-free
    // moduli used here, scanning divisors of lcm(r - 1) per prime is cheap,
    // but a direct scan over divisors of the group exponent is simpler:
    // iterate multiples until 1 reappears.
    let mut k = 1u64;
    let mut acc = a % modulus;
    while acc != 1 {
        acc = mul_mod(acc, a, modulus);
        k += 1;
    }
    k
}
