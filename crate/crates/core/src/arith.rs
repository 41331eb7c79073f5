//! Small integer helpers shared across modules.

use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;

/// Deterministic primality test by trial division. Fine for the word-sized
/// moduli and part sizes this crate works with.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// n! as an exact big integer.
pub fn factorial(n: u64) -> BigUint {
    let mut acc = BigUint::one();
    for i in 2..=n {
        acc *= i;
    }
    acc
}

/// Largest power of `p` dividing `n`, together with the cofactor:
/// returns `(k, j)` with `n = k * p^j` and `p` not dividing `k`.
pub fn p_adic_split(n: u64, p: u64) -> (u64, u32) {
    debug_assert!(n > 0 && p >= 2);
    let mut k = n;
    let mut j = 0u32;
    while k % p == 0 {
        k /= p;
        j += 1;
    }
    (k, j)
}

/// Uniform big integer in `[0, bound)` by rejection sampling on the bit
/// length of `bound`. Consumes a deterministic number of RNG words per
/// attempt, so the result is reproducible for a given RNG state.
pub fn uniform_biguint_below<R: Rng>(rng: &mut R, bound: &BigUint) -> BigUint {
    assert!(!num_traits::Zero::is_zero(bound), "bound must be positive");
    let bits = bound.bits();
    let words = bits.div_ceil(32) as usize;
    let top_mask: u32 = if bits % 32 == 0 {
        u32::MAX
    } else {
        (1u32 << (bits % 32)) - 1
    };
    loop {
        let mut digits = vec![0u32; words];
        for d in digits.iter_mut() {
            *d = rng.gen();
        }
        if let Some(last) = digits.last_mut() {
            *last &= top_mask;
        }
        let candidate = BigUint::new(digits);
        if candidate < *bound {
            return candidate;
        }
    }
}
