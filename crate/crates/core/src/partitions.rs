//! Integer partitions: the index set for both rows and columns of a
//! symmetric-group character table, plus the counting and sampling
//! machinery built on them.
//!
//! - [`Partition`]: non-increasing list of positive parts.
//! - [`enumerate_partitions`]: all partitions of N in lexicographically
//!   decreasing order (the canonical table ordering).
//! - [`PartitionCounts`]: p(N) by the pentagonal-number recurrence.
//! - [`count_partitions_bounded`]: partitions with a cap on the largest part.
//! - [`UniformSampler`]: exactly uniform random partitions via the
//!   descending-part chain over bounded counts.
//! - [`base_p_digits`], [`count_power_partitions`]: base-p digit machinery.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use crate::arith::uniform_biguint_below;
use crate::interval::{BigRealInterval, IntervalCtx};
use crate::{Error, Result};

/// Default cap on the size argument of [`enumerate_partitions`].
/// p(40) is about 3.7e4, comfortably enumerable; character-table cost is
/// the real limit and is capped separately in `characters`.
pub const DEFAULT_ENUMERATION_CAP: u64 = 40;

/// A partition of a non-negative integer: parts are positive and
/// non-increasing. The empty partition (of 0) is allowed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<u32>,
    n: u64,
}

impl Partition {
    /// Builds a partition, validating that parts are positive and
    /// non-increasing.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::domain("partition parts must be positive"));
        }
        if !parts.windows(2).all(|w| w[0] >= w[1]) {
            return Err(Error::domain("partition parts must be non-increasing"));
        }
        let n = parts.iter().map(|&p| p as u64).sum();
        Ok(Partition { parts, n })
    }

    /// Builds a partition from parts in any order (zeros rejected).
    pub fn from_unsorted(mut parts: Vec<u32>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(parts)
    }

    /// The empty partition of 0.
    pub fn empty() -> Self {
        Partition { parts: Vec::new(), n: 0 }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// The integer being partitioned.
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Largest part, or 0 for the empty partition.
    pub fn largest_part(&self) -> u32 {
        self.parts.first().copied().unwrap_or(0)
    }

    /// `(part, multiplicity)` pairs in decreasing part order.
    pub fn multiplicities(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// The conjugate (transposed Young diagram) partition.
    pub fn conjugate(&self) -> Partition {
        if self.parts.is_empty() {
            return Partition::empty();
        }
        let cols = self.parts[0] as usize;
        let mut parts = Vec::with_capacity(cols);
        for j in 0..cols {
            let height = self.parts.iter().take_while(|&&p| p as usize > j).count();
            parts.push(height as u32);
        }
        Partition { parts, n: self.n }
    }

    /// Parts joined by commas with no surrounding decoration; empty string
    /// for the empty partition. This is the CSV/CLI wire format.
    pub fn csv_string(&self) -> String {
        self.parts
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.csv_string())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// All partitions of `n` in lexicographically decreasing part order,
/// subject to [`DEFAULT_ENUMERATION_CAP`].
pub fn enumerate_partitions(n: u64) -> Result<Vec<Partition>> {
    enumerate_partitions_capped(n, DEFAULT_ENUMERATION_CAP)
}

/// All partitions of `n` in lexicographically decreasing part order, with an
/// explicit cap on `n`.
pub fn enumerate_partitions_capped(n: u64, cap: u64) -> Result<Vec<Partition>> {
    if n > cap {
        return Err(Error::ResourceCap { what: "partition enumeration", requested: n, cap });
    }
    let mut out = Vec::new();
    let mut stack: Vec<u32> = Vec::new();
    gen_desc(n as u32, n as u32, &mut stack, &mut out);
    Ok(out)
}

fn gen_desc(remaining: u32, max_part: u32, stack: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        let parts = stack.clone();
        let n = parts.iter().map(|&p| p as u64).sum();
        out.push(Partition { parts, n });
        return;
    }
    let hi = remaining.min(max_part);
    for k in (1..=hi).rev() {
        stack.push(k);
        gen_desc(remaining - k, k, stack, out);
        stack.pop();
    }
}

/// Table of p(0..=n) computed by Euler's pentagonal-number recurrence.
pub struct PartitionCounts {
    values: Vec<BigUint>,
}

impl PartitionCounts {
    /// Builds the table up to and including `n`.
    pub fn up_to(n: u64) -> Self {
        let n = n as usize;
        let mut values = vec![BigUint::zero(); n + 1];
        values[0] = BigUint::one();
        for i in 1..=n {
            let mut plus = BigUint::zero();
            let mut minus = BigUint::zero();
            let mut k = 1i64;
            loop {
                let g1 = (k * (3 * k - 1) / 2) as usize;
                if g1 > i {
                    break;
                }
                let acc = if k % 2 == 1 { &mut plus } else { &mut minus };
                *acc += &values[i - g1];
                let g2 = (k * (3 * k + 1) / 2) as usize;
                if g2 <= i {
                    let acc = if k % 2 == 1 { &mut plus } else { &mut minus };
                    *acc += &values[i - g2];
                }
                k += 1;
            }
            values[i] = plus - minus;
        }
        PartitionCounts { values }
    }

    pub fn max_n(&self) -> u64 {
        (self.values.len() - 1) as u64
    }

    pub fn get(&self, n: u64) -> &BigUint {
        &self.values[n as usize]
    }
}

/// p(n), the number of unrestricted partitions of `n`.
pub fn count_partitions(n: u64) -> BigUint {
    PartitionCounts::up_to(n).values.pop().unwrap()
}

/// Number of partitions of `n` with every part at most `k`.
pub fn count_partitions_bounded(n: u64, k: u64) -> BigUint {
    let n = n as usize;
    let k = (k as usize).min(n);
    let mut ways = vec![BigUint::zero(); n + 1];
    ways[0] = BigUint::one();
    for part in 1..=k {
        for m in part..=n {
            let (head, tail) = ways.split_at_mut(m);
            tail[0] += &head[m - part];
        }
    }
    ways[n].clone()
}

/// The Hardy–Ramanujan leading-order approximation to p(n):
/// exp(2π sqrt(n/6)) / (4 n sqrt(3)), as a certified enclosure.
pub fn hr_asymptotic(ctx: &mut IntervalCtx, n: u64) -> Result<BigRealInterval> {
    if n == 0 {
        return Err(Error::domain("hr_asymptotic requires n >= 1"));
    }
    let pi = ctx.pi();
    let n_i = ctx.from_u64(n);
    let six = ctx.from_u64(6);
    let two = ctx.from_u64(2);
    let arg = ctx.mul(&two, &pi);
    let ratio = ctx.div(&n_i, &six);
    let root = ctx.sqrt(&ratio);
    let exponent = ctx.mul(&arg, &root);
    let numerator = ctx.exp(&exponent);
    let three = ctx.from_u64(3);
    let sqrt3 = ctx.sqrt(&three);
    let four_n = ctx.from_u64(4 * n);
    let denom = ctx.mul(&four_n, &sqrt3);
    Ok(ctx.div(&numerator, &denom))
}

/// Centralizer order z_mu = prod_i i^{m_i} m_i! over part sizes i with
/// multiplicity m_i; |S_N| / z_mu is the conjugacy class size.
pub fn centralizer_order(mu: &Partition) -> BigUint {
    let mut z = BigUint::one();
    for (part, mult) in mu.multiplicities() {
        for _ in 0..mult {
            z *= part;
        }
        for f in 2..=(mult as u64) {
            z *= f;
        }
    }
    z
}

/// Base-p digit vector, least significant digit first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigitVector {
    digits: Vec<u32>,
    base: u64,
}

impl DigitVector {
    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    /// Reconstructs the integer the digits encode.
    pub fn value(&self) -> u64 {
        let mut acc = 0u64;
        for &d in self.digits.iter().rev() {
            acc = acc * self.base + d as u64;
        }
        acc
    }
}

/// Digits of `ell` in base `p`, least significant first, no trailing zeros.
pub fn base_p_digits(ell: u64, p: u64) -> Result<DigitVector> {
    if p < 2 {
        return Err(Error::domain("digit base must be at least 2"));
    }
    let mut digits = Vec::new();
    let mut rest = ell;
    while rest > 0 {
        digits.push((rest % p) as u32);
        rest /= p;
    }
    Ok(DigitVector { digits, base: p })
}

/// Table of the counts of partitions of 0..=limit into powers of `p`.
pub fn power_partition_counts(limit: u64, p: u64) -> Result<Vec<BigUint>> {
    if !crate::arith::is_prime(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    let limit = limit as usize;
    let mut ways = vec![BigUint::zero(); limit + 1];
    ways[0] = BigUint::one();
    let mut power = 1usize;
    loop {
        for m in power..=limit {
            let (head, tail) = ways.split_at_mut(m);
            tail[0] += &head[m - power];
        }
        match power.checked_mul(p as usize) {
            Some(next) if next <= limit => power = next,
            _ => break,
        }
    }
    Ok(ways)
}

/// Number of partitions of `j` into powers of the prime `p` (including
/// p^0 = 1), with the convention that the count at 0 is 1.
pub fn count_power_partitions(j: u64, p: u64) -> Result<BigUint> {
    Ok(power_partition_counts(j, p)?.pop().unwrap())
}

/// Exactly uniform sampler over partitions of a fixed `n`.
///
/// Sampling walks the descending-part chain: the largest part j is chosen
/// with probability b(n-j, j)/p(n), where b(m, k) counts partitions of m
/// with parts at most k, and the chain recurses on the remainder with the
/// chosen part as the new bound. Only the states reachable by the chain are
/// tabulated: after the first step the bound k never exceeds n - m, so the
/// table is the triangular region k <= min(m, n - m) plus the 1-D p(.) table.
pub struct UniformSampler {
    n: u64,
    counts: PartitionCounts,
    /// region[m][k] = b(m, k) for k <= min(m, n - m); b(m, 0) handled by index 0.
    region: Vec<Vec<BigUint>>,
    /// root_cum[j] = sum_{j' <= j} b(n - j', j') — cumulative law of the
    /// largest part; root_cum[n] = p(n).
    root_cum: Vec<BigUint>,
}

impl UniformSampler {
    /// Builds the sampler tables for partitions of `n`.
    ///
    /// Memory grows like n^2/4 big integers; n = 1000 costs a few tens of
    /// megabytes, n = 10^4 a couple of gigabytes.
    pub fn new(n: u64) -> Self {
        let counts = PartitionCounts::up_to(n);
        let nu = n as usize;
        let mut region: Vec<Vec<BigUint>> = Vec::with_capacity(nu + 1);
        for m in 0..=nu {
            let kmax = m.min(nu - m);
            let mut row = Vec::with_capacity(kmax + 1);
            row.push(if m == 0 { BigUint::one() } else { BigUint::zero() });
            for k in 1..=kmax {
                let prev = &row[k - 1];
                let rest = m - k;
                let add = if k >= rest {
                    counts.get(rest as u64).clone()
                } else {
                    region[rest][k].clone()
                };
                row.push(prev + add);
            }
            region.push(row);
        }
        let mut root_cum = Vec::with_capacity(nu + 1);
        root_cum.push(BigUint::zero());
        for j in 1..=nu {
            let rest = nu - j;
            let add = if j >= rest {
                counts.get(rest as u64).clone()
            } else {
                region[rest][j].clone()
            };
            let prev = &root_cum[j - 1];
            root_cum.push(prev + add);
        }
        if n > 0 {
            debug_assert_eq!(&root_cum[nu], counts.get(n));
        }
        UniformSampler { n, counts, region, root_cum }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// b(m, k) restricted to the tabulated states (k <= n - m or k >= m).
    fn bounded(&self, m: usize, k: usize) -> &BigUint {
        if k >= m {
            self.counts.get(m as u64)
        } else {
            &self.region[m][k]
        }
    }

    /// Draws one exactly uniform partition of `n`.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> Partition {
        let nu = self.n as usize;
        if nu == 0 {
            return Partition::empty();
        }
        let mut parts: Vec<u32> = Vec::new();
        // First part from the explicit cumulative law of the largest part.
        let target = uniform_biguint_below(rng, &self.root_cum[nu]);
        let mut j = partition_point_cum(&self.root_cum, &target);
        parts.push(j as u32);
        let mut rem = nu - j;
        let mut bound = j;
        while rem > 0 {
            let kmax = bound.min(rem);
            let total = self.bounded(rem, kmax);
            let target = uniform_biguint_below(rng, total);
            // smallest j with b(rem, j) > target
            let (mut lo, mut hi) = (1usize, kmax);
            while lo < hi {
                let mid = (lo + hi) / 2;
                if *self.bounded(rem, mid) > target {
                    hi = mid;
                } else {
                    lo = mid + 1;
                }
            }
            j = lo;
            parts.push(j as u32);
            rem -= j;
            bound = j;
        }
        let n = self.n;
        Partition { parts, n }
    }

    /// Exact expected value of the largest part under the uniform law,
    /// as a double. Useful for calibrating sampling experiments.
    pub fn mean_largest_part_exact(&self) -> f64 {
        let nu = self.n as usize;
        if nu == 0 {
            return 0.0;
        }
        let mut num = BigUint::zero();
        for j in 1..=nu {
            let w = &self.root_cum[j] - &self.root_cum[j - 1];
            num += w * BigUint::from(j);
        }
        big_ratio_f64(&num, self.counts.get(self.n))
    }
}

/// smallest index j >= 1 with cum[j] > target
fn partition_point_cum(cum: &[BigUint], target: &BigUint) -> usize {
    let (mut lo, mut hi) = (1usize, cum.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if cum[mid] > *target {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

pub(crate) fn big_ratio_f64(num: &BigUint, den: &BigUint) -> f64 {
    // Scale down in tandem so both fit f64 without overflow.
    let shift = den.bits().saturating_sub(500);
    let n = (num >> shift).to_f64().unwrap_or(f64::MAX);
    let d = (den >> shift).to_f64().unwrap_or(f64::MAX);
    n / d
}

/// Convenience wrapper: one uniform partition of `n` for a fixed seed.
/// Builds the sampler tables on every call; reuse [`UniformSampler`] when
/// drawing many samples.
pub fn sample_uniform_partition(n: u64, seed: u64) -> Partition {
    use rand::SeedableRng;
    let sampler = UniformSampler::new(n);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    sampler.sample(&mut rng)
}
