//! The part-merging reduction on cycle types and what it buys.
//!
//! Merging p equal parts m into one part pm leaves every character value
//! unchanged mod p; iterating until no part appears p or more times yields
//! the fixpoint partition (written mu-tilde). The fixpoint is computed
//! directly from base-p digits of per-kernel masses — for each k coprime to
//! p, the parts of the form k*p^j in the fixpoint have multiplicities equal
//! to the base-p digits of ell, where k*ell is the total mass of that kernel
//! class in the input. The step-by-step merge is kept as the slower
//! trace-producing route and as the test oracle for the digit construction.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arith::{is_prime, p_adic_split};
use crate::characters::{build_table_with_limits, TableLimits, TableMode};
use crate::partitions::{
    base_p_digits, enumerate_partitions, power_partition_counts, Partition, UniformSampler,
};
use crate::{Error, Result};

fn check_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    Ok(())
}

/// Replaces exactly `p` parts equal to `m` by a single part `p * m`.
pub fn merge_step(mu: &Partition, p: u64, m: u32) -> Result<Partition> {
    check_prime(p)?;
    let copies = mu.parts().iter().filter(|&&x| x == m).count() as u64;
    if m == 0 || copies < p {
        return Err(Error::domain(format!(
            "partition has {copies} parts equal to {m}, need {p}"
        )));
    }
    let mut parts: Vec<u32> = Vec::with_capacity(mu.len() + 1 - p as usize);
    let mut dropped = 0u64;
    for &x in mu.parts() {
        if x == m && dropped < p {
            dropped += 1;
        } else {
            parts.push(x);
        }
    }
    let merged = (m as u64 * p) as u32;
    let pos = parts.partition_point(|&x| x > merged);
    parts.insert(pos, merged);
    Partition::new(parts)
}

/// One recorded merge: `count` copies of `part_size` became one part, with
/// the partition state after the step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub part_size: u32,
    pub count: u64,
    pub result: Partition,
}

/// Full record of a reduction run: the start, every merge applied
/// (smallest part size first, deterministically), and the fixpoint.
#[derive(Clone, Debug)]
pub struct ReductionTrace {
    pub start: Partition,
    pub steps: Vec<TraceStep>,
    pub final_partition: Partition,
}

/// Reduces `mu` by iterated merging and records the trace. Prefer
/// [`tilde_reduce_digits`] when only the fixpoint is needed.
pub fn tilde_reduce(mu: &Partition, p: u64) -> Result<ReductionTrace> {
    check_prime(p)?;
    let mut current = mu.clone();
    let mut steps = Vec::new();
    loop {
        // smallest part size with multiplicity >= p
        let mergeable = current
            .multiplicities()
            .into_iter()
            .rev()
            .find(|&(_, mult)| mult as u64 >= p);
        match mergeable {
            Some((m, _)) => {
                let next = merge_step(&current, p, m)?;
                steps.push(TraceStep { part_size: m, count: p, result: next.clone() });
                current = next;
            }
            None => break,
        }
    }
    Ok(ReductionTrace { start: mu.clone(), steps, final_partition: current })
}

/// The merge fixpoint of `mu`, computed in one pass from base-p digits of
/// per-kernel masses. Equals `tilde_reduce(mu, p).final_partition`.
pub fn tilde_reduce_digits(mu: &Partition, p: u64) -> Result<Partition> {
    check_prime(p)?;
    // kernel k -> ell with k*ell = total mass of parts of the form k*p^j
    let mut masses: BTreeMap<u64, u64> = BTreeMap::new();
    for &part in mu.parts() {
        let (k, j) = p_adic_split(part as u64, p);
        *masses.entry(k).or_insert(0) += p.pow(j);
    }
    let mut parts: Vec<u32> = Vec::new();
    for (k, ell) in masses {
        let digits = base_p_digits(ell, p)?;
        let mut scale = 1u64;
        for &d in digits.digits() {
            for _ in 0..d {
                parts.push((k * scale) as u32);
            }
            scale *= p;
        }
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    Partition::new(parts)
}

/// Checks chi_mu = chi_mu-tilde mod p entrywise over the full table of S_n.
/// Returns the number of violating (lambda, mu) pairs; zero unless the
/// character engine or the reduction is broken.
pub fn verify_congruence(n: u64, p: u64, limits: TableLimits) -> Result<u64> {
    check_prime(p)?;
    let table = build_table_with_limits(n, TableMode::Mod(p), limits)?;
    let m = table.dim();
    let mut violations = 0u64;
    for j in 0..m {
        let mu = &table.partitions()[j];
        let reduced = tilde_reduce_digits(mu, p)?;
        if reduced == *mu {
            continue;
        }
        let k = table
            .position(&reduced)
            .expect("fixpoint partitions the same integer");
        for i in 0..m {
            if table.entry_mod(i, j) != table.entry_mod(i, k) {
                violations += 1;
            }
        }
    }
    Ok(violations)
}

/// Parameters of a restricted partition count: partitions of `n` such that
/// for every kernel k in `kernels`, the parts of the form k*p^j sum to
/// k*ell with ell < p^r.
#[derive(Clone, Debug)]
pub struct RestrictedCountSpec {
    n: u64,
    p: u64,
    r: u32,
    kernels: Vec<u64>,
}

impl RestrictedCountSpec {
    pub fn new(n: u64, p: u64, r: u32, kernels: impl IntoIterator<Item = u64>) -> Result<Self> {
        check_prime(p)?;
        let mut ks: Vec<u64> = kernels.into_iter().collect();
        ks.sort_unstable();
        ks.dedup();
        for &k in &ks {
            if k == 0 || k % p == 0 {
                return Err(Error::domain(format!(
                    "kernel {k} is not coprime to p = {p}"
                )));
            }
        }
        Ok(RestrictedCountSpec { n, p, r, kernels: ks })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn kernels(&self) -> &[u64] {
        &self.kernels
    }

    /// p^r, saturating; masses never exceed n, so saturation keeps the
    /// comparison `ell < p^r` correct.
    pub fn p_pow_r(&self) -> u64 {
        let mut acc = 1u64;
        for _ in 0..self.r {
            acc = acc.saturating_mul(self.p);
        }
        acc
    }

    /// Whether `mu` satisfies the restriction.
    pub fn admits(&self, mu: &Partition) -> bool {
        let cap = self.p_pow_r();
        for &k in &self.kernels {
            let mut ell = 0u64;
            for &part in mu.parts() {
                let (kernel, j) = p_adic_split(part as u64, self.p);
                if kernel == k {
                    ell += self.p.pow(j);
                }
            }
            if ell >= cap {
                return false;
            }
        }
        true
    }
}

/// Restricted count by filtering the full enumeration of partitions of n.
pub fn count_restricted_bruteforce(spec: &RestrictedCountSpec) -> Result<BigUint> {
    let all = enumerate_partitions(spec.n)?;
    let count = all.iter().filter(|mu| spec.admits(mu)).count();
    Ok(BigUint::from(count))
}

/// Restricted count as the q^n coefficient of the generating function:
/// unrestricted geometric factors for every part size whose kernel is
/// outside the restricted set, and the truncated power-partition polynomial
/// sum_{ell < p^r} ptilde(ell) q^(k ell) for each restricted kernel k.
pub fn count_restricted_gf(spec: &RestrictedCountSpec) -> Result<BigUint> {
    let n = spec.n as usize;
    let mut coeffs = vec![BigUint::zero(); n + 1];
    coeffs[0] = BigUint::one();
    // geometric factors (1 - q^s)^{-1} for unrestricted part sizes s
    for s in 1..=n {
        let (kernel, _) = p_adic_split(s as u64, spec.p);
        if spec.kernels.binary_search(&kernel).is_ok() {
            continue;
        }
        for i in s..=n {
            let (head, tail) = coeffs.split_at_mut(i);
            tail[0] += &head[i - s];
        }
    }
    // truncated polynomial factor per restricted kernel
    let cap = spec.p_pow_r();
    for &k in &spec.kernels {
        if k > spec.n {
            continue;
        }
        let ptilde = power_partition_counts(spec.n / k, spec.p)?;
        let mut factor: Vec<(usize, BigUint)> = Vec::new();
        let mut ell = 0u64;
        while ell < cap && k * ell <= spec.n {
            factor.push(((k * ell) as usize, ptilde[ell as usize].clone()));
            ell += 1;
        }
        let mut next = vec![BigUint::zero(); n + 1];
        for (deg, c) in &factor {
            for i in 0..=(n - deg) {
                if !coeffs[i].is_zero() {
                    next[i + deg] += &coeffs[i] * c;
                }
            }
        }
        coeffs = next;
    }
    Ok(coeffs[n].clone())
}

/// Outcome of a tail experiment: how often the merge fixpoint of a uniform
/// partition has largest part below the threshold.
#[derive(Clone, Debug)]
pub struct TailReport {
    pub n: u64,
    pub p: u64,
    pub samples: u64,
    pub seed: u64,
    pub threshold: f64,
    pub below: u64,
    pub fraction: f64,
    pub wilson_lo: f64,
    pub wilson_hi: f64,
}

/// The threshold the tail experiment compares against:
/// (sqrt(6)/(2 pi)) sqrt(n) log(n) (1 + 1/(5p)).
pub fn tail_threshold(n: u64, p: u64) -> f64 {
    let n = n as f64;
    (6f64.sqrt() / (2.0 * std::f64::consts::PI)) * n.sqrt() * n.ln() * (1.0 + 1.0 / (5.0 * p as f64))
}

/// Number of independent RNG streams the sampling experiments are split
/// into; fixed so results do not depend on the worker thread count.
const SAMPLE_STREAMS: u64 = 16;

/// Samples `samples` uniform partitions of `n`, reduces each, and reports
/// the fraction whose fixpoint largest part falls below `threshold`,
/// with a Wilson 95% interval. Deterministic in (n, p, samples, seed)
/// regardless of thread count.
pub fn tail_experiment_with_threshold(
    n: u64,
    p: u64,
    samples: u64,
    seed: u64,
    threshold: f64,
) -> Result<TailReport> {
    check_prime(p)?;
    if n == 0 {
        return Err(Error::domain("tail experiment requires n >= 1"));
    }
    let sampler = UniformSampler::new(n);
    let chunk_sizes: Vec<u64> = (0..SAMPLE_STREAMS)
        .map(|c| samples / SAMPLE_STREAMS + u64::from(c < samples % SAMPLE_STREAMS))
        .collect();
    let below: u64 = chunk_sizes
        .par_iter()
        .enumerate()
        .map(|(stream, &count)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(stream as u64);
            let mut hits = 0u64;
            for _ in 0..count {
                let mu = sampler.sample(&mut rng);
                let reduced = tilde_reduce_digits(&mu, p).expect("p validated");
                if (reduced.largest_part() as f64) < threshold {
                    hits += 1;
                }
            }
            hits
        })
        .sum();
    let fraction = if samples == 0 { 0.0 } else { below as f64 / samples as f64 };
    let (wilson_lo, wilson_hi) = wilson_interval(below, samples);
    Ok(TailReport {
        n,
        p,
        samples,
        seed,
        threshold,
        below,
        fraction,
        wilson_lo,
        wilson_hi,
    })
}

/// Tail experiment at the standard threshold [`tail_threshold`].
pub fn tail_experiment(n: u64, p: u64, samples: u64, seed: u64) -> Result<TailReport> {
    tail_experiment_with_threshold(n, p, samples, seed, tail_threshold(n, p))
}

/// Wilson 95% score interval for `hits` successes out of `total`.
pub fn wilson_interval(hits: u64, total: u64) -> (f64, f64) {
    if total == 0 {
        return (0.0, 1.0);
    }
    let z = 1.959963984540054f64;
    let n = total as f64;
    let phat = hits as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (phat + z2 / (2.0 * n)) / denom;
    let half = z * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((center - half).max(0.0), (center + half).min(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn merge_step_examples() {
        assert_eq!(merge_step(&p(&[1, 1]), 2, 1).unwrap(), p(&[2]));
        assert_eq!(merge_step(&p(&[3, 3, 3, 1]), 3, 3).unwrap(), p(&[9, 1]));
        assert!(merge_step(&p(&[3, 3, 1]), 3, 3).is_err());
        assert!(merge_step(&p(&[2, 2]), 4, 2).is_err());
    }

    #[test]
    fn merge_preserves_mass() {
        let before = p(&[5, 5, 5, 5, 5, 2]);
        let after = merge_step(&before, 5, 5).unwrap();
        assert_eq!(after.n(), before.n());
        assert_eq!(after, p(&[25, 2]));
    }

    #[test]
    fn reduce_trace_example_p2() {
        let trace = tilde_reduce(&p(&[3, 3, 2, 1, 1]), 2).unwrap();
        assert_eq!(trace.final_partition, p(&[6, 4]));
        // smallest-first policy: 1+1 -> 2, then 2+2 -> 4, then 3+3 -> 6
        let sizes: Vec<u32> = trace.steps.iter().map(|s| s.part_size).collect();
        assert_eq!(sizes, vec![1, 2, 3]);
        for step in &trace.steps {
            assert_eq!(step.result.n(), 10);
            assert_eq!(step.count, 2);
        }
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(tilde_reduce(&p(&[2, 2, 2, 1]), 3).unwrap().final_partition, p(&[6, 1]));
        // fixpoints stay put with an empty trace
        let fixed = p(&[4, 2, 1]);
        let trace = tilde_reduce(&fixed, 2).unwrap();
        assert_eq!(trace.final_partition, fixed);
        assert!(trace.steps.is_empty());
    }

    #[test]
    fn digit_construction_examples() {
        assert_eq!(tilde_reduce_digits(&p(&[3, 3, 2, 1, 1]), 2).unwrap(), p(&[6, 4]));
        assert_eq!(tilde_reduce_digits(&p(&[1, 1, 1]), 5).unwrap(), p(&[1, 1, 1]));
        // 2^a copies of 1 collapse to the single part 2^a
        for a in 0..=6u32 {
            let ones = Partition::new(vec![1; 1 << a]).unwrap();
            assert_eq!(
                tilde_reduce_digits(&ones, 2).unwrap(),
                Partition::new(vec![1u32 << a]).unwrap()
            );
        }
    }

    #[test]
    fn fixpoint_multiplicities_stay_below_p() {
        for n in 0..=25u64 {
            for p_mod in [2u64, 3, 5] {
                for mu in enumerate_partitions(n).unwrap() {
                    let red = tilde_reduce_digits(&mu, p_mod).unwrap();
                    assert_eq!(red.n(), n);
                    for (_, mult) in red.multiplicities() {
                        assert!((mult as u64) < p_mod, "mu={mu} p={p_mod} got {red}");
                    }
                }
            }
        }
    }

    #[test]
    fn iterative_and_digit_routes_agree_exhaustively_small() {
        for n in 0..=20u64 {
            for p_mod in [2u64, 3, 5] {
                for mu in enumerate_partitions(n).unwrap() {
                    assert_eq!(
                        tilde_reduce(&mu, p_mod).unwrap().final_partition,
                        tilde_reduce_digits(&mu, p_mod).unwrap(),
                        "mu={mu} p={p_mod}"
                    );
                }
            }
        }
    }

    #[test]
    fn digit_characterization_of_fixpoint_multiplicities() {
        // parts of the fixpoint of shape k*p^j occur digit_j(ell) times
        for n in [12u64, 18] {
            for p_mod in [2u64, 3] {
                for mu in enumerate_partitions(n).unwrap() {
                    let red = tilde_reduce_digits(&mu, p_mod).unwrap();
                    let mut masses: BTreeMap<u64, u64> = BTreeMap::new();
                    for &part in mu.parts() {
                        let (k, j) = p_adic_split(part as u64, p_mod);
                        *masses.entry(k).or_insert(0) += p_mod.pow(j);
                    }
                    for (k, ell) in masses {
                        let digits = base_p_digits(ell, p_mod).unwrap();
                        for (j, &d) in digits.digits().iter().enumerate() {
                            let size = (k * p_mod.pow(j as u32)) as u32;
                            let mult = red.parts().iter().filter(|&&x| x == size).count();
                            assert_eq!(mult as u32, d, "mu={mu} p={p_mod} k={k} j={j}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn lemma1_congruence_for_one_merge_n4_p2() {
        // all lambda of 4: chi at (2,1,1) = chi at (2,2) mod 2
        let lambdas = enumerate_partitions(4).unwrap();
        let before = p(&[2, 1, 1]);
        let after = merge_step(&before, 2, 1).unwrap();
        assert_eq!(after, p(&[2, 2]));
        for lambda in &lambdas {
            let a = crate::characters::character_value_mod(lambda, &before, 2).unwrap();
            let b = crate::characters::character_value_mod(lambda, &after, 2).unwrap();
            assert_eq!(a, b, "lambda={lambda}");
        }
    }

    #[test]
    fn congruence_suite_small() {
        for p_mod in [2u64, 3] {
            for n in 1..=10u64 {
                assert_eq!(
                    verify_congruence(n, p_mod, TableLimits::default()).unwrap(),
                    0,
                    "n={n} p={p_mod}"
                );
            }
        }
    }

    #[test]
    fn restricted_spec_validation() {
        assert!(RestrictedCountSpec::new(4, 2, 1, [1, 3]).is_ok());
        assert!(RestrictedCountSpec::new(4, 2, 1, [1, 6]).is_err());
        assert!(RestrictedCountSpec::new(4, 9, 1, [1]).is_err());
    }

    #[test]
    fn bruteforce_count_example_n4() {
        // only (3,1) has both kernel masses below 2
        let spec = RestrictedCountSpec::new(4, 2, 1, [1, 3]).unwrap();
        assert_eq!(count_restricted_bruteforce(&spec).unwrap(), BigUint::one());
    }

    #[test]
    fn empty_kernel_set_counts_everything() {
        for n in [0u64, 5, 12] {
            let spec = RestrictedCountSpec::new(n, 2, 1, []).unwrap();
            assert_eq!(
                count_restricted_bruteforce(&spec).unwrap(),
                crate::partitions::count_partitions(n)
            );
            assert_eq!(
                count_restricted_gf(&spec).unwrap(),
                crate::partitions::count_partitions(n)
            );
        }
    }

    #[test]
    fn vacuous_restriction_counts_everything() {
        // p^r > n makes the condition empty
        let spec = RestrictedCountSpec::new(10, 2, 4, [1, 3, 5, 7, 9]).unwrap();
        assert_eq!(
            count_restricted_bruteforce(&spec).unwrap(),
            crate::partitions::count_partitions(10)
        );
    }

    #[test]
    fn gf_matches_bruteforce_on_the_grid() {
        let kernel_choices: [&[u64]; 4] = [&[], &[1], &[1, 3], &[3, 5, 7]];
        for n in (2..=18u64).step_by(4) {
            for p_mod in [2u64, 3] {
                for r in [1u32, 2] {
                    for ks in kernel_choices {
                        // keep only kernels coprime to the prime in play
                        let ks: Vec<u64> =
                            ks.iter().copied().filter(|k| k % p_mod != 0).collect();
                        let spec =
                            RestrictedCountSpec::new(n, p_mod, r, ks.iter().copied()).unwrap();
                        assert_eq!(
                            count_restricted_gf(&spec).unwrap(),
                            count_restricted_bruteforce(&spec).unwrap(),
                            "n={n} p={p_mod} r={r} K={ks:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn gf_n0_is_one() {
        let spec = RestrictedCountSpec::new(0, 3, 1, [1]).unwrap();
        assert_eq!(count_restricted_gf(&spec).unwrap(), BigUint::one());
    }

    #[test]
    fn tail_experiment_is_deterministic_and_zero_at_zero_threshold() {
        let a = tail_experiment_with_threshold(60, 2, 500, 9, 0.0).unwrap();
        assert_eq!(a.below, 0);
        assert_eq!(a.fraction, 0.0);
        let b = tail_experiment(60, 2, 500, 9).unwrap();
        let c = tail_experiment(60, 2, 500, 9).unwrap();
        assert_eq!(b.below, c.below);
        assert!(b.wilson_lo <= b.fraction && b.fraction <= b.wilson_hi);
    }

    #[test]
    fn tail_experiment_thread_count_invariance() {
        let one = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| tail_experiment(80, 2, 400, 3).unwrap());
        let four = rayon::ThreadPoolBuilder::new()
            .num_threads(4)
            .build()
            .unwrap()
            .install(|| tail_experiment(80, 2, 400, 3).unwrap());
        assert_eq!(one.below, four.below);
    }
}
