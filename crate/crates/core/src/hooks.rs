//! Young-diagram geometry: hook lengths, beta-sets, t-core tests, and
//! border-strip removal.
//!
//! The beta-set (first-column hook lengths of a padded diagram) is the
//! workhorse: removing a border strip of length t is "subtract t from one
//! beta, keeping all betas distinct", which costs O(parts) per candidate
//! instead of walking the rim. A literal rim-walk lives in the test suite
//! as the independent oracle.

use crate::partitions::Partition;
use crate::{Error, Result};

/// Strictly decreasing first-column hook lengths of a diagram padded to
/// `pad` rows: betas[i] = lambda_i + (pad - 1 - i).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaSet {
    betas: Vec<u64>,
    pad: usize,
}

impl BetaSet {
    pub fn betas(&self) -> &[u64] {
        &self.betas
    }

    pub fn pad(&self) -> usize {
        self.pad
    }

    /// Decodes back to the partition (zeros introduced by padding dropped).
    pub fn partition(&self) -> Partition {
        let mut parts: Vec<u32> = Vec::with_capacity(self.pad);
        for (i, &b) in self.betas.iter().enumerate() {
            let offset = (self.pad - 1 - i) as u64;
            let part = b - offset;
            if part > 0 {
                parts.push(part as u32);
            }
        }
        Partition::new(parts).expect("beta set decodes to a valid partition")
    }
}

/// Beta-set of `lambda` padded to `pad` rows; `pad` must cover all parts.
pub fn beta_set(lambda: &Partition, pad: usize) -> Result<BetaSet> {
    if pad < lambda.len() {
        return Err(Error::domain(format!(
            "pad {pad} smaller than the number of parts {}",
            lambda.len()
        )));
    }
    let mut betas = Vec::with_capacity(pad);
    for i in 0..pad {
        let part = lambda.parts().get(i).copied().unwrap_or(0) as u64;
        betas.push(part + (pad - 1 - i) as u64);
    }
    debug_assert!(betas.windows(2).all(|w| w[0] > w[1]));
    Ok(BetaSet { betas, pad })
}

/// Full table of hook lengths; row i holds lambda_i entries, strictly
/// decreasing left to right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HookTable {
    rows: Vec<Vec<u32>>,
}

impl HookTable {
    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// All hook lengths flattened (the conjugation-invariant multiset).
    pub fn all_hooks(&self) -> Vec<u32> {
        self.rows.iter().flatten().copied().collect()
    }
}

/// Hook length of every box: 1 plus the boxes to the right plus the boxes
/// below.
pub fn hook_lengths(lambda: &Partition) -> HookTable {
    let conj = lambda.conjugate();
    let col_height = |j: usize| conj.parts().get(j).copied().unwrap_or(0);
    let rows = lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &li)| {
            (0..li as usize)
                .map(|j| {
                    let arm = li - 1 - j as u32;
                    let leg = col_height(j) - 1 - i as u32;
                    arm + leg + 1
                })
                .collect()
        })
        .collect();
    HookTable { rows }
}

/// One removable border strip: the partition left behind and the strip's
/// height (rows spanned minus 1, fixing the sign (-1)^height).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StripRemoval {
    pub result: Partition,
    pub height: u32,
}

/// Every removable border strip of length `t`, via the beta-set: each beta
/// with beta >= t and beta - t absent from the set yields one removal; the
/// height is the number of betas strictly between beta - t and beta.
pub fn remove_border_strips(lambda: &Partition, t: u64) -> Vec<StripRemoval> {
    if t == 0 {
        return Vec::new();
    }
    let pad = lambda.len();
    let bs = match beta_set(lambda, pad) {
        Ok(bs) => bs,
        Err(_) => unreachable!("pad equals the part count"),
    };
    let betas = bs.betas();
    let mut removals = Vec::new();
    for (idx, &b) in betas.iter().enumerate() {
        if b < t {
            continue;
        }
        let target = b - t;
        if betas.contains(&target) {
            continue;
        }
        let height = betas
            .iter()
            .filter(|&&other| other > target && other < b)
            .count() as u32;
        let mut new_betas = betas.to_vec();
        new_betas[idx] = target;
        new_betas.sort_unstable_by(|a, b| b.cmp(a));
        let result = BetaSet { betas: new_betas, pad }.partition();
        removals.push(StripRemoval { result, height });
    }
    removals
}

/// True iff no hook length of `lambda` is divisible by `t`.
///
/// Computed on the beta-set: a hook divisible by t exists iff some beta b
/// has b >= t with b - t outside the set (walk the chain b, b-t, b-2t, ...
/// down from any hook of length mt to find such a step), so t-core is
/// exactly "no single t-strip removable". The test suite checks this
/// against literal hook divisibility for small diagrams.
pub fn is_t_core(lambda: &Partition, t: u64) -> Result<bool> {
    if t == 0 {
        return Err(Error::domain("t must be at least 1"));
    }
    Ok(remove_border_strips(lambda, t).is_empty())
}

/// Exact number of partitions of `n` that are not t-cores. Always bounded
/// by (t+1) p(n-t).
pub fn count_non_t_cores(n: u64, t: u64) -> Result<u64> {
    if t == 0 {
        return Err(Error::domain("t must be at least 1"));
    }
    if t > n {
        // strips of length t cannot fit in a diagram of n < t boxes
        return Ok(0);
    }
    let mut count = 0u64;
    for lambda in crate::partitions::enumerate_partitions(n)? {
        if !is_t_core(&lambda, t)? {
            count += 1;
        }
    }
    Ok(count)
}
