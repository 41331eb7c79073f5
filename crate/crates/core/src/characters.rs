//! Murnaghan–Nakayama evaluation of irreducible symmetric-group characters,
//! exact and mod p, and full character-table construction.
//!
//! The recursion removes the largest remaining part of the cycle type first:
//! chi_mu^lambda = sum over removable border strips of that length of
//! (-1)^height * chi of the smaller pair. Columns of a table (fixed mu) are
//! independent; each is evaluated single-threaded over its own memo table
//! keyed by (remaining shape, number of mu parts consumed), and the memo is
//! dropped when the column completes. Table assembly is by column index, so
//! results are identical for any thread count.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::arith::{factorial, is_prime};
use crate::hooks::{hook_lengths, remove_border_strips};
use crate::partitions::{enumerate_partitions_capped, Partition};
use crate::{Error, Result};

/// Largest prime accepted by the native mod-p evaluator.
pub const MAX_MODULUS: u64 = 64;

/// Arithmetic mode of a table: exact big integers or residues mod a prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableMode {
    Exact,
    Mod(u64),
}

impl std::fmt::Display for TableMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TableMode::Exact => write!(f, "exact"),
            TableMode::Mod(p) => write!(f, "mod{p}"),
        }
    }
}

/// Size caps for table construction; the defaults keep desk runtimes sane.
#[derive(Clone, Copy, Debug)]
pub struct TableLimits {
    pub exact_max_n: u64,
    pub mod_max_n: u64,
}

impl Default for TableLimits {
    fn default() -> Self {
        TableLimits { exact_max_n: 20, mod_max_n: 26 }
    }
}

enum Entries {
    Exact(Vec<BigInt>),
    Mod(Vec<u64>),
}

/// Dense p(N) x p(N) character table. Rows are indexed by the
/// representation label lambda, columns by the cycle type mu, both in the
/// lexicographically decreasing enumeration order.
pub struct CharTable {
    n: u64,
    index: Vec<Partition>,
    lookup: HashMap<Vec<u32>, usize>,
    mode: TableMode,
    entries: Entries,
}

impl CharTable {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn mode(&self) -> TableMode {
        self.mode
    }

    /// Row/column labels, shared by both axes.
    pub fn partitions(&self) -> &[Partition] {
        &self.index
    }

    pub fn dim(&self) -> usize {
        self.index.len()
    }

    /// Index of a partition in the row/column order.
    pub fn position(&self, p: &Partition) -> Option<usize> {
        self.lookup.get(p.parts()).copied()
    }

    /// Exact entry at (row, col); None in mod mode.
    pub fn entry_exact(&self, row: usize, col: usize) -> Option<&BigInt> {
        match &self.entries {
            Entries::Exact(v) => Some(&v[row * self.dim() + col]),
            Entries::Mod(_) => None,
        }
    }

    /// Residue entry at (row, col); None in exact mode.
    pub fn entry_mod(&self, row: usize, col: usize) -> Option<u64> {
        match &self.entries {
            Entries::Mod(v) => Some(v[row * self.dim() + col]),
            Entries::Exact(_) => None,
        }
    }

    /// Entry rendered as a decimal string regardless of mode.
    pub fn entry_string(&self, row: usize, col: usize) -> String {
        match &self.entries {
            Entries::Exact(v) => v[row * self.dim() + col].to_string(),
            Entries::Mod(v) => v[row * self.dim() + col].to_string(),
        }
    }
}

fn check_sizes(lambda: &Partition, mu: &Partition) -> Result<()> {
    if lambda.n() != mu.n() {
        return Err(Error::SizeMismatch { lhs: lambda.n(), rhs: mu.n() });
    }
    Ok(())
}

fn check_modulus(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::domain(format!("modulus {p} is not prime")));
    }
    if p > MAX_MODULUS {
        return Err(Error::domain(format!(
            "modulus {p} exceeds the native-arithmetic cap {MAX_MODULUS}"
        )));
    }
    Ok(())
}

fn mn_exact(
    lambda: &Partition,
    mu: &[u32],
    idx: usize,
    memo: &mut HashMap<(Vec<u32>, usize), BigInt>,
) -> BigInt {
    if lambda.is_empty() {
        return BigInt::one();
    }
    let key = (lambda.parts().to_vec(), idx);
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let t = mu[idx] as u64;
    let mut acc = BigInt::zero();
    for removal in remove_border_strips(lambda, t) {
        let sub = mn_exact(&removal.result, mu, idx + 1, memo);
        if removal.height % 2 == 0 {
            acc += sub;
        } else {
            acc -= sub;
        }
    }
    memo.insert(key, acc.clone());
    acc
}

fn mn_mod(
    lambda: &Partition,
    mu: &[u32],
    idx: usize,
    p: u64,
    memo: &mut HashMap<(Vec<u32>, usize), u64>,
) -> u64 {
    if lambda.is_empty() {
        return 1 % p;
    }
    let key = (lambda.parts().to_vec(), idx);
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let t = mu[idx] as u64;
    let mut acc = 0u64;
    for removal in remove_border_strips(lambda, t) {
        let sub = mn_mod(&removal.result, mu, idx + 1, p, memo);
        acc = if removal.height % 2 == 0 {
            (acc + sub) % p
        } else {
            (acc + p - sub) % p
        };
    }
    memo.insert(key, acc);
    acc
}

/// Exact character value chi_mu^lambda.
pub fn character_value(lambda: &Partition, mu: &Partition) -> Result<BigInt> {
    check_sizes(lambda, mu)?;
    let mut memo = HashMap::new();
    Ok(mn_exact(lambda, mu.parts(), 0, &mut memo))
}

/// chi_mu^lambda mod p, evaluated natively in residue arithmetic.
pub fn character_value_mod(lambda: &Partition, mu: &Partition, p: u64) -> Result<u64> {
    check_sizes(lambda, mu)?;
    check_modulus(p)?;
    let mut memo = HashMap::new();
    Ok(mn_mod(lambda, mu.parts(), 0, p, &mut memo))
}

/// One exact table column: chi_mu^lambda for every lambda in `lambdas`,
/// sharing a single memo across the column.
pub fn exact_column(lambdas: &[Partition], mu: &Partition) -> Result<Vec<BigInt>> {
    let mut memo = HashMap::new();
    lambdas
        .iter()
        .map(|lambda| {
            check_sizes(lambda, mu)?;
            Ok(mn_exact(lambda, mu.parts(), 0, &mut memo))
        })
        .collect()
}

/// One mod-p table column.
pub fn mod_column(lambdas: &[Partition], mu: &Partition, p: u64) -> Result<Vec<u64>> {
    check_modulus(p)?;
    let mut memo = HashMap::new();
    lambdas
        .iter()
        .map(|lambda| {
            check_sizes(lambda, mu)?;
            Ok(mn_mod(lambda, mu.parts(), 0, p, &mut memo))
        })
        .collect()
}

/// Builds the full character table of S_n under the default size caps.
pub fn build_table(n: u64, mode: TableMode) -> Result<CharTable> {
    build_table_with_limits(n, mode, TableLimits::default())
}

/// Builds the full character table of S_n with explicit size caps.
/// Columns are computed in parallel and assembled by index.
pub fn build_table_with_limits(n: u64, mode: TableMode, limits: TableLimits) -> Result<CharTable> {
    match mode {
        TableMode::Exact => {
            if n > limits.exact_max_n {
                return Err(Error::ResourceCap {
                    what: "exact character table",
                    requested: n,
                    cap: limits.exact_max_n,
                });
            }
        }
        TableMode::Mod(p) => {
            check_modulus(p)?;
            if n > limits.mod_max_n {
                return Err(Error::ResourceCap {
                    what: "mod-p character table",
                    requested: n,
                    cap: limits.mod_max_n,
                });
            }
        }
    }
    let index = enumerate_partitions_capped(n, n.max(crate::partitions::DEFAULT_ENUMERATION_CAP))?;
    let m = index.len();
    let entries = match mode {
        TableMode::Exact => {
            let columns: Vec<Vec<BigInt>> = (0..m)
                .into_par_iter()
                .map(|j| exact_column(&index, &index[j]))
                .collect::<Result<_>>()?;
            let mut flat = vec![BigInt::zero(); m * m];
            for (j, col) in columns.into_iter().enumerate() {
                for (i, v) in col.into_iter().enumerate() {
                    flat[i * m + j] = v;
                }
            }
            Entries::Exact(flat)
        }
        TableMode::Mod(p) => {
            let columns: Vec<Vec<u64>> = (0..m)
                .into_par_iter()
                .map(|j| mod_column(&index, &index[j], p))
                .collect::<Result<_>>()?;
            let mut flat = vec![0u64; m * m];
            for (j, col) in columns.into_iter().enumerate() {
                for (i, v) in col.into_iter().enumerate() {
                    flat[i * m + j] = v;
                }
            }
            Entries::Mod(flat)
        }
    };
    let lookup = index
        .iter()
        .enumerate()
        .map(|(i, p)| (p.parts().to_vec(), i))
        .collect();
    Ok(CharTable { n, index, lookup, mode, entries })
}

/// Dimension of the irreducible representation lambda, by the hook length
/// formula: n! divided by the product of all hook lengths. The division is
/// exact.
pub fn hook_length_dimension(lambda: &Partition) -> BigUint {
    let mut denom = BigUint::one();
    for h in hook_lengths(lambda).all_hooks() {
        denom *= h;
    }
    let num = factorial(lambda.n());
    debug_assert!((&num % &denom).is_zero());
    num / denom
}

/// Checks first orthogonality on an exact table:
/// sum_lambda chi_mu^lambda chi_nu^lambda = z_mu [mu = nu] for every column
/// pair. Returns the number of violating pairs (0 for a correct engine).
pub fn verify_orthogonality(table: &CharTable) -> Result<u64> {
    let flat = match &table.entries {
        Entries::Exact(v) => v,
        Entries::Mod(_) => {
            return Err(Error::ModeMismatch("orthogonality requires an exact table"))
        }
    };
    let m = table.dim();
    let violations: u64 = (0..m)
        .into_par_iter()
        .map(|j| {
            let z_mu = BigInt::from(crate::partitions::centralizer_order(&table.index[j]));
            let mut bad = 0u64;
            for k in j..m {
                let mut acc = BigInt::zero();
                for i in 0..m {
                    acc += &flat[i * m + j] * &flat[i * m + k];
                }
                let expected = if j == k { z_mu.clone() } else { BigInt::zero() };
                if acc != expected {
                    bad += 1;
                }
            }
            bad
        })
        .sum();
    Ok(violations)
}

/// Divisibility and zero statistics for the table of S_n mod p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityReport {
    pub n: u64,
    pub p: u64,
    /// Total entry count, p(n)^2.
    pub total: u64,
    /// Entries congruent to 0 mod p.
    pub divisible: u64,
    /// Entries exactly zero; only available when an exact table is feasible.
    pub zero: Option<u64>,
}

impl DensityReport {
    pub fn frac_divisible(&self) -> f64 {
        self.divisible as f64 / self.total as f64
    }

    pub fn frac_zero(&self) -> Option<f64> {
        self.zero.map(|z| z as f64 / self.total as f64)
    }
}

/// Computes the density report for (n, p): divisibility counts from a
/// mod-p table, zero counts from an exact table when `n` is within the
/// exact cap. Zeros are never inferred from residues.
pub fn density_report(n: u64, p: u64, limits: TableLimits) -> Result<DensityReport> {
    let mod_table = build_table_with_limits(n, TableMode::Mod(p), limits)?;
    let m = mod_table.dim();
    let total = (m * m) as u64;
    let divisible = match &mod_table.entries {
        Entries::Mod(v) => v.iter().filter(|&&r| r == 0).count() as u64,
        Entries::Exact(_) => unreachable!(),
    };
    let zero = if n <= limits.exact_max_n {
        let exact = build_table_with_limits(n, TableMode::Exact, limits)?;
        match &exact.entries {
            Entries::Exact(v) => Some(v.iter().filter(|e| e.is_zero()).count() as u64),
            Entries::Mod(_) => unreachable!(),
        }
    } else {
        None
    };
    Ok(DensityReport { n, p, total, divisible, zero })
}

/// Sign of the permutation with cycle type mu: (-1)^(n - #parts).
pub fn cycle_type_sign(mu: &Partition) -> i32 {
    if (mu.n() - mu.len() as u64) % 2 == 0 {
        1
    } else {
        -1
    }
}
