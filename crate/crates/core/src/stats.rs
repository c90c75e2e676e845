//! Counting sequences and distributions over uniquely sorted permutations.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::dynamics::Dynamics;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// `m!! = m (m-2) (m-4) ⋯`, with `0!! = (-1)!! = 1`.
pub fn double_factorial(m: i64) -> Result<BigUint> {
    if m < -1 {
        return Err(Error::NegativeDoubleFactorial(m));
    }
    Ok((1..=m.max(0)).rev().step_by(2).map(|k| BigUint::from(k as u64)).product())
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    // Each prefix product is itself a binomial coefficient, so the division is exact.
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// `C_n = binom(2n, n) / (n + 1)`.
pub fn catalan(n: u64) -> BigUint {
    exact_div(binomial(2 * n, n), BigUint::from(n + 1))
}

/// `2 binom(3n, n) / ((n+1)(2n+1))`, the number of 2-stack-sortable
/// permutations of length `n`.
pub fn west_count(n: u64) -> BigUint {
    exact_div(BigUint::from(2u32) * binomial(3 * n, n), BigUint::from((n + 1) * (2 * n + 1)))
}

fn exact_div(num: BigUint, den: BigUint) -> BigUint {
    assert!((&num % &den).is_zero(), "{num} is not divisible by {den}");
    num / den
}

/// Uniquely sorted permutations of length `2k + 1`, counted exhaustively.
pub fn lassalle_brute(k: usize, dynamics: &Dynamics) -> Result<u64> {
    Ok(uniquely_sorted(2 * k + 1, dynamics)?.len() as u64)
}

/// All permutations of `S_n` with exactly one preimage under `s`,
/// lexicographically ordered.
pub fn uniquely_sorted(n: usize, dynamics: &Dynamics) -> Result<Vec<Permutation>> {
    let table = dynamics.table(n)?;
    Ok((0..table.len() as u32).filter(|&r| table.fertility(r) == 1).map(|r| table.perm(r)).collect())
}

/// The hotspot `π_{r+1}`, for the largest `r ∈ [n-1]` such that `π` has
/// `(n-r)/2` descents in `{r, …, n-1}`.
pub fn hotspot(p: &Permutation, dynamics: &Dynamics) -> Result<u32> {
    if !dynamics.is_uniquely_sorted(p)? {
        return Err(Error::NotUniquelySorted(p.to_string()));
    }
    hotspot_unchecked(p).ok_or(Error::HotspotUndefined)
}

fn hotspot_unchecked(p: &Permutation) -> Option<u32> {
    let n = p.len();
    let descents = p.descents();
    (1..n)
        .rev()
        .filter(|&r| (n - r) % 2 == 0)
        .find(|&r| descents.iter().filter(|&&d| d >= r).count() == (n - r) / 2)
        .map(|r| p.at(r + 1))
}

/// Counts keyed by an integer statistic.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Distribution {
    pub label: String,
    pub buckets: BTreeMap<u32, u64>,
    pub total: u64,
}

impl Distribution {
    pub fn new(label: impl Into<String>) -> Self {
        Distribution { label: label.into(), ..Default::default() }
    }

    pub fn add(&mut self, key: u32) {
        *self.buckets.entry(key).or_default() += 1;
        self.total += 1;
    }

    /// Zero for absent keys.
    pub fn get(&self, key: u32) -> u64 {
        self.buckets.get(&key).copied().unwrap_or(0)
    }
}

/// `ℓ ↦ A_{k+1}(ℓ)`, the number of uniquely sorted permutations in
/// `S_{2k+1}` starting with `ℓ`.
pub fn first_entry_distribution(k: usize, dynamics: &Dynamics) -> Result<Distribution> {
    let mut dist = Distribution::new(format!("first entry, n = {}", 2 * k + 1));
    for p in uniquely_sorted(2 * k + 1, dynamics)? {
        dist.add(p.at(1));
    }
    Ok(dist)
}

/// Hotspots of the uniquely sorted permutations in `S_{2k+1}`.
///
/// For `k = 0` the hotspot is undefined, and the distribution is empty.
pub fn hotspot_distribution(k: usize, dynamics: &Dynamics) -> Result<Distribution> {
    let mut dist = Distribution::new(format!("hotspot, n = {}", 2 * k + 1));
    for p in uniquely_sorted(2 * k + 1, dynamics)? {
        if let Some(h) = hotspot_unchecked(&p) {
            dist.add(h);
        }
    }
    Ok(dist)
}
