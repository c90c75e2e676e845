//! Lexicographic enumeration and ranking of `S_n`.
//!
//! Ranks are positions in lexicographic order (the Lehmer code read in the
//! factorial number system), so iterating ranks `0..n!` visits `S_n` in the
//! same order as [`next_lex`].

use crate::perm::Permutation;

/// Largest `n` for which `n!` fits the `u32` rank space.
pub const MAX_RANKED_N: usize = 12;

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Lexicographic rank of a standardized permutation given as entries.
pub fn rank(entries: &[u32]) -> u64 {
    let n = entries.len();
    let mut used: u32 = 0;
    let mut r = 0u64;
    for (i, &x) in entries.iter().enumerate() {
        // Entries smaller than x still unused.
        let below = (x - 1) - (used & ((1u32 << (x - 1)) - 1)).count_ones();
        r = r * (n - i) as u64 + below as u64;
        used |= 1 << (x - 1);
    }
    r
}

/// Inverse of [`rank`].
pub fn unrank(n: usize, mut r: u64) -> Vec<u32> {
    let mut digits = vec![0usize; n];
    for i in (0..n).rev() {
        let base = (n - i) as u64;
        digits[i] = (r % base) as usize;
        r /= base;
    }
    let mut pool: Vec<u32> = (1..=n as u32).collect();
    digits.into_iter().map(|d| pool.remove(d)).collect()
}

/// Advances `p` to its lexicographic successor; returns false (leaving `p`
/// untouched) at the last permutation.
pub fn next_lex(p: &mut [u32]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] > p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] < p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// All of `S_n` in lexicographic order.
pub fn all(n: usize) -> AllPermutations {
    AllPermutations { next: Some((1..=n as u32).collect()) }
}

pub struct AllPermutations {
    next: Option<Vec<u32>>,
}

impl Iterator for AllPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        if next_lex(&mut succ) {
            self.next = Some(succ);
        }
        Some(Permutation::from_vec_unchecked(cur))
    }
}

/// Splits `0..n!` into contiguous rank ranges for parallel workers.
pub(crate) fn rank_chunks(n: usize) -> Vec<(u64, u64)> {
    let total = factorial(n);
    let chunk = 4096u64.max(total / 256);
    (0..total)
        .step_by(chunk as usize)
        .map(|lo| (lo, (lo + chunk).min(total)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn all_is_lexicographic_and_complete() {
        for n in 0..=6 {
            let v: Vec<_> = all(n).collect();
            assert_eq!(v.len() as u64, factorial(n));
            assert!(v.windows(2).all(|w| w[0] < w[1]));
            for (r, p) in v.iter().enumerate() {
                assert_eq!(rank(p.entries()), r as u64);
                assert_eq!(unrank(n, r as u64), p.entries());
            }
        }
    }

    #[test]
    fn chunks_cover_rank_space() {
        for n in [1, 5, 8] {
            let c = rank_chunks(n);
            assert_eq!(c.first().unwrap().0, 0);
            assert_eq!(c.last().unwrap().1, factorial(n));
            assert!(c.windows(2).all(|w| w[0].1 == w[1].0));
        }
    }

    proptest! {
        #[test]
        fn rank_unrank_roundtrip(n in 1usize..=12, seed in any::<u64>()) {
            let r = seed % factorial(n);
            prop_assert_eq!(rank(&unrank(n, r)), r);
        }
    }
}
