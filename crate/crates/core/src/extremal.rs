//! `t`-sorted permutations with the largest possible number of descents.
//!
//! A `t`-sorted permutation of length `n` has at most `⌊(n-t)/2⌋` descents.
//! When `n ≡ t (mod 2)` and `t >= 2`, the ones attaining this are exactly the
//! permutations whose left-to-right maxima sit at positions
//! `1, 3, 5, …, n-t+1, n-t+2, …, n`, and there are `(n-t-1)!!` of them.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::dynamics::Dynamics;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::stats::double_factorial;

/// A validated `(n, t)` pair together with its descent bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalQuery {
    pub n: usize,
    pub t: usize,
    pub bound: usize,
}

impl ExtremalQuery {
    pub fn new(n: usize, t: usize) -> Result<Self> {
        Ok(ExtremalQuery { n, t, bound: max_descents(n, t)? })
    }

    pub fn same_parity(&self) -> bool {
        (self.n - self.t) % 2 == 0
    }
}

fn check_range(n: usize, t: usize, min_t: usize) -> Result<()> {
    if t < min_t || t > n {
        return Err(Error::OutOfRange { n, t, min_t });
    }
    Ok(())
}

fn check_same_parity(n: usize, t: usize) -> Result<()> {
    check_range(n, t, 2)?;
    if (n - t) % 2 != 0 {
        return Err(Error::ParityMismatch { n, t });
    }
    Ok(())
}

/// The largest number of descents of a `t`-sorted permutation in `S_n`,
/// `⌊(n-t)/2⌋`.
pub fn max_descents(n: usize, t: usize) -> Result<usize> {
    check_range(n, t, 1)?;
    Ok((n - t) / 2)
}

/// Positions `1, 3, …, n-t+1` followed by `n-t+2, …, n`.
pub fn extremal_ltr_positions(n: usize, t: usize) -> Vec<usize> {
    let m = n - t;
    (1..=m + 1).step_by(2).chain(m + 2..=n).collect()
}

/// Whether the left-to-right maxima of `p` are exactly at
/// [`extremal_ltr_positions`].
pub fn matches_extremal_pattern(p: &Permutation, t: usize) -> Result<bool> {
    check_same_parity(p.len(), t)?;
    Ok(p.ltr_max_positions() == extremal_ltr_positions(p.len(), t))
}

/// All permutations with the extremal left-to-right maxima pattern, in
/// lexicographic order.
///
/// The plot is grown left to right over the first `n - t` points: an
/// odd-indexed point goes above everything so far, and an even-indexed point
/// goes anywhere below its left neighbour. The last `t` points are stacked on
/// top in increasing order.
pub fn enumerate_extremal_pattern(n: usize, t: usize) -> Result<Vec<Permutation>> {
    check_same_parity(n, t)?;
    Ok(pattern_permutations(n, t))
}

/// Same construction with no lower bound on `t`; `n - t` must be even.
pub(crate) fn pattern_permutations(n: usize, t: usize) -> Vec<Permutation> {
    debug_assert!(t <= n && (n - t) % 2 == 0);
    let mut out = Vec::new();
    let mut by_height = Vec::with_capacity(n);
    place(n, t, 1, &mut by_height, &mut out);
    out.sort_unstable();
    out
}

/// `by_height` lists the positions placed so far from lowest to highest.
fn place(n: usize, t: usize, pos: usize, by_height: &mut Vec<usize>, out: &mut Vec<Permutation>) {
    let m = n - t;
    if pos > m {
        let mut entries = vec![0u32; n];
        for (h, &q) in by_height.iter().chain(&(m + 1..=n).collect::<Vec<_>>()).enumerate() {
            entries[q - 1] = h as u32 + 1;
        }
        out.push(Permutation::from_vec_unchecked(entries));
        return;
    }
    if pos % 2 == 1 {
        by_height.push(pos);
        place(n, t, pos + 1, by_height, out);
        by_height.pop();
    } else {
        // Any slot strictly below the current top, which is position pos - 1.
        for slot in 0..by_height.len() {
            by_height.insert(slot, pos);
            place(n, t, pos + 1, by_height, out);
            by_height.remove(slot);
        }
    }
}

/// `π = π⁽⁰⁾, π⁽¹⁾, …, π⁽ᵗ⁾` with `s(π⁽ⁱ⁾) = π⁽ⁱ⁻¹⁾`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftChain {
    pub stages: Vec<Permutation>,
}

impl LiftChain {
    /// The permutation `μ` with `s^t(μ) = stages[0]`.
    pub fn top(&self) -> &Permutation {
        self.stages.last().expect("a lift chain has at least one stage")
    }

    /// Checks `s(stages[i]) = stages[i-1]` for every link.
    pub fn is_sound(&self) -> bool {
        self.stages.windows(2).all(|w| w[1].stack_sort() == w[0])
    }
}

/// Lifts an extremal `p` to a `t`-fold preimage by sliding the entries at
/// positions `2, 4, …, n-t` one step further right at each stage.
pub fn build_lift_chain(p: &Permutation, t: usize) -> Result<LiftChain> {
    if !matches_extremal_pattern(&p.standardize(), t)? {
        return Err(Error::NotExtremal { perm: p.to_string(), t });
    }
    Ok(LiftChain { stages: slide_stages(p, t) })
}

fn slide_stages(p: &Permutation, t: usize) -> Vec<Permutation> {
    let n = p.len();
    let movers: Vec<usize> = (2..=n - t).step_by(2).collect();
    (0..=t)
        .map(|shift| {
            let mut entries = vec![0u32; n];
            let mut taken = vec![false; n + 1];
            for &q in &movers {
                entries[q + shift - 1] = p.at(q);
                taken[q + shift] = true;
            }
            let mut free = (1..=n).filter(|&q| !taken[q]);
            for q in (1..=n).filter(|q| !movers.contains(q)) {
                entries[free.next().unwrap() - 1] = p.at(q);
            }
            Permutation::from_vec_unchecked(entries)
        })
        .collect()
}

/// The `t`-sorted permutations of `S_n` with `⌊(n-t)/2⌋` descents, by
/// exhaustive search.
pub fn extremal_set_brute(n: usize, t: usize, dynamics: &Dynamics) -> Result<Vec<Permutation>> {
    let bound = max_descents(n, t)?;
    Ok(dynamics.image_of_iterate(n, t)?.into_iter().filter(|p| p.des() == bound).collect())
}

/// Number of `t`-sorted permutations in `S_n` attaining the descent bound.
///
/// Same parity uses `(n-t-1)!!`. Opposite parity has no known closed form, so
/// it is counted exhaustively and needs `n` within the cap.
pub fn count_extremal(n: usize, t: usize, dynamics: &Dynamics) -> Result<BigUint> {
    check_range(n, t, 2)?;
    if (n - t) % 2 == 0 {
        double_factorial(n as i64 - t as i64 - 1)
    } else {
        Ok(BigUint::from(extremal_set_brute(n, t, dynamics)?.len()))
    }
}

/// A `t`-sorted permutation in `S_n` with `(n-t-1)/2` descents when
/// `n ≢ t (mod 2)`: `1 ⊕ λ`, where `λ` is the lexicographically least
/// extremal permutation of length `n - 1`.
pub fn odd_case_witness(n: usize, t: usize) -> Result<Permutation> {
    check_range(n, t, 1)?;
    if (n - t) % 2 == 0 {
        return Err(Error::ParityMatches { n, t });
    }
    least_extremal(n - 1, t).one_plus()
}

/// `2 1 4 3 ⋯ m (m-1)` followed by `m+1, …, n`, where `m = n - t`.
pub(crate) fn least_extremal(n: usize, t: usize) -> Permutation {
    let m = (n - t) as u32;
    let entries = (1..=m)
        .map(|i| if i % 2 == 1 { i + 1 } else { i - 1 })
        .chain(m + 1..=n as u32)
        .collect();
    Permutation::from_vec_unchecked(entries)
}
