//! Exhaustive checks of the structural theorems over `S_n` for small `n`.
//!
//! Each [`Claim`] scans every relevant permutation up to `max_n` and reports
//! the first counterexample in lexicographic order.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::Dynamics;
use crate::error::Result;
use crate::extremal::{enumerate_extremal_pattern, extremal_set_brute};
use crate::perm::Permutation;
use crate::stats::{self, catalan, double_factorial, west_count};
use crate::symmetric;
use crate::vhc::is_sorted_via_vhc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Claim {
    /// Fertility one iff sorted with `(n-1)/2` descents.
    Thm1,
    /// The descent bound `⌊(n-t)/2⌋` is attained exactly.
    Thm2,
    /// Extremal same-parity set equals the left-to-right maxima pattern, of
    /// size `(n-t-1)!!`.
    Thm3,
    /// Sorted iff a valid hook configuration exists.
    Thm4,
    /// No uniquely sorted permutation has a `π_{ℓ+1} < π_{ℓ+2} < π_ℓ` window.
    Cor1,
    /// Descent bottoms of `s(σ)` are descent bottoms of `σ`, and a sorted
    /// preimage of an extremal 2-sorted permutation has no double descents.
    Claim1,
    West,
    Catalan,
    /// First-entry counts of uniquely sorted permutations are palindromic.
    Symmetry,
    /// Hotspot `ℓ - 1` is as common as first entry `ℓ`.
    HotspotShift,
}

impl Claim {
    pub const ALL: [Claim; 10] = [
        Claim::Thm1,
        Claim::Thm2,
        Claim::Thm3,
        Claim::Thm4,
        Claim::Cor1,
        Claim::Claim1,
        Claim::West,
        Claim::Catalan,
        Claim::Symmetry,
        Claim::HotspotShift,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Claim::Thm1 => "thm1",
            Claim::Thm2 => "thm2",
            Claim::Thm3 => "thm3",
            Claim::Thm4 => "thm4",
            Claim::Cor1 => "cor1",
            Claim::Claim1 => "claim1",
            Claim::West => "west",
            Claim::Catalan => "catalan",
            Claim::Symmetry => "symmetry",
            Claim::HotspotShift => "hotspot-shift",
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Claim {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Claim::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown claim `{s}`"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub permutation: Option<Permutation>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationResult {
    pub claim: Claim,
    pub max_n: usize,
    /// Inclusive range of `t` covered, for claims that involve iterates.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_range: Option<(usize, usize)>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    #[serde(with = "secs")]
    pub elapsed: Duration,
}

impl VerificationResult {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl fmt::Display for VerificationResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match self.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
        };
        write!(f, "{status} {:<14} n <= {}", self.claim.name(), self.max_n)?;
        if let Some((lo, hi)) = self.t_range {
            write!(f, ", t in {lo}..={hi}")?;
        }
        write!(f, " ({:.3}s)", self.elapsed.as_secs_f64())?;
        if let Some(c) = &self.counterexample {
            write!(f, "\n  counterexample at n = {}", c.n)?;
            if let Some(t) = c.t {
                write!(f, ", t = {t}")?;
            }
            if let Some(p) = &c.permutation {
                write!(f, ": {}", p.compact())?;
            }
            write!(f, " ({})", c.detail)?;
        }
        Ok(())
    }
}

mod secs {
    use std::time::Duration;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(d.as_secs_f64())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        Ok(Duration::from_secs_f64(f64::deserialize(d)?))
    }
}

fn cx(n: usize, t: Option<usize>, p: Option<Permutation>, detail: impl Into<String>) -> Counterexample {
    Counterexample { n, t, permutation: p, detail: detail.into() }
}

/// First permutation of `S_n`, in lexicographic order, on which `bad`
/// returns a message.
fn scan<F>(dynamics: &Dynamics, n: usize, bad: F) -> Result<Option<Counterexample>>
where
    F: Fn(&Permutation, usize) -> Option<String> + Sync,
{
    let table = dynamics.table(n)?;
    Ok((0..table.len() as u32).into_par_iter().find_map_first(|r| {
        let p = table.perm(r);
        bad(&p, table.fertility(r)).map(|msg| cx(n, None, Some(p), msg))
    }))
}

/// Runs one claim for all `n` in `1..=max_n`.
pub fn run(claim: Claim, max_n: usize, dynamics: &Dynamics) -> Result<VerificationResult> {
    let start = Instant::now();
    let mut t_range = None;
    let mut found = None;
    for n in 1..=max_n {
        dynamics.ensure_within_cap(n)?;
        let c = match claim {
            Claim::Thm1 => scan(dynamics, n, |p, fert| {
                let characterized = fert >= 1 && 2 * p.des() + 1 == n;
                ((fert == 1) != characterized).then(|| format!("fertility {fert}, {} descents", p.des()))
            })?,
            Claim::Thm2 => {
                t_range = Some((1, max_n));
                thm2(dynamics, n)?
            }
            Claim::Thm3 => {
                t_range = Some((2, max_n));
                thm3(dynamics, n)?
            }
            Claim::Thm4 => scan(dynamics, n, |p, fert| {
                (is_sorted_via_vhc(p) != (fert >= 1)).then(|| format!("fertility {fert} disagrees with hook configurations"))
            })?,
            Claim::Cor1 => scan(dynamics, n, |p, fert| {
                (fert == 1).then(|| p.corollary1_witness()).flatten().map(|l| format!("window at l = {l}"))
            })?,
            Claim::Claim1 => claim1(dynamics, n)?,
            Claim::West => {
                let brute = symmetric::all(n).filter(|p| p.stack_sort_iter(2).is_increasing()).count();
                let formula = west_count(n as u64);
                (formula != BigUint::from(brute))
                    .then(|| cx(n, None, None, format!("formula {formula}, brute force {brute}")))
            }
            Claim::Catalan => {
                let avoiders = symmetric::all(n).filter(|p| p.avoids_231()).count();
                let sortable = symmetric::all(n).filter(|p| p.stack_sort().is_increasing()).count();
                let formula = catalan(n as u64);
                (formula != BigUint::from(avoiders) || avoiders != sortable).then(|| {
                    cx(n, None, None, format!("formula {formula}, 231-avoiders {avoiders}, sortable {sortable}"))
                })
            }
            Claim::Symmetry => match odd_k(n) {
                None => None,
                Some(k) => {
                    let dist = stats::first_entry_distribution(k, dynamics)?;
                    (1..=n as u32).find(|&l| dist.get(l) != dist.get(n as u32 + 1 - l)).map(|l| {
                        cx(n, None, None, format!("A({l}) = {} but A({}) = {}", dist.get(l), n as u32 + 1 - l, dist.get(n as u32 + 1 - l)))
                    })
                }
            },
            Claim::HotspotShift => match odd_k(n).filter(|&k| k >= 1) {
                None => None,
                Some(k) => {
                    let first = stats::first_entry_distribution(k, dynamics)?;
                    let hot = stats::hotspot_distribution(k, dynamics)?;
                    (1..=n as u32).find(|&l| hot.get(l - 1) != first.get(l)).map(|l| {
                        cx(n, None, None, format!("hotspot {} count {} vs first entry {l} count {}", l - 1, hot.get(l - 1), first.get(l)))
                    })
                }
            },
        };
        if c.is_some() {
            found = c;
            break;
        }
    }
    Ok(VerificationResult {
        claim,
        max_n,
        t_range,
        status: if found.is_some() { Status::Fail } else { Status::Pass },
        counterexample: found,
        elapsed: start.elapsed(),
    })
}

fn odd_k(n: usize) -> Option<usize> {
    (n % 2 == 1).then_some((n - 1) / 2)
}

fn thm2(dynamics: &Dynamics, n: usize) -> Result<Option<Counterexample>> {
    for t in 1..=n {
        let image = dynamics.image_of_iterate(n, t)?;
        let best = image.iter().map(|p| p.des()).max().unwrap_or(0);
        if best != (n - t) / 2 {
            let witness = image.into_iter().max_by_key(|p| p.des());
            return Ok(Some(cx(n, Some(t), witness, format!("max descents {best}, bound {}", (n - t) / 2))));
        }
    }
    Ok(None)
}

fn thm3(dynamics: &Dynamics, n: usize) -> Result<Option<Counterexample>> {
    for t in (2..=n).filter(|t| (n - t) % 2 == 0) {
        let brute = extremal_set_brute(n, t, dynamics)?;
        let built = enumerate_extremal_pattern(n, t)?;
        if brute != built {
            let odd = brute.iter().find(|p| !built.contains(p)).or_else(|| built.iter().find(|p| !brute.contains(p)));
            return Ok(Some(cx(n, Some(t), odd.cloned(), "extremal set differs from the left-to-right maxima pattern")));
        }
        let expected = double_factorial(n as i64 - t as i64 - 1)?;
        if BigUint::from(built.len()) != expected {
            return Ok(Some(cx(n, Some(t), None, format!("{} permutations, expected {expected}", built.len()))));
        }
    }
    Ok(None)
}

fn claim1(dynamics: &Dynamics, n: usize) -> Result<Option<Counterexample>> {
    let preserved = scan(dynamics, n, |sigma, _| {
        let image = sigma.stack_sort();
        let below = sigma.descent_stats().descent_bottoms;
        image
            .descent_stats()
            .descent_bottoms
            .iter()
            .find(|b| !below.contains(b))
            .map(|b| format!("descent bottom {b} of s(σ) is not one of σ"))
    })?;
    if preserved.is_some() || n % 2 == 1 || n < 2 {
        return Ok(preserved);
    }
    let table = dynamics.table(n)?;
    for pi in dynamics.image_of_iterate(n, 2)?.into_iter().filter(|p| 2 * p.des() + 2 == n) {
        let r = symmetric::rank(pi.entries()) as u32;
        for &q in table.preimages(r) {
            if table.fertility(q) == 0 {
                continue;
            }
            let sigma = table.perm(q);
            if let Some(&i) = sigma.descent_stats().double_descents.first() {
                return Ok(Some(cx(n, Some(2), Some(sigma), format!("double descent at {i} above {}", pi.compact()))));
            }
        }
    }
    Ok(None)
}

/// Runs every claim in the fixed order of [`Claim::ALL`].
pub fn run_all(max_n: usize, dynamics: &Dynamics) -> Result<Vec<VerificationResult>> {
    Claim::ALL.iter().map(|&c| run(c, max_n, dynamics)).collect()
}
