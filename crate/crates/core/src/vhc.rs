//! Hooks on permutation plots and valid hook configurations.
//!
//! The plot of `π` is the point set `{(i, π_i)}`. A hook starts at a plot
//! point `(i, π_i)`, runs straight up to height `π_j`, then right to the plot
//! point `(j, π_j)`, so it needs `i < j` and `π_i < π_j`. A valid hook
//! configuration assigns one hook to each descent `d_u`, with southwest
//! endpoint `(d_u, π_{d_u})`, such that
//!
//! 1. no plot point lies directly above a hook, and
//! 2. no two hooks meet, except that the northeast endpoint of one may be the
//!    southwest endpoint of another.
//!
//! A permutation has such a configuration exactly when it is in the image of
//! the stack-sorting map.
//!
//! "Directly above" is taken to mean a point `(a, π_a)` with `sw < a < ne` and
//! `π_a > π_ne`: the column of `sw` holds no other plot point, and both
//! endpoints lie on the hook itself.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// A hook, by the 1-based positions of its endpoints in a host permutation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Hook {
    pub sw: usize,
    pub ne: usize,
}

impl Hook {
    /// Validates the hook against `host`.
    pub fn new(host: &Permutation, sw: usize, ne: usize) -> Result<Hook> {
        let n = host.len();
        if sw == 0 || ne > n || sw >= ne {
            return Err(Error::InvalidHook { sw, ne, reason: "need 1 <= sw < ne <= n" });
        }
        if host.at(sw) >= host.at(ne) {
            return Err(Error::InvalidHook { sw, ne, reason: "southwest endpoint must be lower" });
        }
        Ok(Hook { sw, ne })
    }

    /// The two axis-parallel pieces of the hook as closed boxes
    /// `(x_lo, x_hi, y_lo, y_hi)`: the vertical run, then the horizontal run.
    fn segments(&self, host: &Permutation) -> [Segment; 2] {
        let (x0, y0, x1, y1) = (self.sw as u32, host.at(self.sw), self.ne as u32, host.at(self.ne));
        [Segment { x: (x0, x0), y: (y0, y1) }, Segment { x: (x0, x1), y: (y1, y1) }]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Segment {
    x: (u32, u32),
    y: (u32, u32),
}

impl Segment {
    fn intersect(&self, other: &Segment) -> Option<Segment> {
        let x = (self.x.0.max(other.x.0), self.x.1.min(other.x.1));
        let y = (self.y.0.max(other.y.0), self.y.1.min(other.y.1));
        (x.0 <= x.1 && y.0 <= y.1).then_some(Segment { x, y })
    }

    fn is_point(&self, x: u32, y: u32) -> bool {
        self.x == (x, x) && self.y == (y, y)
    }
}

/// Where a hook's path sits in one column of the plot.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathSpan {
    /// The southwest column, covering heights `low..=high`.
    Vertical { low: u32, high: u32 },
    /// A column on the horizontal run.
    Horizontal(u32),
}

/// The path of `h` in column `x`, or `None` outside `sw..=ne`.
pub fn hook_path_height(host: &Permutation, h: Hook, x: usize) -> Option<PathSpan> {
    if x == h.sw {
        Some(PathSpan::Vertical { low: host.at(h.sw), high: host.at(h.ne) })
    } else if h.sw < x && x <= h.ne {
        Some(PathSpan::Horizontal(host.at(h.ne)))
    } else {
        None
    }
}

/// Whether the plot point in column `a` lies directly above `h`.
pub fn point_above_hook(host: &Permutation, h: Hook, a: usize) -> bool {
    h.sw < a && a < h.ne && host.at(a) > host.at(h.ne)
}

/// Whether two hooks meet anywhere other than the one permitted touching
/// point, the northeast endpoint of one being the southwest endpoint of the
/// other.
pub fn hooks_conflict(host: &Permutation, h1: Hook, h2: Hook) -> bool {
    let allowed = if h1.ne == h2.sw {
        Some(h1.ne)
    } else if h2.ne == h1.sw {
        Some(h2.ne)
    } else {
        None
    };
    let allowed = allowed.map(|x| (x as u32, host.at(x)));
    let (a, b) = (h1.segments(host), h2.segments(host));
    a.iter().any(|s| {
        b.iter().any(|t| match s.intersect(t) {
            None => false,
            Some(meet) => allowed.map_or(true, |(x, y)| !meet.is_point(x, y)),
        })
    })
}

/// A tuple of hooks, one per descent in increasing descent order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidHookConfiguration {
    #[serde(rename = "permutation")]
    pub host: Permutation,
    pub hooks: Vec<Hook>,
}

impl ValidHookConfiguration {
    /// Checks all three conditions from scratch.
    pub fn is_valid(&self) -> bool {
        let descents = self.host.descents();
        descents.len() == self.hooks.len()
            && self.hooks.iter().zip(&descents).all(|(h, &d)| {
                h.sw == d
                    && Hook::new(&self.host, h.sw, h.ne).is_ok()
                    && !(h.sw + 1..h.ne).any(|a| point_above_hook(&self.host, *h, a))
            })
            && self.hooks.iter().enumerate().all(|(i, &h)| {
                self.hooks[i + 1..].iter().all(|&g| !hooks_conflict(&self.host, h, g))
            })
    }

    pub fn northeast_positions(&self) -> Vec<usize> {
        self.hooks.iter().map(|h| h.ne).collect()
    }
}

/// Admissible northeast endpoints for a hook rising from `sw`: later, higher
/// points with nothing above the horizontal run.
fn ne_candidates(host: &Permutation, sw: usize) -> Vec<usize> {
    let n = host.len();
    let base = host.at(sw);
    // Scanning right, a candidate must beat every point strictly between.
    let mut ceiling = 0;
    let mut out = Vec::new();
    for j in sw + 1..=n {
        let y = host.at(j);
        if y > base && y > ceiling {
            out.push(j);
        }
        ceiling = ceiling.max(y);
    }
    out
}

fn search(
    host: &Permutation,
    candidates: &[Vec<usize>],
    descents: &[usize],
    chosen: &mut Vec<Hook>,
    visit: &mut dyn FnMut(&[Hook]) -> bool,
) -> bool {
    let u = chosen.len();
    if u == descents.len() {
        return visit(chosen);
    }
    for &ne in &candidates[u] {
        let h = Hook { sw: descents[u], ne };
        if chosen.iter().any(|&g| hooks_conflict(host, g, h)) {
            continue;
        }
        chosen.push(h);
        let stop = search(host, candidates, descents, chosen, visit);
        chosen.pop();
        if stop {
            return true;
        }
    }
    false
}

/// Backtracks over descents left to right; `visit` returns true to stop.
fn for_each_vhc(host: &Permutation, visit: &mut dyn FnMut(&[Hook]) -> bool) {
    let descents = host.descents();
    let candidates: Vec<_> = descents.iter().map(|&d| ne_candidates(host, d)).collect();
    search(host, &candidates, &descents, &mut Vec::with_capacity(descents.len()), visit);
}

/// Every valid hook configuration of `p`, ordered lexicographically by the
/// tuple of northeast positions.
pub fn enumerate_vhcs(p: &Permutation) -> Vec<ValidHookConfiguration> {
    let mut out = Vec::new();
    for_each_vhc(p, &mut |hooks| {
        out.push(ValidHookConfiguration { host: p.clone(), hooks: hooks.to_vec() });
        false
    });
    out
}

pub fn count_vhcs(p: &Permutation) -> usize {
    let mut count = 0;
    for_each_vhc(p, &mut |_| {
        count += 1;
        false
    });
    count
}

/// The first configuration found, if any.
pub fn find_vhc(p: &Permutation) -> Option<ValidHookConfiguration> {
    let mut found = None;
    for_each_vhc(p, &mut |hooks| {
        found = Some(ValidHookConfiguration { host: p.clone(), hooks: hooks.to_vec() });
        true
    });
    found
}

/// Sortedness certified by the existence of a valid hook configuration.
pub fn is_sorted_via_vhc(p: &Permutation) -> bool {
    find_vhc(p).is_some()
}
