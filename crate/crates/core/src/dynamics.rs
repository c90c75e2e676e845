//! The stack-sorting map as a dynamical system on `S_n`.
//!
//! Everything here is exact brute force. For each `n` the image of every
//! permutation under `s` is computed once, indexed by lexicographic rank, and
//! cached for the life of the process; preimages, fertility, `t`-sortedness
//! and the stack-sorting tree are all read off that table.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{stack_sort_into, Permutation};
use crate::symmetric::{self, factorial, rank, unrank};

/// Default largest `n` for exhaustive work (`10! ≈ 3.6M` permutations).
pub const DEFAULT_CAP: usize = 10;

/// Hard ceiling on the cap; the rank tables for `n = 11` already take ~0.5 GB.
pub const MAX_CAP: usize = 11;

/// `s` tabulated over `S_n` by rank, with the inverse relation in CSR form.
pub struct SortTable {
    n: usize,
    image: Vec<u32>,
    offsets: Vec<u32>,
    preimages: Vec<u32>,
}

impl SortTable {
    fn build(n: usize) -> SortTable {
        let total = factorial(n) as usize;
        let image: Vec<u32> = symmetric::rank_chunks(n)
            .into_par_iter()
            .flat_map_iter(|(lo, hi)| {
                let mut cur = unrank(n, lo);
                let mut out = Vec::with_capacity(n);
                let mut stack = Vec::with_capacity(n);
                let mut chunk = Vec::with_capacity((hi - lo) as usize);
                for r in lo..hi {
                    stack_sort_into(&cur, &mut out, &mut stack);
                    chunk.push(rank(&out) as u32);
                    if r + 1 < hi {
                        symmetric::next_lex(&mut cur);
                    }
                }
                chunk
            })
            .collect();

        // Counting sort by image keeps each preimage list in rank order.
        let mut offsets = vec![0u32; total + 1];
        for &im in &image {
            offsets[im as usize + 1] += 1;
        }
        for i in 0..total {
            offsets[i + 1] += offsets[i];
        }
        let mut fill = offsets.clone();
        let mut preimages = vec![0u32; total];
        for (r, &im) in image.iter().enumerate() {
            preimages[fill[im as usize] as usize] = r as u32;
            fill[im as usize] += 1;
        }
        SortTable { n, image, offsets, preimages }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    /// Rank of `s(p)` where `p` has rank `r`.
    pub fn image(&self, r: u32) -> u32 {
        self.image[r as usize]
    }

    /// Ranks of all `σ` with `s(σ)` of rank `r`, ascending.
    pub fn preimages(&self, r: u32) -> &[u32] {
        let (lo, hi) = (self.offsets[r as usize], self.offsets[r as usize + 1]);
        &self.preimages[lo as usize..hi as usize]
    }

    pub fn fertility(&self, r: u32) -> usize {
        (self.offsets[r as usize + 1] - self.offsets[r as usize]) as usize
    }

    pub fn perm(&self, r: u32) -> Permutation {
        Permutation::from_vec_unchecked(unrank(self.n, r as u64))
    }
}

static TABLES: [OnceLock<Arc<SortTable>>; MAX_CAP + 1] = [const { OnceLock::new() }; MAX_CAP + 1];

fn table(n: usize) -> Arc<SortTable> {
    assert!(n <= MAX_CAP);
    TABLES[n].get_or_init(|| Arc::new(SortTable::build(n))).clone()
}

/// Preimages of a permutation under `s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FertilityReport {
    pub target: Permutation,
    pub fertility: usize,
    /// Lexicographically ordered, over the same entry set as `target`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub preimages: Option<Vec<Permutation>>,
}

/// Entry point for exhaustive queries, bounded by a cap on `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Dynamics {
    cap: usize,
}

impl Default for Dynamics {
    fn default() -> Self {
        Dynamics { cap: DEFAULT_CAP }
    }
}

impl Dynamics {
    /// Caps above [`MAX_CAP`] are clamped.
    pub fn with_cap(cap: usize) -> Self {
        Dynamics { cap: cap.min(MAX_CAP) }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// The cached table for `S_n`, building it on first use.
    pub fn table(&self, n: usize) -> Result<Arc<SortTable>> {
        self.ensure_within_cap(n)?;
        Ok(table(n))
    }

    pub fn ensure_within_cap(&self, n: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::Empty);
        }
        if n > self.cap {
            return Err(Error::CapExceeded { n, cap: self.cap });
        }
        Ok(())
    }

    fn locate(&self, p: &Permutation) -> Result<(Arc<SortTable>, u32)> {
        let t = self.table(p.len())?;
        let r = rank(p.standardize().entries()) as u32;
        Ok((t, r))
    }

    /// All `σ` with `s(σ) = p`.
    pub fn preimages(&self, p: &Permutation) -> Result<FertilityReport> {
        let (table, r) = self.locate(p)?;
        let mut values = p.entries().to_vec();
        values.sort_unstable();
        let relabel = |q: Permutation| {
            let entries = q.entries().iter().map(|&x| values[x as usize - 1]).collect();
            Permutation::from_vec_unchecked(entries)
        };
        let list: Vec<_> = table.preimages(r).iter().map(|&q| relabel(table.perm(q))).collect();
        Ok(FertilityReport { target: p.clone(), fertility: list.len(), preimages: Some(list) })
    }

    pub fn fertility(&self, p: &Permutation) -> Result<usize> {
        let (table, r) = self.locate(p)?;
        Ok(table.fertility(r))
    }

    /// In the image of `s`.
    pub fn is_sorted(&self, p: &Permutation) -> Result<bool> {
        Ok(self.fertility(p)? >= 1)
    }

    /// Exactly one preimage under `s`.
    pub fn is_uniquely_sorted(&self, p: &Permutation) -> Result<bool> {
        Ok(self.fertility(p)? == 1)
    }

    /// Whether `p = s^t(μ)` for some `μ`, by chaining backwards through
    /// preimage sets.
    pub fn is_t_sorted(&self, p: &Permutation, t: usize) -> Result<bool> {
        let (table, r) = self.locate(p)?;
        let mut frontier = vec![r];
        for _ in 0..t {
            // The identity is its own preimage, so once reached it persists.
            if frontier.first() == Some(&0) {
                return Ok(true);
            }
            let next: BTreeSet<u32> =
                frontier.iter().flat_map(|&q| table.preimages(q).iter().copied()).collect();
            if next.is_empty() {
                return Ok(false);
            }
            frontier = next.into_iter().collect();
        }
        Ok(true)
    }

    /// `{ s^t(μ) : μ ∈ S_n }`, lexicographically ordered.
    pub fn image_of_iterate(&self, n: usize, t: usize) -> Result<Vec<Permutation>> {
        let table = self.table(n)?;
        // s^(n-1) is constant, so larger t changes nothing.
        let steps = t.min(n.saturating_sub(1));
        let hit: Vec<bool> = {
            let mut hit = vec![false; table.len()];
            let targets: Vec<u32> = (0..table.len() as u32)
                .into_par_iter()
                .map(|mut r| {
                    for _ in 0..steps {
                        r = table.image(r);
                    }
                    r
                })
                .collect();
            for r in targets {
                hit[r as usize] = true;
            }
            hit
        };
        Ok(hit
            .iter()
            .enumerate()
            .filter(|(_, &h)| h)
            .map(|(r, _)| table.perm(r as u32))
            .collect())
    }

    pub fn build_tree(&self, n: usize) -> Result<StackSortTree> {
        let table = self.table(n)?;
        Ok(StackSortTree::from_table(&table))
    }
}

/// `s^t(p)` is increasing.
pub fn is_t_stack_sortable(p: &Permutation, t: usize) -> bool {
    p.stack_sort_iter(t).is_increasing()
}

/// The stack-sorting tree on `S_n`: root `12⋯n`, and each non-identity `σ`
/// is a child of `s(σ)`.
///
/// Height is the length of the longest chain of descendants. For the root
/// this is the largest depth in the tree, `n - 1`; every other node has
/// `height(p) >= t` exactly when `p` is `t`-sorted.
#[derive(Clone, Debug)]
pub struct StackSortTree {
    n: usize,
    parent: Vec<Option<u32>>,
    depth: Vec<u8>,
    height: Vec<u8>,
}

impl StackSortTree {
    fn from_table(table: &SortTable) -> StackSortTree {
        let total = table.len();
        let parent: Vec<Option<u32>> =
            (0..total as u32).map(|r| (r != 0).then(|| table.image(r))).collect();

        let mut depth = vec![u8::MAX; total];
        depth[0] = 0;
        let mut path = Vec::new();
        for r in 0..total {
            let mut cur = r;
            while depth[cur] == u8::MAX {
                path.push(cur);
                cur = parent[cur].expect("only the root lacks a parent") as usize;
            }
            let mut d = depth[cur];
            while let Some(q) = path.pop() {
                d += 1;
                depth[q] = d;
            }
        }

        // Children are strictly deeper than their parent, so a pass in
        // decreasing depth sees every child before its parent.
        let mut order: Vec<usize> = (0..total).collect();
        order.sort_unstable_by_key(|&r| std::cmp::Reverse(depth[r]));
        let mut height = vec![0u8; total];
        for r in order {
            if let Some(p) = parent[r] {
                let p = p as usize;
                height[p] = height[p].max(height[r] + 1);
            }
        }
        StackSortTree { n: table.n(), parent, depth, height }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    fn index(&self, p: &Permutation) -> Option<usize> {
        (p.len() == self.n).then(|| rank(p.standardize().entries()) as usize)
    }

    pub fn parent(&self, p: &Permutation) -> Option<Permutation> {
        let r = self.index(p)?;
        self.parent[r].map(|q| Permutation::from_vec_unchecked(unrank(self.n, q as u64)))
    }

    pub fn depth(&self, p: &Permutation) -> Option<usize> {
        self.index(p).map(|r| self.depth[r] as usize)
    }

    pub fn height(&self, p: &Permutation) -> Option<usize> {
        self.index(p).map(|r| self.height[r] as usize)
    }

    /// All nodes in lexicographic order.
    pub fn nodes(&self) -> impl Iterator<Item = TreeNode> + '_ {
        symmetric::all(self.n).enumerate().map(|(r, perm)| TreeNode {
            perm,
            parent: self.parent[r].map(|q| Permutation::from_vec_unchecked(unrank(self.n, q as u64))),
            depth: self.depth[r] as usize,
            height: self.height[r] as usize,
        })
    }

    pub fn max_depth(&self) -> usize {
        self.depth.iter().copied().max().unwrap_or(0) as usize
    }

    pub fn export(&self) -> TreeExport {
        TreeExport { n: self.n, nodes: self.nodes().collect() }
    }

    /// Graphviz digraph with an edge from each node to its parent.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        writeln!(out, "digraph stack_sorting_tree_{} {{", self.n).unwrap();
        writeln!(out, "  rankdir=BT;").unwrap();
        for node in self.nodes() {
            let id = node.perm.compact();
            writeln!(
                out,
                "  \"{id}\" [label=\"{id}\\ndepth {} height {}\"];",
                node.depth, node.height
            )
            .unwrap();
            if let Some(parent) = &node.parent {
                writeln!(out, "  \"{id}\" -> \"{}\";", parent.compact()).unwrap();
            }
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeNode {
    pub perm: Permutation,
    pub parent: Option<Permutation>,
    pub depth: usize,
    pub height: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeExport {
    pub n: usize,
    pub nodes: Vec<TreeNode>,
}
