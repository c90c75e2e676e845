//! Permutations in one-line notation, the stack-sorting map and elementary
//! statistics.
//!
//! Positions are 1-based everywhere in the public API: `descents()` returns
//! `i` when `π_i > π_{i+1}`, exactly as one writes it on paper.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of a finite set of positive integers, in one-line notation.
///
/// The entry set need not be `{1, …, n}`; use [`Permutation::standardize`] to
/// map onto `S_n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Permutation {
    entries: Vec<u32>,
}

impl Permutation {
    /// Builds a permutation, checking that entries are distinct and positive.
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Empty);
        }
        let mut seen = entries.clone();
        seen.sort_unstable();
        if seen[0] == 0 {
            return Err(Error::NonPositive("0".into()));
        }
        if let Some(w) = seen.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Duplicate(w[0]));
        }
        Ok(Permutation { entries })
    }

    /// Wraps entries already known to be a valid (possibly empty) permutation.
    pub(crate) fn from_vec_unchecked(entries: Vec<u32>) -> Self {
        debug_assert!({
            let mut s = entries.clone();
            s.sort_unstable();
            s.windows(2).all(|w| w[0] < w[1]) && s.first().map_or(true, |&x| x >= 1)
        });
        Permutation { entries }
    }

    /// The identity `12⋯n`.
    pub fn identity(n: usize) -> Self {
        Permutation { entries: (1..=n as u32).collect() }
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<u32> {
        self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The entry `π_i` at 1-based position `i`.
    ///
    /// # Panics
    ///
    /// Panics if `i` is not in `1..=n`.
    pub fn at(&self, i: usize) -> u32 {
        self.entries[i - 1]
    }

    /// True when the entries are exactly `{1, …, n}`.
    pub fn is_standardized(&self) -> bool {
        let n = self.len() as u32;
        let mut seen = vec![false; self.len()];
        self.entries.iter().all(|&x| {
            (1..=n).contains(&x) && !std::mem::replace(&mut seen[(x - 1) as usize], true)
        })
    }

    /// Replaces each entry by its rank among the entries, giving the
    /// order-isomorphic permutation in `S_n`.
    pub fn standardize(&self) -> Permutation {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_unstable_by_key(|&i| self.entries[i]);
        let mut out = vec![0; self.len()];
        for (rank, &i) in order.iter().enumerate() {
            out[i] = rank as u32 + 1;
        }
        Permutation { entries: out }
    }

    pub fn is_increasing(&self) -> bool {
        self.entries.windows(2).all(|w| w[0] < w[1])
    }

    /// Renders without separators when every entry is a single digit, and
    /// space-separated otherwise.
    pub fn compact(&self) -> String {
        if self.entries.iter().all(|&x| x <= 9) {
            self.entries.iter().map(|x| x.to_string()).collect()
        } else {
            self.to_string()
        }
    }

    /// West's stack-sorting map `s`.
    pub fn stack_sort(&self) -> Permutation {
        let mut out = Vec::with_capacity(self.len());
        stack_sort_into(&self.entries, &mut out, &mut Vec::with_capacity(self.len()));
        Permutation { entries: out }
    }

    /// `s^t`, with `s^0` the identity map.
    pub fn stack_sort_iter(&self, t: usize) -> Permutation {
        let mut cur = self.entries.clone();
        let mut out = Vec::with_capacity(self.len());
        let mut stack = Vec::with_capacity(self.len());
        for _ in 0..t {
            if cur.windows(2).all(|w| w[0] < w[1]) {
                break;
            }
            stack_sort_into(&cur, &mut out, &mut stack);
            std::mem::swap(&mut cur, &mut out);
        }
        Permutation { entries: cur }
    }

    /// The full push/pop log of one pass through the stack.
    pub fn trace(&self) -> SortTrace {
        let mut steps = Vec::with_capacity(2 * self.len());
        let mut stack: Vec<u32> = Vec::new();
        let mut output: Vec<u32> = Vec::new();
        let pop = |stack: &mut Vec<u32>, output: &mut Vec<u32>, steps: &mut Vec<TraceStep>| {
            let top = stack.pop().expect("pop from empty stack");
            output.push(top);
            steps.push(TraceStep {
                action: StackAction::Pop,
                entry: top,
                stack: stack.clone(),
                output: output.clone(),
            });
        };
        for &x in &self.entries {
            while stack.last().is_some_and(|&top| top < x) {
                pop(&mut stack, &mut output, &mut steps);
            }
            stack.push(x);
            steps.push(TraceStep {
                action: StackAction::Push,
                entry: x,
                stack: stack.clone(),
                output: output.clone(),
            });
        }
        while !stack.is_empty() {
            pop(&mut stack, &mut output, &mut steps);
        }
        SortTrace { input: self.clone(), steps }
    }

    /// Descent positions `i` (1-based) with `π_i > π_{i+1}`.
    pub fn descents(&self) -> Vec<usize> {
        self.entries
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] > w[1])
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Number of descents, `des(π)`.
    pub fn des(&self) -> usize {
        self.entries.windows(2).filter(|w| w[0] > w[1]).count()
    }

    /// Positions of the left-to-right maxima.
    pub fn ltr_max_positions(&self) -> Vec<usize> {
        let mut best = 0;
        let mut out = Vec::new();
        for (i, &x) in self.entries.iter().enumerate() {
            if x > best {
                best = x;
                out.push(i + 1);
            }
        }
        out
    }

    pub fn descent_stats(&self) -> DescentStats {
        let descents = self.descents();
        let mut descent_bottoms: Vec<u32> = descents.iter().map(|&i| self.at(i + 1)).collect();
        descent_bottoms.sort_unstable();
        let double_descents = self
            .entries
            .windows(3)
            .enumerate()
            .filter(|(_, w)| w[0] > w[1] && w[1] > w[2])
            .map(|(i, _)| i + 2)
            .collect();
        DescentStats {
            descents,
            descent_bottoms,
            ltr_max_positions: self.ltr_max_positions(),
            double_descents,
        }
    }

    /// True iff there are no `i < j < k` with `π_k < π_i < π_j`.
    pub fn avoids_231(&self) -> bool {
        let p = &self.entries;
        for j in 1..p.len() {
            // The largest entry left of j that is still below π_j plays the "2".
            let two = p[..j].iter().copied().filter(|&x| x < p[j]).max();
            if let Some(two) = two {
                if p[j + 1..].iter().any(|&x| x < two) {
                    return false;
                }
            }
        }
        true
    }

    /// The least `ℓ` with `π_{ℓ+1} < π_{ℓ+2} < π_ℓ`, if any.
    pub fn corollary1_witness(&self) -> Option<usize> {
        self.entries
            .windows(3)
            .position(|w| w[1] < w[2] && w[2] < w[0])
            .map(|i| i + 1)
    }

    /// `1 ⊕ π`: increment every entry and prepend `1`.
    pub fn one_plus(&self) -> Result<Permutation> {
        if !self.is_standardized() {
            return Err(Error::NotStandardized(self.to_string()));
        }
        let entries = std::iter::once(1).chain(self.entries.iter().map(|&x| x + 1)).collect();
        Ok(Permutation { entries })
    }
}

/// Runs `input` through the stack, writing `s(input)` into `out`.
///
/// Both buffers are cleared first; this is the allocation-free kernel used by
/// the exhaustive scans.
pub fn stack_sort_into(input: &[u32], out: &mut Vec<u32>, stack: &mut Vec<u32>) {
    out.clear();
    stack.clear();
    for &x in input {
        while let Some(&top) = stack.last() {
            if top > x {
                break;
            }
            out.push(top);
            stack.pop();
        }
        stack.push(x);
    }
    out.extend(stack.drain(..).rev());
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts `4162` (single-digit entries only) or entries separated by
    /// whitespace and/or commas, e.g. `10 2 7` or `10,2,7`. A single entry
    /// above 9 needs a separator to be read as one number: `12,`.
    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::Empty);
        }
        let separated = text.contains(|c: char| c.is_whitespace() || c == ',');
        let entries = if separated {
            text.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|tok| !tok.is_empty())
                .map(parse_entry)
                .collect::<Result<Vec<_>>>()?
        } else if text.chars().all(|c| c.is_ascii_digit()) {
            text.chars().map(|c| parse_entry(&c.to_string())).collect::<Result<Vec<_>>>()?
        } else {
            vec![parse_entry(text)?]
        };
        Permutation::new(entries)
    }
}

fn parse_entry(tok: &str) -> Result<u32> {
    match tok.parse::<i64>() {
        Ok(v) if v <= 0 => Err(Error::NonPositive(tok.to_string())),
        Ok(v) => u32::try_from(v).map_err(|_| Error::InvalidToken(tok.to_string())),
        Err(_) => Err(Error::InvalidToken(tok.to_string())),
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl TryFrom<Vec<u32>> for Permutation {
    type Error = Error;

    fn try_from(entries: Vec<u32>) -> Result<Self> {
        Permutation::new(entries)
    }
}

impl From<Permutation> for Vec<u32> {
    fn from(p: Permutation) -> Vec<u32> {
        p.entries
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StackAction {
    Push,
    Pop,
}

/// One move of the stack-sorting machine, with the state right after it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub action: StackAction,
    pub entry: u32,
    /// Bottom of the stack first.
    pub stack: Vec<u32>,
    pub output: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SortTrace {
    pub input: Permutation,
    pub steps: Vec<TraceStep>,
}

impl SortTrace {
    /// The output after the last step.
    pub fn output(&self) -> &[u32] {
        self.steps.last().map_or(&[], |s| &s.output)
    }

    /// Re-executes the logged moves from scratch, checking each recorded
    /// state, and returns the final output.
    pub fn replay(&self) -> Option<Vec<u32>> {
        let mut input = self.input.entries().iter();
        let mut stack = Vec::new();
        let mut output = Vec::new();
        for step in &self.steps {
            match step.action {
                StackAction::Push => {
                    if input.next() != Some(&step.entry) {
                        return None;
                    }
                    stack.push(step.entry);
                }
                StackAction::Pop => {
                    if stack.pop() != Some(step.entry) {
                        return None;
                    }
                    output.push(step.entry);
                }
            }
            if stack != step.stack || output != step.output {
                return None;
            }
        }
        Some(output)
    }
}

impl fmt::Display for SortTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for step in &self.steps {
            let verb = match step.action {
                StackAction::Push => "push",
                StackAction::Pop => "pop ",
            };
            writeln!(f, "{verb} {:>3}  stack [{}]  output [{}]", step.entry, join(&step.stack), join(&step.output))?;
        }
        Ok(())
    }
}

fn join(xs: &[u32]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// Descent-related statistics. Positions are 1-based.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescentStats {
    pub descents: Vec<usize>,
    /// Entries `π_{i+1}` for each descent `i`, ascending.
    pub descent_bottoms: Vec<u32>,
    pub ltr_max_positions: Vec<usize>,
    /// Positions `i` with `π_{i-1} > π_i > π_{i+1}`.
    pub double_descents: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn parse_forms() {
        assert_eq!(p("4162").entries(), &[4, 1, 6, 2]);
        assert_eq!(p("10 2 7").entries(), &[10, 2, 7]);
        assert_eq!(p("10,2, 7").entries(), &[10, 2, 7]);
        assert_eq!(p("12").entries(), &[1, 2]);
        assert_eq!(p("12,").entries(), &[12]);
        assert_eq!("4412".parse::<Permutation>(), Err(Error::Duplicate(4)));
        assert_eq!("".parse::<Permutation>(), Err(Error::Empty));
        assert_eq!("  ".parse::<Permutation>(), Err(Error::Empty));
        assert!(matches!("3 0 1".parse::<Permutation>(), Err(Error::NonPositive(_))));
        assert!(matches!("3 -2 1".parse::<Permutation>(), Err(Error::NonPositive(_))));
        assert!(matches!("102".parse::<Permutation>(), Err(Error::NonPositive(_))));
        assert!(matches!("3 x 1".parse::<Permutation>(), Err(Error::InvalidToken(_))));
    }

    #[test]
    fn display_is_space_separated() {
        assert_eq!(p("4162").to_string(), "4 1 6 2");
        assert_eq!(p("4162").compact(), "4162");
        assert_eq!(p("10 2 7").compact(), "10 2 7");
    }

    #[test]
    fn standardize_examples() {
        assert_eq!(p("10 2 7").standardize(), p("312"));
        assert_eq!(p("123").standardize(), p("123"));
        assert_eq!(p("5162").standardize(), p("3142"));
        assert!(!p("5162").is_standardized());
        assert!(p("3142").is_standardized());
    }

    #[test]
    fn stack_sort_examples() {
        assert_eq!(p("4162").stack_sort(), p("1426"));
        assert_eq!(Permutation::identity(6).stack_sort(), Permutation::identity(6));
        assert_eq!(
            p("5 6 1 7 2 8 3 9 4 10 11").stack_sort(),
            p("5 1 6 2 7 3 8 4 9 10 11")
        );
        assert_eq!(Permutation::from_vec_unchecked(vec![]).stack_sort().len(), 0);
    }

    #[test]
    fn stack_sort_iter_examples() {
        assert_eq!(p("4162").stack_sort_iter(0), p("4162"));
        assert_eq!(p("4162").stack_sort_iter(3), p("1246"));
        assert_eq!(
            p("5 6 7 8 1 9 2 10 3 11 4").stack_sort_iter(3),
            p("5 1 6 2 7 3 8 4 9 10 11")
        );
    }

    #[test]
    fn trace_examples() {
        let t = p("21").trace();
        let moves: Vec<_> = t.steps.iter().map(|s| (s.action, s.entry)).collect();
        use StackAction::*;
        assert_eq!(moves, vec![(Push, 2), (Push, 1), (Pop, 1), (Pop, 2)]);
        assert_eq!(t.output(), &[1, 2]);

        let t = p("4162").trace();
        assert_eq!(t.steps.len(), 8);
        assert_eq!(t.output(), &[1, 4, 2, 6]);
        assert_eq!(t.replay().unwrap(), vec![1, 4, 2, 6]);

        let t = p("1").trace();
        let moves: Vec<_> = t.steps.iter().map(|s| (s.action, s.entry)).collect();
        assert_eq!(moves, vec![(Push, 1), (Pop, 1)]);
    }

    #[test]
    fn replay_rejects_tampered_trace() {
        let mut t = p("4162").trace();
        t.steps[3].entry = 9;
        assert_eq!(t.replay(), None);
    }

    #[test]
    fn descent_stats_examples() {
        assert_eq!(p("5346127").descent_stats().descent_bottoms, vec![1, 3]);
        let id = Permutation::identity(5).descent_stats();
        assert!(id.descents.is_empty());
        assert_eq!(id.ltr_max_positions, vec![1, 2, 3, 4, 5]);
        let s = p("3142567").descent_stats();
        assert_eq!(s.descents, vec![1, 3]);
        assert!(s.double_descents.is_empty());
        assert_eq!(p("4321").descent_stats().double_descents, vec![2, 3]);
    }

    #[test]
    fn avoids_231_examples() {
        assert!(!p("231").avoids_231());
        assert!(Permutation::identity(6).avoids_231());
        assert!(p("312").avoids_231());
        assert!(!p("3412").avoids_231());
    }

    #[test]
    fn corollary1_witness_examples() {
        assert_eq!(p("312").corollary1_witness(), Some(1));
        assert_eq!(p("21435").corollary1_witness(), None);
        assert_eq!(p("123").corollary1_witness(), None);
        assert_eq!(p("14523").corollary1_witness(), Some(3));
    }

    #[test]
    fn one_plus_examples() {
        assert_eq!(p("324156").one_plus().unwrap(), p("1435267"));
        assert_eq!(p("1").one_plus().unwrap(), p("12"));
        assert_eq!(p("123").one_plus().unwrap(), p("1234"));
        assert!(matches!(p("10 2 7").one_plus(), Err(Error::NotStandardized(_))));
    }

    #[test]
    fn serde_uses_plain_arrays() {
        let q = p("4162");
        let json = serde_json::to_string(&q).unwrap();
        assert_eq!(json, "[4,1,6,2]");
        assert_eq!(serde_json::from_str::<Permutation>(&json).unwrap(), q);
        assert!(serde_json::from_str::<Permutation>("[1,1]").is_err());
    }
}
