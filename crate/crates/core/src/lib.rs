//! West's stack-sorting map and the combinatorics of its iterates.
//!
//! * [`perm`]: permutations, `s`, and elementary statistics.
//! * [`vhc`]: hooks and valid hook configurations, a certificate for being in
//!   the image of `s`.
//! * [`dynamics`]: preimages, fertility, `t`-sorted permutations and the
//!   stack-sorting tree, by exhaustive search over `S_n`.
//! * [`extremal`]: `t`-sorted permutations with the most descents.
//! * [`stats`]: counting sequences and distributions.
//! * [`verify`]: exhaustive checks of the structural theorems.
//!
//! ```
//! use stacksort::Permutation;
//!
//! let p: Permutation = "4162".parse().unwrap();
//! assert_eq!(p.stack_sort().compact(), "1426");
//! ```

pub mod dynamics;
pub mod error;
pub mod extremal;
pub mod perm;
pub mod stats;
pub mod symmetric;
pub mod verify;
pub mod vhc;

pub use dynamics::{Dynamics, FertilityReport, StackSortTree};
pub use error::{Error, Result};
pub use extremal::{ExtremalQuery, LiftChain};
pub use perm::{DescentStats, Permutation, SortTrace};
pub use vhc::{Hook, ValidHookConfiguration};

// The guide in book/ is compiled here so its code blocks run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/stack-sorting.md")]
    mod stack_sorting {}
    #[doc = include_str!("../../../book/src/hooks.md")]
    mod hooks {}
    #[doc = include_str!("../../../book/src/dynamics.md")]
    mod dynamics {}
    #[doc = include_str!("../../../book/src/extremal.md")]
    mod extremal {}
    #[doc = include_str!("../../../book/src/counting.md")]
    mod counting {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
