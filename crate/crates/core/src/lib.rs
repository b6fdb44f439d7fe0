//! Primitive permutation groups containing a cycle.
//!
//! The crate builds every group family that occurs among primitive groups
//! of degree `n` containing an `(n-k)`-cycle with `k` fixed points, decides
//! which families are possible for a given `(n, k)`, and checks the
//! supporting group-theoretic facts by explicit computation.
//!
//! ```
//! use primcycle::classifier::{classify, ClassificationQuery};
//!
//! let cases = classify(ClassificationQuery::new(11, 0).unwrap());
//! let tags: Vec<String> = cases.entries.iter().map(|c| c.tag.to_string()).collect();
//! assert_eq!(tags, ["1a", "1c", "1c"]);
//! ```

pub mod arith;
pub mod classifier;
pub mod config;
pub mod families;
pub mod field;
pub mod group;
pub mod perm;
pub mod search;
pub mod sgs;
pub mod verifier;

pub use config::Config;
pub use group::{BlockSystem, GroupError, GroupSpec};
pub use perm::{CycleType, PermError, Permutation};
pub use sgs::StrongGeneratingSet;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/permutations.md")]
    mod permutations {}
    #[doc = include_str!("../../../book/src/fields.md")]
    mod fields {}
    #[doc = include_str!("../../../book/src/groups.md")]
    mod groups {}
    #[doc = include_str!("../../../book/src/families.md")]
    mod families {}
    #[doc = include_str!("../../../book/src/classification.md")]
    mod classification {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
