//! Syntactic belief revision, arbitration and integrity-constrained merging
//! over forward-chaining rule programs.
//!
//! Beliefs are [`Program`]s: finite sets of rules `l1, ..., ln -> l` over
//! literals, with facts as empty-body rules. The only inference is forward
//! chaining, so consistency and entailment are decided in linear time.
//!
//! ```
//! use fcmerge::{arbitrate, Limits, Program, Strategy};
//!
//! let p: Program = "a, b -> -c. b -> d. b -> -c. -c -> e. a, -c -> f. a.".parse()?;
//! let q: Program = "a, b -> c. a -> e. a, e -> c. a, e -> d. c -> d. c -> f. b.".parse()?;
//! let limits = Limits::default();
//!
//! assert_eq!(arbitrate(&p, &q, Strategy::Rank, &limits)?.to_string(), "");
//! assert_eq!(arbitrate(&p, &q, Strategy::Hull, &limits)?.to_string(), "d");
//! assert_eq!(arbitrate(&p, &q, Strategy::ExtendedHull, &limits)?.to_string(), "d, e");
//! # Ok::<(), fcmerge::Error>(())
//! ```
//!
//! The [`postulates`] module evaluates the rationality postulates for these
//! operators on concrete instances, [`corpus`] replays the known
//! counterexamples and [`fuzz`] searches random instances for violations.

pub mod arbitration;
pub mod closure;
pub mod corpus;
mod error;
pub mod fuzz;
pub mod merging;
pub mod postulates;
pub mod revision;
pub mod syntax;
pub mod textio;

pub use arbitration::{arbitrate, conj, disj, Strategy};
pub use closure::{closure, consistent_with, entails, is_consistent, stratify, ClosedSet, Stratification};
pub use error::{Error, Result};
pub use merging::{merge, Profile};
pub use postulates::{check, check_fp, check_sa, Instance, PostulateId, Status, Var, Verdict};
pub use revision::{
    base, exceptional_rules, flock_closure, hull, maximal_extensions, rank, revise_extended_hull, revise_hull,
    revise_rank, Base, Flock, Limits,
};
pub use syntax::{Atom, Literal, Polarity, Program, Rule};
pub use textio::{parse_closed_set, parse_profile, parse_program, parse_programs, render, Render, SourceError};

/// The guide chapters and the README, compiled as doctests so their snippets
/// stay correct.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/programs.md")]
    mod programs {}
    #[doc = include_str!("../../../book/src/revision.md")]
    mod revision {}
    #[doc = include_str!("../../../book/src/arbitration.md")]
    mod arbitration {}
    #[doc = include_str!("../../../book/src/merging.md")]
    mod merging {}
    #[doc = include_str!("../../../book/src/postulates.md")]
    mod postulates {}
    #[doc = include_str!("../../../book/src/fuzzing.md")]
    mod fuzzing {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
