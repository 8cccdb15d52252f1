//! Merging a profile of programs under an integrity constraint.
//!
//! When the constraint and all members are jointly consistent the result is
//! their joint closure. Otherwise each member is revised by the constraint
//! and the result keeps what all revisions agree on.

use serde::Serialize;

use crate::arbitration::Strategy;
use crate::closure::{closure, ClosedSet};
use crate::error::{Error, Result};
use crate::revision::Limits;
use crate::syntax::Program;

/// A finite nonempty multiset of nonempty programs. Member order is kept
/// for display only; it has no bearing on any merge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Profile {
    members: Vec<Program>,
}

impl Profile {
    pub fn new(members: Vec<Program>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::EmptyProfile);
        }
        if let Some(i) = members.iter().position(Program::is_empty) {
            return Err(Error::EmptyMember(i));
        }
        Ok(Profile { members })
    }

    pub fn single(program: Program) -> Result<Self> {
        Profile::new(vec![program])
    }

    pub fn members(&self) -> &[Program] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Multiset sum `Φ1 ⊔ Φ2`; multiplicities add up.
    pub fn sum(&self, other: &Profile) -> Profile {
        let mut members = self.members.clone();
        members.extend(other.members.iter().cloned());
        Profile { members }
    }

    /// `∪Φ`.
    pub fn union_all(&self) -> Program {
        self.members.iter().fold(Program::new(), |acc, p| acc.union(p))
    }
}

/// `Δ_P(Φ)` with `P = constraint`, built on `strategy`.
pub fn merge(constraint: &Program, profile: &Profile, strategy: Strategy, limits: &Limits) -> Result<ClosedSet> {
    let together = closure(&profile.union_all().union(constraint));
    if together.is_consistent() {
        return Ok(together);
    }
    let mut result: Option<ClosedSet> = None;
    for member in profile.members() {
        let revised = strategy.revise(member, constraint, limits)?;
        result = Some(match result {
            None => revised,
            Some(acc) => acc.intersection(&revised),
        });
    }
    Ok(result.expect("profiles are nonempty"))
}
