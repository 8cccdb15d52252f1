//! Exceptionality, the base of a program, and the rank, hull and extended
//! hull revision operators.
//!
//! Revising `P` by `Q` always keeps all of `Q`. The three operators differ
//! in how much of `P` they retain:
//!
//! * rank revision keeps the least exceptional level of the base of `P`
//!   that is consistent with `Q`;
//! * hull revision keeps the rules common to every maximal `Q`-consistent
//!   extension of that level;
//! * extended hull revision keeps every such extension separately and
//!   returns a [`Flock`].

use std::env;

use serde::Serialize;

use crate::closure::{closure, consistent_with, is_consistent, ClosedSet};
use crate::error::{Error, Result};
use crate::syntax::{Program, Rule};

/// Cap on the number of candidate rules searched by
/// [`maximal_extensions`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_candidates: usize,
}

impl Limits {
    pub const DEFAULT_MAX_CANDIDATES: usize = 24;
    pub const ENV_VAR: &'static str = "FCMERGE_MAX_ENUM";

    /// Reads `FCMERGE_MAX_ENUM`, falling back to the default when unset.
    pub fn from_env() -> Result<Self> {
        match env::var(Self::ENV_VAR) {
            Ok(value) => value
                .trim()
                .parse()
                .map(|max_candidates| Limits { max_candidates })
                .map_err(|_| Error::Config(format!("{} must be a count, got `{value}`", Self::ENV_VAR))),
            Err(_) => Ok(Limits::default()),
        }
    }
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_candidates: Self::DEFAULT_MAX_CANDIDATES,
        }
    }
}

/// Rules of `program` whose body is inconsistent with `program`.
///
/// Every rule of an inconsistent program is exceptional.
pub fn exceptional_rules(program: &Program) -> Program {
    if !is_consistent(program) {
        return program.clone();
    }
    program
        .rules()
        .filter(|rule| !consistent_with(rule.body(), program))
        .cloned()
        .collect()
}

/// The decreasing sequence `P_0 ⊇ P_1 ⊇ ... ⊇ P_n` obtained by repeatedly
/// keeping only the exceptional rules. The last level is always empty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Base {
    levels: Vec<Program>,
}

impl Base {
    pub fn levels(&self) -> &[Program] {
        &self.levels
    }

    pub fn level(&self, i: usize) -> &Program {
        &self.levels[i]
    }

    pub fn last_index(&self) -> usize {
        self.levels.len() - 1
    }

    /// `min { i : Q is P_i-consistent }` when both the base program and `q`
    /// are consistent, otherwise the last index.
    pub fn rank_of(&self, q: &Program) -> usize {
        if is_consistent(&self.levels[0]) && is_consistent(q) {
            if let Some(i) = self.levels.iter().position(|level| is_consistent(&level.union(q))) {
                return i;
            }
        }
        self.last_index()
    }
}

pub fn base(program: &Program) -> Base {
    let mut levels = vec![program.clone()];
    loop {
        let last = levels.last().unwrap();
        let next = exceptional_rules(last);
        if &next == last {
            break;
        }
        levels.push(next);
    }
    if !levels.last().unwrap().is_empty() {
        levels.push(Program::new());
    }
    Base { levels }
}

pub fn rank(p: &Program, q: &Program) -> usize {
    base(p).rank_of(q)
}

/// `P ∘rk Q = P_rank(P,Q) ∪ Q`.
pub fn revise_rank(p: &Program, q: &Program) -> Program {
    let base = base(p);
    base.level(base.rank_of(q)).union(q)
}

/// The maximal subsets `H` of `p` with `P_rank(P,Q) ⊆ H` and `H ∪ Q`
/// consistent, sorted by their rendered text. Empty iff `q` is
/// inconsistent.
///
/// Consistency is anti-monotone in the rule set, so the search branches on
/// each candidate rule (the rules of `p` outside the rank level) and never
/// extends an inconsistent set. The exclusion branch is skipped when adding
/// every remaining candidate would still be consistent, since no maximal set
/// can then leave the rule out.
pub fn maximal_extensions(p: &Program, q: &Program, limits: &Limits) -> Result<Vec<Program>> {
    if !is_consistent(q) {
        return Ok(Vec::new());
    }
    let base = base(p);
    // Rules of `p` that every extension holds: the rank level, and whatever
    // `q` already contains.
    let fixed = base.level(base.rank_of(q)).union(&p.intersection(q));
    let candidates: Vec<Rule> = p.difference(&fixed).rules().cloned().collect();
    if candidates.len() > limits.max_candidates {
        return Err(Error::SizeLimitExceeded {
            candidates: candidates.len(),
            limit: limits.max_candidates,
        });
    }

    let mut search = Search {
        candidates: &candidates,
        chosen: vec![false; candidates.len()],
        found: Vec::new(),
    };
    search.run(0, fixed.union(q));

    let mut extensions: Vec<Program> = search
        .found
        .into_iter()
        .map(|chosen| {
            let mut h = fixed.clone();
            h.extend(
                candidates
                    .iter()
                    .zip(chosen)
                    .filter(|(_, c)| *c)
                    .map(|(r, _)| r.clone()),
            );
            h
        })
        .collect();
    extensions.sort_by_cached_key(Program::to_string);
    Ok(extensions)
}

struct Search<'a> {
    candidates: &'a [Rule],
    chosen: Vec<bool>,
    found: Vec<Vec<bool>>,
}

impl Search<'_> {
    // `current` is the consistent program built so far, including `Q`.
    fn run(&mut self, i: usize, current: Program) {
        if i == self.candidates.len() {
            let maximal = self
                .candidates
                .iter()
                .zip(&self.chosen)
                .filter(|(_, c)| !**c)
                .all(|(r, _)| {
                    let mut extended = current.clone();
                    extended.insert(r.clone());
                    !is_consistent(&extended)
                });
            if maximal {
                self.found.push(self.chosen.clone());
            }
            return;
        }

        let mut with = current.clone();
        with.insert(self.candidates[i].clone());
        let include = is_consistent(&with);

        let mut everything = with.clone();
        everything.extend(self.candidates[i + 1..].iter().cloned());
        let exclude = !include || !is_consistent(&everything);

        if include {
            self.chosen[i] = true;
            self.run(i + 1, with);
            self.chosen[i] = false;
        }
        if exclude {
            self.run(i + 1, current);
        }
    }
}

/// `h_P(Q)`: the intersection of the maximal extensions, or the empty program
/// when there are none.
pub fn hull(p: &Program, q: &Program, limits: &Limits) -> Result<Program> {
    let extensions = maximal_extensions(p, q, limits)?;
    Ok(intersect_all(&extensions))
}

fn intersect_all(programs: &[Program]) -> Program {
    let mut iter = programs.iter();
    match iter.next() {
        None => Program::new(),
        Some(first) => iter.fold(first.clone(), |acc, h| acc.intersection(h)),
    }
}

/// `P ∘h Q = h_P(Q) ∪ Q`.
pub fn revise_hull(p: &Program, q: &Program, limits: &Limits) -> Result<Program> {
    Ok(hull(p, q, limits)?.union(q))
}

/// A nonempty sequence of programs whose consequences are the intersection
/// of the members' consequences. A program is identified with the flock
/// holding only it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Flock {
    members: Vec<Program>,
}

impl Flock {
    pub fn new(members: Vec<Program>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::EmptyFlock);
        }
        Ok(Flock { members })
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

    pub fn concat(mut self, other: Flock) -> Flock {
        self.members.extend(other.members);
        self
    }
}

impl From<Program> for Flock {
    fn from(program: Program) -> Self {
        Flock { members: vec![program] }
    }
}

/// `cns(⟨Q_1, ..., Q_n⟩) = cns(Q_1) ∩ ... ∩ cns(Q_n)`.
pub fn flock_closure(flock: &Flock) -> ClosedSet {
    flock
        .members
        .iter()
        .map(closure)
        .reduce(|acc, c| acc.intersection(&c))
        .expect("flocks are nonempty")
}

/// `A ∘eh Q`: every member `P` of the flock contributes
/// `⟨H_1 ∪ Q, ..., H_n ∪ Q⟩` over its maximal extensions, or `⟨Q⟩` when it
/// has none; the pieces are concatenated in member order.
pub fn revise_extended_hull(flock: &Flock, q: &Program, limits: &Limits) -> Result<Flock> {
    let mut members = Vec::new();
    for p in flock.members() {
        let extensions = maximal_extensions(p, q, limits)?;
        if extensions.is_empty() {
            members.push(q.clone());
        } else {
            members.extend(extensions.into_iter().map(|h| h.union(q)));
        }
    }
    Flock::new(members)
}
