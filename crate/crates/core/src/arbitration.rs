//! Program-level conjunction and disjunction, and the arbitration operators
//! `P ∇ Q = cns(P ⋆ Q) ∩ cns(Q ⋆ P)` for each revision strategy `⋆`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::closure::{closure, ClosedSet};
use crate::error::{Error, Result};
use crate::revision::{flock_closure, revise_extended_hull, revise_hull, revise_rank, Flock, Limits};
use crate::syntax::Program;

/// The revision operator an arbitration or merge is built on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Strategy {
    #[serde(rename = "rk")]
    Rank,
    #[serde(rename = "h")]
    Hull,
    #[serde(rename = "eh")]
    ExtendedHull,
}

impl Strategy {
    pub const ALL: [Strategy; 3] = [Strategy::Rank, Strategy::Hull, Strategy::ExtendedHull];

    pub fn short_name(self) -> &'static str {
        match self {
            Strategy::Rank => "rk",
            Strategy::Hull => "h",
            Strategy::ExtendedHull => "eh",
        }
    }

    /// Consequences of revising `p` by `q`. For the extended hull this is
    /// the closure of the flock `⟨p⟩ ∘eh q`.
    pub fn revise(self, p: &Program, q: &Program, limits: &Limits) -> Result<ClosedSet> {
        Ok(match self {
            Strategy::Rank => closure(&revise_rank(p, q)),
            Strategy::Hull => closure(&revise_hull(p, q, limits)?),
            Strategy::ExtendedHull => flock_closure(&revise_extended_hull(&Flock::from(p.clone()), q, limits)?),
        })
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rk" => Ok(Strategy::Rank),
            "h" => Ok(Strategy::Hull),
            "eh" => Ok(Strategy::ExtendedHull),
            other => Err(Error::UnknownStrategy(other.to_owned())),
        }
    }
}

/// `P1 ⊙ P2 = cns(P1 ∪ P2)`.
pub fn conj(p1: &Program, p2: &Program) -> ClosedSet {
    closure(&p1.union(p2))
}

/// `P1 ⊕ P2 = cns(P1) ∩ cns(P2)`.
pub fn disj(p1: &Program, p2: &Program) -> ClosedSet {
    closure(p1).intersection(&closure(p2))
}

/// `P1 ∇ P2 = (P1 ⋆ P2) ⊕ (P2 ⋆ P1)`. Commutative by construction.
pub fn arbitrate(p1: &Program, p2: &Program, strategy: Strategy, limits: &Limits) -> Result<ClosedSet> {
    let left = strategy.revise(p1, p2, limits)?;
    let right = strategy.revise(p2, p1, limits)?;
    Ok(left.intersection(&right))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::textio::parse_closed_set;

    fn prog(s: &str) -> Program {
        s.parse().unwrap()
    }

    fn set(s: &str) -> ClosedSet {
        parse_closed_set(s).unwrap()
    }

    const EX3_P: &str = "a, b -> -c. b -> d. b -> -c. -c -> e. a, -c -> f. a.";
    const EX3_Q: &str = "a, b -> c. a -> e. a, e -> c. a, e -> d. c -> d. c -> f. b.";

    #[test]
    fn conj_examples() {
        assert_eq!(conj(&prog("a -> c. b."), &prog("b -> c. a.")), set("a, b, c"));
        assert_eq!(conj(&prog("a. a -> b."), &Program::new()), set("a, b"));
        assert_eq!(conj(&prog("b."), &prog("a.")), set("a, b"));
    }

    #[test]
    fn disj_examples() {
        assert_eq!(disj(&prog("a."), &prog("b.")), ClosedSet::empty());
        let p = prog("a. a -> b.");
        assert_eq!(disj(&p, &p), closure(&p));
        assert_eq!(disj(&prog("a. -a."), &prog("b.")), set("b"));
    }

    #[test]
    fn example_three() {
        let (p, q, limits) = (prog(EX3_P), prog(EX3_Q), Limits::default());
        assert_eq!(arbitrate(&p, &q, Strategy::Rank, &limits).unwrap(), ClosedSet::empty());
        assert_eq!(arbitrate(&p, &q, Strategy::Hull, &limits).unwrap(), set("d"));
        assert_eq!(arbitrate(&p, &q, Strategy::ExtendedHull, &limits).unwrap(), set("d, e"));
    }

    #[test]
    fn consistent_union_is_conjunction() {
        let (p, q) = (prog("a -> b. c."), prog("a."));
        for s in Strategy::ALL {
            assert_eq!(arbitrate(&p, &q, s, &Limits::default()).unwrap(), conj(&p, &q));
        }
    }

    #[test]
    fn strategy_names_round_trip() {
        for s in Strategy::ALL {
            assert_eq!(s.short_name().parse::<Strategy>().unwrap(), s);
        }
        assert!("x".parse::<Strategy>().is_err());
    }
}
