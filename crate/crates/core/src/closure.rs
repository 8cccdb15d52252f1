//! Forward-chaining consequences, consistency, the derivation hierarchy and
//! entailment between programs.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::syntax::{Atom, Literal, Program};

/// The consequences of a program: a consistent literal set, or `Bottom`
/// standing for the set of all literals.
///
/// `Bottom` is the top element of the inclusion order: it contains every
/// literal and every other closed set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum ClosedSet {
    Consistent(BTreeSet<Literal>),
    Bottom,
}

impl ClosedSet {
    pub fn empty() -> Self {
        ClosedSet::Consistent(BTreeSet::new())
    }

    /// Builds a closed set from literals, collapsing to `Bottom` when two of
    /// them are opposed.
    pub fn from_literals(literals: impl IntoIterator<Item = Literal>) -> Self {
        let set: BTreeSet<Literal> = literals.into_iter().collect();
        if has_opposed_pair(&set) {
            ClosedSet::Bottom
        } else {
            ClosedSet::Consistent(set)
        }
    }

    pub fn is_bottom(&self) -> bool {
        matches!(self, ClosedSet::Bottom)
    }

    pub fn is_consistent(&self) -> bool {
        !self.is_bottom()
    }

    /// `None` for `Bottom`.
    pub fn literals(&self) -> Option<&BTreeSet<Literal>> {
        match self {
            ClosedSet::Consistent(set) => Some(set),
            ClosedSet::Bottom => None,
        }
    }

    pub fn contains(&self, literal: &Literal) -> bool {
        match self {
            ClosedSet::Consistent(set) => set.contains(literal),
            ClosedSet::Bottom => true,
        }
    }

    pub fn is_subset(&self, other: &ClosedSet) -> bool {
        match (self, other) {
            (_, ClosedSet::Bottom) => true,
            (ClosedSet::Bottom, ClosedSet::Consistent(_)) => false,
            (ClosedSet::Consistent(a), ClosedSet::Consistent(b)) => a.is_subset(b),
        }
    }

    pub fn intersection(&self, other: &ClosedSet) -> ClosedSet {
        match (self, other) {
            (ClosedSet::Bottom, x) | (x, ClosedSet::Bottom) => x.clone(),
            (ClosedSet::Consistent(a), ClosedSet::Consistent(b)) => {
                ClosedSet::Consistent(a.intersection(b).cloned().collect())
            }
        }
    }

    /// Set union; opposed literals in the result collapse to `Bottom`.
    pub fn union(&self, other: &ClosedSet) -> ClosedSet {
        match (self, other) {
            (ClosedSet::Bottom, _) | (_, ClosedSet::Bottom) => ClosedSet::Bottom,
            (ClosedSet::Consistent(a), ClosedSet::Consistent(b)) => ClosedSet::from_literals(a.union(b).cloned()),
        }
    }

    /// The consequences of this set read as facts together with `program`,
    /// i.e. `cns(S ∪ P)`. `Bottom` propagates.
    pub fn join(&self, program: &Program) -> ClosedSet {
        match self {
            ClosedSet::Bottom => ClosedSet::Bottom,
            ClosedSet::Consistent(set) => closure(&Program::from_facts(set).union(program)),
        }
    }

    /// The fact-program of this set. `Bottom` is materialized as every
    /// literal over `vocabulary`, which is `Lit` relative to that vocabulary.
    pub fn to_program<'a>(&self, vocabulary: impl IntoIterator<Item = &'a Atom>) -> Program {
        match self {
            ClosedSet::Consistent(set) => Program::from_facts(set),
            ClosedSet::Bottom => {
                let all: Vec<Literal> = vocabulary
                    .into_iter()
                    .flat_map(|a| [Literal::positive(a.clone()), Literal::negative(a.clone())])
                    .collect();
                Program::from_facts(&all)
            }
        }
    }
}

fn has_opposed_pair(set: &BTreeSet<Literal>) -> bool {
    set.iter().any(|l| l.is_positive() && set.contains(&l.negate()))
}

impl fmt::Debug for ClosedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

/// Literals in `(atom, positive-first)` order joined by `", "`; `Bottom` is
/// `#bottom`.
impl fmt::Display for ClosedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosedSet::Bottom => f.write_str("#bottom"),
            ClosedSet::Consistent(set) => {
                for (i, literal) in set.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{literal}")?;
                }
                Ok(())
            }
        }
    }
}

impl Serialize for ClosedSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            ClosedSet::Bottom => serializer.serialize_str("#bottom"),
            ClosedSet::Consistent(set) => serializer.collect_seq(set),
        }
    }
}

/// Least set of literals containing the facts of `program` and closed under
/// its rules; `Bottom` as soon as two opposed literals are derived.
///
/// Runs in time linear in the size of the program: every rule keeps a count
/// of body literals not yet derived and fires when it drops to zero.
pub fn closure(program: &Program) -> ClosedSet {
    let mut atoms: HashMap<&Atom, usize> = HashMap::new();

    let rules: Vec<_> = program.rules().collect();
    let mut pending = vec![0usize; rules.len()];
    let mut heads = vec![0usize; rules.len()];
    let mut watchers: Vec<Vec<usize>> = Vec::new();
    let mut queue = Vec::new();

    for (r, rule) in rules.iter().enumerate() {
        for literal in rule.body() {
            let i = slot(&mut atoms, literal);
            if watchers.len() <= i | 1 {
                watchers.resize((i | 1) + 1, Vec::new());
            }
            watchers[i].push(r);
        }
        heads[r] = slot(&mut atoms, rule.head());
        pending[r] = rule.body().len();
        if pending[r] == 0 {
            queue.push(heads[r]);
        }
    }

    let mut derived = vec![false; 2 * atoms.len()];
    watchers.resize(derived.len(), Vec::new());
    while let Some(i) = queue.pop() {
        if derived[i] {
            continue;
        }
        if derived[i ^ 1] {
            return ClosedSet::Bottom;
        }
        derived[i] = true;
        for &r in &watchers[i] {
            pending[r] -= 1;
            if pending[r] == 0 {
                queue.push(heads[r]);
            }
        }
    }

    let mut literals = BTreeSet::new();
    for (atom, &a) in &atoms {
        if derived[2 * a] {
            literals.insert(Literal::positive((*atom).clone()));
        }
        if derived[2 * a + 1] {
            literals.insert(Literal::negative((*atom).clone()));
        }
    }
    ClosedSet::Consistent(literals)
}

// Literal `l` over the `a`-th atom lives at `2a` (positive) or `2a + 1`.
fn slot<'p>(atoms: &mut HashMap<&'p Atom, usize>, literal: &'p Literal) -> usize {
    let next = atoms.len();
    let a = *atoms.entry(literal.atom()).or_insert(next);
    2 * a + usize::from(!literal.is_positive())
}

pub fn is_consistent(program: &Program) -> bool {
    closure(program).is_consistent()
}

/// Whether `literals`, read as facts, are consistent with `program`.
pub fn consistent_with<'a>(literals: impl IntoIterator<Item = &'a Literal>, program: &Program) -> bool {
    is_consistent(&Program::from_facts(literals).union(program))
}

/// `P ⊢ Q`: every consequence of `Q` is a consequence of `P` (non-strict).
pub fn entails(program: &Program, other: &Program) -> bool {
    closure(other).is_subset(&closure(program))
}

/// The derivation hierarchy `L_0, ..., L_r` of a consistent program: `L_0`
/// holds its facts and `L_i` the literals first derivable from the layers
/// below it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stratification {
    layers: Vec<BTreeSet<Literal>>,
}

impl Stratification {
    pub fn layers(&self) -> &[BTreeSet<Literal>] {
        &self.layers
    }

    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    pub fn literals(&self) -> impl Iterator<Item = &Literal> {
        self.layers.iter().flatten()
    }
}

pub fn stratify(program: &Program) -> Result<Stratification> {
    if !is_consistent(program) {
        return Err(Error::InconsistentProgram);
    }
    let mut known: BTreeSet<Literal> = program.facts().cloned().collect();
    let mut layers = vec![known.clone()];
    loop {
        let next: BTreeSet<Literal> = program
            .rules()
            .filter(|r| !r.is_fact() && !known.contains(r.head()))
            .filter(|r| r.body().is_subset(&known))
            .map(|r| r.head().clone())
            .collect();
        if next.is_empty() {
            break;
        }
        known.extend(next.iter().cloned());
        layers.push(next);
    }
    Ok(Stratification { layers })
}
