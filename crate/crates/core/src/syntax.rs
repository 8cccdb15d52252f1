//! Literals, rules and programs.
//!
//! A program is a finite *set* of rules; a fact is a rule with an empty body.
//! All three types order canonically, so iteration over a [`Program`] is
//! independent of insertion order and equal programs render identically.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::error::Error;

/// A propositional variable, an identifier over `[a-zA-Z_][a-zA-Z0-9_]*`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(Arc<str>);

impl Atom {
    pub fn new(name: &str) -> Result<Self, Error> {
        if is_identifier(name) {
            Ok(Atom(Arc::from(name)))
        } else {
            Err(Error::InvalidAtom(name.to_owned()))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Positive sorts before negative, which gives the published literal order
/// `(atom, polarity)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Polarity {
    Positive,
    Negative,
}

/// An atom or its negation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    atom: Atom,
    polarity: Polarity,
}

impl Literal {
    pub fn new(atom: Atom, polarity: Polarity) -> Self {
        Literal { atom, polarity }
    }

    pub fn positive(atom: Atom) -> Self {
        Literal::new(atom, Polarity::Positive)
    }

    pub fn negative(atom: Atom) -> Self {
        Literal::new(atom, Polarity::Negative)
    }

    pub fn atom(&self) -> &Atom {
        &self.atom
    }

    pub fn polarity(&self) -> Polarity {
        self.polarity
    }

    pub fn is_positive(&self) -> bool {
        self.polarity == Polarity::Positive
    }

    /// The opposed literal. `l.negate().negate() == l`.
    pub fn negate(&self) -> Literal {
        let polarity = match self.polarity {
            Polarity::Positive => Polarity::Negative,
            Polarity::Negative => Polarity::Positive,
        };
        Literal::new(self.atom.clone(), polarity)
    }

    pub fn is_opposed_to(&self, other: &Literal) -> bool {
        self.atom == other.atom && self.polarity != other.polarity
    }
}

impl fmt::Debug for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.is_positive() {
            f.write_str("-")?;
        }
        f.write_str(self.atom.as_str())
    }
}

impl FromStr for Literal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        match s.strip_prefix('-') {
            Some(rest) => Ok(Literal::negative(Atom::new(rest)?)),
            None => Ok(Literal::positive(Atom::new(s)?)),
        }
    }
}

impl Serialize for Literal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// `l1, ..., ln -> l`. The body is a set, so duplicate body literals collapse.
/// A body holding two opposed literals is legal; such a rule never fires in a
/// consistent context.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rule {
    body: BTreeSet<Literal>,
    head: Literal,
}

impl Rule {
    pub fn new(body: impl IntoIterator<Item = Literal>, head: Literal) -> Self {
        Rule {
            body: body.into_iter().collect(),
            head,
        }
    }

    pub fn fact(head: Literal) -> Self {
        Rule {
            body: BTreeSet::new(),
            head,
        }
    }

    pub fn body(&self) -> &BTreeSet<Literal> {
        &self.body
    }

    pub fn head(&self) -> &Literal {
        &self.head
    }

    pub fn is_fact(&self) -> bool {
        self.body.is_empty()
    }

    pub fn literals(&self) -> impl Iterator<Item = &Literal> {
        self.body.iter().chain(std::iter::once(&self.head))
    }

    pub(crate) fn without_body_literal(&self, literal: &Literal) -> Rule {
        let mut body = self.body.clone();
        body.remove(literal);
        Rule {
            body,
            head: self.head.clone(),
        }
    }
}

impl fmt::Debug for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, literal) in self.body.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{literal}")?;
        }
        if !self.body.is_empty() {
            f.write_str(" -> ")?;
        }
        write!(f, "{}.", self.head)
    }
}

/// A finite set of rules.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Program {
    rules: BTreeSet<Rule>,
}

impl Program {
    pub fn new() -> Self {
        Program::default()
    }

    /// Builds a program holding one fact per literal.
    pub fn from_facts<'a>(literals: impl IntoIterator<Item = &'a Literal>) -> Self {
        literals.into_iter().cloned().map(Rule::fact).collect()
    }

    /// Returns `false` if the rule was already present.
    pub fn insert(&mut self, rule: Rule) -> bool {
        self.rules.insert(rule)
    }

    pub fn remove(&mut self, rule: &Rule) -> bool {
        self.rules.remove(rule)
    }

    pub fn contains(&self, rule: &Rule) -> bool {
        self.rules.contains(rule)
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn rules(&self) -> impl Iterator<Item = &Rule> + '_ {
        self.rules.iter()
    }

    /// Heads of the empty-body rules.
    pub fn facts(&self) -> impl Iterator<Item = &Literal> + '_ {
        self.rules.iter().filter(|r| r.is_fact()).map(Rule::head)
    }

    /// Number of rules with a nonempty body.
    pub fn proper_rule_count(&self) -> usize {
        self.rules.iter().filter(|r| !r.is_fact()).count()
    }

    pub fn union(&self, other: &Program) -> Program {
        Program {
            rules: self.rules.union(&other.rules).cloned().collect(),
        }
    }

    pub fn intersection(&self, other: &Program) -> Program {
        Program {
            rules: self.rules.intersection(&other.rules).cloned().collect(),
        }
    }

    pub fn difference(&self, other: &Program) -> Program {
        Program {
            rules: self.rules.difference(&other.rules).cloned().collect(),
        }
    }

    pub fn is_subset(&self, other: &Program) -> bool {
        self.rules.is_subset(&other.rules)
    }

    /// Atoms occurring anywhere in the program.
    pub fn atoms(&self) -> BTreeSet<Atom> {
        self.rules
            .iter()
            .flat_map(Rule::literals)
            .map(|l| l.atom().clone())
            .collect()
    }
}

impl FromIterator<Rule> for Program {
    fn from_iter<I: IntoIterator<Item = Rule>>(iter: I) -> Self {
        Program {
            rules: iter.into_iter().collect(),
        }
    }
}

impl Extend<Rule> for Program {
    fn extend<I: IntoIterator<Item = Rule>>(&mut self, iter: I) {
        self.rules.extend(iter);
    }
}

impl<'a> IntoIterator for &'a Program {
    type Item = &'a Rule;
    type IntoIter = std::collections::btree_set::Iter<'a, Rule>;

    fn into_iter(self) -> Self::IntoIter {
        self.rules.iter()
    }
}

impl fmt::Debug for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.rules.iter()).finish()
    }
}

/// Canonical text form, one statement per line.
impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, rule) in self.rules.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{rule}")?;
        }
        Ok(())
    }
}

impl FromStr for Program {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Ok(crate::textio::parse_program(s)?)
    }
}

impl Serialize for Program {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.rules.iter().map(|r| r.to_string()))
    }
}
