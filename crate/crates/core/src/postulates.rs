//! Executable rationality postulates for arbitration (`SA1`-`SA8`) and
//! constrained merging (`FP0`-`FP8`).
//!
//! Each postulate is a row of [`POSTULATES`]: the variables it mentions and
//! an evaluator over an [`Instance`]. Evaluators record every intermediate
//! closed set they compute, so a [`Verdict`] carries its own witness.
//!
//! Where a postulate mixes a result (a literal set) with a program, the
//! result is read as a fact-program: `Δ ∪ Q` is `cns(facts(Δ) ∪ Q)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize, Serializer};

use crate::arbitration::{arbitrate, conj, disj, Strategy};
use crate::closure::{closure, entails, ClosedSet};
use crate::error::{Error, Result};
use crate::merging::{merge, Profile};
use crate::revision::Limits;
use crate::syntax::{Atom, Program};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    /// Arbitration.
    SA,
    /// Merging under integrity constraints.
    FP,
}

/// One of the 17 postulates: `SA1`..`SA8` or `FP0`..`FP8`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PostulateId {
    family: Family,
    index: u8,
}

impl PostulateId {
    pub const fn sa(index: u8) -> Self {
        assert!(index >= 1 && index <= 8);
        PostulateId {
            family: Family::SA,
            index,
        }
    }

    pub const fn fp(index: u8) -> Self {
        assert!(index <= 8);
        PostulateId {
            family: Family::FP,
            index,
        }
    }

    pub fn family(self) -> Family {
        self.family
    }

    pub fn index(self) -> u8 {
        self.index
    }

    pub fn all() -> impl Iterator<Item = PostulateId> {
        POSTULATES.iter().map(|p| p.id)
    }

    /// Whether the operators provably satisfy this postulate under
    /// `strategy`: SA1-SA4, SA7, SA8 and FP0-FP2 for every strategy, and
    /// FP4 for rank revision only.
    pub fn is_guaranteed(self, strategy: Strategy) -> bool {
        match self.family {
            Family::SA => matches!(self.index, 1..=4 | 7 | 8),
            Family::FP => self.index <= 2 || (self.index == 4 && strategy == Strategy::Rank),
        }
    }

    pub fn variables(self) -> &'static [Var] {
        postulate(self).vars
    }

    fn position(self) -> usize {
        match self.family {
            Family::SA => self.index as usize - 1,
            Family::FP => 8 + self.index as usize,
        }
    }
}

impl fmt::Display for PostulateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.index)
    }
}

impl fmt::Debug for PostulateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for PostulateId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownPostulate(s.to_owned());
        let upper = s.trim().to_ascii_uppercase();
        let (family, digits) = if let Some(d) = upper.strip_prefix("SA") {
            (Family::SA, d)
        } else if let Some(d) = upper.strip_prefix("FP") {
            (Family::FP, d)
        } else {
            return Err(unknown());
        };
        let index: u8 = digits.parse().map_err(|_| unknown())?;
        match family {
            Family::SA if (1..=8).contains(&index) => Ok(PostulateId::sa(index)),
            Family::FP if index <= 8 => Ok(PostulateId::fp(index)),
            _ => Err(unknown()),
        }
    }
}

impl Serialize for PostulateId {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Free variables of the postulates. `Phi`, `Phi1` and `Phi2` range over
/// profiles, the rest over programs. In the `FP` family `P` and `Q` are
/// integrity constraints.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Var {
    P,
    Q,
    P1,
    P2,
    Q1,
    Q2,
    Phi,
    Phi1,
    Phi2,
}

impl Var {
    pub const ALL: [Var; 9] = [
        Var::P,
        Var::Q,
        Var::P1,
        Var::P2,
        Var::Q1,
        Var::Q2,
        Var::Phi,
        Var::Phi1,
        Var::Phi2,
    ];

    pub fn is_profile(self) -> bool {
        matches!(self, Var::Phi | Var::Phi1 | Var::Phi2)
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::P => "P",
            Var::Q => "Q",
            Var::P1 => "P1",
            Var::P2 => "P2",
            Var::Q1 => "Q1",
            Var::Q2 => "Q2",
            Var::Phi => "Phi",
            Var::Phi1 => "Phi1",
            Var::Phi2 => "Phi2",
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Var {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Var::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::Corpus(format!("unknown variable `{s}`")))
    }
}

/// Bindings for a postulate's variables, plus the strategy to evaluate
/// under.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub strategy: Strategy,
    programs: BTreeMap<Var, Program>,
    profiles: BTreeMap<Var, Profile>,
}

impl Instance {
    pub fn new(strategy: Strategy) -> Self {
        Instance {
            strategy,
            programs: BTreeMap::new(),
            profiles: BTreeMap::new(),
        }
    }

    /// Binds a program variable. Panics if `var` ranges over profiles.
    pub fn with(mut self, var: Var, program: Program) -> Self {
        self.bind(var, program);
        self
    }

    /// Binds a profile variable. Panics if `var` ranges over programs.
    pub fn with_profile(mut self, var: Var, profile: Profile) -> Self {
        self.bind_profile(var, profile);
        self
    }

    pub fn bind(&mut self, var: Var, program: Program) {
        assert!(!var.is_profile(), "{var} ranges over profiles");
        self.programs.insert(var, program);
    }

    pub fn bind_profile(&mut self, var: Var, profile: Profile) {
        assert!(var.is_profile(), "{var} ranges over programs");
        self.profiles.insert(var, profile);
    }

    pub fn program(&self, var: Var) -> Option<&Program> {
        self.programs.get(&var)
    }

    pub fn profile(&self, var: Var) -> Option<&Profile> {
        self.profiles.get(&var)
    }

    pub fn programs(&self) -> &BTreeMap<Var, Program> {
        &self.programs
    }

    pub fn profiles(&self) -> &BTreeMap<Var, Profile> {
        &self.profiles
    }

    pub(crate) fn programs_mut(&mut self) -> &mut BTreeMap<Var, Program> {
        &mut self.programs
    }

    pub(crate) fn profiles_mut(&mut self) -> &mut BTreeMap<Var, Profile> {
        &mut self.profiles
    }

    pub fn bound_vars(&self) -> BTreeSet<Var> {
        self.programs.keys().chain(self.profiles.keys()).copied().collect()
    }

    /// Atoms occurring in any binding.
    pub fn atoms(&self) -> BTreeSet<Atom> {
        self.all_programs().flat_map(Program::atoms).collect()
    }

    /// Total number of rules over all bindings, counting profile members
    /// with multiplicity.
    pub fn rule_count(&self) -> usize {
        self.all_programs().map(Program::len).sum()
    }

    fn all_programs(&self) -> impl Iterator<Item = &Program> {
        self.programs
            .values()
            .chain(self.profiles.values().flat_map(|p| p.members()))
    }

    /// Rendered bindings, keyed by variable name.
    pub fn render(&self) -> BTreeMap<String, String> {
        use crate::textio::Render;
        let mut out = BTreeMap::new();
        for (var, p) in &self.programs {
            out.insert(var.name().to_owned(), p.render());
        }
        for (var, p) in &self.profiles {
            out.insert(var.name().to_owned(), p.render());
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Holds,
    Violated,
    /// The postulate's antecedent is false on the instance.
    Vacuous,
    Skipped(String),
}

impl Status {
    pub fn name(&self) -> &'static str {
        match self {
            Status::Holds => "holds",
            Status::Violated => "violated",
            Status::Vacuous => "vacuous",
            Status::Skipped(_) => "skipped",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Skipped(reason) => write!(f, "skipped ({reason})"),
            other => f.write_str(other.name()),
        }
    }
}

impl Serialize for Status {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

/// Outcome of evaluating one postulate on one instance, together with every
/// sub-expression it evaluated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub status: Status,
    pub witness: Vec<(String, ClosedSet)>,
}

impl Verdict {
    pub fn get(&self, label: &str) -> Option<&ClosedSet> {
        self.witness.iter().find(|(l, _)| l == label).map(|(_, v)| v)
    }
}

struct Postulate {
    id: PostulateId,
    vars: &'static [Var],
    eval: fn(&mut Eval<'_>) -> Result<Status>,
}

use Var::*;

static POSTULATES: [Postulate; 17] = [
    Postulate {
        id: PostulateId::sa(1),
        vars: &[P, Q],
        eval: sa1,
    },
    Postulate {
        id: PostulateId::sa(2),
        vars: &[P, Q],
        eval: sa2,
    },
    Postulate {
        id: PostulateId::sa(3),
        vars: &[P, Q],
        eval: sa3,
    },
    Postulate {
        id: PostulateId::sa(4),
        vars: &[P, Q],
        eval: sa4,
    },
    Postulate {
        id: PostulateId::sa(5),
        vars: &[P1, P2, Q1, Q2],
        eval: sa5,
    },
    Postulate {
        id: PostulateId::sa(6),
        vars: &[P, Q1, Q2],
        eval: sa6,
    },
    Postulate {
        id: PostulateId::sa(7),
        vars: &[P, Q],
        eval: sa7,
    },
    Postulate {
        id: PostulateId::sa(8),
        vars: &[P, Q],
        eval: sa8,
    },
    Postulate {
        id: PostulateId::fp(0),
        vars: &[P, Phi],
        eval: fp0,
    },
    Postulate {
        id: PostulateId::fp(1),
        vars: &[P, Phi],
        eval: fp1,
    },
    Postulate {
        id: PostulateId::fp(2),
        vars: &[P, Phi],
        eval: fp2,
    },
    Postulate {
        id: PostulateId::fp(3),
        vars: &[P, Q, Phi1, Phi2],
        eval: fp3,
    },
    Postulate {
        id: PostulateId::fp(4),
        vars: &[P, P1, P2],
        eval: fp4,
    },
    Postulate {
        id: PostulateId::fp(5),
        vars: &[P, Phi1, Phi2],
        eval: fp5,
    },
    Postulate {
        id: PostulateId::fp(6),
        vars: &[P, Phi1, Phi2],
        eval: fp6,
    },
    Postulate {
        id: PostulateId::fp(7),
        vars: &[P, Q, Phi],
        eval: fp7,
    },
    Postulate {
        id: PostulateId::fp(8),
        vars: &[P, Q, Phi],
        eval: fp8,
    },
];

fn postulate(id: PostulateId) -> &'static Postulate {
    &POSTULATES[id.position()]
}

struct Eval<'a> {
    id: PostulateId,
    instance: &'a Instance,
    limits: &'a Limits,
    witness: Vec<(String, ClosedSet)>,
}

impl Eval<'_> {
    fn prog(&self, var: Var) -> &Program {
        &self.instance.programs[&var]
    }

    fn profile(&self, var: Var) -> &Profile {
        &self.instance.profiles[&var]
    }

    fn record(&mut self, label: impl Into<String>, value: ClosedSet) -> ClosedSet {
        self.witness.push((label.into(), value.clone()));
        value
    }

    fn cns(&mut self, var: Var) -> ClosedSet {
        let value = closure(self.prog(var));
        self.record(format!("cns({var})"), value)
    }

    fn arb(&mut self, label: &str, p: &Program, q: &Program) -> Result<ClosedSet> {
        let value = arbitrate(p, q, self.instance.strategy, self.limits)?;
        Ok(self.record(label, value))
    }

    fn merge(&mut self, label: &str, constraint: &Program, profile: &Profile) -> Result<ClosedSet> {
        let value = merge(constraint, profile, self.instance.strategy, self.limits)?;
        Ok(self.record(label, value))
    }

    fn invalid(&self, message: &str) -> Error {
        Error::InvalidInstance {
            postulate: self.id.to_string(),
            message: message.to_owned(),
        }
    }
}

fn holds(condition: bool) -> Status {
    if condition {
        Status::Holds
    } else {
        Status::Violated
    }
}

fn sa1(e: &mut Eval<'_>) -> Result<Status> {
    let (p, q) = (e.prog(P).clone(), e.prog(Q).clone());
    let pq = e.arb("arb(P,Q)", &p, &q)?;
    let qp = e.arb("arb(Q,P)", &q, &p)?;
    Ok(holds(pq == qp))
}

fn sa2(e: &mut Eval<'_>) -> Result<Status> {
    let (p, q) = (e.prog(P).clone(), e.prog(Q).clone());
    let a = e.arb("arb(P,Q)", &p, &q)?;
    let c = e.record("conj(P,Q)", conj(&p, &q));
    Ok(holds(a.is_subset(&c)))
}

fn sa3(e: &mut Eval<'_>) -> Result<Status> {
    let (p, q) = (e.prog(P).clone(), e.prog(Q).clone());
    let c = e.record("conj(P,Q)", conj(&p, &q));
    if c.is_bottom() {
        return Ok(Status::Vacuous);
    }
    let a = e.arb("arb(P,Q)", &p, &q)?;
    Ok(holds(c.is_subset(&a)))
}

fn sa4(e: &mut Eval<'_>) -> Result<Status> {
    let (p, q) = (e.prog(P).clone(), e.prog(Q).clone());
    let a = e.arb("arb(P,Q)", &p, &q)?;
    let cp = e.cns(P);
    let cq = e.cns(Q);
    Ok(holds(a.is_bottom() == (cp.is_bottom() && cq.is_bottom())))
}

fn sa5(e: &mut Eval<'_>) -> Result<Status> {
    let same_p = e.cns(P1) == e.cns(P2);
    let same_q = e.cns(Q1) == e.cns(Q2);
    if !(same_p && same_q) {
        return Ok(Status::Vacuous);
    }
    let (p1, p2, q1, q2) = (
        e.prog(P1).clone(),
        e.prog(P2).clone(),
        e.prog(Q1).clone(),
        e.prog(Q2).clone(),
    );
    let first = e.arb("arb(P1,Q1)", &p1, &q1)?;
    let second = e.arb("arb(P2,Q2)", &p2, &q2)?;
    Ok(holds(first == second))
}

/// Holds when `P ∇ (Q1 ⊕ Q2)` equals any one of the three alternatives.
fn sa6(e: &mut Eval<'_>) -> Result<Status> {
    let (p, q1, q2) = (e.prog(P).clone(), e.prog(Q1).clone(), e.prog(Q2).clone());
    let d = e.record("disj(Q1,Q2)", disj(&q1, &q2));
    let d_program = d.to_program(&e.instance.atoms());
    let lhs = e.arb("arb(P,disj(Q1,Q2))", &p, &d_program)?;
    let a1 = e.arb("arb(P,Q1)", &p, &q1)?;
    let a2 = e.arb("arb(P,Q2)", &p, &q2)?;
    let both = e.record("disj(arb(P,Q1),arb(P,Q2))", a1.intersection(&a2));
    Ok(holds(lhs == a1 || lhs == a2 || lhs == both))
}

fn sa7(e: &mut Eval<'_>) -> Result<Status> {
    let (p, q) = (e.prog(P).clone(), e.prog(Q).clone());
    let d = e.record("disj(P,Q)", disj(&p, &q));
    let a = e.arb("arb(P,Q)", &p, &q)?;
    Ok(holds(d.is_subset(&a)))
}

fn sa8(e: &mut Eval<'_>) -> Result<Status> {
    if e.cns(P).is_bottom() {
        return Ok(Status::Vacuous);
    }
    let (p, q) = (e.prog(P).clone(), e.prog(Q).clone());
    let a = e.arb("arb(P,Q)", &p, &q)?;
    let joined = e.record("conj(P,arb(P,Q))", a.join(&p));
    Ok(holds(joined.is_consistent()))
}

fn fp0(e: &mut Eval<'_>) -> Result<Status> {
    let (c, phi) = (e.prog(P).clone(), e.profile(Phi).clone());
    let m = e.merge("merge_P(Phi)", &c, &phi)?;
    let cp = e.cns(P);
    Ok(holds(cp.is_subset(&m)))
}

fn fp1(e: &mut Eval<'_>) -> Result<Status> {
    if e.cns(P).is_bottom() {
        return Ok(Status::Vacuous);
    }
    let (c, phi) = (e.prog(P).clone(), e.profile(Phi).clone());
    let m = e.merge("merge_P(Phi)", &c, &phi)?;
    Ok(holds(m.is_consistent()))
}

fn fp2(e: &mut Eval<'_>) -> Result<Status> {
    let (c, phi) = (e.prog(P).clone(), e.profile(Phi).clone());
    let together = e.record("cns(P+Phi)", closure(&phi.union_all().union(&c)));
    if together.is_bottom() {
        return Ok(Status::Vacuous);
    }
    let m = e.merge("merge_P(Phi)", &c, &phi)?;
    Ok(holds(m == together))
}

/// Members of the two profiles are paired by position.
fn fp3(e: &mut Eval<'_>) -> Result<Status> {
    let (phi1, phi2) = (e.profile(Phi1).clone(), e.profile(Phi2).clone());
    if phi1.len() != phi2.len() {
        return Ok(Status::Vacuous);
    }
    let same_constraint = e.cns(P) == e.cns(Q);
    let same_members = phi1
        .members()
        .iter()
        .zip(phi2.members())
        .all(|(a, b)| closure(a) == closure(b));
    if !(same_constraint && same_members) {
        return Ok(Status::Vacuous);
    }
    let (p, q) = (e.prog(P).clone(), e.prog(Q).clone());
    let left = e.merge("merge_P(Phi1)", &p, &phi1)?;
    let right = e.merge("merge_Q(Phi2)", &q, &phi2)?;
    Ok(holds(left == right))
}

fn fp4(e: &mut Eval<'_>) -> Result<Status> {
    let (c, p1, p2) = (e.prog(P).clone(), e.prog(P1).clone(), e.prog(P2).clone());
    let profile =
        Profile::new(vec![p1.clone(), p2.clone()]).map_err(|_| e.invalid("P1 and P2 must be nonempty programs"))?;
    e.cns(P);
    let c1 = e.cns(P1);
    let c2 = e.cns(P2);
    if c1.is_bottom() || c2.is_bottom() || !entails(&p1, &c) || !entails(&p2, &c) {
        return Ok(Status::Vacuous);
    }
    let m = e.merge("merge_P(P1,P2)", &c, &profile)?;
    let with1 = e.record("merge_P(P1,P2)+P1", m.join(&p1));
    let with2 = e.record("merge_P(P1,P2)+P2", m.join(&p2));
    Ok(holds(with1.is_bottom() || with2.is_consistent()))
}

fn subgroup_merges(e: &mut Eval<'_>) -> Result<(ClosedSet, ClosedSet)> {
    let (c, phi1, phi2) = (e.prog(P).clone(), e.profile(Phi1).clone(), e.profile(Phi2).clone());
    let m1 = e.merge("merge_P(Phi1)", &c, &phi1)?;
    let m2 = e.merge("merge_P(Phi2)", &c, &phi2)?;
    let parts = e.record("merge_P(Phi1)+merge_P(Phi2)", m1.union(&m2));
    let whole = e.merge("merge_P(Phi1+Phi2)", &c, &phi1.sum(&phi2))?;
    Ok((parts, whole))
}

fn fp5(e: &mut Eval<'_>) -> Result<Status> {
    let (parts, whole) = subgroup_merges(e)?;
    Ok(holds(whole.is_subset(&parts)))
}

fn fp6(e: &mut Eval<'_>) -> Result<Status> {
    let (parts, whole) = subgroup_merges(e)?;
    if parts.is_bottom() {
        return Ok(Status::Vacuous);
    }
    Ok(holds(parts.is_subset(&whole)))
}

fn iterated_merges(e: &mut Eval<'_>) -> Result<(ClosedSet, ClosedSet)> {
    let (p, q, phi) = (e.prog(P).clone(), e.prog(Q).clone(), e.profile(Phi).clone());
    let m = e.merge("merge_P(Phi)", &p, &phi)?;
    let then_q = e.record("merge_P(Phi)+Q", m.join(&q));
    let together = e.merge("merge_PQ(Phi)", &p.union(&q), &phi)?;
    Ok((then_q, together))
}

fn fp7(e: &mut Eval<'_>) -> Result<Status> {
    let (then_q, together) = iterated_merges(e)?;
    Ok(holds(together.is_subset(&then_q)))
}

fn fp8(e: &mut Eval<'_>) -> Result<Status> {
    let (then_q, together) = iterated_merges(e)?;
    if then_q.is_bottom() {
        return Ok(Status::Vacuous);
    }
    Ok(holds(then_q.is_subset(&together)))
}

fn validate(id: PostulateId, instance: &Instance) -> Result<()> {
    let needed: BTreeSet<Var> = id.variables().iter().copied().collect();
    let bound = instance.bound_vars();
    if let Some(var) = needed.difference(&bound).next() {
        return Err(Error::IncompleteBinding {
            postulate: id.to_string(),
            var: var.to_string(),
        });
    }
    if let Some(var) = bound.difference(&needed).next() {
        return Err(Error::UnexpectedBinding {
            postulate: id.to_string(),
            var: var.to_string(),
        });
    }
    Ok(())
}

/// Evaluates any postulate. Enumeration blow-ups become
/// [`Status::Skipped`] rather than errors.
pub fn check(id: PostulateId, instance: &Instance, limits: &Limits) -> Result<Verdict> {
    validate(id, instance)?;
    let mut eval = Eval {
        id,
        instance,
        limits,
        witness: Vec::new(),
    };
    let status = match (postulate(id).eval)(&mut eval) {
        Ok(status) => status,
        Err(e @ Error::SizeLimitExceeded { .. }) => Status::Skipped(e.to_string()),
        Err(e) => return Err(e),
    };
    Ok(Verdict {
        status,
        witness: eval.witness,
    })
}

pub fn check_sa(id: PostulateId, instance: &Instance, limits: &Limits) -> Result<Verdict> {
    if id.family != Family::SA {
        return Err(Error::WrongFamily(id.to_string(), "SA"));
    }
    check(id, instance, limits)
}

pub fn check_fp(id: PostulateId, instance: &Instance, limits: &Limits) -> Result<Verdict> {
    if id.family != Family::FP {
        return Err(Error::WrongFamily(id.to_string(), "FP"));
    }
    check(id, instance, limits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::textio::{parse_closed_set, parse_profile};

    fn prog(s: &str) -> Program {
        s.parse().unwrap()
    }

    fn set(s: &str) -> ClosedSet {
        parse_closed_set(s).unwrap()
    }

    fn id(s: &str) -> PostulateId {
        s.parse().unwrap()
    }

    #[test]
    fn ids_round_trip_and_are_ordered() {
        let all: Vec<PostulateId> = PostulateId::all().collect();
        assert_eq!(all.len(), 17);
        for p in &all {
            assert_eq!(&p.to_string().parse::<PostulateId>().unwrap(), p);
        }
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(sorted, all);
        assert!("SA0".parse::<PostulateId>().is_err());
        assert!("FP9".parse::<PostulateId>().is_err());
        assert!("XX1".parse::<PostulateId>().is_err());
        assert_eq!(id("fp4"), PostulateId::fp(4));
    }

    #[test]
    fn guarantees() {
        assert!(id("SA1").is_guaranteed(Strategy::Hull));
        assert!(!id("SA5").is_guaranteed(Strategy::Rank));
        assert!(id("FP4").is_guaranteed(Strategy::Rank));
        assert!(!id("FP4").is_guaranteed(Strategy::ExtendedHull));
        assert!(!id("FP3").is_guaranteed(Strategy::Rank));
    }

    #[test]
    fn sa5_syntax_dependence() {
        for s in Strategy::ALL {
            let inst = Instance::new(s)
                .with(P1, prog("a -> c. b."))
                .with(P2, prog("b."))
                .with(Q1, prog("b -> c. a."))
                .with(Q2, prog("a."));
            let v = check_sa(id("SA5"), &inst, &Limits::default()).unwrap();
            assert_eq!(v.status, Status::Violated);
            assert_eq!(v.get("arb(P1,Q1)"), Some(&set("a, b, c")));
            assert_eq!(v.get("arb(P2,Q2)"), Some(&set("a, b")));
        }
    }

    #[test]
    fn sa6_trichotomy_fails() {
        for s in Strategy::ALL {
            let inst = Instance::new(s)
                .with(P, prog("a -> b. a -> c. e."))
                .with(Q1, prog("a."))
                .with(Q2, prog("b."));
            let v = check_sa(id("SA6"), &inst, &Limits::default()).unwrap();
            assert_eq!(v.status, Status::Violated);
            assert_eq!(v.get("arb(P,disj(Q1,Q2))"), Some(&set("e")));
            assert_eq!(v.get("arb(P,Q1)"), Some(&set("a, b, c, e")));
            assert_eq!(v.get("arb(P,Q2)"), Some(&set("b, e")));
            assert_eq!(v.get("disj(arb(P,Q1),arb(P,Q2))"), Some(&set("b, e")));
        }
    }

    #[test]
    fn sa1_holds() {
        for s in Strategy::ALL {
            let inst = Instance::new(s).with(P, prog("a. a -> b.")).with(Q, prog("-b."));
            assert_eq!(
                check_sa(id("SA1"), &inst, &Limits::default()).unwrap().status,
                Status::Holds
            );
        }
    }

    #[test]
    fn fp3_syntax_dependence() {
        let inst = Instance::new(Strategy::Rank)
            .with(P, prog("a."))
            .with(Q, prog("a."))
            .with_profile(Phi1, parse_profile("a -> b.").unwrap())
            .with_profile(Phi2, parse_profile("a -> c.").unwrap());
        let v = check_fp(id("FP3"), &inst, &Limits::default()).unwrap();
        assert_eq!(v.status, Status::Violated);
        assert_eq!(v.get("merge_P(Phi1)"), Some(&set("a, b")));
        assert_eq!(v.get("merge_Q(Phi2)"), Some(&set("a, c")));
    }

    #[test]
    fn fp7_iteration_fails() {
        let inst = Instance::new(Strategy::Rank)
            .with(P, prog("c."))
            .with(Q, prog("a."))
            .with_profile(Phi, parse_profile("a -> b.").unwrap());
        let v = check_fp(id("FP7"), &inst, &Limits::default()).unwrap();
        assert_eq!(v.status, Status::Violated);
        assert_eq!(v.get("merge_P(Phi)+Q"), Some(&set("a, c")));
        assert_eq!(v.get("merge_PQ(Phi)"), Some(&set("a, b, c")));
    }

    #[test]
    fn fp0_holds() {
        for s in Strategy::ALL {
            let inst = Instance::new(s)
                .with(P, prog("a. b."))
                .with_profile(Phi, parse_profile("a -> c. b -> -c.\n---\nx.").unwrap());
            assert_eq!(
                check_fp(id("FP0"), &inst, &Limits::default()).unwrap().status,
                Status::Holds
            );
        }
    }

    #[test]
    fn vacuous_antecedents() {
        let inst = Instance::new(Strategy::Rank).with(P, prog("a.")).with(Q, prog("-a."));
        let v = check_sa(id("SA3"), &inst, &Limits::default()).unwrap();
        assert_eq!(v.status, Status::Vacuous);

        let inst = Instance::new(Strategy::Rank)
            .with(P, prog("a. -a."))
            .with(Q, prog("b."));
        assert_eq!(
            check_sa(id("SA8"), &inst, &Limits::default()).unwrap().status,
            Status::Vacuous
        );

        let inst = Instance::new(Strategy::Rank)
            .with(P, prog("a."))
            .with(P1, prog("b."))
            .with(P2, prog("a."));
        assert_eq!(
            check_fp(id("FP4"), &inst, &Limits::default()).unwrap().status,
            Status::Vacuous
        );
    }

    #[test]
    fn binding_errors() {
        let inst = Instance::new(Strategy::Rank).with(P, prog("a."));
        assert!(matches!(
            check_sa(id("SA1"), &inst, &Limits::default()),
            Err(Error::IncompleteBinding { .. })
        ));
        let inst = inst.with(Q, prog("b.")).with(Q1, prog("c."));
        assert!(matches!(
            check_sa(id("SA1"), &inst, &Limits::default()),
            Err(Error::UnexpectedBinding { .. })
        ));
        assert!(matches!(
            check_fp(id("SA1"), &inst, &Limits::default()),
            Err(Error::WrongFamily(..))
        ));
    }

    #[test]
    fn size_limit_becomes_skipped() {
        let big: Program = (0..6)
            .map(|i| format!("x{i} -> y{i}."))
            .collect::<String>()
            .parse()
            .unwrap();
        let inst = Instance::new(Strategy::Hull).with(P, big).with(Q, prog("x0. -y0."));
        let v = check(id("SA1"), &inst, &Limits { max_candidates: 2 }).unwrap();
        assert!(matches!(v.status, Status::Skipped(_)));
    }
}
