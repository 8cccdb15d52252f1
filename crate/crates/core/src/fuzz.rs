//! Seeded violation search over the postulates, with witness shrinking.
//!
//! Randomness comes from ChaCha8 (`rand_chacha`), seeded with
//! `seed_from_u64(cfg.seed)`. Every trial owns a separate ChaCha stream,
//! selected with `set_stream((postulate_position * 3 + strategy_position) << 32 | trial)`,
//! so a trial's instance depends only on the seed and its coordinates, never
//! on scheduling. Integers are drawn by rejection sampling from `next_u64`
//! and probabilities from its top 53 bits.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;

use crate::arbitration::Strategy;
use crate::closure::{closure, ClosedSet};
use crate::error::{Error, Result};
use crate::merging::Profile;
use crate::postulates::{check, Instance, PostulateId, Status, Var};
use crate::revision::Limits;
use crate::syntax::{Atom, Literal, Polarity, Program, Rule};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FuzzConfig {
    pub seed: u64,
    pub trials: u64,
    /// Size of the shared vocabulary.
    pub atoms: usize,
    /// Maximum rules per program.
    pub rules: usize,
    /// Maximum body size.
    pub body_len: usize,
    pub neg_prob: f64,
    pub strategies: Vec<Strategy>,
    pub postulates: Vec<PostulateId>,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            seed: 0,
            trials: 100,
            atoms: 6,
            rules: 8,
            body_len: 3,
            neg_prob: 0.3,
            strategies: Strategy::ALL.to_vec(),
            postulates: PostulateId::all().collect(),
        }
    }
}

impl FuzzConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        if self.atoms == 0 {
            return Err(Error::Config("atoms must be at least 1".into()));
        }
        if !(0.0..=1.0).contains(&self.neg_prob) {
            return Err(Error::Config(format!("neg_prob {} is outside [0, 1]", self.neg_prob)));
        }
        Ok(())
    }

    /// The vocabulary `a`, `b`, ..., `z`, then `a26`, `a27`, ...
    pub fn vocabulary(&self) -> Vec<Atom> {
        (0..self.atoms).map(atom_name).collect()
    }
}

fn atom_name(i: usize) -> Atom {
    let name = if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("a{i}")
    };
    Atom::new(&name).expect("generated names are identifiers")
}

/// One deterministic random stream.
#[derive(Clone, Debug)]
pub struct Stream {
    rng: ChaCha8Rng,
}

impl Stream {
    pub fn new(seed: u64, key: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(key);
        Stream { rng }
    }

    /// The stream of one fuzz trial.
    pub fn for_trial(seed: u64, postulate: PostulateId, strategy: Strategy, trial: u64) -> Self {
        let pair = PostulateId::all().position(|p| p == postulate).unwrap() as u64 * 3
            + Strategy::ALL.iter().position(|&s| s == strategy).unwrap() as u64;
        Stream::new(seed, pair << 32 | (trial & 0xffff_ffff))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform in `0..n`; `n` must be positive.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        let zone = u64::MAX - u64::MAX % n;
        loop {
            let x = self.next_u64();
            if x < zone {
                return x % n;
            }
        }
    }

    /// Uniform in `0..=n`.
    pub fn up_to(&mut self, n: usize) -> usize {
        self.below(n as u64 + 1) as usize
    }

    pub fn chance(&mut self, p: f64) -> bool {
        let unit = (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
        unit < p
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        &items[self.below(items.len() as u64) as usize]
    }
}

/// A program of up to `cfg.rules` rules over the full vocabulary.
pub fn gen_program(cfg: &FuzzConfig, stream: &mut Stream) -> Program {
    gen_program_over(cfg, &cfg.vocabulary(), 0, stream)
}

/// A program of between `min_rules` and `cfg.rules` rules (at least
/// `min_rules`) over `atoms`.
pub fn gen_program_over(cfg: &FuzzConfig, atoms: &[Atom], min_rules: usize, stream: &mut Stream) -> Program {
    let max = cfg.rules.max(min_rules);
    let target = min_rules + stream.up_to(max - min_rules);
    let mut program = Program::new();
    // Duplicates collapse; a bounded number of extra draws keeps the size
    // close to the target without looping on tiny vocabularies.
    for _ in 0..target * 4 {
        if program.len() >= target {
            break;
        }
        program.insert(gen_rule(cfg, atoms, stream));
    }
    program
}

fn gen_literal(cfg: &FuzzConfig, atoms: &[Atom], stream: &mut Stream) -> Literal {
    let atom = stream.pick(atoms).clone();
    let polarity = if stream.chance(cfg.neg_prob) {
        Polarity::Negative
    } else {
        Polarity::Positive
    };
    Literal::new(atom, polarity)
}

fn gen_rule(cfg: &FuzzConfig, atoms: &[Atom], stream: &mut Stream) -> Rule {
    let body_len = stream.up_to(cfg.body_len);
    let body: Vec<Literal> = (0..body_len).map(|_| gen_literal(cfg, atoms, stream)).collect();
    Rule::new(body, gen_literal(cfg, atoms, stream))
}

fn gen_profile(cfg: &FuzzConfig, atoms: &[Atom], stream: &mut Stream) -> Profile {
    let n = 1 + stream.below(3) as usize;
    let members = (0..n).map(|_| gen_program_over(cfg, atoms, 1, stream)).collect();
    Profile::new(members).expect("members are nonempty")
}

/// Each variable gets its own vocabulary: with probability one half all of
/// them use the full vocabulary, otherwise each draws a random subset of at
/// least half of it.
fn vocabularies(cfg: &FuzzConfig, vars: &[Var], stream: &mut Stream) -> BTreeMap<Var, Vec<Atom>> {
    let full = cfg.vocabulary();
    let shared = stream.chance(0.5);
    vars.iter()
        .map(|&var| {
            if shared {
                return (var, full.clone());
            }
            let keep = full.len().div_ceil(2) + stream.up_to(full.len() / 2);
            let mut pool = full.clone();
            for i in 0..keep {
                let j = i + stream.below((pool.len() - i) as u64) as usize;
                pool.swap(i, j);
            }
            pool.truncate(keep);
            (var, pool)
        })
        .collect()
}

/// `facts(cns(p))`, or `p` itself when that is empty or inconsistent: a
/// program with the same closure and, usually, different syntax.
fn variant(p: &Program) -> Program {
    match closure(p) {
        ClosedSet::Consistent(lits) if !lits.is_empty() => Program::from_facts(&lits),
        _ => p.clone(),
    }
}

/// A random instance for `id`, biased so that antecedents are not almost
/// always false.
pub fn gen_instance(cfg: &FuzzConfig, id: PostulateId, strategy: Strategy, stream: &mut Stream) -> Instance {
    let vars = id.variables();
    let vocab = vocabularies(cfg, vars, stream);
    let mut instance = Instance::new(strategy);
    for &var in vars {
        if var.is_profile() {
            instance.bind_profile(var, gen_profile(cfg, &vocab[&var], stream));
        } else {
            let min = usize::from(matches!(var, Var::P1 | Var::P2) && id == PostulateId::fp(4));
            instance.bind(var, gen_program_over(cfg, &vocab[&var], min, stream));
        }
    }
    if id == PostulateId::sa(5) && stream.chance(0.5) {
        let p2 = variant(&instance.programs()[&Var::P1]);
        let q2 = variant(&instance.programs()[&Var::Q1]);
        instance.bind(Var::P2, p2);
        instance.bind(Var::Q2, q2);
    }
    if id == PostulateId::fp(3) && stream.chance(0.5) {
        let q = variant(&instance.programs()[&Var::P]);
        let members = instance.profiles()[&Var::Phi1].members().iter().map(variant).collect();
        instance.bind(Var::Q, q);
        instance.bind_profile(Var::Phi2, Profile::new(members).expect("variants are nonempty"));
    }
    if id == PostulateId::fp(4) {
        let p = instance.programs()[&Var::P].clone();
        for var in [Var::P1, Var::P2] {
            if stream.chance(0.5) {
                let widened = instance.programs()[&var].union(&p);
                instance.bind(var, widened);
            }
        }
    }
    instance
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Record {
    pub postulate: PostulateId,
    pub strategy: Strategy,
    pub trial: u64,
    pub status: Status,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub holds: u64,
    pub violated: u64,
    pub vacuous: u64,
    pub skipped: u64,
}

impl Counts {
    pub fn non_vacuous(&self) -> u64 {
        self.holds + self.violated
    }

    fn add(&mut self, status: &Status) {
        match status {
            Status::Holds => self.holds += 1,
            Status::Violated => self.violated += 1,
            Status::Vacuous => self.vacuous += 1,
            Status::Skipped(_) => self.skipped += 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairSummary {
    pub postulate: PostulateId,
    pub strategy: Strategy,
    /// Whether the operators are known to satisfy the postulate.
    pub guaranteed: bool,
    pub counts: Counts,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub postulate: PostulateId,
    pub strategy: Strategy,
    pub trial: u64,
    pub bindings: BTreeMap<String, String>,
    pub witness: Vec<(String, ClosedSet)>,
    #[serde(skip)]
    pub instance: Instance,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FuzzReport {
    pub config: FuzzConfig,
    pub summary: Vec<PairSummary>,
    pub violations: Vec<Violation>,
    pub records: Vec<Record>,
}

impl FuzzReport {
    pub fn counts(&self, postulate: PostulateId, strategy: Strategy) -> Option<&Counts> {
        self.summary
            .iter()
            .find(|s| s.postulate == postulate && s.strategy == strategy)
            .map(|s| &s.counts)
    }

    /// Violations of postulates the operators are known to satisfy; any
    /// such entry is a bug.
    pub fn unexpected_violations(&self) -> impl Iterator<Item = &Violation> {
        self.violations.iter().filter(|v| v.postulate.is_guaranteed(v.strategy))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let c = &self.config;
        let mut out = format!(
            "seed {} trials {} atoms {} rules {}\n",
            c.seed, c.trials, c.atoms, c.rules
        );
        out.push_str("postulate strategy   holds violated  vacuous  skipped\n");
        for s in &self.summary {
            let mark = if s.guaranteed && s.counts.violated > 0 {
                "  !"
            } else {
                ""
            };
            let _ = writeln!(
                out,
                "{:<9} {:<8} {:>7} {:>8} {:>8} {:>8}{mark}",
                s.postulate.to_string(),
                s.strategy.short_name(),
                s.counts.holds,
                s.counts.violated,
                s.counts.vacuous,
                s.counts.skipped
            );
        }
        for v in &self.violations {
            let _ = writeln!(
                out,
                "\n{} violated under {} (trial {}):",
                v.postulate,
                v.strategy.short_name(),
                v.trial
            );
            for (var, text) in &v.bindings {
                let _ = writeln!(out, "  {var}: {}", text.replace('\n', " "));
            }
            for (label, value) in &v.witness {
                let _ = writeln!(out, "  {label} = {{{value}}}");
            }
        }
        out
    }
}

/// Runs `cfg.trials` instances for every selected (postulate, strategy)
/// pair. Trials run on the current rayon pool; the report is in trial order.
pub fn search(cfg: &FuzzConfig, limits: &Limits) -> Result<FuzzReport> {
    cfg.validate()?;
    let mut summary = Vec::new();
    let mut violations = Vec::new();
    let mut records = Vec::new();
    for &postulate in &cfg.postulates {
        for &strategy in &cfg.strategies {
            let outcomes = (0..cfg.trials)
                .into_par_iter()
                .map(|trial| {
                    let mut stream = Stream::for_trial(cfg.seed, postulate, strategy, trial);
                    let instance = gen_instance(cfg, postulate, strategy, &mut stream);
                    check(postulate, &instance, limits).map(|v| (trial, instance, v))
                })
                .collect::<Result<Vec<_>>>()?;
            let mut counts = Counts::default();
            for (trial, instance, verdict) in outcomes {
                counts.add(&verdict.status);
                if verdict.status == Status::Violated {
                    violations.push(Violation {
                        postulate,
                        strategy,
                        trial,
                        bindings: instance.render(),
                        witness: verdict.witness,
                        instance,
                    });
                }
                records.push(Record {
                    postulate,
                    strategy,
                    trial,
                    status: verdict.status,
                });
            }
            summary.push(PairSummary {
                postulate,
                strategy,
                guaranteed: postulate.is_guaranteed(strategy),
                counts,
            });
        }
    }
    Ok(FuzzReport {
        config: cfg.clone(),
        summary,
        violations,
        records,
    })
}

/// Greedily shrinks `instance` while `predicate` keeps holding. Single
/// steps, tried in order: drop an atom (every rule mentioning it), drop a
/// rule of a program, drop a rule of a profile member (dropping the member
/// if it empties and others remain), drop a body literal. After each
/// accepted step the search restarts, so the result is locally minimal with
/// respect to these steps.
pub fn shrink(instance: &Instance, predicate: impl Fn(&Instance) -> bool) -> Result<Instance> {
    if !predicate(instance) {
        return Err(Error::PredicateNotHolding);
    }
    let mut current = instance.clone();
    loop {
        let Some(next) = candidates(&current).find(|c| predicate(c)) else {
            return Ok(current);
        };
        current = next;
    }
}

/// Shrinks a violation of `id`, keeping it a violation.
pub fn shrink_violation(id: PostulateId, instance: &Instance, limits: &Limits) -> Result<Instance> {
    shrink(
        instance,
        |i| matches!(check(id, i, limits), Ok(v) if v.status == Status::Violated),
    )
}

fn candidates(instance: &Instance) -> impl Iterator<Item = Instance> + '_ {
    let atoms: Vec<Atom> = instance.atoms().into_iter().collect();
    let by_atom = atoms.into_iter().filter_map(move |atom| {
        let keep = |r: &Rule| r.literals().all(|l| l.atom() != &atom);
        let mut next = instance.clone();
        for p in next.programs_mut().values_mut() {
            *p = p.rules().filter(|r| keep(r)).cloned().collect();
        }
        for profile in next.profiles_mut().values_mut() {
            let members: Vec<Program> = profile
                .members()
                .iter()
                .map(|m| m.rules().filter(|r| keep(r)).cloned().collect::<Program>())
                .filter(|m| !m.is_empty())
                .collect();
            *profile = Profile::new(members).ok()?;
        }
        Some(next)
    });

    let by_rule = instance.programs().iter().flat_map(move |(&var, p)| {
        p.rules().map(move |rule| {
            let mut next = instance.clone();
            next.programs_mut().get_mut(&var).unwrap().remove(rule);
            next
        })
    });

    let by_member_rule = instance.profiles().iter().flat_map(move |(&var, profile)| {
        profile.members().iter().enumerate().flat_map(move |(i, member)| {
            member.rules().filter_map(move |rule| {
                let mut members = profile.members().to_vec();
                members[i].remove(rule);
                if members[i].is_empty() {
                    if members.len() == 1 {
                        return None;
                    }
                    members.remove(i);
                }
                let mut next = instance.clone();
                next.profiles_mut().insert(var, Profile::new(members).ok()?);
                Some(next)
            })
        })
    });

    let by_literal = instance.programs().iter().flat_map(move |(&var, p)| {
        p.rules().flat_map(move |rule| {
            rule.body().iter().map(move |lit| {
                let mut next = instance.clone();
                let program = next.programs_mut().get_mut(&var).unwrap();
                program.remove(rule);
                program.insert(rule.without_body_literal(lit));
                next
            })
        })
    });
    let by_member_literal = instance.profiles().iter().flat_map(move |(&var, profile)| {
        profile.members().iter().enumerate().flat_map(move |(i, member)| {
            member.rules().flat_map(move |rule| {
                rule.body().iter().map(move |lit| {
                    let mut members = profile.members().to_vec();
                    members[i].remove(rule);
                    members[i].insert(rule.without_body_literal(lit));
                    let mut next = instance.clone();
                    next.profiles_mut()
                        .insert(var, Profile::new(members).expect("members stay nonempty"));
                    next
                })
            })
        })
    });

    by_atom
        .chain(by_rule)
        .chain(by_member_rule)
        .chain(by_literal)
        .chain(by_member_literal)
}
