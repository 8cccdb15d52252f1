//! Reference implementations the optimized code is checked against.

#![allow(dead_code)]

use std::collections::BTreeSet;

use fcmerge::fuzz::{gen_program_over, FuzzConfig, Stream};
use fcmerge::{base, ClosedSet, Literal, Program, Rule};

/// Round-by-round fixpoint: fire every applicable rule until nothing new is
/// derived, then look for a complementary pair.
pub fn naive_closure(program: &Program) -> ClosedSet {
    let mut derived: BTreeSet<Literal> = BTreeSet::new();
    loop {
        let round: Vec<Literal> = program
            .rules()
            .filter(|r| r.body().is_subset(&derived) && !derived.contains(r.head()))
            .map(|r| r.head().clone())
            .collect();
        if round.is_empty() {
            break;
        }
        derived.extend(round);
    }
    if derived.iter().any(|l| derived.contains(&l.negate())) {
        ClosedSet::Bottom
    } else {
        ClosedSet::Consistent(derived)
    }
}

pub fn naive_consistent(program: &Program) -> bool {
    naive_closure(program).is_consistent()
}

/// Maximal `H ⊆ p` with the rank level inside `H` and `H ∪ q` consistent,
/// by enumerating every subset of `p`. Sorted like the library's output.
pub fn brute_force_extensions(p: &Program, q: &Program) -> Vec<Program> {
    if !naive_consistent(q) {
        return Vec::new();
    }
    let b = base(p);
    let level = b.level(b.rank_of(q)).clone();
    let rules: Vec<&Rule> = p.rules().collect();
    assert!(rules.len() <= 16, "brute force is exponential");
    let admissible: Vec<Program> = (0u32..1 << rules.len())
        .map(|mask| {
            rules
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, r)| (*r).clone())
                .collect::<Program>()
        })
        .filter(|h| level.is_subset(h) && naive_consistent(&h.union(q)))
        .collect();
    let mut maximal: Vec<Program> = admissible
        .iter()
        .filter(|h| !admissible.iter().any(|g| g.len() > h.len() && h.is_subset(g)))
        .cloned()
        .collect();
    maximal.sort_by_cached_key(Program::to_string);
    maximal
}

/// `facts(S) ∪ p`, closed; Bottom stays Bottom.
pub fn join(set: &ClosedSet, p: &Program) -> ClosedSet {
    match set {
        ClosedSet::Bottom => ClosedSet::Bottom,
        ClosedSet::Consistent(lits) => naive_closure(&Program::from_facts(lits).union(p)),
    }
}

/// Seeded program source for the property suites.
pub struct Programs {
    pub cfg: FuzzConfig,
    stream: Stream,
}

impl Programs {
    pub fn new(seed: u64, key: u64, atoms: usize, rules: usize) -> Self {
        Programs {
            cfg: FuzzConfig {
                seed,
                atoms,
                rules,
                ..FuzzConfig::default()
            },
            stream: Stream::new(seed, key),
        }
    }

    pub fn next(&mut self) -> Program {
        let vocabulary = self.cfg.vocabulary();
        gen_program_over(&self.cfg, &vocabulary, 0, &mut self.stream)
    }

    pub fn next_nonempty(&mut self) -> Program {
        let vocabulary = self.cfg.vocabulary();
        gen_program_over(&self.cfg, &vocabulary, 1, &mut self.stream)
    }

    pub fn stream(&mut self) -> &mut Stream {
        &mut self.stream
    }
}
