mod common;

use std::collections::BTreeSet;

use common::{brute_force_extensions, join, naive_closure};
use fcmerge::{
    closure, entails, hull, is_consistent, maximal_extensions, parse_profile, parse_program, revise_rank, stratify,
    Atom, ClosedSet, Limits, Literal, Polarity, Profile, Program, Render, Rule, Strategy as Op,
};
use proptest::prelude::*;

fn literal(atoms: usize) -> impl Strategy<Value = Literal> {
    (0..atoms, any::<bool>()).prop_map(|(i, negative)| {
        let atom = Atom::new(&format!("x{i}")).unwrap();
        Literal::new(
            atom,
            if negative {
                Polarity::Negative
            } else {
                Polarity::Positive
            },
        )
    })
}

fn rule(atoms: usize) -> impl Strategy<Value = Rule> {
    (prop::collection::vec(literal(atoms), 0..3), literal(atoms)).prop_map(|(body, head)| Rule::new(body, head))
}

fn program(atoms: usize, rules: usize) -> impl Strategy<Value = Program> {
    prop::collection::vec(rule(atoms), 0..=rules).prop_map(|rules| rules.into_iter().collect())
}

proptest! {
    #[test]
    fn closure_matches_naive_fixpoint(p in program(8, 12)) {
        prop_assert_eq!(closure(&p), naive_closure(&p));
    }

    #[test]
    fn closure_is_a_closure_operator(p in program(6, 8), extra in program(6, 4)) {
        let c = closure(&p);
        // Extensive on facts, idempotent, monotone.
        for fact in p.facts() {
            prop_assert!(c.contains(fact));
        }
        prop_assert_eq!(join(&c, &p), c.clone());
        prop_assert!(c.is_subset(&closure(&p.union(&extra))));
    }

    #[test]
    fn render_parse_round_trip(p in program(6, 10)) {
        let text = p.render();
        prop_assert_eq!(parse_program(&text).unwrap(), p.clone());
        let mut rules: Vec<Rule> = p.rules().cloned().collect();
        rules.reverse();
        let reversed: Program = rules.into_iter().collect();
        prop_assert_eq!(reversed.render(), text);
    }

    #[test]
    fn profile_round_trip(members in prop::collection::vec(program(4, 4), 1..4)) {
        let members: Vec<Program> = members.into_iter().filter(|m| !m.is_empty()).collect();
        prop_assume!(!members.is_empty());
        let profile = Profile::new(members).unwrap();
        prop_assert_eq!(parse_profile(&profile.render()).unwrap(), profile);
    }

    #[test]
    fn closed_set_round_trip(p in program(6, 8)) {
        let c = closure(&p);
        prop_assert_eq!(fcmerge::parse_closed_set(&c.render()).unwrap(), c);
    }

    #[test]
    fn fixpoint_idempotence(p in program(6, 8), q in program(6, 8)) {
        let whole = closure(&q.union(&p));
        prop_assert_eq!(join(&whole, &p), whole);
    }

    #[test]
    fn stratification_partitions_the_closure(p in program(6, 10)) {
        match stratify(&p) {
            Ok(strata) => {
                let c = closure(&p);
                let all: Vec<&Literal> = strata.literals().collect();
                let distinct: BTreeSet<&Literal> = all.iter().copied().collect();
                prop_assert_eq!(all.len(), distinct.len());
                prop_assert_eq!(Some(&distinct.into_iter().cloned().collect()), c.literals());
                // Only the fact layer may be empty.
                for layer in strata.layers().iter().skip(1) {
                    prop_assert!(!layer.is_empty());
                }
                if let Some(first) = strata.layers().first() {
                    let facts: BTreeSet<Literal> = p.facts().cloned().collect();
                    prop_assert_eq!(first, &facts);
                }
            }
            Err(_) => prop_assert!(!is_consistent(&p)),
        }
    }

    #[test]
    fn extensions_match_brute_force(p in program(5, 8), q in program(5, 4)) {
        let fast = maximal_extensions(&p, &q, &Limits::default()).unwrap();
        prop_assert_eq!(&fast, &brute_force_extensions(&p, &q));
        let h = hull(&p, &q, &Limits::default()).unwrap();
        for e in &fast {
            prop_assert!(h.is_subset(e));
            prop_assert!(is_consistent(&e.union(&q)));
        }
    }

    #[test]
    fn revision_success_and_chain(p in program(5, 8), q in program(5, 4)) {
        prop_assume!(is_consistent(&q));
        let limits = Limits::default();
        let results: Vec<ClosedSet> = Op::ALL.iter().map(|s| s.revise(&p, &q, &limits).unwrap()).collect();
        for r in &results {
            prop_assert!(r.is_consistent());
            prop_assert!(closure(&q).is_subset(r));
        }
        prop_assert!(results[0].is_subset(&results[1]));
        prop_assert!(results[1].is_subset(&results[2]));
    }

    #[test]
    fn entailment_is_a_preorder(p in program(5, 6), q in program(5, 6), r in program(5, 6)) {
        prop_assert!(entails(&p, &p));
        if entails(&p, &q) && entails(&q, &r) {
            prop_assert!(entails(&p, &r));
        }
        prop_assert!(entails(&p.union(&q), &p));
    }

    #[test]
    fn rank_revision_is_consistent(p in program(5, 8), q in program(5, 4)) {
        prop_assume!(is_consistent(&q));
        prop_assert!(is_consistent(&revise_rank(&p, &q)));
    }
}
