//! Structural invariants over generated complexes.

mod common;

use common::all_ids;
use flowcx::classify::Classifier;
use flowcx::extended::{Direction, FlowIndex};
use flowcx::format::{emit, parse};
use flowcx::random::{random_complex, SizeParams};
use flowcx::{validate, FlowComplex, IdSet};
use proptest::prelude::*;

fn sizes() -> impl Strategy<Value = SizeParams> {
    prop_oneof![
        Just(SizeParams::small()),
        Just(SizeParams::medium()),
        Just(SizeParams::closed_regular()),
        Just(SizeParams::genus_zero()),
    ]
}

fn complexes() -> impl Strategy<Value = FlowComplex> {
    (any::<u64>(), sizes()).prop_map(|(seed, size)| random_complex(seed, size))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn generated_complexes_validate(fc in complexes()) {
        let r = validate(&fc);
        prop_assert!(r.is_ok(), "{:?}", r.violations);
    }

    #[test]
    fn closure_is_idempotent(fc in complexes()) {
        for x in all_ids(&fc) {
            let c = fc.closure_of(&x).unwrap();
            let again: IdSet = c.iter().flat_map(|m| fc.closure_of(m).unwrap()).collect();
            prop_assert_eq!(&again, &c, "{}", x);
            prop_assert!(c.contains(&x));
        }
    }

    #[test]
    fn partition_is_disjoint_and_covering(fc in complexes()) {
        let p = fc.partition_orbits();
        let parts = p.parts();
        let total: usize = parts.iter().map(|s| s.len()).sum();
        let union: IdSet = parts.iter().flat_map(|s| s.iter().cloned()).collect();
        prop_assert_eq!(total, union.len());
        let all: IdSet = all_ids(&fc).into_iter().collect();
        prop_assert_eq!(union, all);
    }

    #[test]
    fn extended_membership_is_reflexive_and_symmetric(fc in complexes()) {
        let index = FlowIndex::new(&fc);
        let ids = all_ids(&fc);
        let orbits: Vec<IdSet> = ids
            .iter()
            .map(|x| index.extended_orbit(x, Direction::Both).unwrap().members)
            .collect();
        for (i, x) in ids.iter().enumerate() {
            prop_assert!(orbits[i].contains(x));
            for (j, y) in ids.iter().enumerate() {
                prop_assert_eq!(orbits[i].contains(y), orbits[j].contains(x), "{} {}", x, y);
            }
        }
    }

    #[test]
    fn text_format_round_trips(fc in complexes()) {
        let text = emit(&fc);
        let back = parse(&text).unwrap();
        prop_assert_eq!(&back, &fc);
        prop_assert_eq!(emit(&back), text);
    }

    #[test]
    fn hierarchy_chain_holds(fc in complexes()) {
        let c = Classifier::new(&fc);
        let rc = c.extended_r_closed().verdict;
        let pap = c.extended_pap().verdict;
        let er = c.extended_recurrent().verdict;
        let nw = c.non_wandering().verdict;
        prop_assert!(!rc || pap);
        prop_assert!(!pap || er);
        prop_assert!(!er || nw);
    }

    #[test]
    fn failing_verdicts_carry_witnesses(fc in complexes()) {
        let r = Classifier::new(&fc).report().unwrap();
        for v in [&r.non_wandering, &r.recurrent, &r.extended_recurrent, &r.extended_pap,
                  &r.extended_r_closed, &r.regular, &r.generalized_recurrent] {
            prop_assert_eq!(v.verdict, v.witness.is_none());
        }
    }
}

#[test]
fn generator_is_deterministic() {
    for seed in 0..20 {
        assert_eq!(random_complex(seed, SizeParams::small()), random_complex(seed, SizeParams::small()));
    }
}
