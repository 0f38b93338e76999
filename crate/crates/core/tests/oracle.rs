//! The indexed frontier fixpoint agrees with a naive full-recompute one.

mod common;

use common::{all_ids, fixtures, naive_extended_orbit, random};
use flowcx::extended::{singleton_saddle_sets, Direction, FlowIndex};
use flowcx::FlowComplex;

const DIRS: [Direction; 3] = [Direction::Forward, Direction::Backward, Direction::Both];

fn assert_matches_oracle(label: &str, fc: &FlowComplex) {
    let index = FlowIndex::new(fc);
    let singletons = singleton_saddle_sets(fc);
    for x in all_ids(fc) {
        for dir in DIRS {
            let fast = index.extended_orbit(&x, dir).unwrap();
            let (members, readded) = naive_extended_orbit(fc, &x, dir);
            assert_eq!(fast.members, members, "{label}: {x} {dir:?}");
            assert_eq!(fast.self_readded, readded, "{label}: {x} {dir:?} self_readded");
            let general = index.generalized_orbit(&x, dir, &singletons).unwrap();
            assert_eq!(general.members, fast.members, "{label}: {x} {dir:?} generalized");
            assert_eq!(general.self_readded, fast.self_readded, "{label}: {x} {dir:?}");
        }
    }
}

#[test]
fn fixtures_match_oracle() {
    for (name, fc) in fixtures() {
        assert_matches_oracle(&name, &fc);
    }
}

#[test]
fn random_complexes_match_oracle() {
    for seed in 0..300 {
        assert_matches_oracle(&format!("seed {seed}"), &random(seed));
    }
}

#[test]
fn provenance_rounds_are_monotone_and_final_set_is_a_fixpoint() {
    for seed in 0..200 {
        let fc = random(seed);
        let index = FlowIndex::new(&fc);
        for x in all_ids(&fc) {
            let e = index.extended_orbit(&x, Direction::Forward).unwrap();
            assert_eq!(e.provenance.len(), e.members.len());
            let rounds: Vec<u32> = e
                .provenance
                .values()
                .map(|p| match p {
                    flowcx::Provenance::Seed => 0,
                    flowcx::Provenance::SaddleAdded(r) => *r,
                })
                .collect();
            assert_eq!(rounds.iter().copied().max().unwrap_or(0), e.depth);
            // Every round up to the depth adds something: the member sets
            // grow strictly until they stabilise.
            for r in 0..=e.depth {
                assert!(rounds.contains(&r), "seed {seed}, {x}: round {r} empty");
            }
            // Re-expanding from any member stays inside the set.
            for m in &e.members {
                let again = index.extended_orbit(m, Direction::Forward).unwrap();
                assert!(again.members.is_subset(&e.members), "seed {seed}: {x} via {m}");
            }
        }
    }
}
