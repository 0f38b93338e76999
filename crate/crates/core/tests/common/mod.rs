//! Shared corpus and reference implementations for the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use flowcx::extended::Direction;
use flowcx::gallery::{self, params_n, Params};
use flowcx::random::{random_complex, SizeParams};
use flowcx::{FlowComplex, Id, IdSet, PointKind, Shape};

/// Every gallery fixture at its default parameters plus the parameter
/// sweeps the acceptance criteria name.
pub fn fixtures() -> Vec<(String, FlowComplex)> {
    let mut out: Vec<(String, FlowComplex)> = gallery::NAMES
        .iter()
        .map(|n| (n.to_string(), gallery::build(n, &Params::new()).unwrap()))
        .collect();
    for n in 1..=5 {
        out.push((format!("double_center_sphere(n={n})"), gallery::build("double_center_sphere", &params_n(n)).unwrap()));
    }
    for n in 2..=6 {
        out.push((format!("comb_torus(n={n})"), gallery::build("comb_torus", &params_n(n)).unwrap()));
        out.push((format!("nested_saddles_disk(n={n})"), gallery::build("nested_saddles_disk", &params_n(n)).unwrap()));
    }
    out
}

/// Size preset cycled by seed so a sweep covers every building block.
pub fn preset(seed: u64) -> SizeParams {
    match seed % 4 {
        0 => SizeParams::small(),
        1 => SizeParams::medium(),
        2 => SizeParams::closed_regular(),
        _ => SizeParams::genus_zero(),
    }
}

pub fn random(seed: u64) -> FlowComplex {
    random_complex(seed, preset(seed))
}

/// Reference extended orbit: recompute the whole step image from scratch
/// until nothing changes, looking limits up directly in the model.
pub fn naive_extended_orbit(fc: &FlowComplex, x: &str, dir: Direction) -> (IdSet, bool) {
    match dir {
        Direction::Both => {
            let (f, fs) = naive_extended_orbit(fc, x, Direction::Forward);
            let (b, bs) = naive_extended_orbit(fc, x, Direction::Backward);
            (f.union(&b).cloned().collect(), fs || bs)
        }
        _ => {
            let mut members: IdSet = [x.to_owned()].into();
            loop {
                let image: IdSet = members.iter().flat_map(|m| naive_step(fc, m, dir)).collect();
                let next: IdSet = members.union(&image).cloned().collect();
                if next == members {
                    return (members, image.contains(x));
                }
                members = next;
            }
        }
    }
}

fn is_saddle_point(fc: &FlowComplex, id: &str) -> bool {
    fc.singular_sets
        .get(id)
        .is_some_and(|s| s.shape == Shape::Point && s.kind == Some(PointKind::Saddle))
}

fn naive_step(fc: &FlowComplex, o: &str, dir: Direction) -> Vec<Id> {
    let (near, far): (fn(&FlowComplex, &str) -> Option<IdSet>, fn(&FlowComplex, &str) -> Option<IdSet>) = match dir {
        Direction::Backward => (FlowComplex::alpha_of, FlowComplex::omega_of),
        _ => (FlowComplex::omega_of, FlowComplex::alpha_of),
    };
    let Some(limit) = near(fc, o) else { return vec![] };
    if limit.len() != 1 {
        return vec![];
    }
    let s = limit.iter().next().unwrap().clone();
    if !is_saddle_point(fc, &s) {
        return vec![];
    }
    let mut out: Vec<Id> = fc
        .orbit_classes
        .keys()
        .filter(|z| far(fc, z).is_some_and(|l| l.len() == 1 && l.contains(&s)))
        .cloned()
        .collect();
    if s != o {
        out.push(s);
    }
    out
}

pub fn all_ids(fc: &FlowComplex) -> Vec<Id> {
    fc.all_ids().into_iter().cloned().collect()
}

pub fn set<const N: usize>(items: [&str; N]) -> BTreeSet<String> {
    items.iter().map(|s| s.to_string()).collect()
}
