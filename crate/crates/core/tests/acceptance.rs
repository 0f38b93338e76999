//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary (`harness = false`) so the report reads top to
//! bottom; the process exits non-zero if any criterion fails.

mod common;

use std::process::{Command, ExitCode};
use std::time::Instant;

use common::{all_ids, fixtures, naive_extended_orbit, random};
use flowcx::classify::Classifier;
use flowcx::extended::{singleton_saddle_sets, Direction, FlowIndex};
use flowcx::format::{emit, parse};
use flowcx::gallery::{self, params_n, Params};
use flowcx::random::{flip_center_saddle, random_complex, SizeParams};
use flowcx::theorems::{verify_theorems, TheoremStatus};
use flowcx::validate::poincare_hopf_applies;
use flowcx::{validate, FlowComplex, IdSet};

const SEEDS: u64 = 1000;

struct Outcome {
    pass: bool,
    summary: String,
}

fn outcome(pass: bool, summary: impl Into<String>) -> Outcome {
    Outcome { pass, summary: summary.into() }
}

fn gallery_fixture(name: &str) -> FlowComplex {
    gallery::build(name, &Params::new()).unwrap()
}

/// The nine gallery fixtures followed by the seeded random complexes.
fn sweep() -> Vec<(String, FlowComplex)> {
    let mut out: Vec<(String, FlowComplex)> =
        gallery::NAMES.iter().map(|n| (n.to_string(), gallery_fixture(n))).collect();
    out.extend((0..SEEDS).map(|s| (format!("seed {s}"), random(s))));
    out
}

fn hierarchy(corpus: &[(String, FlowComplex)]) -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    for (name, fc) in corpus {
        let c = Classifier::new(fc);
        let chain = [
            c.extended_r_closed().verdict,
            c.extended_pap().verdict,
            c.extended_recurrent().verdict,
            c.non_wandering().verdict,
        ];
        if chain.windows(2).any(|w| w[0] && !w[1]) {
            bad.push(name.clone());
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        bad.is_empty() && secs < 60.0,
        format!("{} complexes, {} violations {:?}, {secs:.2}s", corpus.len(), bad.len(), bad),
    )
}

fn paper_classifications() -> Outcome {
    let mut failures = Vec::new();
    let mut check = |label: String, ok: bool| {
        if !ok {
            failures.push(label);
        }
    };
    let report = |fc: &FlowComplex| flowcx::classify(fc).unwrap();

    let r = report(&gallery_fixture("sphere_meridian"));
    check("sphere_meridian".into(), r.non_wandering.verdict && !r.extended_recurrent.verdict);

    let fc = gallery_fixture("genus2_mixed");
    let r = report(&fc);
    let c = Classifier::new(&fc);
    let non_closed = all_ids(&fc).iter().any(|x| !c.is_extended_orbit_closed(x));
    check("genus2_mixed".into(), r.extended_recurrent.verdict && !r.recurrent.verdict && non_closed);

    let fc = gallery_fixture("genus2_double_irrational");
    let r = report(&fc);
    check(
        "genus2_double_irrational".into(),
        r.extended_recurrent.verdict && !r.extended_pap.verdict && fc.saddles().count() == 2,
    );

    for n in 1..=5 {
        let fc = gallery::build("double_center_sphere", &params_n(n)).unwrap();
        check(format!("double_center_sphere(n={n})"), report(&fc).extended_r_closed.verdict);
    }

    let r = report(&gallery_fixture("halfdisk_sphere"));
    check("halfdisk_sphere".into(), !r.non_wandering.verdict && r.generalized_recurrent.verdict);

    for n in 2..=6 {
        let r = report(&gallery::build("comb_torus", &params_n(n)).unwrap());
        check(format!("comb_torus(n={n})"), r.non_wandering.verdict && !r.generalized_recurrent.verdict);
    }
    outcome(failures.is_empty(), format!("16 classifications, mismatches: {failures:?}"))
}

fn theorem_status(fc: &FlowComplex, name: &str) -> TheoremStatus {
    verify_theorems(fc, Some(&[name.to_owned()])).unwrap()[0].status
}

fn prop_2_6(corpus: &[(String, FlowComplex)]) -> Outcome {
    let (mut checked, mut regular_checked) = (0, 0);
    let mut bad = Vec::new();
    for (name, fc) in corpus.iter().chain(fixtures().iter()) {
        let c = Classifier::new(fc);
        if !c.non_wandering().verdict {
            continue;
        }
        checked += 1;
        let degenerate = fc.schemas.values().any(|a| a.is_degeneracy());
        let regular = c.regular().verdict;
        if regular != (c.extended_recurrent().verdict && !degenerate) {
            bad.push(format!("{name}: equivalence"));
        }
        if regular {
            regular_checked += 1;
            if theorem_status(fc, "regular-closed-or-dense-sides") != TheoremStatus::Holds {
                bad.push(format!("{name}: addendum"));
            }
        }
    }
    outcome(
        bad.is_empty() && regular_checked > 0,
        format!("{checked} non-wandering complexes ({regular_checked} regular), discrepancies: {bad:?}"),
    )
}

fn prop_3_2(corpus: &[(String, FlowComplex)]) -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for (name, fc) in corpus.iter().chain(fixtures().iter()) {
        if fc.has_dense_orbits() || !fc.is_non_identical() {
            continue;
        }
        checked += 1;
        let c = Classifier::new(fc);
        let pap = c.extended_pap().verdict;
        let er_finite = c.extended_recurrent().verdict && c.blocks_have_finite_singularities().verdict;
        let closed = c.all_extended_orbits_closed().verdict;
        if !(pap == er_finite && er_finite == closed) {
            bad.push(name.clone());
        }
    }
    outcome(bad.is_empty() && checked > 0, format!("{checked} complexes without dense orbits, discrepancies: {bad:?}"))
}

fn prop_4_3(corpus: &[(String, FlowComplex)]) -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for (name, fc) in corpus.iter().chain(fixtures().iter()) {
        if !fc.schemas.is_empty() {
            continue;
        }
        checked += 1;
        let c = Classifier::new(fc);
        if c.extended_r_closed().verdict != c.extended_pap().verdict {
            bad.push(name.clone());
        }
    }
    outcome(bad.is_empty() && checked > 0, format!("{checked} schema-free complexes, discrepancies: {bad:?}"))
}

fn corollary_4_4() -> Outcome {
    let mut generated = 0;
    let (mut agree_true, mut agree_false) = (0, 0);
    let mut bad = Vec::new();
    for seed in 0..SEEDS {
        let fc = random_complex(seed, SizeParams::genus_zero());
        if fc.surface.genus != 0
            || !fc.has_finite_singularities()
            || !fc.schemas.is_empty()
            || fc.has_dense_orbits()
            || !fc.is_non_identical()
        {
            continue;
        }
        generated += 1;
        let c = Classifier::new(&fc);
        let vals = [
            c.extended_r_closed().verdict,
            c.extended_pap().verdict,
            c.extended_recurrent().verdict,
            c.regular().verdict && c.non_wandering().verdict,
            c.all_extended_orbits_closed().verdict,
        ];
        if vals.iter().all(|v| *v == vals[0]) {
            if vals[0] {
                agree_true += 1;
            } else {
                agree_false += 1;
            }
        } else {
            bad.push(seed);
        }
    }
    outcome(
        bad.is_empty() && generated >= 20,
        format!("{generated} genus-0 complexes ({agree_true} all true, {agree_false} all false), disagreements at seeds {bad:?}"),
    )
}

fn oracle() -> Outcome {
    let dirs = [Direction::Forward, Direction::Backward, Direction::Both];
    let (mut queries, mut bad) = (0usize, Vec::new());
    for seed in 0..SEEDS {
        let fc = random(seed);
        let index = FlowIndex::new(&fc);
        for x in all_ids(&fc) {
            for dir in dirs {
                queries += 1;
                let fast = index.extended_orbit(&x, dir).unwrap();
                let (members, readded) = naive_extended_orbit(&fc, &x, dir);
                if fast.members != members || fast.self_readded != readded {
                    bad.push(format!("seed {seed} {x} {dir:?}"));
                }
            }
        }
    }
    let mut general = 0usize;
    for (name, fc) in fixtures().into_iter().chain((0..SEEDS).map(|s| (format!("seed {s}"), random(s)))) {
        let index = FlowIndex::new(&fc);
        let singletons = singleton_saddle_sets(&fc);
        for x in all_ids(&fc) {
            for dir in dirs {
                general += 1;
                let a = index.extended_orbit(&x, dir).unwrap();
                let b = index.generalized_orbit(&x, dir, &singletons).unwrap();
                if a.members != b.members || a.self_readded != b.self_readded {
                    bad.push(format!("{name} {x} {dir:?} (generalized)"));
                }
            }
        }
    }
    bad.truncate(10);
    outcome(
        bad.is_empty(),
        format!("{queries} oracle queries, {general} generalized queries, mismatches: {bad:?}"),
    )
}

fn transitivity_symmetry(corpus: &[(String, FlowComplex)]) -> Outcome {
    let plus = gallery_fixture("plus_saddle");
    let index = FlowIndex::new(&plus);
    let ids = all_ids(&plus);
    let orbit = |x: &str| index.extended_orbit(x, Direction::Both).unwrap().members;
    let witness = ids.iter().find_map(|x| {
        let ox = orbit(x);
        ox.iter()
            .find(|y| orbit(y) != ox)
            .map(|y| (x.clone(), y.clone()))
    });
    let mut bad = Vec::new();
    for (name, fc) in corpus.iter().chain(fixtures().iter()) {
        let index = FlowIndex::new(fc);
        let ids = all_ids(fc);
        let orbits: Vec<IdSet> =
            ids.iter().map(|x| index.extended_orbit(x, Direction::Both).unwrap().members).collect();
        for (i, x) in ids.iter().enumerate() {
            if !orbits[i].contains(x) {
                bad.push(format!("{name}: {x} not reflexive"));
            }
            for (j, y) in ids.iter().enumerate() {
                if orbits[i].contains(y) != orbits[j].contains(x) {
                    bad.push(format!("{name}: {x},{y} not symmetric"));
                }
            }
        }
    }
    bad.truncate(10);
    outcome(
        witness.is_some() && bad.is_empty(),
        format!("plus_saddle witness {witness:?}; reflexivity/symmetry failures: {bad:?}"),
    )
}

fn lemmas(corpus: &[(String, FlowComplex)]) -> Outcome {
    let names: Vec<String> = [
        "extended-periodic-is-finite-proper",
        "limit-cycle-forces-wandering",
        "extended-recurrent-dichotomy",
        "pap-implies-extended-recurrent",
        "r-closed-implies-pap",
    ]
    .map(String::from)
    .to_vec();
    let mut holds = vec![0usize; names.len()];
    let mut bad = Vec::new();
    for (name, fc) in corpus.iter().chain(fixtures().iter()) {
        for (i, r) in verify_theorems(fc, Some(&names)).unwrap().iter().enumerate() {
            match r.status {
                TheoremStatus::Holds => holds[i] += 1,
                TheoremStatus::Inapplicable => {}
                TheoremStatus::Violation => bad.push(format!("{name}: {} {}", r.name, r.detail)),
            }
        }
    }
    let lc = theorem_status(&gallery_fixture("sphere_limit_cycle"), "limit-cycle-forces-wandering");
    let counts: Vec<String> = names.iter().zip(&holds).map(|(n, h)| format!("{n}={h}")).collect();
    outcome(
        bad.is_empty() && lc == TheoremStatus::Holds && holds.iter().all(|h| *h > 0),
        format!("holds counts [{}]; sphere_limit_cycle Lemma 2.3 {lc}; violations: {bad:?}", counts.join(", ")),
    )
}

fn round_trip_and_determinism(corpus: &[(String, FlowComplex)]) -> Outcome {
    let mut bad = Vec::new();
    for (name, fc) in corpus.iter().chain(fixtures().iter()) {
        let text = emit(fc);
        match parse(&text) {
            Ok(back) if &back == fc && emit(&back) == text => {}
            _ => bad.push(format!("{name}: round trip")),
        }
    }
    // Byte-identical classify output over three CLI runs per fixture.
    let dir = std::env::temp_dir().join(format!("flowcx-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for name in gallery::NAMES {
        let path = dir.join(format!("{name}.fc"));
        std::fs::write(&path, emit(&gallery_fixture(name))).unwrap();
        let runs: Vec<Vec<u8>> = (0..3)
            .map(|_| {
                Command::new(env!("CARGO_BIN_EXE_flowcx"))
                    .args(["classify", "--json", path.to_str().unwrap()])
                    .output()
                    .unwrap()
                    .stdout
            })
            .collect();
        if runs[0].is_empty() || runs.windows(2).any(|w| w[0] != w[1]) {
            bad.push(format!("{name}: classify output differs"));
        }
    }
    let _ = std::fs::remove_dir_all(&dir);
    // Poincaré–Hopf mutations.
    let (mut mutated, mut caught, mut seed) = (0, 0, 0u64);
    while mutated < 100 && seed < 10 * SEEDS {
        let fc = random_complex(seed, SizeParams::closed_regular());
        seed += 1;
        if !poincare_hopf_applies(&fc) || !validate(&fc).is_ok() {
            continue;
        }
        if let Some(m) = flip_center_saddle(&fc, seed) {
            mutated += 1;
            if validate(&m).has_rule("poincare-hopf") {
                caught += 1;
            }
        }
    }
    bad.truncate(10);
    outcome(
        bad.is_empty() && mutated == 100 && caught == 100,
        format!(
            "{} round trips, 9 fixtures x 3 classify runs, Poincaré–Hopf mutations caught {caught}/{mutated}; failures: {bad:?}",
            corpus.len() + fixtures().len()
        ),
    )
}

fn main() -> ExitCode {
    let suite = Instant::now();
    let corpus = sweep();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("1 hierarchy chain", Box::new(|| hierarchy(&corpus))),
        ("2 paper classifications", Box::new(paper_classifications)),
        ("3 Prop 2.6 regular equivalence", Box::new(|| prop_2_6(&corpus))),
        ("4 Prop 3.2 no-dense equivalence", Box::new(|| prop_3_2(&corpus))),
        ("5 Prop 4.3 R-closed = p.a.p.", Box::new(|| prop_4_3(&corpus))),
        ("6 Corollary 4.4 genus zero", Box::new(corollary_4_4)),
        ("7 oracle equivalence", Box::new(oracle)),
        ("8 non-transitivity, symmetry", Box::new(|| transitivity_symmetry(&corpus))),
        ("9 lemma checks", Box::new(|| lemmas(&corpus))),
        ("10 round trip, determinism", Box::new(|| round_trip_and_determinism(&corpus))),
    ];
    let mut failed = 0;
    for (label, run) in &criteria {
        let t = Instant::now();
        let o = run();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        if !o.pass {
            failed += 1;
        }
        println!("[{tag}] {label} ({:.2}s): {}", t.elapsed().as_secs_f64(), o.summary);
    }
    let secs = suite.elapsed().as_secs_f64();
    println!("acceptance: {} passed, {failed} failed in {secs:.2}s", criteria.len() - failed);
    if failed == 0 && secs < 60.0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
