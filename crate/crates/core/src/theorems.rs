//! Executable statements of the structural results: each theorem checks its
//! hypothesis on a complex and, when it applies, its conclusion.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::classify::{Classifier, DichotomyCase};
use crate::error::ModelError;
use crate::extended::Direction;
use crate::model::{Entity, FlowComplex, OrbitKind, PointKind, SchemaKind, Shape};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TheoremStatus {
    Holds,
    Inapplicable,
    #[serde(rename = "VIOLATION")]
    Violation,
}

impl fmt::Display for TheoremStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TheoremStatus::Holds => "Holds",
            TheoremStatus::Inapplicable => "Inapplicable",
            TheoremStatus::Violation => "VIOLATION",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremResult {
    pub name: String,
    pub status: TheoremStatus,
    pub detail: String,
}

pub const THEOREMS: [&str; 13] = [
    "hierarchy-chain",
    "limit-cycle-forces-wandering",
    "extended-periodic-is-finite-proper",
    "extended-recurrent-implies-nonwandering",
    "regular-iff-extended-recurrent-finite",
    "regular-closed-or-dense-sides",
    "extended-recurrent-dichotomy",
    "pap-implies-extended-recurrent",
    "no-dense-pap-equivalence",
    "r-closed-implies-pap",
    "r-closed-singularities-saddles-or-centers",
    "finite-sing-r-closed-iff-pap",
    "genus-zero-five-way-equivalence",
];

type Outcome = (TheoremStatus, String);

fn inapplicable(why: &str) -> Outcome {
    (TheoremStatus::Inapplicable, why.to_owned())
}

fn check(ok: bool, holds: impl Into<String>, violation: impl FnOnce() -> String) -> Outcome {
    if ok {
        (TheoremStatus::Holds, holds.into())
    } else {
        (TheoremStatus::Violation, violation())
    }
}

/// Runs the named theorems (all of them when `names` is `None`) in the
/// order of [`THEOREMS`].
pub fn verify_theorems(
    fc: &FlowComplex,
    names: Option<&[String]>,
) -> Result<Vec<TheoremResult>, ModelError> {
    if let Some(ns) = names {
        if let Some(bad) = ns.iter().find(|n| !THEOREMS.contains(&n.as_str())) {
            return Err(ModelError::Precondition(format!("unknown theorem `{bad}`")));
        }
    }
    let c = Classifier::new(fc);
    let mut out = Vec::new();
    for name in THEOREMS {
        if names.is_some_and(|ns| !ns.iter().any(|n| n == name)) {
            continue;
        }
        let (status, detail) = run(&c, name)?;
        out.push(TheoremResult {
            name: name.to_owned(),
            status,
            detail,
        });
    }
    Ok(out)
}

fn run(c: &Classifier, name: &str) -> Result<Outcome, ModelError> {
    Ok(match name {
        "hierarchy-chain" => hierarchy_chain(c),
        "limit-cycle-forces-wandering" => limit_cycle_forces_wandering(c),
        "extended-periodic-is-finite-proper" => extended_periodic_is_finite_proper(c),
        "extended-recurrent-implies-nonwandering" => {
            if !c.extended_recurrent().verdict {
                inapplicable("flow is not extended recurrent")
            } else {
                let nw = c.non_wandering();
                check(nw.verdict, "non-wandering", || format!("wandering: {:?}", nw.witness))
            }
        }
        "regular-iff-extended-recurrent-finite" => regular_iff(c),
        "regular-closed-or-dense-sides" => closed_or_dense_sides(c),
        "extended-recurrent-dichotomy" => dichotomy(c)?,
        "pap-implies-extended-recurrent" => {
            if !c.extended_pap().verdict {
                inapplicable("flow is not extended p.a.p.")
            } else {
                let er = c.extended_recurrent();
                let fin = c.blocks_have_finite_singularities();
                check(
                    er.verdict && fin.verdict,
                    "extended recurrent with finitely many singularities per block",
                    || format!("extended recurrence {:?}, block finiteness {:?}", er.witness, fin.witness),
                )
            }
        }
        "no-dense-pap-equivalence" => no_dense_pap_equivalence(c),
        "r-closed-implies-pap" => {
            if !c.extended_r_closed().verdict {
                inapplicable("flow is not extended R-closed")
            } else {
                let pap = c.extended_pap();
                check(pap.verdict, "extended p.a.p.", || format!("{:?}", pap.witness))
            }
        }
        "r-closed-singularities-saddles-or-centers" => r_closed_singularities(c),
        "finite-sing-r-closed-iff-pap" => {
            if !c.fc().schemas.is_empty() {
                inapplicable("accumulation schemas present")
            } else {
                let rc = c.extended_r_closed().verdict;
                let pap = c.extended_pap().verdict;
                check(rc == pap, format!("both {rc}"), || {
                    format!("R-closed {rc} but p.a.p. {pap}")
                })
            }
        }
        "genus-zero-five-way-equivalence" => five_way(c),
        other => unreachable!("unknown theorem {other}"),
    })
}

fn hierarchy_chain(c: &Classifier) -> Outcome {
    let chain = [
        ("extended R-closed", c.extended_r_closed().verdict),
        ("extended p.a.p.", c.extended_pap().verdict),
        ("extended recurrent", c.extended_recurrent().verdict),
        ("non-wandering", c.non_wandering().verdict),
    ];
    for w in chain.windows(2) {
        if w[0].1 && !w[1].1 {
            return (
                TheoremStatus::Violation,
                format!("{} holds but {} fails", w[0].0, w[1].0),
            );
        }
    }
    let verdicts: Vec<String> = chain.iter().map(|(n, v)| format!("{n}={v}")).collect();
    (TheoremStatus::Holds, verdicts.join(", "))
}

fn limit_cycle_forces_wandering(c: &Classifier) -> Outcome {
    let cycles = c.index.extended_limit_cycles();
    let Some(first) = cycles.first() else {
        return inapplicable("no extended limit cycles");
    };
    let fc = c.fc();
    let wandering = fc.orbit_classes.values().find(|o| {
        o.kind == OrbitKind::ProperNonClosed
            && !c.is_nonwandering_class(&o.id)
            && c
                .orbit(&o.id, Direction::Both)
                .is_ok_and(|e| e.members.len() == 1)
    });
    let cycle: Vec<&String> = first.cycle.iter().collect();
    check(
        wandering.is_some(),
        format!(
            "cycle {cycle:?}: `{}` wanders",
            wandering.map(|o| o.id.as_str()).unwrap_or_default()
        ),
        || format!("cycle {cycle:?} but no wandering proper orbit"),
    )
}

fn extended_periodic_is_finite_proper(c: &Classifier) -> Outcome {
    let fc = c.fc();
    let chain_samples: Vec<&String> = fc
        .schemas
        .values()
        .filter(|a| a.kind == SchemaKind::SaddleChain)
        .flat_map(|a| &a.samples)
        .collect();
    let mut any = false;
    for x in fc.all_ids() {
        if !c.index.is_extended_periodic(x) {
            continue;
        }
        any = true;
        let e = match c.orbit(x, Direction::Both) {
            Ok(e) => e,
            Err(err) => return (TheoremStatus::Violation, err.to_string()),
        };
        let bad = e.members.iter().find(|m| {
            let allowed = match fc.entity(m) {
                Some(Entity::Orbit(o)) => !o.kind.is_dense(),
                Some(Entity::Family(_)) => true,
                Some(Entity::Singular(s)) => s.is_saddle(),
                None => false,
            };
            !allowed || chain_samples.contains(m)
        });
        if let Some(m) = bad {
            return (
                TheoremStatus::Violation,
                format!("extended periodic orbit of `{x}` contains `{m}`"),
            );
        }
    }
    if any {
        (TheoremStatus::Holds, "all extended periodic orbits are finite proper/periodic/saddle unions".into())
    } else {
        inapplicable("no extended periodic orbits")
    }
}

fn has_degeneracy_schema(fc: &FlowComplex) -> bool {
    fc.schemas.values().any(|a| a.is_degeneracy())
}

fn regular_iff(c: &Classifier) -> Outcome {
    if !c.non_wandering().verdict {
        return inapplicable("flow is wandering");
    }
    let reg = c.regular().verdict;
    let er = c.extended_recurrent().verdict;
    let finite = !has_degeneracy_schema(c.fc());
    check(reg == (er && finite), format!("regular={reg}"), || {
        format!("regular={reg}, extended recurrent={er}, finite singularities={finite}")
    })
}

fn closed_or_dense_sides(c: &Classifier) -> Outcome {
    if !(c.regular().verdict && c.non_wandering().verdict) {
        return inapplicable("flow is not regular and non-wandering");
    }
    let fc = c.fc();
    let is_ld = |m: &String| {
        fc.orbit_classes
            .get(m)
            .is_some_and(|o| o.kind == OrbitKind::LocallyDense)
    };
    for x in fc.all_ids() {
        if c.is_extended_orbit_closed(x) {
            continue;
        }
        let dense_side = |dir| {
            c.orbit(x, dir)
                .is_ok_and(|e| e.members.iter().any(is_ld))
        };
        if !(dense_side(Direction::Forward) && dense_side(Direction::Backward)) {
            return (
                TheoremStatus::Violation,
                format!("extended orbit of `{x}` is neither closed nor dense on both sides"),
            );
        }
    }
    (TheoremStatus::Holds, "every extended orbit is closed or dense on both sides".into())
}

fn dichotomy(c: &Classifier) -> Result<Outcome, ModelError> {
    if !c.extended_recurrent().verdict {
        return Ok(inapplicable("flow is not extended recurrent"));
    }
    let mut checked = 0;
    for x in c.fc().all_ids() {
        if c.is_extended_orbit_closed(x) {
            continue;
        }
        checked += 1;
        if c.dichotomy_check(x)? == DichotomyCase::Violation {
            return Ok((
                TheoremStatus::Violation,
                format!("non-closed extended orbit of `{x}` has neither a non-saddle singularity in its closure nor a locally dense neighbour"),
            ));
        }
    }
    Ok(if checked == 0 {
        inapplicable("every extended orbit is closed")
    } else {
        (TheoremStatus::Holds, format!("{checked} non-closed extended orbits checked"))
    })
}

fn no_dense_pap_equivalence(c: &Classifier) -> Outcome {
    let fc = c.fc();
    if fc.has_dense_orbits() {
        return inapplicable("locally dense orbits present");
    }
    if !fc.is_non_identical() {
        return inapplicable("flow is identical");
    }
    let pap = c.extended_pap().verdict;
    let er_finite = c.extended_recurrent().verdict && c.blocks_have_finite_singularities().verdict;
    let closed = c.all_extended_orbits_closed().verdict;
    check(pap == er_finite && er_finite == closed, format!("all {pap}"), || {
        format!("p.a.p.={pap}, extended recurrent with finite blocks={er_finite}, all closed={closed}")
    })
}

fn r_closed_singularities(c: &Classifier) -> Outcome {
    if !c.extended_r_closed().verdict {
        return inapplicable("flow is not extended R-closed");
    }
    for s in c.fc().singular_sets.values() {
        let ok = s.shape == Shape::Point
            && (s.point_kind() == Some(PointKind::Saddle)
                || c.is_extended_center(&s.id).unwrap_or(false));
        if !ok {
            return (
                TheoremStatus::Violation,
                format!("`{}` is neither a saddle nor an extended center", s.id),
            );
        }
    }
    (TheoremStatus::Holds, "every singularity is a saddle or an extended center".into())
}

fn five_way(c: &Classifier) -> Outcome {
    let fc = c.fc();
    if fc.surface.genus != 0 {
        return inapplicable("genus is not zero");
    }
    if !fc.has_finite_singularities() || !fc.schemas.is_empty() {
        return inapplicable("singular set is not finite");
    }
    if fc.has_dense_orbits() {
        return inapplicable("locally dense orbits present");
    }
    if !fc.is_non_identical() {
        return inapplicable("flow is identical");
    }
    let vals = [
        ("R-closed", c.extended_r_closed().verdict),
        ("p.a.p.", c.extended_pap().verdict),
        ("extended recurrent", c.extended_recurrent().verdict),
        ("regular non-wandering", c.regular().verdict && c.non_wandering().verdict),
        ("all extended orbits closed", c.all_extended_orbits_closed().verdict),
    ];
    let agree = vals.iter().all(|(_, v)| *v == vals[0].1);
    check(agree, format!("all {}", vals[0].1), || {
        vals.iter()
            .map(|(n, v)| format!("{n}={v}"))
            .collect::<Vec<_>>()
            .join(", ")
    })
}

/// True when no theorem reports a violation.
pub fn all_hold(results: &[TheoremResult]) -> bool {
    results.iter().all(|r| r.status != TheoremStatus::Violation)
}
