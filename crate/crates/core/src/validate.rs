//! Structural consistency checks for a [`FlowComplex`].
//!
//! Violations are data: the report lists every broken rule, never just the
//! first one.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::model::{FlowComplex, Id, LimitRef, OrbitKind, PointKind, Shape};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Violation {
    pub id: Id,
    pub rule: String,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} ({})", self.id, self.rule, self.detail)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has_rule(&self, rule: &str) -> bool {
        self.violations.iter().any(|v| v.rule == rule)
    }

    fn push(&mut self, id: &str, rule: &str, detail: impl Into<String>) {
        self.violations.push(Violation {
            id: id.to_owned(),
            rule: rule.to_owned(),
            detail: detail.into(),
        });
    }
}

pub fn validate(fc: &FlowComplex) -> ValidationReport {
    let mut r = ValidationReport::default();
    check_unique_ids(fc, &mut r);
    check_references(fc, &mut r);
    check_singular_sets(fc, &mut r);
    check_orbit_classes(fc, &mut r);
    check_families(fc, &mut r);
    check_schemas(fc, &mut r);
    check_saddle_slots(fc, &mut r);
    check_closure(fc, &mut r);
    check_saddle_sets(fc, &mut r);
    check_poincare_hopf(fc, &mut r);
    r.violations.sort();
    r.violations.dedup();
    r
}

fn check_unique_ids(fc: &FlowComplex, r: &mut ValidationReport) {
    let mut seen: BTreeMap<&str, u32> = BTreeMap::new();
    let keys = fc
        .singular_sets
        .keys()
        .chain(fc.orbit_classes.keys())
        .chain(fc.families.keys())
        .chain(fc.schemas.keys())
        .chain(fc.saddle_sets.keys());
    for k in keys {
        *seen.entry(k).or_default() += 1;
    }
    for (k, n) in seen.into_iter().filter(|(_, n)| *n > 1) {
        r.push(k, "duplicate-id", format!("declared {n} times"));
    }
}

fn check_references(fc: &FlowComplex, r: &mut ValidationReport) {
    let need = |owner: &str, id: &str, r: &mut ValidationReport| {
        if !fc.contains(id) {
            r.push(owner, "unresolved-ref", format!("`{id}` is not declared"));
        }
    };
    for o in fc.orbit_classes.values() {
        for lr in [&o.alpha, &o.omega].into_iter().flatten() {
            for id in lr.ids() {
                need(&o.id, id, r);
            }
        }
        for id in o.closure_decl.iter().flatten() {
            need(&o.id, id, r);
        }
    }
    for f in fc.families.values() {
        for id in f.boundary0.iter().chain(&f.boundary1) {
            need(&f.id, id, r);
        }
    }
    for a in fc.schemas.values() {
        for id in a.samples.iter().chain(&a.target) {
            need(&a.id, id, r);
        }
    }
    for d in fc.saddle_sets.values() {
        for id in &d.members {
            need(&d.id, id, r);
        }
    }
}

fn check_singular_sets(fc: &FlowComplex, r: &mut ValidationReport) {
    for s in fc.singular_sets.values() {
        match (s.shape, s.kind) {
            (Shape::Point, None) => r.push(&s.id, "point-kind", "point singularity without a kind"),
            (Shape::Arc | Shape::Circle, Some(_)) => {
                r.push(&s.id, "point-kind", "continuum of fixed points carries a point kind")
            }
            _ => {}
        }
    }
}

fn check_orbit_classes(fc: &FlowComplex, r: &mut ValidationReport) {
    for o in fc.orbit_classes.values() {
        match o.kind {
            OrbitKind::ProperNonClosed if o.alpha.is_none() || o.omega.is_none() => {
                r.push(&o.id, "proper-limits", "proper non-closed orbit needs α and ω")
            }
            OrbitKind::Periodic if o.alpha.is_some() || o.omega.is_some() => {
                r.push(&o.id, "periodic-limits", "periodic orbit is its own limit set")
            }
            _ => {}
        }
        if o.kind.is_dense() {
            match &o.closure_decl {
                Some(decl) if decl.contains(&o.id) => {}
                _ => r.push(&o.id, "dense-closure-decl", "closure must be declared and contain the class"),
            }
        } else if o.closure_decl.is_some() {
            r.push(&o.id, "unexpected-closure-decl", "closure of a proper or periodic class is derived");
        }
        for lr in [&o.alpha, &o.omega].into_iter().flatten() {
            check_limit_ref(fc, &o.id, lr, r);
        }
        if o.kind == OrbitKind::LocallyDense {
            check_minimal_set(fc, o, r);
        }
    }
}

fn check_limit_ref(fc: &FlowComplex, owner: &str, lr: &LimitRef, r: &mut ValidationReport) {
    match lr {
        LimitRef::Sing(id) if fc.contains(id) && !fc.singular_sets.contains_key(id) => {
            r.push(owner, "limit-ref-kind", format!("`{id}` is not a singular set"))
        }
        LimitRef::Orbit(id) if fc.contains(id) && !fc.orbit_classes.contains_key(id) => {
            r.push(owner, "limit-ref-kind", format!("`{id}` is not an orbit class"))
        }
        LimitRef::Orbit(id) if id == owner => {
            r.push(owner, "limit-ref-kind", "an orbit cannot limit on itself by reference")
        }
        LimitRef::Set(set) => {
            if set.len() < 2 {
                r.push(owner, "degenerate-set-ref", "use a single-id reference instead");
            }
            if set.contains(owner) {
                r.push(owner, "limit-ref-kind", "limit set contains its own orbit");
            }
            let mut hull = set.clone();
            for m in set {
                if let Some(decl) = fc.orbit_classes.get(m).and_then(|o| o.closure_decl.as_ref()) {
                    hull.extend(decl.iter().cloned());
                }
            }
            for m in set.iter().filter(|m| fc.contains(m)) {
                if !fc.closure_lenient(m).is_subset(&hull) {
                    r.push(owner, "limit-set-invariant", format!("closure of `{m}` leaves the limit set"));
                }
            }
        }
        _ => {}
    }
}

fn check_minimal_set(fc: &FlowComplex, o: &crate::model::OrbitClass, r: &mut ValidationReport) {
    let Some(decl) = &o.closure_decl else { return };
    for m in decl {
        if let Some(other) = fc.orbit_classes.get(m) {
            if other.kind == OrbitKind::LocallyDense && other.closure_decl.as_ref() != Some(decl) {
                r.push(&o.id, "minimal-set-consistency", format!("`{m}` declares a different closure"));
            }
        }
    }
    for lr in [&o.alpha, &o.omega].into_iter().flatten() {
        if !fc.resolve_limit(lr).is_subset(decl) {
            r.push(&o.id, "closure-consistency", "limit set outside the declared closure");
        }
    }
}

fn check_families(fc: &FlowComplex, r: &mut ValidationReport) {
    for f in fc.families.values() {
        for (b, shrinks) in f.sides() {
            if b.is_empty() {
                r.push(&f.id, "family-boundary-empty", "boundary set is empty");
                continue;
            }
            if let Err(m) = fc.is_invariant_closed(b) {
                r.push(&f.id, "family-boundary-invariant", format!("closure of `{m}` leaves the boundary"));
            }
            if b.contains(&f.id) {
                r.push(&f.id, "family-boundary-invariant", "family bounds itself");
            }
            if shrinks {
                let single_point = b.len() == 1
                    && fc
                        .singular_sets
                        .get(b.iter().next().unwrap())
                        .is_some_and(|s| s.shape == Shape::Point);
                if !single_point {
                    r.push(&f.id, "family-shrink-boundary", "shrinking side must be one point singularity");
                }
            }
        }
    }
}

fn check_schemas(fc: &FlowComplex, r: &mut ValidationReport) {
    for a in fc.schemas.values() {
        if a.samples.is_empty() {
            r.push(&a.id, "schema-samples-empty", "no sample pattern");
        }
        if a.target.is_empty() {
            r.push(&a.id, "schema-target-empty", "no target");
        }
        if a.samples.iter().any(|s| a.target.contains(s)) {
            r.push(&a.id, "schema-target-overlap", "target meets the samples");
        }
    }
}

fn check_saddle_slots(fc: &FlowComplex, r: &mut ValidationReport) {
    let mut slots: BTreeMap<&Id, (u32, u32)> = fc.saddles().map(|s| (s, (0, 0))).collect();
    for o in fc.orbit_classes.values() {
        if let Some(s) = o.alpha.as_ref().and_then(LimitRef::as_point) {
            if let Some(e) = slots.get_mut(s) {
                e.0 += 1;
            }
        }
        if let Some(s) = o.omega.as_ref().and_then(LimitRef::as_point) {
            if let Some(e) = slots.get_mut(s) {
                e.1 += 1;
            }
        }
    }
    for (s, (unstable, stable)) in slots {
        if unstable != 2 || stable != 2 {
            r.push(
                s,
                "saddle-slot-count",
                format!("{unstable} unstable and {stable} stable separatrices, expected 2 and 2"),
            );
        }
    }
}

fn check_closure(fc: &FlowComplex, r: &mut ValidationReport) {
    for id in fc.all_ids() {
        let c = fc.closure_lenient(id);
        for m in &c {
            if fc.contains(m) && !fc.closure_lenient(m).is_subset(&c) {
                r.push(id, "closure-not-transitive", format!("closure of `{m}` escapes"));
                break;
            }
        }
    }
}

fn check_saddle_sets(fc: &FlowComplex, r: &mut ValidationReport) {
    for d in fc.saddle_sets.values() {
        if d.members.iter().any(|m| !fc.contains(m)) {
            continue;
        }
        if let Err(m) = fc.is_invariant_closed(&d.members) {
            r.push(&d.id, "saddleset-not-invariant", format!("closure of `{m}` leaves the set"));
            continue;
        }
        if let Ok(v) = crate::saddle_set::is_saddle_set(fc, &d.members) {
            if !v.verdict {
                r.push(&d.id, "saddleset-not-saddle-set", "no grazing orbit escapes in both directions");
            }
        }
        if let Ok(iso) = crate::saddle_set::is_isolated(fc, &d.members) {
            if iso != d.isolated {
                r.push(&d.id, "saddleset-isolation-mismatch", format!("declared isolated={}, computed {iso}", d.isolated));
            }
        }
    }
}

/// `#centers + #sinks + #sources - #saddles = 2 - 2g`, checked only for
/// closed orientable surfaces whose singularities are all non-degenerate
/// points.
pub fn poincare_hopf_applies(fc: &FlowComplex) -> bool {
    fc.surface.is_closed()
        && fc.surface.orientable
        && fc.schemas.is_empty()
        && fc
            .singular_sets
            .values()
            .all(|s| s.point_kind().is_some_and(PointKind::is_nondegenerate))
}

fn check_poincare_hopf(fc: &FlowComplex, r: &mut ValidationReport) {
    if !poincare_hopf_applies(fc) {
        return;
    }
    let sum: i64 = fc
        .singular_sets
        .values()
        .filter_map(|s| s.point_kind().and_then(PointKind::index))
        .sum();
    let euler = 2 - 2 * i64::from(fc.surface.genus);
    if sum != euler {
        r.push("surface", "poincare-hopf", format!("index sum {sum} != Euler characteristic {euler}"));
    }
}
