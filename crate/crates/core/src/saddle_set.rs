//! Saddle sets and isolation from minimal sets.
//!
//! A compact invariant set `F` is a saddle set when orbits arbitrarily close
//! to `F` leave every small neighborhood of it in both time directions. In
//! the symbolic model this is decided by looking for a witness class outside
//! `F` that accumulates on `F` and escapes both ways.

use serde::{Deserialize, Serialize};

use crate::error::{ModelError, SaddleSetFailure};
use crate::model::{Entity, FlowComplex, Id, IdSet, OrbitKind, SchemaKind};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SaddleSetVerdict {
    pub verdict: bool,
    pub witness: Option<Id>,
    pub rule: &'static str,
}

fn check_invariant(fc: &FlowComplex, set: &IdSet) -> Result<(), ModelError> {
    if let Some(m) = set.iter().find(|m| !fc.contains(m)) {
        return Err(ModelError::UnknownId(m.clone()));
    }
    fc.is_invariant_closed(set)
        .map_err(ModelError::NotInvariantClosed)
}

pub fn is_saddle_set(fc: &FlowComplex, set: &IdSet) -> Result<SaddleSetVerdict, ModelError> {
    check_invariant(fc, set)?;
    // Hyperbolic sectors of a topological saddle are always grazed-and-left.
    if set.iter().any(|m| fc.is_saddle(m)) {
        return Ok(SaddleSetVerdict {
            verdict: true,
            witness: None,
            rule: "hyperbolic-sector",
        });
    }
    for w in fc.all_ids() {
        if set.contains(w) {
            continue;
        }
        if let Some(rule) = grazes_and_escapes(fc, w, set) {
            return Ok(SaddleSetVerdict {
                verdict: true,
                witness: Some(w.clone()),
                rule,
            });
        }
    }
    Ok(SaddleSetVerdict {
        verdict: false,
        witness: None,
        rule: "no-escaping-witness",
    })
}

fn grazes_and_escapes(fc: &FlowComplex, w: &str, set: &IdSet) -> Option<&'static str> {
    let in_schema = fc
        .schemas
        .values()
        .any(|a| a.target.is_subset(set) && a.samples.iter().any(|s| s == w));
    match fc.entity(w)? {
        Entity::Family(f) => {
            // Members near a boundary that lies partly outside `F` travel away.
            let escapes = f
                .sides()
                .iter()
                .any(|(b, _)| !b.is_disjoint(set) && !b.is_subset(set));
            escapes.then_some("family-boundary")
        }
        Entity::Orbit(o) => {
            let closure = fc.closure_lenient(w);
            match o.kind {
                OrbitKind::Periodic | OrbitKind::LocallyDense | OrbitKind::Exceptional => {
                    let accumulates = !closure.is_disjoint(set) || in_schema;
                    (accumulates && !closure.is_subset(set)).then_some("recurrent-class")
                }
                OrbitKind::ProperNonClosed => {
                    let avoids = |r: &Option<crate::model::LimitRef>| {
                        r.as_ref()
                            .is_none_or(|r| fc.resolve_limit(r).is_disjoint(set))
                    };
                    (in_schema && avoids(&o.alpha) && avoids(&o.omega)).then_some("schema-transit")
                }
            }
        }
        Entity::Singular(_) => None,
    }
}

/// `F` is isolated unless a sequence of minimal sets outside `F` converges
/// onto it.
pub fn is_isolated(fc: &FlowComplex, set: &IdSet) -> Result<bool, ModelError> {
    check_invariant(fc, set)?;
    Ok(accumulating_schema(fc, set).is_none())
}

fn accumulating_schema<'a>(fc: &'a FlowComplex, set: &IdSet) -> Option<&'a Id> {
    fc.schemas
        .values()
        .filter(|a| {
            matches!(
                a.kind,
                SchemaKind::SingularitySequence | SchemaKind::FamilySequence
            )
        })
        .filter(|a| a.target.is_subset(set))
        .find(|a| {
            a.samples
                .iter()
                .any(|s| !set.contains(s) && is_minimal_sample(fc, s))
        })
        .map(|a| &a.id)
}

fn is_minimal_sample(fc: &FlowComplex, id: &str) -> bool {
    match fc.entity(id) {
        Some(Entity::Singular(_)) => true,
        Some(Entity::Orbit(o)) => o.kind == OrbitKind::Periodic,
        Some(Entity::Family(f)) => f.member_kind == crate::model::FamilyKind::PeriodicAnnulus,
        None => false,
    }
}

/// Accepts `F` only if it is invariant-closed, a saddle set, and isolated.
pub fn validate_isolated_saddle_set(
    fc: &FlowComplex,
    set: &IdSet,
) -> Result<(), SaddleSetFailure> {
    match check_invariant(fc, set) {
        Err(ModelError::UnknownId(id)) => return Err(SaddleSetFailure::UnknownId(id)),
        Err(ModelError::NotInvariantClosed(id)) => {
            return Err(SaddleSetFailure::NotInvariantClosed(id))
        }
        _ => {}
    }
    let saddle = is_saddle_set(fc, set).expect("invariance checked above");
    if !saddle.verdict {
        return Err(SaddleSetFailure::NotASaddleSet);
    }
    if let Some(schema) = accumulating_schema(fc, set) {
        return Err(SaddleSetFailure::NotIsolated(schema.clone()));
    }
    Ok(())
}

/// Saddle sets used by generalized extended orbits: every singleton saddle
/// plus each declared set flagged isolated. A flagged set that fails
/// validation is an error.
pub fn admitted_saddle_sets(fc: &FlowComplex) -> Result<Vec<IdSet>, ModelError> {
    let mut sets = crate::extended::singleton_saddle_sets(fc);
    for decl in fc.saddle_sets.values().filter(|d| d.isolated) {
        validate_isolated_saddle_set(fc, &decl.members).map_err(|reason| {
            ModelError::InvalidSaddleSet {
                name: decl.id.clone(),
                reason,
            }
        })?;
        if !sets.contains(&decl.members) {
            sets.push(decl.members.clone());
        }
    }
    Ok(sets)
}
