//! Decision procedures for the recurrence hierarchy
//! (extended R-closed ⇒ extended p.a.p. ⇒ extended recurrent ⇒ non-wandering)
//! and for singularity character.

use std::cell::RefCell;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::ModelError;
use crate::extended::{Direction, ExtendedOrbitSet, FlowIndex};
use crate::model::{
    Entity, FamilyKind, FlowComplex, Id, IdSet, OrbitKind, PointKind, SchemaKind, Shape,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub ids: Vec<Id>,
    pub rule: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub verdict: bool,
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn holds() -> Self {
        Verdict {
            verdict: true,
            witness: None,
        }
    }

    pub fn fails<I: IntoIterator<Item = S>, S: Into<Id>>(ids: I, rule: &str) -> Self {
        Verdict {
            verdict: false,
            witness: Some(Witness {
                ids: ids.into_iter().map(Into::into).collect(),
                rule: rule.to_owned(),
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub non_wandering: Verdict,
    pub recurrent: Verdict,
    pub extended_recurrent: Verdict,
    pub extended_pap: Verdict,
    #[serde(rename = "extended_R_closed")]
    pub extended_r_closed: Verdict,
    pub regular: Verdict,
    pub generalized_recurrent: Verdict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DichotomyCase {
    NonSaddleSingularityInClosure,
    MeetsLocallyDense,
    Violation,
}

/// Per-complex classification state. Extended orbits and closure blocks are
/// memoized, so share one `Classifier` across several queries.
pub struct Classifier<'a> {
    pub index: FlowIndex<'a>,
    orbits: RefCell<BTreeMap<(Id, Direction), ExtendedOrbitSet>>,
    blocks: RefCell<BTreeMap<Id, IdSet>>,
}

impl<'a> Classifier<'a> {
    pub fn new(fc: &'a FlowComplex) -> Self {
        Classifier {
            index: FlowIndex::new(fc),
            orbits: RefCell::new(BTreeMap::new()),
            blocks: RefCell::new(BTreeMap::new()),
        }
    }

    pub fn fc(&self) -> &'a FlowComplex {
        self.index.fc
    }

    pub fn orbit(&self, x: &str, dir: Direction) -> Result<ExtendedOrbitSet, ModelError> {
        let key = (x.to_owned(), dir);
        if let Some(e) = self.orbits.borrow().get(&key) {
            return Ok(e.clone());
        }
        let e = self.index.extended_orbit(x, dir)?;
        self.orbits.borrow_mut().insert(key, e.clone());
        Ok(e)
    }

    fn ids(&self) -> Vec<&'a Id> {
        self.fc().all_ids()
    }

    /// Classical recurrence of one class; symmetric in time for every class
    /// kind the model carries.
    pub fn is_positively_recurrent(&self, x: &str) -> bool {
        match self.fc().entity(x) {
            Some(Entity::Singular(_)) => true,
            Some(Entity::Orbit(o)) => match o.kind {
                OrbitKind::Periodic => true,
                OrbitKind::ProperNonClosed => false,
                OrbitKind::LocallyDense | OrbitKind::Exceptional => {
                    o.closure_decl.as_ref().is_some_and(|d| d.contains(x))
                }
            },
            Some(Entity::Family(f)) => f.member_kind == FamilyKind::PeriodicAnnulus,
            None => false,
        }
    }

    fn is_extended_recurrent_in(&self, x: &str, dir: Direction) -> bool {
        if self.is_positively_recurrent(x) {
            return true;
        }
        // Members of a region of closed extended orbits return through their saddles.
        if self
            .fc()
            .families
            .get(x)
            .is_some_and(|f| f.member_kind == FamilyKind::ClosedExtendedOrbitRegion)
        {
            return true;
        }
        let Ok(e) = self.orbit(x, dir) else {
            return false;
        };
        e.self_readded
            || e
                .saddle_added()
                .any(|o| self.fc().closure_lenient(o).contains(x))
    }

    pub fn is_extended_positively_recurrent(&self, x: &str) -> bool {
        self.is_extended_recurrent_in(x, Direction::Forward)
    }

    pub fn is_extended_negatively_recurrent(&self, x: &str) -> bool {
        self.is_extended_recurrent_in(x, Direction::Backward)
    }

    pub fn recurrent(&self) -> Verdict {
        match self.ids().into_iter().find(|x| !self.is_positively_recurrent(x)) {
            Some(x) => Verdict::fails([x.clone()], "not-recurrent"),
            None => Verdict::holds(),
        }
    }

    pub fn extended_recurrent(&self) -> Verdict {
        for x in self.ids() {
            if !self.is_extended_positively_recurrent(x) {
                return Verdict::fails([x.clone()], "not-extended-positively-recurrent");
            }
            if !self.is_extended_negatively_recurrent(x) {
                return Verdict::fails([x.clone()], "not-extended-negatively-recurrent");
            }
        }
        Verdict::holds()
    }

    /// A proper non-closed class is non-wandering only through a declared
    /// route: it lies in the closure of a dense class, on the boundary of a
    /// family of closed curves, or in the target of a family sequence.
    pub fn is_nonwandering_class(&self, p: &str) -> bool {
        let fc = self.fc();
        match fc.orbit_classes.get(p) {
            Some(o) if o.kind == OrbitKind::ProperNonClosed => {}
            _ => return true,
        }
        let in_dense_closure = fc.orbit_classes.values().any(|r| {
            r.kind.is_dense() && r.closure_decl.as_ref().is_some_and(|d| d.contains(p))
        });
        let on_family_boundary = fc
            .families
            .values()
            .any(|f| f.boundary0.contains(p) || f.boundary1.contains(p));
        let schema_target = fc
            .schemas
            .values()
            .any(|a| a.kind == SchemaKind::FamilySequence && a.target.contains(p));
        in_dense_closure || on_family_boundary || schema_target
    }

    pub fn non_wandering(&self) -> Verdict {
        match self.ids().into_iter().find(|p| !self.is_nonwandering_class(p)) {
            Some(p) => Verdict::fails([p.clone()], "wandering-proper-orbit"),
            None => Verdict::holds(),
        }
    }

    /// Closure of the extended orbit of `x`.
    pub fn block(&self, x: &str) -> IdSet {
        if let Some(b) = self.blocks.borrow().get(x) {
            return b.clone();
        }
        let b = match self.orbit(x, Direction::Both) {
            Ok(e) => self.index.closure_of_set(&e.members),
            Err(_) => IdSet::new(),
        };
        self.blocks.borrow_mut().insert(x.to_owned(), b.clone());
        b
    }

    pub fn extended_pap(&self) -> Verdict {
        let mut reps: Vec<(&Id, IdSet)> = Vec::new();
        for x in self.ids() {
            let b = self.block(x);
            if reps.iter().any(|(_, r)| *r == b) {
                continue;
            }
            if let Some((y, _)) = reps.iter().find(|(_, r)| !r.is_disjoint(&b)) {
                return Verdict::fails([(*y).clone(), x.clone()], "overlapping-unequal-blocks");
            }
            reps.push((x, b));
        }
        Verdict::holds()
    }

    pub fn extended_r_closed(&self) -> Verdict {
        let pap = self.extended_pap();
        if !pap.verdict {
            let ids = pap.witness.map(|w| w.ids).unwrap_or_default();
            return Verdict::fails(ids, "not-extended-pap");
        }
        let fc = self.fc();
        for f in fc.families.values() {
            for (boundary, shrinks) in f.sides() {
                // A shrinking side is a single point: its limit block is trivial.
                if shrinks {
                    continue;
                }
                for b in boundary {
                    if !boundary.is_subset(&self.block(b)) {
                        return Verdict::fails([f.id.clone(), b.clone()], "family-limit-split");
                    }
                }
            }
        }
        for a in fc.schemas.values() {
            let limit = self.schema_limit(&a.samples, &a.target);
            for t in &a.target {
                if !limit.is_subset(&self.block(t)) {
                    return Verdict::fails([a.id.clone(), t.clone()], "schema-limit-split");
                }
            }
        }
        Verdict::holds()
    }

    /// Limit of the sample blocks: blocks that shrink away from the target
    /// converge onto it, blocks that already touch it persist.
    fn schema_limit(&self, samples: &[Id], target: &IdSet) -> IdSet {
        let mut limit = target.clone();
        for s in samples {
            let b = self.block(s);
            if !b.is_disjoint(target) {
                limit.extend(b);
            }
        }
        limit
    }

    pub fn regular(&self) -> Verdict {
        let fc = self.fc();
        let degenerate: Vec<Id> = fc
            .singular_sets
            .values()
            .filter(|s| !s.point_kind().is_some_and(PointKind::is_nondegenerate))
            .map(|s| s.id.clone())
            .collect();
        if !degenerate.is_empty() {
            return Verdict::fails(degenerate, "degenerate-singularity");
        }
        let schemas: Vec<Id> = fc
            .schemas
            .values()
            .filter(|a| a.is_degeneracy())
            .map(|a| a.id.clone())
            .collect();
        if !schemas.is_empty() {
            return Verdict::fails(schemas, "accumulating-singularities");
        }
        Verdict::holds()
    }

    pub fn is_extended_center(&self, s: &str) -> Result<bool, ModelError> {
        let fc = self.fc();
        let sing = match fc.entity(s) {
            None => return Err(ModelError::UnknownId(s.to_owned())),
            Some(Entity::Singular(p)) if p.shape == Shape::Point => p,
            Some(_) => return Err(ModelError::NotAPoint(s.to_owned())),
        };
        if sing.point_kind() == Some(PointKind::Center) {
            return Ok(true);
        }
        Ok(fc.families.values().any(|f| {
            f.sides()
                .iter()
                .any(|(b, shrinks)| *shrinks && b.len() == 1 && b.contains(s))
        }))
    }

    pub fn generalized_recurrent(&self) -> Result<Verdict, ModelError> {
        let sets = crate::saddle_set::admitted_saddle_sets(self.fc())?;
        for x in self.ids() {
            for dir in [Direction::Forward, Direction::Backward] {
                if !self.is_generalized_recurrent_in(x, dir, &sets)? {
                    return Ok(Verdict::fails([x.clone()], "not-generalized-recurrent"));
                }
            }
        }
        Ok(Verdict::holds())
    }

    fn is_generalized_recurrent_in(
        &self,
        x: &str,
        dir: Direction,
        sets: &[IdSet],
    ) -> Result<bool, ModelError> {
        if self.is_extended_recurrent_in(x, dir) {
            return Ok(true);
        }
        let e = self.index.generalized_orbit(x, dir, sets)?;
        Ok(e.self_readded
            || e
                .saddle_added()
                .any(|o| self.fc().closure_lenient(o).contains(x)))
    }

    /// Whether the closure of the extended orbit of `x` stays inside it.
    pub fn is_extended_orbit_closed(&self, x: &str) -> bool {
        match self.orbit(x, Direction::Both) {
            Ok(e) => self.index.is_closed_set(&e.members),
            Err(_) => false,
        }
    }

    pub fn all_extended_orbits_closed(&self) -> Verdict {
        match self.ids().into_iter().find(|x| !self.is_extended_orbit_closed(x)) {
            Some(x) => Verdict::fails([x.clone()], "non-closed-extended-orbit"),
            None => Verdict::holds(),
        }
    }

    /// A block holds infinitely many singular points when a chain or
    /// sequence of singularities has both samples and target inside it.
    pub fn block_has_infinitely_many_singularities(&self, block: &IdSet) -> bool {
        self.fc().schemas.values().any(|a| {
            a.is_degeneracy()
                && a.samples.iter().any(|s| block.contains(s))
                && !a.target.is_disjoint(block)
        })
    }

    pub fn blocks_have_finite_singularities(&self) -> Verdict {
        for x in self.ids() {
            if self.block_has_infinitely_many_singularities(&self.block(x)) {
                return Verdict::fails([x.clone()], "infinitely-many-singularities-in-block");
            }
        }
        Verdict::holds()
    }

    pub fn dichotomy_check(&self, x: &str) -> Result<DichotomyCase, ModelError> {
        if !self.extended_recurrent().verdict {
            return Err(ModelError::Precondition("flow is not extended recurrent".into()));
        }
        let e = self.orbit(x, Direction::Both)?;
        let closure = self.index.closure_of_set(&e.members);
        if closure.is_subset(&e.members) {
            return Err(ModelError::Precondition(format!(
                "extended orbit of `{x}` is closed"
            )));
        }
        let fc = self.fc();
        let non_saddle = closure.iter().any(|m| {
            fc.singular_sets
                .get(m)
                .is_some_and(|s| s.point_kind() != Some(PointKind::Saddle))
        });
        if non_saddle {
            return Ok(DichotomyCase::NonSaddleSingularityInClosure);
        }
        let meets_dense = fc
            .orbit_classes
            .values()
            .filter(|o| o.kind == OrbitKind::LocallyDense)
            .any(|o| !fc.closure_lenient(&o.id).is_disjoint(&e.members));
        Ok(if meets_dense {
            DichotomyCase::MeetsLocallyDense
        } else {
            DichotomyCase::Violation
        })
    }

    pub fn report(&self) -> Result<ClassificationReport, ModelError> {
        Ok(ClassificationReport {
            non_wandering: self.non_wandering(),
            recurrent: self.recurrent(),
            extended_recurrent: self.extended_recurrent(),
            extended_pap: self.extended_pap(),
            extended_r_closed: self.extended_r_closed(),
            regular: self.regular(),
            generalized_recurrent: self.generalized_recurrent()?,
        })
    }
}

pub fn classify(fc: &FlowComplex) -> Result<ClassificationReport, ModelError> {
    Classifier::new(fc).report()
}

pub fn is_positively_recurrent(fc: &FlowComplex, x: &str) -> bool {
    Classifier::new(fc).is_positively_recurrent(x)
}

pub fn is_extended_positively_recurrent(fc: &FlowComplex, x: &str) -> bool {
    Classifier::new(fc).is_extended_positively_recurrent(x)
}

pub fn is_extended_recurrent(fc: &FlowComplex) -> Verdict {
    Classifier::new(fc).extended_recurrent()
}

pub fn is_nonwandering(fc: &FlowComplex) -> Verdict {
    Classifier::new(fc).non_wandering()
}

pub fn is_extended_pap(fc: &FlowComplex) -> Verdict {
    Classifier::new(fc).extended_pap()
}

pub fn is_extended_r_closed(fc: &FlowComplex) -> Verdict {
    Classifier::new(fc).extended_r_closed()
}

pub fn is_regular(fc: &FlowComplex) -> bool {
    Classifier::new(fc).regular().verdict
}

pub fn is_extended_center(fc: &FlowComplex, s: &str) -> Result<bool, ModelError> {
    Classifier::new(fc).is_extended_center(s)
}

pub fn is_generalized_recurrent(fc: &FlowComplex) -> Result<Verdict, ModelError> {
    Classifier::new(fc).generalized_recurrent()
}

pub fn dichotomy_check(fc: &FlowComplex, x: &str) -> Result<DichotomyCase, ModelError> {
    Classifier::new(fc).dichotomy_check(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{ids, Family, OrbitClass, SingularSet, SurfaceInfo};

    /// One periodic family between two centers.
    fn two_centers() -> FlowComplex {
        let mut fc = FlowComplex::new(SurfaceInfo::closed_orientable(0));
        fc.add_singular(SingularSet::point("c1", PointKind::Center))
            .add_singular(SingularSet::point("c2", PointKind::Center))
            .add_family(Family {
                shrinks1: true,
                ..Family::center_disk("f", "c1", ids(["c2"]))
            });
        fc
    }

    #[test]
    fn two_center_sphere_is_r_closed() {
        let fc = two_centers();
        assert!(crate::validate::validate(&fc).is_ok());
        let r = classify(&fc).unwrap();
        assert!(r.extended_pap.verdict);
        assert!(r.extended_r_closed.verdict);
        assert!(r.recurrent.verdict);
        assert!(is_extended_center(&fc, "c1").unwrap());
    }

    #[test]
    fn failing_verdicts_carry_witnesses() {
        let mut fc = FlowComplex::new(SurfaceInfo::closed_orientable(0));
        fc.add_singular(SingularSet::point("r", PointKind::Source))
            .add_singular(SingularSet::point("k", PointKind::Sink))
            .add_orbit(OrbitClass::arc("g", "r", "k"));
        let r = classify(&fc).unwrap();
        for v in [
            &r.non_wandering,
            &r.recurrent,
            &r.extended_recurrent,
            &r.extended_pap,
            &r.extended_r_closed,
            &r.generalized_recurrent,
        ] {
            assert!(!v.verdict);
            assert!(v.witness.as_ref().is_some_and(|w| !w.ids.is_empty()));
        }
        assert!(r.regular.verdict);
        assert!(!is_extended_positively_recurrent(&fc, "g"));
        assert!(is_extended_positively_recurrent(&fc, "r"));
    }

    #[test]
    fn extended_center_rejects_non_points() {
        let mut fc = two_centers();
        fc.add_singular(SingularSet::continuum("seg", Shape::Arc));
        assert_eq!(
            is_extended_center(&fc, "seg"),
            Err(ModelError::NotAPoint("seg".into()))
        );
        assert_eq!(
            is_extended_center(&fc, "f"),
            Err(ModelError::NotAPoint("f".into()))
        );
    }
}
