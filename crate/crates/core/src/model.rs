//! Symbolic presentation of a flow on a compact surface.
//!
//! A [`FlowComplex`] lists the singular sets, a finite number of orbit
//! classes, periodic families and accumulation schemas of a flow. Orbit
//! classes are the atomic unit: individual points on an orbit are never
//! modeled, and uncountable bundles of orbits are carried by a [`Family`] or
//! by representative dense classes sharing one declared closure.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::ModelError;

pub type Id = String;
pub type IdSet = BTreeSet<Id>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceInfo {
    pub genus: u32,
    pub orientable: bool,
    pub boundary_components: u32,
}

impl SurfaceInfo {
    pub fn closed_orientable(genus: u32) -> Self {
        SurfaceInfo {
            genus,
            orientable: true,
            boundary_components: 0,
        }
    }

    pub fn is_closed(&self) -> bool {
        self.boundary_components == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Shape {
    Point,
    Arc,
    Circle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PointKind {
    Center,
    Saddle,
    Sink,
    Source,
    Other,
}

impl PointKind {
    /// Locally homeomorphic to a non-degenerate singularity of a C¹ field.
    pub fn is_nondegenerate(self) -> bool {
        !matches!(self, PointKind::Other)
    }

    /// Index contribution for the Poincaré–Hopf sum.
    pub fn index(self) -> Option<i64> {
        match self {
            PointKind::Center | PointKind::Sink | PointKind::Source => Some(1),
            PointKind::Saddle => Some(-1),
            PointKind::Other => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularSet {
    pub id: Id,
    pub shape: Shape,
    /// Only meaningful for [`Shape::Point`].
    pub kind: Option<PointKind>,
}

impl SingularSet {
    pub fn point(id: impl Into<Id>, kind: PointKind) -> Self {
        SingularSet {
            id: id.into(),
            shape: Shape::Point,
            kind: Some(kind),
        }
    }

    pub fn continuum(id: impl Into<Id>, shape: Shape) -> Self {
        SingularSet {
            id: id.into(),
            shape,
            kind: None,
        }
    }

    pub fn point_kind(&self) -> Option<PointKind> {
        match self.shape {
            Shape::Point => self.kind,
            _ => None,
        }
    }

    pub fn is_saddle(&self) -> bool {
        self.point_kind() == Some(PointKind::Saddle)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum OrbitKind {
    Periodic,
    ProperNonClosed,
    LocallyDense,
    Exceptional,
}

impl OrbitKind {
    pub fn is_dense(self) -> bool {
        matches!(self, OrbitKind::LocallyDense | OrbitKind::Exceptional)
    }
}

/// Reference to an α- or ω-limit set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum LimitRef {
    Sing(Id),
    Orbit(Id),
    Set(IdSet),
}

impl LimitRef {
    pub fn ids(&self) -> Vec<&Id> {
        match self {
            LimitRef::Sing(id) | LimitRef::Orbit(id) => vec![id],
            LimitRef::Set(ids) => ids.iter().collect(),
        }
    }

    /// The singular point named by a `Sing` reference.
    pub fn as_point(&self) -> Option<&Id> {
        match self {
            LimitRef::Sing(id) => Some(id),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitClass {
    pub id: Id,
    pub kind: OrbitKind,
    pub alpha: Option<LimitRef>,
    pub omega: Option<LimitRef>,
    pub closure_decl: Option<IdSet>,
}

impl OrbitClass {
    pub fn periodic(id: impl Into<Id>) -> Self {
        OrbitClass {
            id: id.into(),
            kind: OrbitKind::Periodic,
            alpha: None,
            omega: None,
            closure_decl: None,
        }
    }

    pub fn proper(id: impl Into<Id>, alpha: LimitRef, omega: LimitRef) -> Self {
        OrbitClass {
            id: id.into(),
            kind: OrbitKind::ProperNonClosed,
            alpha: Some(alpha),
            omega: Some(omega),
            closure_decl: None,
        }
    }

    /// Separatrix-like proper orbit between two singular points.
    pub fn arc(id: impl Into<Id>, alpha: &str, omega: &str) -> Self {
        Self::proper(
            id,
            LimitRef::Sing(alpha.to_owned()),
            LimitRef::Sing(omega.to_owned()),
        )
    }

    pub fn dense(id: impl Into<Id>, closure: IdSet) -> Self {
        OrbitClass {
            id: id.into(),
            kind: OrbitKind::LocallyDense,
            alpha: None,
            omega: None,
            closure_decl: Some(closure),
        }
    }

    pub fn with_alpha(mut self, r: LimitRef) -> Self {
        self.alpha = Some(r);
        self
    }

    pub fn with_omega(mut self, r: LimitRef) -> Self {
        self.omega = Some(r);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FamilyKind {
    PeriodicAnnulus,
    ClosedExtendedOrbitRegion,
}

/// One-parameter region of mutually disjoint closed invariant sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Family {
    pub id: Id,
    pub member_kind: FamilyKind,
    pub boundary0: IdSet,
    pub boundary1: IdSet,
    pub shrinks0: bool,
    pub shrinks1: bool,
}

impl Family {
    pub fn annulus(id: impl Into<Id>, boundary0: IdSet, boundary1: IdSet) -> Self {
        Family {
            id: id.into(),
            member_kind: FamilyKind::PeriodicAnnulus,
            boundary0,
            boundary1,
            shrinks0: false,
            shrinks1: false,
        }
    }

    /// Periodic disk whose members shrink onto `center`.
    pub fn center_disk(id: impl Into<Id>, center: &str, outer: IdSet) -> Self {
        Family {
            shrinks0: true,
            ..Self::annulus(id, ids([center]), outer)
        }
    }

    pub fn sides(&self) -> [(&IdSet, bool); 2] {
        [(&self.boundary0, self.shrinks0), (&self.boundary1, self.shrinks1)]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SchemaKind {
    SaddleChain,
    SingularitySequence,
    FamilySequence,
}

/// Declares that an infinite continuation of `samples` converges onto `target`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AccumulationSchema {
    pub id: Id,
    pub kind: SchemaKind,
    pub samples: Vec<Id>,
    pub target: IdSet,
}

impl AccumulationSchema {
    /// Schemas that stand for infinitely many or degenerate singular points.
    pub fn is_degeneracy(&self) -> bool {
        matches!(
            self.kind,
            SchemaKind::SaddleChain | SchemaKind::SingularitySequence
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SaddleSetDecl {
    pub id: Id,
    pub members: IdSet,
    pub isolated: bool,
}

/// What kind of entity an id names.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Entity<'a> {
    Singular(&'a SingularSet),
    Orbit(&'a OrbitClass),
    Family(&'a Family),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlowComplex {
    pub surface: SurfaceInfo,
    pub singular_sets: BTreeMap<Id, SingularSet>,
    pub orbit_classes: BTreeMap<Id, OrbitClass>,
    pub families: BTreeMap<Id, Family>,
    pub saddle_sets: BTreeMap<Id, SaddleSetDecl>,
    pub schemas: BTreeMap<Id, AccumulationSchema>,
}

pub fn ids<I, S>(items: I) -> IdSet
where
    I: IntoIterator<Item = S>,
    S: Into<Id>,
{
    items.into_iter().map(Into::into).collect()
}

impl FlowComplex {
    pub fn new(surface: SurfaceInfo) -> Self {
        FlowComplex {
            surface,
            singular_sets: BTreeMap::new(),
            orbit_classes: BTreeMap::new(),
            families: BTreeMap::new(),
            saddle_sets: BTreeMap::new(),
            schemas: BTreeMap::new(),
        }
    }

    pub fn add_singular(&mut self, s: SingularSet) -> &mut Self {
        self.singular_sets.insert(s.id.clone(), s);
        self
    }

    pub fn add_orbit(&mut self, o: OrbitClass) -> &mut Self {
        self.orbit_classes.insert(o.id.clone(), o);
        self
    }

    pub fn add_family(&mut self, f: Family) -> &mut Self {
        self.families.insert(f.id.clone(), f);
        self
    }

    pub fn add_schema(&mut self, a: AccumulationSchema) -> &mut Self {
        self.schemas.insert(a.id.clone(), a);
        self
    }

    pub fn add_saddle_set(&mut self, d: SaddleSetDecl) -> &mut Self {
        self.saddle_sets.insert(d.id.clone(), d);
        self
    }

    pub fn entity(&self, id: &str) -> Option<Entity<'_>> {
        if let Some(s) = self.singular_sets.get(id) {
            Some(Entity::Singular(s))
        } else if let Some(o) = self.orbit_classes.get(id) {
            Some(Entity::Orbit(o))
        } else {
            self.families.get(id).map(Entity::Family)
        }
    }

    pub fn contains(&self, id: &str) -> bool {
        self.entity(id).is_some()
    }

    /// Every id of the phase-space universe, in sorted order.
    pub fn all_ids(&self) -> Vec<&Id> {
        let mut all: Vec<&Id> = self
            .singular_sets
            .keys()
            .chain(self.orbit_classes.keys())
            .chain(self.families.keys())
            .collect();
        all.sort();
        all.dedup();
        all
    }

    pub fn is_saddle(&self, id: &str) -> bool {
        self.singular_sets.get(id).is_some_and(SingularSet::is_saddle)
    }

    pub fn saddles(&self) -> impl Iterator<Item = &Id> {
        self.singular_sets
            .values()
            .filter(|s| s.is_saddle())
            .map(|s| &s.id)
    }

    /// Some id besides singular sets exists.
    pub fn is_non_identical(&self) -> bool {
        !self.orbit_classes.is_empty() || !self.families.is_empty()
    }

    pub fn has_dense_orbits(&self) -> bool {
        self.orbit_classes
            .values()
            .any(|o| o.kind == OrbitKind::LocallyDense)
    }

    /// No continua of fixed points and no schema standing for infinitely
    /// many singular points.
    pub fn has_finite_singularities(&self) -> bool {
        self.singular_sets.values().all(|s| s.shape == Shape::Point)
            && !self.schemas.values().any(AccumulationSchema::is_degeneracy)
    }

    /// α-limit as a set of ids; a singular set is its own limit.
    pub fn alpha_of(&self, id: &str) -> Option<IdSet> {
        self.limit_of(id, |o| o.alpha.as_ref())
    }

    /// ω-limit as a set of ids; a singular set is its own limit.
    pub fn omega_of(&self, id: &str) -> Option<IdSet> {
        self.limit_of(id, |o| o.omega.as_ref())
    }

    fn limit_of<'a>(
        &'a self,
        id: &str,
        pick: impl Fn(&'a OrbitClass) -> Option<&'a LimitRef>,
    ) -> Option<IdSet> {
        match self.entity(id)? {
            Entity::Singular(s) => Some(ids([s.id.clone()])),
            Entity::Orbit(o) => pick(o).map(|r| self.resolve_limit(r)),
            Entity::Family(_) => None,
        }
    }

    /// Expands a limit reference to the ids of the limit set.
    pub fn resolve_limit(&self, r: &LimitRef) -> IdSet {
        let mut out = IdSet::new();
        let mut seen = IdSet::new();
        match r {
            LimitRef::Sing(id) => {
                out.insert(id.clone());
            }
            LimitRef::Orbit(id) => self.expand_closure(id, &mut out, &mut seen),
            LimitRef::Set(members) => {
                for m in members {
                    self.expand_closure(m, &mut out, &mut seen);
                }
            }
        }
        out
    }

    /// Closure of the orbit (or set) named by `x`.
    pub fn closure_of(&self, x: &str) -> Result<IdSet, ModelError> {
        if !self.contains(x) {
            return Err(ModelError::UnknownId(x.to_owned()));
        }
        Ok(self.closure_lenient(x))
    }

    /// Like [`closure_of`](Self::closure_of) but skips unresolved ids; used
    /// by validation on complexes that may carry dangling references.
    pub(crate) fn closure_lenient(&self, x: &str) -> IdSet {
        let mut out = IdSet::new();
        let mut seen = IdSet::new();
        self.expand_closure(x, &mut out, &mut seen);
        out
    }

    fn expand_closure(&self, x: &str, out: &mut IdSet, seen: &mut IdSet) {
        if !seen.insert(x.to_owned()) {
            return;
        }
        out.insert(x.to_owned());
        match self.entity(x) {
            None | Some(Entity::Singular(_)) => {}
            Some(Entity::Orbit(o)) => match o.kind {
                OrbitKind::Periodic => {}
                OrbitKind::ProperNonClosed => {
                    for r in [&o.alpha, &o.omega].into_iter().flatten() {
                        for id in r.ids() {
                            self.expand_closure(id, out, seen);
                        }
                    }
                }
                OrbitKind::LocallyDense | OrbitKind::Exceptional => {
                    if let Some(decl) = &o.closure_decl {
                        out.extend(decl.iter().cloned());
                    }
                }
            },
            Some(Entity::Family(f)) => {
                for b in f.boundary0.iter().chain(&f.boundary1) {
                    self.expand_closure(b, out, seen);
                }
            }
        }
    }

    /// Closure of one member of the orbit bundle named by `x`: a family
    /// member is a single closed curve, so this is `{x}` for family ids and
    /// [`closure_of`](Self::closure_of) otherwise.
    pub fn member_closure(&self, x: &str) -> IdSet {
        if self.families.contains_key(x) {
            ids([x])
        } else {
            self.closure_lenient(x)
        }
    }

    /// Every member's closure lies inside `set`.
    pub fn is_invariant_closed(&self, set: &IdSet) -> Result<(), Id> {
        for m in set {
            if !self.closure_lenient(m).is_subset(set) {
                return Err(m.clone());
            }
        }
        Ok(())
    }

    pub fn partition_orbits(&self) -> OrbitPartition {
        let mut p = OrbitPartition::default();
        p.sing.extend(self.singular_sets.keys().cloned());
        p.per.extend(self.families.keys().cloned());
        for o in self.orbit_classes.values() {
            let bucket = match o.kind {
                OrbitKind::Periodic => &mut p.per,
                OrbitKind::ProperNonClosed => &mut p.proper,
                OrbitKind::LocallyDense => &mut p.ld,
                OrbitKind::Exceptional => &mut p.exceptional,
            };
            bucket.insert(o.id.clone());
        }
        p
    }
}

/// The five disjoint parts `Sing`, `Per`, `LD`, `E` and `P` of the phase space.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitPartition {
    pub sing: IdSet,
    /// Periodic classes together with family ids (families of closed curves).
    pub per: IdSet,
    pub ld: IdSet,
    pub exceptional: IdSet,
    /// Proper non-closed classes.
    pub proper: IdSet,
}

impl OrbitPartition {
    pub fn parts(&self) -> [&IdSet; 5] {
        [&self.sing, &self.per, &self.ld, &self.exceptional, &self.proper]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn meridian() -> FlowComplex {
        let mut fc = FlowComplex::new(SurfaceInfo::closed_orientable(0));
        fc.add_singular(SingularSet::point("q", PointKind::Other))
            .add_singular(SingularSet::point("n", PointKind::Center))
            .add_singular(SingularSet::point("s", PointKind::Center))
            .add_orbit(OrbitClass::arc("m", "q", "q"))
            .add_family(Family::center_disk("fn", "n", ids(["m", "q"])))
            .add_family(Family::center_disk("fs", "s", ids(["m", "q"])));
        fc
    }

    #[test]
    fn closure_of_proper_orbit_adds_limits() {
        let fc = meridian();
        assert_eq!(fc.closure_of("m").unwrap(), ids(["m", "q"]));
        assert_eq!(fc.closure_of("q").unwrap(), ids(["q"]));
        assert_eq!(fc.closure_of("fn").unwrap(), ids(["fn", "n", "m", "q"]));
        assert_eq!(fc.member_closure("fn"), ids(["fn"]));
        assert!(matches!(fc.closure_of("zz"), Err(ModelError::UnknownId(_))));
    }

    #[test]
    fn set_limits_expand_recursively() {
        let mut fc = meridian();
        fc.add_orbit(OrbitClass::proper(
            "x",
            LimitRef::Sing("n".into()),
            LimitRef::Set(ids(["m", "q"])),
        ));
        assert_eq!(fc.closure_of("x").unwrap(), ids(["x", "n", "m", "q"]));
    }

    #[test]
    fn singular_sets_are_their_own_limits() {
        let fc = meridian();
        assert_eq!(fc.omega_of("q"), Some(ids(["q"])));
        assert_eq!(fc.alpha_of("m"), Some(ids(["q"])));
        assert_eq!(fc.omega_of("fn"), None);
    }

    #[test]
    fn partition_of_meridian() {
        let p = meridian().partition_orbits();
        assert_eq!(p.sing, ids(["q", "n", "s"]));
        assert_eq!(p.per, ids(["fn", "fs"]));
        assert_eq!(p.proper, ids(["m"]));
        assert!(p.ld.is_empty() && p.exceptional.is_empty());
    }

    #[test]
    fn single_periodic_orbit_partition() {
        let mut fc = FlowComplex::new(SurfaceInfo::closed_orientable(1));
        fc.add_orbit(OrbitClass::periodic("p"));
        let p = fc.partition_orbits();
        assert_eq!(p.per, ids(["p"]));
        assert!(p.sing.is_empty() && p.proper.is_empty() && p.ld.is_empty());
        assert_eq!(fc.closure_of("p").unwrap(), ids(["p"]));
    }
}
