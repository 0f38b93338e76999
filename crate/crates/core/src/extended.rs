//! Extended orbits ("demi-caractéristiques") and their generalization over
//! isolated saddle sets.
//!
//! The extended positive orbit of `x` is the least fixpoint of `{x}` under
//! the rule "whenever a member's ω-limit is a single saddle `s`, adjoin `s`
//! and its unstable set `W^u(s)`". The id universe is finite, so the
//! fixpoint is reached after finitely many rounds.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::ModelError;
use crate::model::{Entity, FlowComplex, Id, IdSet, OrbitKind, PointKind, SchemaKind, Shape};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Direction {
    Forward,
    Backward,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Provenance {
    Seed,
    /// Adjoined at the given expansion round (1-based).
    SaddleAdded(u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtendedOrbitSet {
    pub start: Id,
    pub direction: Direction,
    pub members: IdSet,
    pub provenance: BTreeMap<Id, Provenance>,
    pub depth: u32,
    /// The start class was re-derived by a saddle step.
    pub self_readded: bool,
}

impl ExtendedOrbitSet {
    fn seed(start: &str, direction: Direction) -> Self {
        ExtendedOrbitSet {
            start: start.to_owned(),
            direction,
            members: [start.to_owned()].into(),
            provenance: [(start.to_owned(), Provenance::Seed)].into(),
            depth: 0,
            self_readded: false,
        }
    }

    /// Members adjoined through a saddle step.
    pub fn saddle_added(&self) -> impl Iterator<Item = &Id> {
        self.provenance
            .iter()
            .filter(|(_, p)| matches!(p, Provenance::SaddleAdded(_)))
            .map(|(id, _)| id)
    }

    fn union(mut self, other: ExtendedOrbitSet) -> ExtendedOrbitSet {
        for (id, p) in other.provenance {
            self.provenance
                .entry(id)
                .and_modify(|cur| *cur = (*cur).min(p))
                .or_insert(p);
        }
        self.members.extend(other.members);
        self.depth = self.depth.max(other.depth);
        self.self_readded |= other.self_readded;
        self.direction = Direction::Both;
        self
    }
}

/// Limit sets and separatrix tables of a complex, computed once.
#[derive(Debug, Clone)]
pub struct FlowIndex<'a> {
    pub fc: &'a FlowComplex,
    alpha: BTreeMap<Id, IdSet>,
    omega: BTreeMap<Id, IdSet>,
    unstable: BTreeMap<Id, IdSet>,
    stable: BTreeMap<Id, IdSet>,
}

impl<'a> FlowIndex<'a> {
    pub fn new(fc: &'a FlowComplex) -> Self {
        let mut alpha = BTreeMap::new();
        let mut omega = BTreeMap::new();
        for id in fc.singular_sets.keys() {
            alpha.insert(id.clone(), [id.clone()].into());
            omega.insert(id.clone(), [id.clone()].into());
        }
        let mut unstable: BTreeMap<Id, IdSet> = BTreeMap::new();
        let mut stable: BTreeMap<Id, IdSet> = BTreeMap::new();
        for o in fc.orbit_classes.values() {
            if let Some(r) = &o.alpha {
                let set = fc.resolve_limit(r);
                if let Some(p) = single_singular(fc, &set) {
                    unstable.entry(p).or_default().insert(o.id.clone());
                }
                alpha.insert(o.id.clone(), set);
            }
            if let Some(r) = &o.omega {
                let set = fc.resolve_limit(r);
                if let Some(p) = single_singular(fc, &set) {
                    stable.entry(p).or_default().insert(o.id.clone());
                }
                omega.insert(o.id.clone(), set);
            }
        }
        FlowIndex {
            fc,
            alpha,
            omega,
            unstable,
            stable,
        }
    }

    pub fn alpha(&self, id: &str) -> Option<&IdSet> {
        self.alpha.get(id)
    }

    pub fn omega(&self, id: &str) -> Option<&IdSet> {
        self.omega.get(id)
    }

    fn limit(&self, id: &str, dir: Direction) -> Option<&IdSet> {
        match dir {
            Direction::Backward => self.alpha(id),
            _ => self.omega(id),
        }
    }

    /// Orbit classes whose limit on the opposite side is exactly `{p}`.
    fn separatrices(&self, p: &str, dir: Direction) -> Option<&IdSet> {
        match dir {
            Direction::Backward => self.stable.get(p),
            _ => self.unstable.get(p),
        }
    }

    fn require_saddle(&self, s: &str) -> Result<(), ModelError> {
        match self.fc.entity(s) {
            None => Err(ModelError::UnknownId(s.to_owned())),
            Some(Entity::Singular(ss)) if ss.is_saddle() => Ok(()),
            Some(_) => Err(ModelError::NotASaddle(s.to_owned())),
        }
    }

    /// `W^u(s)`: orbit classes whose α-limit is exactly `{s}`.
    pub fn unstable_set(&self, s: &str) -> Result<IdSet, ModelError> {
        self.require_saddle(s)?;
        Ok(self.unstable.get(s).cloned().unwrap_or_default())
    }

    /// `W^s(s)`: orbit classes whose ω-limit is exactly `{s}`.
    pub fn stable_set(&self, s: &str) -> Result<IdSet, ModelError> {
        self.require_saddle(s)?;
        Ok(self.stable.get(s).cloned().unwrap_or_default())
    }

    /// Ids adjoined by one saddle step from member `o`.
    fn saddle_step(&self, o: &str, dir: Direction) -> Vec<Id> {
        let Some(limit) = self.limit(o, dir) else {
            return Vec::new();
        };
        let Some(s) = single_singular(self.fc, limit).filter(|s| self.fc.is_saddle(s)) else {
            return Vec::new();
        };
        let mut added: Vec<Id> = self
            .separatrices(&s, dir)
            .into_iter()
            .flatten()
            .cloned()
            .collect();
        if s != o {
            added.push(s);
        }
        added
    }

    /// Ids adjoined by one generalized step from `o` over `sets`.
    fn set_step(&self, o: &str, dir: Direction, sets: &[IdSet]) -> Vec<Id> {
        let Some(limit) = self.limit(o, dir).filter(|l| !l.is_empty()) else {
            return Vec::new();
        };
        let mut added = IdSet::new();
        for f in sets.iter().filter(|f| limit.is_subset(f)) {
            added.extend(f.iter().filter(|m| m.as_str() != o).cloned());
            let opposite = match dir {
                Direction::Backward => &self.omega,
                _ => &self.alpha,
            };
            for z in self.fc.orbit_classes.keys() {
                if let Some(l) = opposite.get(z) {
                    if !l.is_empty() && l.is_subset(f) {
                        added.insert(z.clone());
                    }
                }
            }
        }
        added.into_iter().collect()
    }

    fn fixpoint(
        &self,
        x: &str,
        dir: Direction,
        step: impl Fn(&str) -> Vec<Id>,
    ) -> Result<ExtendedOrbitSet, ModelError> {
        if !self.fc.contains(x) {
            return Err(ModelError::UnknownId(x.to_owned()));
        }
        let mut out = ExtendedOrbitSet::seed(x, dir);
        let mut frontier: Vec<Id> = vec![x.to_owned()];
        let mut round = 0;
        while !frontier.is_empty() {
            round += 1;
            let mut fresh = IdSet::new();
            for o in &frontier {
                for y in step(o) {
                    if y == x {
                        out.self_readded = true;
                    }
                    if !out.members.contains(&y) {
                        fresh.insert(y);
                    }
                }
            }
            if fresh.is_empty() {
                break;
            }
            for y in &fresh {
                out.provenance.insert(y.clone(), Provenance::SaddleAdded(round));
            }
            out.members.extend(fresh.iter().cloned());
            out.depth = round;
            frontier = fresh.into_iter().collect();
        }
        Ok(out)
    }

    pub fn extended_orbit(&self, x: &str, dir: Direction) -> Result<ExtendedOrbitSet, ModelError> {
        match dir {
            Direction::Both => {
                let fwd = self.extended_orbit(x, Direction::Forward)?;
                let bwd = self.extended_orbit(x, Direction::Backward)?;
                Ok(fwd.union(bwd))
            }
            _ => self.fixpoint(x, dir, |o| self.saddle_step(o, dir)),
        }
    }

    /// Same fixpoint as [`extended_orbit`](Self::extended_orbit) with saddles
    /// replaced by the given (already validated) saddle sets. A member
    /// triggers a step when its limit set is contained in a set `F`; the step
    /// adjoins `F` and every orbit class whose opposite limit is inside `F`.
    pub fn generalized_orbit(
        &self,
        x: &str,
        dir: Direction,
        sets: &[IdSet],
    ) -> Result<ExtendedOrbitSet, ModelError> {
        match dir {
            Direction::Both => {
                let fwd = self.generalized_orbit(x, Direction::Forward, sets)?;
                let bwd = self.generalized_orbit(x, Direction::Backward, sets)?;
                Ok(fwd.union(bwd))
            }
            _ => self.fixpoint(x, dir, |o| self.set_step(o, dir, sets)),
        }
    }

    /// Closure of a member set: member closures plus the targets of saddle
    /// chains the set runs into.
    pub fn closure_of_set(&self, members: &IdSet) -> IdSet {
        let mut out = IdSet::new();
        for m in members {
            out.extend(self.fc.member_closure(m));
        }
        loop {
            let mut grew = false;
            for a in self.fc.schemas.values() {
                if a.kind == SchemaKind::SaddleChain
                    && a.samples.iter().any(|s| out.contains(s))
                    && !a.target.is_subset(&out)
                {
                    out.extend(a.target.iter().cloned());
                    grew = true;
                }
            }
            if !grew {
                return out;
            }
        }
    }

    pub fn is_closed_set(&self, members: &IdSet) -> bool {
        self.closure_of_set(members).is_subset(members)
    }

    pub fn is_extended_periodic(&self, x: &str) -> bool {
        let Ok(e) = self.extended_orbit(x, Direction::Both) else {
            return false;
        };
        let non_point = e.members.iter().any(|m| !self.is_point(m));
        (e.members.len() >= 2 || non_point)
            && e.members.iter().all(|m| self.is_closed_curve_piece(m))
            && self.is_closed_set(&e.members)
    }

    fn is_point(&self, id: &str) -> bool {
        self.fc
            .singular_sets
            .get(id)
            .is_some_and(|s| s.shape == Shape::Point)
    }

    /// Proper or periodic orbit, saddle, or a family of closed curves.
    fn is_closed_curve_piece(&self, id: &str) -> bool {
        match self.fc.entity(id) {
            Some(Entity::Singular(s)) => s.is_saddle(),
            Some(Entity::Orbit(o)) => {
                matches!(o.kind, OrbitKind::Periodic | OrbitKind::ProperNonClosed)
            }
            Some(Entity::Family(_)) => true,
            None => false,
        }
    }

    pub fn extended_limit_cycles(&self) -> Vec<ExtendedLimitCycle> {
        let mut found: BTreeMap<IdSet, Vec<CycleWitness>> = BTreeMap::new();
        for w in self.fc.orbit_classes.values() {
            for (side, r) in [(LimitSide::Alpha, &w.alpha), (LimitSide::Omega, &w.omega)] {
                let Some(r) = r else { continue };
                let cycle: IdSet = match r {
                    crate::model::LimitRef::Orbit(p)
                        if self
                            .fc
                            .orbit_classes
                            .get(p)
                            .is_some_and(|o| o.kind == OrbitKind::Periodic) =>
                    {
                        [p.clone()].into()
                    }
                    crate::model::LimitRef::Set(s) => s.clone(),
                    _ => continue,
                };
                if cycle.contains(&w.id) || !self.is_union_of_closed_curves(&cycle) {
                    continue;
                }
                let first = cycle.iter().next().expect("cycle is nonempty");
                let inside = self
                    .extended_orbit(first, Direction::Both)
                    .is_ok_and(|e| cycle.is_subset(&e.members));
                if inside {
                    found.entry(cycle).or_default().push(CycleWitness {
                        id: w.id.clone(),
                        side,
                    });
                }
            }
        }
        found
            .into_iter()
            .map(|(cycle, witnesses)| ExtendedLimitCycle { cycle, witnesses })
            .collect()
    }

    /// Periodic orbits, or saddles joined by arcs into closed loops.
    fn is_union_of_closed_curves(&self, set: &IdSet) -> bool {
        if set.len() == 1 && self.is_point(set.iter().next().unwrap()) {
            return false;
        }
        let mut balance: BTreeMap<&Id, (u32, u32)> = BTreeMap::new();
        for m in set {
            match self.fc.entity(m) {
                Some(Entity::Orbit(o)) if o.kind == OrbitKind::Periodic => {}
                Some(Entity::Singular(s)) if s.is_saddle() => {
                    balance.entry(m).or_default();
                }
                Some(Entity::Orbit(o)) if o.kind == OrbitKind::ProperNonClosed => {
                    let (Some(a), Some(w)) = (
                        o.alpha.as_ref().and_then(|r| r.as_point()),
                        o.omega.as_ref().and_then(|r| r.as_point()),
                    ) else {
                        return false;
                    };
                    if !set.contains(a) || !set.contains(w) || !self.fc.is_saddle(a) {
                        return false;
                    }
                    balance.entry(a).or_default().1 += 1;
                    balance.entry(w).or_default().0 += 1;
                }
                _ => return false,
            }
        }
        balance.values().all(|&(i, o)| i == o && i >= 1)
    }
}

fn single_singular(fc: &FlowComplex, set: &IdSet) -> Option<Id> {
    if set.len() != 1 {
        return None;
    }
    let id = set.iter().next()?;
    fc.singular_sets.contains_key(id).then(|| id.clone())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LimitSide {
    Alpha,
    Omega,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleWitness {
    pub id: Id,
    pub side: LimitSide,
}

/// A limit cycle in the sense of Poincaré together with every outside orbit
/// class limiting onto it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtendedLimitCycle {
    pub cycle: IdSet,
    pub witnesses: Vec<CycleWitness>,
}

impl ExtendedLimitCycle {
    pub fn witness(&self) -> &CycleWitness {
        &self.witnesses[0]
    }
}

pub fn unstable_set(fc: &FlowComplex, s: &str) -> Result<IdSet, ModelError> {
    FlowIndex::new(fc).unstable_set(s)
}

pub fn stable_set(fc: &FlowComplex, s: &str) -> Result<IdSet, ModelError> {
    FlowIndex::new(fc).stable_set(s)
}

pub fn extended_orbit(
    fc: &FlowComplex,
    x: &str,
    dir: Direction,
) -> Result<ExtendedOrbitSet, ModelError> {
    FlowIndex::new(fc).extended_orbit(x, dir)
}

/// Generalized extended orbit over named saddle sets; every set is validated
/// first (see [`crate::saddle_set::validate_isolated_saddle_set`]).
pub fn generalized_extended_orbit(
    fc: &FlowComplex,
    x: &str,
    dir: Direction,
    saddle_sets: &[IdSet],
) -> Result<ExtendedOrbitSet, ModelError> {
    for (i, f) in saddle_sets.iter().enumerate() {
        crate::saddle_set::validate_isolated_saddle_set(fc, f).map_err(|reason| {
            ModelError::InvalidSaddleSet {
                name: format!("#{i}"),
                reason,
            }
        })?;
    }
    FlowIndex::new(fc).generalized_orbit(x, dir, saddle_sets)
}

pub fn is_extended_periodic(fc: &FlowComplex, x: &str) -> bool {
    FlowIndex::new(fc).is_extended_periodic(x)
}

pub fn extended_limit_cycles(fc: &FlowComplex) -> Vec<ExtendedLimitCycle> {
    FlowIndex::new(fc).extended_limit_cycles()
}

/// Singleton sets `{s}` for every saddle point.
pub fn singleton_saddle_sets(fc: &FlowComplex) -> Vec<IdSet> {
    fc.singular_sets
        .values()
        .filter(|s| s.point_kind() == Some(PointKind::Saddle))
        .map(|s| [s.id.clone()].into())
        .collect()
}
