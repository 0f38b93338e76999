//! Seeded generator of valid flow complexes.
//!
//! Complexes are assembled from building blocks that are each valid on their
//! own: a closed curve `C` (a periodic orbit or a cycle of saddle
//! connections) bounds a disk that is filled recursively by one of
//!
//! * a center disk;
//! * a separator: a periodic annulus from `C` to a heteroclinic cycle of
//!   saddles, each saddle carrying a petal loop on one side, every petal
//!   and the inner side filled recursively (or the inner side spiralling
//!   out of a source when dissipation is allowed);
//! * a handle end (adds genus 1) whose torus carries an irrational or a
//!   rational rotation, glued through two saddles;
//! * a limit-cycle end: a periodic orbit that attracts or repels a spiral;
//! * a cusp end: a degenerate point with a homoclinic loop.
//!
//! Every disk contributes index +1 and every handle index -1, so closed
//! complexes built this way satisfy Poincaré–Hopf.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::model::{
    ids, Family, FlowComplex, Id, IdSet, LimitRef, OrbitClass, PointKind, SaddleSetDecl,
    SingularSet, SurfaceInfo,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeParams {
    /// Nesting depth of recursive disk fillings.
    pub max_depth: u32,
    /// Largest number of saddles on one separator cycle.
    pub max_cycle: u32,
    pub max_genus: u32,
    /// Irrational handles (locally dense orbits).
    pub allow_dense: bool,
    /// Spirals and limit cycles (wandering orbits).
    pub allow_dissipative: bool,
    /// Degenerate cusp points.
    pub allow_degenerate: bool,
    /// Disks with one boundary circle.
    pub allow_boundary: bool,
    /// Gradient-like source/saddle/sink templates.
    pub allow_basins: bool,
}

impl SizeParams {
    pub fn small() -> Self {
        SizeParams {
            max_depth: 2,
            max_cycle: 2,
            max_genus: 1,
            allow_dense: true,
            allow_dissipative: true,
            allow_degenerate: true,
            allow_boundary: true,
            allow_basins: true,
        }
    }

    pub fn medium() -> Self {
        SizeParams {
            max_depth: 3,
            max_cycle: 3,
            max_genus: 2,
            ..Self::small()
        }
    }

    /// Closed surfaces whose singularities are all non-degenerate points.
    pub fn closed_regular() -> Self {
        SizeParams {
            allow_degenerate: false,
            allow_boundary: false,
            ..Self::medium()
        }
    }

    /// Genus-zero complexes without locally dense orbits.
    pub fn genus_zero() -> Self {
        SizeParams {
            max_genus: 0,
            allow_dense: false,
            ..Self::medium()
        }
    }
}

impl Default for SizeParams {
    fn default() -> Self {
        Self::small()
    }
}

struct Gen {
    fc: FlowComplex,
    rng: ChaCha8Rng,
    next: u32,
    genus: u32,
    p: SizeParams,
}

impl Gen {
    fn fresh(&mut self, prefix: &str) -> Id {
        self.next += 1;
        format!("{prefix}{}", self.next)
    }

    fn point(&mut self, prefix: &str, kind: PointKind) -> Id {
        let id = self.fresh(prefix);
        self.fc.add_singular(SingularSet::point(id.clone(), kind));
        id
    }

    fn arc(&mut self, prefix: &str, alpha: &str, omega: &str) -> Id {
        let id = self.fresh(prefix);
        self.fc.add_orbit(OrbitClass::arc(id.clone(), alpha, omega));
        id
    }

    fn annulus(&mut self, inner: IdSet, outer: IdSet) {
        let id = self.fresh("f");
        self.fc.add_family(Family::annulus(id, inner, outer));
    }

    /// Fills the disk bounded by the closed invariant curve `boundary`.
    fn fill_disk(&mut self, boundary: IdSet, depth: u32) {
        if depth == 0 {
            return self.center(boundary);
        }
        let mut options = vec![(Fill::Center, 3), (Fill::Separator, 4)];
        if self.genus < self.p.max_genus {
            options.push((Fill::RationalHandle, 1));
            if self.p.allow_dense {
                options.push((Fill::IrrationalHandle, 1));
            }
        }
        if self.p.allow_dissipative {
            options.push((Fill::LimitCycle, 1));
        }
        if self.p.allow_degenerate {
            options.push((Fill::Cusp, 1));
        }
        let choice = options
            .choose_weighted(&mut self.rng, |(_, w)| *w)
            .map(|(f, _)| *f)
            .unwrap_or(Fill::Center);
        match choice {
            Fill::Center => self.center(boundary),
            Fill::Separator => self.separator(boundary, depth),
            Fill::IrrationalHandle => self.handle(boundary, depth, true),
            Fill::RationalHandle => self.handle(boundary, depth, false),
            Fill::LimitCycle => self.limit_cycle(boundary),
            Fill::Cusp => self.cusp(boundary, depth),
        }
    }

    fn center(&mut self, boundary: IdSet) {
        let c = self.point("c", PointKind::Center);
        let f = self.fresh("d");
        self.fc.add_family(Family::center_disk(f, &c, boundary));
    }

    fn separator(&mut self, boundary: IdSet, depth: u32) {
        let k = self.rng.gen_range(1..=self.p.max_cycle.max(1)) as usize;
        let saddles: Vec<Id> = (0..k).map(|_| self.point("s", PointKind::Saddle)).collect();
        let mut cycle: IdSet = saddles.iter().cloned().collect();
        for i in 0..k {
            let e = self.arc("e", &saddles[i], &saddles[(i + 1) % k]);
            cycle.insert(e);
        }
        let mut outline = cycle.clone();
        let mut inner = cycle.clone();
        let mut petals = Vec::new();
        for s in &saddles {
            let l = self.arc("l", s, s);
            if self.rng.gen_bool(0.5) {
                outline.insert(l.clone());
            } else {
                inner.insert(l.clone());
            }
            petals.push((l, s.clone()));
        }
        self.annulus(boundary, outline);
        for (l, s) in petals {
            self.fill_disk(ids([l, s]), depth - 1);
        }
        let bare_inner = inner.len() == cycle.len();
        if bare_inner && self.p.allow_dissipative && self.rng.gen_bool(0.3) {
            self.spiral(LimitRef::Set(cycle));
        } else {
            self.fill_disk(inner, depth - 1);
        }
    }

    /// A source or sink whose separatrix-free spiral limits on `target`.
    fn spiral(&mut self, target: LimitRef) {
        let o = self.fresh("o");
        let orbit = if self.rng.gen_bool(0.5) {
            let r = self.point("r", PointKind::Source);
            OrbitClass::proper(o, LimitRef::Sing(r), target)
        } else {
            let k = self.point("k", PointKind::Sink);
            OrbitClass::proper(o, target, LimitRef::Sing(k))
        };
        self.fc.add_orbit(orbit);
    }

    /// Two saddles `a`, `b` joined by connections a→b and b→a; the torus
    /// behind them carries either dense leaves through `a` or a homoclinic
    /// loop at `a` bounding a periodic annulus. `b` carries a petal loop.
    fn handle(&mut self, boundary: IdSet, depth: u32, irrational: bool) {
        self.genus += 1;
        let a = self.point("s", PointKind::Saddle);
        let b = self.point("s", PointKind::Saddle);
        let e1 = self.arc("e", &a, &b);
        let e2 = self.arc("e", &b, &a);
        let junction = ids([a.clone(), b.clone(), e1.clone(), e2.clone()]);
        if irrational {
            let g = self.fresh("g");
            let u = self.fresh("u");
            let w = self.fresh("w");
            let mut decl = junction.clone();
            decl.extend([g.clone(), u.clone(), w.clone()]);
            let sing = || LimitRef::Sing(a.clone());
            self.fc.add_orbit(OrbitClass::dense(g, decl.clone()));
            self.fc
                .add_orbit(OrbitClass::dense(u, decl.clone()).with_alpha(sing()));
            self.fc.add_orbit(OrbitClass::dense(w, decl).with_omega(sing()));
        } else {
            let h = self.arc("h", &a, &a);
            let t = self.fresh("t");
            let mut outside = junction.clone();
            outside.insert(h.clone());
            self.fc
                .add_family(Family::annulus(t, ids([h, a.clone()]), outside));
        }
        let l = self.arc("l", &b, &b);
        let mut outline = junction;
        outline.insert(l.clone());
        self.annulus(boundary, outline);
        self.fill_disk(ids([l, b]), depth - 1);
    }

    fn limit_cycle(&mut self, boundary: IdSet) {
        let gamma = self.fresh("p");
        self.fc.add_orbit(OrbitClass::periodic(gamma.clone()));
        self.annulus(boundary, ids([gamma.clone()]));
        self.spiral(LimitRef::Orbit(gamma));
    }

    fn cusp(&mut self, boundary: IdSet, depth: u32) {
        let q = self.point("q", PointKind::Other);
        let m = self.arc("m", &q, &q);
        let loop_ = ids([m, q]);
        self.annulus(boundary, loop_.clone());
        self.fill_disk(loop_, depth - 1);
    }

    /// Sink K, sources U_0..U_k, saddles S_i fed by U_{i-1} and U_i and
    /// draining into K, plus one generic orbit per source.
    fn basins(&mut self) {
        let k = self.rng.gen_range(1..=self.p.max_cycle.max(1) + 1) as usize;
        let reverse = self.rng.gen_bool(0.5);
        let (src, snk) = if reverse {
            (PointKind::Sink, PointKind::Source)
        } else {
            (PointKind::Source, PointKind::Sink)
        };
        let flow_arc = |g: &mut Gen, prefix: &str, from: &str, to: &str| {
            if reverse {
                g.arc(prefix, to, from);
            } else {
                g.arc(prefix, from, to);
            }
        };
        let sink = self.point("k", snk);
        let sources: Vec<Id> = (0..=k).map(|_| self.point("r", src)).collect();
        for i in 1..=k {
            let s = self.point("s", PointKind::Saddle);
            flow_arc(self, "e", &sources[i - 1], &s);
            flow_arc(self, "e", &sources[i], &s);
            flow_arc(self, "e", &s, &sink);
            flow_arc(self, "e", &s, &sink);
        }
        for u in &sources {
            flow_arc(self, "o", u, &sink);
        }
    }

    /// Declares some saddles as singleton isolated saddle sets.
    fn declare_saddle_sets(&mut self) {
        let saddles: Vec<Id> = self.fc.saddles().cloned().collect();
        for s in saddles {
            if self.rng.gen_bool(0.2) {
                let id = self.fresh("F");
                self.fc.add_saddle_set(SaddleSetDecl {
                    id,
                    members: ids([s]),
                    isolated: true,
                });
            }
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum Fill {
    Center,
    Separator,
    IrrationalHandle,
    RationalHandle,
    LimitCycle,
    Cusp,
}

/// Deterministic in `(seed, size)`; the result always passes validation.
pub fn random_complex(seed: u64, size: SizeParams) -> FlowComplex {
    let mut g = Gen {
        fc: FlowComplex::new(SurfaceInfo::closed_orientable(0)),
        rng: ChaCha8Rng::seed_from_u64(seed),
        next: 0,
        genus: 0,
        p: size,
    };
    let depth = size.max_depth.max(1);
    let roll: f64 = g.rng.gen();
    if size.allow_basins && roll < 0.12 {
        g.basins();
    } else if size.allow_boundary && roll < 0.3 {
        g.fc.surface.boundary_components = 1;
        g.fc.add_orbit(OrbitClass::periodic("rim"));
        g.fill_disk(ids(["rim"]), depth);
    } else {
        g.fc.add_orbit(OrbitClass::periodic("eq"));
        g.fill_disk(ids(["eq"]), depth);
        g.fill_disk(ids(["eq"]), depth);
    }
    g.fc.surface.genus = g.genus;
    g.declare_saddle_sets();
    g.fc
}

/// Flips one Center to a Saddle or vice versa. Returns `None` when the
/// complex has neither.
pub fn flip_center_saddle(fc: &FlowComplex, seed: u64) -> Option<FlowComplex> {
    let candidates: Vec<&Id> = fc
        .singular_sets
        .values()
        .filter(|s| matches!(s.point_kind(), Some(PointKind::Center | PointKind::Saddle)))
        .map(|s| &s.id)
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let id = (*candidates.choose(&mut rng)?).clone();
    let mut out = fc.clone();
    let s = out.singular_sets.get_mut(&id)?;
    s.kind = Some(match s.kind {
        Some(PointKind::Center) => PointKind::Saddle,
        _ => PointKind::Center,
    });
    Some(out)
}
