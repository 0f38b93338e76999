//! Deterministic constructors for the example flows, truncated where the
//! original example is infinite, together with the verdicts each one is
//! known to satisfy.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::classify::ClassificationReport;
use crate::error::ModelError;
use crate::model::{
    ids, AccumulationSchema, Family, FlowComplex, IdSet, LimitRef, OrbitClass, PointKind,
    SaddleSetDecl, SchemaKind, Shape, SingularSet, SurfaceInfo,
};

pub type Params = BTreeMap<String, i64>;

/// Verdicts a fixture is known to satisfy; `None` means "not asserted".
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedReport {
    pub non_wandering: Option<bool>,
    pub recurrent: Option<bool>,
    pub extended_recurrent: Option<bool>,
    pub extended_pap: Option<bool>,
    pub extended_r_closed: Option<bool>,
    pub regular: Option<bool>,
    pub generalized_recurrent: Option<bool>,
}

impl ExpectedReport {
    /// Names of asserted fields whose verdict differs in `report`.
    pub fn mismatches(&self, report: &ClassificationReport) -> Vec<&'static str> {
        let pairs = [
            ("non_wandering", self.non_wandering, report.non_wandering.verdict),
            ("recurrent", self.recurrent, report.recurrent.verdict),
            ("extended_recurrent", self.extended_recurrent, report.extended_recurrent.verdict),
            ("extended_pap", self.extended_pap, report.extended_pap.verdict),
            ("extended_R_closed", self.extended_r_closed, report.extended_r_closed.verdict),
            ("regular", self.regular, report.regular.verdict),
            ("generalized_recurrent", self.generalized_recurrent, report.generalized_recurrent.verdict),
        ];
        pairs
            .into_iter()
            .filter(|(_, want, got)| want.is_some_and(|w| w != *got))
            .map(|(name, _, _)| name)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GalleryEntry {
    pub name: String,
    pub params: Params,
    pub expected: ExpectedReport,
    pub provenance_note: String,
}

pub const NAMES: [&str; 9] = [
    "sphere_meridian",
    "genus2_mixed",
    "nested_saddles_disk",
    "genus2_double_irrational",
    "double_center_sphere",
    "sphere_limit_cycle",
    "plus_saddle",
    "halfdisk_sphere",
    "comb_torus",
];

/// Name of the integer parameter an entry takes, its default, and its minimum.
fn param_spec(name: &str) -> Option<(&'static str, i64, i64)> {
    match name {
        "nested_saddles_disk" => Some(("n", 4, 2)),
        "double_center_sphere" => Some(("n", 3, 1)),
        "comb_torus" => Some(("n", 4, 2)),
        _ => None,
    }
}

/// Largest accepted size parameter; keeps fixtures hand-auditable.
pub const MAX_N: i64 = 64;

fn resolve_params(name: &str, params: &Params) -> Result<Params, ModelError> {
    if !NAMES.contains(&name) {
        return Err(ModelError::UnknownFixture(name.to_owned()));
    }
    let bad = |detail: String| ModelError::BadParam {
        fixture: name.to_owned(),
        detail,
    };
    let spec = param_spec(name);
    for key in params.keys() {
        if spec.is_none_or(|(k, _, _)| k != key) {
            return Err(bad(format!("unknown parameter `{key}`")));
        }
    }
    let mut out = Params::new();
    if let Some((key, default, min)) = spec {
        let v = params.get(key).copied().unwrap_or(default);
        if !(min..=MAX_N).contains(&v) {
            return Err(bad(format!("`{key}` must be in {min}..={MAX_N}, got {v}")));
        }
        out.insert(key.to_owned(), v);
    }
    Ok(out)
}

pub fn build(name: &str, params: &Params) -> Result<FlowComplex, ModelError> {
    let p = resolve_params(name, params)?;
    let n = p.get("n").copied().unwrap_or(0) as usize;
    Ok(match name {
        "sphere_meridian" => sphere_meridian(),
        "genus2_mixed" => genus2_mixed(),
        "nested_saddles_disk" => nested_saddles_disk(n),
        "genus2_double_irrational" => genus2_double_irrational(),
        "double_center_sphere" => double_center_sphere(n),
        "sphere_limit_cycle" => sphere_limit_cycle(),
        "plus_saddle" => plus_saddle(),
        "halfdisk_sphere" => halfdisk_sphere(),
        "comb_torus" => comb_torus(n),
        _ => unreachable!("checked by resolve_params"),
    })
}

pub fn entry(name: &str, params: &Params) -> Result<GalleryEntry, ModelError> {
    let params = resolve_params(name, params)?;
    let t = Some(true);
    let f = Some(false);
    let (expected, note) = match name {
        "sphere_meridian" => (
            ExpectedReport { non_wandering: t, extended_recurrent: f, ..Default::default() },
            "Sphere whose regular orbits are the meridian circle minus one degenerate \
             point q plus two center disks; non-wandering but not extended recurrent. \
             Wiring: m is a proper orbit q→q bounding both center disks fn and fs.",
        ),
        "genus2_mixed" => (
            ExpectedReport { extended_recurrent: t, recurrent: f, ..Default::default() },
            "Irrational rotation on one torus and rational rotation on the other, joined \
             through two saddles s1, s2 and heteroclinic connections c1: s1→s2, c2: s2→s1. \
             Wiring: s1's free separatrices are the semi-proper dense leaves u1 (α=s1) and \
             w1 (ω=s1); s2's free separatrices form the homoclinic loop a bounding the \
             periodic annulus t2. Extended orbits of c1, c2 are not closed (they accumulate \
             on the dense leaf g1).",
        ),
        "nested_saddles_disk" => (
            ExpectedReport { extended_recurrent: t, ..Default::default() },
            "Disk with n circles S_2..S_{n+1}, each crossing only its neighbours at saddles \
             T_k (top) and B_k (bottom); faces are center disks and the outer region is a \
             periodic annulus out to the rim. The tail of the chain is replaced by a \
             saddle-chain schema targeting the degenerate origin o, so the single \
             extended orbit of the arcs is not closed and its closure meets o.",
        ),
        "genus2_double_irrational" => (
            ExpectedReport { extended_recurrent: t, extended_pap: f, ..Default::default() },
            "Two irrational tori joined by two saddles and two heteroclinic connections; \
             each saddle emits one semi-proper dense leaf into each torus. Extended \
             recurrent, not extended p.a.p.: the block of g1 is strictly inside the block \
             of the junction orbit c1.",
        ),
        "double_center_sphere" => (
            ExpectedReport { extended_r_closed: t, extended_pap: t, ..Default::default() },
            "Sphere with two extended centers: in each hemisphere the periodic orbits around \
             the pole are replaced by n figure-eight saddle connections (loop A_k around the \
             pole, loop B_k around a center disk), separated by periodic annuli. The \
             remaining infinitely many levels are a singularity-sequence schema onto the \
             pole, and the innermost annulus shrinks onto the pole.",
        ),
        "sphere_limit_cycle" => (
            ExpectedReport { non_wandering: f, ..Default::default() },
            "Invented minimal fixture: source r, sink k and a periodic orbit gamma that is \
             the ω-limit of the spiral o1 out of r and the α-limit of the spiral o2 into k. \
             gamma is an extended limit cycle, so a wandering orbit exists.",
        ),
        "plus_saddle" => (
            ExpectedReport::default(),
            "Invented minimal fixture: one saddle s with stable separatrices a (from u1), \
             b (from u2) and unstable separatrices c, d (to k), plus generic orbits g1, g2. \
             Membership in extended orbits is not transitive: c ∈ O_ex(a) = {a,s,c,d} \
             but O_ex(c) = {a,b,c,s}.",
        ),
        "halfdisk_sphere" => (
            ExpectedReport { non_wandering: f, generalized_recurrent: t, ..Default::default() },
            "Half-disk flow with a segment of fixed points pasted with a center disk. The \
             degenerate corner points pp, pm are isolated saddle sets; generalized extended \
             orbits pass through them, so the flow is generalized recurrent although hp, hm \
             wander.",
        ),
        "comb_torus" => (
            ExpectedReport { non_wandering: t, generalized_recurrent: f, ..Default::default() },
            "Torus whose orbits are the fixed points q_k = (1/k, 0), the circles {1/k} x T \
             minus q_k, and the point o = (0,0) with its loop z0. Truncated at k = n with a \
             singularity-sequence schema onto o. The set {o} is a saddle set but not \
             isolated, so z0 is not generalized recurrent; every circle is non-wandering.",
        ),
        _ => unreachable!("checked by resolve_params"),
    };
    Ok(GalleryEntry {
        name: name.to_owned(),
        params,
        expected,
        provenance_note: note.to_owned(),
    })
}

/// Every entry with default parameters.
pub fn entries() -> Vec<GalleryEntry> {
    NAMES
        .iter()
        .map(|n| entry(n, &Params::new()).expect("default parameters are valid"))
        .collect()
}

pub fn params_n(n: i64) -> Params {
    Params::from([("n".to_owned(), n)])
}

fn sphere() -> FlowComplex {
    FlowComplex::new(SurfaceInfo::closed_orientable(0))
}

fn point(fc: &mut FlowComplex, id: &str, kind: PointKind) {
    fc.add_singular(SingularSet::point(id, kind));
}

fn arc(fc: &mut FlowComplex, id: &str, alpha: &str, omega: &str) {
    fc.add_orbit(OrbitClass::arc(id, alpha, omega));
}

fn schema(fc: &mut FlowComplex, id: &str, kind: SchemaKind, samples: &[String], target: IdSet) {
    fc.add_schema(AccumulationSchema {
        id: id.to_owned(),
        kind,
        samples: samples.to_vec(),
        target,
    });
}

fn saddle_set(fc: &mut FlowComplex, id: &str, members: IdSet, isolated: bool) {
    fc.add_saddle_set(SaddleSetDecl {
        id: id.to_owned(),
        members,
        isolated,
    });
}

pub fn sphere_meridian() -> FlowComplex {
    let mut fc = sphere();
    point(&mut fc, "q", PointKind::Other);
    point(&mut fc, "n", PointKind::Center);
    point(&mut fc, "s", PointKind::Center);
    arc(&mut fc, "m", "q", "q");
    fc.add_family(Family::center_disk("fn", "n", ids(["m", "q"])));
    fc.add_family(Family::center_disk("fs", "s", ids(["m", "q"])));
    fc
}

/// Saddles s1, s2 with connections c1: s1→s2 and c2: s2→s1.
fn genus2_junction() -> FlowComplex {
    let mut fc = FlowComplex::new(SurfaceInfo::closed_orientable(2));
    point(&mut fc, "s1", PointKind::Saddle);
    point(&mut fc, "s2", PointKind::Saddle);
    arc(&mut fc, "c1", "s1", "s2");
    arc(&mut fc, "c2", "s2", "s1");
    fc
}

/// Generic leaf `g` plus leaves `u` (α = saddle) and `w` (ω = saddle) of
/// one irrational torus, all sharing `decl`.
fn irrational_torus(fc: &mut FlowComplex, g: &str, u: &str, w: &str, saddle: &str, decl: &IdSet) {
    let sing = || LimitRef::Sing(saddle.to_owned());
    fc.add_orbit(OrbitClass::dense(g, decl.clone()));
    fc.add_orbit(OrbitClass::dense(u, decl.clone()).with_alpha(sing()));
    fc.add_orbit(OrbitClass::dense(w, decl.clone()).with_omega(sing()));
}

pub fn genus2_mixed() -> FlowComplex {
    let mut fc = genus2_junction();
    let t1 = ids(["g1", "u1", "w1", "s1", "s2", "c1", "c2"]);
    irrational_torus(&mut fc, "g1", "u1", "w1", "s1", &t1);
    arc(&mut fc, "a", "s2", "s2");
    fc.add_family(Family::annulus(
        "t2",
        ids(["a", "s2"]),
        ids(["a", "c1", "c2", "s1", "s2"]),
    ));
    fc
}

pub fn genus2_double_irrational() -> FlowComplex {
    let mut fc = genus2_junction();
    let t1 = ids(["g1", "u1", "w1", "s1", "s2", "c1", "c2"]);
    let t2 = ids(["g2", "u2", "w2", "s1", "s2", "c1", "c2"]);
    irrational_torus(&mut fc, "g1", "u1", "w1", "s1", &t1);
    irrational_torus(&mut fc, "g2", "u2", "w2", "s2", &t2);
    fc
}

pub fn nested_saddles_disk(n: usize) -> FlowComplex {
    assert!(n >= 2);
    let mut fc = FlowComplex::new(SurfaceInfo {
        genus: 0,
        orientable: true,
        boundary_components: 1,
    });
    let t = |k: usize| format!("T_{k}");
    let b = |k: usize| format!("B_{k}");
    let last = n + 1;
    for k in 2..=n {
        point(&mut fc, &t(k), PointKind::Saddle);
        point(&mut fc, &b(k), PointKind::Saddle);
        arc(&mut fc, &format!("L_{k}"), &b(k), &t(k));
    }
    arc(&mut fc, "O_2", &b(2), &t(2));
    for k in 3..=last {
        arc(&mut fc, &format!("R_{k}"), &t(k - 1), &b(k - 1));
    }
    for k in 3..=n {
        arc(&mut fc, &format!("U_{k}"), &t(k - 1), &t(k));
        arc(&mut fc, &format!("D_{k}"), &b(k), &b(k - 1));
    }
    let w = format!("W_{last}");
    arc(&mut fc, &w, &t(n), &b(n));

    let face = |fc: &mut FlowComplex, name: &str, boundary: Vec<String>| {
        let center = format!("c{name}");
        point(fc, &center, PointKind::Center);
        fc.add_family(Family::center_disk(format!("f{name}"), &center, ids(boundary)));
    };
    for k in 2..=n {
        face(
            &mut fc,
            &format!("lens_{k}"),
            vec![format!("L_{k}"), format!("R_{}", k + 1), t(k), b(k)],
        );
    }
    face(
        &mut fc,
        "crescent_2",
        vec!["O_2".into(), "R_3".into(), t(2), b(2)],
    );
    for k in 3..=n {
        face(
            &mut fc,
            &format!("crescent_{k}"),
            vec![
                format!("U_{k}"),
                format!("R_{}", k + 1),
                format!("D_{k}"),
                format!("L_{}", k - 1),
                t(k - 1),
                t(k),
                b(k),
                b(k - 1),
            ],
        );
    }
    face(
        &mut fc,
        &format!("crescent_{last}"),
        vec![w.clone(), format!("L_{n}"), t(n), b(n)],
    );

    point(&mut fc, "o", PointKind::Other);
    fc.add_orbit(OrbitClass::periodic("rim"));
    let mut outline: IdSet = ids(["O_2".to_owned(), w.clone(), "o".to_owned()]);
    for k in 2..=n {
        outline.insert(t(k));
        outline.insert(b(k));
    }
    for k in 3..=n {
        outline.insert(format!("U_{k}"));
        outline.insert(format!("D_{k}"));
    }
    fc.add_family(Family::annulus("outer", ids(["rim"]), outline));
    schema(
        &mut fc,
        "chain",
        SchemaKind::SaddleChain,
        &[t(n), b(n), format!("R_{last}"), w],
        ids(["o"]),
    );
    fc
}

pub fn double_center_sphere(n: usize) -> FlowComplex {
    assert!(n >= 1);
    let mut fc = sphere();
    for h in ["N", "S"] {
        let id = |name: &str, k: usize| format!("{h}_{name}{k}");
        let pole = format!("{h}_p");
        point(&mut fc, &pole, PointKind::Other);
        for k in 1..=n {
            let s = id("s", k);
            point(&mut fc, &s, PointKind::Saddle);
            arc(&mut fc, &id("A", k), &s, &s);
            arc(&mut fc, &id("B", k), &s, &s);
            point(&mut fc, &id("c", k), PointKind::Center);
            fc.add_family(Family::center_disk(
                id("d", k),
                &id("c", k),
                ids([id("B", k), s.clone()]),
            ));
        }
        for k in 2..=n {
            fc.add_family(Family::annulus(
                id("r", k),
                ids([id("A", k - 1), id("s", k - 1)]),
                ids([id("A", k), id("B", k), id("s", k)]),
            ));
        }
        fc.add_family(Family {
            shrinks1: true,
            ..Family::annulus(
                id("r", n + 1),
                ids([id("A", n), id("s", n)]),
                ids([pole.clone()]),
            )
        });
        schema(
            &mut fc,
            &format!("{h}_tail"),
            SchemaKind::SingularitySequence,
            &[id("s", n), id("A", n), id("B", n), id("c", n)],
            ids([pole]),
        );
    }
    fc.add_family(Family::annulus(
        "mid",
        ids(["N_A1", "N_B1", "N_s1"]),
        ids(["S_A1", "S_B1", "S_s1"]),
    ));
    fc
}

pub fn sphere_limit_cycle() -> FlowComplex {
    let mut fc = sphere();
    point(&mut fc, "r", PointKind::Source);
    point(&mut fc, "k", PointKind::Sink);
    fc.add_orbit(OrbitClass::periodic("gamma"));
    fc.add_orbit(OrbitClass::proper(
        "o1",
        LimitRef::Sing("r".into()),
        LimitRef::Orbit("gamma".into()),
    ));
    fc.add_orbit(OrbitClass::proper(
        "o2",
        LimitRef::Orbit("gamma".into()),
        LimitRef::Sing("k".into()),
    ));
    fc
}

pub fn plus_saddle() -> FlowComplex {
    let mut fc = sphere();
    point(&mut fc, "s", PointKind::Saddle);
    point(&mut fc, "u1", PointKind::Source);
    point(&mut fc, "u2", PointKind::Source);
    point(&mut fc, "k", PointKind::Sink);
    arc(&mut fc, "a", "u1", "s");
    arc(&mut fc, "b", "u2", "s");
    arc(&mut fc, "c", "s", "k");
    arc(&mut fc, "d", "s", "k");
    arc(&mut fc, "g1", "u1", "k");
    arc(&mut fc, "g2", "u2", "k");
    fc
}

pub fn halfdisk_sphere() -> FlowComplex {
    let mut fc = sphere();
    fc.add_singular(SingularSet::continuum("seg", Shape::Arc));
    point(&mut fc, "pp", PointKind::Other);
    point(&mut fc, "pm", PointKind::Other);
    point(&mut fc, "ctr", PointKind::Center);
    arc(&mut fc, "hp", "pm", "pp");
    arc(&mut fc, "hm", "pp", "pm");
    arc(&mut fc, "bp", "pm", "pp");
    arc(&mut fc, "bm", "pp", "pm");
    fc.add_family(Family::center_disk("cd", "ctr", ids(["bp", "bm", "pp", "pm"])));
    saddle_set(&mut fc, "F_pp", ids(["pp"]), true);
    saddle_set(&mut fc, "F_pm", ids(["pm"]), true);
    fc
}

pub fn comb_torus(n: usize) -> FlowComplex {
    assert!(n >= 2);
    let mut fc = FlowComplex::new(SurfaceInfo::closed_orientable(1));
    point(&mut fc, "o", PointKind::Other);
    arc(&mut fc, "z0", "o", "o");
    for k in 2..=n {
        let q = format!("q_{k}");
        point(&mut fc, &q, PointKind::Other);
        arc(&mut fc, &format!("z_{k}"), &q, &q);
        saddle_set(&mut fc, &format!("F_q{k}"), ids([q]), true);
    }
    fc.add_family(Family::annulus("a_1", ids(["z_2", "q_2"]), ids(["z0", "o"])));
    for k in 2..n {
        fc.add_family(Family::annulus(
            format!("a_{k}"),
            ids([format!("z_{}", k + 1), format!("q_{}", k + 1)]),
            ids([format!("z_{k}"), format!("q_{k}")]),
        ));
    }
    schema(
        &mut fc,
        "teeth",
        SchemaKind::SingularitySequence,
        &[format!("q_{n}"), format!("z_{n}"), format!("a_{}", n - 1)],
        ids(["o"]),
    );
    saddle_set(&mut fc, "F_o", ids(["o"]), false);
    fc
}
