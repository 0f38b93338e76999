//! Graphviz export of the orbit-class graph.

use std::fmt::Write as _;

use crate::model::{FlowComplex, IdSet, LimitRef, OrbitKind, PointKind, Shape};

fn node_style(fc: &FlowComplex, id: &str) -> (&'static str, Vec<&'static str>) {
    if let Some(s) = fc.singular_sets.get(id) {
        let shape = match (s.shape, s.kind) {
            (Shape::Arc, _) => "box",
            (Shape::Circle, _) => "Mcircle",
            (Shape::Point, Some(PointKind::Center)) => "circle",
            (Shape::Point, Some(PointKind::Saddle)) => "diamond",
            (Shape::Point, Some(PointKind::Sink)) => "doublecircle",
            (Shape::Point, Some(PointKind::Source)) => "invtriangle",
            (Shape::Point, _) => "octagon",
        };
        return (shape, vec![]);
    }
    if let Some(o) = fc.orbit_classes.get(id) {
        let style = match o.kind {
            OrbitKind::Periodic => vec!["bold"],
            OrbitKind::ProperNonClosed => vec![],
            OrbitKind::LocallyDense => vec!["dashed"],
            OrbitKind::Exceptional => vec!["dotted"],
        };
        return ("ellipse", style);
    }
    ("box", vec!["rounded"])
}

fn quote(s: &str) -> String {
    format!("\"{s}\"")
}

/// DOT digraph of singular sets, orbit classes and families. α edges run
/// from the limit set to the orbit, ω edges from the orbit to the limit
/// set, dashed edges from a family to its boundary. Members of `overlay`
/// are filled gold.
pub fn export_dot(fc: &FlowComplex, overlay: Option<&IdSet>) -> String {
    let mut out = String::from("digraph flow {\n");
    for id in fc.all_ids() {
        let (shape, mut style) = node_style(fc, id);
        let highlighted = overlay.is_some_and(|o| o.contains(id));
        if highlighted {
            style.push("filled");
        }
        let _ = write!(out, "  {} [shape={shape}", quote(id));
        if !style.is_empty() {
            let _ = write!(out, ", style=\"{}\"", style.join(","));
        }
        if highlighted {
            out.push_str(", fillcolor=gold");
        }
        out.push_str("];\n");
    }
    let ref_ids = |r: &LimitRef| -> Vec<String> { r.ids().into_iter().cloned().collect() };
    for o in fc.orbit_classes.values() {
        if let Some(a) = &o.alpha {
            for src in ref_ids(a) {
                let _ = writeln!(out, "  {} -> {} [label=alpha];", quote(&src), quote(&o.id));
            }
        }
        if let Some(w) = &o.omega {
            for dst in ref_ids(w) {
                let _ = writeln!(out, "  {} -> {} [label=omega];", quote(&o.id), quote(&dst));
            }
        }
    }
    for f in fc.families.values() {
        for (side, b) in [("b0", &f.boundary0), ("b1", &f.boundary1)] {
            for m in b {
                let _ = writeln!(out, "  {} -> {} [style=dashed, label={side}];", quote(&f.id), quote(m));
            }
        }
    }
    for a in fc.schemas.values() {
        for s in &a.samples {
            for t in &a.target {
                let _ = writeln!(
                    out,
                    "  {} -> {} [style=dotted, label={}];",
                    quote(s),
                    quote(t),
                    quote(&a.id)
                );
            }
        }
    }
    out.push_str("}\n");
    out
}
