//! Line-oriented text format for flow complexes.
//!
//! ```text
//! # comment
//! surface genus=0 orientable=true boundary=0
//! sing q shape=point kind=other
//! orbit m kind=proper alpha=sing:q omega=sing:q
//! family fn kind=annulus b0={n} b1={m,q} shrink0=true shrink1=false
//! accum t kind=singularity-sequence samples=[a,b] target={o}
//! saddleset F members={q} isolated=true
//! ```
//!
//! `surface` must be the first record. [`emit`] is canonical: records are
//! grouped by type and sorted by id, so `emit(parse(emit(fc))) == emit(fc)`.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::model::{
    AccumulationSchema, Family, FamilyKind, FlowComplex, Id, IdSet, LimitRef, OrbitClass,
    OrbitKind, PointKind, SaddleSetDecl, SchemaKind, Shape, SingularSet, SurfaceInfo,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

/// Every error found in one input, in source order.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseErrors(pub Vec<ParseError>);

impl fmt::Display for ParseErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

pub fn is_valid_id(s: &str) -> bool {
    let mut chars = s.chars();
    chars
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

struct Token<'a> {
    col: usize,
    text: &'a str,
}

/// Splits on whitespace outside `{}` and `[]`.
fn tokenize(line: &str) -> Result<Vec<Token<'_>>, (usize, String)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start: Option<usize> = None;
    for (i, c) in line.char_indices() {
        match c {
            '{' | '[' => depth += 1,
            '}' | ']' => depth -= 1,
            _ => {}
        }
        if depth < 0 {
            return Err((i + 1, format!("unbalanced `{c}`")));
        }
        if c.is_whitespace() && depth == 0 {
            if let Some(s) = start.take() {
                out.push(Token { col: s + 1, text: &line[s..i] });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if depth != 0 {
        return Err((line.len() + 1, "unclosed bracket".into()));
    }
    if let Some(s) = start {
        out.push(Token { col: s + 1, text: &line[s..] });
    }
    Ok(out)
}

struct Record<'a> {
    line: usize,
    kind: &'a str,
    id: Option<Token<'a>>,
    fields: BTreeMap<&'a str, Token<'a>>,
    errors: Vec<ParseError>,
}

impl<'a> Record<'a> {
    fn err(&mut self, col: usize, message: impl Into<String>) {
        self.errors.push(ParseError {
            line: self.line,
            col,
            message: message.into(),
        });
    }

    /// Removes and returns the value of `key`, or reports it missing.
    fn required(&mut self, key: &str) -> Option<Token<'a>> {
        let t = self.fields.remove(key);
        if t.is_none() {
            self.err(1, format!("`{}` record is missing `{key}=`", self.kind));
        }
        t
    }

    fn optional(&mut self, key: &str) -> Option<Token<'a>> {
        self.fields.remove(key)
    }

    fn finish(&mut self) {
        let leftovers: Vec<(usize, String)> = self
            .fields
            .iter()
            .map(|(k, t)| (t.col - k.len() - 1, k.to_string()))
            .collect();
        for (col, k) in leftovers {
            self.err(col, format!("unknown key `{k}` for `{}`", self.kind));
        }
    }

    fn parse_with<T>(&mut self, t: &Token, what: &str, f: impl FnOnce(&str) -> Option<T>) -> Option<T> {
        let v = f(t.text);
        if v.is_none() {
            self.err(t.col, format!("invalid {what} `{}`", t.text));
        }
        v
    }

    fn bool_field(&mut self, key: &str, default: Option<bool>) -> Option<bool> {
        let tok = match default {
            Some(d) => match self.optional(key) {
                Some(t) => t,
                None => return Some(d),
            },
            None => self.required(key)?,
        };
        self.parse_with(&tok, "boolean", |s| s.parse().ok())
    }

    fn u32_field(&mut self, key: &str) -> Option<u32> {
        let tok = self.required(key)?;
        self.parse_with(&tok, "non-negative integer", |s| s.parse().ok())
    }

    fn set_field(&mut self, key: &str, required: bool) -> Option<IdSet> {
        let tok = if required { self.required(key)? } else { self.optional(key)? };
        let v = self.list(&tok, '{', '}')?;
        Some(v.into_iter().collect())
    }

    fn list(&mut self, tok: &Token, open: char, close: char) -> Option<Vec<Id>> {
        let inner = tok
            .text
            .strip_prefix(open)
            .and_then(|s| s.strip_suffix(close));
        let Some(inner) = inner else {
            self.err(tok.col, format!("expected `{open}...{close}`, got `{}`", tok.text));
            return None;
        };
        let mut out = Vec::new();
        let mut ok = true;
        for item in inner.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            if is_valid_id(item) {
                out.push(item.to_owned());
            } else {
                self.err(tok.col, format!("invalid id `{item}`"));
                ok = false;
            }
        }
        ok.then_some(out)
    }

    fn limit_field(&mut self, key: &str) -> Option<LimitRef> {
        let tok = self.optional(key)?;
        let (tag, rest) = match tok.text.split_once(':') {
            Some(p) => p,
            None => {
                self.err(tok.col, format!("expected sing:<id>, orbit:<id> or set:{{...}}, got `{}`", tok.text));
                return None;
            }
        };
        let single = |r: &mut Self| {
            if is_valid_id(rest) {
                Some(rest.to_owned())
            } else {
                r.err(tok.col, format!("invalid id `{rest}`"));
                None
            }
        };
        match tag {
            "sing" => single(self).map(LimitRef::Sing),
            "orbit" => single(self).map(LimitRef::Orbit),
            "set" => {
                let sub = Token { col: tok.col + 4, text: rest };
                self.list(&sub, '{', '}')
                    .map(|v| LimitRef::Set(v.into_iter().collect()))
            }
            _ => {
                self.err(tok.col, format!("unknown limit tag `{tag}`"));
                None
            }
        }
    }

    fn enum_field<T>(&mut self, key: &str, required: bool, table: &[(&str, T)]) -> Option<T>
    where
        T: Copy,
    {
        let tok = if required { self.required(key)? } else { self.optional(key)? };
        let found = table.iter().find(|(n, _)| *n == tok.text).map(|(_, v)| *v);
        if found.is_none() {
            let names: Vec<&str> = table.iter().map(|(n, _)| *n).collect();
            self.err(tok.col, format!("`{key}` must be one of {}, got `{}`", names.join("|"), tok.text));
        }
        found
    }
}

const SHAPES: [(&str, Shape); 3] = [("point", Shape::Point), ("arc", Shape::Arc), ("circle", Shape::Circle)];
const POINT_KINDS: [(&str, PointKind); 5] = [
    ("center", PointKind::Center),
    ("saddle", PointKind::Saddle),
    ("sink", PointKind::Sink),
    ("source", PointKind::Source),
    ("other", PointKind::Other),
];
const ORBIT_KINDS: [(&str, OrbitKind); 4] = [
    ("periodic", OrbitKind::Periodic),
    ("proper", OrbitKind::ProperNonClosed),
    ("dense", OrbitKind::LocallyDense),
    ("exceptional", OrbitKind::Exceptional),
];
const FAMILY_KINDS: [(&str, FamilyKind); 2] = [
    ("annulus", FamilyKind::PeriodicAnnulus),
    ("region", FamilyKind::ClosedExtendedOrbitRegion),
];
const SCHEMA_KINDS: [(&str, SchemaKind); 3] = [
    ("saddle-chain", SchemaKind::SaddleChain),
    ("singularity-sequence", SchemaKind::SingularitySequence),
    ("family-sequence", SchemaKind::FamilySequence),
];

fn name_of<T: PartialEq + Copy>(table: &[(&'static str, T)], v: T) -> &'static str {
    table.iter().find(|(_, x)| *x == v).map(|(n, _)| *n).expect("every variant is named")
}

fn split_record(line_no: usize, line: &str) -> Result<Option<Record<'_>>, ParseError> {
    let toks = tokenize(line).map_err(|(col, message)| ParseError { line: line_no, col, message })?;
    let mut it = toks.into_iter();
    let Some(head) = it.next() else { return Ok(None) };
    let mut rec = Record {
        line: line_no,
        kind: head.text,
        id: None,
        fields: BTreeMap::new(),
        errors: Vec::new(),
    };
    for t in it {
        match t.text.split_once('=') {
            Some((k, v)) => {
                let col = t.col + k.len() + 1;
                if rec.fields.contains_key(k) {
                    rec.err(t.col, format!("duplicate key `{k}`"));
                } else {
                    rec.fields.insert(k, Token { col, text: v });
                }
            }
            None if rec.id.is_none() && rec.fields.is_empty() && rec.kind != "surface" => {
                if !is_valid_id(t.text) {
                    rec.err(t.col, format!("invalid id `{}`", t.text));
                }
                rec.id = Some(t);
            }
            None => rec.err(t.col, format!("expected key=value, got `{}`", t.text)),
        }
    }
    Ok(Some(rec))
}

pub fn parse(input: &str) -> Result<FlowComplex, ParseErrors> {
    let mut errors = Vec::new();
    let mut fc = FlowComplex::new(SurfaceInfo::closed_orientable(0));
    let mut seen_surface = false;
    let mut declared: BTreeMap<Id, usize> = BTreeMap::new();
    let mut saw_record = false;

    for (i, raw) in input.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim_end();
        if line.trim_start().starts_with('#') {
            continue;
        }
        let mut rec = match split_record(line_no, line) {
            Ok(Some(r)) => r,
            Ok(None) => continue,
            Err(e) => {
                errors.push(e);
                continue;
            }
        };
        let first = !saw_record;
        saw_record = true;
        if rec.kind == "surface" {
            if seen_surface {
                rec.err(1, "repeated `surface` record");
            } else if !first {
                rec.err(1, "`surface` must be the first record");
            }
            seen_surface = true;
            let genus = rec.u32_field("genus");
            let orientable = rec.bool_field("orientable", None);
            let boundary = rec.u32_field("boundary");
            if let (Some(genus), Some(orientable), Some(boundary_components)) = (genus, orientable, boundary) {
                fc.surface = SurfaceInfo { genus, orientable, boundary_components };
            }
            rec.finish();
            errors.append(&mut rec.errors);
            continue;
        }
        if first {
            rec.err(1, "`surface` must be the first record");
        }
        let Some(id_tok) = rec.id.take() else {
            if ["sing", "orbit", "family", "accum", "saddleset"].contains(&rec.kind) {
                rec.err(1, format!("`{}` record is missing its id", rec.kind));
            } else {
                rec.err(1, format!("unknown record type `{}`", rec.kind));
            }
            errors.append(&mut rec.errors);
            continue;
        };
        let id = id_tok.text.to_owned();
        if let Some(prev) = declared.get(&id) {
            rec.err(id_tok.col, format!("duplicate id `{id}` (first declared on line {prev})"));
        } else {
            declared.insert(id.clone(), line_no);
        }
        match rec.kind {
            "sing" => {
                let shape = rec.enum_field("shape", true, &SHAPES);
                let kind = rec.enum_field("kind", false, &POINT_KINDS);
                if let Some(shape) = shape {
                    fc.add_singular(SingularSet { id, shape, kind });
                }
            }
            "orbit" => {
                let kind = rec.enum_field("kind", true, &ORBIT_KINDS);
                let alpha = rec.limit_field("alpha");
                let omega = rec.limit_field("omega");
                let closure_decl = rec.set_field("closure", false);
                if let Some(kind) = kind {
                    fc.add_orbit(OrbitClass { id, kind, alpha, omega, closure_decl });
                }
            }
            "family" => {
                let kind = rec.enum_field("kind", true, &FAMILY_KINDS);
                let b0 = rec.set_field("b0", true);
                let b1 = rec.set_field("b1", true);
                let s0 = rec.bool_field("shrink0", Some(false));
                let s1 = rec.bool_field("shrink1", Some(false));
                if let (Some(member_kind), Some(boundary0), Some(boundary1), Some(shrinks0), Some(shrinks1)) =
                    (kind, b0, b1, s0, s1)
                {
                    fc.add_family(Family { id, member_kind, boundary0, boundary1, shrinks0, shrinks1 });
                }
            }
            "accum" => {
                let kind = rec.enum_field("kind", true, &SCHEMA_KINDS);
                let samples = rec.required("samples").and_then(|t| rec.list(&t, '[', ']'));
                let target = rec.set_field("target", true);
                if let (Some(kind), Some(samples), Some(target)) = (kind, samples, target) {
                    fc.add_schema(AccumulationSchema { id, kind, samples, target });
                }
            }
            "saddleset" => {
                let members = rec.set_field("members", true);
                let isolated = rec.bool_field("isolated", None);
                if let (Some(members), Some(isolated)) = (members, isolated) {
                    fc.add_saddle_set(SaddleSetDecl { id, members, isolated });
                }
            }
            other => rec.err(1, format!("unknown record type `{other}`")),
        }
        rec.finish();
        errors.append(&mut rec.errors);
    }
    if !seen_surface {
        errors.push(ParseError { line: 1, col: 1, message: "missing `surface` record".into() });
    }
    if errors.is_empty() {
        Ok(fc)
    } else {
        errors.sort_by_key(|e| (e.line, e.col));
        Err(ParseErrors(errors))
    }
}

fn set_text(s: &IdSet) -> String {
    let v: Vec<&str> = s.iter().map(String::as_str).collect();
    format!("{{{}}}", v.join(","))
}

fn limit_text(r: &LimitRef) -> String {
    match r {
        LimitRef::Sing(id) => format!("sing:{id}"),
        LimitRef::Orbit(id) => format!("orbit:{id}"),
        LimitRef::Set(s) => format!("set:{}", set_text(s)),
    }
}

/// Canonical text form.
pub fn emit(fc: &FlowComplex) -> String {
    let mut out = String::new();
    let s = &fc.surface;
    let _ = writeln!(
        out,
        "surface genus={} orientable={} boundary={}",
        s.genus, s.orientable, s.boundary_components
    );
    for x in fc.singular_sets.values() {
        let _ = write!(out, "sing {} shape={}", x.id, name_of(&SHAPES, x.shape));
        if let Some(k) = x.kind {
            let _ = write!(out, " kind={}", name_of(&POINT_KINDS, k));
        }
        out.push('\n');
    }
    for o in fc.orbit_classes.values() {
        let _ = write!(out, "orbit {} kind={}", o.id, name_of(&ORBIT_KINDS, o.kind));
        if let Some(a) = &o.alpha {
            let _ = write!(out, " alpha={}", limit_text(a));
        }
        if let Some(w) = &o.omega {
            let _ = write!(out, " omega={}", limit_text(w));
        }
        if let Some(c) = &o.closure_decl {
            let _ = write!(out, " closure={}", set_text(c));
        }
        out.push('\n');
    }
    for f in fc.families.values() {
        let _ = writeln!(
            out,
            "family {} kind={} b0={} b1={} shrink0={} shrink1={}",
            f.id,
            name_of(&FAMILY_KINDS, f.member_kind),
            set_text(&f.boundary0),
            set_text(&f.boundary1),
            f.shrinks0,
            f.shrinks1
        );
    }
    for a in fc.schemas.values() {
        let _ = writeln!(
            out,
            "accum {} kind={} samples=[{}] target={}",
            a.id,
            name_of(&SCHEMA_KINDS, a.kind),
            a.samples.join(","),
            set_text(&a.target)
        );
    }
    for d in fc.saddle_sets.values() {
        let _ = writeln!(
            out,
            "saddleset {} members={} isolated={}",
            d.id,
            set_text(&d.members),
            d.isolated
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery;

    #[test]
    fn gallery_round_trips() {
        for name in gallery::NAMES {
            let fc = gallery::build(name, &gallery::Params::new()).unwrap();
            let text = emit(&fc);
            assert_eq!(parse(&text).unwrap(), fc, "{name}");
        }
    }

    #[test]
    fn comments_blank_lines_and_spaces_in_sets() {
        let src = "# header\n\nsurface genus=0 orientable=true boundary=0\n\
                   sing q shape=point kind=other\n\
                   orbit m kind=proper alpha=sing:q omega=set:{ q , q2 }\n\
                   sing q2 shape=arc\n";
        let fc = parse(src).unwrap();
        assert_eq!(
            fc.orbit_classes["m"].omega,
            Some(LimitRef::Set(crate::model::ids(["q", "q2"])))
        );
    }

    #[test]
    fn errors_carry_positions_and_are_all_reported() {
        let src = "sing a shape=point kind=saddle\n\
                   surface genus=x orientable=true boundary=0\n\
                   orbit a kind=wobbly\n\
                   orbit 9b kind=periodic\n\
                   widget w\n\
                   family f kind=annulus b0={a} colour=red\n";
        let errs = parse(src).unwrap_err().0;
        let has = |line: usize, needle: &str| {
            errs.iter().any(|e| e.line == line && e.message.contains(needle))
        };
        assert!(has(1, "first record"), "{errs:?}");
        assert!(has(2, "first record"));
        assert!(has(2, "non-negative integer"));
        assert!(has(3, "duplicate id"));
        assert!(has(3, "must be one of"));
        assert!(has(4, "invalid id"));
        assert!(has(5, "unknown record type"));
        assert!(has(6, "missing `b1=`"));
        assert!(has(6, "unknown key `colour`"));
        let e = errs.iter().find(|e| e.message.contains("wobbly")).unwrap();
        assert_eq!(e.col, 14);
    }
}
