//! The `.wdms` text format.
//!
//! ```text
//! surface genus=0
//! boundary b marked=5
//! decoration z1 weight=1
//! polygon z1 : bseg:b.0 bseg:b.1 arc:a13
//! shift a13=1
//! select z1 z2
//! ```

use std::fmt::Write;

use thiserror::Error;
use wdms_core::surface::{Boundary, BuildError, Decoration, PolygonDesc, SideDesc, SurfaceSpec};
use wdms_core::MixedAngulation;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}, column {col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WdmsDocument {
    pub genus: u32,
    pub boundaries: Vec<(String, u32)>,
    pub decorations: Vec<(String, i32)>,
    pub polygons: Vec<PolygonDesc>,
    pub shifts: Vec<(String, i64)>,
    pub select: Vec<String>,
}

/// Whitespace separated tokens with 1-based columns.
pub(crate) fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter().map(|(s, t)| (line[..s].chars().count() + 1, t)).collect()
}

pub(crate) fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(a, _)| a)
}

fn err(line: usize, col: usize, msg: impl Into<String>) -> ParseError {
    ParseError { line, col, msg: msg.into() }
}

fn key_value<'a>(ln: usize, (col, tok): (usize, &'a str), key: &str) -> Result<&'a str, ParseError> {
    match tok.split_once('=') {
        Some((k, v)) if k == key && !v.is_empty() => Ok(v),
        _ => Err(err(ln, col, format!("expected {key}=<value>"))),
    }
}

fn number<T: std::str::FromStr>(ln: usize, col: usize, s: &str) -> Result<T, ParseError> {
    s.parse().map_err(|_| err(ln, col, format!("bad number `{s}`")))
}

fn side(ln: usize, (col, tok): (usize, &str)) -> Result<SideDesc, ParseError> {
    if let Some(a) = tok.strip_prefix("arc:") {
        if a.is_empty() {
            return Err(err(ln, col, "empty arc name"));
        }
        return Ok(SideDesc::Arc(a.to_string()));
    }
    if let Some(b) = tok.strip_prefix("bseg:") {
        let (name, k) = b.rsplit_once('.').ok_or_else(|| err(ln, col, "expected bseg:<boundary>.<k>"))?;
        if name.is_empty() {
            return Err(err(ln, col, "empty boundary name"));
        }
        return Ok(SideDesc::Bseg(name.to_string(), number(ln, col, k)?));
    }
    Err(err(ln, col, format!("expected arc:<name> or bseg:<boundary>.<k>, found `{tok}`")))
}

pub fn parse(text: &str) -> Result<WdmsDocument, ParseError> {
    let mut doc = WdmsDocument::default();
    let mut surface = false;
    let mut last = 0;
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        last = ln;
        let toks = tokens(strip_comment(raw));
        let Some(&(col, head)) = toks.first() else { continue };
        let arity = |n: usize| -> Result<(), ParseError> {
            if toks.len() != n {
                let c = toks.get(n).map_or(col, |t| t.0);
                return Err(err(ln, c, format!("`{head}` takes {} fields", n - 1)));
            }
            Ok(())
        };
        match head {
            "surface" => {
                arity(2)?;
                if surface {
                    return Err(err(ln, col, "second surface line"));
                }
                surface = true;
                let v = key_value(ln, toks[1], "genus")?;
                doc.genus = number(ln, toks[1].0, v)?;
            }
            "boundary" => {
                arity(3)?;
                let v = key_value(ln, toks[2], "marked")?;
                doc.boundaries.push((toks[1].1.to_string(), number(ln, toks[2].0, v)?));
            }
            "decoration" => {
                arity(3)?;
                let v = key_value(ln, toks[2], "weight")?;
                doc.decorations.push((toks[1].1.to_string(), number(ln, toks[2].0, v)?));
            }
            "polygon" => {
                if toks.len() < 4 || toks[2].1 != ":" {
                    let c = toks.get(2).map_or(col, |t| t.0);
                    return Err(err(ln, c, "expected `polygon <dec> : <side> ...`"));
                }
                let sides = toks[3..].iter().map(|&t| side(ln, t)).collect::<Result<_, _>>()?;
                doc.polygons.push(PolygonDesc { dec: toks[1].1.to_string(), sides });
            }
            "shift" => {
                arity(2)?;
                let (a, v) = toks[1].1.split_once('=').ok_or_else(|| err(ln, toks[1].0, "expected <arc>=<int>"))?;
                doc.shifts.push((a.to_string(), number(ln, toks[1].0, v)?));
            }
            "select" => {
                doc.select.extend(toks[1..].iter().map(|t| t.1.to_string()));
            }
            _ => return Err(err(ln, col, format!("unknown keyword `{head}`"))),
        }
    }
    if !surface {
        return Err(err(last + 1, 1, "missing `surface genus=<g>` line"));
    }
    Ok(doc)
}

pub fn side_token(s: &SideDesc) -> String {
    match s {
        SideDesc::Arc(a) => format!("arc:{a}"),
        SideDesc::Bseg(b, k) => format!("bseg:{b}.{k}"),
    }
}

/// Canonical text: blocks in grammar order, side lists rotated to start at
/// the least token, shifts sorted by arc, no comments.
pub fn serialize(doc: &WdmsDocument) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "surface genus={}", doc.genus);
    for (n, k) in &doc.boundaries {
        let _ = writeln!(s, "boundary {n} marked={k}");
    }
    for (n, w) in &doc.decorations {
        let _ = writeln!(s, "decoration {n} weight={w}");
    }
    for p in &doc.polygons {
        let toks: Vec<String> = p.sides.iter().map(side_token).collect();
        let n = toks.len();
        let best = (0..n).min_by(|&i, &j| (0..n).map(|t| &toks[(i + t) % n]).cmp((0..n).map(|t| &toks[(j + t) % n]))).unwrap_or(0);
        let _ = write!(s, "polygon {} :", p.dec);
        for t in 0..n {
            let _ = write!(s, " {}", toks[(best + t) % n]);
        }
        s.push('\n');
    }
    let mut shifts = doc.shifts.clone();
    shifts.sort();
    for (a, k) in shifts {
        let _ = writeln!(s, "shift {a}={k}");
    }
    if !doc.select.is_empty() {
        let _ = writeln!(s, "select {}", doc.select.join(" "));
    }
    s
}

impl WdmsDocument {
    pub fn spec(&self) -> SurfaceSpec {
        SurfaceSpec {
            genus: self.genus,
            boundaries: self.boundaries.iter().map(|(n, m)| Boundary { name: n.clone(), marked: *m }).collect(),
            decorations: self.decorations.iter().map(|(n, w)| Decoration { name: n.clone(), weight: *w }).collect(),
        }
    }

    pub fn build(&self) -> Result<MixedAngulation, BuildError> {
        MixedAngulation::build(self.spec(), &self.polygons, &self.shifts)
    }

    /// Document of an angulation; nonzero shifts only.
    pub fn from_angulation(a: &MixedAngulation, select: &[String]) -> WdmsDocument {
        WdmsDocument {
            genus: a.spec.genus,
            boundaries: a.spec.boundaries.iter().map(|b| (b.name.clone(), b.marked)).collect(),
            decorations: a.spec.decorations.iter().map(|d| (d.name.clone(), d.weight)).collect(),
            polygons: a.describe(),
            shifts: a.arcs.iter().filter(|x| x.shift != 0).map(|x| (x.name.clone(), x.shift)).collect(),
            select: select.to_vec(),
        }
    }
}
