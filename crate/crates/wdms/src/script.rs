//! Flip scripts: one `<arc> forward|backward` per line, `#` comments.

use std::fmt::Write;

use thiserror::Error;
use wdms_core::flip::Direction;
use wdms_core::MixedAngulation;

use crate::format::{strip_comment, tokens, ParseError};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ScriptError {
    #[error("{0}")]
    Parse(ParseError),
    #[error("line {line}: unknown arc {arc}")]
    UnknownArc { line: usize, arc: String },
}

/// Arc names refer to `a`; flips keep arc identities, so later lines may
/// name arcs that earlier lines moved.
pub fn parse_script(text: &str, a: &MixedAngulation) -> Result<Vec<(usize, Direction)>, ScriptError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let toks = tokens(strip_comment(raw));
        if toks.is_empty() {
            continue;
        }
        if toks.len() != 2 {
            let col = toks.get(2).map_or(toks[0].0, |t| t.0);
            return Err(ScriptError::Parse(ParseError { line: ln, col, msg: "expected `<arc> forward|backward`".into() }));
        }
        let dir = match toks[1].1 {
            "forward" => Direction::Forward,
            "backward" => Direction::Backward,
            d => {
                let msg = format!("unknown direction `{d}`");
                return Err(ScriptError::Parse(ParseError { line: ln, col: toks[1].0, msg }));
            }
        };
        let x = a.arc_id(toks[0].1).ok_or_else(|| ScriptError::UnknownArc { line: ln, arc: toks[0].1.into() })?;
        out.push((x, dir));
    }
    Ok(out)
}

pub fn render_script(a: &MixedAngulation, steps: &[(usize, Direction)]) -> String {
    let mut s = String::new();
    for &(x, d) in steps {
        let d = match d {
            Direction::Forward => "forward",
            Direction::Backward => "backward",
        };
        let _ = writeln!(s, "{} {d}", a.arcs[x].name);
    }
    s
}
