//! Command line surface. [`execute`] returns the text a command prints;
//! the binary only routes it to stdout or `--out`.

use std::fmt::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use thiserror::Error;
use wdms_core::arc::dual_sgraph;
use wdms_core::collapse::{collapse, select_open, select_subsurface, CollapseContext};
use wdms_core::exchange::{enumerate_with, export_dot, successors, Mode};
use wdms_core::flip::{apply_script, flip, Direction};
use wdms_core::hearts::{heart_of, quotient_heart, run_tilt_script};
use wdms_core::lift::{lift_flip, FlipType};
use wdms_core::schober::{collapse_graph, RibbonGraph, SubGraph};
use wdms_core::surface::validate_spec;
use wdms_core::MixedAngulation;

use crate::dot::{ribbon_dot, sgraph_dot};
use crate::format::{self, WdmsDocument};
use crate::graph::{self, GraphDocument};
use crate::script;

#[derive(Debug, Parser)]
#[command(name = "wdms", version, about = "Flips, collapses and tilts on decorated marked surfaces")]
pub struct Cli {
    /// Write the result to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Tracked,
    Canonical,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the angulation and check its invariants.
    Validate { file: PathBuf },
    /// Flip one arc, or replay a script of flips.
    Flip {
        file: PathBuf,
        #[arg(long, required_unless_present = "script", conflicts_with = "script")]
        arc: Option<String>,
        #[arg(long, requires = "arc")]
        backward: bool,
        #[arg(long)]
        script: Option<PathBuf>,
    },
    /// Replay a script of flips.
    Apply {
        file: PathBuf,
        #[arg(long)]
        script: PathBuf,
    },
    /// Dual S-graph in the graph format.
    Dual { file: PathBuf },
    /// Exchange graph as DOT.
    Eg {
        file: PathBuf,
        #[arg(long, default_value_t = 100)]
        max_nodes: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Tracked)]
        mode: ModeArg,
        #[arg(long)]
        parallel: bool,
    },
    /// Collapse the selected decorations.
    Collapse {
        file: PathBuf,
        /// Decoration names; defaults to the file's select line.
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        select: Vec<String>,
        /// Let selected polygons meet boundary components they do not
        /// cover, as after replaying a lift.
        #[arg(long)]
        open: bool,
    },
    /// Lift a flip of the collapsed surface to a flip script upstairs.
    Lift {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        select: Vec<String>,
        #[arg(long)]
        arc: String,
    },
    /// Tilt the heart along a flip script and print the transcript.
    Tilt {
        file: PathBuf,
        #[arg(long)]
        script: PathBuf,
    },
    /// Contract a connected induced subgraph of a ribbon graph.
    GraphCollapse {
        file: PathBuf,
        /// Vertex names; defaults to the file's sub line.
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        sub: Vec<String>,
    },
    /// DOT of a ribbon graph (`.graph`) or of the dual S-graph.
    ExportDot { file: PathBuf },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Invalid(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Invalid(_) => 1,
        }
    }
}

fn invalid(e: impl std::fmt::Display) -> CliError {
    CliError::Invalid(e.to_string())
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<(WdmsDocument, MixedAngulation), CliError> {
    let doc = format::parse(&read(path)?).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    let a = doc.build().map_err(invalid)?;
    Ok((doc, a))
}

fn load_script(path: &Path, a: &MixedAngulation) -> Result<Vec<(usize, Direction)>, CliError> {
    script::parse_script(&read(path)?, a).map_err(|e| match e {
        script::ScriptError::Parse(p) => CliError::Parse(format!("{}: {p}", path.display())),
        other => invalid(other),
    })
}

fn arc_id(a: &MixedAngulation, name: &str) -> Result<usize, CliError> {
    a.arc_id(name).ok_or_else(|| CliError::Invalid(format!("unknown arc {name}")))
}

fn context(a: &MixedAngulation, select: &[String], open: bool) -> Result<CollapseContext, CliError> {
    if select.is_empty() {
        return Err(CliError::Invalid("no decorations selected".into()));
    }
    let decs = select
        .iter()
        .map(|n| a.spec.decoration_index(n).ok_or_else(|| CliError::Invalid(format!("unknown decoration {n}"))))
        .collect::<Result<Vec<_>, _>>()?;
    let sel = if open { select_open(a, &decs) } else { select_subsurface(a, &decs) }.map_err(invalid)?;
    collapse(a, &sel).map_err(invalid)
}

fn pick<'a>(flag: &'a [String], file: &'a [String]) -> &'a [String] {
    if flag.is_empty() {
        file
    } else {
        flag
    }
}

fn is_graph_file(path: &Path) -> bool {
    path.extension().is_some_and(|e| e == "graph")
}

pub fn execute(cmd: &Command) -> Result<String, CliError> {
    match cmd {
        Command::Validate { file } => {
            let doc = format::parse(&read(file)?).map_err(|e| CliError::Parse(format!("{}: {e}", file.display())))?;
            let s = doc.spec();
            let (w, m, b) = (s.weight_total(), s.marked_total() as i64, s.boundaries.len() as i64);
            // a complex cannot exist when the counts are off; say so first
            if validate_spec(&s).is_empty() && !s.satisfies_weight_formula() {
                return Err(CliError::Invalid(format!(
                    "weight formula fails: {w} - ({m} + 2*{b}) != 4*{} - 4",
                    s.genus
                )));
            }
            let a = doc.build().map_err(invalid)?;
            Ok(format!(
                "valid: genus={} boundaries={b} marked={m} polygons={} arcs={} weight={w}\n",
                s.genus,
                a.polygons.len(),
                a.arcs.len()
            ))
        }
        Command::Flip { file, arc, backward, script } => {
            let (doc, a) = load(file)?;
            let b = match (arc, script) {
                (Some(name), _) => {
                    let dir = if *backward { Direction::Backward } else { Direction::Forward };
                    flip(&a, arc_id(&a, name)?, dir).map_err(invalid)?.0
                }
                (None, Some(path)) => apply_script(&a, &load_script(path, &a)?).map_err(invalid)?,
                (None, None) => return Err(CliError::Parse("give --arc or --script".into())),
            };
            Ok(format::serialize(&WdmsDocument::from_angulation(&b, &doc.select)))
        }
        Command::Apply { file, script } => {
            let (doc, a) = load(file)?;
            let b = apply_script(&a, &load_script(script, &a)?).map_err(invalid)?;
            Ok(format::serialize(&WdmsDocument::from_angulation(&b, &doc.select)))
        }
        Command::Dual { file } => {
            let (_, a) = load(file)?;
            let s = dual_sgraph(&a);
            let mut out = graph::serialize_graph(&GraphDocument::from_graph(&RibbonGraph::from_sgraph(&s)));
            for e in s.edges.iter().filter(|e| e.shift != 0) {
                let _ = writeln!(out, "# shift {}={}", e.name, e.shift);
            }
            Ok(out)
        }
        Command::Eg { file, max_nodes, mode, parallel } => {
            let (_, a) = load(file)?;
            let mode = match mode {
                ModeArg::Tracked => Mode::Tracked,
                ModeArg::Canonical => Mode::Canonical,
            };
            let g = if *parallel {
                enumerate_with(&a, *max_nodes, mode, &|r, layer| layer.par_iter().map(|s| successors(r, s, mode)).collect())
            } else {
                enumerate_with(&a, *max_nodes, mode, &|r, layer| layer.iter().map(|s| successors(r, s, mode)).collect())
            };
            Ok(export_dot(&g))
        }
        Command::Collapse { file, select, open } => {
            let (doc, a) = load(file)?;
            let ctx = context(&a, pick(select, &doc.select), *open)?;
            Ok(format::serialize(&WdmsDocument::from_angulation(&ctx.collapsed, &[])))
        }
        Command::Lift { file, select, arc } => {
            let (doc, a) = load(file)?;
            let ctx = context(&a, pick(select, &doc.select), false)?;
            let g = arc_id(&ctx.collapsed, arc)?;
            let l = lift_flip(&ctx, g).map_err(invalid)?;
            let kind = match l.kind {
                FlipType::Plain => "plain",
                FlipType::I => "I",
                FlipType::II { .. } => "II",
                FlipType::III => "III",
                FlipType::IV => "IV",
            };
            let mut out = format!("# lift of {arc}, type {kind}\n");
            out.push_str(&script::render_script(&a, &l.refinement));
            out.push_str(&script::render_script(&a, &l.flips));
            Ok(out)
        }
        Command::Tilt { file, script } => {
            let (doc, a) = load(file)?;
            let steps = load_script(script, &a)?;
            let h = heart_of(&a);
            let (end, transcript) = run_tilt_script(&h, &steps).map_err(invalid)?;
            let mut out = wdms_core::hearts::render_transcript(&h, &transcript);
            if !doc.select.is_empty() {
                let q = quotient_heart(&end, &context(&a, &doc.select, false)?).map_err(invalid)?;
                let _ = writeln!(out, "quotient: {}", q.labels().join(" "));
            }
            Ok(out)
        }
        Command::GraphCollapse { file, sub } => {
            let doc = graph::parse_graph(&read(file)?).map_err(|e| CliError::Parse(format!("{}: {e}", file.display())))?;
            let g = doc.build().map_err(invalid)?;
            let names = pick(sub, &doc.sub);
            let vs = names
                .iter()
                .map(|n| g.vertex(n).ok_or_else(|| CliError::Invalid(format!("unknown vertex {n}"))))
                .collect::<Result<Vec<_>, _>>()?;
            let (h, book) = collapse_graph(&g, &SubGraph::induced(&g, &vs)).map_err(invalid)?;
            let mut out = format!("# arity {}\n# phi", book.arity);
            let at = &h.rotation[book.vbar];
            for (i, &p) in book.phi.iter().enumerate() {
                let _ = write!(out, " {}={}", h.half_edges[at[i]].name, g.half_edges[p].name);
            }
            out.push('\n');
            out.push_str(&graph::serialize_graph(&GraphDocument::from_graph(&h)));
            Ok(out)
        }
        Command::ExportDot { file } => {
            if is_graph_file(file) {
                let doc = graph::parse_graph(&read(file)?).map_err(|e| CliError::Parse(format!("{}: {e}", file.display())))?;
                Ok(ribbon_dot(&doc.build().map_err(invalid)?))
            } else {
                let (_, a) = load(file)?;
                Ok(sgraph_dot(&dual_sgraph(&a)))
            }
        }
    }
}
