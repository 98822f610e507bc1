use std::path::PathBuf;
use std::process::Command;

use wdms::format::{parse, serialize};
use wdms_core::exchange::canonical_key;

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_wdms")).args(args).current_dir(fixtures()).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    out
}

fn key(text: &str) -> String {
    canonical_key(&parse(text).unwrap().build().unwrap())
}

fn fixture_names(ext: &str) -> Vec<String> {
    let mut v: Vec<String> = std::fs::read_dir(fixtures())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .filter(|n| n.ends_with(ext))
        .collect();
    v.sort();
    v
}

#[test]
fn validate_exit_codes() {
    for name in fixture_names(".wdms") {
        let (code, out, err) = run(&["validate", &name]);
        let want = if name.starts_with("invalid-") {
            1
        } else if name.starts_with("bad-") {
            2
        } else {
            0
        };
        assert_eq!(code, want, "{name}: {out}{err}");
    }
    let msg = |f: &str| run(&["validate", f]).2;
    assert!(msg("invalid-dangling.wdms").contains("DanglingArc"));
    assert!(msg("invalid-size.wdms").contains("PolygonSizeMismatch"));
    assert!(msg("invalid-no-marked.wdms").contains("no marked point"));
    assert!(msg("invalid-no-decoration.wdms").contains("decoration set is empty"));
    assert!(msg("invalid-weights.wdms").contains("weight formula"));
    assert!(msg("bad-syntax.wdms").contains("line 3, column 23"));
    assert_eq!(run(&["validate", "missing.wdms"]).0, 2);
    assert_eq!(ok(&["validate", "pentagon.wdms"]), "valid: genus=0 boundaries=1 marked=5 polygons=3 arcs=2 weight=3\n");
}

#[test]
fn fixtures_round_trip() {
    for name in fixture_names(".wdms").into_iter().filter(|n| !n.starts_with("bad-")) {
        let text = std::fs::read_to_string(fixtures().join(&name)).unwrap();
        assert_eq!(serialize(&parse(&text).unwrap()), text, "{name}");
    }
    let doc = parse(&std::fs::read_to_string(fixtures().join("pentagon.wdms")).unwrap()).unwrap();
    assert_eq!(doc.polygons.len(), 3);
}

#[test]
fn flip_and_back() {
    let out = ok(&["flip", "pentagon.wdms", "--arc", "a13"]);
    assert_eq!(
        out,
        "surface genus=0\nboundary b marked=5\ndecoration z1 weight=1\ndecoration z2 weight=1\ndecoration z3 weight=1\n\
         polygon z1 : arc:a13 bseg:b.1 bseg:b.2\npolygon z2 : arc:a13 arc:a14 bseg:b.0\npolygon z3 : arc:a14 bseg:b.3 bseg:b.4\n\
         shift a13=1\n"
    );
    let dir = std::env::temp_dir().join(format!("wdms-flip-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let f = dir.join("flipped.wdms");
    std::fs::write(&f, &out).unwrap();
    let back = ok(&["flip", f.to_str().unwrap(), "--arc", "a13", "--backward"]);
    assert_eq!(back, std::fs::read_to_string(fixtures().join("pentagon.wdms")).unwrap());
    let (code, _, err) = run(&["flip", "pentagon.wdms", "--arc", "nope"]);
    assert_eq!(code, 1);
    assert!(err.contains("unknown arc nope"));
    assert_eq!(run(&["flip", "pentagon.wdms"]).0, 2);
    let monogon = ok(&["flip", "monogon.wdms", "--arc", "g"]);
    assert!(monogon.contains("shift g=1"));
}

#[test]
fn exchange_graph_dot() {
    let dot = ok(&["eg", "pentagon.wdms", "--max-nodes", "100", "--mode", "tracked"]);
    assert_eq!(dot.matches("[label=\"").count() - dot.matches(" -> ").count(), 5);
    assert_eq!(dot.matches(" -> ").count(), 10);
    let one = ok(&["eg", "pentagon.wdms", "--max-nodes", "1"]);
    assert_eq!(one.matches(" -> ").count(), 0);
    assert!(one.contains("n0 [label=\"0\"]") && one.contains("truncated"));
    let seq = ok(&["eg", "annulus-fan.wdms", "--max-nodes", "50", "--mode", "tracked"]);
    let par = ok(&["eg", "annulus-fan.wdms", "--max-nodes", "50", "--mode", "tracked", "--parallel"]);
    assert_eq!(seq, par);
    assert!(seq.contains("n49 ") && !seq.contains("n50 "));
    let canon = ok(&["eg", "annulus-fan.wdms", "--max-nodes", "50", "--mode", "canonical"]);
    assert!(canon.matches(" [label=\"").count() < seq.matches(" [label=\"").count());
}

#[test]
fn lift_replays_and_projects() {
    let dir = std::env::temp_dir().join(format!("wdms-lift-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cases = [
        ("annulus.wdms", "gbar", "III", 2),
        ("annulus-one.wdms", "c", "III", 2),
        ("octagon.wdms", "q24", "I", 2),
        ("chain-1.wdms", "g", "II", 2),
        ("chain-3.wdms", "g", "II", 4),
        ("loop-one.wdms", "gt", "III", 2),
        ("loop-both.wdms", "gt", "III", 3),
        ("handle.wdms", "gt", "IV", 7),
    ];
    for (file, arc, kind, len) in cases {
        let script = ok(&["lift", file, "--arc", arc]);
        assert!(script.starts_with(&format!("# lift of {arc}, type {kind}\n")), "{file}: {script}");
        assert_eq!(script.lines().filter(|l| !l.starts_with('#')).count(), len, "{file}: {script}");
        let s = dir.join(format!("{file}.script"));
        std::fs::write(&s, &script).unwrap();
        let up = dir.join(file);
        let (code, _, err) = run(&["apply", file, "--script", s.to_str().unwrap(), "--out", up.to_str().unwrap()]);
        assert_eq!(code, 0, "{err}");
        let via_flip = ok(&["flip", file, "--script", s.to_str().unwrap()]);
        assert_eq!(std::fs::read_to_string(&up).unwrap(), via_flip);
        let projected = ok(&["collapse", up.to_str().unwrap(), "--open"]);
        let down = dir.join(format!("down-{file}"));
        std::fs::write(&down, ok(&["collapse", file])).unwrap();
        let flipped = ok(&["flip", down.to_str().unwrap(), "--arc", arc]);
        assert_eq!(key(&projected), key(&flipped), "{file}");
    }
    let (code, _, err) = run(&["lift", "annulus.wdms", "--arc", "g1"]);
    assert_eq!(code, 1, "{err}");
}

#[test]
fn collapse_examples() {
    let disc = parse(&ok(&["collapse", "annulus-one.wdms"])).unwrap();
    assert_eq!(disc.boundaries, vec![("o".to_string(), 1)]);
    assert_eq!(disc.decorations.iter().map(|d| d.1).sum::<i32>(), -1);
    let outer = parse(&ok(&["collapse", "annulus.wdms"])).unwrap();
    assert_eq!(outer.boundaries, vec![("o".to_string(), 2)]);
    assert!(outer.build().unwrap().weight_formula_check());
    assert!(outer.decorations.iter().any(|d| d.1 == -1));
    assert_eq!(ok(&["collapse", "annulus.wdms", "--select", "inner"]), ok(&["collapse", "annulus.wdms"]));
    assert_eq!(run(&["collapse", "annulus-fan.wdms", "--select", "t3"]).0, 1);
    assert_eq!(run(&["collapse", "pentagon.wdms", "--select", "z2"]).0, 1);
    assert_eq!(run(&["collapse", "pentagon.wdms", "--select", "z1,z2,z3"]).0, 1);
    assert_eq!(run(&["collapse", "pentagon.wdms", "--select", "z1,z2,z3", "--open"]).0, 1);
    assert_eq!(run(&["collapse", "pentagon.wdms", "--select", "z9"]).0, 1);
    assert_eq!(run(&["collapse", "pentagon.wdms"]).0, 1);
}

#[test]
fn tilt_transcripts() {
    let t = ok(&["tilt", "chain-1.wdms", "--script", "chain-1.script"]);
    let rows: Vec<&str> = t.lines().collect();
    assert_eq!(rows[0], "| initial | via g          | via h1'              |");
    assert_eq!(rows[3], "| g       | g[1]           | h1' -> g[1]' -> g[1] |");
    assert_eq!(rows[6], "quotient: x' dl' h1'[1]");
    let t = ok(&["tilt", "chain-3.wdms", "--script", "chain-3.script"]);
    assert!(t.ends_with("quotient: x' dl' h3'[1]\n"));
    let dir = std::env::temp_dir().join(format!("wdms-tilt-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let empty = dir.join("empty.script");
    std::fs::write(&empty, "# nothing\n").unwrap();
    let t = ok(&["tilt", "pentagon.wdms", "--script", empty.to_str().unwrap()]);
    assert_eq!(t, "| initial |\n|---------|\n| a13     |\n| a14     |\n");
    let bad = dir.join("bad.script");
    std::fs::write(&bad, "a13 sideways\n").unwrap();
    let (code, _, err) = run(&["tilt", "pentagon.wdms", "--script", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 1, column 5"));
}

#[test]
fn dual_graphs() {
    let p = ok(&["dual", "pentagon.wdms"]);
    assert_eq!(
        p,
        "vertex z1: b.1 b.0 a13.0\nvertex z2: a14.0 b.2 a13.1\nvertex z3: b.4 b.3 a14.1\nedge a13.0 = a13.1\nedge a14.0 = a14.1\n"
    );
    let m = ok(&["dual", "monogon.wdms"]);
    assert_eq!(m.lines().filter(|l| l.starts_with("edge")).count(), 1);
    assert!(m.contains("vertex z0: g.0\n"));
    let g = ok(&["dual", "graded.wdms"]);
    assert!(g.ends_with("# shift a13=1\n# shift a14=-2\n"));
}

#[test]
fn graph_collapse_examples() {
    let out = ok(&["graph-collapse", "two-vertex.graph"]);
    assert!(out.starts_with("# arity 4\n# phi ē1=e3 ē2=e4 ē3=e3' ē4=e4'\n"), "{out}");
    assert!(out.contains("vertex v̄: ē1 ē2 ē3 ē4\n"));
    let out = ok(&["graph-collapse", "annulus.graph"]);
    assert_eq!(out, "# arity 1\n# phi ē1=s\nvertex v̄: ē1\n");
    let out = ok(&["graph-collapse", "two-vertex.graph", "--sub", "v"]);
    assert!(out.starts_with("# arity 4\n"));
    assert_eq!(run(&["graph-collapse", "two-vertex.graph", "--sub", "l3,l4"]).0, 1);
    assert_eq!(run(&["graph-collapse", "two-vertex.graph", "--sub", "nowhere"]).0, 1);
    assert_eq!(ok(&["graph-collapse", "point.graph", "--sub", "v"]), "# arity 0\n# phi\nvertex v̄:\n");
}

#[test]
fn dot_export_and_out() {
    let d = ok(&["export-dot", "pentagon.wdms"]);
    assert!(d.starts_with("graph sgraph {\n") && d.contains("v0 -- v1 [label=\"a13\"]"));
    let r = ok(&["export-dot", "two-vertex.graph"]);
    assert!(r.starts_with("graph ribbon {\n") && r.contains("label=\"e1=e2'\""));
    let dir = std::env::temp_dir().join(format!("wdms-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let f = dir.join("p.dot");
    let (code, out, _) = run(&["export-dot", "pentagon.wdms", "--out", f.to_str().unwrap()]);
    assert_eq!((code, out.as_str()), (0, ""));
    assert_eq!(std::fs::read_to_string(f).unwrap(), d);
}

#[test]
fn outputs_are_deterministic() {
    for args in [
        &["eg", "annulus-fan.wdms", "--max-nodes", "30", "--parallel"][..],
        &["lift", "handle.wdms", "--arc", "gt"],
        &["dual", "torus.wdms"],
        &["graph-collapse", "two-vertex.graph"],
    ] {
        assert_eq!(ok(args), ok(args));
    }
}

fn node_count(dot: &str) -> usize {
    dot.lines().filter(|l| l.starts_with("  n") && !l.contains(" -> ")).count()
}

#[test]
fn canonical_mode_coarsens_tracked_mode() {
    for name in fixture_names(".wdms").into_iter().filter(|n| !n.starts_with("invalid-") && !n.starts_with("bad-")) {
        let t = node_count(&ok(&["eg", &name, "--max-nodes", "40"]));
        let c = node_count(&ok(&["eg", &name, "--max-nodes", "40", "--mode", "canonical"]));
        assert!(c <= t, "{name}: {c} > {t}");
        let disc = parse(&std::fs::read_to_string(fixtures().join(&name)).unwrap()).unwrap();
        if disc.genus == 0 && disc.boundaries.len() == 1 {
            assert_eq!(c, t, "{name}");
        }
    }
    assert_eq!(node_count(&ok(&["eg", "hexagon.wdms"])), 14);
    let m = ok(&["eg", "monogon.wdms", "--max-nodes", "4"]);
    assert_eq!(node_count(&m), 2);
    assert!(m.contains("n0 -> n1 [label=\"g\"]") && m.contains("n1 -> n0 [label=\"g\"]"));
}
