//! `plumb`: command-line front end for the plumbing-divisor calculus.
//!
//! Exit codes: 0 on success, 1 for domain errors (reported with the
//! originating error name), 2 for usage errors. With `--json` the output
//! is a single deterministic report object.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use plumb_core::graph::{
    circular_self_intersections, inertia, intersection_matrix,
    is_circular_spherical, sign_class, AugmentedGraph, DecoratedGraph,
    RawGraph,
};
use plumb_core::gs::{check_gs, GsMode};
use plumb_core::moves::{minimal_models, MoveKind, MoveRecord};
use plumb_core::open_book::{build_open_book, page_invariants, Side};
use plumb_core::rational::format_rational;
use plumb_core::torus::{classify_tightness, phi, word_of_divisor, Tightness};

#[derive(Parser)]
#[command(name = "plumb", version, about = "Symplectic plumbing divisor calculus")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit a JSON report instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized tie-breaking (no subcommand uses randomness by
    /// default; accepted for reproducible scripting)
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Suppress all non-error output
    #[arg(long, global = true)]
    quiet: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Sign class, intersection form, inertia and circularity
    Analyze { file: PathBuf },
    /// Decide the concavity/convexity criterion and print a witness
    Gs {
        file: PathBuf,
        #[arg(long, value_enum)]
        mode: ModeArg,
    },
    /// Apply blow-up moves (`toric_up:e1[:w=p/q]`, `interior_up:v1[:w=p/q]`)
    Blowup {
        file: PathBuf,
        #[arg(long = "move", required = true)]
        moves: Vec<String>,
    },
    /// Apply blow-down moves (`toric_down:v3`, `interior_down:v3`)
    Blowdown {
        file: PathBuf,
        #[arg(long = "move", required = true)]
        moves: Vec<String>,
    },
    /// All minimal models reachable by blow-downs
    Minimal { file: PathBuf },
    /// Supporting open book decomposition
    Openbook {
        file: PathBuf,
        #[arg(long, value_enum)]
        side: ModeArg,
    },
    /// SL(2,Z) word of a circular spherical divisor
    Word { file: PathBuf },
    /// Classify the contact torus bundle bounded by a circular divisor
    Tight { file: PathBuf },
    /// Export the decorated graph as DOT
    Dot { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Concave,
    Convex,
}

impl ModeArg {
    fn gs(self) -> GsMode {
        match self {
            ModeArg::Concave => GsMode::Concave,
            ModeArg::Convex => GsMode::Convex,
        }
    }

    fn name(self) -> &'static str {
        match self {
            ModeArg::Concave => "concave",
            ModeArg::Convex => "convex",
        }
    }
}

struct DomainError {
    name: &'static str,
    message: String,
}

impl DomainError {
    fn new(name: &'static str, message: impl Into<String>) -> Self {
        DomainError {
            name,
            message: message.into(),
        }
    }
}

macro_rules! domain {
    ($name:literal) => {
        |e| DomainError::new($name, e.to_string())
    };
}

fn fnv1a64(bytes: &[u8]) -> String {
    let mut h: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    format!("fnv1a64:{:016x}", h)
}

fn load_raw(path: &Path) -> Result<(RawGraph, String), DomainError> {
    let bytes = std::fs::read(path).map_err(domain!("InputError"))?;
    let raw: RawGraph =
        serde_json::from_slice(&bytes).map_err(domain!("InputError"))?;
    Ok((raw, fnv1a64(&bytes)))
}

fn load_graph(path: &Path) -> Result<(DecoratedGraph, String), DomainError> {
    let (raw, digest) = load_raw(path)?;
    let g = DecoratedGraph::validate(&raw).map_err(domain!("GraphError"))?;
    Ok((g, digest))
}

fn raw_to_value(raw: &RawGraph) -> Value {
    serde_json::to_value(raw).expect("raw graphs always serialize")
}

fn circular_sequence(g: &DecoratedGraph) -> Result<Vec<i64>, DomainError> {
    let order = is_circular_spherical(g).ok_or_else(|| {
        DomainError::new("TorusError", "not a circular spherical divisor")
    })?;
    Ok(circular_self_intersections(g, &order))
}

fn run(cmd: &Command) -> Result<(String, Value, String), DomainError> {
    match cmd {
        Command::Analyze { file } => {
            let (g, digest) = load_graph(file)?;
            let q = intersection_matrix(&g);
            let inr = inertia(&q);
            let order = is_circular_spherical(&g);
            let results = json!({
                "vertices": g.vertex_count(),
                "edges": g.edge_count(),
                "sign_class": format!("{:?}", sign_class(&g)),
                "intersection_matrix": q.rows(),
                "inertia": {
                    "b_plus": inr.b_plus,
                    "b_zero": inr.b_zero,
                    "b_minus": inr.b_minus,
                },
                "circular": order.is_some(),
                "circular_order": order.map(|o| {
                    o.iter()
                        .map(|&i| g.vertices()[i].id.clone())
                        .collect::<Vec<_>>()
                }),
            });
            Ok(("analyze".into(), results, digest))
        }
        Command::Gs { file, mode } => {
            let (g, digest) = load_graph(file)?;
            let w = check_gs(&g, mode.gs()).ok_or_else(|| {
                DomainError::new(
                    "GsError",
                    format!("criterion fails: no {} witness exists", mode.name()),
                )
            })?;
            let by_id = |v: &[plumb_core::rational::Rational]| -> Value {
                Value::Object(
                    g.vertices()
                        .iter()
                        .zip(v)
                        .map(|(vd, r)| {
                            (vd.id.clone(), Value::String(format_rational(r)))
                        })
                        .collect(),
                )
            };
            let results = json!({
                "mode": mode.name(),
                "feasible": true,
                "z": by_id(&w.z),
                "areas": by_id(&w.a),
            });
            Ok(("gs".into(), results, digest))
        }
        Command::Blowup { file, moves } => {
            apply_moves(file, moves, true).map(|(v, d)| ("blowup".into(), v, d))
        }
        Command::Blowdown { file, moves } => {
            apply_moves(file, moves, false).map(|(v, d)| ("blowdown".into(), v, d))
        }
        Command::Minimal { file } => {
            let (g, digest) = load_graph(file)?;
            let models = minimal_models(&g);
            let results = json!({
                "count": models.len(),
                "models": models
                    .iter()
                    .map(|m| raw_to_value(&m.to_raw()))
                    .collect::<Vec<_>>(),
            });
            Ok(("minimal".into(), results, digest))
        }
        Command::Openbook { file, side } => {
            let (g, digest) = load_graph(file)?;
            let s = match side {
                ModeArg::Concave => Side::Concave,
                ModeArg::Convex => Side::Convex,
            };
            let ob = build_open_book(&g, s).map_err(domain!("OpenBookError"))?;
            let (genus, boundary, chi) =
                page_invariants(&ob).map_err(domain!("OpenBookError"))?;
            let results = json!({
                "side": side.name(),
                "page": { "genus": genus, "boundary": boundary, "euler": chi },
                "monodromy": ob
                    .monodromy
                    .iter()
                    .map(|(c, sign)| json!({
                        "curve": c.display(&g),
                        "sign": sign,
                    }))
                    .collect::<Vec<_>>(),
            });
            Ok(("openbook".into(), results, digest))
        }
        Command::Word { file } => {
            let (g, digest) = load_graph(file)?;
            let s = circular_sequence(&g)?;
            let w = word_of_divisor(&s).map_err(domain!("TorusError"))?;
            let a = phi(&w);
            let results = json!({
                "divisor": s,
                "word": w.to_string(),
                "matrix": a.to_string(),
                "trace": a.trace(),
            });
            Ok(("word".into(), results, digest))
        }
        Command::Tight { file } => {
            let (g, digest) = load_graph(file)?;
            let s = circular_sequence(&g)?;
            let verdict =
                classify_tightness(&s).map_err(domain!("TorusError"))?;
            let ev = &verdict.evidence;
            let results = json!({
                "outcome": match verdict.outcome {
                    Tightness::UniversallyTight => "UniversallyTight",
                    Tightness::Undetermined => "Undetermined",
                    Tightness::NotApplicable => "NotApplicable",
                },
                "evidence": {
                    "representative": ev.representative,
                    "word": ev.word.as_ref().map(|w| w.to_string()),
                    "monodromy": ev.monodromy.map(|m| m.to_string()),
                    "bundle": ev.bundle.map(|b| format!("{:?}", b)),
                    "inverse_bundle":
                        ev.inverse_bundle.map(|b| format!("{:?}", b)),
                    "negated_bundle":
                        ev.negated_bundle.map(|b| format!("{:?}", b)),
                    "parabolic_invariant": ev.parabolic_invariant,
                    "rotation": ev.best_rotation.map(|r| json!({
                        "quarter_crossings": r.quarter_crossings,
                        "end": [r.end.0 as i64, r.end.1 as i64],
                        "float": r.float_value,
                    })),
                    "rotation_at_least_pi": ev.rotation_at_least_pi,
                    "citation": ev.citation,
                    "note": ev.note,
                },
            });
            Ok(("tight".into(), results, digest))
        }
        Command::Dot { file } => {
            let (g, digest) = load_graph(file)?;
            let mut dot = String::from("graph divisor {\n");
            for v in g.vertices() {
                writeln!(
                    dot,
                    "  {} [label=\"s={}, g={}\"];",
                    v.id, v.self_intersection, v.genus
                )
                .unwrap();
            }
            for &(i, j) in g.edges() {
                writeln!(
                    dot,
                    "  {} -- {};",
                    g.vertices()[i].id, g.vertices()[j].id
                )
                .unwrap();
            }
            dot.push_str("}\n");
            Ok(("dot".into(), json!({ "dot": dot }), digest))
        }
    }
}

fn apply_moves(
    file: &Path,
    moves: &[String],
    up: bool,
) -> Result<(Value, String), DomainError> {
    let (raw, digest) = load_raw(file)?;
    let records: Vec<MoveRecord> = moves
        .iter()
        .map(|s| MoveRecord::parse(s).map_err(domain!("MoveError")))
        .collect::<Result<_, _>>()?;
    for r in &records {
        let is_up = matches!(r.kind, MoveKind::ToricUp | MoveKind::InteriorUp);
        if is_up != up {
            return Err(DomainError::new(
                "MoveError",
                format!(
                    "move `{}` goes the wrong way for this subcommand",
                    r.site
                ),
            ));
        }
    }
    let result = if raw.areas.is_some() {
        let mut ag =
            AugmentedGraph::from_raw(&raw).map_err(domain!("GraphError"))?;
        for r in &records {
            ag = r.apply_augmented(&ag).map_err(domain!("MoveError"))?;
        }
        let mut out = ag.graph.to_raw();
        out.areas = Some(
            ag.graph
                .vertices()
                .iter()
                .zip(&ag.area)
                .map(|(v, a)| (v.id.clone(), format_rational(a)))
                .collect(),
        );
        out
    } else {
        let mut g =
            DecoratedGraph::validate(&raw).map_err(domain!("GraphError"))?;
        for r in &records {
            g = r.apply(&g).map_err(domain!("MoveError"))?;
        }
        g.to_raw()
    };
    Ok((json!({ "moves": moves, "result": raw_to_value(&result) }), digest))
}

fn render_text(results: &Value, indent: usize, out: &mut String) {
    match results {
        Value::Object(map) => {
            for (k, v) in map {
                match v {
                    Value::Object(_) | Value::Array(_) => {
                        writeln!(out, "{:indent$}{}:", "", k).unwrap();
                        render_text(v, indent + 2, out);
                    }
                    _ => writeln!(out, "{:indent$}{}: {}", "", k, plain(v))
                        .unwrap(),
                }
            }
        }
        Value::Array(items) => {
            for v in items {
                match v {
                    Value::Object(_) | Value::Array(_) => {
                        writeln!(out, "{:indent$}-", "").unwrap();
                        render_text(v, indent + 2, out);
                    }
                    _ => writeln!(out, "{:indent$}- {}", "", plain(v)).unwrap(),
                }
            }
        }
        v => writeln!(out, "{:indent$}{}", "", plain(v)).unwrap(),
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let _ = cli.seed; // no randomized tie-breaking exists today
    match run(&cli.command) {
        Ok((command, results, digest)) => {
            if cli.quiet {
                return ExitCode::SUCCESS;
            }
            if cli.json {
                let report = json!({
                    "command": command,
                    "input": { "digest": digest },
                    "results": results,
                    "warnings": [],
                });
                println!("{}", serde_json::to_string_pretty(&report).unwrap());
            } else if let Some(dot) =
                results.get("dot").and_then(Value::as_str)
            {
                print!("{}", dot);
            } else {
                let mut out = String::new();
                render_text(&results, 0, &mut out);
                print!("{}", out);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}: {}", e.name, e.message);
            ExitCode::from(1)
        }
    }
}
